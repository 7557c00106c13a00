//! Support bookkeeping: the locus cut out by fixing the distinguished chart
//! coordinates, glued across charts into a single fiber description.
//!
//! A chart coordinate is the exact monomial `T^{area} * e^{2 pi i rotation}`;
//! areas and rotations are rationals, so holonomies (roots of unity in every
//! desk example) compare exactly. On the toric side the support fixes the
//! base coordinates `x_j` and is a fiber of the base projection `p0`; on the
//! blowup side it fixes the wall-crossing-invariant coordinate `w0` and is a
//! fiber of `w0`, with the value `-T^{eps}` flagged as the singular fiber.

use num_traits::Zero;

use super::glue::{chart_monomial, wall_crossing_apply, WallCrossing};
use super::MirrorError;
use crate::novikov::{q, q_to_string};
use crate::{Nov, Q};

/// One loop record: name, symplectic area of the bounding disc class, and
/// the holonomy as a rational rotation number (`e^{2 pi i rotation}`).
#[derive(Debug, Clone, PartialEq)]
pub struct LoopCoord {
    pub name: String,
    pub area: Q,
    pub rotation: Q,
}

impl LoopCoord {
    /// Canonical rotation representative in [0, 1).
    pub fn rotation_mod1(&self) -> Q {
        let r = self.rotation.clone() - self.rotation.floor();
        if r < Q::zero() {
            r + Q::one()
        } else {
            r
        }
    }

    /// The coordinate as a series monomial when the holonomy is ±1.
    pub fn to_series(&self, trunc: &Q) -> Option<Nov> {
        let rot = self.rotation_mod1();
        let sign = if rot.is_zero() {
            1
        } else if rot == q(1, 2) {
            -1
        } else {
            return None;
        };
        Some(Nov::monomial(self.area.clone(), crate::novikov::qi(sign), trunc.clone()))
    }

    pub fn equation(&self) -> String {
        format!(
            "{} = T^({}) * e^(2*pi*i*{})",
            self.name,
            q_to_string(&self.area),
            q_to_string(&self.rotation_mod1())
        )
    }
}

use num_traits::One;

/// Coordinates of one chart: a list of loop records.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartCoordinates {
    pub chart: String,
    pub coords: Vec<LoopCoord>,
}

/// Toric-side input: the fixed base constants and per-chart holonomies.
#[derive(Debug, Clone, PartialEq)]
pub struct ToricSupportData {
    /// Per-chart coordinate records for the base coordinates `x_j`; all
    /// charts must agree (the `x_j` glue trivially).
    pub charts: Vec<ChartCoordinates>,
}

/// Blowup-side input: `w0 = T^{c8 - lambda_ref} * e^{2 pi i rotation}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlowupSupportData {
    pub eps: Q,
    pub lambda_ref: Q,
    pub c8: Q,
    pub rotation: Q,
}

/// The glued support description.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportReport {
    /// `p0` (toric side) or `w0` (blowup side).
    pub fiber_map: String,
    /// The fiber parameter: one (area, rotation) pair per fixed coordinate.
    pub fiber_param: Vec<(Q, Q)>,
    /// Human-readable per-chart equations.
    pub chart_equations: Vec<(String, Vec<String>)>,
    /// True when the chart-local descriptions glue consistently.
    pub chart_independent: bool,
    /// Blowup side only: the fixed value hits the singular fiber `-T^{eps}`.
    pub singular: bool,
}

/// Glue chart-local support equations into a single fiber description.
pub fn support_transform_toric(data: &ToricSupportData) -> Result<SupportReport, MirrorError> {
    let first = data
        .charts
        .first()
        .ok_or_else(|| MirrorError::InconsistentHolonomy("<no charts>".into()))?;
    for other in &data.charts[1..] {
        if other.coords.len() != first.coords.len() {
            return Err(MirrorError::InconsistentHolonomy("<arity>".into()));
        }
        for (a, b) in first.coords.iter().zip(&other.coords) {
            if a.area != b.area || a.rotation_mod1() != b.rotation_mod1() {
                return Err(MirrorError::InconsistentHolonomy(a.name.clone()));
            }
        }
    }
    Ok(SupportReport {
        fiber_map: "p0".into(),
        fiber_param: first
            .coords
            .iter()
            .map(|c| (c.area.clone(), c.rotation_mod1()))
            .collect(),
        chart_equations: data
            .charts
            .iter()
            .map(|ch| (ch.chart.clone(), ch.coords.iter().map(LoopCoord::equation).collect()))
            .collect(),
        chart_independent: true,
        singular: false,
    })
}

/// Blowup side: the support fixes `w0 = T^{c8 - lambda_ref} * hol`, and the
/// wall crossings fix `w0`, so the description is chart-independent by
/// construction; this is re-verified on a sample transform.
pub fn support_transform_blowup(data: &BlowupSupportData) -> Result<SupportReport, MirrorError> {
    let area = data.c8.clone() - data.lambda_ref.clone();
    let coord = LoopCoord { name: "w0".into(), area: area.clone(), rotation: data.rotation.clone() };
    // Spot check: a wall crossing with nonzero displacement fixes w0.
    let trunc = crate::novikov::default_truncation();
    let w0 = chart_monomial(1, &[0], 1, Nov::one(trunc.clone()), &trunc);
    let wc = WallCrossing { alpha: vec![0], beta: vec![1], eps: data.eps.clone() };
    let chart_independent = wall_crossing_apply(&wc, &w0) == w0;
    // Singular fiber: w0 = -T^{eps}, i.e. area = eps and holonomy -1.
    let singular = area == data.eps && coord.rotation_mod1() == q(1, 2);
    Ok(SupportReport {
        fiber_map: "w0".into(),
        fiber_param: vec![(area, coord.rotation_mod1())],
        chart_equations: vec![("all".into(), vec![coord.equation()])],
        chart_independent,
        singular,
    })
}

/// Side selector for [`support_transform`].
#[derive(Debug, Clone, PartialEq)]
pub enum SupportSide {
    Toric(ToricSupportData),
    Blowup(BlowupSupportData),
}

pub fn support_transform(side: &SupportSide) -> Result<SupportReport, MirrorError> {
    match side {
        SupportSide::Toric(d) => support_transform_toric(d),
        SupportSide::Blowup(d) => support_transform_blowup(d),
    }
}
