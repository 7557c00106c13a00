//! Regular subdivisions from lifting functions, the dual tropical complex
//! with chamber labels, and nearly-tropical distance certificates.
//!
//! All combinatorics here is exact: lower hulls, corner loci and chamber
//! witnesses are computed over the rationals. Only the amoeba sampler (see
//! [`amoeba`]) works in floating point, and its points are re-rationalized
//! before distances are taken.

pub mod amoeba;

pub use amoeba::{amoeba_sample, AmoebaSample, GridSpec};

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::{dot_iq, solve, QMat};
use crate::novikov::qi;
use crate::Q;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TropicalError {
    #[error("point set must be nonempty and free of duplicates")]
    BadPointSet,
    #[error("rho/coefficient tables must align with the point set")]
    BadTables,
    #[error("coefficients must be nonzero")]
    ZeroCoefficient,
    #[error("empty amoeba sample")]
    EmptySample,
    #[error("dimension mismatch between sample and complex")]
    DimensionMismatch,
    #[error("amoeba sampling supports 1 or 2 variables, got {0}")]
    UnsupportedDimension(usize),
    #[error("no chamber witness found for label {0}; subdivision inconsistent")]
    WitnessFailure(usize),
}

/// The data `(A, rho, c)` of a weighted Laurent polynomial
/// `g_tau = sum c_a tau^{rho(a)} x^a`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPointSet {
    pub points: Vec<Vec<i64>>,
    pub rho: Vec<Q>,
    pub coeffs: Vec<Q>,
}

impl WeightedPointSet {
    pub fn new(points: Vec<Vec<i64>>, rho: Vec<Q>, coeffs: Vec<Q>) -> Result<Self, TropicalError> {
        if points.is_empty() {
            return Err(TropicalError::BadPointSet);
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != points[0].len() || points[..i].contains(p) {
                return Err(TropicalError::BadPointSet);
            }
        }
        if rho.len() != points.len() || coeffs.len() != points.len() {
            return Err(TropicalError::BadTables);
        }
        if coeffs.iter().any(Zero::is_zero) {
            return Err(TropicalError::ZeroCoefficient);
        }
        Ok(WeightedPointSet { points, rho, coeffs })
    }

    /// Unit coefficients, explicit lifting.
    pub fn with_unit_coeffs(points: Vec<Vec<i64>>, rho: Vec<Q>) -> Result<Self, TropicalError> {
        let n = points.len();
        Self::new(points, rho, vec![Q::one(); n])
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    /// The PL function `chi(xi) = max <a, xi> - rho(a)` and its argmax set.
    pub fn chi(&self, xi: &[Q]) -> (Q, Vec<usize>) {
        let mut best: Option<Q> = None;
        let mut arg = Vec::new();
        for (i, a) in self.points.iter().enumerate() {
            let v = dot_iq(a, xi) - self.rho[i].clone();
            match &best {
                Some(b) if v < *b => {}
                Some(b) if v == *b => arg.push(i),
                _ => {
                    best = Some(v);
                    arg = vec![i];
                }
            }
        }
        (best.unwrap(), arg)
    }
}

use num_traits::One;

/// A cell of the induced subdivision with the affine minorant realizing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    /// Indices into the point set, sorted.
    pub members: Vec<usize>,
    /// `h(x) = <m, x> + c` with `h <= rho` on A and equality exactly on the cell.
    pub functional: (Vec<Q>, Q),
}

/// Lower-hull subdivision of the lifted points `(a, rho(a))`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularSubdivision {
    pub dim: usize,
    pub cells: Vec<Cell>,
}

impl RegularSubdivision {
    /// Indices of points that appear in some cell (the subdivision's vertex
    /// set; equals all of A when the lifting is adapted).
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.cells.iter().flat_map(|c| c.members.iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_adapted(&self, n_points: usize) -> bool {
        self.vertices().len() == n_points
    }
}

fn affine_rank(points: &[Vec<i64>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let rows: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    QMat::from_int_rows(&rows).rank()
}

/// Compute the regular subdivision induced by the lifting `rho`: cells are
/// the maximal equality sets of affine minorants of the lifted points.
pub fn induced_subdivision(w: &WeightedPointSet) -> RegularSubdivision {
    let d = w.dim();
    let n = w.points.len();
    let r = affine_rank(&w.points);
    if r == 0 {
        // Single point (or duplicates are banned, so exactly one point).
        return RegularSubdivision {
            dim: d,
            cells: vec![Cell {
                members: (0..n).collect(),
                functional: (vec![Q::zero(); d], w.rho[0].clone()),
            }],
        };
    }
    // Candidate supporting functionals from every (r+1)-subset: solve
    // <m, a> + c = rho(a) on the subset, keep minorants, read off equality.
    let mut cells: Vec<Cell> = Vec::new();
    let mut subset = vec![0usize; r + 1];
    collect_cells(w, d, n, 0, 0, &mut subset, &mut cells);
    // Keep only maximal cells.
    let mut keep = vec![true; cells.len()];
    for i in 0..cells.len() {
        for j in 0..cells.len() {
            if i != j
                && keep[i]
                && cells[i].members.len() < cells[j].members.len()
                && cells[i].members.iter().all(|m| cells[j].members.contains(m))
            {
                keep[i] = false;
            }
        }
    }
    let cells = cells
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect();
    RegularSubdivision { dim: d, cells }
}

fn collect_cells(
    w: &WeightedPointSet,
    d: usize,
    n: usize,
    start: usize,
    depth: usize,
    subset: &mut Vec<usize>,
    cells: &mut Vec<Cell>,
) {
    if depth == subset.len() {
        // Solve <m, a_i> + c = rho(a_i) for (m, c).
        let rows: Vec<Vec<Q>> = subset
            .iter()
            .map(|&i| {
                let mut row: Vec<Q> = w.points[i].iter().map(|&x| qi(x)).collect();
                row.push(Q::one());
                row
            })
            .collect();
        let rhs: Vec<Q> = subset.iter().map(|&i| w.rho[i].clone()).collect();
        let Some(sol) = solve(&QMat::new(rows), &rhs) else { return };
        let (m, c) = (
            sol.particular[..d].to_vec(),
            sol.particular[d].clone(),
        );
        // Minorant test and equality set.
        let mut members = Vec::new();
        for i in 0..n {
            let h = dot_iq(&w.points[i], &m) + c.clone();
            if h > w.rho[i] {
                return;
            }
            if h == w.rho[i] {
                members.push(i);
            }
        }
        if !cells.iter().any(|cell| cell.members == members) {
            cells.push(Cell { members, functional: (m, c) });
        }
        return;
    }
    for i in start..n {
        subset[depth] = i;
        collect_cells(w, d, n, i + 1, depth + 1, subset, cells);
    }
}

/// True iff every cell is a simplex of normalized lattice volume 1.
pub fn is_maximal_regular(w: &WeightedPointSet, s: &RegularSubdivision) -> bool {
    let r = affine_rank(&w.points);
    s.cells.iter().all(|cell| {
        if cell.members.len() != r + 1 {
            return false;
        }
        let base = &w.points[cell.members[0]];
        let rows: Vec<Vec<i64>> = cell.members[1..]
            .iter()
            .map(|&i| w.points[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        if rows.len() != r || rows[0].len() != r {
            // Degenerate embedding (affine rank below ambient dimension):
            // fall back to a rank/volume test on the spanned coordinates.
            return QMat::from_int_rows(&rows).rank() == r && r <= 1;
        }
        QMat::from_int_rows(&rows).det().abs() == Q::one()
    })
}

/// Geometry of a one-dimensional piece of the corner locus.
#[derive(Debug, Clone, PartialEq)]
pub enum EdgeGeom {
    Segment { a: Vec<Q>, b: Vec<Q> },
    Ray { base: Vec<Q>, dir: Vec<Q> },
    Line { base: Vec<Q>, dir: Vec<Q> },
}

/// An edge of the corner locus, dual to the subdivision edge `labels`.
#[derive(Debug, Clone, PartialEq)]
pub struct TropEdge {
    pub labels: (usize, usize),
    pub geom: EdgeGeom,
}

/// A complement component of the corner locus, dual to a subdivision vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Chamber {
    pub label: usize,
    pub witness: Vec<Q>,
}

/// The corner locus of `chi` with its chamber decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct TropicalComplex {
    pub dim: usize,
    pub vertices: Vec<Vec<Q>>,
    pub edges: Vec<TropEdge>,
    pub chambers: Vec<Chamber>,
}

/// Build the corner locus of `chi(xi) = max <a,xi> - rho(a)` together with
/// chamber witnesses, checking the vertex/chamber duality internally.
pub fn tropical_hypersurface(w: &WeightedPointSet) -> Result<TropicalComplex, TropicalError> {
    let d = w.dim();
    let sub = induced_subdivision(w);
    let labels = sub.vertices();

    let mut vertices: Vec<Vec<Q>> = Vec::new();
    let mut edges: Vec<TropEdge> = Vec::new();

    if d == 1 {
        // Corner locus is a finite point set: loci where two labels tie at
        // the max.
        for (ii, &i) in labels.iter().enumerate() {
            for &j in &labels[ii + 1..] {
                let ai = w.points[i][0];
                let aj = w.points[j][0];
                if ai == aj {
                    continue;
                }
                let xi = vec![(w.rho[i].clone() - w.rho[j].clone()) / qi(ai - aj)];
                let (_, arg) = w.chi(&xi);
                if arg.contains(&i) && arg.contains(&j) && !vertices.contains(&xi) {
                    vertices.push(xi);
                }
            }
        }
        vertices.sort();
    } else if d == 2 {
        // Each unordered pair of labels contributes the locus where both
        // achieve the max: an interval (possibly unbounded) on the tie line.
        for (ii, &i) in labels.iter().enumerate() {
            for &j in &labels[ii + 1..] {
                if let Some(edge) = tie_locus(w, i, j) {
                    match &edge.geom {
                        EdgeGeom::Segment { a, b } => {
                            push_unique(&mut vertices, a.clone());
                            push_unique(&mut vertices, b.clone());
                        }
                        EdgeGeom::Ray { base, .. } => push_unique(&mut vertices, base.clone()),
                        EdgeGeom::Line { .. } => {}
                    }
                    edges.push(edge);
                }
            }
        }
    } else {
        return Err(TropicalError::UnsupportedDimension(d));
    }

    // Chamber witnesses: for a subdivision vertex a, the mean of the affine
    // minorants of the maximal cells containing a touches the lifted points
    // exactly at a, and its linear part is an interior point of a's chamber.
    let mut chambers = Vec::new();
    for &l in &labels {
        let incident: Vec<&Cell> = sub
            .cells
            .iter()
            .filter(|c| c.members.contains(&l))
            .collect();
        let k = qi(incident.len() as i64);
        let mut witness = vec![Q::zero(); d];
        for c in &incident {
            for (wx, mx) in witness.iter_mut().zip(&c.functional.0) {
                *wx += mx.clone() / k.clone();
            }
        }
        let (_, arg) = w.chi(&witness);
        if arg != vec![l] {
            return Err(TropicalError::WitnessFailure(l));
        }
        chambers.push(Chamber { label: l, witness });
    }

    Ok(TropicalComplex { dim: d, vertices, edges, chambers })
}

fn push_unique(list: &mut Vec<Vec<Q>>, v: Vec<Q>) {
    if !list.contains(&v) {
        list.push(v);
    }
}

/// The set where labels `i` and `j` tie at the max, as a subset of the line
/// `<a_i - a_j, xi> = rho_i - rho_j` (2D only).
fn tie_locus(w: &WeightedPointSet, i: usize, j: usize) -> Option<TropEdge> {
    let normal: Vec<i64> = w.points[i]
        .iter()
        .zip(&w.points[j])
        .map(|(a, b)| a - b)
        .collect();
    if normal.iter().all(|&x| x == 0) {
        return None;
    }
    let rhs = w.rho[i].clone() - w.rho[j].clone();
    let base = solve(&QMat::from_int_rows(&[normal.clone()]), &[rhs])?.particular;
    let dir = vec![-qi(normal[1]), qi(normal[0])];
    // Constrain h_k <= h_i along base + t dir for every other label k.
    let mut lo: Option<Q> = None;
    let mut hi: Option<Q> = None;
    for (k, ak) in w.points.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        let grad: Vec<i64> = ak.iter().zip(&w.points[i]).map(|(a, b)| a - b).collect();
        let slope = dot_iq(&grad, &dir);
        let bound = (w.rho[k].clone() - w.rho[i].clone()) - dot_iq(&grad, &base);
        if slope.is_zero() {
            if bound < Q::zero() {
                return None;
            }
        } else if slope > Q::zero() {
            let t = bound / slope;
            hi = Some(match hi {
                Some(h) => h.min(t),
                None => t,
            });
        } else {
            let t = bound / slope;
            lo = Some(match lo {
                Some(l) => l.max(t),
                None => t,
            });
        }
    }
    let at = |t: &Q| -> Vec<Q> {
        base.iter()
            .zip(&dir)
            .map(|(b, d)| b.clone() + t.clone() * d.clone())
            .collect()
    };
    let geom = match (lo, hi) {
        (Some(l), Some(h)) => {
            if l >= h {
                return None; // empty or a single vertex (covered elsewhere)
            }
            EdgeGeom::Segment { a: at(&l), b: at(&h) }
        }
        (Some(l), None) => EdgeGeom::Ray { base: at(&l), dir: dir.clone() },
        (None, Some(h)) => EdgeGeom::Ray {
            base: at(&h),
            dir: dir.iter().map(|x| -x.clone()).collect(),
        },
        (None, None) => EdgeGeom::Line { base: base.clone(), dir: dir.clone() },
    };
    Some(TropEdge { labels: (i, j), geom })
}

/// Result of the nearly-tropical neighborhood certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct NearTropReport {
    pub ok: bool,
    pub max_distance: f64,
}

/// Max Euclidean distance from the sample to the corner locus, compared
/// against `radius`. Projections onto cells are exact (the sample points are
/// re-rationalized); only the final square root is floating point.
pub fn nearly_tropical_check(
    sample: &AmoebaSample,
    trop: &TropicalComplex,
    radius: &Q,
) -> Result<NearTropReport, TropicalError> {
    if sample.points.is_empty() {
        return Err(TropicalError::EmptySample);
    }
    if sample.points[0].len() != trop.dim {
        return Err(TropicalError::DimensionMismatch);
    }
    let mut max_d2 = Q::zero();
    for pt in &sample.points {
        let p: Vec<Q> = pt
            .iter()
            .map(|&x| Q::from_float(x).expect("finite sample coordinate"))
            .collect();
        let mut best: Option<Q> = None;
        for v in &trop.vertices {
            let d2 = dist2(&p, v);
            best = Some(match best {
                Some(b) => b.min(d2),
                None => d2,
            });
        }
        for e in &trop.edges {
            let d2 = match &e.geom {
                EdgeGeom::Segment { a, b } => dist2_interval(&p, a, &diff(b, a), Some((Q::zero(), Q::one()))),
                EdgeGeom::Ray { base, dir } => dist2_halfline(&p, base, dir),
                EdgeGeom::Line { base, dir } => dist2_interval(&p, base, dir, None),
            };
            best = Some(match best {
                Some(b) => b.min(d2),
                None => d2,
            });
        }
        let best = best.ok_or(TropicalError::EmptySample)?;
        if best > max_d2 {
            max_d2 = best;
        }
    }
    let max_distance = max_d2.to_f64().unwrap_or(f64::INFINITY).sqrt();
    Ok(NearTropReport { ok: max_d2 <= radius.clone() * radius.clone(), max_distance })
}

fn diff(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

fn dot_qq(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn dist2(p: &[Q], v: &[Q]) -> Q {
    let d = diff(p, v);
    dot_qq(&d, &d)
}

/// Distance² from `p` to `{base + t dir : t in clamp}` (whole line if None).
fn dist2_interval(p: &[Q], base: &[Q], dir: &[Q], clamp: Option<(Q, Q)>) -> Q {
    let dd = dot_qq(dir, dir);
    if dd.is_zero() {
        return dist2(p, base);
    }
    let mut t = dot_qq(&diff(p, base), dir) / dd;
    if let Some((lo, hi)) = clamp {
        t = t.max(lo).min(hi);
    }
    let proj: Vec<Q> = base
        .iter()
        .zip(dir)
        .map(|(b, d)| b.clone() + t.clone() * d.clone())
        .collect();
    dist2(p, &proj)
}

fn dist2_halfline(p: &[Q], base: &[Q], dir: &[Q]) -> Q {
    let dd = dot_qq(dir, dir);
    if dd.is_zero() {
        return dist2(p, base);
    }
    let t = (dot_qq(&diff(p, base), dir) / dd).max(Q::zero());
    let proj: Vec<Q> = base
        .iter()
        .zip(dir)
        .map(|(b, d)| b.clone() + t.clone() * d.clone())
        .collect();
    dist2(p, &proj)
}
