//! Fans, Calabi–Yau weight covectors, and nef-polytope lattice data.
//!
//! Everything here is desk scale: fans are given by explicit primitive rays,
//! polytopes by explicit facet inequalities, and all computations are exact.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{dot_ii, dot_iq, solve, QMat};
use crate::novikov::{q_from_str, q_to_string, qi};
use crate::Q;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ToricError {
    #[error("ray {0:?} is not primitive")]
    NonPrimitiveRay(Vec<i64>),
    #[error("duplicate ray {0:?}")]
    DuplicateRay(Vec<i64>),
    #[error("ray {0:?} has wrong dimension")]
    DimensionMismatch(Vec<i64>),
    #[error("fan has no rays")]
    EmptyFan,
    #[error("config error: {0}")]
    Config(String),
}

/// A fan in a rank-`dim` lattice, given by the primitive generators of its
/// rays, with an optional list of simplicial cones as ray-index sets.
#[derive(Debug, Clone, PartialEq)]
pub struct Fan {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Option<Vec<Vec<usize>>>,
}

impl Fan {
    pub fn new(dim: usize, rays: Vec<Vec<i64>>) -> Result<Self, ToricError> {
        if rays.is_empty() {
            return Err(ToricError::EmptyFan);
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(ToricError::DimensionMismatch(r.clone()));
            }
            let g = r.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            if g != 1 {
                return Err(ToricError::NonPrimitiveRay(r.clone()));
            }
            if rays[..i].contains(r) {
                return Err(ToricError::DuplicateRay(r.clone()));
            }
        }
        Ok(Fan { dim, rays, cones: None })
    }

    pub fn with_cones(mut self, cones: Vec<Vec<usize>>) -> Self {
        self.cones = Some(cones);
        self
    }
}

/// A covector pairing to 1 with every ray of the fan.
#[derive(Debug, Clone, PartialEq)]
pub struct CYStructure {
    pub nu: Vec<i64>,
}

impl CYStructure {
    /// Basis of the kernel sublattice `{n : <nu, n> = 0}`; requires some
    /// coordinate of nu to be ±1, which holds for every desk example.
    pub fn kernel_basis(&self) -> Option<Vec<Vec<i64>>> {
        let pivot = self.nu.iter().position(|&x| x == 1 || x == -1)?;
        let s = self.nu[pivot];
        let n = self.nu.len();
        let mut basis = Vec::new();
        for j in 0..n {
            if j == pivot {
                continue;
            }
            let mut v = vec![0i64; n];
            v[j] = 1;
            v[pivot] = -s * self.nu[j];
            basis.push(v);
        }
        Some(basis)
    }
}

/// Find an integer covector `nu` with `<nu, v> = 1` for every ray `v`,
/// solving the linear system exactly; `None` when no such covector exists.
pub fn check_calabi_yau(fan: &Fan) -> Option<CYStructure> {
    let a = QMat::from_int_rows(&fan.rays);
    let ones = vec![Q::from_integer(1.into()); fan.rays.len()];
    let sol = solve(&a, &ones)?;
    let integral = |v: &[Q]| v.iter().all(|x| x.is_integer());
    let to_int = |v: &[Q]| -> Vec<i64> {
        v.iter()
            .map(|x| {
                use num_traits::ToPrimitive;
                x.to_integer().to_i64().expect("desk-scale covector")
            })
            .collect()
    };
    if integral(&sol.particular) {
        return Some(CYStructure { nu: to_int(&sol.particular) });
    }
    // Search small integer combinations of the nullspace for an integral
    // representative; desk-scale fans need at most one free direction.
    let range = -4i64..=4;
    let mut stack: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..sol.nullspace.len() {
        stack = stack
            .into_iter()
            .flat_map(|prefix| {
                range.clone().map(move |t| {
                    let mut p = prefix.clone();
                    p.push(t);
                    p
                })
            })
            .collect();
    }
    for coeffs in stack {
        let mut cand = sol.particular.clone();
        for (t, dir) in coeffs.iter().zip(&sol.nullspace) {
            for (c, d) in cand.iter_mut().zip(dir) {
                *c += qi(*t) * d.clone();
            }
        }
        if integral(&cand) {
            return Some(CYStructure { nu: to_int(&cand) });
        }
    }
    None
}

/// One facet inequality `<sigma, v> + offset >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub sigma: Vec<i64>,
    pub offset: Q,
}

/// A polytope `P = {v : <sigma_i, v> + offset_i >= 0}` together with the
/// lattice-point set `A` used by the mirror construction.
#[derive(Debug, Clone, PartialEq)]
pub struct NefPolytope {
    pub dim: usize,
    pub facets: Vec<Facet>,
    pub points: Vec<Vec<i64>>,
}

impl NefPolytope {
    pub fn new(dim: usize, facets: Vec<Facet>) -> Self {
        NefPolytope { dim, facets, points: Vec::new() }
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.facets
            .iter()
            .all(|f| dot_iq(&f.sigma, v) + f.offset.clone() >= Q::zero())
    }

    pub fn contains_int(&self, v: &[i64]) -> bool {
        self.facets
            .iter()
            .all(|f| qi(dot_ii(&f.sigma, v)) + f.offset.clone() >= Q::zero())
    }
}

/// Result of a box-bounded lattice-point enumeration. `truncated` is raised
/// when a point of `P` lies on the box boundary, which means the box may not
/// enclose `P` (e.g. `P` unbounded).
#[derive(Debug, Clone, PartialEq)]
pub struct LatticePoints {
    pub points: Vec<Vec<i64>>,
    pub truncated: bool,
}

/// Enumerate `P` ∩ ℤ^dim inside the box (inclusive per-coordinate bounds).
pub fn lattice_points(p: &NefPolytope, bounds: &[(i64, i64)]) -> LatticePoints {
    assert_eq!(bounds.len(), p.dim);
    let mut points = Vec::new();
    let mut truncated = false;
    let mut cursor: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    if p.dim == 0 {
        return LatticePoints { points: vec![vec![]], truncated: false };
    }
    'scan: loop {
        if p.contains_int(&cursor) {
            if cursor
                .iter()
                .zip(bounds)
                .any(|(&x, &(lo, hi))| x == lo || x == hi)
            {
                truncated = true;
            }
            points.push(cursor.clone());
        }
        for i in (0..p.dim).rev() {
            if cursor[i] < bounds[i].1 {
                cursor[i] += 1;
                continue 'scan;
            }
            cursor[i] = bounds[i].0;
            if i == 0 {
                break 'scan;
            }
        }
    }
    LatticePoints { points, truncated }
}

/// Vertices of a bounded polytope: intersections of `dim` facet hyperplanes
/// that satisfy all the inequalities.
fn vertices(p: &NefPolytope) -> Vec<(Vec<Q>, Vec<usize>)> {
    let m = p.facets.len();
    let mut out: Vec<(Vec<Q>, Vec<usize>)> = Vec::new();
    let mut subset = vec![0usize; p.dim];
    fn rec(
        p: &NefPolytope,
        m: usize,
        start: usize,
        depth: usize,
        subset: &mut Vec<usize>,
        out: &mut Vec<(Vec<Q>, Vec<usize>)>,
    ) {
        if depth == subset.len() {
            let a = QMat::from_int_rows(
                &subset.iter().map(|&i| p.facets[i].sigma.clone()).collect::<Vec<_>>(),
            );
            let b: Vec<Q> = subset.iter().map(|&i| -p.facets[i].offset.clone()).collect();
            if let Some(sol) = solve(&a, &b) {
                if sol.nullspace.is_empty() && p.contains(&sol.particular) {
                    let active: Vec<usize> = (0..m)
                        .filter(|&i| {
                            dot_iq(&p.facets[i].sigma, &sol.particular)
                                + p.facets[i].offset.clone()
                                == Q::zero()
                        })
                        .collect();
                    if !out.iter().any(|(v, _)| *v == sol.particular) {
                        out.push((sol.particular, active));
                    }
                }
            }
            return;
        }
        for i in start..m {
            subset[depth] = i;
            rec(p, m, i + 1, depth + 1, subset, out);
        }
    }
    rec(p, m, 0, 0, &mut subset, &mut out);
    out
}

/// True iff every nonempty face closure of `P` contains a point of `A`.
/// Faces are enumerated as facet subsets active at some vertex (desk scale,
/// bounded polytopes only).
pub fn face_transversality_check(a_set: &[Vec<i64>], p: &NefPolytope) -> bool {
    let verts = vertices(p);
    // Candidate faces: every subset of the active set of some vertex
    // (includes the whole polytope via the empty subset and the vertices via
    // the full active sets). Two faces with the same facet subset coincide.
    let mut face_subsets: Vec<Vec<usize>> = vec![vec![]];
    for (_, active) in &verts {
        let k = active.len();
        for mask in 1u32..(1 << k) {
            let subset: Vec<usize> = (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| active[i])
                .collect();
            if !face_subsets.contains(&subset) {
                face_subsets.push(subset);
            }
        }
    }
    face_subsets.iter().all(|subset| {
        a_set.iter().any(|a| {
            p.contains_int(a)
                && subset.iter().all(|&i| {
                    qi(dot_ii(&p.facets[i].sigma, a)) + p.facets[i].offset.clone() == Q::zero()
                })
        })
    })
}

// ---------------------------------------------------------------------------
// Config schema
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FacetConfig {
    pub sigma: Vec<i64>,
    pub offset: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NefConfig {
    pub facets: Vec<FacetConfig>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricConfig {
    pub rays: Vec<Vec<i64>>,
    pub nef: NefConfig,
    pub r#box: Vec<Vec<i64>>,
    /// Optional lifting values aligned with the enumerated lattice points.
    #[serde(default)]
    pub rho: Vec<String>,
}

impl ToricConfig {
    pub fn fan(&self) -> Result<Fan, ToricError> {
        let dim = self.rays.first().map_or(0, Vec::len);
        Fan::new(dim, self.rays.clone())
    }

    pub fn nef_polytope(&self) -> Result<NefPolytope, ToricError> {
        let dim = self
            .nef
            .facets
            .first()
            .map(|f| f.sigma.len())
            .ok_or_else(|| ToricError::Config("nef.facets must be nonempty".into()))?;
        let mut facets = Vec::new();
        for f in &self.nef.facets {
            if f.sigma.len() != dim {
                return Err(ToricError::Config("inconsistent facet dimensions".into()));
            }
            facets.push(Facet {
                sigma: f.sigma.clone(),
                offset: q_from_str(&f.offset)
                    .map_err(|e| ToricError::Config(e.to_string()))?,
            });
        }
        Ok(NefPolytope::new(dim, facets))
    }

    pub fn bounds(&self) -> Result<Vec<(i64, i64)>, ToricError> {
        self.r#box
            .iter()
            .map(|b| match b.as_slice() {
                [lo, hi] if lo <= hi => Ok((*lo, *hi)),
                _ => Err(ToricError::Config("box entries must be [lo, hi]".into())),
            })
            .collect()
    }

    pub fn rho_values(&self, n_points: usize) -> Result<Vec<Q>, ToricError> {
        if self.rho.is_empty() {
            return Ok(vec![Q::zero(); n_points]);
        }
        if self.rho.len() != n_points {
            return Err(ToricError::Config(format!(
                "rho has {} entries but A has {} points",
                self.rho.len(),
                n_points
            )));
        }
        self.rho
            .iter()
            .map(|s| q_from_str(s).map_err(|e| ToricError::Config(e.to_string())))
            .collect()
    }
}

/// Render an offset for reports.
pub fn offset_string(x: &Q) -> String {
    q_to_string(x)
}

/// Keep `Signed` in scope for rational comparisons without warnings.
#[allow(dead_code)]
fn _abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::q;

    fn simplex2() -> NefPolytope {
        // x >= 0, y >= 0, 1 - x - y >= 0
        NefPolytope::new(
            2,
            vec![
                Facet { sigma: vec![1, 0], offset: qi(0) },
                Facet { sigma: vec![0, 1], offset: qi(0) },
                Facet { sigma: vec![-1, -1], offset: qi(1) },
            ],
        )
    }

    #[test]
    fn cy_for_affine_space() {
        let fan = Fan::new(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(check_calabi_yau(&fan).unwrap().nu, vec![1, 1, 1]);
    }

    #[test]
    fn cy_for_surface_resolution() {
        // Rays (i, 1), i = 0..p: the second coordinate is forced.
        for p in 1..=4 {
            let rays: Vec<Vec<i64>> = (0..=p).map(|i| vec![i, 1]).collect();
            let fan = Fan::new(2, rays).unwrap();
            let nu = check_calabi_yau(&fan).unwrap().nu;
            assert_eq!(nu, vec![0, 1], "p = {p}");
        }
    }

    #[test]
    fn cy_absent_for_projective_plane() {
        let fan = Fan::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        assert!(check_calabi_yau(&fan).is_none());
    }

    #[test]
    fn cy_result_satisfies_all_rays() {
        let fan = Fan::new(2, vec![vec![0, 1], vec![1, 1], vec![2, 1], vec![-1, 1]]).unwrap();
        let nu = check_calabi_yau(&fan).unwrap().nu;
        for r in &fan.rays {
            assert_eq!(dot_ii(&nu, r), 1);
        }
    }

    #[test]
    fn kernel_basis_pairs_to_zero() {
        let cy = CYStructure { nu: vec![1, 1, 1] };
        for v in cy.kernel_basis().unwrap() {
            assert_eq!(dot_ii(&cy.nu, &v), 0);
        }
    }

    #[test]
    fn fan_validation() {
        assert_eq!(
            Fan::new(2, vec![vec![2, 4]]),
            Err(ToricError::NonPrimitiveRay(vec![2, 4]))
        );
        assert_eq!(
            Fan::new(2, vec![vec![1, 0], vec![1, 0]]),
            Err(ToricError::DuplicateRay(vec![1, 0]))
        );
    }

    #[test]
    fn simplex_lattice_points() {
        let lp = lattice_points(&simplex2(), &[(-2, 3), (-2, 3)]);
        assert_eq!(lp.points, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert!(!lp.truncated);
    }

    #[test]
    fn interval_lattice_points() {
        for p in 1..=5 {
            let poly = NefPolytope::new(
                1,
                vec![
                    Facet { sigma: vec![1], offset: qi(0) },
                    Facet { sigma: vec![-1], offset: qi(p) },
                ],
            );
            let lp = lattice_points(&poly, &[(-1, p + 2)]);
            assert_eq!(lp.points.len() as i64, p + 1);
            assert!(!lp.truncated);
        }
    }

    #[test]
    fn unbounded_region_is_flagged() {
        let poly = NefPolytope::new(
            2,
            vec![Facet { sigma: vec![1, 0], offset: qi(0) }],
        );
        let lp = lattice_points(&poly, &[(-3, 3), (-3, 3)]);
        assert!(lp.truncated);
    }

    #[test]
    fn lattice_points_match_brute_force_oracle() {
        // Oracle: scan the box and test every inequality with fresh code.
        let poly = NefPolytope::new(
            2,
            vec![
                Facet { sigma: vec![1, 0], offset: q(1, 2) },
                Facet { sigma: vec![0, 1], offset: qi(0) },
                Facet { sigma: vec![-1, -2], offset: qi(3) },
            ],
        );
        let lp = lattice_points(&poly, &[(-4, 6), (-4, 6)]);
        let mut oracle = Vec::new();
        for x in -4..=6i64 {
            for y in -4..=6i64 {
                let ok = qi(x) + q(1, 2) >= qi(0) && y >= 0 && qi(-x - 2 * y) + qi(3) >= qi(0);
                if ok {
                    oracle.push(vec![x, y]);
                }
            }
        }
        assert_eq!(lp.points, oracle);
    }

    #[test]
    fn transversal_when_all_points_used() {
        let lp = lattice_points(&simplex2(), &[(-2, 3), (-2, 3)]);
        assert!(face_transversality_check(&lp.points, &simplex2()));
    }

    #[test]
    fn missing_vertex_breaks_transversality() {
        let a: Vec<Vec<i64>> = vec![vec![0, 0], vec![0, 1]]; // (1,0) missing
        assert!(!face_transversality_check(&a, &simplex2()));
    }

    #[test]
    fn interval_transversality() {
        for p in 1..=4i64 {
            let poly = NefPolytope::new(
                1,
                vec![
                    Facet { sigma: vec![1], offset: qi(0) },
                    Facet { sigma: vec![-1], offset: qi(p) },
                ],
            );
            let a: Vec<Vec<i64>> = (0..=p).map(|j| vec![j]).collect();
            assert!(face_transversality_check(&a, &poly));
        }
    }

    #[test]
    fn config_round_trip() {
        let json = serde_json::json!({
            "rays": [[1,0,0],[0,1,0],[0,0,1]],
            "nef": {"facets": [
                {"sigma": [1,0], "offset": "0"},
                {"sigma": [0,1], "offset": "0"},
                {"sigma": [-1,-1], "offset": "1"},
            ]},
            "box": [[-2,3],[-2,3]],
        });
        let cfg: ToricConfig = serde_json::from_value(json).unwrap();
        let fan = cfg.fan().unwrap();
        assert_eq!(check_calabi_yau(&fan).unwrap().nu, vec![1, 1, 1]);
        let nef = cfg.nef_polytope().unwrap();
        let lp = lattice_points(&nef, &cfg.bounds().unwrap());
        assert_eq!(lp.points.len(), 3);
    }

    #[test]
    fn unknown_config_keys_rejected() {
        let json = serde_json::json!({
            "rays": [[1,0]],
            "nef": {"facets": []},
            "box": [],
            "bogus": 1,
        });
        assert!(serde_json::from_value::<ToricConfig>(json).is_err());
    }
}
