//! Mirror-equation and superpotential synthesis.
//!
//! The mirror of a toric Calabi–Yau with lattice-point data `A` and lifting
//! `rho` is the conic bundle `y z = g(x)` with
//! `g(x) = sum_{a in A} (1 + sum_g n T^{area}) T^{rho(a)} x^a`; the
//! superpotential is `g * z^{-1}` on the chart where `z` is invertible and
//! `y` on the other. The global superpotential on the blowup side is
//! `W = w0 + sum_i (1 + T^{-eps} w0)^{<a - a_min_i, s_i>} T^{k_i} v^{s_i}`
//! per chamber `a`, where `a_min_i` minimizes `<s_i, .>` over `A`.

use num_traits::One;

use super::glue::{chart_monomial, chart_vars};
use super::MirrorError;
use crate::exact::dot_ii;
use crate::{LaurentNov, Nov, Q};

/// One user-supplied disc-count correction: `count` discs of symplectic
/// area `area` attached to the basic class at the point `alpha_index`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscCorrection {
    pub alpha_index: usize,
    pub tag: String,
    pub count: i64,
    pub area: Q,
}

/// User-supplied open disc-count corrections; the empty table is exact when
/// the ambient space has no rational curves.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiscCorrectionTable {
    pub entries: Vec<DiscCorrection>,
}

impl DiscCorrectionTable {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The coefficient `1 + sum n T^{area}` for one point of A.
    fn coefficient(&self, alpha_index: usize, trunc: &Q) -> Nov {
        let mut c = Nov::one(trunc.clone());
        for e in self.entries.iter().filter(|e| e.alpha_index == alpha_index) {
            c = c.add(&Nov::monomial(
                e.area.clone(),
                crate::novikov::qi(e.count),
                trunc.clone(),
            ));
        }
        c
    }

    fn max_index(&self) -> Option<usize> {
        self.entries.iter().map(|e| e.alpha_index).max()
    }
}

/// Conic-bundle variable list: `x1..x_{k}`, then `y`, then `z`.
pub fn bundle_vars(n_x: usize) -> Vec<String> {
    let mut v: Vec<String> = (1..=n_x).map(|i| format!("x{i}")).collect();
    v.push("y".into());
    v.push("z".into());
    v
}

/// Assemble `g(x)` over the conic-bundle variables (x-part only).
pub fn mirror_equation(
    a_set: &[Vec<i64>],
    rho: &[Q],
    corrections: &DiscCorrectionTable,
    trunc: &Q,
) -> Result<LaurentNov, MirrorError> {
    assert_eq!(a_set.len(), rho.len());
    if let Some(m) = corrections.max_index() {
        if m >= a_set.len() {
            return Err(MirrorError::CorrectionOutsideA(m));
        }
    }
    let n_x = a_set.first().map_or(0, Vec::len);
    let vars = bundle_vars(n_x);
    let mut g = LaurentNov::zero(vars.clone(), trunc.clone());
    for (i, a) in a_set.iter().enumerate() {
        let coeff = corrections
            .coefficient(i, trunc)
            .shift(&rho[i], &Q::one());
        let mut e = a.clone();
        e.push(0); // y
        e.push(0); // z
        g = g.add(&LaurentNov::monomial(vars.clone(), e, coeff, trunc.clone()));
    }
    Ok(g)
}

/// The superpotential on the chart where `z` is invertible: `g * z^{-1}`.
pub fn superpotential_u1(g: &LaurentNov) -> LaurentNov {
    let z = g.vars().len() - 1;
    g.shift_exp(z, -1)
}

/// The superpotential on the other chart: the coordinate `y`.
pub fn superpotential_u2(n_x: usize, trunc: &Q) -> LaurentNov {
    let vars = bundle_vars(n_x);
    LaurentNov::var(vars.clone(), n_x, trunc.clone())
}

/// Outcome of the gluing consistency check.
#[derive(Debug, Clone, PartialEq)]
pub struct GluingReport {
    pub ok: bool,
    /// Raised when A is empty, making the check vacuous.
    pub vacuous: bool,
}

/// Verify that the two chart superpotentials agree under `y z = g`:
/// substituting `y -> g z^{-1}` into the second must give the first, and
/// the first times `z` must reproduce `g`.
pub fn gluing_check(
    g: &LaurentNov,
    w_u1: &LaurentNov,
    w_u2: &LaurentNov,
) -> Result<GluingReport, MirrorError> {
    if g.is_zero() {
        return Ok(GluingReport { ok: w_u1.is_zero(), vacuous: true });
    }
    let y = g.vars().len() - 2;
    let z = g.vars().len() - 1;
    let back = w_u1.shift_exp(z, 1);
    let substituted = w_u2.substitute(y, &g.shift_exp(z, -1))?;
    Ok(GluingReport {
        ok: back == *g && substituted == *w_u1,
        vacuous: false,
    })
}

/// The global superpotential expressed in one chamber chart. Each term is
/// `(sigma, kappa, unit_pow)` standing for `u^{unit_pow} T^{kappa} v^{sigma}`
/// with the unit power kept symbolic so chart re-expressions stay exact.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalSuperpotential {
    pub chart: Vec<i64>,
    pub eps: Q,
    pub terms: Vec<(Vec<i64>, Q, i64)>, // (sigma, kappa, unit_pow)
}

/// Assemble `W` in the chart of `a_set[chart_idx]` from the facet data
/// `(sigma_i, kappa_i)` of the base toric piece.
pub fn global_superpotential(
    facets: &[(Vec<i64>, Q)],
    a_set: &[Vec<i64>],
    chart_idx: usize,
    eps: &Q,
) -> Result<GlobalSuperpotential, MirrorError> {
    let alpha = a_set
        .get(chart_idx)
        .ok_or(MirrorError::BadChartLabel(chart_idx))?;
    let mut terms = Vec::new();
    for (i, (sigma, kappa)) in facets.iter().enumerate() {
        // Unique minimizer of <sigma, .> over A.
        let mut best: Option<(i64, usize, bool)> = None;
        for (j, a) in a_set.iter().enumerate() {
            let v = dot_ii(sigma, a);
            best = Some(match best {
                None => (v, j, false),
                Some((bv, _, _)) if v < bv => (v, j, false),
                Some((bv, bj, tie)) => (bv, bj, tie || v == bv),
            });
        }
        let (_, min_j, tie) = best.expect("nonempty A");
        if tie {
            return Err(MirrorError::NonUniqueAlphaMin(i));
        }
        let shift: Vec<i64> = alpha
            .iter()
            .zip(&a_set[min_j])
            .map(|(a, m)| a - m)
            .collect();
        let unit_pow = dot_ii(sigma, &shift);
        terms.push((sigma.clone(), kappa.clone(), unit_pow));
    }
    terms.sort();
    Ok(GlobalSuperpotential { chart: alpha.clone(), eps: eps.clone(), terms })
}

impl GlobalSuperpotential {
    /// Rewrite into the chart of `beta` via the wall-crossing rule; the unit
    /// powers shift by `<beta - chart, sigma>` and telescope exactly.
    pub fn express_in_chart(&self, beta: &[i64]) -> GlobalSuperpotential {
        let delta: Vec<i64> = beta
            .iter()
            .zip(&self.chart)
            .map(|(b, a)| b - a)
            .collect();
        let mut terms: Vec<(Vec<i64>, Q, i64)> = self
            .terms
            .iter()
            .map(|(sigma, kappa, pow)| {
                (sigma.clone(), kappa.clone(), pow + dot_ii(sigma, &delta))
            })
            .collect();
        terms.sort();
        GlobalSuperpotential { chart: beta.to_vec(), eps: self.eps.clone(), terms }
    }

    /// `W = w0 + sum u^{pow} T^{kappa} v^{sigma}` in the chart layout, with
    /// the unit symbolic.
    pub fn to_laurent_symbolic(&self, trunc: &Q) -> LaurentNov {
        let n_base = self.chart.len();
        let vars = chart_vars(n_base);
        let mut w = chart_monomial(n_base, &vec![0; n_base], 1, Nov::one(trunc.clone()), trunc);
        for (sigma, kappa, pow) in &self.terms {
            let mut e = sigma.clone();
            e.push(0); // w0
            e.push(*pow); // u
            w = w.add(&LaurentNov::monomial(
                vars.clone(),
                e,
                Nov::monomial(kappa.clone(), Q::one(), trunc.clone()),
                trunc.clone(),
            ));
        }
        w
    }

    /// Fully expanded form; requires all unit powers nonnegative, which
    /// holds in every chamber chart by minimality of `a_min`.
    pub fn to_laurent(&self, trunc: &Q) -> Result<LaurentNov, MirrorError> {
        super::glue::expand_units(&self.to_laurent_symbolic(trunc), &self.eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mirror::glue::{glue_eq, wall_crossing_apply, WallCrossing};
    use crate::novikov::{default_truncation, q, qi};

    fn t10() -> Q {
        default_truncation()
    }

    fn simplex_a() -> Vec<Vec<i64>> {
        vec![vec![0, 0], vec![1, 0], vec![0, 1]]
    }

    #[test]
    fn affine_space_mirror_equation() {
        // A = simplex points, rho = 0, no corrections: g = 1 + x1 + x2.
        let g = mirror_equation(
            &simplex_a(),
            &vec![Q::zero(); 3],
            &DiscCorrectionTable::empty(),
            &t10(),
        )
        .unwrap();
        assert_eq!(g.terms().len(), 3);
        for (_, c) in g.terms() {
            assert_eq!(c, &Nov::one(t10()));
        }
        assert!(g.terms().contains_key(&vec![0, 0, 0, 0]));
        assert!(g.terms().contains_key(&vec![1, 0, 0, 0]));
        assert!(g.terms().contains_key(&vec![0, 1, 0, 0]));
    }

    #[test]
    fn chain_mirror_equation() {
        // A = {0..p}, rho(j) = j(j-1)/2: g = sum T^{rho(j)} x^j.
        let p = 3i64;
        let a: Vec<Vec<i64>> = (0..=p).map(|j| vec![j]).collect();
        let rho: Vec<Q> = (0..=p).map(|j| q(j * (j - 1), 2)).collect();
        let g = mirror_equation(&a, &rho, &DiscCorrectionTable::empty(), &t10()).unwrap();
        for j in 0..=p {
            let c = g.terms().get(&vec![j, 0, 0]).unwrap();
            assert_eq!(c, &Nov::monomial(q(j * (j - 1), 2), qi(1), t10()));
        }
    }

    #[test]
    fn single_point_mirror_is_unit() {
        let g = mirror_equation(
            &[vec![]],
            &[Q::zero()],
            &DiscCorrectionTable::empty(),
            &t10(),
        )
        .unwrap();
        // g = 1, so the mirror is yz = 1.
        assert_eq!(g, LaurentNov::one(bundle_vars(0), t10()));
    }

    #[test]
    fn corrections_enter_the_coefficient() {
        let table = DiscCorrectionTable {
            entries: vec![DiscCorrection {
                alpha_index: 1,
                tag: "exceptional".into(),
                count: 1,
                area: q(1, 2),
            }],
        };
        let g = mirror_equation(&[vec![0], vec![1]], &[Q::zero(), Q::zero()], &table, &t10())
            .unwrap();
        let c = g.terms().get(&vec![1, 0, 0]).unwrap();
        assert_eq!(c, &Nov::one(t10()).add(&Nov::monomial(q(1, 2), qi(1), t10())));
    }

    #[test]
    fn correction_outside_a_rejected() {
        let table = DiscCorrectionTable {
            entries: vec![DiscCorrection {
                alpha_index: 5,
                tag: "bad".into(),
                count: 1,
                area: qi(1),
            }],
        };
        assert_eq!(
            mirror_equation(&[vec![0]], &[Q::zero()], &table, &t10()),
            Err(MirrorError::CorrectionOutsideA(5))
        );
    }

    #[test]
    fn chart_superpotentials_and_gluing() {
        let g = mirror_equation(
            &simplex_a(),
            &vec![Q::zero(); 3],
            &DiscCorrectionTable::empty(),
            &t10(),
        )
        .unwrap();
        let w1 = superpotential_u1(&g);
        let w2 = superpotential_u2(2, &t10());
        // w1 * z = g.
        assert_eq!(w1.shift_exp(3, 1), g);
        // w2 = y, degree 1 in y.
        assert_eq!(w2.terms().len(), 1);
        assert!(w2.terms().contains_key(&vec![0, 0, 1, 0]));
        let rep = gluing_check(&g, &w1, &w2).unwrap();
        assert!(rep.ok && !rep.vacuous);
    }

    #[test]
    fn corrupted_g_fails_gluing() {
        let g = mirror_equation(
            &simplex_a(),
            &vec![Q::zero(); 3],
            &DiscCorrectionTable::empty(),
            &t10(),
        )
        .unwrap();
        let w1 = superpotential_u1(&g);
        let w2 = superpotential_u2(2, &t10());
        // Drop one term of g.
        let corrupted = mirror_equation(
            &simplex_a()[..2].to_vec(),
            &vec![Q::zero(); 2],
            &DiscCorrectionTable::empty(),
            &t10(),
        )
        .unwrap();
        assert!(!gluing_check(&corrupted, &w1, &w2).unwrap().ok);
    }

    #[test]
    fn empty_a_is_vacuous() {
        let vars = bundle_vars(1);
        let zero = LaurentNov::zero(vars.clone(), t10());
        let rep = gluing_check(&zero, &zero, &superpotential_u2(1, &t10())).unwrap();
        assert!(rep.ok && rep.vacuous);
    }

    #[test]
    fn single_term_superpotential_u1() {
        // A = {0} with rho(0) = 1/3: W_U1 = T^{1/3} z^{-1}.
        let g = mirror_equation(&[vec![]], &[q(1, 3)], &DiscCorrectionTable::empty(), &t10())
            .unwrap();
        let w1 = superpotential_u1(&g);
        assert_eq!(
            w1,
            LaurentNov::monomial(
                bundle_vars(0),
                vec![0, -1],
                Nov::monomial(q(1, 3), qi(1), t10()),
                t10()
            )
        );
    }

    #[test]
    fn base_chamber_superpotential() {
        // Base toric piece with one facet (sigma, kappa) = (1, 0), A = {0, 1}:
        // in the chart of 0 the unit power is 0, so W = w0 + v.
        let facets = vec![(vec![1i64], Q::zero())];
        let a: Vec<Vec<i64>> = vec![vec![0], vec![1]];
        let eps = q(1, 10);
        let w0chart = global_superpotential(&facets, &a, 0, &eps).unwrap();
        assert_eq!(w0chart.terms, vec![(vec![1], Q::zero(), 0)]);
        let w = w0chart.to_laurent(&t10()).unwrap();
        let expect = chart_monomial(1, &[0], 1, Nov::one(t10()), &t10())
            .add(&chart_monomial(1, &[1], 0, Nov::one(t10()), &t10()));
        assert_eq!(w, expect);
    }

    #[test]
    fn other_chart_carries_the_unit() {
        let facets = vec![(vec![1i64], Q::zero())];
        let a: Vec<Vec<i64>> = vec![vec![0], vec![1]];
        let eps = q(1, 10);
        let w1chart = global_superpotential(&facets, &a, 1, &eps).unwrap();
        assert_eq!(w1chart.terms, vec![(vec![1], Q::zero(), 1)]);
        // Expanded: w0 + (1 + T^{-eps} w0) v.
        let w = w1chart.to_laurent(&t10()).unwrap();
        assert_eq!(w.terms().len(), 3);
        assert!(w
            .terms()
            .contains_key(&vec![1, 1, 0]), "cross term v*w0 present");
    }

    #[test]
    fn chart_independence_via_wall_crossing() {
        let facets = vec![(vec![1i64], Q::zero())];
        let a: Vec<Vec<i64>> = vec![vec![0], vec![1]];
        let eps = q(1, 10);
        let w0chart = global_superpotential(&facets, &a, 0, &eps).unwrap();
        let w1chart = global_superpotential(&facets, &a, 1, &eps).unwrap();
        // Structural identity after re-expression.
        assert_eq!(w0chart.express_in_chart(&[1]).terms, w1chart.terms);
        // And through the Laurent-level wall-crossing transform.
        let wc = WallCrossing { alpha: vec![1], beta: vec![0], eps: eps.clone() };
        let rewritten = wall_crossing_apply(&wc, &w0chart.to_laurent_symbolic(&t10()));
        assert!(glue_eq(&rewritten, &w1chart.to_laurent_symbolic(&t10()), &eps).unwrap());
    }

    #[test]
    fn tie_in_alpha_min_is_rejected() {
        // Facet sigma = (0): every point of A pairs to 0, so the minimizer
        // cannot be unique.
        let facets = vec![(vec![0i64], Q::zero())];
        let a: Vec<Vec<i64>> = vec![vec![0], vec![1]];
        assert_eq!(
            global_superpotential(&facets, &a, 0, &q(1, 10)),
            Err(MirrorError::NonUniqueAlphaMin(0))
        );
    }
}
