//! Wall-crossing transition maps between chamber charts.
//!
//! A chart attached to the chamber of `alpha` carries Laurent coordinates
//! `v_1, ..., v_n` and the invariant coordinate `w0`. Crossing the wall to
//! the chamber of `beta` rewrites the monomial `v^sigma` as
//! `(1 + T^{-eps} w0)^{<beta - alpha, sigma>} v^sigma` and fixes `w0`. The
//! unit `1 + T^{-eps} w0` is kept symbolic as an extra variable `u` so that
//! compositions telescope exactly; [`expand_units`] eliminates `u` when all
//! its exponents are nonnegative, and [`glue_eq`] compares two expressions
//! after clearing negative unit powers.

use std::collections::BTreeMap;

use num_traits::One;

use super::laurent::LaurentPoly;
use super::MirrorError;
use crate::exact::dot_ii;
use crate::novikov::Coeff;
use crate::{LaurentNov, Nov, Q};

/// Chart variable list: `v1..vn`, then `w0`, then the symbolic unit `u`.
pub fn chart_vars(n_base: usize) -> Vec<String> {
    let mut v: Vec<String> = (1..=n_base).map(|i| format!("v{i}")).collect();
    v.push("w0".into());
    v.push("u".into());
    v
}

/// Index of `w0` in [`chart_vars`].
pub fn w0_index(n_base: usize) -> usize {
    n_base
}

/// Index of the symbolic unit in [`chart_vars`].
pub fn unit_index(n_base: usize) -> usize {
    n_base + 1
}

/// A single wall crossing between the chambers of `alpha` and `beta`,
/// with blowup parameter `eps`.
#[derive(Debug, Clone, PartialEq)]
pub struct WallCrossing {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    pub eps: Q,
}

impl WallCrossing {
    pub fn reversed(&self) -> Self {
        WallCrossing {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            eps: self.eps.clone(),
        }
    }
}

/// Rewrite `m` (expressed in the `beta` chart) into the `alpha` chart:
/// each monomial gains `<beta - alpha, sigma>` powers of the unit, and the
/// `w0` degree is untouched.
pub fn wall_crossing_apply(wc: &WallCrossing, m: &LaurentNov) -> LaurentNov {
    let n_base = wc.alpha.len();
    let u = unit_index(n_base);
    assert_eq!(m.vars().len(), n_base + 2, "expected chart layout variables");
    let delta: Vec<i64> = wc
        .beta
        .iter()
        .zip(&wc.alpha)
        .map(|(b, a)| b - a)
        .collect();
    let mut out = LaurentNov::zero(m.vars().to_vec(), m.truncation().clone());
    for (e, c) in m.terms() {
        let sigma = &e[..n_base];
        let pairing = dot_ii(&delta, sigma);
        let mut e2 = e.clone();
        e2[u] += pairing;
        out = out.add(&LaurentNov::monomial(
            m.vars().to_vec(),
            e2,
            c.clone(),
            m.truncation().clone(),
        ));
    }
    out
}

/// The expanded unit power `(1 + T^{-eps} w0)^k` in the chart layout.
fn unit_power(n_base: usize, eps: &Q, k: i64, trunc: &Q) -> LaurentNov {
    let vars = chart_vars(n_base);
    let one = LaurentNov::one(vars.clone(), trunc.clone());
    let mut w0_exp = vec![0i64; n_base + 2];
    w0_exp[w0_index(n_base)] = 1;
    let unit = one.add(&LaurentNov::monomial(
        vars,
        w0_exp,
        Nov::monomial(-eps.clone(), Q::one(), trunc.clone()),
        trunc.clone(),
    ));
    unit.pow(k as u32)
}

/// Eliminate the symbolic unit by expanding `u^k -> (1 + T^{-eps} w0)^k`;
/// fails on negative unit powers (the unit has no Laurent-polynomial
/// inverse).
pub fn expand_units(m: &LaurentNov, eps: &Q) -> Result<LaurentNov, MirrorError> {
    let n_base = m.vars().len() - 2;
    let u = unit_index(n_base);
    let mut cache: BTreeMap<i64, LaurentNov> = BTreeMap::new();
    let mut out = LaurentNov::zero(m.vars().to_vec(), m.truncation().clone());
    for (e, c) in m.terms() {
        let k = e[u];
        if k < 0 {
            return Err(MirrorError::NegativeUnitPower(k));
        }
        let power = cache
            .entry(k)
            .or_insert_with(|| unit_power(n_base, eps, k, m.truncation()))
            .clone();
        let mut e2 = e.clone();
        e2[u] = 0;
        let base = LaurentNov::monomial(
            m.vars().to_vec(),
            e2,
            c.clone(),
            m.truncation().clone(),
        );
        out = out.add(&base.mul(&power));
    }
    Ok(out)
}

fn min_unit_power(m: &LaurentNov) -> i64 {
    let u = m.vars().len() - 1;
    m.terms().keys().map(|e| e[u]).min().unwrap_or(0)
}

/// Equality in the chart ring: the unit is invertible there, so `x = y` iff
/// `u^s x = u^s y` for the clearing power `s`.
pub fn glue_eq(x: &LaurentNov, y: &LaurentNov, eps: &Q) -> Result<bool, MirrorError> {
    assert_eq!(x.vars(), y.vars());
    let u = x.vars().len() - 1;
    let s = 0i64.max(-min_unit_power(x)).max(-min_unit_power(y));
    let xs = expand_units(&x.shift_exp(u, s), eps)?;
    let ys = expand_units(&y.shift_exp(u, s), eps)?;
    Ok(xs == ys)
}

/// Outcome of composing a closed loop of wall crossings.
#[derive(Debug, Clone, PartialEq)]
pub struct MonodromyReport {
    pub ok: bool,
    /// Per distinct eps value: the summed chamber displacement, which is the
    /// u-exponent gradient of the composite; zero means identity.
    pub defects: Vec<(Q, Vec<i64>)>,
}

/// Check that a closed chamber loop composes to the identity transform.
/// The composite multiplies `v^sigma` by `prod_l U_{eps_l}^{<beta_l - alpha_l,
/// sigma>}`, so it is the identity exactly when, for every eps value, the
/// displacements `beta_l - alpha_l` sum to zero.
pub fn monodromy_check(legs: &[WallCrossing]) -> MonodromyReport {
    let mut sums: BTreeMap<Vec<u8>, (Q, Vec<i64>)> = BTreeMap::new();
    for leg in legs {
        debug_assert_eq!(leg.alpha.len(), legs[0].alpha.len());
        let key = format!("{}", leg.eps).into_bytes();
        let entry = sums
            .entry(key)
            .or_insert_with(|| (leg.eps.clone(), vec![0i64; leg.alpha.len()]));
        for (s, (b, a)) in entry.1.iter_mut().zip(leg.beta.iter().zip(&leg.alpha)) {
            *s += b - a;
        }
    }
    let defects: Vec<(Q, Vec<i64>)> = sums
        .into_values()
        .filter(|(_, v)| v.iter().any(|&x| x != 0))
        .collect();
    MonodromyReport { ok: defects.is_empty(), defects }
}

/// Build the wall crossings of a chamber chain or loop from consecutive
/// chamber points, all with the same eps.
pub fn atlas_legs(chambers: &[Vec<i64>], eps: &Q, close_loop: bool) -> Vec<WallCrossing> {
    let mut legs = Vec::new();
    for pair in chambers.windows(2) {
        legs.push(WallCrossing {
            alpha: pair[0].clone(),
            beta: pair[1].clone(),
            eps: eps.clone(),
        });
    }
    if close_loop && chambers.len() > 1 {
        legs.push(WallCrossing {
            alpha: chambers.last().unwrap().clone(),
            beta: chambers[0].clone(),
            eps: eps.clone(),
        });
    }
    legs
}

/// Convenience: a monomial `v^sigma w0^k` in the chart layout.
pub fn chart_monomial<C: Coeff>(
    n_base: usize,
    sigma: &[i64],
    w0_pow: i64,
    coeff: crate::novikov::NovikovSeries<C>,
    trunc: &Q,
) -> LaurentPoly<C> {
    let mut e = sigma.to_vec();
    e.push(w0_pow);
    e.push(0);
    LaurentPoly::monomial(chart_vars(n_base), e, coeff, trunc.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::{default_truncation, q, qi};

    fn eps() -> Q {
        q(1, 10)
    }

    fn t10() -> Q {
        default_truncation()
    }

    fn v_mono(sigma: &[i64]) -> LaurentNov {
        chart_monomial(sigma.len(), sigma, 0, Nov::one(t10()), &t10())
    }

    #[test]
    fn pairing_one_multiplies_by_unit() {
        // alpha = 0, beta = 1 in one base variable; sigma = 1:
        // v maps to (1 + T^{-eps} w0) v.
        let wc = WallCrossing { alpha: vec![0], beta: vec![1], eps: eps() };
        let got = expand_units(&wall_crossing_apply(&wc, &v_mono(&[1])), &eps()).unwrap();
        let unit = unit_power(1, &eps(), 1, &t10());
        let expect = unit.mul(&v_mono(&[1]));
        assert_eq!(got, expect);
    }

    #[test]
    fn zero_pairing_is_identity() {
        let wc = WallCrossing { alpha: vec![0], beta: vec![1], eps: eps() };
        let m = v_mono(&[0]);
        assert_eq!(wall_crossing_apply(&wc, &m), m);
    }

    #[test]
    fn w0_is_preserved() {
        let wc = WallCrossing { alpha: vec![0], beta: vec![3], eps: eps() };
        let w0 = chart_monomial(1, &[0], 1, Nov::one(t10()), &t10());
        assert_eq!(wall_crossing_apply(&wc, &w0), w0);
    }

    #[test]
    fn round_trip_telescopes() {
        let wc = WallCrossing { alpha: vec![0], beta: vec![1], eps: eps() };
        let m = v_mono(&[2]);
        let there = wall_crossing_apply(&wc, &m);
        let back = wall_crossing_apply(&wc.reversed(), &there);
        assert_eq!(back, m);
        assert!(glue_eq(&back, &m, &eps()).unwrap());
    }

    #[test]
    fn negative_unit_powers_compare_via_clearing() {
        // x = u^{-1} v and y = v differ even after clearing.
        let wc = WallCrossing { alpha: vec![1], beta: vec![0], eps: eps() };
        let x = wall_crossing_apply(&wc, &v_mono(&[1])); // u^{-1} v
        let y = v_mono(&[1]);
        assert!(!glue_eq(&x, &y, &eps()).unwrap());
        assert!(expand_units(&x, &eps()).is_err());
    }

    #[test]
    fn loops_are_monodromy_free() {
        let chain: Vec<Vec<i64>> = vec![vec![0], vec![1], vec![2]];
        let legs = atlas_legs(&chain, &eps(), true);
        assert!(monodromy_check(&legs).ok);
        let two_cycle = atlas_legs(&[vec![0], vec![1]], &eps(), true);
        assert!(monodromy_check(&two_cycle).ok);
    }

    #[test]
    fn perturbed_eps_breaks_monodromy() {
        let mut legs = atlas_legs(&[vec![0], vec![1], vec![2]], &eps(), true);
        legs[1].eps = q(1, 7);
        let rep = monodromy_check(&legs);
        assert!(!rep.ok);
        assert_eq!(rep.defects.len(), 2);
    }

    #[test]
    fn unit_pow_zero_is_one() {
        assert_eq!(
            unit_power(1, &eps(), 0, &t10()),
            LaurentNov::one(chart_vars(1), t10())
        );
    }
}
