//! Truncated formal series `a_0 T^{l_0} + a_1 T^{l_1} + ...` with strictly
//! ascending rational exponents and exact coefficients, considered modulo
//! `T^trunc`. All arithmetic keeps only exponents strictly below the
//! truncation order, so every operation is exact at the stated order.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::Q;

/// Convenience constructor for exact rationals.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Integer rational.
pub fn qi(n: i64) -> Q {
    q(n, 1)
}

/// Parse a rational written as `p` or `p/q`.
pub fn q_from_str(s: &str) -> Result<Q, NovikovError> {
    let bad = || NovikovError::Parse(format!("bad rational `{s}`"));
    let mut parts = s.trim().splitn(2, '/');
    let num: BigInt = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let den: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(num, den))
}

/// Render a rational as `p` or `p/q`.
pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Default truncation order for desk computations.
pub fn default_truncation() -> Q {
    qi(10)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NovikovError {
    #[error("division by zero series")]
    DivisionByZero,
    #[error("series is zero modulo the truncation order; cannot invert")]
    NonInvertible,
    #[error("negative power of a non-invertible series")]
    NegativePowerOfNonUnit,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Coefficient scalar for series: an exact field element.
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + fmt::Debug
{
    /// Embed an integer.
    fn coeff_from_i64(n: i64) -> Self;
    /// Serialize in the report format.
    fn coeff_to_json(&self) -> Value;
    /// Parse from the report format.
    fn coeff_from_json(v: &Value) -> Result<Self, NovikovError>;
    /// Human-readable rendering.
    fn coeff_string(&self) -> String;
}

impl Coeff for Q {
    fn coeff_from_i64(n: i64) -> Self {
        qi(n)
    }
    fn coeff_to_json(&self) -> Value {
        Value::String(q_to_string(self))
    }
    fn coeff_from_json(v: &Value) -> Result<Self, NovikovError> {
        match v {
            Value::String(s) => q_from_str(s),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(qi(i))
                } else {
                    Err(NovikovError::Parse(format!("non-integer number `{n}`")))
                }
            }
            _ => Err(NovikovError::Parse(format!("bad coefficient `{v}`"))),
        }
    }
    fn coeff_string(&self) -> String {
        q_to_string(self)
    }
}

impl Coeff for Complex<Q> {
    fn coeff_from_i64(n: i64) -> Self {
        Complex::new(qi(n), Q::zero())
    }
    fn coeff_to_json(&self) -> Value {
        json!([q_to_string(&self.re), q_to_string(&self.im)])
    }
    fn coeff_from_json(v: &Value) -> Result<Self, NovikovError> {
        match v {
            Value::Array(a) if a.len() == 2 => Ok(Complex::new(
                Q::coeff_from_json(&a[0])?,
                Q::coeff_from_json(&a[1])?,
            )),
            other => Ok(Complex::new(Q::coeff_from_json(other)?, Q::zero())),
        }
    }
    fn coeff_string(&self) -> String {
        format!("({} + {}i)", q_to_string(&self.re), q_to_string(&self.im))
    }
}

/// Valuation of a series: the least exponent, or infinity for the zero
/// series (zero modulo the truncation order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Valuation {
    Finite(Q),
    Infinite,
}

impl Valuation {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
    /// True when the valuation is at least `bound` (infinity counts).
    pub fn at_least(&self, bound: &Q) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinite => true,
        }
    }
}

/// A truncated series with ascending exponents and nonzero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct NovikovSeries<C: Coeff> {
    terms: Vec<(Q, C)>,
    trunc: Q,
}

impl<C: Coeff> NovikovSeries<C> {
    /// Build a series from arbitrary (exponent, coefficient) pairs; terms are
    /// sorted, merged, and reduced modulo the truncation order.
    pub fn new(terms: Vec<(Q, C)>, trunc: Q) -> Self {
        let mut s = NovikovSeries { terms, trunc };
        s.normalize();
        s
    }

    pub fn zero(trunc: Q) -> Self {
        NovikovSeries { terms: Vec::new(), trunc }
    }

    pub fn one(trunc: Q) -> Self {
        Self::monomial(Q::zero(), C::one(), trunc)
    }

    /// The single-term series `c T^e`.
    pub fn monomial(exp: Q, coeff: C, trunc: Q) -> Self {
        Self::new(vec![(exp, coeff)], trunc)
    }

    /// A truncation-order-`trunc` constant.
    pub fn constant(coeff: C, trunc: Q) -> Self {
        Self::monomial(Q::zero(), coeff, trunc)
    }

    pub fn terms(&self) -> &[(Q, C)] {
        &self.terms
    }

    pub fn truncation(&self) -> &Q {
        &self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn normalize(&mut self) {
        self.terms
            .sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Q, C)> = Vec::with_capacity(self.terms.len());
        for (e, c) in self.terms.drain(..) {
            if e >= self.trunc {
                continue;
            }
            match merged.last_mut() {
                Some((le, lc)) if *le == e => {
                    *lc = lc.clone() + c;
                }
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        self.terms = merged;
    }

    /// Re-truncate to a (typically lower) order.
    pub fn truncate_to(&self, trunc: Q) -> Self {
        Self::new(self.terms.clone(), trunc)
    }

    /// Least exponent with nonzero coefficient, or infinity.
    pub fn valuation(&self) -> Valuation {
        match self.terms.first() {
            Some((e, _)) => Valuation::Finite(e.clone()),
            None => Valuation::Infinite,
        }
    }

    pub fn leading(&self) -> Option<(&Q, &C)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    /// Valuation zero and nonzero constant coefficient.
    pub fn is_unitary(&self) -> bool {
        matches!(self.terms.first(), Some((e, _)) if e.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = self.trunc.clone().min(other.trunc.clone());
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(terms, trunc)
    }

    pub fn neg(&self) -> Self {
        NovikovSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
            trunc: self.trunc.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let trunc = self.trunc.clone().min(other.trunc.clone());
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.clone() + e2.clone();
                if e < trunc {
                    terms.push((e, c1.clone() * c2.clone()));
                }
            }
        }
        Self::new(terms, trunc)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(
            self.terms.iter().map(|(e, k)| (e.clone(), k.clone() * c.clone())).collect(),
            self.trunc.clone(),
        )
    }

    /// Multiply by the monomial `c T^e`.
    pub fn shift(&self, exp: &Q, coeff: &C) -> Self {
        Self::new(
            self.terms
                .iter()
                .map(|(e, k)| (e.clone() + exp.clone(), k.clone() * coeff.clone()))
                .collect(),
            self.trunc.clone(),
        )
    }

    /// Multiplicative inverse. Requires a nonzero leading term; the result
    /// carries the same truncation order.
    pub fn invert(&self) -> Result<Self, NovikovError> {
        let (v, lead) = match self.terms.first() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => return Err(NovikovError::NonInvertible),
        };
        // a = lead T^v (1 + r), val(r) > 0; the geometric tail is computed at
        // order trunc + v so that after the T^{-v} shift the result is exact
        // at order trunc.
        let tail_trunc = self.trunc.clone() + v.clone();
        let lead_inv = C::one() / lead;
        let mut r = NovikovSeries::new(
            self.terms[1..]
                .iter()
                .map(|(e, c)| (e.clone() - v.clone(), c.clone() * lead_inv.clone()))
                .collect(),
            tail_trunc.clone(),
        );
        let mut sum = NovikovSeries::one(tail_trunc.clone());
        let mut pow = NovikovSeries::one(tail_trunc.clone());
        r = r.neg();
        if let Valuation::Finite(rv) = r.valuation() {
            debug_assert!(rv > Q::zero(), "tail must have positive valuation");
            let mut order = rv.clone();
            while order < tail_trunc && !pow.is_zero() {
                pow = pow.mul(&r);
                if pow.is_zero() {
                    break;
                }
                sum = sum.add(&pow);
                order += rv.clone();
            }
        }
        let mut out = sum.shift(&(-v), &lead_inv);
        out.trunc = self.trunc.clone();
        out.normalize();
        Ok(out)
    }

    /// Integer power; negative exponents require invertibility.
    pub fn pow_int(&self, k: i64) -> Result<Self, NovikovError> {
        if k < 0 {
            if self.is_zero() {
                return Err(NovikovError::NegativePowerOfNonUnit);
            }
            return self.invert()?.pow_int(-k);
        }
        let mut out = NovikovSeries::one(self.trunc.clone());
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        Ok(out)
    }

    /// Exact division.
    pub fn div(&self, other: &Self) -> Result<Self, NovikovError> {
        if other.is_zero() {
            return Err(NovikovError::DivisionByZero);
        }
        Ok(self.mul(&other.invert()?))
    }

    /// Report-format serialization: a list of `{exponent, coefficient}`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| {
                    json!({"exponent": q_to_string(e), "coefficient": c.coeff_to_json()})
                })
                .collect(),
        )
    }

    /// Parse the report format back into a series at order `trunc`.
    pub fn from_json(v: &Value, trunc: Q) -> Result<Self, NovikovError> {
        let arr = v
            .as_array()
            .ok_or_else(|| NovikovError::Parse("series must be a list".into()))?;
        let mut terms = Vec::with_capacity(arr.len());
        for t in arr {
            let e = t
                .get("exponent")
                .and_then(Value::as_str)
                .ok_or_else(|| NovikovError::Parse("missing exponent".into()))?;
            let c = t
                .get("coefficient")
                .ok_or_else(|| NovikovError::Parse("missing coefficient".into()))?;
            terms.push((q_from_str(e)?, C::coeff_from_json(c)?));
        }
        Ok(Self::new(terms, trunc))
    }

    pub fn to_display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                if e.is_zero() {
                    c.coeff_string()
                } else {
                    format!("{}*T^({})", c.coeff_string(), q_to_string(e))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl NovikovSeries<Q> {
    /// Separate unit-norm predicate: leading coefficient of absolute value 1.
    pub fn leading_norm_one(&self) -> bool {
        matches!(self.terms.first(), Some((_, c)) if c.abs().is_one())
    }
}

impl<C: Coeff> fmt::Display for NovikovSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_display())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Nov;

    fn nov(terms: Vec<(Q, Q)>) -> Nov {
        Nov::new(terms, default_truncation())
    }

    #[test]
    fn add_merges_equal_exponents() {
        // (1 + T^{1/2}) + (2 - T^{1/2}) = 3
        let a = nov(vec![(qi(0), qi(1)), (q(1, 2), qi(1))]);
        let b = nov(vec![(qi(0), qi(2)), (q(1, 2), qi(-1))]);
        assert_eq!(a.add(&b), nov(vec![(qi(0), qi(3))]));
    }

    #[test]
    fn mul_respects_truncation() {
        // (T^5)*(T^6) = 0 at truncation order 10
        let a = nov(vec![(qi(5), qi(1))]);
        let b = nov(vec![(qi(6), qi(1))]);
        assert!(a.mul(&b).is_zero());
    }

    #[test]
    fn invert_geometric_series() {
        // invert(1 + T) at truncation order 3 = 1 - T + T^2
        let a = Nov::new(vec![(qi(0), qi(1)), (qi(1), qi(1))], qi(3));
        let inv = a.invert().unwrap();
        assert_eq!(
            inv,
            Nov::new(vec![(qi(0), qi(1)), (qi(1), qi(-1)), (qi(2), qi(1))], qi(3))
        );
        assert_eq!(a.mul(&inv), Nov::one(qi(3)));
    }

    #[test]
    fn invert_pure_monomial() {
        // invert(-T^{1/2}) = -T^{-1/2}
        let a = nov(vec![(q(1, 2), qi(-1))]);
        let inv = a.invert().unwrap();
        assert_eq!(inv, nov(vec![(q(-1, 2), qi(-1))]));
        assert_eq!(a.mul(&inv), Nov::one(default_truncation()));
    }

    #[test]
    fn valuation_and_unitary() {
        let a = nov(vec![(q(1, 2), qi(-1))]);
        assert_eq!(a.valuation(), Valuation::Finite(q(1, 2)));
        assert!(!a.is_unitary());
        let u = nov(vec![(qi(0), qi(2)), (q(1, 3), qi(5))]);
        assert!(u.is_unitary());
        assert!(!u.leading_norm_one());
        let n = nov(vec![(qi(0), qi(-1)), (q(1, 3), qi(5))]);
        assert!(n.leading_norm_one());
        assert_eq!(Nov::zero(default_truncation()).valuation(), Valuation::Infinite);
    }

    #[test]
    fn invert_zero_fails() {
        assert_eq!(
            Nov::zero(default_truncation()).invert(),
            Err(NovikovError::NonInvertible)
        );
        // A series that is zero modulo the truncation order is not invertible.
        let hidden = Nov::new(vec![(qi(11), qi(3))], default_truncation());
        assert_eq!(hidden.invert(), Err(NovikovError::NonInvertible));
    }

    #[test]
    fn pow_negative() {
        let a = nov(vec![(q(1, 2), qi(1))]);
        assert_eq!(a.pow_int(-2).unwrap(), nov(vec![(qi(-1), qi(1))]));
    }

    #[test]
    fn json_round_trip() {
        let a = nov(vec![(q(-1, 2), qi(1)), (q(3, 4), q(2, 3))]);
        let v = a.to_json();
        let back = Nov::from_json(&v, default_truncation()).unwrap();
        assert_eq!(a, back);
        assert_eq!(
            v,
            serde_json::json!([
                {"exponent": "-1/2", "coefficient": "1"},
                {"exponent": "3/4", "coefficient": "2/3"},
            ])
        );
    }

    #[test]
    fn complex_coefficients() {
        use num_complex::Complex;
        let i = Complex::new(Q::zero(), Q::one());
        let a = NovC::monomial(q(1, 2), i.clone(), default_truncation());
        let sq = a.mul(&a);
        assert_eq!(
            sq,
            NovC::monomial(qi(1), Complex::new(qi(-1), Q::zero()), default_truncation())
        );
        let back = NovC::from_json(&a.to_json(), default_truncation()).unwrap();
        assert_eq!(a, back);
    }
    use crate::NovC;

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_q(max_den: i64) -> impl Strategy<Value = Q> {
            (-8i64..8, 1i64..=max_den).prop_map(|(n, d)| q(n, d))
        }

        fn arb_series() -> impl Strategy<Value = Nov> {
            proptest::collection::vec((arb_q(4), arb_q(6)), 0..6)
                .prop_map(|t| Nov::new(t, default_truncation()))
        }

        proptest! {
            #[test]
            fn ring_laws(a in arb_series(), b in arb_series(), c in arb_series()) {
                prop_assert_eq!(a.add(&b), b.add(&a));
                prop_assert_eq!(a.mul(&b), b.mul(&a));
                prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                prop_assert!(a.sub(&a).is_zero());
            }

            #[test]
            fn valuation_of_product_adds(a in arb_series(), b in arb_series()) {
                let p = a.mul(&b);
                match (a.valuation(), b.valuation()) {
                    (Valuation::Finite(va), Valuation::Finite(vb)) => {
                        let expect = va + vb;
                        if &expect < p.truncation() {
                            // Coefficients are in a field, so products of
                            // leading terms never cancel.
                            prop_assert_eq!(p.valuation(), Valuation::Finite(expect));
                        } else {
                            prop_assert!(p.is_zero());
                        }
                    }
                    _ => prop_assert!(p.is_zero()),
                }
            }

            #[test]
            fn valuation_of_sum_at_least_min(a in arb_series(), b in arb_series()) {
                let s = a.add(&b);
                if let (Valuation::Finite(va), Valuation::Finite(vb)) = (a.valuation(), b.valuation()) {
                    let min = va.min(vb);
                    prop_assert!(s.valuation().at_least(&min));
                }
            }

            #[test]
            fn inverse_is_two_sided(a in arb_series()) {
                if !a.is_zero() {
                    let inv = a.invert().unwrap();
                    prop_assert_eq!(a.mul(&inv), Nov::one(a.truncation().clone()));
                    prop_assert_eq!(inv.mul(&a), Nov::one(a.truncation().clone()));
                }
            }

            #[test]
            fn truncation_is_monotone(a in arb_series(), b in arb_series()) {
                // Results computed at order 10 then cut to order 3 agree with
                // results computed at order 3.
                let t3 = qi(3);
                prop_assert_eq!(
                    a.mul(&b).truncate_to(t3.clone()),
                    a.truncate_to(t3.clone()).mul(&b.truncate_to(t3.clone()))
                );
            }
        }
    }
}
