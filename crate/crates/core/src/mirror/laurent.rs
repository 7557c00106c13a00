//! Laurent polynomials in named chart variables with truncated-series
//! coefficients: the coordinate rings of mirror charts.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

use crate::novikov::{Coeff, NovikovSeries};
use crate::Q;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LaurentError {
    #[error("variable index {0} out of range")]
    BadVariable(usize),
    #[error("substitution into a negative power of `{0}` is not supported")]
    NegativeSubstitution(String),
    #[error("evaluation requires an invertible value for `{0}`")]
    NonInvertibleValue(String),
    #[error("variable lists differ")]
    VariableMismatch,
    #[error("series error: {0}")]
    Series(#[from] crate::novikov::NovikovError),
}

/// A finite sum of monomials `c(T) * x^e` with integer exponent vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly<C: Coeff> {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, NovikovSeries<C>>,
    trunc: Q,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero(vars: Vec<String>, trunc: Q) -> Self {
        LaurentPoly { vars, terms: BTreeMap::new(), trunc }
    }

    pub fn one(vars: Vec<String>, trunc: Q) -> Self {
        let n = vars.len();
        Self::monomial(vars, vec![0; n], NovikovSeries::one(trunc.clone()), trunc)
    }

    pub fn monomial(
        vars: Vec<String>,
        exps: Vec<i64>,
        coeff: NovikovSeries<C>,
        trunc: Q,
    ) -> Self {
        assert_eq!(vars.len(), exps.len());
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff.truncate_to(trunc.clone()));
        }
        LaurentPoly { vars, terms, trunc }
    }

    /// The variable `vars[i]` as a polynomial.
    pub fn var(vars: Vec<String>, i: usize, trunc: Q) -> Self {
        let mut e = vec![0i64; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, NovikovSeries::one(trunc.clone()), trunc)
    }

    pub fn constant(vars: Vec<String>, c: NovikovSeries<C>, trunc: Q) -> Self {
        let n = vars.len();
        Self::monomial(vars, vec![0; n], c, trunc)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn truncation(&self) -> &Q {
        &self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, NovikovSeries<C>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn insert(&mut self, e: Vec<i64>, c: NovikovSeries<C>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
            trunc: self.trunc.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = Self::zero(self.vars.clone(), self.trunc.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, k: &NovikovSeries<C>) -> Self {
        let mut out = Self::zero(self.vars.clone(), self.trunc.clone());
        for (e, c) in &self.terms {
            out.insert(e.clone(), c.mul(k));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.vars.clone(), self.trunc.clone());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Multiply every monomial by `x_i^{delta}`.
    pub fn shift_exp(&self, i: usize, delta: i64) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i] += delta;
                    (e, c.clone())
                })
                .collect(),
            trunc: self.trunc.clone(),
        }
    }

    /// Substitute `replacement` for variable `i`; only nonnegative powers of
    /// `x_i` are supported.
    pub fn substitute(&self, i: usize, replacement: &Self) -> Result<Self, LaurentError> {
        if i >= self.vars.len() {
            return Err(LaurentError::BadVariable(i));
        }
        assert_eq!(self.vars, replacement.vars);
        let mut out = Self::zero(self.vars.clone(), self.trunc.clone());
        for (e, c) in &self.terms {
            let k = e[i];
            if k < 0 {
                return Err(LaurentError::NegativeSubstitution(self.vars[i].clone()));
            }
            let mut rest = e.clone();
            rest[i] = 0;
            let base = Self::monomial(self.vars.clone(), rest, c.clone(), self.trunc.clone());
            out = out.add(&base.mul(&replacement.pow(k as u32)));
        }
        Ok(out)
    }

    /// Partial derivative in variable `i`.
    pub fn partial(&self, i: usize) -> Result<Self, LaurentError> {
        if i >= self.vars.len() {
            return Err(LaurentError::BadVariable(i));
        }
        let mut out = Self::zero(self.vars.clone(), self.trunc.clone());
        for (e, c) in &self.terms {
            let k = e[i];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.insert(e2, c.scale(&C::coeff_from_i64(k)));
        }
        Ok(out)
    }

    /// Evaluate at a tuple of series; negative exponents require invertible
    /// values.
    pub fn eval(&self, values: &[NovikovSeries<C>]) -> Result<NovikovSeries<C>, LaurentError> {
        assert_eq!(values.len(), self.vars.len());
        let mut acc = NovikovSeries::zero(self.trunc.clone());
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = values[i]
                    .pow_int(k)
                    .map_err(|_| LaurentError::NonInvertibleValue(self.vars[i].clone()))?;
                term = term.mul(&p);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Report-format serialization: a list of `{monomial, coefficient}`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!({"monomial": e, "coefficient": c.to_json()}))
                .collect(),
        )
    }

    pub fn to_display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k != 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            self.vars[i].clone()
                        } else {
                            format!("{}^{}", self.vars[i], k)
                        }
                    })
                    .collect();
                if mono.is_empty() {
                    format!("({})", c.to_display())
                } else {
                    format!("({})*{}", c.to_display(), mono.join("*"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::{default_truncation, q, qi};
    use crate::{LaurentNov, Nov};

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn t10() -> Q {
        default_truncation()
    }

    #[test]
    fn arithmetic_basics() {
        let v = vars(&["x", "y"]);
        let x = LaurentNov::var(v.clone(), 0, t10());
        let y = LaurentNov::var(v.clone(), 1, t10());
        let s = x.add(&y);
        let sq = s.mul(&s);
        // (x+y)^2 = x^2 + 2xy + y^2
        assert_eq!(sq.terms().len(), 3);
        assert_eq!(
            sq.terms().get(&vec![1, 1]).unwrap(),
            &Nov::constant(qi(2), t10())
        );
        assert!(sq.sub(&sq).is_zero());
    }

    #[test]
    fn substitution() {
        let v = vars(&["x", "y"]);
        let x = LaurentNov::var(v.clone(), 0, t10());
        let y = LaurentNov::var(v.clone(), 1, t10());
        // y^2 + x with y -> x + 1 gives x^2 + 3x + 1.
        let p = y.mul(&y).add(&x);
        let repl = x.add(&LaurentNov::one(v.clone(), t10()));
        let s = p.substitute(1, &repl).unwrap();
        let expect = x
            .mul(&x)
            .add(&x.scale(&Nov::constant(qi(3), t10())))
            .add(&LaurentNov::one(v, t10()));
        assert_eq!(s, expect);
    }

    #[test]
    fn negative_substitution_rejected() {
        let v = vars(&["z"]);
        let zinv = LaurentNov::monomial(v.clone(), vec![-1], Nov::one(t10()), t10());
        assert!(matches!(
            zinv.substitute(0, &LaurentNov::one(v, t10())),
            Err(LaurentError::NegativeSubstitution(_))
        ));
    }

    #[test]
    fn partial_derivative() {
        let v = vars(&["z1", "z2"]);
        // W = z1 + z2 + T^{-1/2} z1 z2
        let z1 = LaurentNov::var(v.clone(), 0, t10());
        let z2 = LaurentNov::var(v.clone(), 1, t10());
        let cross = LaurentNov::monomial(
            v.clone(),
            vec![1, 1],
            Nov::monomial(q(-1, 2), qi(1), t10()),
            t10(),
        );
        let w = z1.add(&z2).add(&cross);
        let d1 = w.partial(0).unwrap();
        // dW/dz1 = 1 + T^{-1/2} z2
        let expect = LaurentNov::one(v.clone(), t10()).add(&LaurentNov::monomial(
            v.clone(),
            vec![0, 1],
            Nov::monomial(q(-1, 2), qi(1), t10()),
            t10(),
        ));
        assert_eq!(d1, expect);
    }

    #[test]
    fn eval_with_negative_exponents() {
        let v = vars(&["z"]);
        // z + T z^{-1} at z = T^{1/2} gives 2 T^{1/2}.
        let z = LaurentNov::var(v.clone(), 0, t10());
        let p = z.add(&LaurentNov::monomial(
            v.clone(),
            vec![-1],
            Nov::monomial(qi(1), qi(1), t10()),
            t10(),
        ));
        let val = p.eval(&[Nov::monomial(q(1, 2), qi(1), t10())]).unwrap();
        assert_eq!(val, Nov::monomial(q(1, 2), qi(2), t10()));
        assert!(p.eval(&[Nov::zero(t10())]).is_err());
    }
}
