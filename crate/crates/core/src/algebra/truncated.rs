use std::fmt;

use super::rational::Rational;
use crate::error::{Error, Result};

/// An element of `Q[t]/<t^l>`, stored densely as exactly `l` coefficients.
///
/// Chern and Chow classes use the integral elements; `integer_coeffs` is the
/// checked exit to `i64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedPoly {
    coeffs: Vec<Rational>,
}

impl TruncatedPoly {
    pub fn new(len: usize, coeffs: &[Rational]) -> Self {
        assert!(len >= 1, "truncation length must be positive");
        let mut c: Vec<Rational> = coeffs.iter().take(len).cloned().collect();
        c.resize(len, Rational::zero());
        TruncatedPoly { coeffs: c }
    }

    pub fn from_integers(len: usize, coeffs: &[i64]) -> Self {
        let c: Vec<Rational> = coeffs.iter().map(|&x| Rational::from_integer(x)).collect();
        Self::new(len, &c)
    }

    pub fn one(len: usize) -> Self {
        Self::from_integers(len, &[1])
    }

    /// `1 + a t`, the Chern polynomial of a line bundle with first Chern class `a`.
    pub fn linear(len: usize, a: i64) -> Self {
        Self::from_integers(len, &[1, a])
    }

    /// `c t^k`.
    pub fn monomial(len: usize, k: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); len];
        if k < len {
            coeffs[k] = c;
        }
        TruncatedPoly { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn integer_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_len(other);
        TruncatedPoly { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_len(other);
        TruncatedPoly { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_len(other);
        let n = self.len();
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += &(a * b);
            }
        }
        TruncatedPoly { coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = TruncatedPoly::one(self.len());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse modulo `t^l`.
    ///
    /// Integral inputs must have constant term `±1` so that the inverse stays
    /// integral; non-integral inputs only need a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() || (self.is_integral() && !c0.abs().is_one()) {
            return Err(Error::NonUnitConstant(c0.to_string()));
        }
        let inv0 = c0.recip();
        let n = self.len();
        let mut out = vec![Rational::zero(); n];
        out[0] = inv0.clone();
        for k in 1..n {
            let mut s = Rational::zero();
            for i in 1..=k {
                s += &(&self.coeffs[i] * &out[k - i]);
            }
            out[k] = -(&s * &inv0);
        }
        Ok(TruncatedPoly { coeffs: out })
    }

    /// `p(-t)`.
    pub fn negate_variable(&self) -> Self {
        TruncatedPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn render(&self, var: &str) -> String {
        render_dense(&self.coeffs, var)
    }

    fn check_len(&self, other: &Self) {
        assert_eq!(self.len(), other.len(), "truncation lengths differ");
    }
}

/// Inverse of `a` modulo `t^l`.
pub fn truncated_mul_inv(a: &TruncatedPoly) -> Result<TruncatedPoly> {
    a.inverse()
}

/// Ascending-coefficient rendering with explicit signs, e.g. `1 - 4t + 7t^2`.
pub(crate) fn render_dense(coeffs: &[Rational], var: &str) -> String {
    let mut s = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let coeff = if abs.is_integer() { abs.to_string() } else { format!("({abs})") };
        match k {
            0 => s.push_str(&abs.to_string()),
            _ => {
                if !abs.is_one() {
                    s.push_str(&coeff);
                }
                s.push_str(var);
                if k > 1 {
                    s.push_str(&format!("^{k}"));
                }
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

impl fmt::Debug for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedPoly[{}]({})", self.len(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let a = TruncatedPoly::linear(4, -3);
        let inv = truncated_mul_inv(&a).unwrap();
        assert_eq!(inv, TruncatedPoly::from_integers(4, &[1, 3, 9, 27]));
        assert_eq!(truncated_mul_inv(&TruncatedPoly::one(4)).unwrap(), TruncatedPoly::one(4));
    }

    #[test]
    fn non_unit_constant_rejected() {
        let a = TruncatedPoly::from_integers(3, &[2, 1]);
        assert!(matches!(a.inverse(), Err(Error::NonUnitConstant(_))));
        let z = TruncatedPoly::from_integers(3, &[0, 1]);
        assert!(z.inverse().is_err());
        let half = TruncatedPoly::new(3, &[Rational::new(1, 2)]);
        assert_eq!(half.inverse().unwrap(), TruncatedPoly::from_integers(3, &[2]));
    }

    #[test]
    fn chern_quotient_of_twisted_bundles() {
        // (1-2t)^5 (1-3t)^-2 mod t^4
        let num = TruncatedPoly::linear(4, -2).pow(5);
        let den = TruncatedPoly::linear(4, -3).pow(2);
        let q = num.mul(&den.inverse().unwrap());
        assert_eq!(q, TruncatedPoly::from_integers(4, &[1, -4, 7, -2]));
        assert_eq!(q.render("t"), "1 - 4t + 7t^2 - 2t^3");
    }

    #[test]
    fn negation_is_an_involution() {
        let p = TruncatedPoly::from_integers(4, &[1, 7, 18, 17]);
        assert_eq!(p.negate_variable(), TruncatedPoly::from_integers(4, &[1, -7, 18, -17]));
        assert_eq!(p.negate_variable().negate_variable(), p);
    }
}
