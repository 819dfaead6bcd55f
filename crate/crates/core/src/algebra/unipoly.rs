use std::fmt;

use super::rational::Rational;
use super::truncated::render_dense;

/// A dense univariate polynomial over the rationals (Hilbert polynomials,
/// Poincaré polynomials with rational arithmetic).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPolyQ {
    coeffs: Vec<Rational>,
}

impl UniPolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPolyQ { coeffs }
    }

    pub fn zero() -> Self {
        UniPolyQ { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_integers(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Rational::from_integer(x)).collect())
    }

    /// `t`.
    pub fn t() -> Self {
        Self::from_integers(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    /// `p(-t)`.
    pub fn substitute_negate(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(t + a)`.
    pub fn shift(&self, a: &Rational) -> Self {
        let lin = Self::new(vec![a.clone(), Rational::one()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// The polynomial `binom(t + a, k)` in `t`.
    pub fn binomial(a: i64, k: usize) -> Self {
        let mut acc = Self::constant(Rational::one());
        for j in 0..k as i64 {
            acc = acc.mul(&Self::new(vec![Rational::from_integer(a - j), Rational::one()]));
        }
        let mut fact = Rational::one();
        for j in 1..=k as i64 {
            fact = fact * Rational::from_integer(j);
        }
        acc.scale(&fact.recip())
    }

    /// Exact division by `(1 + t)`; `None` if the remainder is nonzero.
    pub fn div_one_plus_t(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // synthetic division by (t + 1) from the top coefficient
        let n = self.coeffs.len();
        let mut q = vec![Rational::zero(); n.saturating_sub(1)];
        let mut carry = Rational::zero();
        for k in (1..n).rev() {
            carry = &self.coeffs[k] - &carry;
            q[k - 1] = carry.clone();
        }
        if &self.coeffs[0] - &carry != Rational::zero() {
            return None;
        }
        Some(Self::new(q))
    }

    pub fn render(&self, var: &str) -> String {
        // descending, as Hilbert polynomials are usually written
        let mut parts = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if parts.is_empty() {
                if neg {
                    parts.push('-');
                }
            } else {
                parts.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if abs.is_integer() { abs.to_string() } else { format!("({abs})") };
            match k {
                0 => parts.push_str(&abs.to_string()),
                _ => {
                    if !abs.is_one() {
                        parts.push_str(&coeff);
                    }
                    parts.push_str(var);
                    if k > 1 {
                        parts.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        if parts.is_empty() {
            parts.push('0');
        }
        parts
    }

    /// Ascending rendering (`1 + 7t + 18t^2`), used for Poincaré-style series.
    pub fn render_ascending(&self, var: &str) -> String {
        render_dense(&self.coeffs, var)
    }
}

pub fn poly_substitute_negate(p: &UniPolyQ) -> UniPolyQ {
    p.substitute_negate()
}

impl fmt::Display for UniPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

impl fmt::Debug for UniPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPolyQ({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negation() {
        let p = UniPolyQ::from_integers(&[1, 7, 18, 17]);
        assert_eq!(poly_substitute_negate(&p), UniPolyQ::from_integers(&[1, -7, 18, -17]));
        assert_eq!(poly_substitute_negate(&UniPolyQ::from_integers(&[5])), UniPolyQ::from_integers(&[5]));
        assert_eq!(poly_substitute_negate(&UniPolyQ::t()), UniPolyQ::from_integers(&[0, -1]));
    }

    #[test]
    fn binomial_polynomial() {
        // binom(t + 2, 3) = t^3/6 + t^2/2 + t/3
        let b = UniPolyQ::binomial(2, 3);
        assert_eq!(b.render("t"), "(1/6)t^3 + (1/2)t^2 + (1/3)t");
        for t in 0..10 {
            let expect = (t + 2) * (t + 1) * t / 6;
            assert_eq!(b.eval(&Rational::from_integer(t)), Rational::from_integer(expect));
        }
    }

    #[test]
    fn division_by_one_plus_t() {
        let p = UniPolyQ::from_integers(&[1, 8, 25, 35, 17]);
        assert_eq!(p.div_one_plus_t().unwrap(), UniPolyQ::from_integers(&[1, 7, 18, 17]));
        assert!(UniPolyQ::from_integers(&[1, 1, 1]).div_one_plus_t().is_none());
    }

    #[test]
    fn shift_matches_evaluation() {
        let p = UniPolyQ::new(vec![
            Rational::zero(),
            Rational::new(-3, 2),
            Rational::one(),
            Rational::new(1, 2),
        ]);
        let q = p.shift(&Rational::from_integer(-1));
        assert_eq!(q.render("t"), "(1/2)t^3 - (1/2)t^2 - 2t + 2");
    }
}
