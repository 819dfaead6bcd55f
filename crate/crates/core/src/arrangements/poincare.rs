use std::fmt;

use serde::Serialize;

use super::{build_lattice, Arrangement, IntersectionLattice};
use crate::algebra::{Rational, UniPolyQ};
use crate::error::{Error, Result};

/// `sum_i b_i t^i` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PoincarePoly {
    coeffs: Vec<i64>,
}

impl PoincarePoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PoincarePoly { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn to_unipoly(&self) -> UniPolyQ {
        UniPolyQ::from_integers(&self.coeffs)
    }

    pub fn mul_one_plus_t(&self) -> Self {
        let mut out = vec![0; self.coeffs.len() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] += c;
            out[i + 1] += c;
        }
        Self::new(out)
    }

    /// Exact quotient by `1 + t`.
    pub fn div_one_plus_t(&self) -> Result<Self> {
        let q = self.to_unipoly().div_one_plus_t().ok_or(Error::InexactDivision)?;
        let coeffs = q.coeffs().iter().map(|c| c.to_i64().ok_or(Error::InexactDivision)).collect::<Result<_>>()?;
        Ok(Self::new(coeffs))
    }

    /// Renders with the largest power of `(1+t)` factored out, e.g. `(1+t)^2`.
    pub fn render_factored(&self) -> String {
        let mut k = 0;
        let mut rest = self.clone();
        while rest.degree() > 0 {
            match rest.div_one_plus_t() {
                Ok(q) => {
                    rest = q;
                    k += 1;
                }
                Err(_) => break,
            }
        }
        let power = match k {
            0 => String::new(),
            1 => "(1+t)".to_string(),
            _ => format!("(1+t)^{k}"),
        };
        if rest.coeffs == [1] {
            if power.is_empty() { "1".to_string() } else { power }
        } else if power.is_empty() {
            rest.to_string()
        } else {
            format!("{power}({rest})")
        }
    }
}

impl fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<Rational> = self.coeffs.iter().map(|&x| Rational::from_integer(x)).collect();
        write!(f, "{}", UniPolyQ::new(c).render_ascending("t"))
    }
}

pub fn poincare_of_lattice(lat: &IntersectionLattice) -> PoincarePoly {
    let mut coeffs = vec![0i64; lat.ranks.len()];
    for (c, flats) in lat.ranks.iter().enumerate() {
        let sign = if c % 2 == 0 { 1 } else { -1 };
        coeffs[c] = sign * flats.iter().map(|f| f.mobius).sum::<i64>();
    }
    PoincarePoly::new(coeffs)
}

/// `π(A, t) = sum_X μ(X) (-t)^codim(X)`.
pub fn poincare_affine(a: &Arrangement) -> PoincarePoly {
    poincare_of_lattice(&build_lattice(a))
}

/// `π(A, t) / (1 + t)` for a nonempty central arrangement.
pub fn poincare_projective(a: &Arrangement) -> Result<PoincarePoly> {
    a.require_central_nonempty()?;
    poincare_affine(a).div_one_plus_t()
}
