//! Central and affine hyperplane arrangements and their combinatorics.

mod lattice;
mod ops;
mod poincare;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::{MultiPoly, MAX_VARS};
use crate::error::{Error, Result};

pub use lattice::{build_lattice, mobius, Flat, IntersectionLattice};
pub use ops::{decone, essentialize, localize};
pub use poincare::{poincare_affine, poincare_of_lattice, poincare_projective, PoincarePoly};

/// A finite set of hyperplanes in `C^l` given by integer linear forms.
///
/// Central arrangements have no constants. Affine arrangements (produced by
/// deconing) carry a constant `c` per hyperplane, meaning `a·y + c = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arrangement {
    dim: usize,
    normals: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constants: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

/// On-disk format: `{ "l": 4, "hyperplanes": [[1,0,0,0], ...], "labels": [...] }`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrangementFile {
    l: usize,
    hyperplanes: Vec<Vec<i64>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
    #[serde(default)]
    constants: Option<Vec<i64>>,
}

fn primitive(v: &mut [i64]) {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

/// Makes `v` primitive with its first nonzero entry among `v[..lead]` positive.
fn normalize(v: &mut [i64], lead: usize) {
    primitive(v);
    if v[..lead].iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

impl Arrangement {
    /// A central arrangement; normals are made primitive with a positive leading entry.
    pub fn central(dim: usize, normals: Vec<Vec<i64>>) -> Result<Self> {
        Self::build(dim, normals, None, None)
    }

    /// An affine arrangement of hyperplanes `a·y + c = 0`.
    pub fn affine(dim: usize, normals: Vec<Vec<i64>>, constants: Vec<i64>) -> Result<Self> {
        if constants.len() != normals.len() {
            return Err(Error::InvalidArrangement(format!(
                "{} constants for {} hyperplanes",
                constants.len(),
                normals.len()
            )));
        }
        Self::build(dim, normals, Some(constants), None)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.normals.len() {
            return Err(Error::InvalidArrangement(format!(
                "{} labels for {} hyperplanes",
                labels.len(),
                self.normals.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    fn build(dim: usize, normals: Vec<Vec<i64>>, constants: Option<Vec<i64>>, labels: Option<Vec<String>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArrangement("dimension must be at least 1".into()));
        }
        if dim > MAX_VARS {
            return Err(Error::TooManyVariables(dim));
        }
        if normals.len() > 128 {
            return Err(Error::InvalidArrangement(format!("{} hyperplanes; at most 128 supported", normals.len())));
        }
        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(normals.len());
        for (i, n) in normals.iter().enumerate() {
            if n.len() != dim {
                return Err(Error::DimensionMismatch { index: i, expected: dim, found: n.len() });
            }
            if n.iter().all(|&x| x == 0) {
                return Err(Error::ZeroNormal(i));
            }
            let mut row = n.clone();
            if let Some(c) = &constants {
                row.push(c[i]);
            }
            normalize(&mut row, dim);
            if let Some(j) = rows.iter().position(|r| *r == row) {
                return Err(Error::DuplicateHyperplane(j, i));
            }
            rows.push(row);
        }
        let (normals, constants) = match constants {
            None => (rows, None),
            Some(_) => {
                let c = rows.iter().map(|r| r[dim]).collect();
                (rows.into_iter().map(|mut r| { r.pop(); r }).collect(), Some(c))
            }
        };
        Ok(Arrangement { dim, normals, constants, labels })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[Vec<i64>] {
        &self.normals
    }

    pub fn constants(&self) -> Option<&[i64]> {
        self.constants.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn is_central(&self) -> bool {
        self.constants.is_none()
    }

    /// Rank of the normal vectors (codimension of the center for central arrangements).
    pub fn rank(&self) -> usize {
        let rows: Vec<_> = self.normals.iter().map(|n| crate::algebra::linear::to_rationals(n)).collect();
        crate::algebra::linear::rank(&rows)
    }

    pub fn is_essential(&self) -> bool {
        self.is_central() && self.rank() == self.dim
    }

    /// The linear forms `α_H` as polynomials in `dim` variables.
    pub fn linear_forms(&self) -> Vec<MultiPoly> {
        self.normals.iter().map(|n| MultiPoly::linear_form(n)).collect()
    }

    /// Homogenized vectors `(c, a)`; central hyperplanes get `c = 0`.
    pub(crate) fn homogenized(&self) -> Vec<Vec<i64>> {
        self.normals
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let mut v = vec![self.constants.as_ref().map_or(0, |c| c[i])];
                v.extend_from_slice(n);
                v
            })
            .collect()
    }

    pub fn require_central_nonempty(&self) -> Result<()> {
        if !self.is_central() {
            return Err(Error::NotCentral);
        }
        if self.is_empty() {
            return Err(Error::EmptyArrangement);
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({ "l": self.dim, "hyperplanes": self.normals });
        if let Some(c) = &self.constants {
            v["constants"] = serde_json::json!(c);
        }
        if let Some(l) = &self.labels {
            v["labels"] = serde_json::json!(l);
        }
        v
    }

    /// Renders each hyperplane as a linear form, e.g. `x - w`.
    pub fn render_forms(&self) -> Vec<String> {
        let names = crate::algebra::variable_names(self.dim);
        self.normals
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let mut p = MultiPoly::linear_form(n);
                if let Some(c) = &self.constants {
                    p = &p + &MultiPoly::constant(self.dim, crate::algebra::Rational::from_integer(c[i]));
                }
                p.render(&names)
            })
            .collect()
    }
}

/// Parses the JSON arrangement format and normalizes the hyperplanes.
pub fn parse_arrangement(input: &str) -> Result<Arrangement> {
    let file: ArrangementFile = serde_json::from_str(input)?;
    let a = match file.constants {
        None => Arrangement::central(file.l, file.hyperplanes)?,
        Some(c) => Arrangement::affine(file.l, file.hyperplanes, c)?,
    };
    match file.labels {
        Some(l) => a.with_labels(l),
        None => Ok(a),
    }
}
