use super::{Arrangement, Flat, IntersectionLattice};
use crate::algebra::linear::{rref, to_rationals};
use crate::error::{Error, Result};

/// The affine arrangement cut out on `{α_H = 1}`, in the remaining `l - 1` coordinates.
pub fn decone(a: &Arrangement, h: usize) -> Result<Arrangement> {
    a.require_central_nonempty()?;
    if h >= a.len() {
        return Err(Error::IndexOutOfRange { index: h, len: a.len() });
    }
    if a.dim() < 2 {
        return Err(Error::InvalidArrangement("deconing needs dimension at least 2".into()));
    }
    let alpha = &a.normals()[h];
    let k = alpha.iter().position(|&x| x != 0).expect("nonzero normal");
    let mut normals = Vec::new();
    let mut constants = Vec::new();
    for (i, beta) in a.normals().iter().enumerate() {
        if i == h {
            continue;
        }
        // z_k = (1 - sum_{j != k} alpha_j z_j) / alpha_k, scaled by alpha_k
        let lin: Vec<i64> = (0..a.dim()).filter(|&j| j != k).map(|j| beta[j] * alpha[k] - beta[k] * alpha[j]).collect();
        normals.push(lin);
        constants.push(beta[k]);
    }
    Arrangement::affine(a.dim() - 1, normals, constants)
}

/// The sub-arrangement of hyperplanes containing `x`.
pub fn localize(a: &Arrangement, lat: &IntersectionLattice, x: &Flat) -> Result<Arrangement> {
    if !lat.contains(x) {
        return Err(Error::FlatNotInLattice);
    }
    let normals = x.indices.iter().map(|&i| a.normals()[i].clone()).collect();
    let out = Arrangement::central(a.dim(), normals)?;
    match a.labels() {
        Some(l) => out.with_labels(x.indices.iter().map(|&i| l[i].clone()).collect()),
        None => Ok(out),
    }
}

/// The induced arrangement on `V / center`, in `rank` coordinates.
///
/// Restricts every normal to the pivot columns of the row space, which is
/// injective on that space and so preserves all linear dependencies.
pub fn essentialize(a: &Arrangement) -> Result<Arrangement> {
    if !a.is_central() {
        return Err(Error::NotCentral);
    }
    let rows: Vec<_> = a.normals().iter().map(|n| to_rationals(n)).collect();
    let (_, pivots) = rref(&rows);
    if pivots.len() == a.dim() || a.is_empty() {
        return Ok(a.clone());
    }
    let normals = a.normals().iter().map(|n| pivots.iter().map(|&p| n[p]).collect()).collect();
    let out = Arrangement::central(pivots.len(), normals)?;
    match a.labels() {
        Some(l) => out.with_labels(l.to_vec()),
        None => Ok(out),
    }
}
