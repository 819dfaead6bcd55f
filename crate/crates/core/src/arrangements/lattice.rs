use std::collections::HashSet;

use serde::Serialize;

use super::Arrangement;
use crate::algebra::linear::{in_row_space, kernel_basis, rref, to_rationals};
use crate::algebra::Rational;

/// A flat: the closed set of hyperplanes containing an intersection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flat {
    /// Indices of every hyperplane containing the flat, ascending.
    pub indices: Vec<usize>,
    pub codim: usize,
    pub mobius: i64,
    /// Reduced echelon basis of the span of the (homogenized) normals.
    #[serde(skip)]
    pub(crate) echelon: Vec<Vec<Rational>>,
    #[serde(skip)]
    pub(crate) mask: u128,
}

impl Flat {
    pub fn contains_hyperplane(&self, i: usize) -> bool {
        self.mask >> i & 1 == 1
    }

    /// Whether `self <= other` in the lattice, i.e. `other` is contained in `self`.
    pub fn is_below(&self, other: &Flat) -> bool {
        self.mask & other.mask == self.mask
    }

    /// A basis of the flat as a linear subspace (central arrangements only).
    pub fn subspace_basis(&self, dim: usize) -> Vec<Vec<Rational>> {
        let rows: Vec<Vec<Rational>> = self.echelon.iter().map(|r| r[1..].to_vec()).collect();
        kernel_basis(&rows, dim)
    }
}

/// Flats grouped by codimension, each carrying its Möbius value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionLattice {
    pub dim: usize,
    pub affine: bool,
    pub ranks: Vec<Vec<Flat>>,
}

impl IntersectionLattice {
    pub fn flats(&self) -> impl Iterator<Item = &Flat> {
        self.ranks.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.ranks.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rank(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn codim(&self, c: usize) -> &[Flat] {
        self.ranks.get(c).map_or(&[], |v| v.as_slice())
    }

    /// Looks up a flat by its hyperplane index set.
    pub fn find(&self, indices: &[usize]) -> Option<&Flat> {
        let mask = indices.iter().fold(0u128, |m, &i| m | 1 << i);
        self.flats().find(|f| f.mask == mask)
    }

    pub fn contains(&self, flat: &Flat) -> bool {
        self.flats().any(|f| f.mask == flat.mask && f.echelon == flat.echelon)
    }

    /// Flat counts per codimension.
    pub fn counts(&self) -> Vec<usize> {
        self.ranks.iter().map(Vec::len).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ranks: Vec<serde_json::Value> = self
            .ranks
            .iter()
            .enumerate()
            .map(|(c, flats)| {
                let fl: Vec<serde_json::Value> = flats
                    .iter()
                    .map(|f| serde_json::json!({ "hyperplanes": f.indices, "mobius": f.mobius }))
                    .collect();
                serde_json::json!({ "codim": c, "flats": fl })
            })
            .collect();
        serde_json::json!({ "affine": self.affine, "ranks": ranks })
    }
}

/// Intersection lattice (semilattice for affine input) with Möbius values.
///
/// Built breadth-first by codimension: each flat is extended by every
/// hyperplane not containing it and the result is closed and deduplicated.
/// Empty affine intersections are discarded.
pub fn build_lattice(a: &Arrangement) -> IntersectionLattice {
    let vecs: Vec<Vec<Rational>> = a.homogenized().iter().map(|v| to_rationals(v)).collect();
    let n = vecs.len();
    let mut e0 = vec![Rational::zero(); a.dim() + 1];
    e0[0] = Rational::one();

    let top = Flat { indices: vec![], codim: 0, mobius: 1, echelon: vec![], mask: 0 };
    let mut ranks = vec![vec![top]];
    loop {
        let prev = ranks.last().unwrap();
        let mut seen: HashSet<u128> = HashSet::new();
        let mut next = Vec::new();
        for x in prev {
            for h in 0..n {
                if x.contains_hyperplane(h) {
                    continue;
                }
                let mut rows = x.echelon.clone();
                rows.push(vecs[h].clone());
                let (echelon, pivots) = rref(&rows);
                if !a.is_central() && in_row_space(&echelon, &pivots, &e0) {
                    continue;
                }
                let mask = (0..n)
                    .filter(|&i| in_row_space(&echelon, &pivots, &vecs[i]))
                    .fold(0u128, |m, i| m | 1 << i);
                if seen.insert(mask) {
                    let indices = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                    next.push(Flat { indices, codim: x.codim + 1, mobius: 0, echelon, mask });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by(|p, q| p.indices.cmp(&q.indices));
        ranks.push(next);
    }
    let mut lat = IntersectionLattice { dim: a.dim(), affine: !a.is_central(), ranks };
    assign_mobius(&mut lat);
    lat
}

fn assign_mobius(lat: &mut IntersectionLattice) {
    for c in 1..lat.ranks.len() {
        for k in 0..lat.ranks[c].len() {
            let mask = lat.ranks[c][k].mask;
            let s: i64 = lat.ranks[..c]
                .iter()
                .flatten()
                .filter(|y| y.mask & mask == y.mask)
                .map(|y| y.mobius)
                .sum();
            lat.ranks[c][k].mobius = -s;
        }
    }
}

/// Recomputes the Möbius values of a lattice from its order relation.
pub fn mobius(mut lat: IntersectionLattice) -> IntersectionLattice {
    assign_mobius(&mut lat);
    lat
}
