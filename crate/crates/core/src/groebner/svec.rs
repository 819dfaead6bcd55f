use std::cmp::Ordering;

use super::free::FreeModuleElement;
use super::order::EngineOrder;
use crate::algebra::{Monomial, MultiPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub mono: Monomial,
    pub comp: usize,
    pub coeff: Rational,
}

/// A module element as one list of terms, sorted descending in an [`EngineOrder`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct SparseVec {
    pub terms: Vec<Term>,
}

impl SparseVec {
    pub fn from_terms(mut terms: Vec<Term>, ord: &EngineOrder) -> Self {
        terms.sort_by(|a, b| ord.cmp((&b.mono, b.comp), (&a.mono, a.comp)));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.mono == t.mono && l.comp == t.comp => l.coeff += &t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        SparseVec { terms: out }
    }

    pub fn from_element(e: &FreeModuleElement, ord: &EngineOrder) -> Self {
        let mut terms = Vec::new();
        for (comp, p) in e.components().iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push(Term { mono: *m, comp, coeff: c.clone() });
            }
        }
        Self::from_terms(terms, ord)
    }

    /// Components at `offset..offset + rank` as an element of rank `rank`.
    pub fn to_element(&self, nvars: usize, offset: usize, rank: usize) -> FreeModuleElement {
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            if t.comp >= offset && t.comp < offset + rank {
                buckets[t.comp - offset].push((t.mono, t.coeff.clone()));
            }
        }
        FreeModuleElement::new(nvars, buckets.into_iter().map(|b| MultiPoly::from_terms(nvars, b)).collect())
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&mut self, c: &Rational) {
        for t in &mut self.terms {
            t.coeff *= c;
        }
    }

    pub fn make_monic(&mut self) {
        if let Some(l) = self.lead() {
            if !l.coeff.is_one() {
                let inv = l.coeff.recip();
                self.scale(&inv);
            }
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> SparseVec {
        SparseVec {
            terms: self
                .terms
                .iter()
                .map(|t| Term { mono: t.mono.mul(m), comp: t.comp, coeff: &t.coeff * c })
                .collect(),
        }
    }

    /// `self - c * m * other`, merged in order.
    pub fn sub_mul(&self, c: &Rational, m: &Monomial, other: &SparseVec, ord: &EngineOrder) -> SparseVec {
        let a = &self.terms;
        let b = &other.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut bj: Option<Term> = None;
        loop {
            if bj.is_none() && j < b.len() {
                let t = &b[j];
                bj = Some(Term { mono: t.mono.mul(m), comp: t.comp, coeff: -(&t.coeff * c) });
                j += 1;
            }
            match (a.get(i), bj.as_ref()) {
                (None, None) => break,
                (Some(x), None) => {
                    out.push(x.clone());
                    i += 1;
                }
                (None, Some(_)) => out.push(bj.take().unwrap()),
                (Some(x), Some(y)) => match ord.cmp((&x.mono, x.comp), (&y.mono, y.comp)) {
                    Ordering::Greater => {
                        out.push(x.clone());
                        i += 1;
                    }
                    Ordering::Less => out.push(bj.take().unwrap()),
                    Ordering::Equal => {
                        let s = &x.coeff + &y.coeff;
                        if !s.is_zero() {
                            out.push(Term { mono: x.mono, comp: x.comp, coeff: s });
                        }
                        i += 1;
                        bj = None;
                    }
                },
            }
        }
        SparseVec { terms: out }
    }
}
