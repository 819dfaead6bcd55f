use super::buchberger::groebner;
use super::free::GradedModulePresentation;
use super::order::ModuleOrder;
use super::resolution::free_resolution;
use super::svec::SparseVec;
use crate::algebra::{Monomial, Rational, UniPolyQ};
use crate::error::{Error, Result};

/// Number of monomials of degree `k` in `l` variables.
pub(crate) fn monomial_count(l: i64, k: i64) -> i128 {
    if k < 0 {
        return 0;
    }
    binom((k + l - 1) as i128, (l - 1) as i128)
}

fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Hilbert series `N(t) / (1 - t)^l` of a graded module; `N` is a Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub nvars: usize,
    /// Exponent of `coeffs[0]`.
    pub offset: i64,
    pub coeffs: Vec<i64>,
}

impl HilbertSeries {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn function(&self, k: i64) -> i128 {
        let l = self.nvars as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c as i128 * monomial_count(l, k - self.offset - i as i64))
            .sum()
    }

    /// Krull dimension: `l` minus the order of vanishing of `N` at `t = 1`; `-1` for zero.
    pub fn krull_dim(&self) -> i64 {
        if self.is_zero() {
            return -1;
        }
        let mut c: Vec<i128> = self.coeffs.iter().map(|&x| x as i128).collect();
        let mut mult = 0;
        while c.iter().sum::<i128>() == 0 {
            // divide by (1 - t)
            let mut q = Vec::with_capacity(c.len() - 1);
            let mut acc = 0;
            for &x in &c[..c.len() - 1] {
                acc += x;
                q.push(acc);
            }
            c = q;
            mult += 1;
        }
        self.nvars as i64 - mult
    }

    /// `sum_i n_i binom(t - i + l - 1, l - 1)`.
    pub fn polynomial(&self) -> UniPolyQ {
        let l = self.nvars as i64;
        let mut p = UniPolyQ::zero();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let a = self.offset + i as i64;
                let b = UniPolyQ::binomial(l - 1 - a, (l - 1) as usize);
                p = p.add(&b.scale(&Rational::from_integer(c)));
            }
        }
        p
    }

    /// Largest exponent of the numerator.
    pub fn top_degree(&self) -> i64 {
        self.offset + self.coeffs.len() as i64 - 1
    }
}

/// Numerator of the Hilbert series of `S / I` for a monomial ideal `I`.
fn monomial_numerator(gens: Vec<Monomial>, nvars: usize) -> Vec<i64> {
    let mut gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    let support = |m: &Monomial| m.exps().iter().filter(|&&e| e > 0).count();
    if gens.iter().all(|m| support(m) == 1) {
        let mut p = vec![1i64];
        for m in &gens {
            p = poly_mul(&p, &one_minus_t_pow(m.degree() as usize));
        }
        return p;
    }
    // pivot on the variable occurring in the most non-pure generators
    let mut counts = vec![0usize; nvars];
    for m in gens.iter().filter(|m| support(m) > 1) {
        for (v, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                counts[v] += 1;
            }
        }
    }
    let v = (0..nvars).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).unwrap();
    let x = Monomial::var(nvars, v);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| if m.exp(v) > 0 { x.quotient_of(m).unwrap() } else { *m })
        .collect();
    gens.retain(|m| m.exp(v) == 0);
    gens.push(x);
    let a = monomial_numerator(gens, nvars);
    let b = monomial_numerator(colon, nvars);
    let mut out = a;
    let shifted: Vec<i64> = std::iter::once(0).chain(b).collect();
    poly_add_in_place(&mut out, &shifted);
    out
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp_lex(b)));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn one_minus_t_pow(e: usize) -> Vec<i64> {
    let mut p = vec![0; e + 1];
    p[0] = 1;
    p[e] -= 1;
    p
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_in_place(a: &mut Vec<i64>, b: &[i64]) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (i, &y) in b.iter().enumerate() {
        a[i] += y;
    }
}

/// Hilbert series from the leading terms of a Gröbner basis of the relations.
pub fn hilbert_series(m: &GradedModulePresentation) -> HilbertSeries {
    let nvars = m.nvars();
    let twists = m.generators().twists();
    if twists.is_empty() {
        return HilbertSeries { nvars, offset: 0, coeffs: vec![] };
    }
    let ord = ModuleOrder::grevlex(twists.to_vec()).engine();
    let rels: Vec<SparseVec> = m.nonzero_relations().iter().map(|r| SparseVec::from_element(r, &ord)).collect();
    let gb = groebner(rels, &ord);
    let mut per_comp: Vec<Vec<Monomial>> = vec![Vec::new(); twists.len()];
    for g in &gb {
        per_comp[g.terms[0].comp].push(g.terms[0].mono);
    }
    let offset = *twists.iter().min().unwrap() as i64;
    let mut total: Vec<i64> = Vec::new();
    for (j, leads) in per_comp.into_iter().enumerate() {
        let n = monomial_numerator(leads, nvars);
        let shift = (twists[j] as i64 - offset) as usize;
        let padded: Vec<i64> = std::iter::repeat_n(0, shift).chain(n).collect();
        poly_add_in_place(&mut total, &padded);
    }
    while total.last() == Some(&0) {
        total.pop();
    }
    HilbertSeries { nvars, offset, coeffs: total }
}

pub fn hilbert_function(m: &GradedModulePresentation, degree: i64) -> i64 {
    hilbert_series(m).function(degree) as i64
}

/// Hilbert polynomial from the twists of the minimal free resolution.
pub fn hilbert_polynomial(m: &GradedModulePresentation) -> Result<UniPolyQ> {
    let res = free_resolution(m, m.nvars() + 1)?;
    let l = m.nvars() as i64;
    let mut p = UniPolyQ::zero();
    for (i, t) in res.terms.iter().enumerate() {
        let sign = Rational::from_integer(if i % 2 == 0 { 1 } else { -1 });
        for &a in t.twists() {
            p = p.add(&UniPolyQ::binomial(l - 1 - a as i64, (l - 1) as usize).scale(&sign));
        }
    }
    Ok(p)
}

pub fn krull_dim(m: &GradedModulePresentation) -> i64 {
    hilbert_series(m).krull_dim()
}

/// Vector space dimension of a module of Krull dimension at most zero.
pub fn finite_length(m: &GradedModulePresentation, degree_cap: i64) -> Result<i64> {
    let hs = hilbert_series(m);
    let dim = hs.krull_dim();
    if dim > 0 {
        return Err(Error::NotFiniteLength(dim));
    }
    if hs.is_zero() {
        return Ok(0);
    }
    let mut total: i128 = 0;
    let mut k = hs.offset;
    loop {
        if k > degree_cap {
            return Err(Error::DegreeCapExceeded(degree_cap));
        }
        total += hs.function(k);
        // beyond the numerator's top degree the function has settled to its polynomial, here zero
        if k >= hs.top_degree() {
            break;
        }
        k += 1;
    }
    Ok(total as i64)
}
