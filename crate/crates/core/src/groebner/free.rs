use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{variable_names, MultiPoly, Rational};
use crate::error::{Error, Result};

/// `⊕_j S(-a_j)`, stored by its twists `a_j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct GradedFreeModule {
    twists: Vec<i32>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i32>) -> Self {
        GradedFreeModule { twists }
    }

    /// `S^rank` with all twists zero.
    pub fn free(rank: usize) -> Self {
        GradedFreeModule { twists: vec![0; rank] }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i32] {
        &self.twists
    }

    pub fn twist(&self, j: usize) -> i32 {
        self.twists[j]
    }

    /// `F(s)`: every twist lowered by `s`.
    pub fn shifted(&self, s: i32) -> Self {
        GradedFreeModule { twists: self.twists.iter().map(|a| a - s).collect() }
    }

    /// The dual `Hom(F, S)`, with twists negated.
    pub fn dual(&self) -> Self {
        GradedFreeModule { twists: self.twists.iter().map(|a| -a).collect() }
    }

    /// Twist multiset `{a: multiplicity}`.
    pub fn twist_multiset(&self) -> BTreeMap<i32, usize> {
        let mut m = BTreeMap::new();
        for &a in &self.twists {
            *m.entry(a).or_insert(0) += 1;
        }
        m
    }

    pub fn remove(&mut self, j: usize) {
        self.twists.remove(j);
    }
}

impl fmt::Display for GradedFreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twists.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .twist_multiset()
            .iter()
            .map(|(a, n)| {
                let s = if *a == 0 { "S".to_string() } else { format!("S({})", -a) };
                if *n == 1 {
                    s
                } else {
                    format!("{s}^{n}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A vector of polynomials, an element of some graded free module.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeModuleElement {
    nvars: usize,
    components: Vec<MultiPoly>,
}

impl FreeModuleElement {
    pub fn new(nvars: usize, components: Vec<MultiPoly>) -> Self {
        debug_assert!(components.iter().all(|p| p.nvars() == nvars));
        FreeModuleElement { nvars, components }
    }

    pub fn zero(nvars: usize, rank: usize) -> Self {
        FreeModuleElement { nvars, components: vec![MultiPoly::zero(nvars); rank] }
    }

    /// The `j`-th standard basis vector.
    pub fn basis(nvars: usize, rank: usize, j: usize) -> Self {
        let mut e = Self::zero(nvars, rank);
        e.components[j] = MultiPoly::one(nvars);
        e
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn component(&self, j: usize) -> &MultiPoly {
        &self.components[j]
    }

    pub fn into_components(self) -> Vec<MultiPoly> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect();
        FreeModuleElement { nvars: self.nvars, components }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect();
        FreeModuleElement { nvars: self.nvars, components }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FreeModuleElement { nvars: self.nvars, components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        FreeModuleElement { nvars: self.nvars, components: self.components.iter().map(|a| a * p).collect() }
    }

    /// `sum_j self_j * other_j`.
    pub fn dot(&self, other: &[MultiPoly]) -> MultiPoly {
        let mut acc = MultiPoly::zero(self.nvars);
        for (a, b) in self.components.iter().zip(other) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        acc
    }

    /// Degree in `⊕ S(-a_j)`; `None` for the zero vector.
    pub fn degree_in(&self, twists: &[i32]) -> Result<Option<i32>> {
        let mut deg = None;
        for (p, &a) in self.components.iter().zip(twists) {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            let d = p.degree().unwrap_or(0) as i32 + a;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(Error::NotHomogeneous),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn remove(&mut self, j: usize) {
        self.components.remove(j);
    }

    pub fn render(&self) -> String {
        let names = variable_names(self.nvars);
        let parts: Vec<String> = self.components.iter().map(|p| p.render(&names)).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for FreeModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for FreeModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// A homogeneous map `source -> target`, stored as the images of the source basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub source: GradedFreeModule,
    pub target: GradedFreeModule,
    pub columns: Vec<FreeModuleElement>,
}

impl GradedMap {
    pub fn entry(&self, row: usize, col: usize) -> &MultiPoly {
        self.columns[col].component(row)
    }

    /// Applies the map to a vector in the source.
    pub fn apply(&self, v: &FreeModuleElement) -> FreeModuleElement {
        let nvars = v.nvars();
        let mut acc = FreeModuleElement::zero(nvars, self.target.rank());
        for (c, p) in v.components().iter().enumerate() {
            if !p.is_zero() {
                acc = acc.add(&self.columns[c].mul_poly(p));
            }
        }
        acc
    }

    /// Whether `self ∘ inner` is the zero map.
    pub fn composes_to_zero(&self, inner: &GradedMap) -> bool {
        inner.columns.iter().all(|c| self.apply(c).is_zero())
    }

    /// Whether some entry has a nonzero constant term.
    pub fn has_unit_entry(&self) -> bool {
        self.columns.iter().any(|c| {
            c.components()
                .iter()
                .any(|p| p.terms().last().is_some_and(|(m, _)| m.is_one()))
        })
    }
}

/// A graded module `coker(relations)` on the basis of `generators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModulePresentation {
    nvars: usize,
    generators: GradedFreeModule,
    relations: Vec<FreeModuleElement>,
}

impl GradedModulePresentation {
    /// Checks that every relation is homogeneous with respect to the twists.
    pub fn new(nvars: usize, generators: GradedFreeModule, relations: Vec<FreeModuleElement>) -> Result<Self> {
        for r in &relations {
            if r.rank() != generators.rank() {
                return Err(Error::InvalidArrangement(format!(
                    "relation of rank {} in a module of rank {}",
                    r.rank(),
                    generators.rank()
                )));
            }
            r.degree_in(generators.twists())?;
        }
        Ok(GradedModulePresentation { nvars, generators, relations })
    }

    pub fn free(nvars: usize, generators: GradedFreeModule) -> Self {
        GradedModulePresentation { nvars, generators, relations: Vec::new() }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::free(nvars, GradedFreeModule::default())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &GradedFreeModule {
        &self.generators
    }

    pub fn relations(&self) -> &[FreeModuleElement] {
        &self.relations
    }

    /// `M(s)`, graded by `M(s)_k = M_{s+k}`.
    pub fn shifted(&self, s: i32) -> Self {
        GradedModulePresentation {
            nvars: self.nvars,
            generators: self.generators.shifted(s),
            relations: self.relations.clone(),
        }
    }

    /// Degrees of the relations; zero relations are dropped.
    pub(crate) fn nonzero_relations(&self) -> Vec<FreeModuleElement> {
        self.relations.iter().filter(|r| !r.is_zero()).cloned().collect()
    }
}

/// A graded free resolution `... -> F_2 -> F_1 -> F_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionData {
    pub nvars: usize,
    pub terms: Vec<GradedFreeModule>,
    /// `maps[i]` is `F_{i+1} -> F_i`.
    pub maps: Vec<GradedMap>,
    pub minimal: bool,
}

impl ResolutionData {
    /// Projective dimension, i.e. the index of the last nonzero term; `-1` for the zero module.
    pub fn length(&self) -> i64 {
        self.terms.iter().rposition(|t| t.rank() > 0).map_or(-1, |i| i as i64)
    }

    pub fn is_exact_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].composes_to_zero(&w[1]))
    }

    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| !m.has_unit_entry())
    }

    /// Alternating sum of the Hilbert functions of the terms in degree `k`.
    pub fn euler_hilbert_function(&self, k: i64) -> i128 {
        let l = self.nvars as i64;
        let mut total = 0i128;
        for (i, t) in self.terms.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for &a in t.twists() {
                total += sign * crate::groebner::hilbert::monomial_count(l, k - a as i64);
            }
        }
        total
    }

    /// Text dump: one line per term, then the matrices column by column.
    pub fn render(&self) -> String {
        let names = variable_names(self.nvars);
        let mut s = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            s.push_str(&format!("F{i} = {}\n", render_multiset(t)));
        }
        for (i, m) in self.maps.iter().enumerate() {
            s.push_str(&format!("d{}: F{} -> F{}\n", i + 1, i + 1, i));
            for c in &m.columns {
                let parts: Vec<String> = c.components().iter().map(|p| p.render(&names)).collect();
                s.push_str(&format!("  [{}]\n", parts.join(", ")));
            }
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let names = variable_names(self.nvars);
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|t| {
                let ms: BTreeMap<String, usize> =
                    t.twist_multiset().into_iter().map(|(a, n)| ((-a).to_string(), n)).collect();
                serde_json::json!({ "rank": t.rank(), "twists": ms })
            })
            .collect();
        let maps: Vec<serde_json::Value> = self
            .maps
            .iter()
            .map(|m| {
                let cols: Vec<Vec<String>> = m
                    .columns
                    .iter()
                    .map(|c| c.components().iter().map(|p| p.render(&names)).collect())
                    .collect();
                serde_json::Value::from(cols)
            })
            .collect();
        serde_json::json!({
            "length": self.length(),
            "minimal": self.minimal,
            "terms": terms,
            "maps": maps,
        })
    }
}

/// `{-3: 2, -4: 1}`: the shifts `-a` of the summands `S(-a)` with multiplicities.
pub fn render_multiset(f: &GradedFreeModule) -> String {
    let parts: Vec<String> = f.twist_multiset().iter().rev().map(|(a, n)| format!("{}: {}", -a, n)).collect();
    format!("{{{}}}", parts.join(", "))
}
