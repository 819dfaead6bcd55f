//! Logarithmic derivations and forms of a central arrangement, freeness and
//! the length of the non-free locus.

use serde::Serialize;

use crate::algebra::{MultiPoly, Rational, UniPolyQ};
use crate::arrangements::{build_lattice, localize, Arrangement};
use crate::error::{Error, Result};
use crate::groebner::{
    ext1_against_ring, finite_length, hilbert_series, krull_dim, submodule, syzygies_of, FreeModuleElement,
    GradedFreeModule, GradedModulePresentation, ResolutionData,
};

/// The defining polynomial `f = prod α_H` with its partial derivatives.
#[derive(Clone, Debug)]
pub struct DefiningData {
    pub nvars: usize,
    pub f: MultiPoly,
    pub d: usize,
    pub partials: Vec<MultiPoly>,
    pub forms: Vec<MultiPoly>,
}

impl DefiningData {
    /// `sum_i z_i f_i == d f`.
    pub fn euler_identity_holds(&self) -> bool {
        let mut acc = MultiPoly::zero(self.nvars);
        for (i, p) in self.partials.iter().enumerate() {
            acc = &acc + &(&MultiPoly::var(self.nvars, i) * p);
        }
        acc == self.f.scale(&Rational::from_integer(self.d as i64))
    }

    /// Contraction with the Euler derivation: `sum_i z_i g_i`.
    pub fn euler_pairing(&self, g: &FreeModuleElement) -> MultiPoly {
        let z: Vec<MultiPoly> = (0..self.nvars).map(|i| MultiPoly::var(self.nvars, i)).collect();
        g.dot(&z)
    }
}

pub fn defining_data(a: &Arrangement) -> Result<DefiningData> {
    if !a.is_central() {
        return Err(Error::NotCentral);
    }
    let nvars = a.dim();
    let forms = a.linear_forms();
    let mut f = MultiPoly::one(nvars);
    for l in &forms {
        f = &f * l;
    }
    let partials = (0..nvars).map(|i| f.derivative(i)).collect();
    let dd = DefiningData { nvars, f, d: a.len(), partials, forms };
    assert!(dd.euler_identity_holds(), "Euler identity failed");
    Ok(dd)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LogModuleKind {
    /// `D(A)`: derivations tangent to every hyperplane.
    #[serde(rename = "D")]
    Derivations,
    /// `D_0(A)`: derivations annihilating `f`.
    #[serde(rename = "D0")]
    RelativeDerivations,
    /// `Ω^1(A)`: logarithmic 1-forms, stored as `f ω` in `S^l(1 - d)`.
    #[serde(rename = "Omega1")]
    Forms,
    /// `Ω^1_0(A)`: logarithmic 1-forms killed by the Euler derivation.
    #[serde(rename = "Omega1_0")]
    RelativeForms,
}

impl LogModuleKind {
    pub fn name(self) -> &'static str {
        match self {
            LogModuleKind::Derivations => "D",
            LogModuleKind::RelativeDerivations => "D0",
            LogModuleKind::Forms => "Omega1",
            LogModuleKind::RelativeForms => "Omega1_0",
        }
    }
}

/// A graded submodule of `S^l` with minimal generators, presentation and resolution.
///
/// Derivations are graded by coefficient degree. A form `ω` is stored as the
/// coefficient vector of `f ω` and has degree `deg(f ω) + 1 - d`, so `df/f`
/// has degree 0.
#[derive(Clone, Debug)]
pub struct LogModule {
    pub kind: LogModuleKind,
    pub nvars: usize,
    pub ambient: GradedFreeModule,
    pub generators: Vec<FreeModuleElement>,
    pub presentation: GradedModulePresentation,
    pub resolution: ResolutionData,
}

impl LogModule {
    fn from_generators(kind: LogModuleKind, nvars: usize, ambient: GradedFreeModule, gens: &[FreeModuleElement]) -> Result<Self> {
        let sub = submodule(nvars, &ambient, gens, true, nvars + 1)?;
        Ok(LogModule {
            kind,
            nvars,
            ambient,
            generators: sub.generators,
            presentation: sub.presentation,
            resolution: sub.resolution.expect("full resolution requested"),
        })
    }

    pub fn generator_degrees(&self) -> Vec<i32> {
        self.presentation.generators().twists().to_vec()
    }

    /// Projective dimension; `-1` for the zero module.
    pub fn pdim(&self) -> i64 {
        self.resolution.length()
    }

    pub fn hilbert_function(&self, k: i64) -> i64 {
        self.resolution.euler_hilbert_function(k) as i64
    }

    pub fn hilbert_polynomial(&self) -> UniPolyQ {
        hilbert_series(&self.presentation).polynomial()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let twists: Vec<serde_json::Value> = self
            .resolution
            .terms
            .iter()
            .map(|t| serde_json::json!(crate::groebner::render_multiset(t)))
            .collect();
        serde_json::json!({
            "kind": self.kind.name(),
            "rank_of_generators": self.generators.len(),
            "generator_degrees": self.generator_degrees(),
            "resolution_twists": twists,
            "pdim": self.pdim(),
        })
    }
}

fn column(nvars: usize, rank: usize, entries: &[(usize, MultiPoly)]) -> FreeModuleElement {
    let mut c = vec![MultiPoly::zero(nvars); rank];
    for (i, p) in entries {
        c[*i] = p.clone();
    }
    FreeModuleElement::new(nvars, c)
}

/// Kernel of `S^l -> ⊕_k S/(q_k)` given by `g -> (sum_i m_ki g_i)_k`, projected to `S^l`.
///
/// `entry_degrees[k]` is the degree of the row-`k` entries, all homogeneous.
fn kernel_mod(
    nvars: usize,
    matrix: &[Vec<MultiPoly>],
    moduli: &[MultiPoly],
    entry_degrees: &[i32],
) -> Result<Vec<FreeModuleElement>> {
    let rows = matrix.len();
    let l = nvars;
    if rows == 0 {
        return Ok((0..l).map(|i| FreeModuleElement::basis(nvars, l, i)).collect());
    }
    // target twists make every row homogeneous of degree 0 when g has degree 0
    let target: Vec<i32> = entry_degrees.iter().map(|d| -d).collect();
    let mut gens = Vec::new();
    let mut degrees = Vec::new();
    for i in 0..l {
        let entries: Vec<(usize, MultiPoly)> = (0..rows).map(|k| (k, matrix[k][i].clone())).collect();
        gens.push(column(nvars, rows, &entries));
        degrees.push(0);
    }
    for (k, q) in moduli.iter().enumerate() {
        gens.push(column(nvars, rows, &[(k, q.clone())]));
        degrees.push(q.degree().unwrap_or(0) as i32 - entry_degrees[k]);
    }
    let syz = syzygies_of(nvars, &gens, &target, &degrees)?;
    Ok(syz
        .into_iter()
        .map(|s| FreeModuleElement::new(nvars, s.into_components().into_iter().take(l).collect()))
        .filter(|g| !g.is_zero())
        .collect())
}

/// `D_0(A)`: syzygies of the partial derivatives of `f`.
pub fn derivation_module_d0(dd: &DefiningData) -> Result<LogModule> {
    let n = dd.nvars;
    let ambient = GradedFreeModule::free(n);
    let deg = dd.d as i32 - 1;
    let gens: Vec<FreeModuleElement> = dd.partials.iter().map(|p| FreeModuleElement::new(n, vec![p.clone()])).collect();
    let syz = if dd.partials.iter().all(|p| p.is_zero()) {
        (0..n).map(|i| FreeModuleElement::basis(n, n, i)).collect()
    } else {
        syzygies_of(n, &gens, &[0], &vec![deg; n])?
    };
    LogModule::from_generators(LogModuleKind::RelativeDerivations, n, ambient, &syz)
}

/// `D(A)`: derivations `θ` with `θ(α_H) ∈ (α_H)` for every hyperplane.
pub fn derivation_module(a: &Arrangement) -> Result<LogModule> {
    let n = a.dim();
    let forms = a.linear_forms();
    let matrix: Vec<Vec<MultiPoly>> = a
        .normals()
        .iter()
        .map(|v| v.iter().map(|&c| MultiPoly::constant(n, Rational::from_integer(c))).collect())
        .collect();
    let gens = kernel_mod(n, &matrix, &forms, &vec![0; forms.len()])?;
    LogModule::from_generators(LogModuleKind::Derivations, n, GradedFreeModule::free(n), &gens)
}

/// `Ω^1(A) = {g : f_i g_j - f_j g_i ≡ 0 mod f for all i < j}`, graded so `df/f` has degree 0.
pub fn log_forms(dd: &DefiningData) -> Result<LogModule> {
    let n = dd.nvars;
    let ambient = GradedFreeModule::new(vec![1 - dd.d as i32; n]);
    let mut matrix = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut row = vec![MultiPoly::zero(n); n];
            row[j] = dd.partials[i].clone();
            row[i] = -&dd.partials[j];
            matrix.push(row);
        }
    }
    let moduli = vec![dd.f.clone(); matrix.len()];
    let degs = vec![dd.d as i32 - 1; matrix.len()];
    let gens = kernel_mod(n, &matrix, &moduli, &degs)?;
    LogModule::from_generators(LogModuleKind::Forms, n, ambient, &gens)
}

/// The Euler splitting `g -> g - (<χ, g> / (d f)) ∇f` onto the kernel of contraction with `χ`.
pub fn euler_projection(dd: &DefiningData, g: &FreeModuleElement) -> Result<FreeModuleElement> {
    let c = dd.euler_pairing(g);
    if c.is_zero() {
        return Ok(g.clone());
    }
    let q = c.exact_div(&dd.f).ok_or_else(|| {
        Error::InvalidArrangement("Euler contraction of a logarithmic form is not divisible by f".into())
    })?;
    let q = q.scale(&Rational::new(1, dd.d as i64));
    let grad = FreeModuleElement::new(dd.nvars, dd.partials.clone());
    Ok(g.sub(&grad.mul_poly(&q)))
}

/// `Ω^1_0(A)`, the kernel of contraction with the Euler derivation, as the
/// image of `Ω^1(A)` under the Euler splitting.
pub fn relative_log_forms(dd: &DefiningData, omega: &LogModule) -> Result<LogModule> {
    if omega.kind != LogModuleKind::Forms {
        return Err(Error::InvalidArrangement("relative forms need the module of logarithmic forms".into()));
    }
    let gens: Vec<FreeModuleElement> =
        omega.generators.iter().map(|g| euler_projection(dd, g)).collect::<Result<_>>()?;
    for g in &gens {
        assert!(dd.euler_pairing(g).is_zero(), "relative form not killed by the Euler derivation");
    }
    LogModule::from_generators(LogModuleKind::RelativeForms, dd.nvars, omega.ambient.clone(), &gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub is_free: bool,
    /// Generator degrees when the module is free.
    pub exponents: Option<Vec<i32>>,
    pub pdim: i64,
}

pub fn freeness_test(m: &LogModule) -> FreenessReport {
    let pdim = m.pdim();
    let is_free = pdim <= 0;
    let exponents = is_free.then(|| {
        let mut e = m.generator_degrees();
        e.sort();
        e
    });
    FreenessReport { is_free, exponents, pdim }
}

/// Saito's criterion: `l` derivations form a basis of `D(A)` iff their
/// coefficient determinant is a nonzero scalar multiple of `f`.
pub fn saito_determinant_check(dd: &DefiningData, basis: &[FreeModuleElement]) -> bool {
    if basis.len() != dd.nvars {
        return false;
    }
    let m: Vec<Vec<MultiPoly>> = basis.iter().map(|b| b.components().to_vec()).collect();
    let det = determinant(&m, dd.nvars);
    if det.is_zero() {
        return false;
    }
    let (fm, fc) = dd.f.leading().expect("nonzero f");
    let (dm, dc) = det.leading().expect("nonzero determinant");
    if fm != dm {
        return false;
    }
    det == dd.f.scale(&(dc / fc))
}

fn determinant(m: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(nvars);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(nvars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let t = &m[0][j] * &determinant(&minor, nvars);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatContribution {
    pub hyperplanes: Vec<usize>,
    /// Coordinate set to 1 for the affine chart.
    pub chart: usize,
    pub n: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonFreeLocusReport {
    #[serde(skip)]
    pub ext1: GradedModulePresentation,
    /// Krull dimension of `Ext^1` over the cone; `-1` when it vanishes.
    pub cone_dim: i64,
    pub n_projective: i64,
    pub per_flat: Option<Vec<FlatContribution>>,
}

impl NonFreeLocusReport {
    pub fn per_flat_total(&self) -> Option<i64> {
        self.per_flat.as_ref().map(|v| v.iter().map(|c| c.n).sum())
    }
}

/// Options for the chart-by-chart cross-check of `N`.
#[derive(Clone, Copy, Debug, Default)]
pub struct NonFreeOptions {
    pub per_flat: bool,
    /// Preferred chart coordinate; ignored at points where it vanishes.
    pub chart: Option<usize>,
    pub degree_cap: i64,
}

/// `N` from the graded `Ext^1(Ω^1_0(A), S)`: its Hilbert polynomial is the
/// constant total length of the sheafified module.
pub fn nonfree_locus(a: &Arrangement, omega0: &LogModule, opts: NonFreeOptions) -> Result<NonFreeLocusReport> {
    let ext1 = ext1_against_ring(&omega0.presentation)?;
    let cone_dim = krull_dim(&ext1);
    if cone_dim > 1 {
        return Err(Error::NonIsolatedNonFreeLocus { cone_dim });
    }
    let n_projective = if cone_dim <= 0 {
        0
    } else {
        let hp = hilbert_series(&ext1).polynomial();
        debug_assert!(hp.degree() == Some(0));
        hp.coeff(0).to_i64().expect("integral constant Hilbert polynomial")
    };
    let per_flat = if opts.per_flat && a.dim() >= 2 { Some(per_flat_lengths(a, opts)?) } else { None };
    Ok(NonFreeLocusReport { ext1, cone_dim, n_projective, per_flat })
}

/// `N(A_X)` for every point `X` of the projectivized lattice, computed in an
/// affine chart as the length of `Ext^1` of the localized arrangement.
pub fn per_flat_lengths(a: &Arrangement, opts: NonFreeOptions) -> Result<Vec<FlatContribution>> {
    let l = a.dim();
    let lat = build_lattice(a);
    let points = lat.codim(l - 1).to_vec();
    let cap = if opts.degree_cap > 0 { opts.degree_cap } else { 200 };
    let results = crate::parallel::map(&points, |x| -> Result<FlatContribution> {
        let basis = x.subspace_basis(l);
        let v = &basis[0];
        let chart = match opts.chart {
            Some(c) if c < l && !v[c].is_zero() => c,
            _ => (0..l).find(|&c| !v[c].is_zero()).expect("nonzero point"),
        };
        let local = localize(a, &lat, x)?;
        let normals = local
            .normals()
            .iter()
            .map(|n| n.iter().enumerate().filter(|(j, _)| *j != chart).map(|(_, &c)| c).collect())
            .collect();
        let chart_arr = Arrangement::central(l - 1, normals)?;
        let n = local_length(&chart_arr, cap)?;
        Ok(FlatContribution { hyperplanes: x.indices.clone(), chart, n })
    });
    results.into_iter().collect()
}

/// Length of `Ext^1(Ω^1(A), S)` for a central arrangement locally free off the origin.
pub fn local_length(a: &Arrangement, degree_cap: i64) -> Result<i64> {
    if a.dim() < 3 {
        // arrangements in dimension at most 2 are free
        return Ok(0);
    }
    let dd = defining_data(a)?;
    let omega = log_forms(&dd)?;
    let omega0 = relative_log_forms(&dd, &omega)?;
    if omega0.pdim() <= 0 {
        return Ok(0);
    }
    let ext1 = ext1_against_ring(&omega0.presentation)?;
    finite_length(&ext1, degree_cap)
}
