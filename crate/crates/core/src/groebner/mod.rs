//! Gröbner bases, syzygies, free resolutions and Hilbert functions for graded
//! modules over `Q[z_1, ..., z_l]`.

mod buchberger;
mod free;
pub(crate) mod hilbert;
mod homological;
mod order;
mod resolution;
mod stats;
mod svec;
mod syzygy;

use crate::error::Result;
use buchberger::{groebner, reduce};
use order::EngineOrder;
use svec::SparseVec;

pub use free::{render_multiset, FreeModuleElement, GradedFreeModule, GradedMap, GradedModulePresentation, ResolutionData};
pub use hilbert::{finite_length, hilbert_function, hilbert_polynomial, hilbert_series, krull_dim, HilbertSeries};
pub use homological::{ext1_against_ring, module_dual};
pub use order::{ModuleOrder, PositionPolicy};
pub use resolution::{free_resolution, schreyer_resolution, submodule, Submodule};
pub use stats::{current_stats, merge_stats, with_stats, EngineStats};

/// A reduced Gröbner basis of a submodule of `⊕ S(-a_j)`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: ModuleOrder,
    engine: EngineOrder,
    nvars: usize,
    elements: Vec<SparseVec>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> Vec<FreeModuleElement> {
        let rank = self.order.twists.len();
        self.elements.iter().map(|v| v.to_element(self.nvars, 0, rank)).collect()
    }

    /// Leading terms as `(monomial, component)`.
    pub fn leading_terms(&self) -> Vec<(crate::algebra::Monomial, usize)> {
        self.elements.iter().map(|v| (v.terms[0].mono, v.terms[0].comp)).collect()
    }

    pub fn normal_form(&self, v: &FreeModuleElement) -> FreeModuleElement {
        let sv = SparseVec::from_element(v, &self.engine);
        reduce(sv, &self.elements, &self.engine).to_element(v.nvars(), 0, v.rank())
    }

    pub fn contains(&self, v: &FreeModuleElement) -> bool {
        self.normal_form(v).is_zero()
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens`; the order
/// carries the twists of the ambient module.
pub fn groebner_basis(gens: &[FreeModuleElement], order: &ModuleOrder) -> GroebnerBasis {
    let engine = order.engine();
    let nvars = gens.first().map_or(0, |g| g.nvars());
    let input = gens.iter().map(|g| SparseVec::from_element(g, &engine)).collect();
    let elements = groebner(input, &engine);
    GroebnerBasis { order: order.clone(), engine, nvars, elements }
}

pub fn normal_form(v: &FreeModuleElement, gb: &GroebnerBasis) -> FreeModuleElement {
    gb.normal_form(v)
}

/// Generators of the syzygies of the basis elements, one vector per relation
/// `sum_k s_k g_k = 0`.
pub fn syzygies(gb: &GroebnerBasis) -> Vec<FreeModuleElement> {
    let (syz, _) = syzygy::schreyer_syzygies(&gb.elements, &gb.engine);
    syz.iter().map(|v| v.to_element(gb.nvars, 0, gb.elements.len())).collect()
}

/// Syzygies of arbitrary homogeneous generators living in `⊕ S(-target_twists)`.
pub fn syzygies_of(
    nvars: usize,
    gens: &[FreeModuleElement],
    target_twists: &[i32],
    gen_degrees: &[i32],
) -> Result<Vec<FreeModuleElement>> {
    syzygy::syzygies_of(nvars, gens, target_twists, gen_degrees)
}
