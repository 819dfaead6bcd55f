use super::free::{FreeModuleElement, GradedFreeModule, GradedModulePresentation};
use super::resolution::{free_resolution, submodule};
use super::syzygy::syzygies_of;
use crate::error::Result;

/// Rows of the matrix with columns `cols`, as vectors indexed by column.
fn rows(nvars: usize, cols: &[FreeModuleElement], nrows: usize) -> Vec<FreeModuleElement> {
    (0..nrows)
        .map(|r| FreeModuleElement::new(nvars, cols.iter().map(|c| c.component(r).clone()).collect()))
        .collect()
}

/// `Hom_S(M, S)` as a graded module.
///
/// Computed as the kernel of the transposed presentation matrix inside the
/// dual of the generator module, then presented on minimal generators.
pub fn module_dual(m: &GradedModulePresentation) -> Result<GradedModulePresentation> {
    let nvars = m.nvars();
    let f0 = m.generators();
    let dual = f0.dual();
    let rels = m.nonzero_relations();
    if rels.is_empty() {
        return Ok(GradedModulePresentation::free(nvars, dual));
    }
    let rel_degrees: Vec<i32> = rels
        .iter()
        .map(|r| r.degree_in(f0.twists()).map(|d| d.expect("nonzero relation")))
        .collect::<Result<_>>()?;
    let target: Vec<i32> = rel_degrees.iter().map(|b| -b).collect();
    let kernel = syzygies_of(nvars, &rows(nvars, &rels, f0.rank()), &target, dual.twists())?;
    Ok(submodule(nvars, &dual, &kernel, false, nvars + 1)?.presentation)
}

/// `Ext^1_S(M, S)` as the homology of the dualized minimal resolution at position 1.
pub fn ext1_against_ring(m: &GradedModulePresentation) -> Result<GradedModulePresentation> {
    let nvars = m.nvars();
    let res = free_resolution(m, nvars + 1)?;
    let Some(d1) = res.maps.first() else {
        return Ok(GradedModulePresentation::zero(nvars));
    };
    let f0 = &res.terms[0];
    let f1_dual = d1.source.dual();
    // image of d1^T: the rows of d1, as vectors in F1*
    let image = rows(nvars, &d1.columns, f0.rank());
    let Some(d2) = res.maps.get(1) else {
        return GradedModulePresentation::new(nvars, f1_dual, image);
    };
    // ker d2^T inside F1*
    let f2_dual = d2.source.dual();
    let kernel = syzygies_of(nvars, &rows(nvars, &d2.columns, d1.source.rank()), f2_dual.twists(), f1_dual.twists())?;
    let kernel = submodule(nvars, &f1_dual, &kernel, false, nvars + 1)?.generators;
    let kernel_degrees: Vec<i32> = kernel
        .iter()
        .map(|k| k.degree_in(f1_dual.twists()).map(|d| d.expect("nonzero generator")))
        .collect::<Result<_>>()?;
    let image_degrees: Vec<i32> = f0.twists().iter().map(|a| -a).collect();
    let mut gens = kernel.clone();
    gens.extend(image);
    let mut degrees = kernel_degrees.clone();
    degrees.extend(image_degrees);
    let syz = syzygies_of(nvars, &gens, f1_dual.twists(), &degrees)?;
    let k = kernel.len();
    let relations = syz
        .into_iter()
        .map(|s| FreeModuleElement::new(nvars, s.into_components().into_iter().take(k).collect()))
        .filter(|r| !r.is_zero())
        .collect();
    GradedModulePresentation::new(nvars, GradedFreeModule::new(kernel_degrees), relations)
}
