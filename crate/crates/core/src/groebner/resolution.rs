use super::buchberger::groebner;
use super::free::{FreeModuleElement, GradedFreeModule, GradedMap, GradedModulePresentation, ResolutionData};
use super::order::ModuleOrder;
use super::svec::SparseVec;
use super::syzygy::{schreyer_syzygies, sort_for_schreyer};
use crate::error::{Error, Result};

/// Schreyer frame of the submodule generated by `gens` in `⊕ S(-twists)`.
///
/// Returns `[d_0, d_1, ...]` where `d_0` maps a Gröbner basis into the ambient
/// module and each later map holds the syzygies of the previous one. At most
/// `levels` syzygy steps are taken when given.
pub(crate) fn schreyer_frame(
    nvars: usize,
    twists: &[i32],
    gens: &[FreeModuleElement],
    levels: Option<usize>,
    max_len: usize,
) -> Result<Vec<GradedMap>> {
    for g in gens {
        g.degree_in(twists)?;
    }
    let ord = ModuleOrder::grevlex(twists.to_vec()).engine();
    let input: Vec<SparseVec> = gens.iter().map(|g| SparseVec::from_element(g, &ord)).collect();
    let mut current = groebner(input, &ord);
    sort_for_schreyer(&mut current);
    let mut current_ord = ord;
    let mut target = GradedFreeModule::new(twists.to_vec());
    let mut maps = Vec::new();
    loop {
        let source = GradedFreeModule::new(
            current.iter().map(|v| current_ord.degree(&v.terms[0].mono, v.terms[0].comp)).collect(),
        );
        let columns = current.iter().map(|v| v.to_element(nvars, 0, target.rank())).collect();
        maps.push(GradedMap { source: source.clone(), target, columns });
        if current.is_empty() || levels.is_some_and(|l| maps.len() > l) {
            break;
        }
        if maps.len() > max_len + 1 {
            return Err(Error::ResolutionTooLong(max_len));
        }
        let (mut syz, induced) = schreyer_syzygies(&current, &current_ord);
        sort_for_schreyer(&mut syz);
        current = syz;
        current_ord = induced;
        target = source;
    }
    Ok(maps)
}

/// Removes unit entries from `maps[from..]` by Gaussian elimination,
/// splitting off trivial summands `S(-a) -> S(-a)`.
pub(crate) fn minimize(maps: &mut [GradedMap], from: usize) {
    for i in from..maps.len() {
        while let Some((r, c)) = find_unit(&maps[i]) {
            let u = maps[i].entry(r, c).as_constant().expect("unit entry");
            let inv = u.recip();
            let pivot_col = maps[i].columns[c].clone();
            for k in 0..maps[i].columns.len() {
                if k == c {
                    continue;
                }
                let q = maps[i].columns[k].component(r).clone();
                if q.is_zero() {
                    continue;
                }
                let factor = q.scale(&inv);
                let sub = pivot_col.mul_poly(&factor);
                maps[i].columns[k] = maps[i].columns[k].sub(&sub);
            }
            maps[i].columns.remove(c);
            maps[i].source.remove(c);
            for col in &mut maps[i].columns {
                col.remove(r);
            }
            maps[i].target.remove(r);
            if i >= 1 {
                maps[i - 1].columns.remove(r);
                maps[i - 1].source.remove(r);
            }
            if i + 1 < maps.len() {
                for col in &mut maps[i + 1].columns {
                    col.remove(c);
                }
                maps[i + 1].target.remove(c);
            }
        }
    }
}

fn find_unit(m: &GradedMap) -> Option<(usize, usize)> {
    for (c, col) in m.columns.iter().enumerate() {
        for r in 0..col.rank() {
            if m.source.twist(c) == m.target.twist(r) && !col.component(r).is_zero() {
                return Some((r, c));
            }
        }
    }
    None
}

fn assemble(nvars: usize, f0: GradedFreeModule, mut maps: Vec<GradedMap>, minimal: bool) -> ResolutionData {
    while maps.last().is_some_and(|m| m.source.rank() == 0) {
        maps.pop();
    }
    let mut terms = vec![f0];
    for m in &maps {
        terms.push(m.source.clone());
    }
    ResolutionData { nvars, terms, maps, minimal }
}

/// Minimal graded free resolution of a presented module.
pub fn free_resolution(m: &GradedModulePresentation, max_len: usize) -> Result<ResolutionData> {
    let mut maps = resolution_frame(m, max_len)?;
    minimize(&mut maps, 0);
    let f0 = maps.first().map_or_else(|| m.generators().clone(), |d| d.target.clone());
    Ok(assemble(m.nvars(), f0, maps, true))
}

/// The Schreyer resolution before minimization.
pub fn schreyer_resolution(m: &GradedModulePresentation, max_len: usize) -> Result<ResolutionData> {
    let maps = resolution_frame(m, max_len)?;
    Ok(assemble(m.nvars(), m.generators().clone(), maps, false))
}

fn resolution_frame(m: &GradedModulePresentation, max_len: usize) -> Result<Vec<GradedMap>> {
    let rels = m.nonzero_relations();
    if rels.is_empty() {
        return Ok(Vec::new());
    }
    schreyer_frame(m.nvars(), m.generators().twists(), &rels, None, max_len)
}

/// A submodule of a graded free module with its minimal generators and resolution.
#[derive(Clone, Debug)]
pub struct Submodule {
    /// Minimal generators as vectors in the ambient module.
    pub generators: Vec<FreeModuleElement>,
    pub ambient: GradedFreeModule,
    /// Presentation on the minimal generators.
    pub presentation: GradedModulePresentation,
    /// Minimal resolution of the submodule itself, `F_0` = free module on the generators.
    pub resolution: Option<ResolutionData>,
}

/// Minimal generators and a presentation of the submodule generated by `gens`.
/// With `full_resolution` the whole minimal resolution is computed as well.
pub fn submodule(
    nvars: usize,
    ambient: &GradedFreeModule,
    gens: &[FreeModuleElement],
    full_resolution: bool,
    max_len: usize,
) -> Result<Submodule> {
    let gens: Vec<FreeModuleElement> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let levels = if full_resolution { None } else { Some(1) };
    let mut maps = schreyer_frame(nvars, ambient.twists(), &gens, levels, max_len + 1)?;
    minimize(&mut maps, 1);
    let d0 = maps.remove(0);
    let source = d0.source.clone();
    let relations = maps.first().map(|d| d.columns.clone()).unwrap_or_default();
    let presentation = GradedModulePresentation::new(nvars, source.clone(), relations)?;
    let resolution = full_resolution.then(|| assemble(nvars, source, maps, true));
    Ok(Submodule { generators: d0.columns, ambient: ambient.clone(), presentation, resolution })
}
