use std::sync::Arc;

use super::buchberger::{divide_top, groebner};
use super::free::FreeModuleElement;
use super::order::{EngineOrder, SchreyerFrame};
use super::svec::{SparseVec, Term};
use crate::algebra::{Monomial, Rational};
use crate::error::{Error, Result};

/// Sorts basis elements by lead component, then lead monomial in descending lex.
///
/// With this ordering the leads of the Schreyer syzygies lose one variable at
/// each step, so iterating terminates after at most `nvars` steps.
pub(crate) fn sort_for_schreyer(elems: &mut [SparseVec]) {
    elems.sort_by(|a, b| {
        let (x, y) = (&a.terms[0], &b.terms[0]);
        x.comp.cmp(&y.comp).then_with(|| y.mono.cmp_lex(&x.mono))
    });
}

/// The order induced on the syzygy module of `gb` by its leads.
pub(crate) fn induced_order(gb: &[SparseVec], ord: &EngineOrder) -> EngineOrder {
    let leads: Vec<(Monomial, usize)> = gb.iter().map(|g| (g.terms[0].mono, g.terms[0].comp)).collect();
    let twists = leads.iter().map(|(m, c)| ord.degree(m, *c)).collect();
    EngineOrder::Schreyer(Arc::new(SchreyerFrame { leads, base: ord.clone(), twists }))
}

/// Schreyer syzygies of a monic Gröbner basis.
///
/// Returns a Gröbner basis of the syzygy module in the induced order, keeping
/// only the pairs whose lead terms generate the lead module.
pub(crate) fn schreyer_syzygies(gb: &[SparseVec], ord: &EngineOrder) -> (Vec<SparseVec>, EngineOrder) {
    let induced = induced_order(gb, ord);
    let mut out = Vec::new();
    for i in 0..gb.len() {
        let li = &gb[i].terms[0];
        let mut chosen: Vec<(usize, Monomial, Monomial)> = Vec::new();
        for (j, g) in gb.iter().enumerate().skip(i + 1) {
            let lj = &g.terms[0];
            if lj.comp != li.comp {
                continue;
            }
            let l = li.mono.lcm(&lj.mono);
            let a = li.mono.quotient_of(&l).expect("lcm");
            if chosen.iter().any(|(_, b, _)| b.divides(&a)) {
                continue;
            }
            chosen.retain(|(_, b, _)| !a.divides(b));
            let b = lj.mono.quotient_of(&l).expect("lcm");
            chosen.push((j, a, b));
        }
        for (j, a, b) in chosen {
            let one = Rational::one();
            let s = gb[i].mul_term(&a, &one).sub_mul(&one, &b, &gb[j], ord);
            let (quotients, rem) = divide_top(s, gb, ord);
            assert!(rem.is_zero(), "S-vector did not reduce to zero: input is not a Gröbner basis");
            let mut terms = vec![
                Term { mono: a, comp: i, coeff: Rational::one() },
                Term { mono: b, comp: j, coeff: Rational::from_integer(-1) },
            ];
            for (m, k, c) in quotients {
                terms.push(Term { mono: m, comp: k, coeff: -c });
            }
            out.push(SparseVec::from_terms(terms, &induced));
        }
    }
    (out, induced)
}

/// Generators of the syzygy module of `gens`, as vectors in `⊕ S(-gen_degrees_i)`.
///
/// `gens` live in `⊕ S(-target_twists_j)` and must be homogeneous of the given
/// degrees. Uses the graph module `(g_i, e_i)` under an elimination order.
pub(crate) fn syzygies_of(
    nvars: usize,
    gens: &[FreeModuleElement],
    target_twists: &[i32],
    gen_degrees: &[i32],
) -> Result<Vec<FreeModuleElement>> {
    let r = target_twists.len();
    let k = gens.len();
    for (g, &d) in gens.iter().zip(gen_degrees) {
        if let Some(e) = g.degree_in(target_twists)? {
            if e != d {
                return Err(Error::NotHomogeneous);
            }
        }
    }
    let mut twists = target_twists.to_vec();
    twists.extend_from_slice(gen_degrees);
    let ord = EngineOrder::Elim { twists: twists.into(), split: r };
    let graph: Vec<SparseVec> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut terms = Vec::new();
            for (c, p) in g.components().iter().enumerate() {
                for (m, a) in p.terms() {
                    terms.push(Term { mono: *m, comp: c, coeff: a.clone() });
                }
            }
            terms.push(Term { mono: Monomial::one(nvars), comp: r + i, coeff: Rational::one() });
            SparseVec::from_terms(terms, &ord)
        })
        .collect();
    let gb = groebner(graph, &ord);
    Ok(gb
        .iter()
        .filter(|v| v.terms[0].comp >= r)
        .map(|v| v.to_element(nvars, r, k))
        .collect())
}
