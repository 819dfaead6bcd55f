use super::order::EngineOrder;
use super::stats::record;
use super::svec::SparseVec;
use crate::algebra::{Monomial, Rational};

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: usize,
    degree: i32,
}

/// Index of divisors by lead component.
struct Basis<'a> {
    elems: &'a [SparseVec],
    by_comp: Vec<Vec<usize>>,
}

impl<'a> Basis<'a> {
    fn divisor(&self, m: &Monomial, comp: usize) -> Option<usize> {
        self.by_comp.get(comp)?.iter().copied().find(|&k| self.elems[k].terms[0].mono.divides(m))
    }
}

fn index(elems: &[SparseVec], active: impl Iterator<Item = usize>) -> Basis<'_> {
    let mut by_comp: Vec<Vec<usize>> = Vec::new();
    for k in active {
        let c = elems[k].terms[0].comp;
        if by_comp.len() <= c {
            by_comp.resize(c + 1, Vec::new());
        }
        by_comp[c].push(k);
    }
    Basis { elems, by_comp }
}

/// Reduces the lead term until it is not divisible by any basis lead.
fn top_reduce(mut v: SparseVec, basis: &Basis<'_>, ord: &EngineOrder) -> SparseVec {
    while let Some(l) = v.lead() {
        let Some(k) = basis.divisor(&l.mono, l.comp) else { break };
        let g = &basis.elems[k];
        let q = g.terms[0].mono.quotient_of(&l.mono).expect("divisor");
        let c = &l.coeff / &g.terms[0].coeff;
        v = v.sub_mul(&c, &q, g, ord);
    }
    v
}

/// Full reduction: no term of the result is divisible by a basis lead.
fn full_reduce(v: SparseVec, basis: &Basis<'_>, ord: &EngineOrder) -> SparseVec {
    let mut done = Vec::new();
    let mut rest = v;
    loop {
        rest = top_reduce(rest, basis, ord);
        if rest.is_zero() {
            break;
        }
        done.push(rest.terms.remove(0));
    }
    SparseVec { terms: done }
}

/// Full reduction of `v` by the elements of `basis`, which need not be a Gröbner basis.
pub(crate) fn reduce(v: SparseVec, basis: &[SparseVec], ord: &EngineOrder) -> SparseVec {
    let idx = index(basis, (0..basis.len()).filter(|&k| !basis[k].is_zero()));
    full_reduce(v, &idx, ord)
}

/// Top reduction with recorded quotients `(m, k, c)`: `v = sum c m g_k + remainder`.
pub(crate) fn divide_top(
    mut v: SparseVec,
    basis: &[SparseVec],
    ord: &EngineOrder,
) -> (Vec<(Monomial, usize, Rational)>, SparseVec) {
    let idx = index(basis, 0..basis.len());
    let mut quotients = Vec::new();
    while let Some(l) = v.lead() {
        let Some(k) = idx.divisor(&l.mono, l.comp) else { break };
        let g = &basis[k];
        let q = g.terms[0].mono.quotient_of(&l.mono).expect("divisor");
        let c = &l.coeff / &g.terms[0].coeff;
        v = v.sub_mul(&c, &q, g, ord);
        quotients.push((q, k, c));
    }
    (quotients, v)
}

fn s_poly(a: &SparseVec, b: &SparseVec, lcm: &Monomial, ord: &EngineOrder) -> SparseVec {
    let la = &a.terms[0];
    let lb = &b.terms[0];
    let qa = la.mono.quotient_of(lcm).expect("lcm");
    let qb = lb.mono.quotient_of(lcm).expect("lcm");
    let left = a.mul_term(&qa, &lb.coeff);
    left.sub_mul(&la.coeff, &qb, b, ord)
}

/// Reduced Gröbner basis of the submodule generated by `input`.
///
/// Buchberger's algorithm with the Gebauer-Möller criteria and normal
/// selection; the coprime-leads criterion is applied only to ideals. The
/// output is interreduced, monic and sorted by descending lead term.
pub(crate) fn groebner(input: Vec<SparseVec>, ord: &EngineOrder) -> Vec<SparseVec> {
    record(|s| s.groebner_runs += 1);
    let is_ideal = input.iter().flat_map(|v| v.terms.iter()).all(|t| t.comp == 0);
    let mut pending: Vec<SparseVec> = input.into_iter().filter(|v| !v.is_zero()).collect();
    // inputs are consumed smallest-lead first
    pending.sort_by(|a, b| {
        let (x, y) = (&a.terms[0], &b.terms[0]);
        ord.cmp((&y.mono, y.comp), (&x.mono, x.comp))
    });
    let mut elems: Vec<SparseVec> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    loop {
        let next_input = pending.last().map(|v| ord.degree(&v.terms[0].mono, v.terms[0].comp));
        let best_pair = pairs
            .iter()
            .enumerate()
            .min_by(|(_, p), (_, q)| {
                p.degree.cmp(&q.degree).then_with(|| ord.cmp((&p.lcm, p.comp), (&q.lcm, q.comp)))
            })
            .map(|(k, p)| (k, p.degree));
        let take_input = match (next_input, best_pair) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(di), Some((_, dp))) => di <= dp,
        };
        let candidate = if take_input {
            pending.pop().unwrap()
        } else {
            let (k, _) = best_pair.unwrap();
            let p = pairs.swap_remove(k);
            record(|s| s.spairs_reduced += 1);
            s_poly(&elems[p.i], &elems[p.j], &p.lcm, ord)
        };
        let idx = index(&elems, (0..elems.len()).filter(|&k| active[k]));
        let mut h = top_reduce(candidate, &idx, ord);
        if h.is_zero() {
            if !take_input {
                record(|s| s.zero_reductions += 1);
            }
            continue;
        }
        h.make_monic();
        let hl = h.terms[0].clone();
        let deg = ord.degree(&hl.mono, hl.comp) as i64;
        record(|s| s.max_degree = s.max_degree.max(deg));
        let hi = elems.len();
        elems.push(h);
        active.push(true);
        update(&elems, &mut active, &mut pairs, hi, is_ideal, ord);
    }

    let keep: Vec<usize> = (0..elems.len()).filter(|&k| active[k]).collect();
    let mut out = Vec::with_capacity(keep.len());
    for &k in &keep {
        let others = index(&elems, keep.iter().copied().filter(|&j| j != k));
        let lead = elems[k].terms[0].clone();
        let tail = SparseVec { terms: elems[k].terms[1..].to_vec() };
        let mut r = full_reduce(tail, &others, ord);
        r.terms.insert(0, lead);
        out.push(r);
    }
    out.sort_by(|a, b| {
        let (x, y) = (&a.terms[0], &b.terms[0]);
        ord.cmp((&y.mono, y.comp), (&x.mono, x.comp))
    });
    out
}

/// Gebauer-Möller update after adding `elems[h]`.
fn update(
    elems: &[SparseVec],
    active: &mut [bool],
    pairs: &mut Vec<Pair>,
    h: usize,
    is_ideal: bool,
    ord: &EngineOrder,
) {
    let lh = &elems[h].terms[0];
    let coprime = |k: usize| is_ideal && elems[k].terms[0].mono.is_coprime(&lh.mono);
    let mut cands: Vec<(usize, Monomial)> = (0..h)
        .filter(|&k| active[k] && elems[k].terms[0].comp == lh.comp)
        .map(|k| (k, elems[k].terms[0].mono.lcm(&lh.mono)))
        .collect();

    // drop (k, h) when another new pair has an lcm dividing its lcm
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    while let Some((k, l)) = cands.pop() {
        let dominated = cands.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l));
        if coprime(k) || !dominated {
            kept.push((k, l));
        }
    }
    let new_pairs: Vec<(usize, Monomial)> = kept.into_iter().filter(|&(k, _)| !coprime(k)).collect();

    // chain criterion on old pairs
    pairs.retain(|p| {
        if p.comp != lh.comp || !lh.mono.divides(&p.lcm) {
            return true;
        }
        let li = elems[p.i].terms[0].mono.lcm(&lh.mono);
        let lj = elems[p.j].terms[0].mono.lcm(&lh.mono);
        li == p.lcm || lj == p.lcm
    });

    for (k, l) in new_pairs {
        pairs.push(Pair { i: k, j: h, lcm: l, comp: lh.comp, degree: ord.degree(&l, lh.comp) });
    }

    for k in 0..h {
        if active[k] && elems[k].terms[0].comp == lh.comp && lh.mono.divides(&elems[k].terms[0].mono) {
            active[k] = false;
        }
    }
}
