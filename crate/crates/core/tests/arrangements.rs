use std::collections::{BTreeMap, BTreeSet};

use logchern::algebra::linear::{in_row_space, rank, rref, to_rationals};
use logchern::algebra::Rational;
use logchern::arrangements::*;
use logchern::examples::bundled;
use proptest::prelude::*;

/// Distinct closed index sets of all nonempty sub-intersections, by codimension.
fn brute_force_flats(a: &Arrangement) -> BTreeMap<usize, BTreeSet<Vec<usize>>> {
    let n = a.len();
    let vecs: Vec<Vec<Rational>> = homogenized(a);
    let mut e0 = vec![Rational::zero(); a.dim() + 1];
    e0[0] = Rational::one();
    let mut out: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for s in 0u64..(1 << n) {
        let rows: Vec<Vec<Rational>> = (0..n).filter(|i| s >> i & 1 == 1).map(|i| vecs[i].clone()).collect();
        let (e, p) = rref(&rows);
        if in_row_space(&e, &p, &e0) {
            continue;
        }
        let closure: Vec<usize> = (0..n).filter(|&i| in_row_space(&e, &p, &vecs[i])).collect();
        out.entry(p.len()).or_default().insert(closure);
    }
    out
}

fn homogenized(a: &Arrangement) -> Vec<Vec<Rational>> {
    a.normals()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut h = vec![a.constants().map_or(0, |c| c[i])];
            h.extend_from_slice(v);
            to_rationals(&h)
        })
        .collect()
}

/// Whitney's formula: `π(A, t) = sum over subsets S with nonempty intersection of (-1)^|S| (-t)^rank(S)`.
fn whitney_poincare(a: &Arrangement) -> Vec<i64> {
    let n = a.len();
    let vecs = homogenized(a);
    let mut e0 = vec![Rational::zero(); a.dim() + 1];
    e0[0] = Rational::one();
    let mut c = vec![0i64; a.dim() + 1];
    for s in 0u64..(1 << n) {
        let rows: Vec<Vec<Rational>> = (0..n).filter(|i| s >> i & 1 == 1).map(|i| vecs[i].clone()).collect();
        let (e, p) = rref(&rows);
        if in_row_space(&e, &p, &e0) {
            continue;
        }
        let r = p.len();
        let sign = if (s.count_ones() as usize + r).is_multiple_of(2) { 1 } else { -1 };
        c[r] += sign;
    }
    while c.len() > 1 && c.last() == Some(&0) {
        c.pop();
    }
    c
}

fn lattice_sets(l: &IntersectionLattice) -> BTreeMap<usize, BTreeSet<Vec<usize>>> {
    let mut out: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for f in l.flats() {
        out.entry(f.codim).or_default().insert(f.indices.clone());
    }
    out
}

fn ex(name: &str) -> Arrangement {
    bundled(name).unwrap().unwrap()
}

fn check_mobius_recursion(l: &IntersectionLattice) {
    let flats: Vec<&Flat> = l.flats().collect();
    for x in &flats {
        if x.codim == 0 {
            assert_eq!(x.mobius, 1);
            continue;
        }
        let s: i64 = flats.iter().filter(|y| y.is_below(x)).map(|y| y.mobius).sum();
        assert_eq!(s, 0, "interval sum at {:?}", x.indices);
    }
}

#[test]
fn small_lattices() {
    let b2 = build_lattice(&ex("boolean2"));
    assert_eq!(b2.counts(), [1, 2, 1]);
    let three = build_lattice(&ex("three_lines"));
    assert_eq!(three.counts(), [1, 3, 1]);
    assert_eq!(three.codim(2)[0].mobius, 2);
    let b3 = build_lattice(&ex("boolean3"));
    for f in b3.flats() {
        assert_eq!(f.mobius, if f.codim % 2 == 0 { 1 } else { -1 });
    }
}

#[test]
fn eight_planes_lattice_matches_subset_enumeration() {
    let a = ex("eight_planes");
    assert_eq!(a.len(), 8);
    let lat = build_lattice(&a);
    assert_eq!(lattice_sets(&lat), brute_force_flats(&a));
    check_mobius_recursion(&lat);
    assert_eq!(poincare_affine(&a).coeffs(), whitney_poincare(&a).as_slice());
}

#[test]
fn poincare_polynomials() {
    assert_eq!(poincare_affine(&ex("boolean3")).coeffs(), &[1, 3, 3, 1]);
    assert_eq!(poincare_affine(&ex("three_lines")).coeffs(), &[1, 3, 2]);
    assert_eq!(poincare_affine(&ex("rank2_triple")).coeffs(), &[1, 3, 2]);
    assert_eq!(poincare_projective(&ex("boolean4")).unwrap().coeffs(), &[1, 3, 3, 1]);
    let single = Arrangement::central(2, vec![vec![1, 0]]).unwrap();
    assert_eq!(poincare_projective(&single).unwrap().coeffs(), &[1]);
    let eight = poincare_projective(&ex("eight_planes")).unwrap();
    assert_eq!(eight.coeffs(), &[1, 7, 18, 17]);
    assert_eq!(eight.to_string(), "1 + 7t + 18t^2 + 17t^3");
    assert_eq!(poincare_projective(&ex("boolean3")).unwrap().render_factored(), "(1+t)^2");
    assert_eq!(poincare_affine(&ex("boolean3")).render_factored(), "(1+t)^3");
    let empty = Arrangement::central(2, vec![]).unwrap();
    assert!(poincare_projective(&empty).is_err());
}

#[test]
fn deconing() {
    let d = decone(&ex("boolean2"), 0).unwrap();
    assert_eq!(d.dim(), 1);
    assert_eq!(d.len(), 1);
    assert_eq!(poincare_affine(&d).coeffs(), &[1, 1]);
    for h in 0..3 {
        let d = decone(&ex("three_lines"), h).unwrap();
        assert_eq!(poincare_affine(&d).coeffs(), &[1, 2]);
    }
    let a = ex("eight_planes");
    let d = decone(&a, 3).unwrap();
    assert_eq!(d.len(), 7);
    assert_eq!(poincare_affine(&d).coeffs(), &[1, 7, 18, 17]);
    assert_eq!(lattice_sets(&build_lattice(&d)), brute_force_flats(&d));
    assert_eq!(poincare_affine(&d).coeffs(), whitney_poincare(&d).as_slice());
    assert!(matches!(decone(&a, 8), Err(logchern::Error::IndexOutOfRange { .. })));
}

#[test]
fn localization() {
    let a = ex("boolean3");
    let lat = build_lattice(&a);
    let v = &lat.codim(0)[0];
    assert!(localize(&a, &lat, v).unwrap().is_empty());
    let x = lat.find(&[0, 1]).unwrap();
    assert_eq!(localize(&a, &lat, x).unwrap().normals(), &[vec![1, 0, 0], vec![0, 1, 0]]);
    let other = build_lattice(&ex("three_lines"));
    let foreign = &other.codim(2)[0];
    assert!(localize(&a, &lat, foreign).is_err());

    let e = ex("eight_planes");
    let el = build_lattice(&e);
    for x in el.codim(3) {
        let loc = localize(&e, &el, x).unwrap();
        assert_eq!(loc.len(), x.indices.len());
        for (k, &i) in x.indices.iter().enumerate() {
            assert_eq!(loc.normals()[k], e.normals()[i]);
        }
    }
}

#[test]
fn essentialization() {
    let b = ex("boolean3");
    assert_eq!(essentialize(&b).unwrap(), b);
    let xy = Arrangement::central(3, vec![vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
    let e = essentialize(&xy).unwrap();
    assert_eq!(e.dim(), 2);
    assert_eq!(e.normals(), &[vec![1, 0], vec![0, 1]]);
    let t = ex("rank2_triple");
    let e = essentialize(&t).unwrap();
    assert_eq!(e.dim(), 2);
    assert_eq!(e.len(), 3);
    assert_eq!(poincare_affine(&e).coeffs(), &[1, 3, 2]);
}

fn arb_central() -> impl Strategy<Value = Arrangement> {
    (2usize..=4)
        .prop_flat_map(|l| proptest::collection::vec(proptest::collection::vec(-2i64..=2, l), 1..=8).prop_map(move |v| (l, v)))
        .prop_filter_map("degenerate", |(l, vs)| {
            let mut kept: Vec<Vec<i64>> = Vec::new();
            for v in vs {
                if v.iter().all(|&x| x == 0) {
                    continue;
                }
                let r = rank(&[to_rationals(&v)]);
                let dup = kept.iter().any(|k| rank(&[to_rationals(k), to_rationals(&v)]) == r);
                if !dup {
                    kept.push(v);
                }
            }
            if kept.is_empty() {
                None
            } else {
                Arrangement::central(l, kept).ok()
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10, ..ProptestConfig::default() })]

    #[test]
    fn deconing_divides_by_one_plus_t(a in arb_central()) {
        let pi = poincare_affine(&a);
        for h in 0..a.len() {
            let d = decone(&a, h).unwrap();
            prop_assert_eq!(poincare_affine(&d).mul_one_plus_t(), pi.clone());
        }
    }

    #[test]
    fn lattice_matches_oracles(a in arb_central()) {
        let lat = build_lattice(&a);
        prop_assert_eq!(lattice_sets(&lat), brute_force_flats(&a));
        check_mobius_recursion(&lat);
        prop_assert_eq!(poincare_affine(&a).coeffs().to_vec(), whitney_poincare(&a));
        prop_assert_eq!(poincare_affine(&a).coeff(1), a.len() as i64);
    }

    #[test]
    fn essentialize_preserves_poincare(a in arb_central()) {
        let e = essentialize(&a).unwrap();
        prop_assert!(e.is_essential());
        prop_assert_eq!(poincare_affine(&e), poincare_affine(&a));
    }
}
