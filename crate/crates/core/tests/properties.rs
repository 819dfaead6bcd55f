use logchern::algebra::{Monomial, MultiPoly, Rational, TruncatedPoly};
use logchern::arrangements::parse_arrangement;
use logchern::chern_csm::{chern_dual, twist_chern, twist_chern_by};
use logchern::examples::{bundled_examples, bundled_source};
use logchern::groebner::{
    free_resolution, groebner_basis, hilbert_function, FreeModuleElement, GradedFreeModule, GradedModulePresentation,
    ModuleOrder,
};
use proptest::prelude::*;

const NVARS: usize = 3;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn arb_poly() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((proptest::collection::vec(0u16..=3, NVARS), arb_rational()), 0..6)
        .prop_map(|terms| MultiPoly::from_terms(NVARS, terms.into_iter().map(|(e, c)| (Monomial::new(&e), c)).collect()))
}

fn arb_form(degree: u16) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((proptest::collection::vec(0usize..NVARS, degree as usize), -4i64..=4), 1..5).prop_map(
        move |terms| {
            let terms = terms
                .into_iter()
                .map(|(vars, c)| {
                    let mut e = [0u16; NVARS];
                    for v in vars {
                        e[v] += 1;
                    }
                    (Monomial::new(&e), Rational::from_integer(c))
                })
                .collect();
            MultiPoly::from_terms(NVARS, terms)
        },
    )
}

fn arb_truncated(len: usize) -> impl Strategy<Value = TruncatedPoly> {
    proptest::collection::vec(-9i64..=9, len - 1).prop_map(move |tail| {
        let mut c = vec![1];
        c.extend(tail);
        TruncatedPoly::from_integers(len, &c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn rational_field_laws(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn polynomial_ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).exact_div(&b), Some(a.clone()));
        }
    }

    #[test]
    fn product_rule(a in arb_poly(), b in arb_poly(), i in 0usize..NVARS) {
        let lhs = (&a * &b).derivative(i);
        let rhs = &(&a.derivative(i) * &b) + &(&a * &b.derivative(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncated_inverse(a in arb_truncated(5), b in arb_truncated(5)) {
        let inv = a.inverse().unwrap();
        prop_assert_eq!(a.mul(&inv), TruncatedPoly::one(5));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(chern_dual(&chern_dual(&a)), a.clone());
        prop_assert_eq!(chern_dual(&a.mul(&b)), chern_dual(&a).mul(&chern_dual(&b)));
    }

    #[test]
    fn twisting_is_invertible(a in arb_truncated(5), e in -3i64..=3) {
        prop_assert_eq!(twist_chern_by(&twist_chern(&a, 5), 4, -1), a.clone());
        prop_assert_eq!(twist_chern_by(&twist_chern_by(&a, 4, e), 4, -e), a);
    }

    #[test]
    fn reduced_bases_ignore_generator_order(
        gens in proptest::collection::vec(arb_form(2), 1..5),
        seed in any::<u64>(),
    ) {
        let els: Vec<FreeModuleElement> = gens.into_iter().map(|g| FreeModuleElement::new(NVARS, vec![g])).collect();
        let order = ModuleOrder::grevlex(vec![0]);
        let reference = groebner_basis(&els, &order).elements();
        let mut shuffled = els.clone();
        let n = shuffled.len();
        for k in 0..n {
            shuffled.swap(k, (seed as usize).wrapping_add(k * 7) % n);
        }
        shuffled.reverse();
        prop_assert_eq!(groebner_basis(&shuffled, &order).elements(), reference);
    }

    #[test]
    fn resolutions_are_exact_complexes(gens in proptest::collection::vec(arb_form(2), 1..5)) {
        let rels = gens.into_iter().map(|g| FreeModuleElement::new(NVARS, vec![g])).collect();
        let m = GradedModulePresentation::new(NVARS, GradedFreeModule::new(vec![0]), rels).unwrap();
        let res = free_resolution(&m, 6).unwrap();
        prop_assert!(res.is_exact_complex());
        prop_assert!(res.is_minimal());
        prop_assert!(res.length() <= NVARS as i64);
        for k in 0..=10 {
            prop_assert_eq!(res.euler_hilbert_function(k), hilbert_function(&m, k) as i128);
        }
    }
}

#[test]
fn serialization_is_deterministic() {
    for (name, _) in bundled_examples() {
        let src = bundled_source(name).unwrap();
        let a = parse_arrangement(src).unwrap();
        let once = serde_json::to_string(&a.to_json()).unwrap();
        let again = serde_json::to_string(&parse_arrangement(src).unwrap().to_json()).unwrap();
        assert_eq!(once, again);
        let round = parse_arrangement(&once).unwrap();
        assert_eq!(round, a, "{name}");
    }
}
