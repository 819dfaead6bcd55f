//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use logchern::algebra::linear::{rank, to_rationals};
use logchern::algebra::{Monomial, MultiPoly, Rational, TruncatedPoly, UniPolyQ};
use logchern::arrangements::{build_lattice, decone, poincare_affine, poincare_projective, Arrangement, Flat};
use logchern::chern_csm::*;
use logchern::examples::bundled;
use logchern::groebner::{
    free_resolution, groebner_basis, hilbert_function, hilbert_polynomial, module_dual, schreyer_resolution,
    FreeModuleElement, GradedFreeModule, GradedModulePresentation, ModuleOrder, ResolutionData,
};
use logchern::log_geometry::*;

fn example(name: &str) -> Arrangement {
    bundled(name).unwrap().unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn opts() -> VerifyOptions {
    VerifyOptions { per_flat_check: true, degree_cap: 200, ..Default::default() }
}

struct Modules {
    dd: DefiningData,
    d0: LogModule,
    omega: LogModule,
    omega0: LogModule,
}

fn modules(a: &Arrangement) -> Modules {
    let dd = defining_data(a).unwrap();
    let d0 = derivation_module_d0(&dd).unwrap();
    let omega = log_forms(&dd).unwrap();
    let omega0 = relative_log_forms(&dd, &omega).unwrap();
    Modules { dd, d0, omega, omega0 }
}

fn criterion_1() {
    let pi = poincare_projective(&example("eight_planes")).unwrap();
    let c = csm_complement(&pi, 4);
    assert_eq!(c.coeffs(), &[1, -4, 7, -5]);
    assert_eq!(c.to_string(), "1 - 4h + 7h^2 - 5h^3");
    let d = csm_of_divisor(&pi, 4);
    assert_eq!(d.coeffs(), &[0, 8, -1, 9]);
    assert_eq!(d.to_string(), "8h - h^2 + 9h^3");
}

fn criterion_2() {
    let a = example("eight_planes");
    let m = modules(&a);
    let nf = nonfree_locus(&a, &m.omega0, NonFreeOptions { per_flat: true, chart: None, degree_cap: 200 }).unwrap();
    assert_eq!(nf.n_projective, 3);
    assert_eq!(nf.per_flat_total(), Some(3));

    let dual_omega = module_dual(&m.omega.presentation).unwrap();
    assert_eq!(
        hilbert_polynomial(&dual_omega.shifted(-1)).unwrap(),
        UniPolyQ::new(vec![q(2, 1), q(-5, 3), q(0, 1), q(2, 3)])
    );
    let dual_omega0 = module_dual(&m.omega0.presentation).unwrap();
    assert_eq!(
        hilbert_polynomial(&dual_omega0.shifted(-1)).unwrap(),
        UniPolyQ::new(vec![q(2, 1), q(-2, 1), q(-1, 2), q(1, 2)])
    );
    assert_eq!(
        hilbert_polynomial(&dual_omega0).unwrap(),
        UniPolyQ::new(vec![q(0, 1), q(-3, 2), q(1, 1), q(1, 2)])
    );
    let ct = chern_from_resolution(&m.d0.resolution, 1, 4);
    assert_eq!(ct, TruncatedPoly::from_integers(4, &[1, -4, 7, -2]));
}

fn criterion_3() {
    let r = verify_main_theorem(&example("eight_planes"), opts()).unwrap();
    assert_eq!(r.defect_coeff, 1);
    assert_eq!(r.n, 3);
    assert_eq!(r.lhs.sub(&r.rhs_csm).coeffs(), &[0, 0, 0, 3]);
    assert!(r.residual.is_zero());
    assert_eq!(r.lhs.to_string(), "1 - 4h + 7h^2 - 2h^3");
    assert_eq!(r.lhs_via_dual, r.lhs);
}

fn criterion_4() {
    for name in ["boolean2", "boolean3", "boolean4", "boolean5", "rank2_triple"] {
        let r = verify_main_theorem(&example(name), opts()).unwrap();
        assert_eq!(r.lhs, r.rhs_csm, "{name}");
        assert_eq!(r.n, 0, "{name}");
        assert!(r.mustata_schenck_residual.iter().all(|&c| c == 0), "{name}");
        let m = modules(&example(name));
        assert_eq!(m.omega0.pdim(), 0, "{name}");
    }
}

fn criterion_5() {
    for name in ["generic4_c3", "generic5_c4"] {
        let a = example(name);
        let m = modules(&a);
        assert_eq!(m.omega0.pdim(), 1, "{name}");
        let nf = nonfree_locus(&a, &m.omega0, NonFreeOptions { per_flat: true, chart: None, degree_cap: 200 }).unwrap();
        assert_eq!(nf.n_projective, 0, "{name}");
        assert_eq!(nf.per_flat_total(), Some(0), "{name}");
        let ct = chern_from_resolution(&m.omega0.resolution, 1, a.dim());
        let pi = poincare_projective(&a).unwrap();
        assert!(verify_mustata_schenck(&ct, &pi).is_zero(), "{name}");
    }
}

fn criterion_6() {
    let a = example("eight_planes");
    let m = modules(&a);
    let ct = chern_from_resolution(&m.omega0.resolution, 1, 4);
    let pi = poincare_projective(&a).unwrap();
    assert_eq!(verify_mustata_schenck(&ct, &pi), TruncatedPoly::from_integers(4, &[0, 0, 0, 3]));
}

/// Random central arrangement with `l <= 4`, at most 8 hyperplanes, small integer normals.
fn random_arrangement(rng: &mut ChaCha8Rng) -> Arrangement {
    loop {
        let l = rng.gen_range(2..=4);
        let n = rng.gen_range(1..=8);
        let mut kept: Vec<Vec<i64>> = Vec::new();
        for _ in 0..n {
            let v: Vec<i64> = (0..l).map(|_| rng.gen_range(-2..=2)).collect();
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            let parallel = kept.iter().any(|k| rank(&[to_rationals(k), to_rationals(&v)]) == 1);
            if !parallel {
                kept.push(v);
            }
        }
        if !kept.is_empty() {
            return Arrangement::central(l, kept).unwrap();
        }
    }
}

fn random_form(rng: &mut ChaCha8Rng, nvars: usize, degree: u16) -> MultiPoly {
    let mut terms = Vec::new();
    for _ in 0..4 {
        let mut e = vec![0u16; nvars];
        for _ in 0..degree {
            e[rng.gen_range(0..nvars)] += 1;
        }
        terms.push((Monomial::new(&e), Rational::from_integer(rng.gen_range(-3..=3))));
    }
    MultiPoly::from_terms(nvars, terms)
}

fn check_resolution(res: &ResolutionData, m: &GradedModulePresentation, what: &str) {
    assert!(res.is_exact_complex(), "{what}: maps do not compose to zero");
    for k in 0..=10 {
        assert_eq!(res.euler_hilbert_function(k), hilbert_function(m, k) as i128, "{what} degree {k}");
    }
}

fn criterion_7() {
    let mut rng = ChaCha8Rng::seed_from_u64(20240917);

    // Möbius recursion and deconing on random arrangements
    for _ in 0..10 {
        let a = random_arrangement(&mut rng);
        let lat = build_lattice(&a);
        let flats: Vec<&Flat> = lat.flats().collect();
        for x in &flats {
            if x.codim > 0 {
                let s: i64 = flats.iter().filter(|y| y.is_below(x)).map(|y| y.mobius).sum();
                assert_eq!(s, 0, "Möbius interval sum");
            }
        }
        let pi = poincare_affine(&a);
        for h in 0..a.len() {
            assert_eq!(poincare_affine(&decone(&a, h).unwrap()).mul_one_plus_t(), pi);
        }
        let proj = poincare_projective(&a).unwrap();
        assert_eq!(csm_complement(&proj, a.dim()).coeff(a.dim() - 1), proj.eval(-1));
        let dd = defining_data(&a).unwrap();
        assert!(dd.euler_identity_holds());
    }

    let names = ["boolean3", "three_lines", "rank2_triple", "generic4_c3", "eight_planes", "generic5_c4"];
    for name in names {
        let a = example(name);
        let lat = build_lattice(&a);
        for x in lat.flats().filter(|x| x.codim > 0) {
            assert_eq!(lat.flats().filter(|y| y.is_below(x)).map(|y| y.mobius).sum::<i64>(), 0);
        }
        let proj = poincare_projective(&a).unwrap();
        assert_eq!(csm_complement(&proj, a.dim()).coeff(a.dim() - 1), proj.eval(-1));
        let m = modules(&a);
        assert!(m.dd.euler_identity_holds());
        for lm in [&m.d0, &m.omega, &m.omega0] {
            check_resolution(&lm.resolution, &lm.presentation, name);
            let padded = schreyer_resolution(&lm.presentation, a.dim() + 2).unwrap();
            check_resolution(&padded, &lm.presentation, name);
            assert_eq!(
                chern_from_resolution(&padded, 1, a.dim()),
                chern_from_resolution(&lm.resolution, 1, a.dim()),
                "{name}: padding changed the Chern polynomial"
            );
        }
    }

    // reduced bases do not depend on generator order; random ideals resolve exactly
    for _ in 0..10 {
        let mut gens: Vec<FreeModuleElement> =
            (0..4).map(|_| FreeModuleElement::new(3, vec![random_form(&mut rng, 3, 2)])).collect();
        gens.retain(|g| !g.is_zero());
        let order = ModuleOrder::grevlex(vec![0]);
        let reference = groebner_basis(&gens, &order).elements();
        for _ in 0..3 {
            gens.shuffle(&mut rng);
            assert_eq!(groebner_basis(&gens, &order).elements(), reference);
        }
        let m = GradedModulePresentation::new(3, GradedFreeModule::new(vec![0]), gens).unwrap();
        check_resolution(&free_resolution(&m, 5).unwrap(), &m, "random ideal");
    }
}

fn criterion_8() {
    assert_eq!(defect_coefficient(3).unwrap(), 0);
    assert_eq!(defect_coefficient(4).unwrap(), 1);
    assert_eq!(defect_coefficient(5).unwrap(), -5);
}

fn main() {
    let criteria: [(&str, fn(), Duration); 8] = [
        ("1 worked example CSM classes", criterion_1, Duration::from_secs(10)),
        ("2 worked example N, Hilbert polynomials, Chern class", criterion_2, Duration::from_secs(300)),
        ("3 main identity with defect 3h^3", criterion_3, Duration::from_secs(300)),
        ("4 free arrangements", criterion_4, Duration::from_secs(60)),
        ("5 locally free but not free", criterion_5, Duration::from_secs(300)),
        ("6 Denham-Schulze correction 3t^3", criterion_6, Duration::from_secs(300)),
        ("7 property suites", criterion_7, Duration::from_secs(300)),
        ("8 defect coefficient table", criterion_8, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let took = start.elapsed();
        let ok = outcome.is_ok() && took <= budget;
        if !ok {
            failed += 1;
        }
        let note = if outcome.is_ok() && took > budget { " (over time budget)" } else { "" };
        println!("criterion {name}: {} in {:.2?}{note}", if ok { "PASS" } else { "FAIL" }, took);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
