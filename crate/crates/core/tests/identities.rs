use ffhyp_core::chargauss::{CharGroup, CharRef, GaussMethod};
use ffhyp_core::curves::ap_lambda;
use ffhyp_core::fieldcore::{odd_primes_upto, FieldCtx};
use ffhyp_core::hyper::{koike_sign, phi2_eps1, phi4_eps3, quartic_3f2, two_f_one_gauss, whipple_check, WhippleBranch};
use ffhyp_core::qseries::{b_coeff, Newforms};
use ffhyp_core::traceform::trace32_new;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-6;

#[test]
fn koike_relation_across_the_legendre_family() {
    for p in odd_primes_upto(50).into_iter().filter(|&p| p >= 5) {
        let g = CharGroup::for_prime(p).unwrap();
        let f = FieldCtx::new(p).unwrap();
        let sigma = koike_sign(&g);
        for l in 2..p as i64 {
            let v = phi2_eps1(&g, l).unwrap();
            assert!(v.residual < TOL);
            assert_eq!(v.as_integer(), Some(sigma * ap_lambda(l, &f).unwrap()), "p={p} lambda={l}");
        }
    }
}

#[test]
fn quartic_sum_is_real_and_independent_of_chi4() {
    for p in odd_primes_upto(200).into_iter().filter(|p| p % 4 == 1) {
        let g = CharGroup::for_prime(p).unwrap();
        let chi = g.chi4().unwrap();
        let a = quartic_3f2(&g, chi).unwrap();
        let b = quartic_3f2(&g, chi.conj()).unwrap();
        assert!((a.raw - b.raw).norm() < 1e-9, "p={p}");
        assert_eq!(a.rounded.im, 0);
        assert_eq!(a.rounded.re * 2, trace32_new(p).unwrap(), "p={p}");
    }
}

#[test]
fn four_f_three_factors_for_p_1_mod_4() {
    for p in odd_primes_upto(100).into_iter().filter(|p| p % 4 == 1) {
        let g = CharGroup::for_prime(p).unwrap();
        let lhs = phi4_eps3(&g, -1).unwrap().raw;
        let two = phi2_eps1(&g, -1).unwrap().raw;
        let three = quartic_3f2(&g, g.chi4().unwrap()).unwrap().raw;
        assert!((lhs - two * three).norm() < TOL, "p={p}");
        // the Gauss-sum closed form of the 2F1
        assert!((two_f_one_gauss(&g).unwrap() - two).norm() < TOL);
    }
}

#[test]
fn gauss_routes_agree_on_the_flagship_sum() {
    for p in [13u64, 29, 37] {
        let f = FieldCtx::new(p).unwrap();
        let naive = CharGroup::with_method(&f, GaussMethod::Naive);
        let fft = CharGroup::with_method(&f, GaussMethod::Fft);
        let a = phi4_eps3(&naive, -1).unwrap();
        let b = phi4_eps3(&fft, -1).unwrap();
        assert!((a.raw - b.raw).norm() < 1e-8);
    }
}

#[test]
fn whipple_random_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in odd_primes_upto(50) {
        let g = CharGroup::for_prime(p).unwrap();
        let n = g.order();
        let pick = |rng: &mut ChaCha8Rng| CharRef::new(rng.gen_range(0..n as i64), n);
        for _ in 0..50 {
            let a = CharRef::new(2 * rng.gen_range(0..n as i64 / 2) + 1, n);
            let w = whipple_check(a, pick(&mut rng), pick(&mut rng), pick(&mut rng), &g).unwrap();
            assert_eq!(w.branch, WhippleBranch::NonSquare);
            assert!(w.lhs.norm() < TOL, "p={p}");
        }
        let mut seen = 0;
        for _ in 0..2000 {
            if seen == 50 {
                break;
            }
            let a = CharRef::new(2 * rng.gen_range(0..n as i64 / 2), n);
            let w = whipple_check(a, pick(&mut rng), pick(&mut rng), pick(&mut rng), &g).unwrap();
            if w.branch == WhippleBranch::Square {
                seen += 1;
                assert!(w.discrepancy().unwrap() < TOL, "p={p}");
            }
        }
        assert!(p == 3 || seen == 50, "p={p} only {seen} admissible tuples");
    }
}

#[test]
fn fixture_agrees_with_trace_formula() {
    for p in [5u64, 13, 17] {
        assert_eq!(2 * b_coeff(p).unwrap().re, trace32_new(p).unwrap());
    }
    let nf = Newforms::new(201).unwrap();
    for p in odd_primes_upto(200).into_iter().filter(|p| p % 4 == 3) {
        assert_eq!(nf.a(p).unwrap(), 0);
    }
}
