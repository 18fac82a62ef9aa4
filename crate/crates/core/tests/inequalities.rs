use num_complex::Complex64;
use polarineq_core::generators::{dominated_pair, extremal_poly, random_zeros_poly, Family, GenConfig, GenMode};
use polarineq_core::inequalities::{
    build_instance, check_inequality, evaluate_sides, sharpness_probe, CheckParams, InequalityId,
};
use polarineq_core::{Error, PolarSpec, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn random_alphas(rng: &mut ChaCha8Rng, s: usize, lo: f64, hi: f64) -> Vec<Complex64> {
    (0..s).map(|_| Complex64::from_polar(rng.gen_range(lo..hi), rng.gen_range(0.0..TAU))).collect()
}

#[test]
fn every_entry_checks_on_a_valid_instance() {
    let inside = random_zeros_poly(&GenConfig::new(5, 0.8, 11, GenMode::ZerosInside)).unwrap();
    let outside = random_zeros_poly(&GenConfig::new(5, 0.8, 12, GenMode::ZerosOutsideOpenDisk)).unwrap();
    let outside_unit = random_zeros_poly(&GenConfig::new(5, 1.0, 13, GenMode::ZerosOutsideOpenDisk)).unwrap();
    let outside_wide = random_zeros_poly(&GenConfig::new(5, 2.0, 14, GenMode::ZerosOutsideOpenDisk)).unwrap();
    let inside_unit = random_zeros_poly(&GenConfig::new(5, 1.0, 15, GenMode::ZerosInside)).unwrap();
    let free = random_zeros_poly(&GenConfig::new(5, 0.8, 16, GenMode::Unconstrained)).unwrap();
    let (dominated, dominating) = dominated_pair(&GenConfig::new(5, 0.8, 17, GenMode::ZerosInside), c(0.4, 0.1), c(0.0, 0.4)).unwrap();

    let chain = PolarSpec::new(5, 0.8, vec![c(1.0, 0.5), c(-0.9, 0.0)], c(0.2, -0.7));
    let single = PolarSpec::new(5, 0.8, vec![c(0.0, 1.7)], c(-0.5, 0.5));
    for id in InequalityId::ALL {
        use InequalityId::*;
        let s_one = matches!(id, CES1 | CE8 | CE11 | LE2);
        let spec = match id {
            E1 | E2 | E3 | AE | AWE => PolarSpec { k: 1.0, alphas: vec![c(1.5, 0.0)], ..chain.clone() },
            E4 => PolarSpec { k: 2.0, ..chain.clone() },
            _ if s_one => single.clone(),
            _ => chain.clone(),
        };
        let (p, f) = match id {
            E1 => (&free, None),
            E2 | AE | AWE => (&outside_unit, None),
            E3 => (&inside_unit, None),
            E4 => (&outside_wide, None),
            E5 | CE4 | CE5 | LE2 | LE3 | LE4 => (&inside, None),
            TE1 | CE3 | CES1 => (&dominated, Some(&dominating)),
            CE1 | CE2 | LE5 => (&free, None),
            TE2 | TE3 | CE7 | CE8 | CE9 | CE10 | CE11 => (&outside, None),
        };
        let inst = build_instance(id, p, f, &spec).unwrap_or_else(|e| panic!("{id}: {e}"));
        let report = check_inequality(&inst, &CheckParams::default()).unwrap();
        assert!(report.pass, "{id}: {report:?}");
        assert_eq!(report.id, id);
    }
}

#[test]
fn te2_and_ae_agree_at_beta_zero_k_one() {
    // TE2 carries an extra |z|^s on both sides; dividing it out gives AE
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..20 {
        let n = rng.gen_range(2..=12);
        let s = rng.gen_range(1..=3.min(n - 1));
        let p = random_zeros_poly(&GenConfig::new(n, 1.0, trial, GenMode::ZerosOutsideOpenDisk)).unwrap();
        let spec = PolarSpec::new(n, 1.0, random_alphas(&mut rng, s, 1.0, 4.0), c(0.0, 0.0));
        let te2 = build_instance(InequalityId::TE2, &p, None, &spec).unwrap();
        let ae = build_instance(InequalityId::AE, &p, None, &spec).unwrap();
        let ce9 = build_instance(InequalityId::CE9, &p, None, &spec).unwrap();
        let awe = build_instance(InequalityId::AWE, &p, None, &spec).unwrap();
        for _ in 0..20 {
            let z = Complex64::from_polar(rng.gen_range(1.0..3.0), rng.gen_range(0.0..TAU));
            let zs = z.norm().powi(s as i32);
            let (l2, r2) = evaluate_sides(&te2, z).unwrap();
            let (la, ra) = evaluate_sides(&ae, z).unwrap();
            assert!(rel(l2 / zs, la) <= 1e-12 && rel(r2 / zs, ra) <= 1e-12);
            let (l9, r9) = evaluate_sides(&ce9, z).unwrap();
            let (lw, rw) = evaluate_sides(&awe, z).unwrap();
            assert!(rel(l9, lw) <= 1e-12 && rel(r9, rw) <= 1e-12, "{r9} {rw}");
        }
    }
}

#[test]
fn large_alpha_recovers_derivative_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let big = 1e6;
    for trial in 0..10 {
        let n = rng.gen_range(3..=9);
        let s = rng.gen_range(1..=3.min(n - 1));
        let k = 0.5;
        let (p, f) = dominated_pair(&GenConfig::new(n, k, trial, GenMode::ZerosInside), c(0.5, 0.0), c(0.0, 0.3)).unwrap();
        let beta = Complex64::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(0.0..TAU));
        let spec = PolarSpec::new(n, k, vec![c(big, 0.0); s], beta);
        let te1 = build_instance(InequalityId::TE1, &p, Some(&f), &spec).unwrap();
        let ce3 = build_instance(InequalityId::CE3, &p, Some(&f), &spec).unwrap();
        let scale = big.powi(s as i32);
        for _ in 0..10 {
            let z = Complex64::from_polar(rng.gen_range(1.0..3.0), rng.gen_range(0.0..TAU));
            let (lt, rt) = evaluate_sides(&te1, z).unwrap();
            let (lc, rc) = evaluate_sides(&ce3, z).unwrap();
            assert!(rel(lt / scale, lc) <= 1e-4, "{} {}", lt / scale, lc);
            assert!(rel(rt / scale, rc) <= 1e-4, "{} {}", rt / scale, rc);
        }
    }
}

#[test]
fn le5_dominates_te2() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for trial in 0..20 {
        let n = rng.gen_range(2..=10);
        let s = rng.gen_range(1..=3.min(n - 1));
        let k = [0.3, 0.5, 0.8, 1.0][rng.gen_range(0..4)];
        let p = random_zeros_poly(&GenConfig::new(n, k, trial, GenMode::ZerosOutsideOpenDisk)).unwrap();
        let beta = Complex64::from_polar(rng.gen_range(0.0..=1.0), rng.gen_range(0.0..TAU));
        let spec = PolarSpec::new(n, k, random_alphas(&mut rng, s, k, 4.0 * k), beta);
        let te2 = build_instance(InequalityId::TE2, &p, None, &spec).unwrap();
        let le5 = build_instance(InequalityId::LE5, &p, None, &spec).unwrap();
        for _ in 0..20 {
            let z = Complex64::from_polar(rng.gen_range(1.0..3.0), rng.gen_range(0.0..TAU));
            let (l2, r2) = evaluate_sides(&te2, z).unwrap();
            let (l5, r5) = evaluate_sides(&le5, z).unwrap();
            assert!(l2 <= 0.5 * r5 * (1.0 + 1e-12));
            assert!(rel(r2, 0.5 * r5) <= 1e-12);
            assert!(l5 >= l2);
        }
    }
}

#[test]
fn equality_families_are_tight() {
    let spec = |n| PolarSpec::new(n, 1.0, vec![], c(0.0, 0.0));
    for n in [3, 7] {
        let slack = sharpness_probe(InequalityId::E1, &Family::Power { a: c(0.0, 2.0) }, &spec(n)).unwrap();
        assert!(slack.abs() <= 1e-10);
    }
    let el = Family::ErdosLax { a: c(0.3, 0.4), b: c(0.0, -0.5) };
    assert!(sharpness_probe(InequalityId::E2, &el, &spec(5)).unwrap().abs() <= 1e-9);
    for n in [2, 6] {
        assert!(sharpness_probe(InequalityId::E3, &Family::Turan, &spec(n)).unwrap().abs() <= 1e-9);
    }
    for alpha in [1.5, 3.0, 10.0] {
        let spec = PolarSpec::new(4, 1.0, vec![c(alpha, 0.0)], c(0.0, 0.0));
        let inst = build_instance(InequalityId::AE, &extremal_poly(&Family::Half, 4).unwrap(), None, &spec).unwrap();
        let (lhs, rhs) = evaluate_sides(&inst, c(1.0, 0.0)).unwrap();
        assert!((rhs - lhs) / rhs <= 1e-9);
        assert!(sharpness_probe(InequalityId::AWE, &Family::Half, &spec).unwrap().abs() <= 1e-9);
    }
}

#[test]
fn e5_is_tight_for_turan_family_at_k_one() {
    let spec = PolarSpec::new(5, 1.0, vec![], c(0.0, 0.0));
    assert!(sharpness_probe(InequalityId::E5, &Family::Turan, &spec).unwrap().abs() <= 1e-9);
}

#[test]
fn hypothesis_failures_name_the_premise() {
    let p = Polynomial::from_real(&[1.0, 0.0, 1.0]);
    let spec = PolarSpec::new(2, 1.0, vec![c(0.5, 0.0)], c(0.0, 0.0));
    let err = build_instance(InequalityId::TE2, &p, None, &spec).unwrap_err();
    assert_eq!(err.to_string(), "hypothesis violated: |alpha_1| >= k");
    assert!(matches!(err, Error::HypothesisViolated(_)));

    let inside = Polynomial::from_roots(&[c(0.9, 0.0), c(0.0, 0.2)], c(1.0, 0.0)).unwrap();
    let spec = PolarSpec::new(2, 0.5, vec![c(1.0, 0.0)], c(0.0, 0.0));
    let err = build_instance(InequalityId::LE4, &inside, None, &spec).unwrap_err();
    assert_eq!(err.to_string(), "hypothesis violated: all zeros of P in |z| <= 0.5");

    let spec = PolarSpec::new(2, 1.0, vec![c(2.0, 0.0)], c(0.0, 0.0));
    let err = build_instance(InequalityId::TE1, &p, None, &spec).unwrap_err();
    assert!(matches!(err, Error::InvalidArgument(_)), "{err}");
}
