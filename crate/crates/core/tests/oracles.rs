use num_complex::Complex64;
use polarineq_core::extrema::{circle_extremum, default_eps, ExtremumKind};
use polarineq_core::generators::{random_zeros_poly, GenConfig, GenMode};
use polarineq_core::{count_zeros_in_disk, find_roots, Polynomial};
use std::f64::consts::TAU;

/// Max and min of |P| over `points` equally spaced angles.
fn dense_scan(p: &Polynomial, r: f64, points: usize) -> (f64, f64) {
    (0..points)
        .map(|i| p.eval(Complex64::from_polar(r, TAU * i as f64 / points as f64)).norm())
        .fold((0.0, f64::INFINITY), |(hi, lo), v| (hi.max(v), lo.min(v)))
}

#[test]
fn extrema_agree_with_dense_scan() {
    for seed in 0..8 {
        let n = 2 + (seed as usize * 5) % 11;
        let p = random_zeros_poly(&GenConfig::new(n, 1.0, seed, GenMode::Unconstrained)).unwrap();
        for r in [0.7, 1.0, 1.3] {
            let (hi, lo) = dense_scan(&p, r, 1 << 16);
            let eps = default_eps(&p, r);
            let max = circle_extremum(&p, r, ExtremumKind::Max, eps).unwrap();
            let min = circle_extremum(&p, r, ExtremumKind::Min, eps).unwrap();
            // the certified value can only beat a finite scan, never lose to it
            assert!(max.value >= hi - 1e-12 * hi, "n={n} r={r}: {} < {hi}", max.value);
            assert!(min.value <= lo + 1e-12 * hi.max(1.0));
            assert!((max.value - hi) / hi <= 1e-6);
            assert!(max.certified_error <= eps && min.certified_error <= eps);
        }
    }
}

#[test]
fn roots_reproduce_the_polynomial() {
    for seed in 0..20 {
        let n = 1 + seed as usize % 12;
        let p = random_zeros_poly(&GenConfig::new(n, 1.5, seed, GenMode::Unconstrained)).unwrap();
        let report = find_roots(&p).unwrap();
        let rebuilt = Polynomial::from_roots(&report.roots, p.leading_coeff().unwrap()).unwrap();
        for j in 0..=n {
            assert!((rebuilt.coeff(j) - p.coeff(j)).norm() <= 1e-9 * p.abs_coeff_sum(1.0));
        }
        assert!(report.verified_by_winding, "seed {seed}");
    }
}

#[test]
fn winding_count_matches_root_moduli() {
    for seed in 0..20 {
        let n = 1 + seed as usize % 12;
        let p = random_zeros_poly(&GenConfig::new(n, 1.0, 100 + seed, GenMode::Unconstrained)).unwrap();
        let report = find_roots(&p).unwrap();
        for r in [0.5, 1.25, 2.5] {
            if report.roots.iter().any(|z| (z.norm() - r).abs() < 1e-6) {
                continue;
            }
            let inside = report.roots.iter().filter(|z| z.norm() < r).count();
            assert_eq!(count_zeros_in_disk(&p, r).unwrap(), inside);
        }
    }
}
