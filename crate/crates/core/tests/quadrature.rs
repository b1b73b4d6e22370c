use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use swalg::coords::CoordSystem;
use swalg::oscillator::{enumerate_level, osc_wavefunction, OscLabel};
use swalg::quadrature::{inner_product, make_rule, DomainKind, Grid, QuadOrders};
use swalg::swreduce::sw_wavefunction;

#[test]
fn weight_sums_match_domain_measure() {
    for order in [4, 8, 33] {
        let l = make_rule(DomainKind::AngleLambda, order).unwrap();
        assert!((l.weights.iter().sum::<f64>() - 2.0 * PI).abs() < 1e-12);
        for kind in [DomainKind::AngleTheta, DomainKind::AnglePhi] {
            let r = make_rule(kind, order).unwrap();
            assert!((r.weights.iter().sum::<f64>() - FRAC_PI_2).abs() < 1e-12);
        }
        let z = make_rule(DomainKind::RadialZ, order).unwrap();
        assert!((z.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn rule_examples() {
    let r = make_rule(DomainKind::AngleTheta, 24).unwrap();
    let v = r.integrate(|t| t.sin().powi(3) * t.cos());
    assert!((v - 0.25).abs() < 1e-12);
    let z = make_rule(DomainKind::RadialZ, 16).unwrap();
    assert!((z.integrate(|_| 1.0) - 1.0).abs() < 1e-14);
}

#[test]
fn domain_parsing() {
    for (s, k) in [
        ("radial-z", DomainKind::RadialZ),
        ("angle-theta", DomainKind::AngleTheta),
        ("angle-phi", DomainKind::AnglePhi),
        ("angle-lambda", DomainKind::AngleLambda),
    ] {
        assert_eq!(s.parse::<DomainKind>().unwrap(), k);
    }
    assert!("angle-psi".parse::<DomainKind>().is_err());
    assert!(make_rule(DomainKind::AngleTheta, 0).is_err());
}

#[test]
fn lambda_rule_kills_low_harmonics() {
    let m = 32;
    let r = make_rule(DomainKind::AngleLambda, m).unwrap();
    for k in 1..(m / 2) as i32 {
        let re = r.integrate(|l| (f64::from(k) * l).cos());
        let im = r.integrate(|l| (f64::from(k) * l).sin());
        assert!(re.abs() < 1e-14 && im.abs() < 1e-14, "k={k}");
    }
}

#[test]
fn normalization_and_orthogonality() {
    let labels: Vec<_> = (0..=4).flat_map(|n| enumerate_level(n, 2)).collect();
    let grid = Grid::new(CoordSystem::osc(2), QuadOrders::default()).unwrap();
    let fields: Vec<_> = labels
        .iter()
        .map(|l| grid.sample(&osc_wavefunction(l)))
        .collect();
    for (i, a) in fields.iter().enumerate() {
        for (k, b) in fields.iter().enumerate() {
            let want = if i == k { 1.0 } else { 0.0 };
            let v = grid.inner(a, b);
            assert!(
                (v.re - want).abs() < 1e-8 && v.im.abs() < 1e-8,
                "{} {}: {v}",
                labels[i],
                labels[k]
            );
        }
    }
}

#[test]
fn error_estimate_and_mismatch() {
    let l = &enumerate_level(3, 2)[5];
    let psi = osc_wavefunction(l);
    let r = inner_product(&psi, &psi, QuadOrders::default()).unwrap();
    assert!(r.est_error >= 0.0 && r.est_error < 1e-10);
    let sw = sw_wavefunction(&OscLabel::new(2, 0, vec![0], vec![1, 1]).unwrap(), 1.0).unwrap();
    assert!(inner_product(&psi, &sw, QuadOrders::default()).is_err());
}

#[test]
fn doubling_orders_converged() {
    let base = QuadOrders::default();
    let doubled = QuadOrders {
        radial: 2 * base.radial,
        angular: 2 * base.angular,
        lambda: 2 * base.lambda,
    };
    let labels: Vec<_> = (0..=6)
        .flat_map(|n| enumerate_level(n, 2))
        .step_by(11)
        .collect();
    for a in &labels {
        for b in &labels {
            let (x, y) = (osc_wavefunction(a), osc_wavefunction(b));
            let v1 = inner_product(&x, &y, base).unwrap().value;
            let v2 = inner_product(&x, &y, doubled).unwrap().value;
            assert!((v1 - v2).norm() < 1e-9, "{a} {b}");
        }
    }
}

proptest! {
    #[test]
    fn theta_rule_integrates_trig_monomials(s in 0i32..12, c in 0i32..12) {
        // ∫_0^{π/2} sin^s cos^c = B((s+1)/2, (c+1)/2)/2; recurrence oracle
        fn exact(s: i32, c: i32) -> f64 {
            if s >= 2 {
                return f64::from(s - 1) / f64::from(s + c) * exact(s - 2, c);
            }
            if c >= 2 {
                return f64::from(c - 1) / f64::from(s + c) * exact(s, c - 2);
            }
            match (s, c) {
                (0, 0) => FRAC_PI_2,
                (1, 0) | (0, 1) => 1.0,
                _ => 0.5,
            }
        }
        let r = make_rule(DomainKind::AngleTheta, 48).unwrap();
        let v = r.integrate(|t| t.sin().powi(s) * t.cos().powi(c));
        prop_assert!((v - exact(s, c)).abs() < 1e-13);
    }

    #[test]
    fn radial_rule_moments(k in 0i32..20) {
        let r = make_rule(DomainKind::RadialZ, 48).unwrap();
        let want: f64 = (1..=k).map(f64::from).product();
        prop_assert!((r.integrate(|z| z.powi(k)) - want).abs() <= 1e-12 * want);
    }
}
