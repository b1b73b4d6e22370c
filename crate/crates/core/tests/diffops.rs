use std::f64::consts::{FRAC_PI_2, PI, SQRT_2, TAU};

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swalg::coords::CoordSystem;
use swalg::diffops::*;
use swalg::half::Half;
use swalg::oscillator::osc_psibar;
use swalg::quadrature::{Grid, QuadOrders};
use swalg::swreduce::{sw_psibar, JmLabel, SwLabel};
use swalg::wave::WaveEval;
use swalg::wigner::{cg, wigner_eckart};

fn jm(n_r: u32, j: i32, m: i32, mp: i32) -> JmLabel {
    JmLabel::new(n_r, Half(j), Half(m), Half(mp)).unwrap()
}

fn point(rng: &mut ChaCha8Rng, omega: f64) -> Vec<f64> {
    vec![
        rng.gen_range(0.2..2.5) / omega.sqrt(),
        rng.gen_range(0.05..FRAC_PI_2 - 0.05),
        rng.gen_range(0.0..2.0 * PI),
        rng.gen_range(0.0..2.0 * PI),
    ]
}

/// `(R, θ, λ1, λ2)` of a D = 2 Cartesian point.
fn hyper_from_cartesian(x: &[f64]) -> Vec<f64> {
    let a1 = x[0].hypot(x[1]);
    let a2 = x[2].hypot(x[3]);
    vec![
        a1.hypot(a2),
        a1.atan2(a2),
        x[0].atan2(x[1]),
        x[2].atan2(x[3]),
    ]
}

fn cartesian(h: &[f64]) -> [f64; 4] {
    let (r, t) = (h[0], h[1]);
    let (a1, a2) = (r * t.sin(), r * t.cos());
    [
        a1 * h[2].sin(),
        a1 * h[2].cos(),
        a2 * h[3].sin(),
        a2 * h[3].cos(),
    ]
}

fn element(picture: Picture, bra: &JmLabel, op: &DiffOperator, ket: &JmLabel) -> Complex64 {
    let grid = Grid::new(picture.system(), QuadOrders::default()).unwrap();
    matrix_element_numeric(
        &grid,
        &target_wave(picture, bra).unwrap(),
        op,
        &target_wave(picture, ket).unwrap(),
    )
    .unwrap()
}

#[test]
fn j0_is_diagonal_pointwise() {
    let sys = CoordSystem::osc(2);
    let j0 = build_operator(OperatorName::J0, sys, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for ket in JmLabel::grid(2, Half(4)) {
        let psi = osc_psibar(&ket).unwrap();
        for _ in 0..10 {
            let x = point(&mut rng, 1.0);
            let want = ket.m.to_f64() * psi.value(&x);
            assert!((j0.apply(&psi, &x).unwrap() - want).norm() < 1e-10, "{ket}");
        }
    }
}

#[test]
fn display_matches_cartesian_route() {
    let kets: Vec<_> = JmLabel::grid(1, Half(3)).into_iter().step_by(5).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for picture in [
        Picture::Osc,
        Picture::Sw { omega: 1.0 },
        Picture::Sw { omega: 2.0 },
    ] {
        let omega = match picture {
            Picture::Sw { omega } => omega,
            Picture::Osc => 1.0,
        };
        for c in Component::all() {
            if c.displayed(picture.is_osc()).is_none() {
                continue;
            }
            let d = component_operator(c, picture, Route::Display).unwrap();
            let k = component_operator(c, picture, Route::Cartesian).unwrap();
            for ket in &kets {
                let psi = target_wave(picture, ket).unwrap();
                for _ in 0..3 {
                    let x = point(&mut rng, omega);
                    let (a, b) = (d.apply(&psi, &x).unwrap(), k.apply(&psi, &x).unwrap());
                    assert!(
                        (a - b).norm() < 1e-9 * (1.0 + b.norm()),
                        "{} {c} {ket}: {a} vs {b}",
                        picture.name()
                    );
                }
            }
        }
    }
}

#[test]
fn partial_x_matches_differences() {
    let sys = CoordSystem::osc(2);
    let step = 1e-5;
    let psi = osc_psibar(&jm(1, 3, 1, -1)).unwrap();
    let h = [1.1, 0.7, 0.9, 2.3];
    let x0 = cartesian(&h);
    let f = |x: &[f64]| psi.value(&hyper_from_cartesian(x));
    for mu in 1..=4 {
        let op = partial_x(sys, mu).unwrap();
        let (mut p, mut m) = (x0, x0);
        p[mu - 1] += step;
        m[mu - 1] -= step;
        let fd = (f(&p) - f(&m)) / (2.0 * step);
        let got = op.apply(&psi, &h).unwrap();
        assert!((got - fd).norm() < 1e-7, "μ={mu}: {got} vs {fd}");
        let x = position(sys, mu).unwrap();
        assert!((x.apply(&psi, &h).unwrap() - x0[mu - 1] * psi.value(&h)).norm() < 1e-13);
    }
}

#[test]
fn canonical_commutators() {
    let sys = CoordSystem::osc(2);
    let psi = osc_psibar(&jm(1, 2, 2, 0)).unwrap();
    let h = [0.9, 0.5, 1.3, 4.0];
    for mu in 1..=4 {
        for nu in 1..=4 {
            let c = partial_x(sys, mu)
                .unwrap()
                .commutator(&position(sys, nu).unwrap())
                .unwrap();
            let want = if mu == nu {
                psi.value(&h)
            } else {
                Complex64::new(0.0, 0.0)
            };
            assert!(
                (c.apply(&psi, &h).unwrap() - want).norm() < 1e-12,
                "μ={mu} ν={nu}"
            );
        }
    }
}

#[test]
fn oscillator_hamiltonian_residual() {
    let sys = CoordSystem::osc(2);
    let h = build_operator(OperatorName::HOsc, sys, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for ket in JmLabel::grid(2, Half(3)) {
        let psi = osc_psibar(&ket).unwrap();
        let e = f64::from(2 * ket.big_n() + 4);
        for _ in 0..10 {
            let x = point(&mut rng, 1.0);
            let v = psi.value(&x);
            assert!(
                (h.apply(&psi, &x).unwrap() - e * v).norm() < 1e-9 * v.norm().max(1.0),
                "{ket}"
            );
        }
    }
}

#[test]
fn ddag_scalar_identity_in_sw_picture() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for omega in [1.0, 2.0] {
        let sys = CoordSystem::sw(2, omega);
        let dd = build_operator(OperatorName::DdagScalar, sys, None).unwrap();
        let h = build_operator(OperatorName::HSw, sys, None).unwrap();
        // (1/2ω)(-H - 2ω r∂r + 2ω²r² - 2ω)
        let r_dr = DiffOperator::term(sys, 1.0, &[(0, [1, 0])], &[(0, 1)]);
        let r2 = DiffOperator::mono(sys, 1.0, &[(0, [2, 0])]);
        let grid = SwLabel::grid(2, 2, Half(5));
        for _ in 0..5 {
            let s = grid[rng.gen_range(0..grid.len())];
            let psi = sw_psibar(&s, omega).unwrap();
            let x = point(&mut rng, omega);
            let v = psi.value(&x);
            let rhs = (-h.apply(&psi, &x).unwrap() - 2.0 * omega * r_dr.apply(&psi, &x).unwrap()
                + 2.0 * omega * omega * r2.apply(&psi, &x).unwrap()
                - 2.0 * omega * v)
                / (2.0 * omega);
            let lhs = dd.apply(&psi, &x).unwrap();
            assert!(
                (lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()),
                "{s} ω={omega}: {lhs} vs {rhs}"
            );
        }
    }
}

#[test]
fn su2_commutators_both_pictures() {
    use Component::*;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for picture in [Picture::Osc, Picture::Sw { omega: 2.0 }] {
        let omega = if picture.is_osc() { 1.0 } else { 2.0 };
        let op = |c| component_operator(c, picture, Route::Display).unwrap();
        let jj = op(Jp).commutator(&op(Jm)).unwrap().sub(&op(J0).scale(2.0));
        let kk = op(Kp).commutator(&op(Km)).unwrap().sub(&op(K0).scale(2.0));
        let jk = op(Jp).commutator(&op(Km)).unwrap();
        for ket in JmLabel::grid(1, Half(3)) {
            let psi = target_wave(picture, &ket).unwrap();
            for _ in 0..3 {
                let x = point(&mut rng, omega);
                let scale = 1.0 + psi.value(&x).norm();
                for id in [&jj, &kk, &jk] {
                    assert!(
                        id.apply(&psi, &x).unwrap().norm() < 1e-8 * scale,
                        "{} {ket}",
                        picture.name()
                    );
                }
            }
        }
    }
}

#[test]
fn j_plus_matrix_elements() {
    let picture = Picture::Osc;
    let jp = component_operator(Component::Jp, picture, Route::Display).unwrap();
    let v = element(picture, &jm(0, 2, 2, 0), &jp, &jm(0, 2, 0, 0));
    assert!((v - SQRT_2).norm() < 1e-8, "{v}");
    let diag = element(picture, &jm(0, 2, 0, 0), &jp, &jm(0, 2, 0, 0));
    assert!(diag.norm() < 1e-8, "{diag}");
}

#[test]
fn ddag_scalar_ground_state_element() {
    let picture = Picture::Osc;
    let op = component_operator(Component::DdagScalar, picture, Route::Cartesian).unwrap();
    let v = element(picture, &jm(1, 0, 0, 0), &op, &jm(0, 0, 0, 0));
    assert!((v + 2.0 * SQRT_2).norm() < 1e-7, "{v}");
}

#[test]
fn wigner_eckart_matches_quadrature() {
    let h = Half::HALF;
    let rme = reduced_matrix_element(RmeKind::Adag, 0, Half(0), h).unwrap();
    assert_eq!((rme.n_r, rme.j), (0, h));
    let c = cg(Half(0), Half(0), h, h, h, h);
    let want = wigner_eckart(rme.value, c, c);
    let op = component_operator(Component::Adag(h, h), Picture::Osc, Route::Display).unwrap();
    let got = element(Picture::Osc, &jm(0, 1, 1, 1), &op, &jm(0, 0, 0, 0));
    assert!((got - want).norm() < 1e-8, "{got} vs {want}");
    assert!((want - Complex64::new(0.0, 1.0)).norm() < 1e-14);
}

#[test]
fn reduced_matrix_element_examples() {
    for n_r in 0..3 {
        for tj in 0..5 {
            let t = reduced_matrix_element(RmeKind::T, n_r, Half(tj), Half(0)).unwrap();
            assert!((t.value - (f64::from(n_r) + f64::from(tj) / 2.0 + 1.0)).norm() < 1e-14);
        }
    }
    let d = reduced_matrix_element(RmeKind::Ddag, 0, Half(0), Half(0)).unwrap();
    assert!((d.value - SQRT_2).norm() < 1e-14);
    assert!(reduced_matrix_element(RmeKind::Adag, 0, Half(0), Half(-1)).is_none());
}

#[test]
fn sw_ladder_predictions() {
    let ket = SwLabel::new(1, 1, 1.5, 1.5).unwrap();
    let p = predict_sw(Component::Km, &ket).unwrap();
    assert_eq!(p.len(), 1);
    assert_eq!(
        p[0].target,
        SwLabel::new(1, 0, 2.5, 2.5).unwrap().to_jm().unwrap()
    );
    assert!((p[0].coef - 2.0).norm() < 1e-14);
    let (n, a, b) = (2.0, 1.5, 2.5);
    let p = predict_sw(Component::Jp, &SwLabel::new(0, 2, a, b).unwrap()).unwrap();
    assert_eq!(
        p[0].target,
        SwLabel::new(0, 2, a + 1.0, b - 1.0)
            .unwrap()
            .to_jm()
            .unwrap()
    );
    assert!((p[0].coef - ((n + a + 0.5) * (n + b - 0.5)).sqrt()).norm() < 1e-14);
}

#[test]
fn completeness_of_predicted_shells() {
    let ket = jm(0, 1, 1, -1);
    for picture in [Picture::Osc, Picture::Sw { omega: 1.0 }] {
        for c in [
            Component::Jp,
            Component::Adag(Half(1), Half(-1)),
            Component::T(0, 1),
            Component::DdagScalar,
        ] {
            let (sum, norm2) =
                completeness(c, picture, Route::Cartesian, &ket, QuadOrders::default()).unwrap();
            assert!(
                (sum - norm2).abs() < 1e-6 * norm2.max(1.0),
                "{} {c}: {sum} vs {norm2}",
                picture.name()
            );
        }
    }
}

#[test]
fn zero_identity_and_order_limit() {
    let sys = CoordSystem::osc(2);
    let psi = osc_psibar(&jm(1, 2, 0, 2)).unwrap();
    let x = [1.0, 0.6, 0.3, 1.9];
    assert_eq!(
        DiffOperator::zero(sys).apply(&psi, &x).unwrap(),
        Complex64::new(0.0, 0.0)
    );
    assert!((DiffOperator::identity(sys).apply(&psi, &x).unwrap() - psi.value(&x)).norm() < 1e-15);
    let d0 = DiffOperator::partial(sys, 0);
    let d00 = d0.compose(&d0).unwrap();
    assert!(matches!(
        d00.compose(&d0),
        Err(swalg::Error::DerivativeOrder(3))
    ));
}

#[test]
fn catalogue_rejects_unsupported_pairs() {
    let osc = CoordSystem::osc(2);
    for name in [
        OperatorName::T(1, 1),
        OperatorName::Ddag(1, 1),
        OperatorName::DdagScalar,
        OperatorName::HSw,
    ] {
        assert!(
            matches!(
                build_operator(name, osc, None),
                Err(swalg::Error::Catalogue(..))
            ),
            "{name}"
        );
    }
    assert!(matches!(
        build_operator(OperatorName::HOsc, CoordSystem::sw(2, 1.0), None),
        Err(swalg::Error::Catalogue(..))
    ));
    assert!(build_operator(OperatorName::J0, CoordSystem::osc(3), None).is_err());
    for (name, is_osc) in catalogue_d2() {
        let sys = if is_osc { osc } else { CoordSystem::sw(2, 1.0) };
        if name == OperatorName::HK {
            continue;
        }
        assert!(build_operator(name, sys, None).is_ok(), "{name}");
        assert_eq!(name.to_string().parse::<OperatorName>().unwrap(), name);
    }
}

fn small_wave() -> impl Strategy<Value = (JmLabel, Vec<f64>)> {
    let kets = JmLabel::grid(1, Half(3));
    (
        0..kets.len(),
        0.2f64..2.5,
        0.05f64..1.5,
        0.0f64..TAU,
        0.0f64..TAU,
    )
        .prop_map(move |(i, r, t, l1, l2)| (kets[i], vec![r, t, l1, l2]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn formal_adjoint_is_involution((ket, x) in small_wave()) {
        let sys = CoordSystem::osc(2);
        let psi: WaveEval = osc_psibar(&ket).unwrap();
        for name in [OperatorName::Jp, OperatorName::Kp, OperatorName::Adag(Half(1), Half(1))] {
            let op = build_operator(name, sys, None).unwrap();
            let back = op.formal_adjoint().unwrap().formal_adjoint().unwrap();
            let (a, b) = (op.apply(&psi, &x).unwrap(), back.apply(&psi, &x).unwrap());
            prop_assert!((a - b).norm() < 1e-10 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn operators_are_linear((ket, x) in small_wave(), c in -3.0f64..3.0) {
        let sys = CoordSystem::osc(2);
        let psi = osc_psibar(&ket).unwrap();
        let a = build_operator(OperatorName::Jm, sys, None).unwrap();
        let b = build_operator(OperatorName::K0, sys, None).unwrap();
        let lhs = a.add(&b.scale(c)).apply(&psi, &x).unwrap();
        let rhs = a.apply(&psi, &x).unwrap() + c * b.apply(&psi, &x).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-11 * (1.0 + rhs.norm()));
    }
}
