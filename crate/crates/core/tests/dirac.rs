use std::f64::consts::PI;
use std::sync::Arc;

use dirac_forge_core::dirac::{CliffordConnection, DiracOperator, SectionField};
use dirac_forge_core::geometry::{presets, Geometry, StencilOrder};
use dirac_forge_core::module::{clifford_regular, spinor, study};
use dirac_forge_core::{CMat, Error, Sign, Signature, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn torus(n: usize, nodes: usize) -> Arc<Geometry> {
    Arc::new(Geometry::new(presets::flat_torus(n, 0, nodes, 2.0 * PI).unwrap(), StencilOrder::Four).unwrap())
}

fn sphere(nt: usize, np: usize) -> Arc<Geometry> {
    Arc::new(Geometry::new(presets::sphere_cap(1.0, THETA0, nt, np).unwrap(), StencilOrder::Four).unwrap())
}

const THETA0: f64 = 0.4;

fn band(g: &Geometry, p: usize) -> bool {
    let th = g.grid().coord(p, 0);
    th > THETA0 + 0.1 && th < PI - THETA0 - 0.1
}

/// Low-mode trigonometric section with seeded coefficients.
fn smooth_probe(g: &Geometry, rank: usize, seed: u64) -> SectionField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.dim();
    let coeffs: Vec<Vec<(f64, f64, f64)>> = (0..rank)
        .map(|_| (0..n).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
        .collect();
    SectionField::from_fn(rank, g.len(), |p| {
        let x = g.grid().coords(p);
        coeffs
            .iter()
            .map(|c| {
                let mut re = 0.0;
                let mut im = 0.0;
                for (k, (a, b, d)) in c.iter().enumerate() {
                    re += a * x[k].cos() + d;
                    im += b * x[k].sin();
                }
                C64::new(re, im)
            })
            .collect()
    })
    .unwrap()
}

fn spinor_op(g: &Arc<Geometry>, eps: Sign, phi: impl Fn(usize) -> f64) -> DiracOperator {
    let sig = Signature::new(g.dim(), 0, eps).unwrap();
    let m = spinor(sig).unwrap();
    let conn = CliffordConnection::new(g.clone(), m, None).unwrap();
    let r = conn.module().rank();
    let phis = (0..g.len()).map(|p| CMat::identity(r).scale_real(phi(p))).collect();
    DiracOperator::simple_type(conn, phis).unwrap()
}

#[test]
fn flat_potential_vanishes() {
    let g = torus(2, 16);
    for eps in [Sign::Plus, Sign::Minus] {
        let d = spinor_op(&g, eps, |_| 0.0);
        let dec = d.decompose();
        assert!(dec.v.iter().all(|v| v.max_abs() < 1e-10));
        assert!(dec.bochner.iter().flatten().all(|b| b.max_abs() < 1e-10));
        assert!(d.universal_action(&dec).norm() < 1e-9);
        let tf = dec.trace_formula(&d).unwrap();
        assert!(tf.rhs.iter().all(|x| x.norm() < 1e-10));
    }
}

#[test]
fn constant_mass_gives_rank_times_square() {
    let g = torus(2, 16);
    for eps in [Sign::Plus, Sign::Minus] {
        for m in [0.5, 1.0] {
            let d = spinor_op(&g, eps, |_| m);
            assert!(d.anticommutation_violation() < 1e-12);
            let dec = d.decompose();
            for p in 0..d.len() {
                assert!((dec.tr_v[p] - C64::new(2.0 * m * m, 0.0)).norm() < 1e-10);
                assert!(dec.phi_d[p].max_abs_diff(&d.phi()[p]) < 1e-10);
            }
            let want = 4.0 * PI * PI * 2.0 * m * m;
            assert!((d.universal_action(&dec).re - want).abs() < 1e-8);
            let tf = dec.trace_formula(&d).unwrap();
            for p in 0..d.len() {
                assert!((tf.rhs[p] - dec.tr_v[p]).norm() < 1e-8);
            }
            // ω_D,a = (ε/n) γ^a τ m on the flat orthonormal frame.
            let w = dec.dirac_form(&d, 0);
            let module = d.module();
            for (a, wa) in w.iter().enumerate() {
                let want = module.gamma(a).matmul(module.tau()).scale_real(eps.value() * m / 2.0);
                assert!(wa.max_abs_diff(&want) < 1e-12);
            }
        }
    }
}

#[test]
fn varying_mass_integrated_trace_formula() {
    let g = torus(2, 128);
    let gg = g.clone();
    let d = spinor_op(&g, Sign::Plus, move |p| 0.5 + 0.3 * gg.grid().coord(p, 0).sin());
    let dec = d.decompose();
    let tf = dec.trace_formula(&d).unwrap();
    let lhs = d.universal_action(&dec);
    let rhs = g.integrate_c(&tf.rhs);
    // Fourth-order gap; 256² brings it under 1e-6.
    assert!((lhs - rhs).norm() < 5e-6, "{lhs} {rhs}");
    let div = g.integrate_c(&tf.divergence);
    assert!(div.norm() < 1e-10);
}

#[test]
fn sphere_lichnerowicz() {
    let g = sphere(129, 64);
    for eps in [Sign::Plus, Sign::Minus] {
        let d = spinor_op(&g, eps, |_| 0.0);
        let dec = d.decompose();
        let want = -eps.value() * 0.5 * 2.0;
        for p in 0..d.len() {
            if band(&g, p) {
                assert!((dec.tr_v[p].re - want).abs() < 1e-3, "{}", dec.tr_v[p]);
            }
        }
        let tf = dec.trace_formula(&d).unwrap();
        for p in 0..d.len() {
            if band(&g, p) {
                assert!((tf.rhs[p] - dec.tr_v[p]).norm() < 1e-3);
            }
        }
    }
}

#[test]
fn sphere_connection_identities() {
    let g = sphere(257, 256);
    let m = spinor(Signature::new(2, 0, Sign::Plus).unwrap()).unwrap();
    let conn = CliffordConnection::new(g.clone(), m, None).unwrap();
    let rep = conn.verify(|p| band(&g, p));
    assert!(rep.commutes_with_gamma < 1e-5, "{rep:?}");
    assert!(rep.theta_parallel < 1e-5, "{rep:?}");
    assert!(rep.nodes_checked > 0);
}

#[test]
fn corrupted_spin_is_flagged() {
    let g = torus(2, 16);
    let m = spinor(Signature::new(2, 0, Sign::Plus).unwrap()).unwrap();
    let mut conn = CliffordConnection::new(g.clone(), m, None).unwrap();
    assert!(conn.verify(|_| true).commutes_with_gamma < 1e-12);
    let bump = conn.module().gamma(0).matmul(conn.module().gamma(1)).scale_real(0.5);
    conn.perturb(40, 0, &bump);
    let rep = conn.verify(|_| true);
    assert!(rep.commutes_with_gamma > 0.1, "{rep:?}");
}

#[test]
fn non_commutant_gauge_rejected() {
    let g = torus(2, 10);
    let m = spinor(Signature::new(2, 0, Sign::Plus).unwrap()).unwrap();
    let bad = m.gamma(0).clone();
    let mut a = vec![vec![CMat::zeros(2, 2); 2]; g.len()];
    a[5][1] = bad;
    match CliffordConnection::new(g.clone(), m.clone(), Some(a)) {
        Err(Error::NotCommutant { node, direction, .. }) => assert_eq!((node, direction), (5, 1)),
        other => panic!("{other:?}"),
    }
    let ok = vec![vec![CMat::identity(2).scale(C64::new(0.0, 0.3)); 2]; g.len()];
    assert!(CliffordConnection::new(g, m, Some(ok)).is_ok());
}

#[test]
fn study_dirac_is_alpha_dot_minus_beta_dot() {
    let g = Arc::new(Geometry::new(presets::flat_torus(1, 0, 64, 2.0 * PI).unwrap(), StencilOrder::Four).unwrap());
    let m = study(Sign::Plus).unwrap();
    let d = CliffordConnection::new(g.clone(), m, None).unwrap().quantize();
    let psi = SectionField::from_fn(2, g.len(), |p| {
        let t = g.grid().coord(p, 0);
        vec![C64::new(t.sin(), 0.0), C64::new((2.0 * t).cos(), 0.0)]
    })
    .unwrap();
    let out = d.apply(&psi).unwrap();
    for p in 0..g.len() {
        let t = g.grid().coord(p, 0);
        assert!((out.at(p)[0].re - t.cos()).abs() < 1e-5);
        assert!((out.at(p)[1].re - 2.0 * (2.0 * t).sin()).abs() < 1e-4);
    }
}

#[test]
fn symbol_probe_converges() {
    let mut errs = vec![];
    for nodes in [32, 64] {
        let g = torus(2, nodes);
        let d = spinor_op(&g, Sign::Plus, |_| 0.3);
        let f: Vec<f64> = (0..g.len()).map(|p| g.grid().coord(p, 0).sin() * g.grid().coord(p, 1).cos()).collect();
        let psi = smooth_probe(&g, 2, 7);
        errs.push(d.symbol_residual(&f, &psi, |_| true).unwrap());
    }
    assert!(errs[1] < 1e-4, "{errs:?}");
    assert!(errs[0] / errs[1] > 12.0, "{errs:?}");
}

#[test]
fn decomposition_probes_on_sphere() {
    let g = sphere(129, 64);
    let gg = g.clone();
    let d = spinor_op(&g, Sign::Minus, move |p| 0.4 + 0.1 * gg.grid().coord(p, 1).cos());
    let dec = d.decompose();
    let psi = smooth_probe(&g, 2, 11);
    let f: Vec<f64> = (0..g.len()).map(|p| g.grid().coord(p, 0).cos()).collect();
    let rep = dec.probe(&d, &f, &psi, |p| band(&g, p));
    assert!(rep.first_order < 1e-10, "{rep:?}");
    assert!(rep.dirac_connection < 1e-10, "{rep:?}");
    assert!(rep.second_order < 1e-3, "{rep:?}");
    assert!(rep.zero_order_phi < 1e-3, "{rep:?}");
    assert!(rep.zero_order_v < 1e-3, "{rep:?}");
    // Bochner connection of a simple-type operator is the Clifford connection.
    for p in 0..g.len() {
        if band(&g, p) {
            for i in 0..2 {
                assert!(dec.bochner[p][i].max_abs_diff(d.connection().omega(p, i)) < 1e-3);
            }
        }
    }
}

#[test]
fn bochner_laplacian_eigenfunctions() {
    for eps in [Sign::Plus, Sign::Minus] {
        let g = torus(2, 64);
        let d = spinor_op(&g, eps, |_| 0.0);
        let dec = d.decompose();
        let psi = SectionField::from_fn(2, g.len(), |p| {
            let s = g.grid().coord(p, 0).sin();
            vec![C64::new(s, 0.0), C64::new(0.0, 2.0 * s)]
        })
        .unwrap();
        let out = dec.apply_bochner_laplacian(&d, &psi);
        for p in 0..g.len() {
            for k in 0..2 {
                assert!((out.at(p)[k] + psi.at(p)[k] * eps.value()).norm() < 5e-5);
            }
        }

        // On the Clifford bundle the Levi-Civita lift fixes the scalar blade,
        // so f·1 sees the Laplace–Beltrami operator.
        let s = sphere(129, 64);
        let m = clifford_regular(Signature::new(2, 0, eps).unwrap()).unwrap();
        let d = CliffordConnection::new(s.clone(), m, None).unwrap().quantize();
        let dec = d.decompose();
        let psi = SectionField::from_fn(4, s.len(), |p| {
            let mut v = vec![C64::new(0.0, 0.0); 4];
            v[0] = C64::new(s.grid().coord(p, 0).cos(), 0.0);
            v
        })
        .unwrap();
        let out = dec.apply_bochner_laplacian(&d, &psi);
        for p in 0..s.len() {
            if band(&s, p) {
                for k in 0..4 {
                    let want = psi.at(p)[k] * (-2.0 * eps.value());
                    assert!((out.at(p)[k] - want).norm() < 1e-3, "{} {}", out.at(p)[k], want);
                }
            }
        }
    }
}

#[test]
fn fermion_term_of_constant_section_vanishes() {
    let g = torus(2, 16);
    let d = spinor_op(&g, Sign::Plus, |_| 0.0);
    let dec = d.decompose();
    let psi = SectionField::from_fn(2, g.len(), |_| vec![C64::new(1.0, 0.5), C64::new(-0.2, 0.0)]).unwrap();
    let rep = d.total_action(&dec, Some(&psi)).unwrap();
    assert!(rep.fermion.norm() < 1e-12);
    assert_eq!(d.total_action(&dec, None).unwrap().total, rep.universal);
}

#[test]
fn general_zero_order_term_is_recovered() {
    let g = torus(2, 16);
    let m = spinor(Signature::new(2, 0, Sign::Plus).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    // Even (commutes with τ) but not in the commutant.
    let b = CMat::from_fn(2, 2, |i, j| if i == j { C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) } else { C64::new(0.0, 0.0) });
    assert!(b.commutator(m.tau()).max_abs() < 1e-15);
    assert!(!m.commutant_test(&b).0);
    let conn = CliffordConnection::new(g.clone(), m, None).unwrap();
    let d = DiracOperator::with_zero_order(conn, vec![b.clone(); g.len()]).unwrap();
    assert!(!d.is_simple_type());
    let dec = d.decompose();
    // The scalar part of b feeds the first-order part of D² and moves into
    // the Bochner connection; Φ_D keeps b − n·(scalar part).
    let scalar = (b[(0, 0)] + b[(1, 1)]) * 0.5;
    let mut want = b.clone();
    want[(0, 0)] -= scalar * 2.0;
    want[(1, 1)] -= scalar * 2.0;
    for p in 0..g.len() {
        assert!(dec.phi_d[p].max_abs_diff(&want) < 1e-10);
    }
    // The traceless even part is recovered unchanged.
    let traceless = &b - &CMat::identity(2).scale(scalar);
    let d = DiracOperator::with_zero_order(
        CliffordConnection::new(g.clone(), spinor(Signature::new(2, 0, Sign::Plus).unwrap()).unwrap(), None).unwrap(),
        vec![traceless.clone(); g.len()],
    )
    .unwrap();
    let dec = d.decompose();
    assert!(dec.phi_d.iter().all(|m| m.max_abs_diff(&traceless) < 1e-10));
}
