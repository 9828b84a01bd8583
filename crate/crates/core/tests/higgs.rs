use std::f64::consts::PI;
use std::sync::Arc;

use dirac_forge_core::dirac::SectionField;
use dirac_forge_core::geometry::{presets, Geometry, StencilOrder};
use dirac_forge_core::models::higgs::{ehc_action, gauge_higgs_report, HiggsBundle};
use dirac_forge_core::{CMat, Error, Sign, C64};

fn torus(nodes: usize) -> Arc<Geometry> {
    Arc::new(Geometry::new(presets::flat_torus(2, 0, nodes, 2.0 * PI).unwrap(), StencilOrder::Four).unwrap())
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn diag_i(vals: &[f64]) -> CMat {
    CMat::from_diagonal(&vals.iter().map(|v| c(0.0, *v)).collect::<Vec<_>>())
}

#[test]
fn zero_and_constant_sections() {
    let g = torus(16);
    for phi0 in [vec![c(0.0, 0.0)], vec![c(0.3, -1.2)]] {
        let b = HiggsBundle::trivial(&g, 1, |_| phi0.clone()).unwrap();
        let id = b.identity(&g).unwrap();
        assert!(id.pointwise < 1e-10 && id.trace < 1e-10);
        assert!(id.d_phi.iter().all(|x| (x - 2.0).abs() < 1e-10));
        assert!(id.nabla_phi.iter().all(|x| x.abs() < 1e-12));
    }
}

#[test]
fn covariantly_constant_phase() {
    // φ = e^{−icx}φ₀ with A = ic dx.
    let g = torus(96);
    for cc in [1.0, 2.0] {
        let b = HiggsBundle::from_fn(
            &g,
            CMat::identity(2),
            |_| vec![diag_i(&[cc, cc]), CMat::zeros(2, 2)],
            |x| {
                let e = C64::from_polar(1.0, -cc * x[0]);
                vec![e * c(0.5, 0.0), e * c(0.0, 2.0)]
            },
        )
        .unwrap();
        let id = b.identity(&g).unwrap();
        let worst = id.nabla_phi.iter().copied().fold(0.0, f64::max);
        assert!(worst < 1e-8, "{cc}: {worst:e}");
        assert!(id.pointwise < 1e-10 && id.trace < 1e-8);
        // The raw derivative is large; the horizontal part carries it.
        assert!(id.d_phi.iter().all(|x| (x - 2.0).abs() < 1e-8));
    }
}

#[test]
fn identity_with_nontrivial_metric_and_potential() {
    let g = Arc::new(Geometry::new(presets::sphere_cap(1.3, 0.4, 24, 24).unwrap(), StencilOrder::Four).unwrap());
    let h = CMat::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => c(2.0, 0.0),
        (1, 1) => c(1.5, 0.0),
        (0, 1) => c(0.3, 0.4),
        _ => c(0.3, -0.4),
    });
    let b = HiggsBundle::from_fn(
        &g,
        h,
        |x| {
            let a0 = CMat::from_fn(2, 2, |i, j| match (i, j) {
                (0, 0) => c(0.0, x[1].sin()),
                (0, 1) => c(0.2, 0.1),
                (1, 0) => c(-0.2, 0.1),
                _ => c(0.0, -0.5),
            });
            vec![a0, diag_i(&[x[0].cos(), 0.3])]
        },
        |x| vec![c(x[0].sin(), x[1].cos()), c(0.4, x[0] * (2.0 * x[1]).sin())],
    )
    .unwrap();
    let id = b.identity(&g).unwrap();
    assert!(id.pointwise < 1e-10, "{}", id.pointwise);
    assert!(id.trace < 1e-10, "{}", id.trace);
    assert!(id.nabla_phi.iter().any(|x| x.abs() > 1e-2));
}

#[test]
fn higgs_term_scales_quadratically() {
    let g = torus(20);
    let b = HiggsBundle::trivial(&g, 1, |x| vec![c(x[0].sin(), (2.0 * x[1]).cos())]).unwrap();
    let base = gauge_higgs_report(&g, Sign::Plus, &b, None, None).unwrap().higgs;
    assert!(base > 1.0);
    for s in [0.5, 2.0, 3.0] {
        let r = gauge_higgs_report(&g, Sign::Plus, &b.scaled_section(s), None, None).unwrap().higgs;
        assert!((r - s * s * base).abs() < 1e-10 * r.abs());
    }
}

#[test]
fn rejects_bad_fiber_metric() {
    let g = torus(10);
    let h = CMat::from_diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]);
    let r = HiggsBundle::from_fn(&g, h, |_| vec![CMat::zeros(2, 2); 2], |_| vec![c(0.0, 0.0); 2]);
    assert!(matches!(r, Err(Error::Invalid(_))));
    let nh = CMat::from_fn(2, 2, |i, j| if i == 0 && j == 1 { c(0.0, 1.0) } else if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) });
    assert!(HiggsBundle::from_fn(&g, nh, |_| vec![CMat::zeros(2, 2); 2], |_| vec![c(0.0, 0.0); 2]).is_err());
}

#[test]
fn ehc_oracles() {
    let g = torus(12);
    assert!((ehc_action(&g, 3.0) - 12.0 * PI * PI).abs() < 1e-10);
    assert!(ehc_action(&g, 0.0).abs() < 1e-12);
    let theta0 = 0.2;
    let s = Geometry::new(presets::sphere_cap(1.0, theta0, 257, 16).unwrap(), StencilOrder::Four).unwrap();
    let a = ehc_action(&s, 0.0);
    let expect = 2.0 * presets::zone_area(1.0, theta0);
    assert!((a - expect).abs() < 1e-3, "{a} vs {expect}");
}

#[test]
fn gauge_higgs_terms() {
    // All fields zero: only the Λ term survives.
    let g = torus(12);
    let b = HiggsBundle::trivial(&g, 1, |_| vec![c(0.0, 0.0)]).unwrap();
    let psi = SectionField::zero(2, g.len());
    let r = gauge_higgs_report(&g, Sign::Minus, &b, Some(&psi), Some(1.5)).unwrap();
    assert_eq!(r.fermion, c(0.0, 0.0));
    assert!(r.higgs.abs() < 1e-14 && r.ym.abs() < 1e-14);
    assert!((r.gravity - 1.5 * 4.0 * PI * PI).abs() < 1e-10);
    assert!((r.total.re - r.gravity).abs() < 1e-12);

    // W = ℂ²: constant flux f on the first component, a covariantly constant
    // section on the second.
    let p = Arc::new(Geometry::new(presets::flat_patch(2, 0, 33, 0.0, 1.0).unwrap(), StencilOrder::Four).unwrap());
    let (f, cc) = (0.8, 1.7);
    let b = HiggsBundle::from_fn(
        &p,
        CMat::identity(2),
        |x| vec![diag_i(&[0.0, cc]), diag_i(&[f * x[0], 0.0])],
        |x| vec![c(0.0, 0.0), C64::from_polar(0.9, -cc * x[0])],
    )
    .unwrap();
    let r = gauge_higgs_report(&p, Sign::Plus, &b, None, None).unwrap();
    assert_eq!(r.lambda, 2.0);
    assert!(r.higgs.abs() < 1e-8, "{}", r.higgs);
    assert!((r.ym - 2.0 * f * f).abs() < 1e-9, "{}", r.ym);
    assert!((r.gravity - 2.0).abs() < 1e-10);
    assert!((r.total.re - r.ym - r.gravity).abs() < 1e-8);

    // A plane wave on S ⊗ W gives a nonzero fermion term.
    let psi = SectionField::from_fn(4, p.len(), |q| {
        let x = p.grid().coords(q);
        let e = C64::from_polar(1.0, 2.0 * PI * x[1]);
        vec![e, e * c(0.0, 1.0), c(0.0, 0.0), e * c(0.5, 0.0)]
    })
    .unwrap();
    let r = gauge_higgs_report(&p, Sign::Plus, &b, Some(&psi), None).unwrap();
    assert!(r.fermion.norm() > 1e-3);
    assert!((r.total - (r.fermion + r.higgs + r.ym + r.gravity)).norm() < 1e-14);
}
