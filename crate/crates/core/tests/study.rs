use dirac_forge_core::dirac::SectionField;
use dirac_forge_core::models::geodesic::{equal_latitude_endpoints, great_circle};
use dirac_forge_core::models::study::StudyDemo;
use dirac_forge_core::models::target::TargetMetric;
use dirac_forge_core::{Sign, C64};

const NODES: usize = 257;

#[test]
fn flat_target_gives_alpha_dot_minus_beta_dot() {
    let demo = StudyDemo::new(Sign::Plus, TargetMetric::Flat { p: 1, q: 0 }, NODES, |_| vec![0.3]).unwrap();
    // E = ²ℝ ⊗ Λℝ¹: components (α_∅, α_1, β_∅, β_1).
    let g = demo.geometry().clone();
    let psi = SectionField::from_fn(4, g.len(), |p| {
        let t = g.grid().coord(p, 0);
        vec![C64::new(t.sin(), 0.0), C64::new(0.0, 0.0), C64::new(t.cos(), 0.0), C64::new(0.0, 0.0)]
    })
    .unwrap();
    let out = demo.operator().apply(&psi).unwrap();
    for p in 0..g.len() {
        let t = g.grid().coord(p, 0);
        assert!((out.at(p)[0] - C64::new(t.cos(), 0.0)).norm() < 1e-6);
        assert!((out.at(p)[2] - C64::new(t.sin(), 0.0)).norm() < 1e-6);
    }
    let c = SectionField::from_fn(4, g.len(), |_| vec![C64::new(1.0, 0.0); 4]).unwrap();
    let out = demo.operator().apply(&c).unwrap();
    assert!(out.values().iter().flatten().all(|z| z.norm() < 1e-12));
    let r = demo.report(&psi).unwrap();
    assert!(r.energy.abs() < 1e-14 && r.universal.abs() < 1e-9);
}

#[test]
fn sphere_curve_operator_matches_formula_and_energy() {
    let (a, b) = equal_latitude_endpoints(0.3, 1.2);
    let arc = great_circle(&a, &b, 4097).unwrap();
    let path = move |t: f64| arc[(t * 4096.0).round() as usize].clone();
    for eps in [Sign::Plus, Sign::Minus] {
        let demo = StudyDemo::new(eps, TargetMetric::unit_sphere(), NODES, &path).unwrap();
        assert_eq!(demo.rank(), 8);
        let g = demo.geometry().clone();
        let psi = SectionField::from_fn(8, g.len(), |p| {
            let t = g.grid().coord(p, 0);
            (0..8).map(|k| C64::new((t * (k + 1) as f64).sin(), 0.1 * k as f64)).collect()
        })
        .unwrap();
        let r = demo.report(&psi).unwrap();
        assert!(r.dirac_residual < 1e-12, "{}", r.dirac_residual);
        assert!(r.constant.spread < 1e-10);
        assert!((r.normalized - r.energy).abs() < 1e-9 * r.energy);
        assert!((r.energy - 1.44).abs() < 1e-4, "{}", r.energy);
        assert!((r.curve_energy - r.energy).abs() < 1e-4);
        // The pullback connection is visible: Γ ≠ 0 on the sphere.
        assert!(demo.connection_coefficients(NODES / 2).max_abs() > 1e-2);
    }
}
