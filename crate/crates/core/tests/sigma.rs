use std::f64::consts::PI;
use std::sync::Arc;

use dirac_forge_core::dirac::SectionField;
use dirac_forge_core::geometry::{presets, Geometry, StencilOrder};
use dirac_forge_core::models::sigma::{Proportionality, SigmaMap, SigmaModel};
use dirac_forge_core::models::target::TargetMetric;
use dirac_forge_core::module::spinor;
use dirac_forge_core::{Sign, Signature, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn patch(p: usize, q: usize) -> Arc<Geometry> {
    Arc::new(Geometry::new(presets::flat_patch(p, q, 7, -1.0, 1.0).unwrap(), StencilOrder::Four).unwrap())
}

fn model(p1: usize, q1: usize, e1: Sign, p2: usize, q2: usize, e2: Sign) -> SigmaModel {
    SigmaModel::new(
        spinor(Signature::new(p1, q1, e1).unwrap()).unwrap(),
        spinor(Signature::new(p2, q2, e2).unwrap()).unwrap(),
    )
    .unwrap()
}

fn random_linear(g: &Geometry, t: TargetMetric, rng: &mut ChaCha8Rng) -> SigmaMap {
    let n1 = g.dim();
    let n2 = t.dim();
    let a: Vec<Vec<f64>> = (0..n2).map(|_| (0..n1).map(|_| rng.gen_range(-2.0..2.0)).collect()).collect();
    let b: Vec<f64> = (0..n2).map(|_| rng.gen_range(-1.0..1.0)).collect();
    SigmaMap::from_fn(g, t, |x| (0..n2).map(|mu| b[mu] + (0..n1).map(|i| a[mu][i] * x[i]).sum::<f64>()).collect()).unwrap()
}

fn ratios(m: &SigmaModel, g: &Geometry, map: &SigmaMap) -> (Vec<f64>, Vec<f64>) {
    let f = m.field(g, map).unwrap();
    let num = f.phi_d.iter().map(|x| m.action_density(x)).collect();
    (num, map.energy_density(g).unwrap())
}

#[test]
fn energy_density_examples() {
    let g = Arc::new(Geometry::new(presets::flat_torus(2, 0, 16, 2.0 * PI).unwrap(), StencilOrder::Four).unwrap());
    let t = TargetMetric::Flat { p: 2, q: 0 };
    let c = SigmaMap::from_fn(&g, t.clone(), |_| vec![0.3, -1.0]).unwrap();
    assert!(c.energy_density(&g).unwrap().iter().all(|e| e.abs() < 1e-14));
    let g = patch(2, 0);
    let id = SigmaMap::from_fn(&g, t.clone(), |x| x.to_vec()).unwrap();
    assert!(id.energy_density(&g).unwrap().iter().all(|e| (e - 2.0).abs() < 1e-12));
    let lam = 1.7;
    let s = SigmaMap::from_fn(&g, t, |x| vec![lam * x[0], lam * x[1]]).unwrap();
    let e = s.energy_density(&g).unwrap();
    let ec = s.energy_density_coordinate(&g).unwrap();
    for (a, b) in e.iter().zip(&ec) {
        assert!((a - 2.0 * lam * lam).abs() < 1e-12 && (a - b).abs() < 1e-12);
    }
}

#[test]
fn proportionality_over_random_linear_maps() {
    for (p1, q1) in [(1, 0), (2, 0), (1, 1)] {
        for (p2, q2) in [(1, 0), (2, 0), (3, 0), (1, 1)] {
            for e1 in [Sign::Plus, Sign::Minus] {
                for e2 in [Sign::Plus, Sign::Minus] {
                    let g = patch(p1, q1);
                    let m = model(p1, q1, e1, p2, q2, e2);
                    let mut rng = ChaCha8Rng::seed_from_u64(11);
                    let mut num = Vec::new();
                    let mut den = Vec::new();
                    for _ in 0..20 {
                        let map = random_linear(&g, TargetMetric::Flat { p: p2, q: q2 }, &mut rng);
                        let (a, b) = ratios(&m, &g, &map);
                        num.extend(a);
                        den.extend(b);
                    }
                    let r = Proportionality::measure(&num, &den, 1e-12);
                    assert!(r.spread < 1e-10, "spread {} for ({p1},{q1}) ({p2},{q2})", r.spread);
                    let rk = m.twist().module.rank() as f64;
                    let expected = -e1.value() * e2.value() * rk;
                    assert!((r.ratio - expected).abs() < 1e-10, "{} vs {expected}", r.ratio);
                }
            }
        }
    }
}

#[test]
fn hermitian_norm_on_riemannian_targets() {
    let g = patch(2, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for e1 in [Sign::Plus, Sign::Minus] {
        let m = model(2, 0, e1, 3, 0, Sign::Plus);
        let map = random_linear(&g, TargetMetric::Flat { p: 3, q: 0 }, &mut rng);
        let f = m.field(&g, &map).unwrap();
        let num: Vec<f64> = f.chi.iter().map(|c| m.hermitian_norm(c)).collect();
        let r = Proportionality::measure(&num, &map.energy_density(&g).unwrap(), 1e-12);
        let n1n2 = (m.base().rank() * m.target_module().rank()) as f64;
        assert!((r.ratio - e1.value() * n1n2).abs() < 1e-10);
    }
}

#[test]
fn nonlinear_map_into_sphere_is_proportional() {
    let g = Arc::new(Geometry::new(presets::flat_torus(2, 0, 24, 2.0 * PI).unwrap(), StencilOrder::Four).unwrap());
    let m = model(2, 0, Sign::Minus, 2, 0, Sign::Plus);
    let map = SigmaMap::from_fn(&g, TargetMetric::unit_sphere(), |x| vec![PI / 2.0 + 0.4 * x[0].sin(), x[1] + 0.3 * x[0].cos()])
        .unwrap();
    let (a, b) = ratios(&m, &g, &map);
    let r = Proportionality::measure(&a, &b, 1e-12);
    assert!(r.spread < 1e-10);
    assert!((r.ratio - 16.0).abs() < 1e-10);
}

#[test]
fn field_structure() {
    let g = patch(1, 0);
    let m = model(1, 0, Sign::Plus, 1, 0, Sign::Plus);
    let zero = SigmaMap::from_fn(&g, TargetMetric::Flat { p: 1, q: 0 }, |_| vec![0.4]).unwrap();
    let f = m.field(&g, &zero).unwrap();
    assert!(f.phi_d.iter().all(|x| x.max_abs() < 1e-14));
    let c = 0.8;
    let lin = SigmaMap::from_fn(&g, TargetMetric::Flat { p: 1, q: 0 }, |x| vec![c * x[0]]).unwrap();
    let f = m.field(&g, &lin).unwrap();
    // χ_1 = Id ⊗ γ₂(c e¹) squares to ε c² on a Cl(1,0) target.
    let chi = &f.chi[3][0];
    let sq = chi.matmul(chi);
    assert!(sq.max_abs_diff(&dirac_forge_core::CMat::identity(chi.rows()).scale_real(c * c)) < 1e-12);
    // Doubling dφ quadruples the density.
    let twice = SigmaMap::from_fn(&g, TargetMetric::Flat { p: 1, q: 0 }, |x| vec![2.0 * c * x[0]]).unwrap();
    let f2 = m.field(&g, &twice).unwrap();
    let a = m.action_density(&f.phi_d[3]);
    let b = m.action_density(&f2.phi_d[3]);
    assert!((b - 4.0 * a).abs() < 1e-12);
    // φ_D is Clifford-odd on E'.
    let conn_op = m.operator(&g, &f).unwrap();
    assert!(conn_op.anticommutation_violation() < 1e-12);
}

#[test]
fn target_signature_mismatch_is_rejected() {
    let g = patch(1, 0);
    let m = model(1, 0, Sign::Plus, 2, 0, Sign::Plus);
    let map = SigmaMap::from_fn(&g, TargetMetric::Flat { p: 1, q: 0 }, |x| vec![x[0]]).unwrap();
    assert!(m.field(&g, &map).is_err());
}

#[test]
fn action_two_ways() {
    let g = patch(2, 0);
    let m = model(2, 0, Sign::Plus, 2, 0, Sign::Minus);
    let c = SigmaMap::from_fn(&g, TargetMetric::Flat { p: 2, q: 0 }, |_| vec![0.1, 0.2]).unwrap();
    let a = m.action(&g, &c, None).unwrap();
    assert!(a.universal.abs() < 1e-9 && a.closed_form.abs() < 1e-9);
    assert_eq!(a.action_ratio.used, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let map = random_linear(&g, TargetMetric::Flat { p: 2, q: 0 }, &mut rng);
    let a = m.action(&g, &map, None).unwrap();
    assert!((a.universal - a.closed_form).abs() < 1e-6 * a.universal.abs());
    assert_eq!(a.rank_product, 4);
    assert_eq!(a.rank_sum, 4);
}

#[test]
fn fermion_term_restricts_to_base_operator() {
    let g = Arc::new(Geometry::new(presets::flat_torus(2, 0, 24, 2.0 * PI).unwrap(), StencilOrder::Four).unwrap());
    let m = model(2, 0, Sign::Plus, 2, 0, Sign::Plus);
    let map = SigmaMap::from_fn(&g, TargetMetric::unit_sphere(), |x| vec![PI / 2.0 + 0.4 * x[0].sin(), x[1] + 0.3 * x[0].cos()])
        .unwrap();
    let r = m.twisted().rank();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let c: Vec<(f64, f64)> = (0..r).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let psi = SectionField::from_fn(r, g.len(), |p| {
        let x = g.grid().coords(p);
        c.iter().map(|(a, b)| C64::new(a * x[0].cos() + 0.2, b * x[1].sin())).collect()
    })
    .unwrap();
    let a = m.action(&g, &map, Some(&psi)).unwrap();
    assert!((a.fermion_twisted - a.fermion_base).norm() < 1e-10 * (1.0 + a.fermion_base.norm()));
    assert!(a.fermion_base.norm() > 1e-3);
}
