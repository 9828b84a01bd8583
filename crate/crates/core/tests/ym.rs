use std::f64::consts::PI;
use std::sync::Arc;

use dirac_forge_core::dirac::SectionField;
use dirac_forge_core::geometry::{presets, Geometry, StencilOrder};
use dirac_forge_core::models::ym::{GaugeCurvature, YangMillsModel};
use dirac_forge_core::module::{clifford_regular, spinor};
use dirac_forge_core::{CMat, Error, Sign, Signature, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn torus(nodes: usize) -> Arc<Geometry> {
    Arc::new(Geometry::new(presets::flat_torus(2, 0, nodes, 2.0 * PI).unwrap(), StencilOrder::Four).unwrap())
}

fn model(e1: Sign, e2: Sign, w: usize) -> YangMillsModel {
    YangMillsModel::new(Signature::new(2, 0, e1).unwrap(), w, spinor(Signature::new(2, 0, e2).unwrap()).unwrap()).unwrap()
}

fn anti_hermitian(rng: &mut ChaCha8Rng, r: usize) -> CMat {
    let m = CMat::from_fn(r, r, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&m - &m.adjoint()).scale_real(0.5)
}

#[test]
fn u1_flux_norm_and_action() {
    let g = torus(16);
    for f in [0.1, 1.0, 3.0] {
        let flux = GaugeCurvature::u1_flux(g.len(), 2, f).unwrap();
        let norm = flux.norm_density(g.eta());
        assert!(norm.iter().all(|x| (x - 2.0 * f * f).abs() < 1e-12));
        for e1 in [Sign::Plus, Sign::Minus] {
            for e2 in [Sign::Plus, Sign::Minus] {
                let m = model(e1, e2, 1);
                let field = m.field(&flux).unwrap();
                assert!(field.chi[0].iter().all(|c| c.max_abs() > 0.0));
                let a = m.action(&g, &flux, None, None).unwrap();
                assert!(a.constant.spread < 1e-10);
                let expected = e1.value() * e2.value() * a.rank_twist as f64;
                assert!((a.constant.ratio - expected).abs() < 1e-10, "{} vs {expected}", a.constant.ratio);
                let oracle = 4.0 * PI * PI * a.constant.ratio * 2.0 * f * f;
                assert!((a.ym_term - oracle).abs() < 1e-9 * oracle.abs());
                assert!((a.universal - a.closed_form).abs() < 1e-6 * a.universal.abs());
            }
        }
    }
}

#[test]
fn zero_and_scaled_curvature() {
    let g = torus(12);
    let m = model(Sign::Plus, Sign::Plus, 1);
    let zero = GaugeCurvature::u1_flux(g.len(), 2, 0.0).unwrap();
    let a = m.action(&g, &zero, None, None).unwrap();
    assert!(a.universal.abs() < 1e-9 && a.closed_form.abs() < 1e-12, "{} {}", a.universal, a.closed_form);
    assert!(m.field(&zero).unwrap().phi_d.iter().all(|x| x.max_abs() == 0.0));
    let f = GaugeCurvature::u1_flux(g.len(), 2, 0.7).unwrap();
    let field = m.field(&f).unwrap();
    let field3 = m.field(&f.scaled(3.0)).unwrap();
    let r = m.action_density(&field3.phi_d[0]) / m.action_density(&field.phi_d[0]);
    assert!((r - 9.0).abs() < 1e-12);
}

#[test]
fn symmetric_input_is_rejected() {
    let row = vec![CMat::zeros(1, 1), CMat::identity(1), CMat::identity(1), CMat::zeros(1, 1)];
    assert!(matches!(GaugeCurvature::new(2, 1, vec![row]), Err(Error::NotAntisymmetric { .. })));
}

#[test]
fn random_commutant_curvature_is_proportional() {
    let g = torus(9);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let m = model(Sign::Minus, Sign::Plus, 2);
    let f: Vec<Vec<CMat>> = (0..g.len())
        .map(|_| {
            let x = anti_hermitian(&mut rng, 2);
            vec![CMat::zeros(2, 2), x.clone(), x.scale_real(-1.0), CMat::zeros(2, 2)]
        })
        .collect();
    let f = GaugeCurvature::new(2, 2, f).unwrap();
    let field = m.field(&f).unwrap();
    let num: Vec<f64> = field.phi_d.iter().map(|x| m.action_density(x)).collect();
    let r = dirac_forge_core::models::sigma::Proportionality::measure(&num, &f.norm_density(g.eta()), 1e-12);
    assert!(r.spread < 1e-10);
    // ‖F‖² already traces over W.
    assert!((r.ratio + m.twist().module.rank() as f64 / 2.0).abs() < 1e-10);
}

#[test]
fn periodic_potential_action() {
    let g = torus(48);
    let pot: Vec<Vec<CMat>> = (0..g.len())
        .map(|p| {
            let x = g.grid().coord(p, 0);
            vec![CMat::zeros(1, 1), CMat::identity(1).scale(C64::new(0.0, x.sin()))]
        })
        .collect();
    let f = GaugeCurvature::from_potential(&g, &pot).unwrap();
    for p in (0..g.len()).step_by(97) {
        let x = g.grid().coord(p, 0);
        assert!((f.at(p, 0, 1)[(0, 0)] - C64::new(0.0, x.cos())).norm() < 1e-5);
    }
    let m = model(Sign::Plus, Sign::Minus, 1);
    let a = m.action(&g, &f, Some(&pot), None).unwrap();
    assert!((a.universal - a.closed_form).abs() < 1e-6 * a.universal.abs(), "{} {}", a.universal, a.closed_form);
    let flat = m.action(&g, &f, None, None).unwrap();
    assert!((flat.universal - a.universal).abs() < 1e-6 * a.universal.abs());
}

#[test]
fn twisted_spinor_three_term_split() {
    let g = torus(24);
    let sig = Signature::new(2, 0, Sign::Plus).unwrap();
    let m = YangMillsModel::new(sig, 1, clifford_regular(sig).unwrap()).unwrap();
    let pot: Vec<Vec<CMat>> = (0..g.len())
        .map(|p| {
            let x = g.grid().coord(p, 0);
            vec![CMat::zeros(1, 1), CMat::identity(1).scale(C64::new(0.0, 0.5 * x.sin()))]
        })
        .collect();
    let f = GaugeCurvature::from_potential(&g, &pot).unwrap();
    let psi = SectionField::from_fn(2, g.len(), |p| {
        let x = g.grid().coords(p);
        let w = C64::new(0.0, x[0]).exp();
        vec![w, w * 0.5 + 0.2 * x[1].sin()]
    })
    .unwrap();
    let mut unit = vec![C64::new(0.0, 0.0); 4];
    unit[0] = C64::new(1.0, 0.0);
    let a = m.action(&g, &f, Some(&pot), Some((&psi, &unit))).unwrap();
    assert!((a.fermion - a.fermion_base).norm() < 1e-10 * (1.0 + a.fermion_base.norm()));
    assert!(a.fermion_base.norm() > 1e-3);
    let parts = a.fermion_base + a.scal_term + a.ym_term;
    assert!((a.total - parts).norm() < 1e-6 * a.total.norm(), "{} vs {parts}", a.total);
    assert_eq!(a.rank_twist, 32);
}
