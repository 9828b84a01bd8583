use dirac_forge_core::clifford::{canonical_action, flat, sharp};
use dirac_forge_core::module::{clifford_regular, spinor, Fiber};
use dirac_forge_core::{CMat, ExteriorElement, Multivector, RMat, Sign, Signature, C64};
use proptest::prelude::*;

fn signature() -> impl Strategy<Value = Signature> {
    (1usize..=4, any::<bool>())
        .prop_flat_map(|(n, plus)| (0..=n, Just(n), Just(plus)))
        .prop_map(|(p, n, plus)| Signature::new(p, n - p, if plus { Sign::Plus } else { Sign::Minus }).unwrap())
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| C64::new(a, b)), len)
}

fn multivector(sig: Signature) -> impl Strategy<Value = Multivector> {
    coeffs(sig.blade_count()).prop_map(move |c| Multivector::from_coeffs(sig, c).unwrap())
}

fn with_triple() -> impl Strategy<Value = (Multivector, Multivector, Multivector)> {
    signature().prop_flat_map(|s| (multivector(s), multivector(s), multivector(s)))
}

fn with_covectors() -> impl Strategy<Value = (Signature, Vec<f64>, Vec<f64>)> {
    signature().prop_flat_map(|s| {
        let n = s.n();
        (Just(s), prop::collection::vec(-2.0..2.0f64, n), prop::collection::vec(-2.0..2.0f64, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative((a, b, c) in with_triple()) {
        let lhs = &(&a * &b) * &c;
        let rhs = &a * &(&b * &c);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12 * (1.0 + lhs.max_abs()));
    }

    #[test]
    fn product_distributes((a, b, c) in with_triple()) {
        let lhs = &a * &(&b + &c);
        let rhs = &(&a * &b) + &(&a * &c);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12 * (1.0 + lhs.max_abs()));
    }

    #[test]
    fn vectors_square_to_quadratic_form((s, v, _) in with_covectors()) {
        let vc: Vec<C64> = v.iter().map(|x| C64::new(*x, 0.0)).collect();
        let m = Multivector::vector(s, &vc);
        let q: f64 = v.iter().enumerate().map(|(k, x)| s.eta(k) * x * x).sum();
        let expect = Multivector::scalar(s, C64::new(s.eps_value() * q, 0.0));
        prop_assert!((&m * &m).max_abs_diff(&expect) < 1e-12 * (1.0 + q.abs()));
    }

    #[test]
    fn symbol_round_trip((s, c) in signature().prop_flat_map(|s| (Just(s), coeffs(s.blade_count())))) {
        let a = Multivector::from_coeffs(s, c.clone()).unwrap();
        prop_assert!(ExteriorElement::symbol(&a).inverse_symbol().max_abs_diff(&a) < 1e-12);
        let w = ExteriorElement::from_coeffs(s, c).unwrap();
        prop_assert!(ExteriorElement::symbol(&w.inverse_symbol()).max_abs_diff(&w) < 1e-12);
    }

    #[test]
    fn canonical_action_anticommutes((s, a, b) in with_covectors()) {
        let nb = s.blade_count();
        let g: f64 = a.iter().zip(&b).enumerate().map(|(k, (x, y))| s.eta(k) * x * y).sum();
        for m in 0..nb {
            let w = ExteriorElement::blade(s, m);
            let ab = canonical_action(&a, &canonical_action(&b, &w));
            let ba = canonical_action(&b, &canonical_action(&a, &w));
            let sum = ExteriorElement::from_coeffs(
                s,
                ab.coeffs().iter().zip(ba.coeffs()).map(|(x, y)| x + y).collect(),
            ).unwrap();
            let expect = w.scale(C64::new(2.0 * s.eps_value() * g, 0.0));
            prop_assert!(sum.max_abs_diff(&expect) < 1e-12 * (1.0 + g.abs()));
        }
    }

    #[test]
    fn module_gammas_satisfy_relation((s, a, b) in with_covectors()) {
        let g: f64 = a.iter().zip(&b).enumerate().map(|(k, (x, y))| s.eta(k) * x * y).sum();
        for m in [spinor(s).unwrap(), clifford_regular(s).unwrap()] {
            let ga = m.gamma_of(&a);
            let gb = m.gamma_of(&b);
            let lhs = &ga.matmul(&gb) + &gb.matmul(&ga);
            let rhs = CMat::identity(m.rank()).scale_real(2.0 * s.eps_value() * g);
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12 * (1.0 + g.abs()));
        }
    }

    #[test]
    fn quantization_inverts_theta(s in signature(), mask in 0usize..16) {
        let m = spinor(s).unwrap();
        let phi = m.blade_matrix(mask % s.blade_count());
        let back = m.quantize(&m.theta_times(&phi)).unwrap();
        prop_assert!(back.max_abs_diff(&phi) < 1e-12);
    }

    #[test]
    fn clifford_twist_is_bimodule(s in signature()) {
        let tw = spinor(s).unwrap().clifford_twist().unwrap();
        prop_assert!(tw.module.verify().pass());
        prop_assert!(tw.bimodule_violation() < 1e-12);
    }

    #[test]
    fn twisted_modules_verify(s in signature(), d in 1usize..4) {
        let m = spinor(s).unwrap();
        let t = m.twisted(&Fiber::trivial(d)).unwrap();
        prop_assert!(t.verify().pass());
        let cl = m.twisted(&Fiber::clifford_bundle(s)).unwrap();
        prop_assert!(cl.verify().pass());
    }

    #[test]
    fn musical_round_trip(v in prop::collection::vec(-3.0..3.0f64, 3), d in prop::collection::vec(0.2..4.0f64, 3), off in -0.1..0.1f64) {
        let g = RMat::from_fn(3, 3, |i, j| if i == j { d[i] } else if i + j == 1 { off } else { 0.0 });
        let back = sharp(&flat(&v, &g).unwrap(), &g).unwrap();
        for (x, y) in v.iter().zip(back) {
            prop_assert!((x - y).abs() < 1e-12 * (1.0 + x.abs()));
        }
    }
}
