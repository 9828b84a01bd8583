//! Exhaustive algebraic checks for one signature: Clifford relations on the
//! blade basis, symbol-map round trips, the canonical action and the
//! quantization of `Θ`.

use alloc::vec;
use alloc::vec::Vec;

use super::{clifford_regular, spinor, CliffordModule};
use crate::clifford::{canonical_action_matrix, ExteriorElement, Multivector, Signature};
use crate::error::Result;
use crate::linalg::CMat;
use crate::re;

/// One named check and its worst absolute error.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraCheck {
    pub name: &'static str,
    pub max_error: f64,
}

impl AlgebraCheck {
    pub const TOL: f64 = 1e-12;

    pub fn pass(&self) -> bool {
        self.max_error < Self::TOL
    }
}

fn check(name: &'static str, max_error: f64) -> AlgebraCheck {
    AlgebraCheck { name, max_error }
}

/// `δ_γ(ΘΦ) − Φ` over the blade matrices `Φ` of the module.
fn quantize_theta(m: &CliffordModule) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for mask in 0..m.signature().blade_count() {
        let phi = m.blade_matrix(mask);
        let back = m.quantize(&m.theta_times(&phi))?;
        worst = worst.max(back.max_abs_diff(&phi));
    }
    Ok(worst)
}

/// Runs every check for `sig`.
pub fn algebra_suite(sig: Signature) -> Result<Vec<AlgebraCheck>> {
    let n = sig.n();
    let nb = sig.blade_count();
    let gens: Vec<Multivector> = (0..n).map(|k| Multivector::generator(sig, k)).collect();

    let mut square: f64 = 0.0;
    let mut anti: f64 = 0.0;
    for k in 0..n {
        let expect = Multivector::scalar(sig, re(sig.eps_value() * sig.eta(k)));
        square = square.max((&gens[k] * &gens[k]).max_abs_diff(&expect));
        for l in 0..n {
            if k != l {
                anti = anti.max((&(&gens[k] * &gens[l]) + &(&gens[l] * &gens[k])).max_abs());
            }
        }
    }

    let blades: Vec<Multivector> = (0..nb).map(|m| Multivector::blade(sig, m)).collect();
    let mut assoc: f64 = 0.0;
    for a in &blades {
        for b in &blades {
            let ab = a * b;
            for c in &blades {
                assoc = assoc.max((&ab * c).max_abs_diff(&(a * &(b * c))));
            }
        }
    }

    let mut sym_a: f64 = 0.0;
    let mut sym_w: f64 = 0.0;
    for m in 0..nb {
        let a = &blades[m];
        sym_a = sym_a.max(ExteriorElement::symbol(a).inverse_symbol().max_abs_diff(a));
        let w = ExteriorElement::blade(sig, m);
        sym_w = sym_w.max(ExteriorElement::symbol(&w.inverse_symbol()).max_abs_diff(&w));
    }

    let gcl: Vec<CMat> = (0..n).map(|k| canonical_action_matrix(&sig, k)).collect();
    let id = CMat::identity(nb);
    let mut cl_rel: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let lhs = &gcl[a].matmul(&gcl[b]) + &gcl[b].matmul(&gcl[a]);
            let g = if a == b { sig.eta(a) } else { 0.0 };
            cl_rel = cl_rel.max(lhs.max_abs_diff(&id.scale_real(2.0 * sig.eps_value() * g)));
        }
    }

    let s = spinor(sig)?;
    let r = clifford_regular(sig)?;
    let modules = s.verify().max_violation().max(r.verify().max_violation());
    let theta = quantize_theta(&s)?.max(quantize_theta(&r)?);

    Ok(vec![
        check("generator-square", square),
        check("anticommutation", anti),
        check("associativity", assoc),
        check("symbol-round-trip", sym_a),
        check("inverse-symbol-round-trip", sym_w),
        check("canonical-action-relation", cl_rel),
        check("module-relations", modules),
        check("quantize-theta", theta),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Sign;

    #[test]
    fn passes_for_small_signatures() {
        for sig in Signature::all_up_to(3) {
            for c in algebra_suite(sig).unwrap() {
                assert!(c.pass(), "{sig} {}: {:e}", c.name, c.max_error);
            }
        }
        let c = algebra_suite(Signature::new(2, 0, Sign::Minus).unwrap()).unwrap();
        assert_eq!(c.len(), 8);
    }
}
