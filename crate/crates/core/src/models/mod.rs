//! Model functionals built from simple-type Dirac operators.

pub mod dhym;
pub mod geodesic;
pub mod higgs;
pub mod sigma;
pub mod study;
pub mod target;
pub mod ym;

use crate::linalg::CMat;
use crate::module::CliffordTwist;

/// `Σ_a (χ_a ⊗ Id_Cl) γ_Cl(e^a)` on `E' = E ⊗ Cl` for frame components `χ_a`
/// on `E`.
pub fn clifford_extend(twist: &CliffordTwist, chi: &[CMat]) -> CMat {
    let r = twist.module.rank();
    let nb = twist.module.signature().blade_count();
    let idc = CMat::identity(nb);
    let mut out = CMat::zeros(r, r);
    for (a, c) in chi.iter().enumerate() {
        out += &c.kron(&idc).matmul(&twist.cl_left[a]);
    }
    out
}
