//! Explicit small representations.

use alloc::format;
use alloc::vec::Vec;

use super::CliffordModule;
use crate::clifford::{canonical_action_matrix, grade, Multivector, Sign, Signature};
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::{re, C64, I};

pub const BUILTIN_NAMES: &[&str] = &["study", "pauli", "spinor", "gamma4", "clifford-regular"];

fn sx() -> CMat {
    CMat::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

fn sy() -> CMat {
    CMat::from_vec(2, 2, alloc::vec![re(0.0), -I, I, re(0.0)]).unwrap()
}

fn sz() -> CMat {
    CMat::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
}

/// Study numbers, `Cl(1,0)` acting on `ℝ²` by `γ(dt) = diag(1, -1)`
/// (times `i` when `ε = -1`), graded by `σ_x`.
pub fn study(eps: Sign) -> Result<CliffordModule> {
    let sig = Signature::new(1, 0, eps)?;
    let g = match eps {
        Sign::Plus => sz(),
        Sign::Minus => sz().scale(I),
    };
    CliffordModule::new("study", sig, alloc::vec![g], sx(), CMat::identity(2))
}

/// Spinor module of rank `2^⌈n/2⌉` built from Jordan–Wigner strings of Pauli
/// matrices. Generators with `ε η_aa = -1` are multiplied by `i`. For `n = 2`
/// these are the Pauli modules, for `n = 4` the usual 4×4 gamma matrices.
pub fn spinor(sig: Signature) -> Result<CliffordModule> {
    let n = sig.n();
    let m = n.div_ceil(2);
    let mut gammas = Vec::with_capacity(n);
    for a in 0..n {
        let site = a / 2;
        let local = if a % 2 == 0 { sx() } else { sy() };
        let mut g = CMat::identity(1);
        for s in 0..m {
            let f = match s.cmp(&site) {
                core::cmp::Ordering::Less => sz(),
                core::cmp::Ordering::Equal => local.clone(),
                core::cmp::Ordering::Greater => CMat::identity(2),
            };
            g = g.kron(&f);
        }
        if sig.eps_value() * sig.eta(a) < 0.0 {
            g = g.scale(I);
        }
        gammas.push(g);
    }
    let mut tau = CMat::identity(1);
    for _ in 0..m {
        tau = tau.kron(&sz());
    }
    let rank = 1 << m;
    let name = match n {
        2 => "pauli",
        4 => "gamma4",
        _ => "spinor",
    };
    CliffordModule::new(name, sig, gammas, tau, CMat::identity(rank))
}

/// `Cl` acting on itself by left multiplication, identified with `ΛT*M`
/// through the symbol map. Graded by degree parity, with the extended metric
/// as hermitian form and the Levi-Civita action on forms as rotation.
pub fn clifford_regular(sig: Signature) -> Result<CliffordModule> {
    let n = sig.n();
    let nb = sig.blade_count();
    let gammas: Vec<CMat> = (0..n).map(|k| canonical_action_matrix(&sig, k)).collect();
    let tau = CMat::from_diagonal(
        &(0..nb)
            .map(|m| re(if grade(m) % 2 == 0 { 1.0 } else { -1.0 }))
            .collect::<Vec<_>>(),
    );
    let h = CMat::from_diagonal(&(0..nb).map(|m| re(sig.eta_product(m))).collect::<Vec<_>>());
    let rotation = cl_rotation(&sig);
    CliffordModule::with_rotation("clifford-regular", sig, gammas, tau, h, rotation)
}

/// `L(x) - R(x)` with `x = (ε/2) e^a e^b`: the derivation of `ΛT*M` induced
/// by a unit rotation in the `(a, b)` plane.
pub(crate) fn cl_rotation(sig: &Signature) -> Vec<CMat> {
    let n = sig.n();
    super::pairs(n)
        .map(|(a, b)| {
            let x = (&Multivector::generator(*sig, a) * &Multivector::generator(*sig, b))
                .scale(C64::new(sig.eps_value() / 2.0, 0.0));
            &x.left_matrix() - &x.right_matrix()
        })
        .collect()
}

/// Look up a named built-in for the given signature.
pub fn builtin(name: &str, sig: Signature) -> Result<CliffordModule> {
    match name {
        "study" => {
            if sig.p() != 1 || sig.q() != 0 {
                return Err(Error::InvalidModule(format!("study needs Cl(1,0), got {sig}")));
            }
            study(sig.eps())
        }
        "pauli" => {
            if sig.n() != 2 {
                return Err(Error::InvalidModule(format!("pauli needs n = 2, got {sig}")));
            }
            spinor(sig)
        }
        "gamma4" => {
            if sig.n() != 4 {
                return Err(Error::InvalidModule(format!("gamma4 needs n = 4, got {sig}")));
            }
            spinor(sig)
        }
        "spinor" => spinor(sig),
        "clifford-regular" => clifford_regular(sig),
        other => Err(Error::InvalidModule(format!(
            "unknown module '{other}' (known: {})",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}
