//! Tensor products of modules with auxiliary fibers and the Clifford
//! bi-module extension `E ⊗ Cl`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::builtin::cl_rotation;
use super::CliffordModule;
use crate::clifford::{canonical_action_matrix, grade, Multivector, Signature};
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::re;

/// Auxiliary fiber twisted into a module: a graded hermitian vector space,
/// optionally carrying its own rotation generators (for fibers that are
/// themselves built from the base coframe, like `ΛT*M`).
#[derive(Clone, Debug)]
pub struct Fiber {
    pub name: String,
    pub tau: CMat,
    pub h: CMat,
    pub rotation: Option<Vec<CMat>>,
}

impl Fiber {
    /// Trivially graded fiber `ℂ^dim` with the standard form.
    pub fn trivial(dim: usize) -> Self {
        Self {
            name: format!("C{dim}"),
            tau: CMat::identity(dim),
            h: CMat::identity(dim),
            rotation: None,
        }
    }

    pub fn graded(name: impl Into<String>, tau: CMat, h: CMat) -> Self {
        Self {
            name: name.into(),
            tau,
            h,
            rotation: None,
        }
    }

    /// Fiber of a module over some other algebra (its grading and form, no
    /// base rotation).
    pub fn from_module(m: &CliffordModule) -> Self {
        Self::graded(m.name(), m.tau().clone(), m.h().clone())
    }

    /// `ΛT*M` over the base, with grading, extended metric and the
    /// Levi-Civita action as rotation.
    pub fn clifford_bundle(sig: Signature) -> Self {
        let nb = sig.blade_count();
        let tau = CMat::from_diagonal(
            &(0..nb)
                .map(|m| re(if grade(m) % 2 == 0 { 1.0 } else { -1.0 }))
                .collect::<Vec<_>>(),
        );
        let h = CMat::from_diagonal(&(0..nb).map(|m| re(sig.eta_product(m))).collect::<Vec<_>>());
        Self {
            name: "cl".into(),
            tau,
            h,
            rotation: Some(cl_rotation(&sig)),
        }
    }

    pub fn dim(&self) -> usize {
        self.tau.rows()
    }

    /// `F ⊗ G` with product grading and form; rotations act as derivations.
    pub fn tensor(&self, other: &Fiber) -> Result<Fiber> {
        let ia = CMat::identity(self.dim());
        let ib = CMat::identity(other.dim());
        let rotation = match (&self.rotation, &other.rotation) {
            (None, None) => None,
            (Some(r), None) => Some(r.iter().map(|m| m.kron(&ib)).collect()),
            (None, Some(r)) => Some(r.iter().map(|m| ia.kron(m)).collect()),
            (Some(r), Some(s)) => {
                if r.len() != s.len() {
                    return Err(Error::InvalidModule(format!(
                        "fibers {} and {} carry {} and {} rotation generators",
                        self.name,
                        other.name,
                        r.len(),
                        s.len()
                    )));
                }
                Some(r.iter().zip(s).map(|(x, y)| &x.kron(&ib) + &ia.kron(y)).collect())
            }
        };
        Ok(Fiber {
            name: format!("{}(x){}", self.name, other.name),
            tau: self.tau.kron(&other.tau),
            h: self.h.kron(&other.h),
            rotation,
        })
    }
}

impl CliffordModule {
    /// `E₁ ⊗ F` with `γ = γ₁⊗Id`, `τ = τ₁⊗τ_F`, `h = h₁⊗h_F`.
    pub fn twisted(&self, fiber: &Fiber) -> Result<CliffordModule> {
        let d = fiber.dim();
        if fiber.h.rows() != d || fiber.h.cols() != d || !fiber.tau.is_square() {
            return Err(Error::InvalidModule(format!(
                "fiber {}: tau {}x{}, h {}x{}",
                fiber.name,
                fiber.tau.rows(),
                fiber.tau.cols(),
                fiber.h.rows(),
                fiber.h.cols()
            )));
        }
        let id_f = CMat::identity(d);
        let id_e = CMat::identity(self.rank());
        let gammas = self.gammas().iter().map(|g| g.kron(&id_f)).collect();
        let mut rotation: Vec<CMat> = self.rotation_generators().iter().map(|g| g.kron(&id_f)).collect();
        if let Some(fr) = &fiber.rotation {
            if fr.len() != rotation.len() {
                return Err(Error::InvalidModule(format!(
                    "fiber {} carries {} rotation generators, module has {}",
                    fiber.name,
                    fr.len(),
                    rotation.len()
                )));
            }
            for (r, f) in rotation.iter_mut().zip(fr) {
                *r += &id_e.kron(f);
            }
        }
        CliffordModule::with_rotation(
            format!("{}(x){}", self.name(), fiber.name),
            self.signature(),
            gammas,
            self.tau().kron(&fiber.tau),
            self.h().kron(&fiber.h),
            rotation,
        )
    }

    /// Clifford bi-module `E' = E ⊗ Cl`.
    pub fn clifford_twist(&self) -> Result<CliffordTwist> {
        let sig = self.signature();
        let nb = sig.blade_count();
        let id_e = CMat::identity(self.rank());
        let id_cl = CMat::identity(nb);
        let gammas = self.gammas().iter().map(|g| g.kron(&id_cl)).collect();
        let rotation = self
            .rotation_generators()
            .iter()
            .zip(cl_rotation(&sig))
            .map(|(g, c)| &g.kron(&id_cl) + &id_e.kron(&c))
            .collect();
        let h_cl = CMat::from_diagonal(&(0..nb).map(|m| re(sig.eta_product(m))).collect::<Vec<_>>());
        let module = CliffordModule::with_rotation(
            format!("{}(x)Cl", self.name()),
            sig,
            gammas,
            self.tau().kron(&id_cl),
            self.h().kron(&h_cl),
            rotation,
        )?;
        let right = (0..sig.n())
            .map(|a| id_e.kron(&Multivector::generator(sig, a).right_matrix()))
            .collect();
        let cl_left = (0..sig.n())
            .map(|a| id_e.kron(&canonical_action_matrix(&sig, a)))
            .collect();
        let mut unit = CMat::zeros(nb, 1);
        unit[(0, 0)] = re(1.0);
        let embedding = id_e.kron(&unit);
        Ok(CliffordTwist {
            module,
            right,
            cl_left,
            embedding,
        })
    }
}

/// `E ⊗ Cl` with its left module structure, the commuting right action and
/// the embedding `z ↦ z ⊗ 1`.
#[derive(Clone, Debug)]
pub struct CliffordTwist {
    pub module: CliffordModule,
    /// `Id ⊗ R(e^a)`.
    pub right: Vec<CMat>,
    /// `Id ⊗ γ_Cl(e^a)`, the canonical action on the Cl factor.
    pub cl_left: Vec<CMat>,
    /// `N·2ⁿ × N` matrix of `ι`.
    pub embedding: CMat,
}

impl CliffordTwist {
    /// Worst commutator between a left generator and a right generator.
    pub fn bimodule_violation(&self) -> f64 {
        let mut v: f64 = 0.0;
        for g in self.module.gammas() {
            for r in &self.right {
                v = v.max(g.commutator(r).max_abs());
            }
        }
        v
    }

    /// Worst violation of `γ'(α)ι = ιγ(α)` over generators.
    pub fn embedding_violation(&self, base: &CliffordModule) -> f64 {
        self.module
            .gammas()
            .iter()
            .zip(base.gammas())
            .map(|(gp, g)| {
                gp.matmul(&self.embedding)
                    .max_abs_diff(&self.embedding.matmul(g))
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Sign;
    use crate::module::{spinor, study};

    #[test]
    fn twist_by_trivial_line_is_the_module() {
        let m = study(Sign::Plus).unwrap();
        let t = m.twisted(&Fiber::trivial(1)).unwrap();
        assert_eq!(t.gammas(), m.gammas());
        assert_eq!(t.tau(), m.tau());
    }

    #[test]
    fn study_times_graded_plane_verifies() {
        let m = study(Sign::Minus).unwrap();
        let f = Fiber::graded(
            "graded",
            CMat::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]),
            CMat::identity(2),
        );
        let t = m.twisted(&f).unwrap();
        assert_eq!(t.rank(), 4);
        assert!(t.verify().pass());
    }

    #[test]
    fn clifford_twist_is_bimodule() {
        for sig in Signature::all_up_to(3) {
            let m = spinor(sig).unwrap();
            let tw = m.clifford_twist().unwrap();
            assert!(tw.module.verify().pass(), "{sig}");
            assert_eq!(tw.bimodule_violation(), 0.0);
            assert!(tw.embedding_violation(&m) == 0.0);
            // ⟨ι z1, ι z2⟩' = ⟨z1, z2⟩
            let z1: Vec<_> = (0..m.rank()).map(|i| crate::C64::new(i as f64, 1.0)).collect();
            let z2: Vec<_> = (0..m.rank()).map(|i| crate::C64::new(1.0, -(i as f64))).collect();
            let e1 = tw.embedding.mul_vec(&z1);
            let e2 = tw.embedding.mul_vec(&z2);
            assert!((tw.module.inner(&e1, &e2) - m.inner(&z1, &z2)).norm() < 1e-14);
        }
    }
}
