//! Matrix Clifford modules.
//!
//! A module is a set of generator matrices `γ^a = γ(e^a)` for the orthonormal
//! coframe, a grading `τ` and a hermitian form `h`. Modules also carry the
//! rotation generators `G_ab` (`a < b`) through which a spin connection with
//! coefficients `ω_ab` acts as `Σ_{a<b} ω_ab G_ab`.

mod builtin;
mod forms;
mod suite;
mod twist;

pub use builtin::{builtin, clifford_regular, spinor, study, BUILTIN_NAMES};
pub use forms::EndoForm;
pub use suite::{algebra_suite, AlgebraCheck};
pub use twist::{CliffordTwist, Fiber};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::clifford::{ExteriorElement, Multivector, Signature};
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::{re, C64};

/// Behaviour of a matrix under the adjoint induced by `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjointness {
    Hermitian,
    AntiHermitian,
    Neither,
}

/// Index of the pair `(a, b)`, `a < b`, in row-major order over `n`
/// directions.
#[inline]
pub fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

/// All pairs `a < b`.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
}

#[derive(Clone, Debug)]
pub struct CliffordModule {
    name: String,
    sig: Signature,
    gammas: Vec<CMat>,
    tau: CMat,
    h: CMat,
    rotation: Vec<CMat>,
}

/// Result of [`CliffordModule::verify`]. All violations are max-abs entry
/// errors.
#[derive(Clone, Debug)]
pub struct ModuleReport {
    pub clifford_relation: f64,
    /// Worst generator pair `(a, b)` for the Clifford relation.
    pub worst_pair: (usize, usize),
    pub tau_square: f64,
    pub tau_odd: f64,
    pub h_hermitian: f64,
    pub h_det_abs: f64,
    pub gamma_adjointness: Vec<(Adjointness, f64)>,
    pub tau_adjointness: (Adjointness, f64),
    /// `[S(ω), γ^a] + ω^a_c γ^c` for unit rotations.
    pub rotation: f64,
}

impl ModuleReport {
    pub const TOL: f64 = 1e-12;

    pub fn max_violation(&self) -> f64 {
        let adj = self
            .gamma_adjointness
            .iter()
            .map(|x| x.1)
            .chain([self.tau_adjointness.1])
            .fold(0.0, f64::max);
        [
            self.clifford_relation,
            self.tau_square,
            self.tau_odd,
            self.h_hermitian,
            self.rotation,
            adj,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn pass(&self) -> bool {
        self.max_violation() < Self::TOL && self.h_det_abs > Self::TOL
    }
}

fn classify(m: &CMat, h: &CMat) -> (Adjointness, f64) {
    let lhs = m.adjoint().matmul(h);
    let hm = h.matmul(m);
    let herm = lhs.max_abs_diff(&hm);
    let anti = (&lhs + &hm).max_abs();
    if herm <= anti {
        (if herm < ModuleReport::TOL { Adjointness::Hermitian } else { Adjointness::Neither }, herm)
    } else {
        (if anti < ModuleReport::TOL { Adjointness::AntiHermitian } else { Adjointness::Neither }, anti)
    }
}

impl CliffordModule {
    /// Assemble a module from generator matrices. Shapes are checked here;
    /// the algebraic relations are checked by [`CliffordModule::verify`].
    /// Rotation generators default to `(ε/2)γ^aγ^b`.
    pub fn new(
        name: impl Into<String>,
        sig: Signature,
        gammas: Vec<CMat>,
        tau: CMat,
        h: CMat,
    ) -> Result<Self> {
        let eps = sig.eps_value();
        if gammas.len() != sig.n() {
            return Err(Error::InvalidModule(alloc::format!(
                "{}: {} generators for dimension {}",
                name.into(),
                gammas.len(),
                sig.n()
            )));
        }
        let rotation = pairs(sig.n())
            .map(|(a, b)| gammas[a].matmul(&gammas[b]).scale_real(eps / 2.0))
            .collect();
        Self::with_rotation(name, sig, gammas, tau, h, rotation)
    }

    pub fn with_rotation(
        name: impl Into<String>,
        sig: Signature,
        gammas: Vec<CMat>,
        tau: CMat,
        h: CMat,
        rotation: Vec<CMat>,
    ) -> Result<Self> {
        let name = name.into();
        if gammas.len() != sig.n() {
            return Err(Error::InvalidModule(format!(
                "{name}: {} generators for dimension {}",
                gammas.len(),
                sig.n()
            )));
        }
        let n = tau.rows();
        for (what, m) in gammas
            .iter()
            .chain(rotation.iter())
            .map(|m| ("generator", m))
            .chain([("tau", &tau), ("h", &h)])
        {
            if m.rows() != n || m.cols() != n {
                return Err(Error::InvalidModule(format!(
                    "{name}: {what} is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if rotation.len() != sig.n() * (sig.n() - 1) / 2 {
            return Err(Error::InvalidModule(format!(
                "{name}: {} rotation generators",
                rotation.len()
            )));
        }
        Ok(Self {
            name,
            sig,
            gammas,
            tau,
            h,
            rotation,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    #[inline]
    pub fn signature(&self) -> Signature {
        self.sig
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.tau.rows()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.sig.n()
    }

    #[inline]
    pub fn gamma(&self, a: usize) -> &CMat {
        &self.gammas[a]
    }

    pub fn gammas(&self) -> &[CMat] {
        &self.gammas
    }

    pub fn tau(&self) -> &CMat {
        &self.tau
    }

    pub fn h(&self) -> &CMat {
        &self.h
    }

    pub fn rotation_generators(&self) -> &[CMat] {
        &self.rotation
    }

    /// `γ(α)` for a covector with orthonormal components `alpha`.
    pub fn gamma_of(&self, alpha: &[f64]) -> CMat {
        let mut out = CMat::zeros(self.rank(), self.rank());
        for (a, c) in alpha.iter().enumerate() {
            out.axpy_real(*c, &self.gammas[a]);
        }
        out
    }

    /// Spin matrix `Σ_{a<b} ω_ab G_ab` for lowered, antisymmetric
    /// coefficients `omega[a][b]`, stored row-major `n×n`.
    pub fn spin_matrix(&self, omega: &[f64]) -> CMat {
        let n = self.dim();
        let mut out = CMat::zeros(self.rank(), self.rank());
        for (k, (a, b)) in pairs(n).enumerate() {
            out.axpy_real(omega[a * n + b], &self.rotation[k]);
        }
        out
    }

    /// Check the Clifford relations, oddness of `τ`, the hermitian form and
    /// the rotation generators.
    pub fn verify(&self) -> ModuleReport {
        let n = self.dim();
        let id = CMat::identity(self.rank());
        let eps = self.sig.eps_value();
        let mut rel = 0.0;
        let mut worst = (0, 0);
        for a in 0..n {
            for b in 0..n {
                let anti = self.gammas[a].anticommutator(&self.gammas[b]);
                let want = if a == b {
                    id.scale_real(2.0 * eps * self.sig.eta(a))
                } else {
                    CMat::zeros(self.rank(), self.rank())
                };
                let v = anti.max_abs_diff(&want);
                if v > rel {
                    rel = v;
                    worst = (a, b);
                }
            }
        }
        let tau_square = self.tau.matmul(&self.tau).max_abs_diff(&id);
        let tau_odd = self
            .gammas
            .iter()
            .map(|g| self.tau.anticommutator(g).max_abs())
            .fold(0.0, f64::max);
        let h_hermitian = self.h.adjoint().max_abs_diff(&self.h);
        let h_det_abs = match self.h.inverse() {
            Ok(_) => 1.0,
            Err(_) => 0.0,
        };
        let gamma_adjointness = self.gammas.iter().map(|g| classify(g, &self.h)).collect();
        let tau_adjointness = classify(&self.tau, &self.h);

        // [S(ω), γ^a] must equal -ω^a_c γ^c for every unit rotation ω.
        let mut rotation = 0.0;
        for (a, b) in pairs(n) {
            let mut omega = alloc::vec![0.0; n * n];
            omega[a * n + b] = 1.0;
            omega[b * n + a] = -1.0;
            let s = self.spin_matrix(&omega);
            for c in 0..n {
                let lhs = s.commutator(&self.gammas[c]);
                // ω^c_d = η_cc ω_cd
                let mut rhs = CMat::zeros(self.rank(), self.rank());
                for d in 0..n {
                    rhs.axpy_real(-self.sig.eta(c) * omega[c * n + d], &self.gammas[d]);
                }
                rotation = f64::max(rotation, lhs.max_abs_diff(&rhs));
            }
        }
        ModuleReport {
            clifford_relation: rel,
            worst_pair: worst,
            tau_square,
            tau_odd,
            h_hermitian,
            h_det_abs,
            gamma_adjointness,
            tau_adjointness,
            rotation,
        }
    }

    /// `Γ(e_I)`, the product of generators over the blade in increasing
    /// order.
    pub fn blade_matrix(&self, mask: usize) -> CMat {
        let mut out = CMat::identity(self.rank());
        for k in 0..self.dim() {
            if mask & (1 << k) != 0 {
                out = out.matmul(&self.gammas[k]);
            }
        }
        out
    }

    /// Induced algebra homomorphism `Γ: Cl → End(E)`.
    pub fn algebra_action(&self, a: &Multivector) -> Result<CMat> {
        self.sig.check_same(&a.signature())?;
        let mut out = CMat::zeros(self.rank(), self.rank());
        for (mask, c) in a.coeffs().iter().enumerate() {
            if c.re != 0.0 || c.im != 0.0 {
                out.axpy(*c, &self.blade_matrix(mask));
            }
        }
        Ok(out)
    }

    /// Quantization `δ_γ(e^I ⊗ B) = Γ(σ⁻¹(e^I)) B`, extended linearly.
    pub fn quantize(&self, w: &EndoForm) -> Result<CMat> {
        self.sig.check_same(&w.signature())?;
        let mut out = CMat::zeros(self.rank(), self.rank());
        for (mask, b) in w.terms() {
            let q = ExteriorElement::blade(self.sig, *mask).inverse_symbol();
            let g = self.algebra_action(&q)?;
            out += &g.matmul(b);
        }
        Ok(out)
    }

    /// Quantized trace `tr_E δ_γ(w)`.
    pub fn quantized_trace(&self, w: &EndoForm) -> Result<C64> {
        Ok(self.quantize(w)?.trace())
    }

    /// Whether `b` commutes with every generator, and the worst commutator.
    pub fn commutant_test(&self, b: &CMat) -> (bool, f64) {
        let v = self
            .gammas
            .iter()
            .map(|g| b.commutator(g).max_abs())
            .fold(0.0, f64::max);
        (v < ModuleReport::TOL, v)
    }

    /// Canonical one-form on a vector with orthonormal components `v`:
    /// `Θ(v) = (ε/n) γ(v♭)`.
    pub fn canonical_one_form(&self, v: &[f64]) -> CMat {
        let flat: Vec<f64> = v.iter().enumerate().map(|(a, x)| self.sig.eta(a) * x).collect();
        self.gamma_of(&flat)
            .scale_real(self.sig.eps_value() / self.dim() as f64)
    }

    /// `Θ·Φ` as an End-valued one-form: component `e^a ⊗ Θ(e_a)Φ`.
    pub fn theta_times(&self, phi: &CMat) -> EndoForm {
        let n = self.dim();
        let mut form = EndoForm::zero(self.sig);
        for a in 0..n {
            let mut e = alloc::vec![0.0; n];
            e[a] = 1.0;
            form.push(1 << a, self.canonical_one_form(&e).matmul(phi));
        }
        form
    }

    /// `h(x, y) = x† h y`.
    pub fn inner(&self, x: &[C64], y: &[C64]) -> C64 {
        let hy = self.h.mul_vec(y);
        x.iter().zip(hy).map(|(a, b)| a.conj() * b).sum()
    }

    /// Scalar multiple of the identity.
    pub fn scalar(&self, s: f64) -> CMat {
        CMat::identity(self.rank()).scale(re(s))
    }
}
