//! Combined σ-model and Yang–Mills field `φ_D = φ₁ + φ₂` on the Clifford
//! extension of `E = (S ⊗ Cl₁ ⊗ W) ⊗ φ*E₂`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::clifford::{canonical_action_matrix, Signature};
use crate::dirac::{CliffordConnection, DiracOperator};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::linalg::CMat;
use crate::module::{spinor, CliffordModule, Fiber};
use crate::par;

use super::clifford_extend;
use super::sigma::{Proportionality, SigmaMap, SigmaModel};
use super::ym::GaugeCurvature;

/// `E₁ = S ⊗ Cl₁ ⊗ W` paired with a target module through [`SigmaModel`].
#[derive(Clone, Debug)]
pub struct DhymModel {
    sigma: SigmaModel,
    spinor_rank: usize,
    fiber_rank: usize,
    sig: Signature,
}

/// Pieces of the combined action.
#[derive(Clone, Debug)]
pub struct DhymAction {
    /// Universal action of `∇̸ + τ'(φ₁ + φ₂)`.
    pub universal: f64,
    /// `−ε₁(rk E'/4) ∫ scal`.
    pub scal_term: f64,
    /// `∫ tr((τ'φ₁)²)`.
    pub sigma_term: f64,
    /// `∫ tr((τ'φ₂)²)`.
    pub ym_term: f64,
    /// `scal_term + sigma_term + ym_term`.
    pub parts: f64,
    /// Largest `|tr(φ₁φ₂ + φ₂φ₁)|` over nodes.
    pub cross_trace: f64,
    /// `tr((τ'φ₁)²) / ‖dφ‖²`.
    pub sigma_constant: Proportionality,
    /// `tr((τ'φ₂)²) / ‖F‖²`.
    pub ym_constant: Proportionality,
    pub rank_e1: usize,
    pub rank_twist: usize,
}

impl DhymModel {
    pub fn new(sig: Signature, fiber_rank: usize, target_module: CliffordModule) -> Result<Self> {
        let s = spinor(sig)?;
        let fiber = Fiber::clifford_bundle(sig).tensor(&Fiber::trivial(fiber_rank))?;
        let e1 = s.twisted(&fiber)?;
        Ok(Self {
            sigma: SigmaModel::new(e1, target_module)?,
            spinor_rank: s.rank(),
            fiber_rank,
            sig,
        })
    }

    pub fn sigma(&self) -> &SigmaModel {
        &self.sigma
    }

    /// Rank of `E₁`.
    pub fn rank_e1(&self) -> usize {
        self.sigma.base().rank()
    }

    /// `χ₂_b = Σ_a Id_S ⊗ γ_Cl₁(e^a) ⊗ F_ab ⊗ Id_E₂` at a node.
    fn chi2(&self, f: &GaugeCurvature, p: usize) -> Vec<CMat> {
        let n = self.sig.n();
        let ids = CMat::identity(self.spinor_rank);
        let id2 = CMat::identity(self.sigma.target_module().rank());
        let gcl: Vec<CMat> = (0..n).map(|a| canonical_action_matrix(&self.sig, a)).collect();
        let r = self.sigma.twisted().rank();
        (0..n)
            .map(|b| {
                let mut c = CMat::zeros(r, r);
                for (a, g) in gcl.iter().enumerate() {
                    c += &ids.kron(g).kron(f.at(p, a, b)).kron(&id2);
                }
                c
            })
            .collect()
    }

    /// `φ₂` on `E'` per node.
    pub fn phi2(&self, f: &GaugeCurvature) -> Result<Vec<CMat>> {
        if f.dim() != self.sig.n() || f.rank() != self.fiber_rank {
            return Err(Error::Shape(format!(
                "curvature of dimension {} on rank {}, model has dimension {} and fiber rank {}",
                f.dim(),
                f.rank(),
                self.sig.n(),
                self.fiber_rank
            )));
        }
        let twist = self.sigma.twist();
        Ok(par::map_nodes(f.len(), |p| clifford_extend(twist, &self.chi2(f, p))))
    }

    fn lift_potential(&self, a: &[Vec<CMat>]) -> Vec<Vec<CMat>> {
        let pre = CMat::identity(self.spinor_rank * self.sig.blade_count());
        let post = CMat::identity(self.sigma.target_module().rank() * self.sig.blade_count());
        a.iter()
            .map(|row| row.iter().map(|m| pre.kron(m).kron(&post)).collect())
            .collect()
    }

    /// Universal action of the combined operator against its parts.
    pub fn action(
        &self,
        geom: &Arc<Geometry>,
        map: &SigmaMap,
        f: &GaugeCurvature,
        a: Option<&[Vec<CMat>]>,
    ) -> Result<DhymAction> {
        if f.len() != geom.len() {
            return Err(Error::Shape(format!("curvature on {} nodes, grid has {}", f.len(), geom.len())));
        }
        let sf = self.sigma.field(geom, map)?;
        let phi2 = self.phi2(f)?;
        let mut gauge = sf.pullback.clone();
        if let Some(a) = a {
            for (g, l) in gauge.iter_mut().zip(self.lift_potential(a)) {
                for (x, y) in g.iter_mut().zip(l) {
                    *x += &y;
                }
            }
        }
        let phi: Vec<CMat> = sf.phi_d.iter().zip(&phi2).map(|(x, y)| x + y).collect();
        let conn = CliffordConnection::new(geom.clone(), self.sigma.twist().module.clone(), Some(gauge))?;
        let d = DiracOperator::simple_type(conn, phi)?;
        let dec = d.decompose();
        let universal = d.universal_action(&dec).re;
        let tau = self.sigma.twist().module.tau();
        let sq = |m: &CMat| {
            let t = tau.matmul(m);
            t.matmul(&t).trace().re
        };
        let s1: Vec<f64> = sf.phi_d.iter().map(sq).collect();
        let s2: Vec<f64> = phi2.iter().map(sq).collect();
        let cross_trace = sf
            .phi_d
            .iter()
            .zip(&phi2)
            .map(|(x, y)| x.anticommutator(y).trace().norm())
            .fold(0.0, f64::max);
        let eps1 = self.sig.eps_value();
        let rk = self.sigma.twist().module.rank() as f64;
        let scal_term = -eps1 * rk / 4.0 * geom.integrate(&geom.scalar_curvature());
        let sigma_term = geom.integrate(&s1);
        let ym_term = geom.integrate(&s2);
        Ok(DhymAction {
            universal,
            scal_term,
            sigma_term,
            ym_term,
            parts: scal_term + sigma_term + ym_term,
            cross_trace,
            sigma_constant: Proportionality::measure(&s1, &map.energy_density(geom)?, 1e-12),
            ym_constant: Proportionality::measure(&s2, &f.norm_density(geom.eta()), 1e-12),
            rank_e1: self.rank_e1(),
            rank_twist: self.sigma.twist().module.rank(),
        })
    }
}
