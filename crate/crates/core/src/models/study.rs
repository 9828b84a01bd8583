//! Curves `φ: [0,1] → M` with the Study-number module on the interval:
//! `E = ²ℝ ⊗ φ*ΛT*M`, its Dirac operator and the reduction of the universal
//! action to the curve energy.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::dirac::{DiracOperator, SectionField};
use crate::error::Result;
use crate::geometry::{presets, Geometry, StencilOrder};
use crate::linalg::CMat;
use crate::module::{clifford_regular, study};
use crate::{par, Sign, C64};

use super::geodesic::geodesic_energy;
use super::sigma::{Proportionality, SigmaField, SigmaMap, SigmaModel};
use super::target::TargetMetric;

/// Study module on `[0, 1]` twisted by the pullback of `ΛT*M`.
#[derive(Clone, Debug)]
pub struct StudyDemo {
    geom: Arc<Geometry>,
    map: SigmaMap,
    model: SigmaModel,
    field: SigmaField,
    operator: DiracOperator,
}

/// Outcome of [`StudyDemo::report`].
#[derive(Clone, Debug)]
pub struct StudyReport {
    /// `max |∂̸ψ − γ(dt)(ψ̇ + Γψ)|` with `ψ̇` from the same stencils.
    pub dirac_residual: f64,
    /// `∫ ⟨ψ, ∂̸ψ⟩ dt`.
    pub fermion: f64,
    /// `∫ ‖dφ‖² dt`.
    pub energy: f64,
    /// `∫ (⟨ψ, ∂̸ψ⟩ + ‖dφ‖²) dt`.
    pub total: f64,
    /// Universal action of `∂̸ + τφ_D` on the Clifford twist.
    pub universal: f64,
    /// `tr((τφ_D)²) / ‖dφ‖²`.
    pub constant: Proportionality,
    /// `universal / constant`.
    pub normalized: f64,
    /// Midpoint energy of the sampled curve.
    pub curve_energy: f64,
}

impl StudyDemo {
    /// `path(t)` gives target coordinates; `nodes` samples `[0, 1]`.
    pub fn new(eps: Sign, target: TargetMetric, nodes: usize, path: impl Fn(f64) -> alloc::vec::Vec<f64>) -> Result<Self> {
        let geom = Arc::new(Geometry::new(presets::flat_patch(1, 0, nodes, 0.0, 1.0)?, StencilOrder::Four)?);
        let map = SigmaMap::from_fn(&geom, target.clone(), |x| path(x[0]))?;
        let model = SigmaModel::new(study(eps)?, clifford_regular(target.signature(Sign::Plus)?)?)?;
        let field = model.field(&geom, &map)?;
        let operator = model.base_operator(&geom, &field)?;
        Ok(Self {
            geom,
            map,
            model,
            field,
            operator,
        })
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geom
    }

    pub fn map(&self) -> &SigmaMap {
        &self.map
    }

    pub fn model(&self) -> &SigmaModel {
        &self.model
    }

    /// Rank of `E`: two copies of `ΛT*M`.
    pub fn rank(&self) -> usize {
        self.model.twisted().rank()
    }

    /// `∂̸` on `E`.
    pub fn operator(&self) -> &DiracOperator {
        &self.operator
    }

    /// Pullback Levi-Civita coefficients on `E` at a node.
    pub fn connection_coefficients(&self, p: usize) -> CMat {
        let r = self.rank();
        let nb = self.model.base().signature().blade_count();
        let a = &self.field.pullback[p][0];
        CMat::from_fn(r, r, |i, j| a[(i * nb, j * nb)])
    }

    /// `γ(dt)(ψ̇ + Γψ)` assembled component-wise.
    pub fn formula(&self, psi: &SectionField) -> Result<SectionField> {
        let gamma = self.model.twisted().gamma(0).clone();
        let vals = par::map_nodes(self.geom.len(), |p| {
            let st = self.geom.stencil(p, 0);
            let gam = self.connection_coefficients(p);
            let gp = gam.mul_vec(psi.at(p));
            let v: Vec<C64> = (0..self.rank())
                .map(|k| {
                    let re = st.apply_with(|q| psi.at(q)[k].re);
                    let im = st.apply_with(|q| psi.at(q)[k].im);
                    C64::new(re, im) + gp[k]
                })
                .collect();
            gamma.mul_vec(&v)
        });
        SectionField::new(self.rank(), vals)
    }

    pub fn report(&self, psi: &SectionField) -> Result<StudyReport> {
        let d = self.operator.apply(psi)?;
        let f = self.formula(psi)?;
        let dirac_residual = (0..self.geom.len())
            .flat_map(|p| d.at(p).iter().zip(f.at(p)).map(|(a, b)| (a - b).norm()).collect::<Vec<_>>())
            .fold(0.0, f64::max);
        let fermion = self.operator.fermion_term(psi)?.re;
        let energy = self.geom.integrate(&self.map.energy_density(&self.geom)?);
        let twisted = self.model.operator(&self.geom, &self.field)?;
        let dec = twisted.decompose();
        let universal = twisted.universal_action(&dec).re;
        let num: Vec<f64> = self.field.phi_d.iter().map(|m| self.model.action_density(m)).collect();
        let constant = Proportionality::measure(&num, &self.map.energy_density(&self.geom)?, 1e-12);
        let curve_energy = geodesic_energy(self.map.target(), self.map.values())?;
        Ok(StudyReport {
            dirac_residual,
            fermion,
            energy,
            total: fermion + energy,
            universal,
            normalized: universal / constant.ratio,
            constant,
            curve_energy,
        })
    }
}
