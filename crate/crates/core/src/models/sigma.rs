//! σ-model fields: maps `φ: M₁ → M₂`, the zero-order field built from `dφ`
//! on the Clifford twist of `E₁ ⊗ φ*E₂`, and the resulting action.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::dirac::{CliffordConnection, DiracOperator, SectionField};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::linalg::CMat;
use crate::module::{CliffordModule, CliffordTwist, Fiber};
use crate::{par, C64};

use super::target::TargetMetric;

/// Node-wise target coordinates of a map into a [`TargetMetric`].
#[derive(Clone, Debug)]
pub struct SigmaMap {
    target: TargetMetric,
    values: Vec<Vec<f64>>,
}

impl SigmaMap {
    pub fn new(target: TargetMetric, values: Vec<Vec<f64>>) -> Result<Self> {
        let n2 = target.dim();
        if let Some(p) = values.iter().position(|v| v.len() != n2) {
            return Err(Error::Shape(format!("map value at node {p} has {} coordinates, target has {n2}", values[p].len())));
        }
        Ok(Self { target, values })
    }

    pub fn from_fn(geom: &Geometry, target: TargetMetric, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<Self> {
        let values = (0..geom.len()).map(|p| f(&geom.grid().coords(p))).collect();
        Self::new(target, values)
    }

    pub fn target(&self) -> &TargetMetric {
        &self.target
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn check(&self, geom: &Geometry) -> Result<()> {
        if self.values.len() != geom.len() {
            return Err(Error::Shape(format!("map on {} nodes, grid has {}", self.values.len(), geom.len())));
        }
        Ok(())
    }

    /// Coordinate partials `∂_iφ^μ` at `[node][i][μ]`.
    pub fn partials(&self, geom: &Geometry) -> Result<Vec<Vec<Vec<f64>>>> {
        self.check(geom)?;
        let n1 = geom.dim();
        let n2 = self.target.dim();
        Ok(par::map_nodes(geom.len(), |p| {
            (0..n1)
                .map(|i| {
                    let st = geom.stencil(p, i);
                    (0..n2).map(|mu| st.apply_with(|q| self.values[q][mu])).collect()
                })
                .collect()
        }))
    }

    /// `φ_a = dφ(e_a)` at `[node][a][μ]`.
    pub fn frame_derivatives(&self, geom: &Geometry) -> Result<Vec<Vec<Vec<f64>>>> {
        let d = self.partials(geom)?;
        let n1 = geom.dim();
        let n2 = self.target.dim();
        Ok((0..geom.len())
            .map(|p| {
                let e = geom.frame(p);
                (0..n1)
                    .map(|a| (0..n2).map(|mu| (0..n1).map(|i| e[(a, i)] * d[p][i][mu]).sum()).collect())
                    .collect()
            })
            .collect())
    }

    /// `‖dφ‖² = Σ η^{ab} g₂(φ_a, φ_b)` node-wise, in the orthonormal frame.
    pub fn energy_density(&self, geom: &Geometry) -> Result<Vec<f64>> {
        let fa = self.frame_derivatives(geom)?;
        let eta = geom.eta();
        Ok((0..geom.len())
            .map(|p| {
                let g2 = self.target.metric(&self.values[p]);
                (0..geom.dim()).map(|a| eta[a] * g2.bilinear(&fa[p][a], &fa[p][a])).sum()
            })
            .collect())
    }

    /// `‖dφ‖² = g^{ij} g₂(∂_iφ, ∂_jφ)` node-wise, in coordinates.
    pub fn energy_density_coordinate(&self, geom: &Geometry) -> Result<Vec<f64>> {
        let d = self.partials(geom)?;
        let n = geom.dim();
        Ok((0..geom.len())
            .map(|p| {
                let g2 = self.target.metric(&self.values[p]);
                let gi = geom.metric().ginv(p);
                let mut s = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        s += gi[(i, j)] * g2.bilinear(&d[p][i], &d[p][j]);
                    }
                }
                s
            })
            .collect())
    }
}

/// Node-wise ratio statistics of two densities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Proportionality {
    /// Mean ratio over the nodes used.
    pub ratio: f64,
    /// `max − min` of the ratio over the nodes used.
    pub spread: f64,
    pub used: usize,
    /// Nodes skipped because the reference density vanishes.
    pub skipped: usize,
}

impl Proportionality {
    /// Ratio of `num` to `den` where `|den|` exceeds `floor`.
    pub fn measure(num: &[f64], den: &[f64], floor: f64) -> Self {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut sum = 0.0;
        let mut used = 0;
        let mut skipped = 0;
        for (a, b) in num.iter().zip(den) {
            if b.abs() <= floor {
                skipped += 1;
                continue;
            }
            let r = a / b;
            lo = lo.min(r);
            hi = hi.max(r);
            sum += r;
            used += 1;
        }
        if used == 0 {
            return Self {
                ratio: f64::NAN,
                spread: f64::NAN,
                used,
                skipped,
            };
        }
        Self {
            ratio: sum / used as f64,
            spread: hi - lo,
            used,
            skipped,
        }
    }
}

/// Zero-order data of a σ-model field on the Clifford twist.
#[derive(Clone, Debug)]
pub struct SigmaField {
    /// `χ_a` on `E` per node.
    pub chi: Vec<Vec<CMat>>,
    /// `φ_D = Σ χ_a ⊗ γ_Cl(e^a)` on `E'` per node.
    pub phi_d: Vec<CMat>,
    /// Pullback connection of `E₂` lifted to `E'`, coordinate directions.
    pub pullback: Vec<Vec<CMat>>,
}

/// `E = E₁ ⊗ φ*E₂` and its Clifford twist `E' = E ⊗ Cl₁`.
#[derive(Clone, Debug)]
pub struct SigmaModel {
    base: CliffordModule,
    target_module: CliffordModule,
    twisted: CliffordModule,
    twist: CliffordTwist,
}

impl SigmaModel {
    pub fn new(base: CliffordModule, target_module: CliffordModule) -> Result<Self> {
        let twisted = base.twisted(&Fiber::from_module(&target_module))?;
        let twist = twisted.clifford_twist()?;
        Ok(Self {
            base,
            target_module,
            twisted,
            twist,
        })
    }

    pub fn base(&self) -> &CliffordModule {
        &self.base
    }

    pub fn target_module(&self) -> &CliffordModule {
        &self.target_module
    }

    /// `E`.
    pub fn twisted(&self) -> &CliffordModule {
        &self.twisted
    }

    /// `E'` and its structure maps.
    pub fn twist(&self) -> &CliffordTwist {
        &self.twist
    }

    fn check_target(&self, target: &TargetMetric) -> Result<()> {
        let sig = self.target_module.signature();
        let t = target.signature(sig.eps())?;
        if t.p() != sig.p() || t.q() != sig.q() {
            return Err(Error::SignatureMismatch {
                left: format!("target {t}"),
                right: format!("target module {sig}"),
            });
        }
        Ok(())
    }

    /// `χ_a = Id ⊗ γ₂(φ_a♭)` for the frame derivatives `fa[a][μ]` at the
    /// target point `x`.
    pub fn chi(&self, target: &TargetMetric, x: &[f64], fa: &[Vec<f64>]) -> Result<Vec<CMat>> {
        let sig2 = self.target_module.signature();
        let (_, co) = target.frame(x)?;
        let n2 = target.dim();
        let id1 = CMat::identity(self.base.rank());
        Ok(fa
            .iter()
            .map(|v| {
                let flat: Vec<f64> = (0..n2)
                    .map(|c| sig2.eta(c) * (0..n2).map(|mu| co[(c, mu)] * v[mu]).sum::<f64>())
                    .collect();
                id1.kron(&self.target_module.gamma_of(&flat))
            })
            .collect())
    }

    /// `Σ_a χ_a ⊗ γ_Cl(e^a)` on `E'`.
    pub fn phi_d(&self, chi: &[CMat]) -> CMat {
        super::clifford_extend(&self.twist, chi)
    }

    /// Node-wise `χ`, `φ_D` and the pullback connection.
    pub fn field(&self, geom: &Geometry, map: &SigmaMap) -> Result<SigmaField> {
        self.check_target(map.target())?;
        if geom.dim() != self.base.dim() {
            return Err(Error::SignatureMismatch {
                left: format!("base grid of dimension {}", geom.dim()),
                right: format!("{}", self.base.signature()),
            });
        }
        let fa = map.frame_derivatives(geom)?;
        let d = map.partials(geom)?;
        let chi = par::try_map_nodes(geom.len(), |p| self.chi(map.target(), &map.values[p], &fa[p]))?;
        let phi_d = chi.iter().map(|c| self.phi_d(c)).collect();
        let n1 = geom.dim();
        let n2 = map.target().dim();
        let id1 = CMat::identity(self.base.rank());
        let idc = CMat::identity(self.base.signature().blade_count());
        let pullback = par::map_nodes(geom.len(), |p| {
            let w = map.target().spin(&map.values[p]);
            (0..n1)
                .map(|i| {
                    let mut om = alloc::vec![0.0; n2 * n2];
                    for (mu, dmu) in d[p][i].iter().enumerate() {
                        for k in 0..n2 * n2 {
                            om[k] += w[mu * n2 * n2 + k] * dmu;
                        }
                    }
                    id1.kron(&self.target_module.spin_matrix(&om)).kron(&idc)
                })
                .collect()
        });
        Ok(SigmaField { chi, phi_d, pullback })
    }

    /// `ε₁ Σ η^{ab} tr_E(χ_a† χ_b)`.
    pub fn hermitian_norm(&self, chi: &[CMat]) -> f64 {
        let sig = self.base.signature();
        let s: f64 = chi
            .iter()
            .enumerate()
            .map(|(a, c)| sig.eta(a) * c.adjoint().matmul(c).trace().re)
            .sum();
        sig.eps_value() * s
    }

    /// `tr_{E'}((τ'φ_D)²)`, the density entering the Dirac potential.
    pub fn action_density(&self, phi_d: &CMat) -> f64 {
        let t = self.twist.module.tau().matmul(phi_d);
        t.matmul(&t).trace().re
    }

    /// Simple-type operator `∂̸_{A'} + τ'φ_D` on `E'`.
    pub fn operator(&self, geom: &Arc<Geometry>, field: &SigmaField) -> Result<DiracOperator> {
        let conn = CliffordConnection::new(geom.clone(), self.twist.module.clone(), Some(field.pullback.clone()))?;
        DiracOperator::simple_type(conn, field.phi_d.clone())
    }

    /// Quantized connection `∂̸_A` on `E` with the pullback connection.
    pub fn base_operator(&self, geom: &Arc<Geometry>, field: &SigmaField) -> Result<DiracOperator> {
        let nb = self.base.signature().blade_count();
        let r = self.twisted.rank();
        // Restrict the lifted pullback to E through the unit blade.
        let gauge = field
            .pullback
            .iter()
            .map(|ai| {
                ai.iter()
                    .map(|a| CMat::from_fn(r, r, |i, j| a[(i * nb, j * nb)]))
                    .collect()
            })
            .collect();
        let conn = CliffordConnection::new(geom.clone(), self.twisted.clone(), Some(gauge))?;
        Ok(conn.quantize())
    }

    /// Total action two ways: the operator pipeline and the closed form
    /// `∫(−ε₁(rk E'/4)scal + ⟨ψ, ∂̸_Aψ⟩ + c‖dφ‖²)` with `c` measured.
    pub fn action(&self, geom: &Arc<Geometry>, map: &SigmaMap, psi: Option<&SectionField>) -> Result<SigmaAction> {
        let field = self.field(geom, map)?;
        let d = self.operator(geom, &field)?;
        let dec = d.decompose();
        let universal = d.universal_action(&dec).re;
        let energy = map.energy_density(geom)?;
        let action: Vec<f64> = field.phi_d.iter().map(|m| self.action_density(m)).collect();
        let herm: Vec<f64> = field.chi.iter().map(|c| self.hermitian_norm(c)).collect();
        let floor = 1e-12;
        let action_ratio = Proportionality::measure(&action, &energy, floor);
        let hermitian_ratio = Proportionality::measure(&herm, &energy, floor);
        let eps1 = self.base.signature().eps_value();
        let rk = self.twist.module.rank() as f64;
        let scal = geom.scalar_curvature();
        let c = if action_ratio.used > 0 { action_ratio.ratio } else { 0.0 };
        let dens: Vec<f64> = (0..geom.len()).map(|p| -eps1 * rk / 4.0 * scal[p] + c * energy[p]).collect();
        let (fermion_twisted, fermion_base) = match psi {
            Some(psi) => {
                let emb = &self.twist.embedding;
                let lifted = SectionField::from_fn(emb.rows(), psi.len(), |p| emb.mul_vec(psi.at(p)))?;
                let base = self.base_operator(geom, &field)?;
                (d.fermion_term(&lifted)?, base.fermion_term(psi)?)
            }
            None => (C64::new(0.0, 0.0), C64::new(0.0, 0.0)),
        };
        Ok(SigmaAction {
            universal,
            closed_form: geom.integrate(&dens),
            energy: geom.integrate(&energy),
            action_ratio,
            hermitian_ratio,
            fermion_twisted,
            fermion_base,
            rank_twist: self.twist.module.rank(),
            rank_sum: self.base.rank() + self.target_module.rank(),
            rank_product: self.base.rank() * self.target_module.rank(),
        })
    }
}

/// Both sides of the σ-model action identity.
#[derive(Clone, Debug)]
pub struct SigmaAction {
    pub universal: f64,
    pub closed_form: f64,
    /// `∫ ‖dφ‖²`.
    pub energy: f64,
    /// `tr((τ'φ_D)²) / ‖dφ‖²`.
    pub action_ratio: Proportionality,
    /// `ε₁ Σ η^{ab} tr χ_a†χ_b / ‖dφ‖²`.
    pub hermitian_ratio: Proportionality,
    pub fermion_twisted: C64,
    pub fermion_base: C64,
    pub rank_twist: usize,
    pub rank_sum: usize,
    pub rank_product: usize,
}
