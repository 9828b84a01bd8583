//! Yang–Mills fields: the zero-order field built from a twisting curvature
//! on `E = (S ⊗ W) ⊗ E₂` and the universal action it produces.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::clifford::Signature;
use crate::dirac::{CliffordConnection, DiracOperator, SectionField};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::linalg::CMat;
use crate::module::{spinor, CliffordModule, CliffordTwist, Fiber};
use crate::{par, C64};

use super::clifford_extend;
use super::sigma::Proportionality;

/// Twisting curvature `F_ab` on a fiber `W` in the orthonormal frame,
/// stored at `[node][a·n + b]`.
#[derive(Clone, Debug)]
pub struct GaugeCurvature {
    n: usize,
    rank: usize,
    f: Vec<Vec<CMat>>,
}

impl GaugeCurvature {
    /// Validates shapes and antisymmetry.
    pub fn new(n: usize, rank: usize, f: Vec<Vec<CMat>>) -> Result<Self> {
        for (p, row) in f.iter().enumerate() {
            if row.len() != n * n {
                return Err(Error::Shape(format!("node {p}: {} components, expected {}", row.len(), n * n)));
            }
            if let Some(m) = row.iter().find(|m| m.rows() != rank || m.cols() != rank) {
                return Err(Error::Shape(format!("node {p}: {}x{} block, fiber rank {rank}", m.rows(), m.cols())));
            }
            for a in 0..n {
                for b in a..n {
                    let v = (&row[a * n + b] + &row[b * n + a]).max_abs();
                    if v > 0.0 {
                        return Err(Error::NotAntisymmetric {
                            node: p,
                            a,
                            b,
                            violation: v,
                        });
                    }
                }
            }
        }
        Ok(Self { n, rank, f })
    }

    /// The same upper-triangular components at every node; the lower half is
    /// filled by antisymmetry.
    pub fn constant(nodes: usize, n: usize, rank: usize, upper: &[((usize, usize), CMat)]) -> Result<Self> {
        let mut row = alloc::vec![CMat::zeros(rank, rank); n * n];
        for ((a, b), m) in upper {
            if a >= b || *b >= n {
                return Err(Error::Shape(format!("component ({a},{b}) is not upper triangular in dimension {n}")));
            }
            row[a * n + b] = m.clone();
            row[b * n + a] = m.scale_real(-1.0);
        }
        Self::new(n, rank, alloc::vec![row; nodes])
    }

    /// `U(1)` flux `F₁₂ = i f` in the first two frame directions.
    pub fn u1_flux(nodes: usize, n: usize, f: f64) -> Result<Self> {
        let m = CMat::identity(1).scale(C64::new(0.0, f));
        Self::constant(nodes, n, 1, &[((0, 1), m)])
    }

    /// `F_ab = E_a^i E_b^j (∂_iA_j − ∂_jA_i + [A_i, A_j])` from a potential in
    /// coordinate directions, `a[node][i]`.
    pub fn from_potential(geom: &Geometry, a: &[Vec<CMat>]) -> Result<Self> {
        let n = geom.dim();
        if a.len() != geom.len() || a.iter().any(|x| x.len() != n) {
            return Err(Error::Shape("potential must have one matrix per node and direction".into()));
        }
        let rank = a[0][0].rows();
        let f = par::map_nodes(geom.len(), |p| {
            let d: Vec<Vec<CMat>> = (0..n)
                .map(|i| {
                    let st = geom.stencil(p, i);
                    (0..n).map(|j| st.apply_mat(|q| a[q][j].clone())).collect()
                })
                .collect();
            let mut coord = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let mut c = &d[i][j] - &d[j][i];
                    c += &a[p][i].commutator(&a[p][j]);
                    coord.push(c);
                }
            }
            let e = geom.frame(p);
            let mut out = alloc::vec![CMat::zeros(rank, rank); n * n];
            for x in 0..n {
                for y in x + 1..n {
                    let mut m = CMat::zeros(rank, rank);
                    for i in 0..n {
                        for j in 0..n {
                            m.axpy_real(e[(x, i)] * e[(y, j)], &coord[i * n + j]);
                        }
                    }
                    out[y * n + x] = m.scale_real(-1.0);
                    out[x * n + y] = m;
                }
            }
            out
        });
        Self::new(n, rank, f)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Rank of `W`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    /// `F_ab` at a node.
    pub fn at(&self, p: usize, a: usize, b: usize) -> &CMat {
        &self.f[p][a * self.n + b]
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            n: self.n,
            rank: self.rank,
            f: self.f.iter().map(|row| row.iter().map(|m| m.scale_real(s)).collect()).collect(),
        }
    }

    /// `‖F‖² = −Σ η^{aa}η^{bb} tr_W(F_ab F_ab)` node-wise.
    pub fn norm_density(&self, eta: &[f64]) -> Vec<f64> {
        let n = self.n;
        self.f
            .iter()
            .map(|row| {
                let mut s = 0.0;
                for a in 0..n {
                    for b in 0..n {
                        s -= eta[a] * eta[b] * row[a * n + b].matmul(&row[a * n + b]).trace().re;
                    }
                }
                s
            })
            .collect()
    }
}

/// `χ` and `φ_D` per node.
#[derive(Clone, Debug)]
pub struct YmField {
    pub chi: Vec<Vec<CMat>>,
    pub phi_d: Vec<CMat>,
}

/// `E₁ = S ⊗ W`, `E = E₁ ⊗ E₂` and `E' = E ⊗ Cl`. The `E₂` factor carries
/// the trivial connection, so bases must be flat.
#[derive(Clone, Debug)]
pub struct YangMillsModel {
    spinor: CliffordModule,
    fiber_rank: usize,
    e1: CliffordModule,
    e2: CliffordModule,
    twisted: CliffordModule,
    twist: CliffordTwist,
}

/// Both sides of the Yang–Mills action identity plus its pieces.
#[derive(Clone, Debug)]
pub struct YmAction {
    /// Universal action of the assembled operator on `E'`.
    pub universal: f64,
    /// `−ε₁(rk E'/4) ∫ scal`.
    pub scal_term: f64,
    /// `c ∫ ‖F‖²` with the measured constant.
    pub ym_term: f64,
    /// `∫ ‖F‖²`.
    pub norm: f64,
    pub closed_form: f64,
    /// `tr((τφ_D)²) / ‖F‖²`.
    pub constant: Proportionality,
    /// `⟨ψ', Dψ'⟩` for the embedded section, zero without one.
    pub fermion: C64,
    /// `⟨ψ, ∂̸_{A₁}ψ⟩` on `E₁`.
    pub fermion_base: C64,
    /// `universal + fermion`.
    pub total: C64,
    pub rank_twist: usize,
}

impl YangMillsModel {
    /// Spinor module of `sig` twisted by `ℂ^w`, paired with `e2`.
    pub fn new(sig: Signature, fiber_rank: usize, e2: CliffordModule) -> Result<Self> {
        if e2.dim() != sig.n() {
            return Err(Error::SignatureMismatch {
                left: format!("{sig}"),
                right: format!("E₂ module {}", e2.signature()),
            });
        }
        let s = spinor(sig)?;
        let e1 = s.twisted(&Fiber::trivial(fiber_rank))?;
        let twisted = e1.twisted(&Fiber::from_module(&e2))?;
        let twist = twisted.clifford_twist()?;
        Ok(Self {
            spinor: s,
            fiber_rank,
            e1,
            e2,
            twisted,
            twist,
        })
    }

    pub fn e1(&self) -> &CliffordModule {
        &self.e1
    }

    pub fn e2(&self) -> &CliffordModule {
        &self.e2
    }

    pub fn twisted(&self) -> &CliffordModule {
        &self.twisted
    }

    pub fn twist(&self) -> &CliffordTwist {
        &self.twist
    }

    fn lift_to_e(&self, w: &CMat) -> CMat {
        CMat::identity(self.spinor.rank()).kron(w)
    }

    fn check(&self, f: &GaugeCurvature) -> Result<()> {
        if f.dim() != self.e1.dim() || f.rank() != self.fiber_rank {
            return Err(Error::Shape(format!(
                "curvature of dimension {} on rank {}, model has dimension {} and fiber rank {}",
                f.dim(),
                f.rank(),
                self.e1.dim(),
                self.fiber_rank
            )));
        }
        Ok(())
    }

    /// `χ_a = Σ_b (Id_S ⊗ F_ab) ⊗ γ₂(e^b)` at a node.
    pub fn chi(&self, f: &GaugeCurvature, p: usize) -> Vec<CMat> {
        let n = f.dim();
        let r = self.twisted.rank();
        (0..n)
            .map(|a| {
                let mut c = CMat::zeros(r, r);
                for b in 0..n {
                    c += &self.lift_to_e(f.at(p, a, b)).kron(self.e2.gamma(b));
                }
                c
            })
            .collect()
    }

    pub fn field(&self, f: &GaugeCurvature) -> Result<YmField> {
        self.check(f)?;
        let chi: Vec<Vec<CMat>> = par::map_nodes(f.len(), |p| self.chi(f, p));
        let phi_d = chi.iter().map(|c| clifford_extend(&self.twist, c)).collect();
        Ok(YmField { chi, phi_d })
    }

    /// `tr((τ'φ_D)²)`.
    pub fn action_density(&self, phi_d: &CMat) -> f64 {
        let t = self.twist.module.tau().matmul(phi_d);
        t.matmul(&t).trace().re
    }

    fn require_flat(geom: &Geometry) -> Result<()> {
        let n = geom.dim();
        let worst = (0..geom.len())
            .flat_map(|p| (0..n).flat_map(move |i| geom.spin(p, i).iter().map(|x| x.abs())))
            .fold(0.0, f64::max);
        if worst > 1e-12 {
            return Err(Error::Invalid(format!(
                "the E₂ factor carries the trivial connection; base spin connection reaches {worst:e}"
            )));
        }
        Ok(())
    }

    /// Gauge `A` on `W` lifted to `E'` (or `E` when `cl` is false).
    fn lift_potential(&self, a: &[Vec<CMat>], cl: bool) -> Vec<Vec<CMat>> {
        let id2 = CMat::identity(self.e2.rank());
        let idc = CMat::identity(self.twisted.signature().blade_count());
        a.iter()
            .map(|row| {
                row.iter()
                    .map(|m| {
                        let e = self.lift_to_e(m).kron(&id2);
                        if cl {
                            e.kron(&idc)
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// `∂̸_{A'} + τ'φ_D` with the potential `a` (coordinate directions on `W`)
    /// or the trivial connection.
    pub fn operator(&self, geom: &Arc<Geometry>, field: &YmField, a: Option<&[Vec<CMat>]>) -> Result<DiracOperator> {
        Self::require_flat(geom)?;
        let gauge = a.map(|a| self.lift_potential(a, true));
        let conn = CliffordConnection::new(geom.clone(), self.twist.module.clone(), gauge)?;
        DiracOperator::simple_type(conn, field.phi_d.clone())
    }

    /// Universal action through the operator and the closed form
    /// `∫(−ε₁(rk/4)scal + c‖F‖²)`; with `psi = (ψ, u)` the section `ψ ⊗ u ⊗ 1`
    /// adds the fermion term.
    pub fn action(
        &self,
        geom: &Arc<Geometry>,
        f: &GaugeCurvature,
        a: Option<&[Vec<CMat>]>,
        psi: Option<(&SectionField, &[C64])>,
    ) -> Result<YmAction> {
        let field = self.field(f)?;
        if f.len() != geom.len() {
            return Err(Error::Shape(format!("curvature on {} nodes, grid has {}", f.len(), geom.len())));
        }
        let d = self.operator(geom, &field, a)?;
        let dec = d.decompose();
        let universal = d.universal_action(&dec).re;
        let norm = f.norm_density(geom.eta());
        let num: Vec<f64> = field.phi_d.iter().map(|m| self.action_density(m)).collect();
        let constant = Proportionality::measure(&num, &norm, 1e-12);
        let c = if constant.used > 0 { constant.ratio } else { 0.0 };
        let eps1 = self.e1.signature().eps_value();
        let rk = self.twist.module.rank() as f64;
        let scal = geom.scalar_curvature();
        let scal_term = -eps1 * rk / 4.0 * geom.integrate(&scal);
        let ym_term = c * geom.integrate(&norm);
        let (fermion, fermion_base) = match psi {
            Some((psi, u)) => {
                if u.len() != self.e2.rank() {
                    return Err(Error::Shape(format!("E₂ vector of length {}, rank {}", u.len(), self.e2.rank())));
                }
                let uc = CMat::column(u);
                let lift = CMat::identity(self.e1.rank()).kron(&uc);
                let emb = self.twist.embedding.matmul(&lift);
                let lifted = SectionField::from_fn(emb.rows(), psi.len(), |p| emb.mul_vec(psi.at(p)))?;
                let gauge = a.map(|a| {
                    a.iter()
                        .map(|row| row.iter().map(|m| self.lift_to_e(m)).collect())
                        .collect()
                });
                let base = CliffordConnection::new(geom.clone(), self.e1.clone(), gauge)?.quantize();
                (d.fermion_term(&lifted)?, base.fermion_term(psi)?)
            }
            None => (C64::new(0.0, 0.0), C64::new(0.0, 0.0)),
        };
        Ok(YmAction {
            universal,
            scal_term,
            ym_term,
            norm: geom.integrate(&norm),
            closed_form: scal_term + ym_term,
            constant,
            fermion,
            fermion_base,
            total: fermion + universal,
            rank_twist: self.twist.module.rank(),
        })
    }
}
