//! Higgs sections of a hermitian bundle `M₂ → M₁`, the metric a connection
//! induces on its total space, and the Einstein–Hilbert action with a
//! cosmological constant.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::clifford::{Sign, Signature};
use crate::dirac::{CliffordConnection, SectionField};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::linalg::{CMat, RMat};
use crate::module::{spinor, Fiber};
use crate::{par, C64};

use super::ym::GaugeCurvature;

/// `ℂ^k` bundle over the grid with fiber metric `h`, a connection potential
/// `A_i` (coordinate directions) and a section `φ`.
#[derive(Clone, Debug)]
pub struct HiggsBundle {
    k: usize,
    h: CMat,
    potential: Vec<Vec<CMat>>,
    section: Vec<Vec<C64>>,
}

/// `[[Re h, −Im h], [Im h, Re h]]`: the real form of `Re⟨a, b⟩_h`.
fn real_form(h: &CMat) -> RMat {
    let k = h.rows();
    RMat::from_fn(2 * k, 2 * k, |i, j| {
        let (bi, bj) = (i / k, j / k);
        let z = h[(i % k, j % k)];
        match (bi, bj) {
            (0, 0) | (1, 1) => z.re,
            (0, 1) => -z.im,
            _ => z.im,
        }
    })
}

fn realify(u: &[C64]) -> Vec<f64> {
    u.iter().map(|z| z.re).chain(u.iter().map(|z| z.im)).collect()
}

impl HiggsBundle {
    pub fn new(h: CMat, potential: Vec<Vec<CMat>>, section: Vec<Vec<C64>>) -> Result<Self> {
        let k = h.rows();
        if !h.is_square() || h.max_abs_diff(&h.adjoint()) > 1e-14 {
            return Err(Error::Invalid("fiber metric must be a hermitian matrix".into()));
        }
        let lo = real_form(&h).symmetric_eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if lo <= 0.0 {
            return Err(Error::Invalid(format!("fiber metric is not positive definite (eigenvalue {lo:e})")));
        }
        if potential.len() != section.len() {
            return Err(Error::Shape(format!(
                "potential on {} nodes, section on {}",
                potential.len(),
                section.len()
            )));
        }
        if potential.iter().flatten().any(|a| a.rows() != k || a.cols() != k) || section.iter().any(|s| s.len() != k) {
            return Err(Error::Shape(format!("potential blocks and section values must have rank {k}")));
        }
        Ok(Self {
            k,
            h,
            potential,
            section,
        })
    }

    /// Standard metric, trivial connection, given section.
    pub fn trivial(geom: &Geometry, k: usize, section: impl Fn(&[f64]) -> Vec<C64>) -> Result<Self> {
        let n = geom.dim();
        let potential = alloc::vec![alloc::vec![CMat::zeros(k, k); n]; geom.len()];
        let section = (0..geom.len()).map(|p| section(&geom.grid().coords(p))).collect();
        Self::new(CMat::identity(k), potential, section)
    }

    pub fn from_fn(
        geom: &Geometry,
        h: CMat,
        potential: impl Fn(&[f64]) -> Vec<CMat>,
        section: impl Fn(&[f64]) -> Vec<C64>,
    ) -> Result<Self> {
        let pot = (0..geom.len()).map(|p| potential(&geom.grid().coords(p))).collect();
        let sec = (0..geom.len()).map(|p| section(&geom.grid().coords(p))).collect();
        Self::new(h, pot, sec)
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn potential(&self) -> &[Vec<CMat>] {
        &self.potential
    }

    pub fn section(&self) -> &[Vec<C64>] {
        &self.section
    }

    /// The same bundle with the section multiplied by `s`.
    pub fn scaled_section(&self, s: f64) -> Self {
        let mut out = self.clone();
        for v in out.section.iter_mut().flatten() {
            *v *= s;
        }
        out
    }

    fn check(&self, geom: &Geometry) -> Result<()> {
        if self.section.len() != geom.len() || self.potential.iter().any(|a| a.len() != geom.dim()) {
            return Err(Error::Shape(format!(
                "bundle on {} nodes with {} directions, grid has {} nodes in dimension {}",
                self.section.len(),
                self.potential.first().map_or(0, |a| a.len()),
                geom.len(),
                geom.dim()
            )));
        }
        Ok(())
    }

    /// `g₂` at the point `u` over a node: `g₁(v,v) + |ξ + A(v)u|²_h` on
    /// `(v, ξ) ∈ ℝⁿ × ℝ^{2k}`.
    pub fn total_metric(&self, g1: &RMat, node: usize, u: &[C64]) -> RMat {
        let n = g1.rows();
        let k2 = 2 * self.k;
        let hr = real_form(&self.h);
        // Column i of m is the real form of A_i u.
        let m = RMat::from_fn(k2, n, |r, i| realify(&self.potential[node][i].mul_vec(u))[r]);
        let hm = hr.matmul(&m);
        let mhm = m.transpose().matmul(&hm);
        RMat::from_fn(n + k2, n + k2, |r, c| match (r < n, c < n) {
            (true, true) => g1[(r, c)] + mhm[(r, c)],
            (true, false) => hm[(c - n, r)],
            (false, true) => hm[(r - n, c)],
            (false, false) => hr[(r - n, c - n)],
        })
    }

    /// `∂_iφ` at `[node][i]`.
    pub fn partials(&self, geom: &Geometry) -> Result<Vec<Vec<Vec<C64>>>> {
        self.check(geom)?;
        let n = geom.dim();
        Ok(par::map_nodes(geom.len(), |p| {
            (0..n)
                .map(|i| {
                    let st = geom.stencil(p, i);
                    (0..self.k)
                        .map(|c| {
                            C64::new(
                                st.apply_with(|q| self.section[q][c].re),
                                st.apply_with(|q| self.section[q][c].im),
                            )
                        })
                        .collect()
                })
                .collect()
        }))
    }

    /// `∇_iφ = ∂_iφ + A_iφ` at `[node][i]`.
    pub fn covariant_derivative(&self, geom: &Geometry) -> Result<Vec<Vec<Vec<C64>>>> {
        let d = self.partials(geom)?;
        Ok((0..geom.len())
            .map(|p| {
                d[p].iter()
                    .zip(&self.potential[p])
                    .map(|(di, a)| di.iter().zip(a.mul_vec(&self.section[p])).map(|(x, y)| x + y).collect())
                    .collect()
            })
            .collect())
    }

    /// Checks `g₂(dφ(e_a), dφ(e_a)) = |∇_{e_a}φ|²_h + g₁(e_a, e_a)` per frame
    /// vector, and its trace `‖dφ‖² − ‖∇φ‖² = dim M₁`.
    pub fn identity(&self, geom: &Geometry) -> Result<HiggsIdentity> {
        let d = self.partials(geom)?;
        let nab = self.covariant_derivative(geom)?;
        let n = geom.dim();
        let eta = geom.eta();
        let hr = real_form(&self.h);
        let rows = par::map_nodes(geom.len(), |p| {
            let g1 = geom.metric().g(p);
            let g2 = self.total_metric(g1, p, &self.section[p]);
            let e = geom.frame(p);
            let mut dphi = 0.0;
            let mut nphi = 0.0;
            let mut worst: f64 = 0.0;
            for a in 0..n {
                let v: Vec<f64> = (0..n).map(|i| e[(a, i)]).collect();
                let mut dv: Vec<C64> = alloc::vec![C64::new(0.0, 0.0); self.k];
                let mut nv = dv.clone();
                for i in 0..n {
                    for c in 0..self.k {
                        dv[c] += d[p][i][c] * v[i];
                        nv[c] += nab[p][i][c] * v[i];
                    }
                }
                let tangent: Vec<f64> = v.iter().copied().chain(realify(&dv)).collect();
                let lhs = g2.bilinear(&tangent, &tangent);
                let nr = realify(&nv);
                let kin = hr.bilinear(&nr, &nr);
                let base = g1.bilinear(&v, &v);
                worst = worst.max((lhs - kin - base).abs());
                dphi += eta[a] * lhs;
                nphi += eta[a] * kin;
            }
            (dphi, nphi, worst)
        });
        let d_phi: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let nabla_phi: Vec<f64> = rows.iter().map(|r| r.1).collect();
        let pointwise = rows.iter().map(|r| r.2).fold(0.0, f64::max);
        let trace = d_phi
            .iter()
            .zip(&nabla_phi)
            .map(|(a, b)| (a - b - n as f64).abs())
            .fold(0.0, f64::max);
        Ok(HiggsIdentity {
            d_phi,
            nabla_phi,
            pointwise,
            trace,
        })
    }

    /// Curvature of the connection on the fiber.
    pub fn curvature(&self, geom: &Geometry) -> Result<GaugeCurvature> {
        self.check(geom)?;
        GaugeCurvature::from_potential(geom, &self.potential)
    }
}

/// Node-wise terms of the Higgs kinetic identity.
#[derive(Clone, Debug)]
pub struct HiggsIdentity {
    /// `‖dφ‖²` from the total-space metric.
    pub d_phi: Vec<f64>,
    /// `‖∇φ‖²`.
    pub nabla_phi: Vec<f64>,
    /// Largest per-vector violation.
    pub pointwise: f64,
    /// Largest `|‖dφ‖² − ‖∇φ‖² − dim M₁|`.
    pub trace: f64,
}

/// `∫ (scal + Λ) √|g| dx`.
pub fn ehc_action(geom: &Geometry, lambda: f64) -> f64 {
    let dens: Vec<f64> = geom.scalar_curvature().iter().map(|s| s + lambda).collect();
    geom.integrate(&dens)
}

/// The four integrals of the gauge–Higgs action and their sum.
#[derive(Clone, Debug)]
pub struct GaugeHiggsReport {
    /// `∫ ⟨ψ, ∇̸ψ⟩` on `S ⊗ W`.
    pub fermion: C64,
    /// `∫ ‖∇φ‖²`.
    pub higgs: f64,
    /// `∫ ‖F^W‖²`.
    pub ym: f64,
    /// `∫ (−ε₁ scal + Λ)`.
    pub gravity: f64,
    pub lambda: f64,
    pub total: C64,
}

/// Term table with `W` the Higgs fiber and its connection. `Λ` defaults to
/// `dim M₁`, the constant the total-space metric contributes.
pub fn gauge_higgs_report(
    geom: &Arc<Geometry>,
    eps: Sign,
    bundle: &HiggsBundle,
    psi: Option<&SectionField>,
    lambda: Option<f64>,
) -> Result<GaugeHiggsReport> {
    bundle.check(geom)?;
    let n = geom.dim();
    let lambda = lambda.unwrap_or(n as f64);
    let id = bundle.identity(geom)?;
    let higgs = geom.integrate(&id.nabla_phi);
    let f = bundle.curvature(geom)?;
    let ym = geom.integrate(&f.norm_density(geom.eta()));
    let scal = geom.scalar_curvature();
    let dens: Vec<f64> = scal.iter().map(|s| -eps.value() * s + lambda).collect();
    let gravity = geom.integrate(&dens);
    let fermion = match psi {
        Some(psi) => {
            let (p, q) = geom.inertia();
            let s = spinor(Signature::new(p, q, eps)?)?;
            let m = s.twisted(&Fiber::graded("W", CMat::identity(bundle.k), bundle.h.clone()))?;
            let ids = CMat::identity(s.rank());
            let gauge = bundle
                .potential
                .iter()
                .map(|row| row.iter().map(|a| ids.kron(a)).collect())
                .collect();
            let d = CliffordConnection::new(geom.clone(), m, Some(gauge))?.quantize();
            d.fermion_term(psi)?
        }
        None => C64::new(0.0, 0.0),
    };
    Ok(GaugeHiggsReport {
        fermion,
        higgs,
        ym,
        gravity,
        lambda,
        total: fermion + higgs + ym + gravity,
    })
}
