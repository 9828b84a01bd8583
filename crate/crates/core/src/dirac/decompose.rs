//! First- and second-order decompositions read off the discrete operator.

use alloc::vec::Vec;

use super::{DiracOperator, SectionField};
use crate::linalg::CMat;
use crate::{par, C64};

/// `D = ∂̸_B + Φ_D` and `D² = Δ_B + V_D` node by node.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Bochner coefficients `B_j` (coordinate directions) per node.
    pub bochner: Vec<Vec<CMat>>,
    pub phi_d: Vec<CMat>,
    pub v: Vec<CMat>,
    pub tr_v: Vec<C64>,
}

/// Residuals of the decomposition against the discrete operator on a probe.
#[derive(Clone, Copy, Debug, Default)]
pub struct ProbeReport {
    /// `|Dψ − ∂̸_Bψ − Φ_Dψ|`
    pub first_order: f64,
    /// `|D²ψ − Δ_Bψ − V_Dψ|`
    pub second_order: f64,
    /// `|(D − ∂̸_B)(fψ) − fΦ_Dψ|`
    pub zero_order_phi: f64,
    /// `|(D² − Δ_B)(fψ) − fV_Dψ|`
    pub zero_order_v: f64,
    /// `|Σ K^j(∂_j + B_j + ω_D,j)ψ − Dψ|`
    pub dirac_connection: f64,
}

impl DiracOperator {
    /// Bochner coefficients from `2 ev_g(df, ∂_Bψ) = ε[D², f]ψ + δ(df)ψ`
    /// applied to the coordinate functions and the constant basis sections;
    /// `δ` is the formal adjoint of `d`.
    pub fn extract_bochner(&self) -> Vec<Vec<CMat>> {
        let geom = self.geometry();
        let n = geom.dim();
        let r = self.rank();
        let eps = self.module().signature().eps_value();
        let id = CMat::identity(r);
        let delta_dx: Vec<Vec<f64>> = (0..n).map(|k| geom.codifferential_of_coordinate(k)).collect();
        par::map_nodes(self.len(), |p| {
            let grid = geom.grid();
            let c: Vec<CMat> = (0..n)
                .map(|k| {
                    let mut ck = self.apply_squared_local(p, &|q| id.scale_real(grid.displacement(p, q, k)));
                    ck = ck.scale_real(eps);
                    for d in 0..r {
                        ck[(d, d)] += delta_dx[k][p];
                    }
                    ck
                })
                .collect();
            let g = geom.metric().g(p);
            (0..n)
                .map(|j| {
                    let mut b = CMat::zeros(r, r);
                    for k in 0..n {
                        b.axpy_real(0.5 * g[(j, k)], &c[k]);
                    }
                    b
                })
                .collect()
        })
    }

    /// Full decomposition.
    pub fn decompose(&self) -> Decomposition {
        let geom = self.geometry();
        let n = geom.dim();
        let bochner = self.extract_bochner();
        let phi_d = par::map_nodes(self.len(), |p| {
            let mut m = self.z(p).clone();
            for j in 0..n {
                m -= &self.connection().k(p, j).matmul(&bochner[p][j]);
            }
            m
        });
        let mut dec = Decomposition {
            bochner,
            phi_d,
            v: Vec::new(),
            tr_v: Vec::new(),
        };
        let v = par::map_nodes(self.len(), |p| {
            let d2 = self.apply_local(p, &|q| self.z(q).clone());
            let lap = dec.laplacian_of_identity(self, p);
            &d2 - &lap
        });
        dec.tr_v = v.iter().map(|m| m.trace()).collect();
        dec.v = v;
        dec
    }
}

impl Decomposition {
    /// `∇_jF(q) = ∂_jF(q) + B_j(q)F(q)`.
    fn nabla(&self, d: &DiracOperator, q: usize, j: usize, f: &dyn Fn(usize) -> CMat) -> CMat {
        let mut m = d.geometry().stencil(q, j).apply_mat(f);
        m += &self.bochner[q][j].matmul(&f(q));
        m
    }

    /// `∂̸_B F(p) = Σ K^j ∇_j F`.
    pub fn bochner_dirac_local(&self, d: &DiracOperator, p: usize, f: &dyn Fn(usize) -> CMat) -> CMat {
        let n = d.geometry().dim();
        let mut out = CMat::zeros(d.rank(), f(p).cols());
        for j in 0..n {
            out += &d.connection().k(p, j).matmul(&self.nabla(d, p, j, f));
        }
        out
    }

    /// `Δ_B F(p) = ε g^{ij}(∇_i∇_j − Γ^k_ij ∇_k)F`.
    pub fn bochner_laplacian_local(&self, d: &DiracOperator, p: usize, f: &dyn Fn(usize) -> CMat) -> CMat {
        let geom = d.geometry();
        let n = geom.dim();
        let eps = d.module().signature().eps_value();
        let gi = geom.metric().ginv(p);
        let nab: Vec<CMat> = (0..n).map(|k| self.nabla(d, p, k, f)).collect();
        let mut out = CMat::zeros(d.rank(), f(p).cols());
        for i in 0..n {
            for j in 0..n {
                let gij = gi[(i, j)];
                if gij == 0.0 {
                    continue;
                }
                let mut t = geom.stencil(p, i).apply_mat(|q| self.nabla(d, q, j, f));
                t += &self.bochner[p][i].matmul(&nab[j]);
                for (k, nk) in nab.iter().enumerate() {
                    t.axpy_real(-geom.christoffel(p, k, i, j), nk);
                }
                out.axpy_real(eps * gij, &t);
            }
        }
        out
    }

    fn laplacian_of_identity(&self, d: &DiracOperator, p: usize) -> CMat {
        let id = CMat::identity(d.rank());
        self.bochner_laplacian_local(d, p, &|_| id.clone())
    }

    /// `Δ_Bψ` at every node.
    pub fn apply_bochner_laplacian(&self, d: &DiracOperator, psi: &SectionField) -> SectionField {
        let vals = par::map_nodes(d.len(), |p| {
            self.bochner_laplacian_local(d, p, &|q| psi.column(q)).col(0)
        });
        SectionField::new(d.rank(), vals).expect("rank preserved")
    }

    /// Dirac form `ω_D,j = Θ_j Φ_D` at a node.
    pub fn dirac_form(&self, d: &DiracOperator, p: usize) -> Vec<CMat> {
        (0..d.geometry().dim())
            .map(|j| d.connection().theta(p, j).matmul(&self.phi_d[p]))
            .collect()
    }

    /// Residuals on the probe `ψ` and probe function `f`, over nodes accepted
    /// by `include`.
    pub fn probe(
        &self,
        d: &DiracOperator,
        f: &[f64],
        psi: &SectionField,
        include: impl Fn(usize) -> bool + Sync + Send,
    ) -> ProbeReport {
        let n = d.geometry().dim();
        let rows = par::map_nodes(d.len(), |p| {
            if !include(p) {
                return ProbeReport::default();
            }
            let col = |q: usize| psi.column(q);
            let fcol = |q: usize| psi.column(q).scale_real(f[q]);
            let dpsi = d.apply_local(p, &col);
            let bpsi = self.bochner_dirac_local(d, p, &col);
            let phi_psi = self.phi_d[p].matmul(&psi.column(p));
            let first = (&dpsi - &bpsi).max_abs_diff(&phi_psi);

            let d2 = d.apply_squared_local(p, &col);
            let lap = self.bochner_laplacian_local(d, p, &col);
            let vpsi = self.v[p].matmul(&psi.column(p));
            let second = (&d2 - &lap).max_abs_diff(&vpsi);

            let zphi = (&d.apply_local(p, &fcol) - &self.bochner_dirac_local(d, p, &fcol))
                .max_abs_diff(&phi_psi.scale_real(f[p]));
            let zv = (&d.apply_squared_local(p, &fcol) - &self.bochner_laplacian_local(d, p, &fcol))
                .max_abs_diff(&vpsi.scale_real(f[p]));

            let omega = self.dirac_form(d, p);
            let mut dc = bpsi.clone();
            for (j, w) in omega.iter().enumerate().take(n) {
                dc += &d.connection().k(p, j).matmul(&w.matmul(&psi.column(p)));
            }
            let dirac_connection = dc.max_abs_diff(&dpsi);
            ProbeReport {
                first_order: first,
                second_order: second,
                zero_order_phi: zphi,
                zero_order_v: zv,
                dirac_connection,
            }
        });
        rows.into_iter().fold(ProbeReport::default(), |a, b| ProbeReport {
            first_order: a.first_order.max(b.first_order),
            second_order: a.second_order.max(b.second_order),
            zero_order_phi: a.zero_order_phi.max(b.zero_order_phi),
            zero_order_v: a.zero_order_v.max(b.zero_order_v),
            dirac_connection: a.dirac_connection.max(b.dirac_connection),
        })
    }
}
