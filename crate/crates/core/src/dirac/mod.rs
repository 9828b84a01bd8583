//! Clifford connections and Dirac operators on chart grids.
//!
//! Operators are assembled in coordinates:
//!
//! `Dψ = Σ_i K^i (∂_i + Ω_i) ψ + Φ ψ`, with `K^i = γ(dx^i) = Σ_a E_a^i γ^a`,
//!
//! where `Ω_i` is the spin part plus the gauge potential. The discrete
//! operator acts on matrix-valued fields through [`DiracOperator::apply_local`];
//! every derived object (Bochner connection, potentials, curvature) is read
//! off by composing that map, so identities are tested against the discrete
//! operator itself.

mod decompose;
mod trace;

pub use decompose::{Decomposition, ProbeReport};
pub use trace::{ActionReport, TraceFormula};

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::linalg::CMat;
use crate::module::CliffordModule;
use crate::{par, C64};

/// Node-indexed fiber vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionField {
    rank: usize,
    values: Vec<Vec<C64>>,
}

impl SectionField {
    pub fn new(rank: usize, values: Vec<Vec<C64>>) -> Result<Self> {
        if let Some(p) = values.iter().position(|v| v.len() != rank) {
            return Err(Error::Shape(format!(
                "section value at node {p} has length {}, fiber rank is {rank}",
                values[p].len()
            )));
        }
        Ok(Self { rank, values })
    }

    pub fn zero(rank: usize, nodes: usize) -> Self {
        Self {
            rank,
            values: alloc::vec![alloc::vec![C64::new(0.0, 0.0); rank]; nodes],
        }
    }

    pub fn from_fn(rank: usize, nodes: usize, f: impl Fn(usize) -> Vec<C64>) -> Result<Self> {
        Self::new(rank, (0..nodes).map(f).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn at(&self, p: usize) -> &[C64] {
        &self.values[p]
    }

    pub fn values(&self) -> &[Vec<C64>] {
        &self.values
    }

    /// Column-matrix view at a node.
    pub fn column(&self, p: usize) -> CMat {
        CMat::column(&self.values[p])
    }
}

/// Violation report of the Clifford-connection identities.
#[derive(Clone, Copy, Debug)]
pub struct ConnectionReport {
    /// `max |∂_i K^j + [Ω_i, K^j] + Γ^j_ik K^k|`
    pub commutes_with_gamma: f64,
    /// `max |∂_i Θ_j − Γ^k_ij Θ_k + [Ω_i, Θ_j]|`
    pub theta_parallel: f64,
    pub nodes_checked: usize,
}

/// `∇_i = ∂_i + Ω_i` with `Ω_i` the spin lift of the Levi-Civita connection
/// plus a commutant-valued gauge potential.
#[derive(Clone, Debug)]
pub struct CliffordConnection {
    geom: Arc<Geometry>,
    module: CliffordModule,
    gauge: Option<Arc<Vec<Vec<CMat>>>>,
    /// `K^i` per node.
    k: Vec<Vec<CMat>>,
    /// `Ω_i` per node.
    omega: Vec<Vec<CMat>>,
}

impl CliffordConnection {
    /// Build from a geometry, a module and an optional gauge potential
    /// `gauge[node][i]`, given in coordinate directions.
    pub fn new(geom: Arc<Geometry>, module: CliffordModule, gauge: Option<Vec<Vec<CMat>>>) -> Result<Self> {
        let sig = module.signature();
        if geom.inertia() != (sig.p(), sig.q()) {
            return Err(Error::SignatureMismatch {
                left: format!("metric inertia {:?}", geom.inertia()),
                right: format!("{sig}"),
            });
        }
        let n = geom.dim();
        let r = module.rank();
        if let Some(a) = &gauge {
            if a.len() != geom.len() {
                return Err(Error::Shape(format!("gauge field on {} nodes, grid has {}", a.len(), geom.len())));
            }
            for (node, ai) in a.iter().enumerate() {
                if ai.len() != n {
                    return Err(Error::Shape(format!("gauge at node {node} has {} directions", ai.len())));
                }
                for (direction, m) in ai.iter().enumerate() {
                    if m.rows() != r || m.cols() != r {
                        return Err(Error::Shape(format!("gauge matrix at node {node} is {}x{}", m.rows(), m.cols())));
                    }
                    let (ok, violation) = module.commutant_test(m);
                    if !ok {
                        return Err(Error::NotCommutant {
                            node,
                            direction,
                            violation,
                        });
                    }
                }
            }
        }
        let k = par::map_nodes(geom.len(), |p| {
            let e = geom.frame(p);
            (0..n)
                .map(|i| {
                    let mut m = CMat::zeros(r, r);
                    for a in 0..n {
                        m.axpy_real(e[(a, i)], module.gamma(a));
                    }
                    m
                })
                .collect::<Vec<_>>()
        });
        let omega = par::map_nodes(geom.len(), |p| {
            (0..n)
                .map(|i| {
                    let mut m = module.spin_matrix(geom.spin(p, i));
                    if let Some(a) = &gauge {
                        m += &a[p][i];
                    }
                    m
                })
                .collect::<Vec<_>>()
        });
        Ok(Self {
            geom,
            module,
            gauge: gauge.map(Arc::new),
            k,
            omega,
        })
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geom
    }

    pub fn module(&self) -> &CliffordModule {
        &self.module
    }

    pub fn gauge(&self) -> Option<&[Vec<CMat>]> {
        self.gauge.as_deref().map(|v| v.as_slice())
    }

    /// `K^i = γ(dx^i)` at a node.
    #[inline]
    pub fn k(&self, p: usize, i: usize) -> &CMat {
        &self.k[p][i]
    }

    /// `Ω_i` at a node.
    #[inline]
    pub fn omega(&self, p: usize, i: usize) -> &CMat {
        &self.omega[p][i]
    }

    /// Add `delta` to `Ω_i` at one node (negative controls).
    pub fn perturb(&mut self, p: usize, i: usize, delta: &CMat) {
        self.omega[p][i] += delta;
    }

    /// `Θ_j = Θ(∂_j) = (ε/n) g_jk K^k`.
    pub fn theta(&self, p: usize, j: usize) -> CMat {
        let n = self.geom.dim();
        let g = self.geom.metric().g(p);
        let mut m = CMat::zeros(self.module.rank(), self.module.rank());
        for k in 0..n {
            m.axpy_real(g[(j, k)], &self.k[p][k]);
        }
        m.scale_real(self.module.signature().eps_value() / n as f64)
    }

    /// Check both Clifford-connection identities on nodes accepted by
    /// `include`. Residual tensors are measured by their components in the
    /// orthonormal frame.
    pub fn verify(&self, include: impl Fn(usize) -> bool + Sync + Send) -> ConnectionReport {
        let n = self.geom.dim();
        let r = self.module.rank();
        let per_node = par::map_nodes(self.geom.len(), |p| {
            if !include(p) {
                return None;
            }
            let thetas: Vec<CMat> = (0..n).map(|j| self.theta(p, j)).collect();
            // res1[i][j]: upper j, res2[i][j]: lower j.
            let mut res1 = Vec::with_capacity(n * n);
            let mut res2 = Vec::with_capacity(n * n);
            for i in 0..n {
                let st = self.geom.stencil(p, i);
                for j in 0..n {
                    let mut v = st.apply_mat(|q| self.k[q][j].clone());
                    v += &self.omega[p][i].commutator(&self.k[p][j]);
                    for kk in 0..n {
                        v.axpy_real(self.geom.christoffel(p, j, i, kk), &self.k[p][kk]);
                    }
                    res1.push(v);

                    let mut w = st.apply_mat(|q| self.theta(q, j));
                    w += &self.omega[p][i].commutator(&thetas[j]);
                    for (kk, t) in thetas.iter().enumerate() {
                        w.axpy_real(-self.geom.christoffel(p, kk, i, j), t);
                    }
                    res2.push(w);
                }
            }
            let e = self.geom.frame(p);
            let c = self.geom.coframe(p);
            let mut c1: f64 = 0.0;
            let mut c2: f64 = 0.0;
            for b in 0..n {
                for a in 0..n {
                    let mut x = CMat::zeros(r, r);
                    let mut y = CMat::zeros(r, r);
                    for i in 0..n {
                        for j in 0..n {
                            x.axpy_real(e[(b, i)] * c[(a, j)], &res1[i * n + j]);
                            y.axpy_real(e[(b, i)] * e[(a, j)], &res2[i * n + j]);
                        }
                    }
                    c1 = c1.max(x.max_abs());
                    c2 = c2.max(y.max_abs());
                }
            }
            Some((c1, c2))
        });
        let mut rep = ConnectionReport {
            commutes_with_gamma: 0.0,
            theta_parallel: 0.0,
            nodes_checked: 0,
        };
        for (a, b) in per_node.into_iter().flatten() {
            rep.commutes_with_gamma = rep.commutes_with_gamma.max(a);
            rep.theta_parallel = rep.theta_parallel.max(b);
            rep.nodes_checked += 1;
        }
        rep
    }

    /// `∂̸ = Σ γ(dx^i)∇_i`.
    pub fn quantize(self) -> DiracOperator {
        let zero = CMat::zeros(self.module.rank(), self.module.rank());
        let phi = alloc::vec![zero; self.geom.len()];
        DiracOperator::assemble(self, phi, None)
    }
}

/// First-order operator `D = Σ K^i ∂_i + Z`, `Z = Σ K^i Ω_i + Φ`.
#[derive(Clone, Debug)]
pub struct DiracOperator {
    conn: CliffordConnection,
    phi: Vec<CMat>,
    /// Commutant part `φ` when `Φ = τφ`.
    simple: Option<Vec<CMat>>,
    z: Vec<CMat>,
}

impl DiracOperator {
    fn assemble(conn: CliffordConnection, phi: Vec<CMat>, simple: Option<Vec<CMat>>) -> Self {
        let n = conn.geom.dim();
        let z = par::map_nodes(conn.geom.len(), |p| {
            let mut z = phi[p].clone();
            for i in 0..n {
                z += &conn.k[p][i].matmul(&conn.omega[p][i]);
            }
            z
        });
        Self { conn, phi, simple, z }
    }

    /// `D = ∂̸_A + Φ` for an arbitrary zero-order field.
    pub fn with_zero_order(conn: CliffordConnection, phi: Vec<CMat>) -> Result<Self> {
        if phi.len() != conn.geom.len() {
            return Err(Error::Shape(format!("zero-order field on {} nodes", phi.len())));
        }
        let r = conn.module.rank();
        if let Some(p) = phi.iter().position(|m| m.rows() != r || m.cols() != r) {
            return Err(Error::Shape(format!("zero-order term at node {p} has the wrong size")));
        }
        Ok(Self::assemble(conn, phi, None))
    }

    /// Simple-type operator `D = ∂̸_A + τφ` with `φ` commutant-valued.
    pub fn simple_type(conn: CliffordConnection, phi_small: Vec<CMat>) -> Result<Self> {
        if phi_small.len() != conn.geom.len() {
            return Err(Error::Shape(format!("φ given on {} nodes", phi_small.len())));
        }
        for (node, m) in phi_small.iter().enumerate() {
            let (ok, violation) = conn.module.commutant_test(m);
            if !ok {
                return Err(Error::NotCommutant {
                    node,
                    direction: 0,
                    violation,
                });
            }
        }
        let tau = conn.module.tau().clone();
        let phi = phi_small.iter().map(|m| tau.matmul(m)).collect();
        Ok(Self::assemble(conn, phi, Some(phi_small)))
    }

    pub fn connection(&self) -> &CliffordConnection {
        &self.conn
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.conn.geom
    }

    pub fn module(&self) -> &CliffordModule {
        &self.conn.module
    }

    pub fn rank(&self) -> usize {
        self.conn.module.rank()
    }

    pub fn len(&self) -> usize {
        self.conn.geom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conn.geom.is_empty()
    }

    /// Zero-order term `Φ` as assembled.
    pub fn phi(&self) -> &[CMat] {
        &self.phi
    }

    /// `φ` for simple-type operators.
    pub fn phi_small(&self) -> Option<&[CMat]> {
        self.simple.as_deref()
    }

    pub fn is_simple_type(&self) -> bool {
        self.simple.is_some()
    }

    /// `Z(p) = Σ K^i Ω_i + Φ`.
    pub fn z(&self, p: usize) -> &CMat {
        &self.z[p]
    }

    /// Largest `|Φγ^a + γ^aΦ|` over nodes and generators.
    pub fn anticommutation_violation(&self) -> f64 {
        let m = &self.conn.module;
        self.phi
            .iter()
            .flat_map(|phi| m.gammas().iter().map(move |g| phi.anticommutator(g).max_abs()))
            .fold(0.0, f64::max)
    }

    /// `(DF)(p)` for a matrix-valued field `F` given pointwise.
    pub fn apply_local(&self, p: usize, f: &dyn Fn(usize) -> CMat) -> CMat {
        let n = self.conn.geom.dim();
        let mut out = self.z[p].matmul(&f(p));
        for i in 0..n {
            let d = self.conn.geom.stencil(p, i).apply_mat(f);
            out += &self.conn.k[p][i].matmul(&d);
        }
        out
    }

    /// `(D²F)(p)`.
    pub fn apply_squared_local(&self, p: usize, f: &dyn Fn(usize) -> CMat) -> CMat {
        self.apply_local(p, &|q| self.apply_local(q, f))
    }

    /// `Dψ` at every node.
    pub fn apply(&self, psi: &SectionField) -> Result<SectionField> {
        self.check_section(psi)?;
        let vals = par::map_nodes(self.len(), |p| {
            self.apply_local(p, &|q| psi.column(q)).col(0)
        });
        SectionField::new(self.rank(), vals)
    }

    /// `D²ψ` at every node.
    pub fn apply_squared(&self, psi: &SectionField) -> Result<SectionField> {
        let d = self.apply(psi)?;
        self.apply(&d)
    }

    /// Max over nodes of `|[D, f]ψ − γ(df)ψ|`, restricted by `include`.
    pub fn symbol_residual(
        &self,
        f: &[f64],
        psi: &SectionField,
        include: impl Fn(usize) -> bool + Sync + Send,
    ) -> Result<f64> {
        self.check_section(psi)?;
        let n = self.conn.geom.dim();
        let geom = &self.conn.geom;
        let res = par::map_nodes(self.len(), |p| {
            if !include(p) {
                return 0.0;
            }
            let dfpsi = self.apply_local(p, &|q| psi.column(q).scale_real(f[q]));
            let fdpsi = self.apply_local(p, &|q| psi.column(q)).scale_real(f[p]);
            let mut sym = CMat::zeros(self.rank(), self.rank());
            for i in 0..n {
                sym.axpy_real(geom.stencil(p, i).apply(f), &self.conn.k[p][i]);
            }
            let want = sym.matmul(&psi.column(p));
            (&dfpsi - &fdpsi).max_abs_diff(&want)
        });
        Ok(res.into_iter().fold(0.0, f64::max))
    }

    /// `∫ ⟨ψ, Dψ⟩_h √|g| dx`.
    pub fn fermion_term(&self, psi: &SectionField) -> Result<C64> {
        let dpsi = self.apply(psi)?;
        let dens: Vec<C64> = (0..self.len())
            .map(|p| self.conn.module.inner(psi.at(p), dpsi.at(p)))
            .collect();
        Ok(self.conn.geom.integrate_c(&dens))
    }

    fn check_section(&self, psi: &SectionField) -> Result<()> {
        if psi.rank() != self.rank() || psi.len() != self.len() {
            return Err(Error::Shape(format!(
                "section of rank {} on {} nodes for an operator of rank {} on {} nodes",
                psi.rank(),
                psi.len(),
                self.rank(),
                self.len()
            )));
        }
        Ok(())
    }
}
