//! Trace formula for the Dirac potential and the Dirac actions.

use alloc::vec::Vec;

use super::{Decomposition, DiracOperator, SectionField};
use crate::error::Result;
use crate::linalg::CMat;
use crate::module::{pairs, EndoForm};
use crate::{par, C64};

/// Node fields of `tr_γ(curv) − ε tr(ev_g(ω_D²)) − ε δ(tr ω_D)`, with `δ`
/// the formal adjoint of `d`.
#[derive(Clone, Debug)]
pub struct TraceFormula {
    /// `tr_γ` of the Dirac-connection curvature.
    pub curvature: Vec<C64>,
    /// `−ε g^{ij} tr(ω_i ω_j)`.
    pub potential: Vec<C64>,
    /// `−ε δ(tr ω_D)`.
    pub divergence: Vec<C64>,
    pub rhs: Vec<C64>,
}

/// Universal and total Dirac actions.
#[derive(Clone, Copy, Debug)]
pub struct ActionReport {
    pub universal: C64,
    pub fermion: C64,
    pub total: C64,
}

impl Decomposition {
    /// `W_j = B_j + ω_D,j` at every node.
    pub fn dirac_connection(&self, d: &DiracOperator) -> Vec<Vec<CMat>> {
        par::map_nodes(d.len(), |p| {
            let omega = self.dirac_form(d, p);
            self.bochner[p].iter().zip(omega).map(|(b, w)| b + &w).collect()
        })
    }

    /// Curvature `[∇_i, ∇_j]` of the Dirac connection on constant sections,
    /// as coordinate components `curv[node][i·n + j]`.
    pub fn dirac_curvature(&self, d: &DiracOperator) -> Vec<Vec<CMat>> {
        let geom = d.geometry();
        let n = geom.dim();
        let w = self.dirac_connection(d);
        par::map_nodes(d.len(), |p| {
            let dw: Vec<Vec<CMat>> = (0..n)
                .map(|i| {
                    let st = geom.stencil(p, i);
                    (0..n).map(|j| st.apply_mat(|q| w[q][j].clone())).collect()
                })
                .collect();
            let mut out = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let mut c = &dw[i][j] - &dw[j][i];
                    c += &w[p][i].commutator(&w[p][j]);
                    out.push(c);
                }
            }
            out
        })
    }

    /// Evaluate the trace formula.
    pub fn trace_formula(&self, d: &DiracOperator) -> Result<TraceFormula> {
        let geom = d.geometry();
        let n = geom.dim();
        let module = d.module();
        let sig = module.signature();
        let eps = sig.eps_value();
        let curv = self.dirac_curvature(d);
        let curvature = par::try_map_nodes(d.len(), |p| {
            let e = geom.frame(p);
            let comps: Vec<((usize, usize), CMat)> = pairs(n)
                .map(|(a, b)| {
                    let mut r = CMat::zeros(d.rank(), d.rank());
                    for i in 0..n {
                        for j in 0..n {
                            let c = e[(a, i)] * e[(b, j)];
                            if c != 0.0 {
                                r.axpy_real(c, &curv[p][i * n + j]);
                            }
                        }
                    }
                    ((a, b), r)
                })
                .collect();
            module.quantized_trace(&EndoForm::two_form(sig, &comps))
        })?;
        let forms: Vec<Vec<CMat>> = par::map_nodes(d.len(), |p| self.dirac_form(d, p));
        let potential: Vec<C64> = (0..d.len())
            .map(|p| {
                let gi = geom.metric().ginv(p);
                let mut t = C64::new(0.0, 0.0);
                for i in 0..n {
                    for j in 0..n {
                        if gi[(i, j)] != 0.0 {
                            t += forms[p][i].matmul(&forms[p][j]).trace() * gi[(i, j)];
                        }
                    }
                }
                -t * eps
            })
            .collect();
        let tr_omega: Vec<Vec<C64>> = forms.iter().map(|f| f.iter().map(|m| m.trace()).collect()).collect();
        let divergence: Vec<C64> = geom
            .codifferential_c(&tr_omega)?
            .into_iter()
            .map(|x| -x * eps)
            .collect();
        let rhs = (0..d.len()).map(|p| curvature[p] + potential[p] + divergence[p]).collect();
        Ok(TraceFormula {
            curvature,
            potential,
            divergence,
            rhs,
        })
    }
}

impl DiracOperator {
    /// `∫ tr V_D √|g| dx`.
    pub fn universal_action(&self, dec: &Decomposition) -> C64 {
        self.geometry().integrate_c(&dec.tr_v)
    }

    /// `∫ (⟨ψ, Dψ⟩_h + tr V_D) √|g| dx`.
    pub fn total_action(&self, dec: &Decomposition, psi: Option<&SectionField>) -> Result<ActionReport> {
        let universal = self.universal_action(dec);
        let fermion = match psi {
            Some(psi) => self.fermion_term(psi)?,
            None => C64::new(0.0, 0.0),
        };
        Ok(ActionReport {
            universal,
            fermion,
            total: universal + fermion,
        })
    }
}
