//! Finite-difference chart geometry.
//!
//! [`Geometry`] bundles a sampled metric with everything derived from it by
//! finite differences: orthonormal frame and coframe, Christoffel symbols,
//! spin-connection coefficients, curvature, the codifferential and the
//! volume integral.

mod grid;
mod metric;
pub mod presets;
mod stencil;

pub use grid::{Axis, ChartGrid, MIN_NODES};
pub use metric::{MetricField, DET_TOL};
pub use stencil::{partial, Stencil, StencilOrder};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::RMat;
use crate::par;
use crate::C64;

#[derive(Clone, Debug)]
pub struct Geometry {
    metric: MetricField,
    order: StencilOrder,
    eta: Vec<f64>,
    /// `E_a^i`, row `a`.
    frame: Vec<RMat>,
    /// `E^a_i`, row `a`.
    coframe: Vec<RMat>,
    /// `Γ^k_ij` at `k n² + i n + j`.
    christoffel: Vec<Vec<f64>>,
    /// `ω_{ab,i}` at `i n² + a n + b`, lowered with `η`.
    spin: Vec<Vec<f64>>,
}

/// Signature-aware Gram–Schmidt of the coordinate basis in axis order.
/// Returns the frame `E_a^i` (row `a`) and the signs `η_aa`.
pub fn orthonormal_frame(g: &RMat) -> Result<(RMat, Vec<f64>)> {
    gram_schmidt(g, 0)
}

fn gram_schmidt(g: &RMat, node: usize) -> Result<(RMat, Vec<f64>)> {
    let n = g.rows();
    let mut frame = RMat::zeros(n, n);
    let mut eta = vec![0.0; n];
    for a in 0..n {
        let mut u = vec![0.0; n];
        u[a] = 1.0;
        for b in 0..a {
            let eb: Vec<f64> = (0..n).map(|i| frame[(b, i)]).collect();
            let c = g.bilinear(&u, &eb) * eta[b];
            for i in 0..n {
                u[i] -= c * eb[i];
            }
        }
        let norm2 = g.bilinear(&u, &u);
        if norm2.abs() < 1e-14 {
            return Err(Error::DegenerateMetric {
                node,
                reason: format!("null direction in Gram-Schmidt at axis {a}"),
            });
        }
        eta[a] = norm2.signum();
        let s = 1.0 / libm::sqrt(norm2.abs());
        for i in 0..n {
            frame[(a, i)] = u[i] * s;
        }
    }
    Ok((frame, eta))
}

impl Geometry {
    pub fn new(metric: MetricField, order: StencilOrder) -> Result<Self> {
        let grid = metric.grid().clone();
        let n = grid.dim();
        let (p, _q) = metric.inertia();
        // Squared operators reach twice the stencil half-width; on a periodic
        // axis that reach must not wrap onto itself.
        let reach = match order {
            StencilOrder::Two => 2,
            StencilOrder::Four => 4,
        };
        if let Some(k) = grid.axes().iter().position(|a| a.periodic && a.nodes <= 2 * reach) {
            return Err(Error::GridTooSmall(format!(
                "periodic axis {k} has {} nodes, need at least {} for {order:?} stencils",
                grid.axis(k).nodes,
                2 * reach + 1
            )));
        }

        let frames = par::try_map_nodes(grid.len(), |node| gram_schmidt(metric.g(node), node))?;
        let eta = frames[0].1.clone();
        let want: Vec<f64> = (0..n).map(|a| if a < p { 1.0 } else { -1.0 }).collect();
        if let Some(node) = frames.iter().position(|f| f.1 != want) {
            return Err(Error::DegenerateMetric {
                node,
                reason: format!(
                    "orthonormal frame signs {:?} are not in (+..+, -..-) order; reorder the axes",
                    frames[node].1
                ),
            });
        }
        let frame: Vec<RMat> = frames.into_iter().map(|f| f.0).collect();
        // The coframe is the inverse transpose: E^a_i E_b^i = δ^a_b.
        let coframe = par::try_map_nodes(grid.len(), |node| {
            frame[node]
                .inverse()
                .map(|inv| inv.transpose())
                .map_err(|_| Error::DegenerateMetric {
                    node,
                    reason: "singular frame".into(),
                })
        })?;

        let christoffel = par::map_nodes(grid.len(), |node| {
            // dg[l][i][j] = ∂_l g_ij
            let mut dg = vec![0.0; n * n * n];
            for l in 0..n {
                let st = Stencil::at(&grid, node, l, order);
                for i in 0..n {
                    for j in 0..n {
                        dg[l * n * n + i * n + j] = st.apply_with(|q| metric.g(q)[(i, j)]);
                    }
                }
            }
            let gi = metric.ginv(node);
            let mut gam = vec![0.0; n * n * n];
            for k in 0..n {
                for i in 0..n {
                    for j in i..n {
                        let mut s = 0.0;
                        for l in 0..n {
                            s += gi[(k, l)]
                                * (dg[i * n * n + j * n + l] + dg[j * n * n + i * n + l]
                                    - dg[l * n * n + i * n + j]);
                        }
                        gam[k * n * n + i * n + j] = 0.5 * s;
                        gam[k * n * n + j * n + i] = 0.5 * s;
                    }
                }
            }
            gam
        });

        let spin = par::map_nodes(grid.len(), |node| {
            let mut out = vec![0.0; n * n * n];
            let e = &frame[node];
            let c = &coframe[node];
            let gam = &christoffel[node];
            for i in 0..n {
                let st = Stencil::at(&grid, node, i, order);
                for b in 0..n {
                    // ∇_i E_b = (∂_i E_b^k + Γ^k_ij E_b^j) ∂_k
                    let mut v = vec![0.0; n];
                    for (k, vk) in v.iter_mut().enumerate() {
                        *vk = st.apply_with(|q| frame[q][(b, k)]);
                        for j in 0..n {
                            *vk += gam[k * n * n + i * n + j] * e[(b, j)];
                        }
                    }
                    for a in 0..n {
                        let upper: f64 = (0..n).map(|k| c[(a, k)] * v[k]).sum();
                        out[i * n * n + a * n + b] = eta[a] * upper;
                    }
                }
            }
            out
        });

        Ok(Self {
            metric,
            order,
            eta,
            frame,
            coframe,
            christoffel,
            spin,
        })
    }

    pub fn grid(&self) -> &ChartGrid {
        self.metric.grid()
    }

    pub fn metric(&self) -> &MetricField {
        &self.metric
    }

    pub fn order(&self) -> StencilOrder {
        self.order
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.grid().dim()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.grid().len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.grid().is_empty()
    }

    /// `η_aa` of the orthonormal frame.
    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    /// `(p, q)`.
    pub fn inertia(&self) -> (usize, usize) {
        self.metric.inertia()
    }

    #[inline]
    pub fn stencil(&self, node: usize, axis: usize) -> Stencil {
        Stencil::at(self.grid(), node, axis, self.order)
    }

    /// Frame `E_a^i`, row `a`.
    pub fn frame(&self, node: usize) -> &RMat {
        &self.frame[node]
    }

    /// Coframe `E^a_i`, row `a`.
    pub fn coframe(&self, node: usize) -> &RMat {
        &self.coframe[node]
    }

    /// `Γ^k_ij`.
    #[inline]
    pub fn christoffel(&self, node: usize, k: usize, i: usize, j: usize) -> f64 {
        let n = self.dim();
        self.christoffel[node][k * n * n + i * n + j]
    }

    pub fn christoffel_at(&self, node: usize) -> &[f64] {
        &self.christoffel[node]
    }

    /// Lowered spin coefficients `ω_{ab,i}` for direction `i` as a row-major
    /// `n×n` slice.
    pub fn spin(&self, node: usize, i: usize) -> &[f64] {
        let n = self.dim();
        &self.spin[node][i * n * n..(i + 1) * n * n]
    }

    /// Largest violation of `E^a g* E^b = η^ab` over all nodes.
    pub fn coframe_orthonormality(&self) -> f64 {
        let n = self.dim();
        par::map_nodes(self.len(), |node| {
            let gi = self.metric.ginv(node);
            let c = &self.coframe[node];
            let mut worst: f64 = 0.0;
            for a in 0..n {
                for b in 0..n {
                    let mut s = 0.0;
                    for i in 0..n {
                        for j in 0..n {
                            s += c[(a, i)] * gi[(i, j)] * c[(b, j)];
                        }
                    }
                    let want = if a == b { self.eta[a] } else { 0.0 };
                    worst = worst.max((s - want).abs());
                }
            }
            worst
        })
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// Ricci tensor `Ric_σν = R^ρ_σρν` at a node.
    pub fn ricci(&self, node: usize) -> RMat {
        let n = self.dim();
        let n3 = n * n * n;
        // dgam[μ][ρ][ν][σ] = ∂_μ Γ^ρ_νσ
        let mut dgam = vec![0.0; n * n3];
        for mu in 0..n {
            let st = self.stencil(node, mu);
            for idx in 0..n3 {
                dgam[mu * n3 + idx] = st.apply_with(|q| self.christoffel[q][idx]);
            }
        }
        let gam = &self.christoffel[node];
        let g = |r: usize, a: usize, b: usize| gam[r * n * n + a * n + b];
        let dg = |m: usize, r: usize, a: usize, b: usize| dgam[m * n3 + r * n * n + a * n + b];
        RMat::from_fn(n, n, |s, nu| {
            let mut acc = 0.0;
            for r in 0..n {
                // R^ρ_σρν with μ = ρ
                acc += dg(r, r, nu, s) - dg(nu, r, r, s);
                for l in 0..n {
                    acc += g(r, r, l) * g(l, nu, s) - g(r, nu, l) * g(l, r, s);
                }
            }
            acc
        })
    }

    /// Scalar curvature at every node.
    pub fn scalar_curvature(&self) -> Vec<f64> {
        let n = self.dim();
        par::map_nodes(self.len(), |node| {
            let ric = self.ricci(node);
            let gi = self.metric.ginv(node);
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    s += gi[(i, j)] * ric[(i, j)];
                }
            }
            s
        })
    }

    /// Coordinate gradient of a scalar field.
    pub fn gradient(&self, f: &[f64]) -> Vec<Vec<f64>> {
        let n = self.dim();
        par::map_nodes(self.len(), |node| {
            (0..n).map(|i| self.stencil(node, i).apply(f)).collect()
        })
    }

    /// `δ_g α = -(1/√|g|) ∂_i(√|g| g^{ij} α_j)` for a one-form given by its
    /// coordinate components at each node.
    pub fn codifferential(&self, alpha: &[Vec<f64>]) -> Result<Vec<f64>> {
        self.check_len(alpha.len())?;
        let n = self.dim();
        let flux: Vec<Vec<f64>> = par::map_nodes(self.len(), |q| {
            let gi = self.metric.ginv(q);
            let s = self.metric.sqrt_det(q);
            (0..n)
                .map(|i| s * (0..n).map(|j| gi[(i, j)] * alpha[q][j]).sum::<f64>())
                .collect()
        });
        Ok(par::map_nodes(self.len(), |p| {
            let div: f64 = (0..n)
                .map(|i| self.stencil(p, i).apply_with(|q| flux[q][i]))
                .sum();
            -div / self.metric.sqrt_det(p)
        }))
    }

    /// Complex variant of [`Geometry::codifferential`].
    pub fn codifferential_c(&self, alpha: &[Vec<C64>]) -> Result<Vec<C64>> {
        self.check_len(alpha.len())?;
        let n = self.dim();
        let flux: Vec<Vec<C64>> = par::map_nodes(self.len(), |q| {
            let gi = self.metric.ginv(q);
            let s = self.metric.sqrt_det(q);
            (0..n)
                .map(|i| (0..n).map(|j| alpha[q][j] * gi[(i, j)]).sum::<C64>() * s)
                .collect()
        });
        Ok(par::map_nodes(self.len(), |p| {
            let div: C64 = (0..n)
                .map(|i| self.stencil(p, i).apply_c(|q| flux[q][i]))
                .sum();
            -div / self.metric.sqrt_det(p)
        }))
    }

    /// `δ_g(dx^k)` at every node.
    pub fn codifferential_of_coordinate(&self, k: usize) -> Vec<f64> {
        let n = self.dim();
        par::map_nodes(self.len(), |p| {
            let div: f64 = (0..n)
                .map(|i| {
                    self.stencil(p, i)
                        .apply_with(|q| self.metric.sqrt_det(q) * self.metric.ginv(q)[(i, k)])
                })
                .sum();
            -div / self.metric.sqrt_det(p)
        })
    }

    /// `∫ f √|g| dx` by the composite trapezoid rule, summed pairwise in node
    /// order.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        let g = self.grid();
        let terms: Vec<f64> = (0..self.len())
            .map(|p| f[p] * self.metric.sqrt_det(p) * g.weight(p))
            .collect();
        par::pairwise_sum(&terms)
    }

    pub fn integrate_c(&self, f: &[C64]) -> C64 {
        let g = self.grid();
        let terms: Vec<C64> = (0..self.len())
            .map(|p| f[p] * (self.metric.sqrt_det(p) * g.weight(p)))
            .collect();
        par::pairwise_sum_c(&terms)
    }

    /// `∫ ⟨α, β⟩ √|g| dx` for coordinate one-forms.
    pub fn integrate_pairing(&self, alpha: &[Vec<f64>], beta: &[Vec<f64>]) -> f64 {
        let n = self.dim();
        let dens: Vec<f64> = (0..self.len())
            .map(|p| {
                let gi = self.metric.ginv(p);
                let mut s = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        s += alpha[p][i] * gi[(i, j)] * beta[p][j];
                    }
                }
                s
            })
            .collect();
        self.integrate(&dens)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.len() {
            return Err(Error::Shape(format!("field of length {len} on {} nodes", self.len())));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn torus(n: usize) -> Geometry {
        let grid = ChartGrid::torus(2, n, 2.0 * PI).unwrap();
        Geometry::new(MetricField::from_fn(grid, |_| RMat::identity(2)).unwrap(), StencilOrder::Two).unwrap()
    }

    #[test]
    fn flat_torus_is_flat() {
        let g = torus(16);
        assert!(g.christoffel_at(0).iter().all(|x| *x == 0.0));
        assert!(g.scalar_curvature().iter().all(|x| x.abs() < 1e-10));
        assert!((g.integrate(&vec![1.0; g.len()]) - 4.0 * PI * PI).abs() < 1e-10);
    }

    #[test]
    fn codifferential_of_gradient_of_sine() {
        let g = torus(128);
        let f: Vec<f64> = (0..g.len()).map(|p| libm::sin(g.grid().coord(p, 0))).collect();
        let df = g.gradient(&f);
        let lap = g.codifferential(&df).unwrap();
        let err = (0..g.len()).map(|p| (lap[p] - f[p]).abs()).fold(0.0, f64::max);
        assert!(err < 1e-3, "{err}");
    }

    #[test]
    fn minkowski_frame_is_identity() {
        let grid = ChartGrid::torus(2, 8, 1.0).unwrap();
        let g = Geometry::new(
            MetricField::from_fn(grid, |_| RMat::from_diagonal(&[1.0, -1.0])).unwrap(),
            StencilOrder::Two,
        )
        .unwrap();
        assert_eq!(g.eta(), [1.0, -1.0]);
        assert_eq!(*g.coframe(3), RMat::identity(2));
    }

    #[test]
    fn wrong_axis_order_rejected() {
        let grid = ChartGrid::torus(2, 8, 1.0).unwrap();
        let r = Geometry::new(
            MetricField::from_fn(grid, |_| RMat::from_diagonal(&[-1.0, 1.0])).unwrap(),
            StencilOrder::Two,
        );
        assert!(r.is_err());
    }
}
