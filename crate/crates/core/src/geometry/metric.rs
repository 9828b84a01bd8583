use alloc::format;
use alloc::vec::Vec;

use super::ChartGrid;
use crate::error::{Error, Result};
use crate::linalg::RMat;
use crate::par;

/// Threshold below which `|det g|` counts as degenerate.
pub const DET_TOL: f64 = 1e-12;

/// Node-wise metric with cached inverse and volume density.
#[derive(Clone, Debug)]
pub struct MetricField {
    grid: ChartGrid,
    g: Vec<RMat>,
    ginv: Vec<RMat>,
    sqrt_det: Vec<f64>,
    p: usize,
    q: usize,
}

impl MetricField {
    /// Sample a closed-form metric at every node. The sample is symmetrized
    /// so that symmetry holds exactly.
    pub fn from_fn<F>(grid: ChartGrid, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> RMat + Sync + Send,
    {
        let n = grid.dim();
        let g = par::map_nodes(grid.len(), |p| {
            let m = f(&grid.coords(p));
            RMat::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]))
        });
        Self::from_samples(grid, g)
    }

    /// Metric from raw node-major samples. Samples must be symmetric.
    pub fn from_samples(grid: ChartGrid, g: Vec<RMat>) -> Result<Self> {
        let n = grid.dim();
        if g.len() != grid.len() {
            return Err(Error::Shape(format!(
                "{} metric samples on a grid of {} nodes",
                g.len(),
                grid.len()
            )));
        }
        for (node, m) in g.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Shape(format!(
                    "metric at node {node} is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_symmetric() {
                return Err(Error::DegenerateMetric {
                    node,
                    reason: "not symmetric".into(),
                });
            }
        }
        let info = par::try_map_nodes(grid.len(), |node| {
            let m = &g[node];
            let det = m.det();
            if !(det.abs() > DET_TOL) {
                return Err(Error::DegenerateMetric {
                    node,
                    reason: format!("|det g| = {:e}", det.abs()),
                });
            }
            let inv = m.inverse().map_err(|_| Error::DegenerateMetric {
                node,
                reason: "not invertible".into(),
            })?;
            let pos = m.symmetric_eigenvalues().iter().filter(|e| **e > 0.0).count();
            Ok((inv, libm::sqrt(det.abs()), pos))
        })?;
        let p = info[0].2;
        if let Some(node) = info.iter().position(|x| x.2 != p) {
            return Err(Error::DegenerateMetric {
                node,
                reason: format!("signature changes: {} positive directions, expected {p}", info[node].2),
            });
        }
        let mut ginv = Vec::with_capacity(g.len());
        let mut sqrt_det = Vec::with_capacity(g.len());
        for (inv, s, _) in info {
            ginv.push(inv);
            sqrt_det.push(s);
        }
        Ok(Self {
            grid,
            g,
            ginv,
            sqrt_det,
            p,
            q: n - p,
        })
    }

    pub fn grid(&self) -> &ChartGrid {
        &self.grid
    }

    #[inline]
    pub fn g(&self, node: usize) -> &RMat {
        &self.g[node]
    }

    #[inline]
    pub fn ginv(&self, node: usize) -> &RMat {
        &self.ginv[node]
    }

    #[inline]
    pub fn sqrt_det(&self, node: usize) -> f64 {
        self.sqrt_det[node]
    }

    /// `(p, q)` inertia.
    pub fn inertia(&self) -> (usize, usize) {
        (self.p, self.q)
    }
}
