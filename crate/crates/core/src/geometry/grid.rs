use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Minimum node count per axis; the order-4 stencils need five points.
pub const MIN_NODES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub nodes: usize,
    pub origin: f64,
    pub spacing: f64,
    pub periodic: bool,
}

impl Axis {
    /// `nodes` points covering `[origin, origin + length)` with wrap-around.
    pub fn periodic(nodes: usize, origin: f64, length: f64) -> Self {
        Self {
            nodes,
            origin,
            spacing: length / nodes as f64,
            periodic: true,
        }
    }

    /// `nodes` points covering `[start, end]`, endpoints included.
    pub fn closed(nodes: usize, start: f64, end: f64) -> Self {
        Self {
            nodes,
            origin: start,
            spacing: (end - start) / (nodes.max(2) - 1) as f64,
            periodic: false,
        }
    }

    /// Coordinate extent covered by the axis.
    pub fn length(&self) -> f64 {
        if self.periodic {
            self.spacing * self.nodes as f64
        } else {
            self.spacing * (self.nodes - 1) as f64
        }
    }
}

/// Rectangular chart grid. Nodes are numbered lexicographically with axis 0
/// slowest.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartGrid {
    axes: Vec<Axis>,
    strides: Vec<usize>,
    len: usize,
}

impl ChartGrid {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidGrid("no axes".into()));
        }
        for (k, ax) in axes.iter().enumerate() {
            if ax.nodes < MIN_NODES {
                return Err(Error::GridTooSmall(format!(
                    "axis {k} has {} nodes, need at least {MIN_NODES}",
                    ax.nodes
                )));
            }
            if !(ax.spacing > 0.0) || !ax.spacing.is_finite() {
                return Err(Error::InvalidGrid(format!("axis {k} spacing {}", ax.spacing)));
            }
        }
        let mut strides = alloc::vec![1; axes.len()];
        for k in (0..axes.len() - 1).rev() {
            strides[k] = strides[k + 1] * axes[k + 1].nodes;
        }
        let len = strides[0] * axes[0].nodes;
        Ok(Self { axes, strides, len })
    }

    /// Fully periodic grid on `[0, L)ⁿ` with `nodes` points per axis.
    pub fn torus(dim: usize, nodes: usize, length: f64) -> Result<Self> {
        Self::new((0..dim).map(|_| Axis::periodic(nodes, 0.0, length)).collect())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn axis(&self, k: usize) -> &Axis {
        &self.axes[k]
    }

    pub fn is_periodic(&self) -> bool {
        self.axes.iter().all(|a| a.periodic)
    }

    #[inline]
    pub fn index_along(&self, node: usize, axis: usize) -> usize {
        (node / self.strides[axis]) % self.axes[axis].nodes
    }

    pub fn multi_index(&self, node: usize) -> Vec<usize> {
        (0..self.dim()).map(|k| self.index_along(node, k)).collect()
    }

    pub fn node_at(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.strides).map(|(i, s)| i * s).sum()
    }

    #[inline]
    pub fn coord(&self, node: usize, axis: usize) -> f64 {
        let ax = &self.axes[axis];
        ax.origin + ax.spacing * self.index_along(node, axis) as f64
    }

    pub fn coords(&self, node: usize) -> Vec<f64> {
        (0..self.dim()).map(|k| self.coord(node, k)).collect()
    }

    /// Neighbour `offset` steps along `axis`, wrapping on periodic axes.
    pub fn shift(&self, node: usize, axis: usize, offset: isize) -> Option<usize> {
        let ax = &self.axes[axis];
        let i = self.index_along(node, axis) as isize;
        let j = i + offset;
        let j = if ax.periodic {
            j.rem_euclid(ax.nodes as isize)
        } else if j < 0 || j >= ax.nodes as isize {
            return None;
        } else {
            j
        };
        Some((node as isize + (j - i) * self.strides[axis] as isize) as usize)
    }

    /// Coordinate displacement from `from` to `to` along `axis`, unwrapped to
    /// the nearest image on periodic axes.
    pub fn displacement(&self, from: usize, to: usize, axis: usize) -> f64 {
        let ax = &self.axes[axis];
        let mut d = self.index_along(to, axis) as isize - self.index_along(from, axis) as isize;
        if ax.periodic {
            let n = ax.nodes as isize;
            if d > n / 2 {
                d -= n;
            } else if d < -n / 2 {
                d += n;
            }
        }
        d as f64 * ax.spacing
    }

    /// True if the node is at least `margin` steps from every non-periodic
    /// edge.
    pub fn is_interior(&self, node: usize, margin: usize) -> bool {
        (0..self.dim()).all(|k| {
            let ax = &self.axes[k];
            ax.periodic || {
                let i = self.index_along(node, k);
                i >= margin && i + margin < ax.nodes
            }
        })
    }

    /// Quadrature weight of a node: the cell volume, halved at each
    /// non-periodic boundary (composite trapezoid rule).
    pub fn weight(&self, node: usize) -> f64 {
        let mut w = 1.0;
        for (k, ax) in self.axes.iter().enumerate() {
            w *= ax.spacing;
            if !ax.periodic {
                let i = self.index_along(node, k);
                if i == 0 || i + 1 == ax.nodes {
                    w *= 0.5;
                }
            }
        }
        w
    }

    /// Same grid with each axis refined to `nodes` points.
    pub fn resized(&self, nodes: usize) -> Result<Self> {
        Self::new(
            self.axes
                .iter()
                .map(|ax| {
                    if ax.periodic {
                        Axis::periodic(nodes, ax.origin, ax.length())
                    } else {
                        Axis::closed(nodes, ax.origin, ax.origin + ax.length())
                    }
                })
                .collect(),
        )
    }
}
