//! First-derivative finite-difference stencils.

use alloc::vec::Vec;

use super::ChartGrid;
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StencilOrder {
    Two,
    Four,
}

impl StencilOrder {
    pub fn value(self) -> usize {
        match self {
            StencilOrder::Two => 2,
            StencilOrder::Four => 4,
        }
    }

    pub fn from_value(v: usize) -> Result<Self> {
        match v {
            2 => Ok(StencilOrder::Two),
            4 => Ok(StencilOrder::Four),
            _ => Err(Error::Invalid(alloc::format!("stencil order must be 2 or 4, got {v}"))),
        }
    }
}

const C2: [f64; 3] = [-0.5, 0.0, 0.5];
const C4: [f64; 5] = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];
const EDGE2: [f64; 3] = [-1.5, 2.0, -0.5];
const EDGE4_0: [f64; 5] = [-25.0 / 12.0, 4.0, -3.0, 4.0 / 3.0, -0.25];
const EDGE4_1: [f64; 5] = [-0.25, -5.0 / 6.0, 1.5, -0.5, 1.0 / 12.0];

/// Nodes and weights of `∂_axis` at a node; at most five entries.
#[derive(Clone, Copy, Debug)]
pub struct Stencil {
    entries: [(usize, f64); 5],
    len: usize,
}

impl Stencil {
    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries[..self.len]
    }

    /// Build the stencil for `∂/∂x^axis` at `node`.
    pub fn at(grid: &ChartGrid, node: usize, axis: usize, order: StencilOrder) -> Self {
        let ax = grid.axis(axis);
        let h = ax.spacing;
        let i = grid.index_along(node, axis);
        let n = ax.nodes;
        let mut s = Stencil {
            entries: [(0, 0.0); 5],
            len: 0,
        };
        let push = |off: isize, w: f64, s: &mut Stencil| {
            if w != 0.0 {
                let q = grid.shift(node, axis, off).expect("stencil inside grid");
                s.entries[s.len] = (q, w / h);
                s.len += 1;
            }
        };
        match order {
            StencilOrder::Two => {
                if ax.periodic || (i >= 1 && i + 1 < n) {
                    for (k, w) in C2.iter().enumerate() {
                        push(k as isize - 1, *w, &mut s);
                    }
                } else if i == 0 {
                    for (k, w) in EDGE2.iter().enumerate() {
                        push(k as isize, *w, &mut s);
                    }
                } else {
                    for (k, w) in EDGE2.iter().enumerate() {
                        push(-(k as isize), -*w, &mut s);
                    }
                }
            }
            StencilOrder::Four => {
                if ax.periodic || (i >= 2 && i + 2 < n) {
                    for (k, w) in C4.iter().enumerate() {
                        push(k as isize - 2, *w, &mut s);
                    }
                } else if i == 0 {
                    for (k, w) in EDGE4_0.iter().enumerate() {
                        push(k as isize, *w, &mut s);
                    }
                } else if i == 1 {
                    for (k, w) in EDGE4_1.iter().enumerate() {
                        push(k as isize - 1, *w, &mut s);
                    }
                } else if i + 1 == n {
                    for (k, w) in EDGE4_0.iter().enumerate() {
                        push(-(k as isize), -*w, &mut s);
                    }
                } else {
                    for (k, w) in EDGE4_1.iter().enumerate() {
                        push(1 - k as isize, -*w, &mut s);
                    }
                }
            }
        }
        s
    }

    #[inline]
    pub fn apply(&self, f: &[f64]) -> f64 {
        self.entries().iter().map(|(q, w)| w * f[*q]).sum()
    }

    #[inline]
    pub fn apply_with(&self, f: impl Fn(usize) -> f64) -> f64 {
        self.entries().iter().map(|(q, w)| w * f(*q)).sum()
    }

    pub fn apply_c(&self, f: impl Fn(usize) -> C64) -> C64 {
        self.entries().iter().map(|(q, w)| f(*q) * *w).sum()
    }

    /// Apply to a matrix-valued field given pointwise.
    pub fn apply_mat(&self, f: impl Fn(usize) -> CMat) -> CMat {
        let mut it = self.entries().iter();
        let (q0, w0) = it.next().expect("non-empty stencil");
        let mut out = f(*q0).scale_real(*w0);
        for (q, w) in it {
            out.axpy_real(*w, &f(*q));
        }
        out
    }
}

/// `∂f/∂x^axis` at every node.
pub fn partial(grid: &ChartGrid, f: &[f64], axis: usize, order: StencilOrder) -> Result<Vec<f64>> {
    if f.len() != grid.len() {
        return Err(Error::Shape(alloc::format!(
            "field of length {} on a grid of {} nodes",
            f.len(),
            grid.len()
        )));
    }
    if axis >= grid.dim() {
        return Err(Error::Invalid(alloc::format!("axis {axis} on a {}-d grid", grid.dim())));
    }
    Ok(crate::par::map_nodes(grid.len(), |p| Stencil::at(grid, p, axis, order).apply(f)))
}
