//! Closed-form metrics sampled onto chart grids.

use alloc::vec;
use core::f64::consts::PI;

use super::{Axis, ChartGrid, MetricField};
use crate::error::Result;
use crate::linalg::RMat;

/// Constant metric `diag(+1×p, -1×q)` on the torus `[0, length)ⁿ`.
pub fn flat_torus(p: usize, q: usize, nodes: usize, length: f64) -> Result<MetricField> {
    let grid = ChartGrid::torus(p + q, nodes, length)?;
    let eta: alloc::vec::Vec<f64> = (0..p + q).map(|a| if a < p { 1.0 } else { -1.0 }).collect();
    MetricField::from_fn(grid, move |_| RMat::from_diagonal(&eta))
}

/// Constant metric `diag(+1×p, -1×q)` on the closed box `[start, end]ⁿ`.
pub fn flat_patch(p: usize, q: usize, nodes: usize, start: f64, end: f64) -> Result<MetricField> {
    let grid = ChartGrid::new((0..p + q).map(|_| Axis::closed(nodes, start, end)).collect())?;
    let eta: alloc::vec::Vec<f64> = (0..p + q).map(|a| if a < p { 1.0 } else { -1.0 }).collect();
    MetricField::from_fn(grid, move |_| RMat::from_diagonal(&eta))
}

/// Round sphere of radius `r` on the polar-cap chart
/// `θ ∈ [θ₀, π − θ₀]`, `φ ∈ [0, 2π)`.
pub fn sphere_cap(radius: f64, theta0: f64, n_theta: usize, n_phi: usize) -> Result<MetricField> {
    let grid = ChartGrid::new(vec![
        Axis::closed(n_theta, theta0, PI - theta0),
        Axis::periodic(n_phi, 0.0, 2.0 * PI),
    ])?;
    MetricField::from_fn(grid, move |x| {
        let s = libm::sin(x[0]);
        RMat::from_diagonal(&[radius * radius, radius * radius * s * s])
    })
}

/// Hyperbolic upper half-plane `(dx² + dy²)/y²` with `x` periodic of
/// period `width` and `y ∈ [y0, y1]`. Axis order is `(x, y)`.
pub fn hyperbolic(width: f64, y0: f64, y1: f64, nx: usize, ny: usize) -> Result<MetricField> {
    let grid = ChartGrid::new(vec![Axis::periodic(nx, 0.0, width), Axis::closed(ny, y0, y1)])?;
    MetricField::from_fn(grid, |x| {
        let w = 1.0 / (x[1] * x[1]);
        RMat::from_diagonal(&[w, w])
    })
}

/// `S²(r) × S¹(ρ)` on a polar-cap chart times a periodic circle.
pub fn sphere_times_circle(radius: f64, circle: f64, theta0: f64, nodes: usize) -> Result<MetricField> {
    let grid = ChartGrid::new(vec![
        Axis::closed(nodes, theta0, PI - theta0),
        Axis::periodic(nodes, 0.0, 2.0 * PI),
        Axis::periodic(nodes, 0.0, 2.0 * PI),
    ])?;
    MetricField::from_fn(grid, move |x| {
        let s = libm::sin(x[0]);
        RMat::from_diagonal(&[radius * radius, radius * radius * s * s, circle * circle])
    })
}

/// Area of the zone `θ ∈ [θ₀, π − θ₀]` on the sphere of radius `r`.
pub fn zone_area(radius: f64, theta0: f64) -> f64 {
    2.0 * PI * radius * radius * (libm::cos(theta0) - libm::cos(PI - theta0))
}
