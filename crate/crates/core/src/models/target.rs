//! Closed-form target manifolds for maps `φ: M₁ → M₂`.

use alloc::vec;
use alloc::vec::Vec;

use crate::clifford::{Sign, Signature};
use crate::error::{Error, Result};
use crate::geometry::orthonormal_frame;
use crate::linalg::RMat;

/// Target metric `g₂` in a global chart.
#[derive(Clone, Debug, PartialEq)]
pub enum TargetMetric {
    /// `diag(+1×p, −1×q)`.
    Flat { p: usize, q: usize },
    /// Round sphere of the given radius in `(θ, φ)` coordinates.
    Sphere { radius: f64 },
}

impl TargetMetric {
    pub fn unit_sphere() -> Self {
        TargetMetric::Sphere { radius: 1.0 }
    }

    pub fn dim(&self) -> usize {
        match self {
            TargetMetric::Flat { p, q } => p + q,
            TargetMetric::Sphere { .. } => 2,
        }
    }

    pub fn signature(&self, eps: Sign) -> Result<Signature> {
        match self {
            TargetMetric::Flat { p, q } => Signature::new(*p, *q, eps),
            TargetMetric::Sphere { .. } => Signature::new(2, 0, eps),
        }
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::Shape(alloc::format!(
                "target point has {} coordinates, target dimension is {}",
                x.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// `g₂(x)`.
    pub fn metric(&self, x: &[f64]) -> RMat {
        match self {
            TargetMetric::Flat { p, q } => {
                RMat::from_diagonal(&(0..p + q).map(|a| if a < *p { 1.0 } else { -1.0 }).collect::<Vec<_>>())
            }
            TargetMetric::Sphere { radius } => {
                let r2 = radius * radius;
                let s = libm::sin(x[0]);
                RMat::from_diagonal(&[r2, r2 * s * s])
            }
        }
    }

    /// `∂_k g₂(x)` for each coordinate `k`.
    pub fn metric_derivative(&self, x: &[f64]) -> Vec<RMat> {
        let n = self.dim();
        match self {
            TargetMetric::Flat { .. } => vec![RMat::zeros(n, n); n],
            TargetMetric::Sphere { radius } => {
                let r2 = radius * radius;
                let s2 = libm::sin(2.0 * x[0]);
                vec![RMat::from_diagonal(&[0.0, r2 * s2]), RMat::zeros(2, 2)]
            }
        }
    }

    /// `Γ^k_ij(x)` at `k n² + i n + j`.
    pub fn christoffel(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut gam = vec![0.0; n * n * n];
        if let TargetMetric::Sphere { .. } = self {
            let (s, c) = (libm::sin(x[0]), libm::cos(x[0]));
            // Γ^θ_φφ = −sinθ cosθ, Γ^φ_θφ = Γ^φ_φθ = cotθ
            gam[3] = -s * c;
            gam[5] = c / s;
            gam[6] = c / s;
        }
        gam
    }

    /// Orthonormal frame `E_c^μ` (row `c`) and coframe `E^c_μ` at `x`.
    pub fn frame(&self, x: &[f64]) -> Result<(RMat, RMat)> {
        self.check(x)?;
        let (e, _) = orthonormal_frame(&self.metric(x))?;
        let co = e.inverse()?.transpose();
        Ok((e, co))
    }

    /// Spin connection `ω_{cd,μ}(x)` of the Gram–Schmidt frame, at
    /// `μ n² + c n + d`, lowered with `η`.
    pub fn spin(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut out = vec![0.0; n * n * n];
        if let TargetMetric::Sphere { .. } = self {
            // e₁ = ∂_θ / r, e₂ = ∂_φ / (r sinθ): ω_{12,φ} = −cosθ.
            let c = libm::cos(x[0]);
            out[4 + 1] = -c;
            out[4 + 2] = c;
        }
        out
    }

    /// `g₂(u, v)` at `x`.
    pub fn inner(&self, x: &[f64], u: &[f64], v: &[f64]) -> f64 {
        self.metric(x).bilinear(u, v)
    }

    /// Geodesic distance when known in closed form.
    pub fn distance(&self, x: &[f64], y: &[f64]) -> Option<f64> {
        match self {
            TargetMetric::Flat { p, q } if *q == 0 => {
                let _ = p;
                Some(libm::sqrt(x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum()))
            }
            TargetMetric::Flat { .. } => None,
            TargetMetric::Sphere { radius } => {
                let a = to_cartesian(x);
                let b = to_cartesian(y);
                let c = (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]).clamp(-1.0, 1.0);
                Some(radius * libm::acos(c))
            }
        }
    }
}

/// Unit vector in `ℝ³` for sphere coordinates `(θ, φ)`.
pub fn to_cartesian(x: &[f64]) -> [f64; 3] {
    let (st, ct) = (libm::sin(x[0]), libm::cos(x[0]));
    [st * libm::cos(x[1]), st * libm::sin(x[1]), ct]
}

/// Sphere coordinates `(θ, φ)` of a unit vector, with `φ` continued from
/// `near` so paths do not jump across the branch cut.
pub fn from_cartesian(v: [f64; 3], near: f64) -> [f64; 2] {
    let th = libm::acos(v[2].clamp(-1.0, 1.0));
    let mut ph = libm::atan2(v[1], v[0]);
    let two_pi = 2.0 * core::f64::consts::PI;
    while ph - near > core::f64::consts::PI {
        ph -= two_pi;
    }
    while near - ph > core::f64::consts::PI {
        ph += two_pi;
    }
    [th, ph]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{presets, Geometry, StencilOrder};

    #[test]
    fn sphere_spin_matches_grid_geometry() {
        let g = Geometry::new(presets::sphere_cap(1.0, 0.4, 129, 32).unwrap(), StencilOrder::Four).unwrap();
        let t = TargetMetric::unit_sphere();
        for p in (0..g.len()).step_by(37) {
            let x = g.grid().coords(p);
            if !g.grid().is_interior(p, 3) {
                continue;
            }
            let a = t.spin(&x);
            for i in 0..2 {
                for k in 0..4 {
                    assert!((a[i * 4 + k] - g.spin(p, i)[k]).abs() < 1e-4);
                }
            }
            let gam = t.christoffel(&x);
            for (k, v) in gam.iter().enumerate() {
                assert!((v - g.christoffel_at(p)[k]).abs() < 1e-4);
            }
        }
    }

    #[test]
    fn sphere_distance() {
        let t = TargetMetric::unit_sphere();
        let d = t.distance(&[0.5, 0.0], &[0.5 + 0.7, 0.0]).unwrap();
        assert!((d - 0.7).abs() < 1e-12);
        let v = to_cartesian(&[1.0, 3.0]);
        let x = from_cartesian(v, 3.0);
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 3.0).abs() < 1e-12);
    }
}
