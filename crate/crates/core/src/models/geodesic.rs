//! Discrete curve energy on a target manifold, its minimization, and the
//! geodesic-equation oracles used to check minimizers.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{solve_block_tridiagonal, RMat};
use crate::par;

use super::target::{from_cartesian, to_cartesian, TargetMetric};

/// Points of a curve sampled at `t_j = j/N`, `j = 0..=N`.
pub type Path = Vec<Vec<f64>>;

fn check_path(target: &TargetMetric, path: &[Vec<f64>]) -> Result<()> {
    if path.len() < 3 {
        return Err(Error::TooFewNodes(format!("path needs at least 3 nodes, got {}", path.len())));
    }
    let n = target.dim();
    if let Some(j) = path.iter().position(|x| x.len() != n) {
        return Err(Error::Shape(format!("path node {j} has {} coordinates, target has {n}", path[j].len())));
    }
    Ok(())
}

fn midpoint(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect()
}

fn diff(a: &[f64], b: &[f64]) -> Vec<f64> {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

/// `∫₀¹ g₂(φ̇, φ̇) dt` with segment velocities and the metric at segment
/// midpoints.
pub fn geodesic_energy(target: &TargetMetric, path: &[Vec<f64>]) -> Result<f64> {
    check_path(target, path)?;
    let dt = 1.0 / (path.len() - 1) as f64;
    let seg: Vec<f64> = path
        .windows(2)
        .map(|w| {
            let v = diff(&w[0], &w[1]);
            target.metric(&midpoint(&w[0], &w[1])).bilinear(&v, &v) / dt
        })
        .collect();
    Ok(par::pairwise_sum(&seg))
}

/// Gradient of [`geodesic_energy`] with respect to the interior nodes.
pub fn energy_gradient(target: &TargetMetric, path: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    check_path(target, path)?;
    let n = target.dim();
    let dt = 1.0 / (path.len() - 1) as f64;
    // Per segment k: (∂e_k/∂x_k, ∂e_k/∂x_{k+1}).
    let segs: Vec<(Vec<f64>, Vec<f64>)> = par::map_nodes(path.len() - 1, |k| {
        let m = midpoint(&path[k], &path[k + 1]);
        let v = diff(&path[k], &path[k + 1]);
        let g = target.metric(&m);
        let gv = g.mul_vec(&v);
        let dg = target.metric_derivative(&m);
        let half: Vec<f64> = (0..n).map(|mu| 0.5 * dg[mu].bilinear(&v, &v)).collect();
        let left = (0..n).map(|mu| (-2.0 * gv[mu] + half[mu]) / dt).collect();
        let right = (0..n).map(|mu| (2.0 * gv[mu] + half[mu]) / dt).collect();
        (left, right)
    });
    Ok((1..path.len() - 1)
        .map(|j| (0..n).map(|mu| segs[j - 1].1[mu] + segs[j].0[mu]).collect())
        .collect())
}

/// Frozen-metric Hessian of the energy as a block tridiagonal system.
fn preconditioner(target: &TargetMetric, path: &[Vec<f64>]) -> (Vec<RMat>, Vec<RMat>, Vec<RMat>) {
    let dt = 1.0 / (path.len() - 1) as f64;
    let g: Vec<RMat> = path.windows(2).map(|w| target.metric(&midpoint(&w[0], &w[1]))).collect();
    let m = path.len() - 2;
    let mut diag = Vec::with_capacity(m);
    let mut off = Vec::with_capacity(m.saturating_sub(1));
    for j in 1..=m {
        let mut d = g[j - 1].clone();
        d.axpy(1.0, &g[j]);
        diag.push(d.scale(2.0 / dt));
        if j < m {
            off.push(g[j].scale(-2.0 / dt));
        }
    }
    (off.clone(), diag, off)
}

/// Settings of [`geodesic_minimize`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DescentOptions {
    /// Stop once the gradient sup-norm drops below this.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Armijo sufficient-decrease constant.
    pub armijo: f64,
}

impl Default for DescentOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            max_iterations: 100_000,
            armijo: 1e-4,
        }
    }
}

/// Conditions worth flagging on a minimizer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GeodesicWarning {
    /// Endpoints close to antipodal: the minimizing great circle is nearly
    /// non-unique.
    NearAntipodal { distance: f64 },
}

/// Result of [`geodesic_minimize`]. When `converged` is false `path` is the
/// best iterate found.
#[derive(Clone, Debug)]
pub struct GeodesicResult {
    pub path: Path,
    pub energy: f64,
    pub iterations: usize,
    pub converged: bool,
    pub gradient_norm: f64,
    pub warning: Option<GeodesicWarning>,
}

fn sup_norm(v: &[Vec<f64>]) -> f64 {
    v.iter().flatten().fold(0.0, |m: f64, x| m.max(x.abs()))
}

/// Coordinate straight line between two points with `nodes` samples.
pub fn straight_line(a: &[f64], b: &[f64], nodes: usize) -> Path {
    let n = nodes.max(2) - 1;
    (0..=n)
        .map(|j| {
            let t = j as f64 / n as f64;
            a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
        })
        .collect()
}

/// Minimize the discrete energy over interior nodes with the endpoints of
/// `init` held fixed: preconditioned gradient descent with Armijo
/// backtracking.
pub fn geodesic_minimize(target: &TargetMetric, init: Path, opts: &DescentOptions) -> Result<GeodesicResult> {
    check_path(target, &init)?;
    let mut path = init;
    let last = path.len() - 1;
    let warning = match (target, target.distance(&path[0], &path[last])) {
        (TargetMetric::Sphere { radius }, Some(d)) if d / radius > core::f64::consts::PI - 0.05 => {
            Some(GeodesicWarning::NearAntipodal { distance: d })
        }
        _ => None,
    };
    let mut energy = geodesic_energy(target, &path)?;
    let mut grad = energy_gradient(target, &path)?;
    let mut gnorm = sup_norm(&grad);
    let mut iterations = 0;
    while gnorm >= opts.tolerance && iterations < opts.max_iterations {
        iterations += 1;
        let (lo, d, up) = preconditioner(target, &path);
        let step = solve_block_tridiagonal(&lo, &d, &up, &grad)?;
        let slope: f64 = grad.iter().flatten().zip(step.iter().flatten()).map(|(a, b)| a * b).sum();
        // The preconditioner is positive definite only for Riemannian
        // targets; fall back to the raw gradient otherwise.
        let step = if slope > 0.0 { step } else { grad.clone() };
        let slope: f64 = grad.iter().flatten().zip(step.iter().flatten()).map(|(a, b)| a * b).sum();
        let slack = 1e-14 * energy.abs().max(1.0);
        let mut alpha = 1.0;
        let mut accepted = None;
        while alpha > 1e-12 {
            let mut trial = path.clone();
            for (x, s) in trial[1..last].iter_mut().zip(&step) {
                for (xi, si) in x.iter_mut().zip(s) {
                    *xi -= alpha * si;
                }
            }
            let e = geodesic_energy(target, &trial)?;
            if e <= energy - opts.armijo * alpha * slope + slack {
                accepted = Some((trial, e));
                break;
            }
            alpha *= 0.5;
        }
        let Some((trial, e)) = accepted else {
            break;
        };
        path = trial;
        energy = e;
        grad = energy_gradient(target, &path)?;
        gnorm = sup_norm(&grad);
    }
    Ok(GeodesicResult {
        path,
        energy,
        iterations,
        converged: gnorm < opts.tolerance,
        gradient_norm: gnorm,
        warning,
    })
}

/// RK4 integration of `ẍ^k = −Γ^k_ij ẋ^i ẋ^j` on `[0, 1]` with `steps`
/// steps, sampled at every step.
pub fn geodesic_ode(target: &TargetMetric, x0: &[f64], v0: &[f64], steps: usize) -> Result<Path> {
    let n = target.dim();
    if x0.len() != n || v0.len() != n {
        return Err(Error::Shape(format!("initial data must have {n} coordinates")));
    }
    if steps == 0 {
        return Err(Error::TooFewNodes("geodesic ODE needs at least one step".into()));
    }
    let h = 1.0 / steps as f64;
    let rhs = |s: &[f64]| -> Vec<f64> {
        let (x, v) = s.split_at(n);
        let gam = target.christoffel(x);
        let mut out = v.to_vec();
        for k in 0..n {
            let mut a = 0.0;
            for i in 0..n {
                for j in 0..n {
                    a -= gam[k * n * n + i * n + j] * v[i] * v[j];
                }
            }
            out.push(a);
        }
        out
    };
    let axpy = |s: &[f64], c: f64, k: &[f64]| -> Vec<f64> { s.iter().zip(k).map(|(a, b)| a + c * b).collect() };
    let mut s: Vec<f64> = x0.iter().chain(v0).copied().collect();
    let mut out = vec![x0.to_vec()];
    for _ in 0..steps {
        let k1 = rhs(&s);
        let k2 = rhs(&axpy(&s, h / 2.0, &k1));
        let k3 = rhs(&axpy(&s, h / 2.0, &k2));
        let k4 = rhs(&axpy(&s, h, &k3));
        for i in 0..2 * n {
            s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        out.push(s[..n].to_vec());
    }
    Ok(out)
}

/// Initial coordinate velocity of the constant-speed great circle from `a`
/// to `b` on the unit sphere, parametrized by `[0, 1]`.
pub fn great_circle_velocity(a: &[f64], b: &[f64]) -> Result<[f64; 2]> {
    let p = to_cartesian(a);
    let q = to_cartesian(b);
    let c = (p[0] * q[0] + p[1] * q[1] + p[2] * q[2]).clamp(-1.0, 1.0);
    let d = libm::acos(c);
    let w: Vec<f64> = (0..3).map(|i| q[i] - c * p[i]).collect();
    let wn = libm::sqrt(w.iter().map(|x| x * x).sum());
    if wn < 1e-14 {
        return Err(Error::Invalid("great circle through coincident or antipodal points is not unique".into()));
    }
    let u: Vec<f64> = w.iter().map(|x| x / wn * d).collect();
    // Pull the ambient velocity back through the chart differential.
    let (st, ct) = (libm::sin(a[0]), libm::cos(a[0]));
    let (sp, cp) = (libm::sin(a[1]), libm::cos(a[1]));
    let e_th = [ct * cp, ct * sp, -st];
    let e_ph = [-sp, cp, 0.0];
    let dth = (0..3).map(|i| u[i] * e_th[i]).sum();
    let dph = (0..3).map(|i| u[i] * e_ph[i]).sum::<f64>() / st;
    Ok([dth, dph])
}

/// Constant-speed great circle from `a` to `b` on the unit sphere sampled at
/// `nodes` points (spherical linear interpolation).
pub fn great_circle(a: &[f64], b: &[f64], nodes: usize) -> Result<Path> {
    let p = to_cartesian(a);
    let q = to_cartesian(b);
    let c = (p[0] * q[0] + p[1] * q[1] + p[2] * q[2]).clamp(-1.0, 1.0);
    let d = libm::acos(c);
    let sd = libm::sin(d);
    if sd < 1e-14 {
        return Err(Error::Invalid("great circle through coincident or antipodal points is not unique".into()));
    }
    let n = nodes.max(2) - 1;
    let mut near = a[1];
    Ok((0..=n)
        .map(|j| {
            let t = j as f64 / n as f64;
            let wa = libm::sin((1.0 - t) * d) / sd;
            let wb = libm::sin(t * d) / sd;
            let v = [wa * p[0] + wb * q[0], wa * p[1] + wb * q[1], wa * p[2] + wb * q[2]];
            let x = from_cartesian(v, near);
            near = x[1];
            x.to_vec()
        })
        .collect())
}

/// Endpoints at latitude `lat` on the unit sphere, symmetric about `φ = 0`,
/// at great-circle distance `d`.
pub fn equal_latitude_endpoints(lat: f64, d: f64) -> ([f64; 2], [f64; 2]) {
    let s2 = libm::sin(lat) * libm::sin(lat);
    let c2 = libm::cos(lat) * libm::cos(lat);
    let dphi = libm::acos(((libm::cos(d) - s2) / c2).clamp(-1.0, 1.0));
    let th = core::f64::consts::FRAC_PI_2 - lat;
    ([th, -dphi / 2.0], [th, dphi / 2.0])
}

/// Largest coordinate distance between two paths of equal length.
pub fn path_distance(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Shape(format!("paths of {} and {} nodes", a.len(), b.len())));
    }
    Ok(a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).abs()))
        .fold(0.0, f64::max))
}
