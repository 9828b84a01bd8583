use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::RMat;

/// `v ↦ v♭`, lowering with `g`.
pub fn flat(v: &[f64], g: &RMat) -> Result<Vec<f64>> {
    if g.rows() != v.len() || g.cols() != v.len() {
        return Err(Error::Shape(alloc::format!(
            "vector of length {} against a {}x{} metric",
            v.len(),
            g.rows(),
            g.cols()
        )));
    }
    if g.det() == 0.0 {
        return Err(Error::Singular("metric".into()));
    }
    Ok(g.mul_vec(v))
}

/// `α ↦ α♯`, raising with `g⁻¹`.
pub fn sharp(alpha: &[f64], g: &RMat) -> Result<Vec<f64>> {
    if g.rows() != alpha.len() {
        return Err(Error::Shape(alloc::format!(
            "covector of length {} against a {}x{} metric",
            alpha.len(),
            g.rows(),
            g.cols()
        )));
    }
    g.solve_vec(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_metric_is_trivial() {
        let g = RMat::identity(3);
        assert_eq!(flat(&[1.0, 2.0, 3.0], &g).unwrap(), [1.0, 2.0, 3.0]);
    }

    #[test]
    fn sphere_metric_lowers_phi() {
        let th: f64 = 0.7;
        let g = RMat::from_diagonal(&[1.0, libm::sin(th) * libm::sin(th)]);
        let v = flat(&[0.0, 1.0], &g).unwrap();
        assert!((v[1] - libm::sin(th) * libm::sin(th)).abs() < 1e-15);
        let back = sharp(&v, &g).unwrap();
        assert!((back[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn singular_metric_errors() {
        let g = RMat::zeros(2, 2);
        assert!(flat(&[1.0, 0.0], &g).is_err());
        assert!(sharp(&[1.0, 0.0], &g).is_err());
    }
}
