//! Small dense real and complex matrices.
//!
//! Fibers in this crate are at most a few hundred dimensions and metrics are
//! at most 6×6, so plain row-major storage with naive kernels is enough.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::C64;

/// Dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Build from row-major data.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Build a square matrix from real rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        Self::from_fn(n, rows[0].len(), |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    /// Column vector.
    pub fn column(v: &[C64]) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn col(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: C64, other: &CMat) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    /// `self += s * other` for a real coefficient.
    pub fn axpy_real(&mut self, s: f64, other: &CMat) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s == 0.0 {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * s;
        }
    }

    pub fn matmul(&self, other: &CMat) -> CMat {
        assert_eq!(
            self.cols, other.rows,
            "matmul shape mismatch {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, a) in row.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &CMat) -> CMat {
        &self.matmul(other) - &other.matmul(self)
    }

    /// `{self, other}`.
    pub fn anticommutator(&self, other: &CMat) -> CMat {
        &self.matmul(other) + &other.matmul(self)
    }

    /// Kronecker product `self ⊗ other`; the left factor is the slow index.
    pub fn kron(&self, other: &CMat) -> CMat {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = CMat::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|x| x.norm_sqr()).sum::<f64>())
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Solve `self * x = b` by Gaussian elimination with partial pivoting.
    pub fn solve(&self, b: &CMat) -> Result<CMat> {
        if !self.is_square() || b.rows != self.rows {
            return Err(Error::Shape(format!(
                "solve {}x{} with rhs {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut x = b.clone();
        let scale = a.max_abs().max(f64::MIN_POSITIVE);
        for col in 0..n {
            let (piv, pmax) = (col..n)
                .map(|r| (r, a[(r, col)].norm()))
                .fold((col, -1.0), |acc, v| if v.1 > acc.1 { v } else { acc });
            if pmax <= 1e-14 * scale {
                return Err(Error::Singular(format!("pivot {pmax:e} in column {col}")));
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                }
                for j in 0..x.cols {
                    x.data.swap(piv * x.cols + j, col * x.cols + j);
                }
            }
            let inv = C64::new(1.0, 0.0) / a[(col, col)];
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)] * inv;
                if f.re == 0.0 && f.im == 0.0 {
                    continue;
                }
                for j in col..n {
                    let v = a[(col, j)];
                    a[(r, j)] -= f * v;
                }
                for j in 0..x.cols {
                    let v = x[(col, j)];
                    x[(r, j)] -= f * v;
                }
            }
        }
        for r in 0..n {
            let inv = C64::new(1.0, 0.0) / a[(r, r)];
            for j in 0..x.cols {
                x[(r, j)] *= inv;
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<CMat> {
        self.solve(&CMat::identity(self.rows))
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        self.matmul(rhs)
    }
}

impl Neg for &CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        self.scale_real(-1.0)
    }
}

impl AddAssign<&CMat> for CMat {
    fn add_assign(&mut self, rhs: &CMat) {
        self.axpy_real(1.0, rhs);
    }
}

impl SubAssign<&CMat> for CMat {
    fn sub_assign(&mut self, rhs: &CMat) {
        self.axpy_real(-1.0, rhs);
    }
}

/// Dense real matrix, row-major. Used for metrics, coframes and the
/// geodesic preconditioner.
#[derive(Clone, Debug, PartialEq)]
pub struct RMat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        Self::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j])
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn axpy(&mut self, s: f64, other: &RMat) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn matmul(&self, other: &RMat) -> RMat {
        assert_eq!(self.cols, other.rows);
        RMat::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self[(i, k)] * other[(k, j)]).sum()
        })
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|k| self[(i, k)] * v[k]).sum())
            .collect()
    }

    /// `u^T self v`.
    pub fn bilinear(&self, u: &[f64], v: &[f64]) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                s += u[i] * self[(i, j)] * v[j];
            }
        }
        s
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &RMat) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Exact symmetry check.
    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// LU factorisation with partial pivoting; returns `(lu, perm, sign)`.
    fn lu(&self) -> Result<(RMat, Vec<usize>, f64)> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!("LU of {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let scale = a.max_abs().max(f64::MIN_POSITIVE);
        for col in 0..n {
            let mut piv = col;
            for r in col + 1..n {
                if a[(r, col)].abs() > a[(piv, col)].abs() {
                    piv = r;
                }
            }
            if a[(piv, col)].abs() <= 1e-14 * scale {
                return Err(Error::Singular(format!("pivot in column {col}")));
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                }
                perm.swap(piv, col);
                sign = -sign;
            }
            for r in col + 1..n {
                let f = a[(r, col)] / a[(col, col)];
                a[(r, col)] = f;
                for j in col + 1..n {
                    let v = a[(col, j)];
                    a[(r, j)] -= f * v;
                }
            }
        }
        Ok((a, perm, sign))
    }

    pub fn det(&self) -> f64 {
        match self.lu() {
            Ok((lu, _, sign)) => (0..self.rows).map(|i| lu[(i, i)]).product::<f64>() * sign,
            Err(_) => 0.0,
        }
    }

    pub fn solve_vec(&self, b: &[f64]) -> Result<Vec<f64>> {
        let (lu, perm, _) = self.lu()?;
        let n = self.rows;
        let mut y: Vec<f64> = perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                y[i] -= lu[(i, k)] * y[k];
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                y[i] -= lu[(i, k)] * y[k];
            }
            y[i] /= lu[(i, i)];
        }
        Ok(y)
    }

    pub fn inverse(&self) -> Result<RMat> {
        let n = self.rows;
        let mut out = RMat::zeros(n, n);
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let col = self.solve_vec(&e)?;
            for i in 0..n {
                out[(i, j)] = col[i];
            }
        }
        Ok(out)
    }

    /// Eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
    pub fn symmetric_eigenvalues(&self) -> Vec<f64> {
        let n = self.rows;
        let mut a = self.clone();
        for _sweep in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)] * a[(i, j)])
                .sum();
            if off < 1e-30 * (1.0 + a.max_abs() * a.max_abs()) {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    if apq == 0.0 {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / libm::sqrt(t * t + 1.0);
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = c * akp - s * akq;
                        a[(k, q)] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = c * apk - s * aqk;
                        a[(q, k)] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut ev: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
        ev.sort_by(|x, y| x.partial_cmp(y).unwrap_or(core::cmp::Ordering::Equal));
        ev
    }

    /// Complex embedding.
    pub fn to_complex(&self) -> CMat {
        CMat::from_fn(self.rows, self.cols, |i, j| C64::new(self[(i, j)], 0.0))
    }
}

impl Index<(usize, usize)> for RMat {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Solve a block tridiagonal system with square blocks of equal size
/// (block Thomas algorithm). `lower[k]` couples row `k+1` to `k`,
/// `upper[k]` couples row `k` to `k+1`.
pub fn solve_block_tridiagonal(
    lower: &[RMat],
    diag: &[RMat],
    upper: &[RMat],
    rhs: &[Vec<f64>],
) -> Result<Vec<Vec<f64>>> {
    let m = diag.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    if lower.len() + 1 != m || upper.len() + 1 != m || rhs.len() != m {
        return Err(Error::Shape("block tridiagonal sizes".into()));
    }
    let mut c_prime: Vec<RMat> = Vec::with_capacity(m);
    let mut d_prime: Vec<Vec<f64>> = Vec::with_capacity(m);
    for k in 0..m {
        let mut b = diag[k].clone();
        let mut d = rhs[k].clone();
        if k > 0 {
            let a = &lower[k - 1];
            b.axpy(-1.0, &a.matmul(&c_prime[k - 1]));
            let ad = a.mul_vec(&d_prime[k - 1]);
            for (x, y) in d.iter_mut().zip(ad) {
                *x -= y;
            }
        }
        let binv = b.inverse()?;
        if k + 1 < m {
            c_prime.push(binv.matmul(&upper[k]));
        } else {
            c_prime.push(RMat::zeros(b.rows(), b.cols()));
        }
        d_prime.push(binv.mul_vec(&d));
    }
    let mut x = vec![Vec::new(); m];
    x[m - 1] = d_prime[m - 1].clone();
    for k in (0..m - 1).rev() {
        let cx = c_prime[k].mul_vec(&x[k + 1]);
        x[k] = d_prime[k].iter().zip(cx).map(|(a, b)| a - b).collect();
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let k = CMat::identity(2).kron(&CMat::identity(3));
        assert_eq!(k, CMat::identity(6));
    }

    #[test]
    fn kron_mixed_product_rule() {
        let a = CMat::from_fn(2, 2, |i, j| c(i as f64 + 1.0, j as f64));
        let b = CMat::from_fn(2, 2, |i, j| c(j as f64 - i as f64, 0.5));
        let cm = CMat::from_fn(2, 2, |i, j| c(0.3 * i as f64, 1.0 - j as f64));
        let d = CMat::identity(2).scale(c(0.0, 2.0));
        let lhs = a.kron(&b).matmul(&cm.kron(&d));
        let rhs = a.matmul(&cm).kron(&b.matmul(&d));
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn complex_solve_recovers_rhs() {
        let a = CMat::from_fn(3, 3, |i, j| c((i * 3 + j) as f64 % 4.0 + 1.0, (i + j) as f64 * 0.1));
        let x = CMat::from_fn(3, 2, |i, j| c(i as f64, j as f64 + 1.0));
        let b = a.matmul(&x);
        let got = a.solve(&b).unwrap();
        assert!(got.max_abs_diff(&x) < 1e-12);
    }

    #[test]
    fn singular_solve_is_reported() {
        let a = CMat::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(matches!(a.inverse(), Err(Error::Singular(_))));
    }

    #[test]
    fn real_inverse_and_det() {
        let g = RMat::from_rows(&[&[2.0, 0.5, 0.0], &[0.5, 1.0, 0.1], &[0.0, 0.1, 3.0]]);
        let gi = g.inverse().unwrap();
        assert!(g.matmul(&gi).max_abs_diff(&RMat::identity(3)) < 1e-14);
        let det = 2.0 * (3.0 - 0.01) - 0.5 * (1.5);
        assert!((g.det() - det).abs() < 1e-13);
    }

    #[test]
    fn jacobi_eigenvalues_of_minkowski_like_matrix() {
        let g = RMat::from_rows(&[&[1.0, 2.0], &[2.0, 1.0]]);
        let ev = g.symmetric_eigenvalues();
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn block_thomas_matches_dense_solve() {
        let d = RMat::from_rows(&[&[4.0, 1.0], &[1.0, 3.0]]);
        let o = RMat::from_rows(&[&[-1.0, 0.0], &[0.2, -1.0]]);
        let diag = vec![d.clone(), d.clone(), d.clone()];
        let upper = vec![o.clone(), o.clone()];
        let lower = vec![o.transpose(), o.transpose()];
        let rhs = vec![vec![1.0, 2.0], vec![0.0, -1.0], vec![3.0, 0.5]];
        let x = solve_block_tridiagonal(&lower, &diag, &upper, &rhs).unwrap();
        // Assemble the dense 6×6 system and compare.
        let mut dense = RMat::zeros(6, 6);
        for k in 0..3 {
            for i in 0..2 {
                for j in 0..2 {
                    dense[(2 * k + i, 2 * k + j)] = diag[k][(i, j)];
                    if k + 1 < 3 {
                        dense[(2 * k + i, 2 * k + 2 + j)] = upper[k][(i, j)];
                        dense[(2 * k + 2 + i, 2 * k + j)] = lower[k][(i, j)];
                    }
                }
            }
        }
        let flat_rhs: Vec<f64> = rhs.concat();
        let want = dense.solve_vec(&flat_rhs).unwrap();
        let got: Vec<f64> = x.concat();
        for (a, b) in got.iter().zip(want) {
            assert!((a - b).abs() < 1e-13);
        }
    }
}
