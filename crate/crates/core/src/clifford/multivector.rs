use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use super::{grade, reorder_sign, Signature};
use crate::error::Result;
use crate::linalg::CMat;
use crate::C64;

/// Element of the complexified Clifford algebra, one coefficient per blade.
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector {
    sig: Signature,
    coeffs: Vec<C64>,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            coeffs: vec![C64::new(0.0, 0.0); sig.blade_count()],
        }
    }

    pub fn scalar(sig: Signature, s: C64) -> Self {
        let mut m = Self::zero(sig);
        m.coeffs[0] = s;
        m
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, C64::new(1.0, 0.0))
    }

    /// Basis blade `e_I` for a bitmask `I`.
    pub fn blade(sig: Signature, mask: usize) -> Self {
        let mut m = Self::zero(sig);
        m.coeffs[mask] = C64::new(1.0, 0.0);
        m
    }

    /// Orthonormal generator `e_k` (0-based).
    pub fn generator(sig: Signature, k: usize) -> Self {
        assert!(k < sig.n(), "generator index {k} out of range");
        Self::blade(sig, 1 << k)
    }

    /// Degree-one element `Σ v_k e_k`.
    pub fn vector(sig: Signature, v: &[C64]) -> Self {
        assert_eq!(v.len(), sig.n());
        let mut m = Self::zero(sig);
        for (k, c) in v.iter().enumerate() {
            m.coeffs[1 << k] = *c;
        }
        m
    }

    pub fn from_coeffs(sig: Signature, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != sig.blade_count() {
            return Err(crate::Error::Shape(alloc::format!(
                "{} coefficients for {} blades",
                coeffs.len(),
                sig.blade_count()
            )));
        }
        Ok(Self { sig, coeffs })
    }

    #[inline]
    pub fn signature(&self) -> Signature {
        self.sig
    }

    #[inline]
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, mask: usize) -> C64 {
        self.coeffs[mask]
    }

    pub fn set_coeff(&mut self, mask: usize, c: C64) {
        self.coeffs[mask] = c;
    }

    /// Product of two basis blades: coefficient and resulting mask.
    #[inline]
    pub fn blade_product(sig: &Signature, a: usize, b: usize) -> (f64, usize) {
        let common = a & b;
        let mut s = reorder_sign(a, b);
        if common != 0 {
            s *= sig.eta_product(common);
            if grade(common) % 2 == 1 {
                s *= sig.eps_value();
            }
        }
        (s, a ^ b)
    }

    /// Clifford product.
    pub fn try_mul(&self, other: &Multivector) -> Result<Multivector> {
        self.sig.check_same(&other.sig)?;
        let mut out = Multivector::zero(self.sig);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.re == 0.0 && ca.im == 0.0 {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.re == 0.0 && cb.im == 0.0 {
                    continue;
                }
                let (s, m) = Self::blade_product(&self.sig, a, b);
                out.coeffs[m] += ca * cb * s;
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Multivector) -> Result<Multivector> {
        self.sig.check_same(&other.sig)?;
        Ok(Multivector {
            sig: self.sig,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, s: C64) -> Multivector {
        Multivector {
            sig: self.sig,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Grade-`k` part.
    pub fn grade_part(&self, k: usize) -> Multivector {
        let mut out = Multivector::zero(self.sig);
        for (m, c) in self.coeffs.iter().enumerate() {
            if grade(m) == k {
                out.coeffs[m] = *c;
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Multivector) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Matrix of left multiplication `x ↦ self·x` on the blade basis.
    pub fn left_matrix(&self) -> CMat {
        let n = self.sig.blade_count();
        let mut out = CMat::zeros(n, n);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.re == 0.0 && ca.im == 0.0 {
                continue;
            }
            for b in 0..n {
                let (s, m) = Self::blade_product(&self.sig, a, b);
                out[(m, b)] += ca * s;
            }
        }
        out
    }

    /// Matrix of right multiplication `x ↦ x·self` on the blade basis.
    pub fn right_matrix(&self) -> CMat {
        let n = self.sig.blade_count();
        let mut out = CMat::zeros(n, n);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.re == 0.0 && ca.im == 0.0 {
                continue;
            }
            for b in 0..n {
                let (s, m) = Self::blade_product(&self.sig, b, a);
                out[(m, b)] += ca * s;
            }
        }
        out
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.try_add(rhs).expect("signature mismatch in multivector sum")
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.try_add(&rhs.scale(C64::new(-1.0, 0.0)))
            .expect("signature mismatch in multivector difference")
    }
}

impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.try_mul(rhs).expect("signature mismatch in Clifford product")
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(C64::new(-1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Sign;

    fn sig(p: usize, q: usize, eps: Sign) -> Signature {
        Signature::new(p, q, eps).unwrap()
    }

    #[test]
    fn e1_squared_is_one() {
        let s = sig(1, 0, Sign::Plus);
        let e1 = Multivector::generator(s, 0);
        assert_eq!(&e1 * &e1, Multivector::one(s));
    }

    #[test]
    fn bivector_squares_to_minus_one() {
        let s = sig(2, 0, Sign::Plus);
        let e12 = Multivector::blade(s, 0b11);
        assert_eq!(&e12 * &e12, Multivector::one(s).scale(C64::new(-1.0, 0.0)));
    }

    #[test]
    fn defining_relations_all_signatures() {
        for s in Signature::all_up_to(6) {
            for k in 0..s.n() {
                let ek = Multivector::generator(s, k);
                let want = Multivector::one(s).scale(C64::new(s.eps_value() * s.eta(k), 0.0));
                assert_eq!(&ek * &ek, want, "{s} k={k}");
                for l in 0..s.n() {
                    if l != k {
                        let el = Multivector::generator(s, l);
                        let anti = &(&ek * &el) + &(&el * &ek);
                        assert_eq!(anti, Multivector::zero(s));
                    }
                }
            }
        }
    }

    #[test]
    fn mismatched_signatures_error() {
        let a = Multivector::one(sig(2, 0, Sign::Plus));
        let b = Multivector::one(sig(2, 0, Sign::Minus));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn left_and_right_matrices_commute() {
        let s = sig(1, 2, Sign::Minus);
        for a in 0..s.n() {
            let l = Multivector::generator(s, a).left_matrix();
            for b in 0..s.n() {
                let r = Multivector::generator(s, b).right_matrix();
                assert_eq!(l.commutator(&r).max_abs(), 0.0);
            }
        }
    }
}
