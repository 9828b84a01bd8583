use alloc::vec;
use alloc::vec::Vec;

use super::{blades_by_grade, grade, reorder_sign, Multivector, Signature};
use crate::error::Result;
use crate::linalg::CMat;
use crate::C64;

/// Element of the complexified Grassmann algebra over the orthonormal
/// coframe `e¹,…,eⁿ`, one coefficient per blade.
#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorElement {
    sig: Signature,
    coeffs: Vec<C64>,
}

impl ExteriorElement {
    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            coeffs: vec![C64::new(0.0, 0.0); sig.blade_count()],
        }
    }

    pub fn one(sig: Signature) -> Self {
        Self::blade(sig, 0)
    }

    pub fn blade(sig: Signature, mask: usize) -> Self {
        let mut w = Self::zero(sig);
        w.coeffs[mask] = C64::new(1.0, 0.0);
        w
    }

    pub fn covector(sig: Signature, alpha: &[C64]) -> Self {
        assert_eq!(alpha.len(), sig.n());
        let mut w = Self::zero(sig);
        for (k, c) in alpha.iter().enumerate() {
            w.coeffs[1 << k] = *c;
        }
        w
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

    pub fn scale(&self, s: C64) -> Self {
        Self {
            sig: self.sig,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn try_add(&self, other: &ExteriorElement) -> Result<Self> {
        self.sig.check_same(&other.sig)?;
        Ok(Self {
            sig: self.sig,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    /// Wedge product.
    pub fn wedge(&self, other: &ExteriorElement) -> Result<Self> {
        self.sig.check_same(&other.sig)?;
        let mut out = Self::zero(self.sig);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.re == 0.0 && ca.im == 0.0 {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if a & b != 0 || (cb.re == 0.0 && cb.im == 0.0) {
                    continue;
                }
                out.coeffs[a | b] += ca * cb * reorder_sign(a, b);
            }
        }
        Ok(out)
    }

    /// Interior product with the dual basis vector `e_k`.
    pub fn interior(&self, k: usize) -> Self {
        let bit = 1usize << k;
        let mut out = Self::zero(self.sig);
        for (m, c) in self.coeffs.iter().enumerate() {
            if m & bit != 0 {
                let below = (m & (bit - 1)).count_ones();
                let s = if below % 2 == 0 { 1.0 } else { -1.0 };
                out.coeffs[m ^ bit] += c * s;
            }
        }
        out
    }

    /// Extended metric: `Σ conj(a_I) b_I Π_{k∈I} η_kk`.
    pub fn inner(&self, other: &ExteriorElement) -> Result<C64> {
        self.sig.check_same(&other.sig)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .map(|(m, (a, b))| a.conj() * b * self.sig.eta_product(m))
            .sum())
    }

    pub fn grade_part(&self, k: usize) -> Self {
        let mut out = Self::zero(self.sig);
        for (m, c) in self.coeffs.iter().enumerate() {
            if grade(m) == k {
                out.coeffs[m] = *c;
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &ExteriorElement) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Symbol map `σ(a) = Γ_Cl(a)·1`.
    pub fn symbol(a: &Multivector) -> Self {
        let sig = a.signature();
        let nb = sig.blade_count();
        let gens: Vec<CMat> = (0..sig.n()).map(|k| canonical_action_matrix(&sig, k)).collect();
        let mut out = Self::zero(sig);
        for mask in 0..nb {
            let c = a.coeff(mask);
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            let img = blade_image(&sig, &gens, mask);
            for (o, v) in out.coeffs.iter_mut().zip(&img) {
                *o += c * v;
            }
        }
        out
    }

    /// Inverse symbol map (the quantization of scalar forms).
    ///
    /// `σ(e_I) = e^I + (lower grades)`, so the blade matrix is unit
    /// triangular by grade and is inverted by substitution from the top grade
    /// down.
    pub fn inverse_symbol(&self) -> Multivector {
        let sig = self.sig;
        let gens: Vec<CMat> = (0..sig.n()).map(|k| canonical_action_matrix(&sig, k)).collect();
        let mut residual = self.coeffs.clone();
        let mut out = Multivector::zero(sig);
        for &mask in blades_by_grade(sig.n()).iter().rev() {
            let c = residual[mask];
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            out.set_coeff(mask, c);
            let img = blade_image(&sig, &gens, mask);
            for (r, v) in residual.iter_mut().zip(&img) {
                *r -= c * v;
            }
        }
        out
    }
}

/// `γ_Cl(e^{i1})⋯γ_Cl(e^{ik})·1` for the blade `mask`.
fn blade_image(sig: &Signature, gens: &[CMat], mask: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); sig.blade_count()];
    v[0] = C64::new(1.0, 0.0);
    for k in (0..sig.n()).rev() {
        if mask & (1 << k) != 0 {
            v = gens[k].mul_vec(&v);
        }
    }
    v
}

/// Canonical Clifford action `γ_Cl(α)ω = ε int(α♯)ω + α∧ω`, with `α` given
/// by its orthonormal components.
pub fn canonical_action(alpha: &[f64], w: &ExteriorElement) -> ExteriorElement {
    let sig = w.signature();
    assert_eq!(alpha.len(), sig.n());
    let a = ExteriorElement::covector(sig, &alpha.iter().map(|x| C64::new(*x, 0.0)).collect::<Vec<_>>());
    let mut out = a.wedge(w).expect("same signature");
    for (k, ak) in alpha.iter().enumerate() {
        if *ak == 0.0 {
            continue;
        }
        // α♯ = Σ η_kk α_k e_k
        let s = sig.eps_value() * sig.eta(k) * ak;
        let i = w.interior(k);
        for (o, v) in out.coeffs.iter_mut().zip(&i.coeffs) {
            *o += v * s;
        }
    }
    out
}

/// Matrix of `γ_Cl(e^k)` on the blade basis.
pub fn canonical_action_matrix(sig: &Signature, k: usize) -> CMat {
    let nb = sig.blade_count();
    let mut alpha = vec![0.0; sig.n()];
    alpha[k] = 1.0;
    let mut m = CMat::zeros(nb, nb);
    for b in 0..nb {
        let img = canonical_action(&alpha, &ExteriorElement::blade(*sig, b));
        for (r, v) in img.coeffs.iter().enumerate() {
            m[(r, b)] = *v;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Sign;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn symbol_of_unit_and_bivector() {
        let s = Signature::new(2, 0, Sign::Plus).unwrap();
        assert_eq!(ExteriorElement::symbol(&Multivector::one(s)), ExteriorElement::one(s));
        let e12 = &Multivector::generator(s, 0) * &Multivector::generator(s, 1);
        assert_eq!(ExteriorElement::symbol(&e12), ExteriorElement::blade(s, 0b11));
    }

    #[test]
    fn symbol_of_square_is_unit() {
        let s = Signature::new(1, 0, Sign::Plus).unwrap();
        let e1 = Multivector::generator(s, 0);
        assert_eq!(ExteriorElement::symbol(&(&e1 * &e1)), ExteriorElement::one(s));
    }

    #[test]
    fn inverse_symbol_of_two_form() {
        let s = Signature::new(1, 1, Sign::Minus).unwrap();
        let w = ExteriorElement::blade(s, 0b11);
        let e12 = &Multivector::generator(s, 0) * &Multivector::generator(s, 1);
        assert_eq!(w.inverse_symbol(), e12);
        assert_eq!(ExteriorElement::one(s).inverse_symbol(), Multivector::one(s));
    }

    #[test]
    fn canonical_action_examples() {
        let s = Signature::new(1, 0, Sign::Plus).unwrap();
        let one = ExteriorElement::one(s);
        let e1 = ExteriorElement::blade(s, 1);
        assert_eq!(canonical_action(&[1.0], &one), e1);
        assert_eq!(canonical_action(&[1.0], &e1), one);
    }

    #[test]
    fn inner_product_examples() {
        let s = Signature::new(1, 0, Sign::Plus).unwrap();
        let e1 = ExteriorElement::blade(s, 1);
        assert_eq!(e1.inner(&e1).unwrap(), c(1.0));
        let s = Signature::new(0, 1, Sign::Plus).unwrap();
        let e1 = ExteriorElement::blade(s, 1);
        assert_eq!(e1.inner(&e1).unwrap(), c(-1.0));
        let s = Signature::new(2, 0, Sign::Plus).unwrap();
        let e12 = ExteriorElement::blade(s, 3);
        assert_eq!(e12.inner(&ExteriorElement::blade(s, 1)).unwrap(), c(0.0));
    }

    #[test]
    fn wedge_is_antisymmetric_on_covectors() {
        let s = Signature::new(3, 0, Sign::Plus).unwrap();
        let a = ExteriorElement::covector(s, &[c(1.0), c(2.0), c(0.5)]);
        let b = ExteriorElement::covector(s, &[c(-1.0), c(0.3), c(4.0)]);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        assert!(ab.try_add(&ba).unwrap().coeffs.iter().all(|x| x.norm() < 1e-15));
        assert!(a.wedge(&a).unwrap().coeffs.iter().all(|x| x.norm() == 0.0));
    }
}
