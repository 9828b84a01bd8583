//! Clifford and Grassmann algebras over an orthonormal basis.
//!
//! Blades are indexed by bitmask: bit `k` stands for the `k`-th basis
//! (co)vector, and a blade is the product of its generators in increasing
//! order. With that convention every product reduces to a reorder sign plus
//! metric contractions on the shared bits.

mod exterior;
mod multivector;
mod musical;

pub use exterior::{canonical_action, canonical_action_matrix, ExteriorElement};
pub use multivector::Multivector;
pub use musical::{flat, sharp};

use alloc::format;
use core::fmt;

use crate::error::{Error, Result};

/// Default upper bound on `p + q`.
pub const DEFAULT_DIM_CAP: usize = 6;

/// The convention sign ε in `α² = ε g*(α, α)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_value(v: i32) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::InvalidSignature(format!("epsilon must be +1 or -1, got {v}"))),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Signature `(p, q)` with convention sign ε. The first `p` directions are
/// positive, the remaining `q` negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    p: usize,
    q: usize,
    eps: Sign,
}

impl Signature {
    /// Validate against [`DEFAULT_DIM_CAP`]. `p - q ≡ 1 mod 4` is accepted;
    /// see [`Signature::warning`].
    pub fn new(p: usize, q: usize, eps: Sign) -> Result<Self> {
        Self::with_cap(p, q, eps, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(p: usize, q: usize, eps: Sign, cap: usize) -> Result<Self> {
        let n = p + q;
        if n == 0 {
            return Err(Error::InvalidSignature("dimension must be at least 1".into()));
        }
        if n > cap {
            return Err(Error::InvalidSignature(format!(
                "dimension {n} exceeds the cap {cap}"
            )));
        }
        Ok(Self { p, q, eps })
    }

    /// Like [`Signature::new`] but rejects `p - q ≡ 1 mod 4`.
    pub fn new_strict(p: usize, q: usize, eps: Sign) -> Result<Self> {
        let s = Self::new(p, q, eps)?;
        match s.warning() {
            Some(w) => Err(Error::InvalidSignature(format!("({p},{q}): {w}"))),
            None => Ok(s),
        }
    }

    /// Non-fatal validation message, if any.
    pub fn warning(&self) -> Option<&'static str> {
        let s = self.p as i64 - self.q as i64;
        if s.rem_euclid(4) == 1 {
            Some("p - q = 1 mod 4: odd hermitian modules need not exist in this signature")
        } else {
            None
        }
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.p + self.q
    }

    #[inline]
    pub fn eps(&self) -> Sign {
        self.eps
    }

    #[inline]
    pub fn eps_value(&self) -> f64 {
        self.eps.value()
    }

    /// Number of blades, `2^n`.
    #[inline]
    pub fn blade_count(&self) -> usize {
        1 << self.n()
    }

    /// `η_kk`.
    #[inline]
    pub fn eta(&self, k: usize) -> f64 {
        if k < self.p {
            1.0
        } else {
            -1.0
        }
    }

    /// Product of `η_kk` over the bits of `mask`.
    pub fn eta_product(&self, mask: usize) -> f64 {
        let neg = (mask >> self.p).count_ones();
        if neg % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn with_eps(&self, eps: Sign) -> Self {
        Self { eps, ..*self }
    }

    pub(crate) fn check_same(&self, other: &Signature) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SignatureMismatch {
                left: format!("{self}"),
                right: format!("{other}"),
            })
        }
    }

    /// Every signature with `1 <= n <= max_n`, both signs.
    pub fn all_up_to(max_n: usize) -> impl Iterator<Item = Signature> {
        (1..=max_n).flat_map(|n| {
            (0..=n).flat_map(move |p| {
                [Sign::Plus, Sign::Minus]
                    .into_iter()
                    .map(move |eps| Signature { p, q: n - p, eps })
            })
        })
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{}) eps={}", self.p, self.q, self.eps)
    }
}

/// Sign of reordering the concatenation `e_a e_b` into increasing order.
#[inline]
pub fn reorder_sign(a: usize, b: usize) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Grade of a blade.
#[inline]
pub fn grade(mask: usize) -> usize {
    mask.count_ones() as usize
}

/// Blade masks sorted by grade, then numerically.
pub fn blades_by_grade(n: usize) -> alloc::vec::Vec<usize> {
    let mut v: alloc::vec::Vec<usize> = (0..1usize << n).collect();
    v.sort_by_key(|m| (grade(*m), *m));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reorder_sign_basics() {
        // e2 e1 = -e1 e2
        assert_eq!(reorder_sign(0b10, 0b01), -1.0);
        assert_eq!(reorder_sign(0b01, 0b10), 1.0);
        // (e1e2)(e1) = -e1 e1 e2 ... one swap
        assert_eq!(reorder_sign(0b11, 0b01), -1.0);
    }

    #[test]
    fn signature_validation() {
        assert!(Signature::new(0, 0, Sign::Plus).is_err());
        assert!(Signature::new(4, 3, Sign::Plus).is_err());
        assert!(Signature::with_cap(4, 3, Sign::Plus, 7).is_ok());
        let s = Signature::new(1, 0, Sign::Plus).unwrap();
        assert!(s.warning().is_some());
        assert!(Signature::new_strict(1, 0, Sign::Plus).is_err());
        assert!(Signature::new(2, 0, Sign::Plus).unwrap().warning().is_none());
        assert!(Signature::new(3, 1, Sign::Minus).unwrap().warning().is_none());
    }

    #[test]
    fn all_up_to_four_counts() {
        // sum_{n=1}^4 (n+1) * 2 = 28
        assert_eq!(Signature::all_up_to(4).count(), 28);
    }
}
