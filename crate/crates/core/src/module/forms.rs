use alloc::vec::Vec;

use crate::clifford::{grade, Signature};
use crate::linalg::CMat;

/// End(E)-valued exterior form at a single point, stored as a sparse list of
/// `(blade, coefficient matrix)` terms over the orthonormal coframe.
#[derive(Clone, Debug)]
pub struct EndoForm {
    sig: Signature,
    terms: Vec<(usize, CMat)>,
}

impl EndoForm {
    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            terms: Vec::new(),
        }
    }

    /// Degree-zero form `1 ⊗ B`.
    pub fn scalar(sig: Signature, b: CMat) -> Self {
        let mut f = Self::zero(sig);
        f.push(0, b);
        f
    }

    /// Add `e^I ⊗ B`.
    pub fn push(&mut self, mask: usize, b: CMat) {
        assert!(mask < self.sig.blade_count());
        self.terms.push((mask, b));
    }

    /// Two-form from antisymmetric components `R_ab`, `a < b`.
    pub fn two_form(sig: Signature, comps: &[((usize, usize), CMat)]) -> Self {
        let mut f = Self::zero(sig);
        for ((a, b), m) in comps {
            assert!(a < b);
            f.push((1 << a) | (1 << b), m.clone());
        }
        f
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> &[(usize, CMat)] {
        &self.terms
    }

    /// Highest degree present, 0 for the zero form.
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(m, _)| grade(*m)).max().unwrap_or(0)
    }
}
