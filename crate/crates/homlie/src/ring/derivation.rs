//! Twisted derivations of the coefficient ring, stored in the factored form
//! `substitution ∘ D` for an ordinary derivation `D = Σ q_i ∂/∂x_i`, which
//! satisfies the twisted Leibniz rule by construction.

use super::{RingElement, RingEndomorphism, RingError};
#[cfg(test)]
use super::CoefficientRing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedDerivation {
    endo: RingEndomorphism,
    /// One coefficient per ring variable; empty over the scalar ring.
    coeffs: Vec<RingElement>,
}

impl TwistedDerivation {
    pub fn zero(endo: &RingEndomorphism) -> Self {
        let ring = endo.ring();
        TwistedDerivation {
            endo: endo.clone(),
            coeffs: (0..ring.nvars()).map(|_| ring.zero()).collect(),
        }
    }

    pub fn new(endo: &RingEndomorphism, coeffs: Vec<RingElement>) -> Result<Self, RingError> {
        let ring = endo.ring();
        if coeffs.len() != ring.nvars() {
            return Err(RingError::BadCoefficientCount {
                expected: ring.nvars(),
                got: coeffs.len(),
            });
        }
        for c in &coeffs {
            if c.ring().vars() != ring.vars() {
                return Err(RingError::MixedRings);
            }
        }
        Ok(TwistedDerivation {
            endo: endo.clone(),
            coeffs,
        })
    }

    pub fn endo(&self) -> &RingEndomorphism {
        &self.endo
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `X(f) = substitution(Σ q_i ∂f/∂x_i)`; lands in the fraction field
    /// only when a coefficient or `f` itself lives there.
    pub fn apply(&self, f: &RingElement) -> RingElement {
        let mut acc = f.ring().zero();
        for (i, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            acc = &acc + &(q * &f.derivative(i));
        }
        self.endo.apply(&acc)
    }

    pub fn add(&self, other: &TwistedDerivation) -> TwistedDerivation {
        debug_assert_eq!(self.endo, other.endo);
        TwistedDerivation {
            endo: self.endo.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Module scaling `f · X`: in factored form the new ordinary part is
    /// `inverse_substitution(f) · D`, so that `(f·X)(g) = f · X(g)`.
    pub fn scale(&self, f: &RingElement) -> TwistedDerivation {
        let pulled = self.endo.apply_inverse(f);
        TwistedDerivation {
            endo: self.endo.clone(),
            coeffs: self.coeffs.iter().map(|c| c * &pulled).collect(),
        }
    }

    pub fn neg(&self) -> TwistedDerivation {
        TwistedDerivation {
            endo: self.endo.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }
}
