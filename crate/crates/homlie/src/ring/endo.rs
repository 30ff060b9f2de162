//! Substitution endomorphisms of the coefficient ring with a declared inverse.

use std::sync::Arc;

use super::poly::MultiPoly;
use super::{CoefficientRing, RingElement, RingError, RingKind};

#[derive(Debug, PartialEq, Eq)]
struct EndoInner {
    ring: CoefficientRing,
    /// Image polynomial of each generator.
    images: Vec<MultiPoly>,
    inverse_images: Vec<MultiPoly>,
}

/// A ring endomorphism `x_i -> p_i` together with its declared inverse
/// substitution. Construction verifies both compositions fix every generator.
#[derive(Debug, Clone)]
pub struct RingEndomorphism {
    inner: Arc<EndoInner>,
}

impl PartialEq for RingEndomorphism {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || *self.inner == *other.inner
    }
}
impl Eq for RingEndomorphism {}

impl RingEndomorphism {
    pub fn identity(ring: &CoefficientRing) -> Self {
        let n = ring.nvars();
        let images: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
        RingEndomorphism {
            inner: Arc::new(EndoInner {
                ring: ring.clone(),
                inverse_images: images.clone(),
                images,
            }),
        }
    }

    pub fn new(
        ring: &CoefficientRing,
        images: Vec<MultiPoly>,
        inverse_images: Vec<MultiPoly>,
    ) -> Result<Self, RingError> {
        let n = ring.nvars();
        if images.len() != n || inverse_images.len() != n {
            return Err(RingError::BadSubstitution);
        }
        if images.iter().chain(&inverse_images).any(|p| p.nvars() != n) {
            return Err(RingError::BadSubstitution);
        }
        // x_i -> images, then inverse: must come back to x_i (and vice versa).
        for i in 0..n {
            let gen = MultiPoly::var(n, i);
            let fwd_back = images[i].substitute(&inverse_images, n);
            if fwd_back != gen {
                return Err(RingError::NotInverse(
                    ring.vars()[i].clone(),
                    super::fmt_poly(&fwd_back, ring.vars()),
                ));
            }
            let back_fwd = inverse_images[i].substitute(&images, n);
            if back_fwd != gen {
                return Err(RingError::NotInverse(
                    ring.vars()[i].clone(),
                    super::fmt_poly(&back_fwd, ring.vars()),
                ));
            }
        }
        Ok(RingEndomorphism {
            inner: Arc::new(EndoInner {
                ring: ring.clone(),
                images,
                inverse_images,
            }),
        })
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.inner.ring
    }

    pub fn is_identity(&self) -> bool {
        let n = self.inner.ring.nvars();
        (0..n).all(|i| self.inner.images[i] == MultiPoly::var(n, i))
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.inner.images
    }

    pub fn inverse_images(&self) -> &[MultiPoly] {
        &self.inner.inverse_images
    }

    /// Applies the substitution; total on our rings since the scalar ring has
    /// no variables and invertible substitutions keep denominators nonzero.
    pub fn apply(&self, f: &RingElement) -> RingElement {
        if f.ring().kind() == RingKind::Rationals {
            return f.clone();
        }
        f.substitute(&self.inner.images)
            .expect("invertible substitution cannot collapse a denominator")
    }

    pub fn apply_inverse(&self, f: &RingElement) -> RingElement {
        if f.ring().kind() == RingKind::Rationals {
            return f.clone();
        }
        f.substitute(&self.inner.inverse_images)
            .expect("invertible substitution cannot collapse a denominator")
    }
}
