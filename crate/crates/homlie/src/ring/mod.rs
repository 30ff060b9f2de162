//! Exact coefficient arithmetic: rationals, multivariate polynomials over the
//! rationals, and their fraction field, together with substitution
//! endomorphisms and twisted derivations.

mod derivation;
mod endo;
pub mod expr;
mod poly;
mod ratfunc;

pub use derivation::TwistedDerivation;
pub use endo::RingEndomorphism;
pub use poly::{Monomial, MultiPoly};
pub(crate) use poly::fmt_rational;
pub use ratfunc::RatFunc;

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("operands belong to different rings with no embedding")]
    MixedRings,
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not closed in the polynomial ring; use the fraction field")]
    DivisionNotClosed,
    #[error("variable names must be unique and nonempty")]
    BadVariables,
    #[error("substitution images must match the ring variables")]
    BadSubstitution,
    #[error("declared inverse substitution does not invert: {0} maps to {1}")]
    NotInverse(String, String),
    #[error("substituted denominator vanished")]
    DenominatorCollapse,
    #[error("expected {expected} coefficient(s), got {got}")]
    BadCoefficientCount { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    Rationals,
    Polynomials,
    FractionField,
}

#[derive(Debug, PartialEq, Eq)]
struct RingInner {
    kind: RingKind,
    vars: Vec<String>,
}

/// One of the three supported coefficient rings; cheap to clone.
#[derive(Debug, Clone)]
pub struct CoefficientRing {
    inner: Arc<RingInner>,
}

impl PartialEq for CoefficientRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || *self.inner == *other.inner
    }
}
impl Eq for CoefficientRing {}

impl CoefficientRing {
    pub fn rationals() -> Self {
        CoefficientRing {
            inner: Arc::new(RingInner {
                kind: RingKind::Rationals,
                vars: Vec::new(),
            }),
        }
    }

    pub fn polynomials(vars: &[&str]) -> Result<Self, RingError> {
        Self::with_kind(RingKind::Polynomials, vars)
    }

    pub fn fraction_field(vars: &[&str]) -> Result<Self, RingError> {
        Self::with_kind(RingKind::FractionField, vars)
    }

    fn with_kind(kind: RingKind, vars: &[&str]) -> Result<Self, RingError> {
        let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || vars[..i].contains(v) {
                return Err(RingError::BadVariables);
            }
        }
        Ok(CoefficientRing {
            inner: Arc::new(RingInner { kind, vars }),
        })
    }

    /// The fraction field over the same variables (identity on field kinds).
    pub fn to_field(&self) -> CoefficientRing {
        match self.kind() {
            RingKind::Polynomials => CoefficientRing {
                inner: Arc::new(RingInner {
                    kind: RingKind::FractionField,
                    vars: self.inner.vars.clone(),
                }),
            },
            _ => self.clone(),
        }
    }

    pub fn kind(&self) -> RingKind {
        self.inner.kind
    }

    pub fn vars(&self) -> &[String] {
        &self.inner.vars
    }

    pub fn nvars(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.inner.vars.iter().position(|v| v == name)
    }

    pub fn is_field(&self) -> bool {
        matches!(self.kind(), RingKind::Rationals | RingKind::FractionField)
    }

    pub fn zero(&self) -> RingElement {
        self.wrap(Repr::zero(self))
    }

    pub fn one(&self) -> RingElement {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> RingElement {
        self.from_rational(BigRational::from(BigInt::from(n)))
    }

    pub fn from_rational(&self, q: BigRational) -> RingElement {
        let repr = match self.kind() {
            RingKind::Rationals => Repr::Rat(q),
            RingKind::Polynomials => Repr::Poly(MultiPoly::constant(self.nvars(), q)),
            RingKind::FractionField => {
                Repr::Frac(RatFunc::from_poly(MultiPoly::constant(self.nvars(), q)))
            }
        };
        self.wrap(repr)
    }

    /// The `idx`-th generator; panics on the scalar ring.
    pub fn var(&self, idx: usize) -> RingElement {
        assert!(
            self.kind() != RingKind::Rationals,
            "the scalar ring has no variables"
        );
        let p = MultiPoly::var(self.nvars(), idx);
        let repr = match self.kind() {
            RingKind::Polynomials => Repr::Poly(p),
            RingKind::FractionField => Repr::Frac(RatFunc::from_poly(p)),
            RingKind::Rationals => unreachable!(),
        };
        self.wrap(repr)
    }

    pub fn from_poly(&self, p: MultiPoly) -> RingElement {
        assert_eq!(p.nvars(), self.nvars());
        let repr = match self.kind() {
            RingKind::Rationals => Repr::Rat(p.constant_term()),
            RingKind::Polynomials => Repr::Poly(p),
            RingKind::FractionField => Repr::Frac(RatFunc::from_poly(p)),
        };
        self.wrap(repr)
    }

    fn wrap(&self, repr: Repr) -> RingElement {
        RingElement {
            ring: self.clone(),
            repr,
        }
    }

    /// Parses the expression grammar (integers, `p/q` literals, variables, `+ - * ^`).
    pub fn parse(&self, src: &str) -> Result<RingElement, expr::ParseError> {
        expr::parse_element(self, src)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Rat(BigRational),
    Poly(MultiPoly),
    Frac(RatFunc),
}

impl Repr {
    fn zero(ring: &CoefficientRing) -> Repr {
        match ring.kind() {
            RingKind::Rationals => Repr::Rat(BigRational::zero()),
            RingKind::Polynomials => Repr::Poly(MultiPoly::zero(ring.nvars())),
            RingKind::FractionField => Repr::Frac(RatFunc::zero(ring.nvars())),
        }
    }
}

/// An element of a [`CoefficientRing`] in canonical form; two elements are
/// equal iff their rings match and their representations are identical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    ring: CoefficientRing,
    repr: Repr,
}

impl RingElement {
    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(q) => q.is_zero(),
            Repr::Poly(p) => p.is_zero(),
            Repr::Frac(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    /// Underlying rational for scalar-ring elements and constant polynomials.
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Rat(q) => Some(q.clone()),
            Repr::Poly(p) if p.is_constant() => Some(p.constant_term()),
            Repr::Frac(f) => f.as_poly().filter(|p| p.is_constant()).map(|p| p.constant_term()),
            _ => None,
        }
    }

    /// Underlying polynomial when the element is (an embedding of) one.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        match &self.repr {
            Repr::Rat(q) => Some(MultiPoly::constant(0, q.clone())),
            Repr::Poly(p) => Some(p.clone()),
            Repr::Frac(f) => f.as_poly().cloned(),
        }
    }

    /// Embeds into the fraction field over the same variables.
    pub fn to_field(&self) -> RingElement {
        let ring = self.ring.to_field();
        match &self.repr {
            Repr::Rat(q) => ring.from_rational(q.clone()),
            Repr::Poly(p) => ring.wrap(Repr::Frac(RatFunc::from_poly(p.clone()))),
            Repr::Frac(_) => self.clone(),
        }
    }

    fn coerce(&self, other: &RingElement) -> Result<(RingElement, RingElement), RingError> {
        if self.ring == other.ring {
            return Ok((self.clone(), other.clone()));
        }
        if self.ring.vars() == other.ring.vars() {
            match (self.ring.kind(), other.ring.kind()) {
                (RingKind::Polynomials, RingKind::FractionField) => {
                    return Ok((self.to_field(), other.clone()))
                }
                (RingKind::FractionField, RingKind::Polynomials) => {
                    return Ok((self.clone(), other.to_field()))
                }
                _ => {}
            }
        }
        Err(RingError::MixedRings)
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement, RingError> {
        if self.ring == other.ring {
            if self.is_zero() {
                return Ok(other.clone());
            }
            if other.is_zero() {
                return Ok(self.clone());
            }
        }
        let (a, b) = self.coerce(other)?;
        let repr = match (&a.repr, &b.repr) {
            (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x + y),
            (Repr::Poly(x), Repr::Poly(y)) => Repr::Poly(x.add(y)),
            (Repr::Frac(x), Repr::Frac(y)) => Repr::Frac(x.add(y)),
            _ => unreachable!("coerced reprs match"),
        };
        Ok(a.ring.wrap(repr))
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement, RingError> {
        if self.ring == other.ring && (self.is_zero() || other.is_zero()) {
            return Ok(self.ring.zero());
        }
        let (a, b) = self.coerce(other)?;
        let repr = match (&a.repr, &b.repr) {
            (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x * y),
            (Repr::Poly(x), Repr::Poly(y)) => Repr::Poly(x.mul(y)),
            (Repr::Frac(x), Repr::Frac(y)) => Repr::Frac(x.mul(y)),
            _ => unreachable!("coerced reprs match"),
        };
        Ok(a.ring.wrap(repr))
    }

    /// Exact division. In the polynomial ring only exact quotients are
    /// accepted; in the two field kinds any nonzero divisor works.
    pub fn checked_div(&self, other: &RingElement) -> Result<RingElement, RingError> {
        let (a, b) = self.coerce(other)?;
        if b.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let repr = match (&a.repr, &b.repr) {
            (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x / y),
            (Repr::Poly(x), Repr::Poly(y)) => {
                Repr::Poly(x.div_exact(y).ok_or(RingError::DivisionNotClosed)?)
            }
            (Repr::Frac(x), Repr::Frac(y)) => Repr::Frac(x.div(y).expect("nonzero divisor")),
            _ => unreachable!("coerced reprs match"),
        };
        Ok(a.ring.wrap(repr))
    }

    pub fn neg(&self) -> RingElement {
        let repr = match &self.repr {
            Repr::Rat(q) => Repr::Rat(-q.clone()),
            Repr::Poly(p) => Repr::Poly(p.neg()),
            Repr::Frac(f) => Repr::Frac(f.neg()),
        };
        self.ring.wrap(repr)
    }

    pub fn pow(&self, e: u32) -> RingElement {
        let mut out = self.ring.one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Multiplicative inverse in a field kind.
    pub fn inverse(&self) -> Result<RingElement, RingError> {
        self.ring.one().checked_div(self)
    }

    /// Partial derivative with respect to the `var`-th ring variable.
    pub fn derivative(&self, var: usize) -> RingElement {
        let repr = match &self.repr {
            Repr::Rat(_) => Repr::Rat(BigRational::zero()),
            Repr::Poly(p) => Repr::Poly(p.derivative(var)),
            Repr::Frac(f) => Repr::Frac(f.derivative(var)),
        };
        self.ring.wrap(repr)
    }

    /// Substitutes the ring generators by polynomial images.
    pub(crate) fn substitute(&self, images: &[MultiPoly]) -> Result<RingElement, RingError> {
        let n = self.ring.nvars();
        let repr = match &self.repr {
            Repr::Rat(q) => Repr::Rat(q.clone()),
            Repr::Poly(p) => Repr::Poly(p.substitute(images, n)),
            Repr::Frac(f) => Repr::Frac(
                f.substitute(images, n)
                    .ok_or(RingError::DenominatorCollapse)?,
            ),
        };
        Ok(self.ring.wrap(repr))
    }
}

macro_rules! arith_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                self.$checked(rhs).expect("ring operand mismatch")
            }
        }
    };
}
arith_op!(Add, add, checked_add);
arith_op!(Sub, sub, checked_sub);
arith_op!(Mul, mul, checked_mul);

impl std::ops::Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement::neg(self)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.ring.vars();
        match &self.repr {
            Repr::Rat(q) => write!(f, "{}", fmt_rational(q)),
            Repr::Poly(p) => write!(f, "{}", poly::fmt_poly(p, vars)),
            Repr::Frac(r) => write!(f, "{}", r.render(vars)),
        }
    }
}

pub(crate) use poly::fmt_poly;
