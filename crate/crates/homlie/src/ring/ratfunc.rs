//! Reduced fractions of multivariate polynomials with monic denominator.

use super::poly::{fmt_poly, MultiPoly};

/// Invariants: `den` is nonzero and monic under graded lex, `gcd(num, den) = 1`,
/// and the zero element is stored as `0/1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Builds the reduced form; panics if `den` is the zero polynomial.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc {
                den: MultiPoly::one(num.nvars()),
                num,
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let (_, lc) = den.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let lc_poly = MultiPoly::constant(num.nvars(), lc);
        num = num.div_exact(&lc_poly).unwrap_or(num);
        den = den.div_exact(&lc_poly).expect("leading coefficient divides");
        RatFunc { num, den }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc {
            den: MultiPoly::one(p.nvars()),
            num: p,
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::zero(nvars))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some` exactly when the denominator is 1.
    pub fn as_poly(&self) -> Option<&MultiPoly> {
        if self.den == MultiPoly::one(self.num.nvars()) {
            Some(&self.num)
        } else {
            None
        }
    }

    fn den_is_one(&self) -> bool {
        self.den == MultiPoly::one(self.num.nvars())
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        // polynomial fast path: no reduction needed
        if self.den_is_one() && other.den_is_one() {
            return RatFunc::from_poly(self.num.add(&other.num));
        }
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.den_is_one() && other.den_is_one() {
            return RatFunc::from_poly(self.num.mul(&other.num));
        }
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// `None` when dividing by zero.
    pub fn div(&self, other: &RatFunc) -> Option<RatFunc> {
        if other.is_zero() {
            return None;
        }
        Some(RatFunc::new(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    /// Quotient rule.
    pub fn derivative(&self, var: usize) -> RatFunc {
        let n = self.num.derivative(var).mul(&self.den);
        let d = self.num.mul(&self.den.derivative(var));
        RatFunc::new(n.sub(&d), self.den.mul(&self.den))
    }

    /// Applies a polynomial substitution to numerator and denominator.
    /// `None` when the substituted denominator vanishes.
    pub fn substitute(&self, images: &[MultiPoly], out_nvars: usize) -> Option<RatFunc> {
        let den = self.den.substitute(images, out_nvars);
        if den.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.num.substitute(images, out_nvars), den))
    }

    pub fn render(&self, vars: &[String]) -> String {
        if self.as_poly().is_some() {
            fmt_poly(&self.num, vars)
        } else {
            format!("({})/({})", fmt_poly(&self.num, vars), fmt_poly(&self.den, vars))
        }
    }
}
