//! Multivariate polynomials over the rationals in expanded monomial normal form.
//!
//! Terms are kept in a `BTreeMap` keyed by monomial in graded lexicographic
//! order, so two polynomials are equal iff their term maps are identical.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exponent vector; length always equals the ring's variable count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise division; `None` when some exponent of `other` exceeds ours.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }
}

/// Graded lexicographic: compare total degree first, then exponents left to right.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in canonical form: no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars, "variable index out of range");
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, idx), BigRational::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_constant())
    }

    /// The constant term (zero when absent).
    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&Monomial::constant(self.nvars))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(cur) => {
                *cur += c;
                if cur.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Divide by the leading coefficient so the leading term is 1.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = BigRational::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Exact division; `None` when `self` is not a polynomial multiple of `div`.
    pub fn div_exact(&self, div: &MultiPoly) -> Option<MultiPoly> {
        debug_assert_eq!(self.nvars, div.nvars);
        if div.is_zero() {
            return None;
        }
        let (dm, dc) = div.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((lm, lc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = lm.div(&dm)?;
            let qc = lc / dc.clone();
            let mut t = Self::zero(self.nvars);
            t.terms.insert(qm, qc);
            rem = rem.sub(&t.mul(div));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut me = m.clone();
            me.0[var] = e - 1;
            out.add_term(me, c * BigRational::from(BigInt::from(e)));
        }
        out
    }

    /// Substitute `images[i]` for variable `i`; images live in a ring with `out_nvars` variables.
    pub fn substitute(&self, images: &[MultiPoly], out_nvars: usize) -> MultiPoly {
        debug_assert_eq!(images.len(), self.nvars);
        let mut out = Self::zero(out_nvars);
        for (m, c) in &self.terms {
            let mut t = Self::constant(out_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Greatest common divisor, normalized monic under graded lex.
    pub fn gcd(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let var = (0..self.nvars).find(|&v| self.degree_in(v) > 0 || other.degree_in(v) > 0);
        let var = match var {
            // both are nonzero constants
            None => return Self::one(self.nvars),
            Some(v) => v,
        };

        let (cont_a, pp_a) = self.content_split(var);
        let (cont_b, pp_b) = other.content_split(var);
        let cont = cont_a.gcd(&cont_b);

        let (mut p, mut q) = if pp_a.degree_in(var) >= pp_b.degree_in(var) {
            (pp_a, pp_b)
        } else {
            (pp_b, pp_a)
        };
        while !q.is_zero() {
            let r = p.pseudo_rem(&q, var);
            p = q;
            q = if r.is_zero() {
                Self::zero(self.nvars)
            } else {
                r.content_split(var).1
            };
        }
        cont.mul(&p).monic()
    }

    /// Content (gcd of the univariate-in-`var` coefficients) and primitive part.
    fn content_split(&self, var: usize) -> (MultiPoly, MultiPoly) {
        let mut content = Self::zero(self.nvars);
        for coeff in self.univariate_coeffs(var) {
            content = content.gcd(&coeff);
            if content.is_constant() && !content.is_zero() {
                break;
            }
        }
        if content.is_zero() {
            return (Self::one(self.nvars), self.clone());
        }
        let pp = self
            .div_exact(&content)
            .expect("content divides the polynomial");
        (content, pp)
    }

    /// Coefficients of `self` viewed as univariate in `var` (sparse, nonzero only).
    fn univariate_coeffs(&self, var: usize) -> Vec<MultiPoly> {
        let mut by_deg: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut me = m.clone();
            me.0[var] = 0;
            by_deg
                .entry(e)
                .or_insert_with(|| Self::zero(self.nvars))
                .add_term(me, c.clone());
        }
        by_deg.into_values().collect()
    }

    fn leading_in(&self, var: usize) -> (u32, MultiPoly) {
        let d = self.degree_in(var);
        let mut lc = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[var] == d {
                let mut me = m.clone();
                me.0[var] = 0;
                lc.add_term(me, c.clone());
            }
        }
        (d, lc)
    }

    fn pseudo_rem(&self, div: &MultiPoly, var: usize) -> MultiPoly {
        let (dd, dl) = div.leading_in(var);
        let mut rem = self.clone();
        while !rem.is_zero() {
            let (rd, rl) = rem.leading_in(var);
            if rd < dd {
                break;
            }
            let mut shift = Self::zero(self.nvars);
            shift
                .terms
                .insert(Monomial::var(self.nvars, var).pow_mono(rd - dd), BigRational::one());
            rem = rem.mul(&dl).sub(&div.mul(&rl).mul(&shift));
        }
        rem
    }
}

impl Monomial {
    fn pow_mono(mut self, e: u32) -> Monomial {
        for v in self.0.iter_mut() {
            *v *= e;
        }
        self
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Renders in descending graded-lex order with explicit `*` and `^`.
pub(crate) fn fmt_poly(p: &MultiPoly, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_constant() {
            factors.push(fmt_rational(&abs));
        }
        for (v, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(vars[v].clone()),
                _ => factors.push(format!("{}^{}", vars[v], e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn x() -> MultiPoly {
        MultiPoly::var(2, 0)
    }

    fn y() -> MultiPoly {
        MultiPoly::var(2, 1)
    }

    #[test]
    fn normal_form_collapses() {
        // x*(x+1) - x^2 = x
        let p = x().mul(&x().add(&MultiPoly::one(2))).sub(&x().pow(2));
        assert_eq!(p, x());
    }

    #[test]
    fn grlex_leading_term() {
        // x^2 beats x*y^... same degree: x^2 > x*y > y^2
        let p = x().mul(&y()).add(&y().pow(2)).add(&x().pow(2));
        let (m, _) = p.leading().unwrap();
        assert_eq!(m, &Monomial(vec![2, 0]));
    }

    #[test]
    fn exact_division() {
        let p = x().pow(2).sub(&y().pow(2));
        let d = x().sub(&y());
        let quot = p.div_exact(&d).unwrap();
        assert_eq!(quot, x().add(&y()));
        assert!(p.div_exact(&x().add(&MultiPoly::one(2))).is_none());
    }

    #[test]
    fn gcd_univariate() {
        // gcd(x^2-1, x^2-2x+1) = x-1
        let a = x().pow(2).sub(&MultiPoly::one(2));
        let b = x().pow(2).sub(&x().scale(&q(2, 1))).add(&MultiPoly::one(2));
        let g = a.gcd(&b);
        assert_eq!(g, x().sub(&MultiPoly::one(2)));
    }

    #[test]
    fn gcd_multivariate() {
        // gcd((x+y)*x, (x+y)*y) = x+y
        let s = x().add(&y());
        assert_eq!(s.mul(&x()).gcd(&s.mul(&y())), s);
    }

    #[test]
    fn gcd_coprime_is_one() {
        assert_eq!(x().gcd(&y().add(&MultiPoly::one(2))), MultiPoly::one(2));
    }

    #[test]
    fn derivative_and_subst() {
        // d/dx (x^2 y) = 2xy; substitute x -> x+1 into x^2: x^2+2x+1
        let p = x().pow(2).mul(&y());
        assert_eq!(p.derivative(0), x().mul(&y()).scale(&q(2, 1)));
        let img = vec![x().add(&MultiPoly::one(2)), y()];
        let s = x().pow(2).substitute(&img, 2);
        assert_eq!(s, x().pow(2).add(&x().scale(&q(2, 1))).add(&MultiPoly::one(2)));
    }

    #[test]
    fn display_descending() {
        let p = x().pow(2).scale(&q(-1, 2)).add(&y()).add(&MultiPoly::one(2));
        assert_eq!(fmt_poly(&p, &["x".into(), "y".into()]), "-1/2*x^2 + y + 1");
    }
}
