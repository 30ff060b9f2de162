//! Exterior calculus on a hom-algebroid: alternating tensors stored by their
//! values on increasing basis tuples, wedge products, the exterior
//! differential, the hom-Schouten bracket and both Lie derivatives.
//!
//! Operators are evaluated literally from their defining formulas; no
//! tensoriality in the section arguments is assumed anywhere.

use std::collections::BTreeMap;

use crate::linalg::Matrix;
use crate::ring::RingElement;

use super::{HomAlgebroid, Section};

/// Fully antisymmetric coefficient table of fixed degree; only strictly
/// increasing index tuples with nonzero values are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alternating {
    rank: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, RingElement>,
}

/// A section of the exterior power of the dual bundle.
pub type Form = Alternating;
/// A section of the exterior power of the bundle itself.
pub type Multivector = Alternating;

impl Alternating {
    pub fn zero(rank: usize, degree: usize) -> Self {
        Alternating {
            rank,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-zero tensor holding a single ring element.
    pub fn scalar(rank: usize, value: RingElement) -> Self {
        let mut a = Self::zero(rank, 0);
        if !value.is_zero() {
            a.terms.insert(Vec::new(), value);
        }
        a
    }

    /// The dual-basis one-form `e^k` (or the basis multivector `e_k`).
    pub fn basis_one(rank: usize, k: usize, one: RingElement) -> Self {
        let mut a = Self::zero(rank, 1);
        a.terms.insert(vec![k], one);
        a
    }

    /// Two-form with the given antisymmetric matrix of basis values.
    pub fn from_two_form_matrix(mat: &Matrix) -> Self {
        let n = mat.rows();
        let mut a = Self::zero(n, 2);
        for i in 0..n {
            for j in (i + 1)..n {
                a.add_signed(vec![i, j], mat.at(i, j).clone());
            }
        }
        a
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &RingElement)> {
        self.terms.iter()
    }

    /// Adds `value` on an arbitrary index tuple, sorting and signing it.
    pub fn add_signed(&mut self, idx: Vec<usize>, value: RingElement) {
        debug_assert_eq!(idx.len(), self.degree);
        if value.is_zero() {
            return;
        }
        let Some((sorted, sign)) = sort_with_sign(idx) else {
            return;
        };
        let signed = if sign < 0 { value.neg() } else { value };
        match self.terms.get_mut(&sorted) {
            Some(cur) => {
                let next = &*cur + &signed;
                if next.is_zero() {
                    self.terms.remove(&sorted);
                } else {
                    *cur = next;
                }
            }
            None => {
                self.terms.insert(sorted, signed);
            }
        }
    }

    /// Value on an arbitrary tuple (zero default, sign for permutations).
    pub fn value_at(&self, idx: &[usize]) -> Option<RingElement> {
        let (sorted, sign) = sort_with_sign(idx.to_vec())?;
        self.terms.get(&sorted).map(|v| if sign < 0 { v.neg() } else { v.clone() })
    }

    pub fn add(&self, other: &Alternating) -> Alternating {
        debug_assert_eq!((self.rank, self.degree), (other.rank, other.degree));
        let mut out = self.clone();
        for (idx, v) in &other.terms {
            out.add_signed(idx.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Alternating) -> Alternating {
        self.add(&other.scale_neg())
    }

    fn scale_neg(&self) -> Alternating {
        Alternating {
            rank: self.rank,
            degree: self.degree,
            terms: self.terms.iter().map(|(i, v)| (i.clone(), v.neg())).collect(),
        }
    }

    pub fn scale(&self, f: &RingElement) -> Alternating {
        if f.is_zero() {
            return Alternating::zero(self.rank, self.degree);
        }
        Alternating {
            rank: self.rank,
            degree: self.degree,
            terms: self.terms.iter().map(|(i, v)| (i.clone(), v * f)).collect(),
        }
    }

    /// Multilinear evaluation on sections (for stored tensors this is exact:
    /// they are pointwise multilinear objects).
    pub fn eval(&self, args: &[Section]) -> RingElement {
        debug_assert_eq!(args.len(), self.degree);
        let ring = if let Some(a) = args.first() {
            a.0[0].ring().clone()
        } else {
            return self
                .terms
                .get(&Vec::new())
                .cloned()
                .unwrap_or_else(|| panic!("degree-zero tensor must be evaluated via value()"));
        };
        let mut acc = ring.zero();
        for (idx, coeff) in &self.terms {
            let minor = Matrix::from_fn(args.len(), idx.len(), |r, c| args[r].0[idx[c]].clone());
            let det = minor.determinant();
            if !det.is_zero() {
                acc = &acc + &(coeff * &det);
            }
        }
        acc
    }

    /// The value of a degree-zero tensor.
    pub fn value(&self, zero: RingElement) -> RingElement {
        debug_assert_eq!(self.degree, 0);
        self.terms.get(&Vec::new()).cloned().unwrap_or(zero)
    }

    pub fn render(&self, dual: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mark = if dual { "^" } else { "_" };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(idx, v)| {
                let basis: Vec<String> = idx.iter().map(|i| format!("e{mark}{}", i + 1)).collect();
                if basis.is_empty() {
                    format!("{v}")
                } else {
                    format!("({v})*{}", basis.join("∧"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

fn sort_with_sign(mut idx: Vec<usize>) -> Option<(Vec<usize>, i32)> {
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in idx.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((idx, sign))
}

/// Wedge product of sections, expanded into basis components via exact minors.
pub fn wedge_sections(rank: usize, sections: &[Section]) -> Multivector {
    let p = sections.len();
    let mut out = Alternating::zero(rank, p);
    if p > rank {
        return out;
    }
    let mut idx: Vec<usize> = (0..p).collect();
    loop {
        let minor = Matrix::from_fn(p, p, |r, c| sections[r].0[idx[c]].clone());
        out.add_signed(idx.clone(), minor.determinant());
        // next increasing tuple
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < rank - (p - i) {
                idx[i] += 1;
                for k in i + 1..p {
                    idx[k] = idx[k - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The twist applied to a multivector: coefficients pass through the
/// substitution and every wedge factor through the bundle twist.
pub fn twist_multivector(st: &HomAlgebroid, u: &Multivector) -> Multivector {
    let n = st.rank();
    let mut out = Alternating::zero(n, u.degree());
    for (idx, c) in u.terms() {
        let factors: Vec<Section> = idx.iter().map(|&i| st.phi(&st.basis(i))).collect();
        let wedge = wedge_sections(n, &factors);
        out = out.add(&wedge.scale(&st.endo().apply(c)));
    }
    out
}

/// The dual twist evaluated on sections:
/// `(twist† ω)(z_1..z_q) = subst( ω(twist⁻¹ z_1, ..., twist⁻¹ z_q) )`.
pub fn twist_dagger_eval(st: &HomAlgebroid, omega: &Form, args: &[Section]) -> RingElement {
    let pulled: Vec<Section> = args.iter().map(|z| st.phi_inv(z)).collect();
    st.endo().apply(&omega.eval(&pulled))
}

/// Exterior differential evaluated literally on the given sections.
pub fn eval_exterior_derivative(st: &HomAlgebroid, omega: &Form, args: &[Section]) -> RingElement {
    let field = st.field();
    let q1 = omega.degree() + 1;
    assert_eq!(args.len(), q1, "need degree+1 section arguments");
    if omega.degree() == 0 {
        let f = omega.value(field.zero());
        return st.anchor_of(&args[0]).apply(&f);
    }
    let mut acc = field.zero();
    let pulled: Vec<Section> = args.iter().map(|z| st.phi_inv(z)).collect();
    for i in 0..q1 {
        let rest: Vec<Section> = (0..q1).filter(|&k| k != i).map(|k| pulled[k].clone()).collect();
        let val = st.anchor_of(&args[i]).apply(&omega.eval(&rest));
        acc = if i % 2 == 0 { &acc + &val } else { &acc - &val };
    }
    for i in 0..q1 {
        for j in (i + 1)..q1 {
            let mut slots = Vec::with_capacity(q1 - 1);
            slots.push(st.bracket(&pulled[i], &pulled[j]));
            for k in 0..q1 {
                if k != i && k != j {
                    slots.push(args[k].clone());
                }
            }
            let val = twist_dagger_eval(st, omega, &slots);
            // sign (-1)^{(i+1)+(j+1)} = (-1)^{i+j} for 0-based i, j
            acc = if (i + j) % 2 == 0 { &acc + &val } else { &acc - &val };
        }
    }
    acc
}

/// Exterior differential stored by its values on increasing basis tuples.
pub fn exterior_derivative(st: &HomAlgebroid, omega: &Form) -> Form {
    let n = st.rank();
    let q1 = omega.degree() + 1;
    let mut out = Alternating::zero(n, q1);
    if q1 > n {
        return out;
    }
    for idx in increasing_tuples(n, q1) {
        let args: Vec<Section> = idx.iter().map(|&i| st.basis(i)).collect();
        out.add_signed(idx, eval_exterior_derivative(st, omega, &args));
    }
    out
}

/// Covariant Lie derivative of a form along `z`, evaluated literally.
pub fn eval_lie_derivative_form(
    st: &HomAlgebroid,
    z: &Section,
    omega: &Form,
    args: &[Section],
) -> RingElement {
    let field = st.field();
    assert_eq!(args.len(), omega.degree());
    if omega.degree() == 0 {
        let f = omega.value(field.zero());
        return st.anchor_of(&st.phi(z)).apply(&f);
    }
    let pulled: Vec<Section> = args.iter().map(|w| st.phi_inv(w)).collect();
    let mut acc = st.anchor_of(&st.phi(z)).apply(&omega.eval(&pulled));
    for i in 0..args.len() {
        let mut slots = args.to_vec();
        slots[i] = st.bracket(z, &pulled[i]);
        acc = &acc - &twist_dagger_eval(st, omega, &slots);
    }
    acc
}

/// Covariant Lie derivative stored on basis tuples (degree preserved).
pub fn lie_derivative_form(st: &HomAlgebroid, z: &Section, omega: &Form) -> Form {
    let n = st.rank();
    let q = omega.degree();
    let mut out = Alternating::zero(n, q);
    for idx in increasing_tuples(n, q) {
        let args: Vec<Section> = idx.iter().map(|&i| st.basis(i)).collect();
        out.add_signed(idx, eval_lie_derivative_form(st, z, omega, &args));
    }
    out
}

/// Hom-Schouten bracket of multivectors; degrees must both be at least one.
/// Coefficients of basis wedges ride on the first factor of each monomial.
///
/// Sign convention: the double sum carries `(-1)^{i+j}` only, normalized so
/// that graded antisymmetry `[u,v] = -(-1)^{(p-1)(q-1)}[v,u]` holds for all
/// degree pairs and degree one reduces to the plain bracket.
pub fn schouten_bracket(st: &HomAlgebroid, u: &Multivector, v: &Multivector) -> Multivector {
    let n = st.rank();
    let p = u.degree();
    let q = v.degree();
    assert!(p >= 1 && q >= 1, "schouten bracket needs positive degrees");
    let mut out = Alternating::zero(n, p + q - 1);
    if p + q - 1 > n {
        return out;
    }
    for (iu, cu) in u.terms() {
        let mut fu: Vec<Section> = iu.iter().map(|&i| st.basis(i)).collect();
        fu[0] = fu[0].scale(cu);
        for (iv, cv) in v.terms() {
            let mut fv: Vec<Section> = iv.iter().map(|&i| st.basis(i)).collect();
            fv[0] = fv[0].scale(cv);
            for a in 0..p {
                for b in 0..q {
                    let mut slots = Vec::with_capacity(p + q - 1);
                    slots.push(st.bracket(&fu[a], &fv[b]));
                    for (c, s) in fu.iter().enumerate() {
                        if c != a {
                            slots.push(st.phi(s));
                        }
                    }
                    for (d, s) in fv.iter().enumerate() {
                        if d != b {
                            slots.push(st.phi(s));
                        }
                    }
                    let wedge = wedge_sections(n, &slots);
                    // (-1)^{a+b} with 1-based a, b
                    let neg = ((a + 1) + (b + 1)) % 2 == 1;
                    out = if neg { out.sub(&wedge) } else { out.add(&wedge) };
                }
            }
        }
    }
    out
}

/// Lie derivative of a multivector along a section, via the Schouten bracket.
pub fn lie_derivative_multivector(st: &HomAlgebroid, u: &Section, v: &Multivector) -> Multivector {
    let mut u1 = Alternating::zero(st.rank(), 1);
    for (i, c) in u.0.iter().enumerate() {
        u1.add_signed(vec![i], c.clone());
    }
    schouten_bracket(st, &u1, v)
}

pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - (k - i) {
                idx[i] += 1;
                for t in i + 1..k {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::{HomAlgebroid, HomBundle, StructureKind};
    use crate::linalg::Matrix;
    use crate::ring::{CoefficientRing, RingEndomorphism, TwistedDerivation};

    fn affine(lambda: i64) -> HomAlgebroid {
        let endo = RingEndomorphism::identity(&CoefficientRing::rationals());
        let ring = endo.ring().clone();
        let twist = Matrix::from_rows(vec![
            vec![ring.one(), ring.zero()],
            vec![ring.zero(), ring.from_int(lambda)],
        ]);
        let inv = twist.inverse().unwrap();
        let bundle = HomBundle::new(&endo, twist, inv).unwrap();
        let e2 = bundle.basis(1);
        let z = bundle.zero_section();
        HomAlgebroid::new(
            bundle,
            StructureKind::Lie,
            vec![vec![z.clone(), e2.clone()], vec![e2.neg(), z]],
            vec![TwistedDerivation::zero(&endo); 2],
        )
        .unwrap()
    }

    #[test]
    fn wedge_antisymmetry() {
        let st = affine(1);
        let x = st.basis(0);
        let y = st.basis(1);
        let xy = wedge_sections(2, &[x.clone(), y.clone()]);
        let yx = wedge_sections(2, &[y, x]);
        assert_eq!(xy, yx.scale(&st.field().from_int(-1)));
        let xx = wedge_sections(2, &[st.basis(0), st.basis(0)]);
        assert!(xx.is_zero());
    }

    #[test]
    fn exterior_derivative_of_dual_basis_form() {
        // [e1,e2] = e2, twist(e2) = λ e2: d e^2 (e1,e2) = -λ^{-2}
        let lambda = 3;
        let st = affine(lambda);
        let e2_dual = Alternating::basis_one(2, 1, st.field().one());
        let d = exterior_derivative(&st, &e2_dual);
        let val = d.value_at(&[0, 1]).unwrap();
        let expected = st
            .field()
            .one()
            .checked_div(&st.field().from_int(lambda * lambda))
            .unwrap()
            .neg();
        assert_eq!(val, expected);
        // and d e^1 = 0 since e1 never appears as a bracket value
        let e1_dual = Alternating::basis_one(2, 0, st.field().one());
        assert!(exterior_derivative(&st, &e1_dual).is_zero());
    }

    #[test]
    fn exterior_derivative_zero_cases() {
        let endo = RingEndomorphism::identity(&CoefficientRing::rationals());
        let st = HomAlgebroid::abelian(&endo, 2).unwrap();
        // d of a function over the scalar ring vanishes (zero anchor)
        let f = Alternating::scalar(2, st.field().from_int(5));
        assert!(exterior_derivative(&st, &f).is_zero());
        // abelian bracket, zero anchor: d of anything vanishes
        let om = Alternating::from_two_form_matrix(&Matrix::from_rows(vec![
            vec![st.field().zero(), st.field().one()],
            vec![st.field().from_int(-1), st.field().zero()],
        ]));
        assert!(exterior_derivative(&st, &om).is_zero());
    }

    #[test]
    fn schouten_reduces_to_bracket_in_degree_one() {
        let st = affine(2);
        let e1 = Alternating::basis_one(2, 0, st.field().one());
        let e2 = Alternating::basis_one(2, 1, st.field().one());
        let br = schouten_bracket(&st, &e1, &e2);
        assert_eq!(br.value_at(&[1]).unwrap(), st.field().one());
        assert_eq!(br.terms().count(), 1);
    }

    #[test]
    fn schouten_with_wedge() {
        // [e1∧e2, e2] in the affine structure: single term from [e1, e2]
        let st = affine(2);
        let u = wedge_sections(2, &[st.basis(0), st.basis(1)]);
        let v = Alternating::basis_one(2, 1, st.field().one());
        let got = schouten_bracket(&st, &u, &v);
        // the [e2,e2] term drops, leaving (-1)^{1+1}[e1,e2]∧phi(e2) = e2∧(2e2) = 0
        assert!(got.is_zero());
    }

    #[test]
    fn lie_derivative_examples() {
        let st = affine(2);
        let e2 = Alternating::basis_one(2, 1, st.field().one());
        // L_{e1} e2 = [e1, e2] = e2
        let got = lie_derivative_multivector(&st, &st.basis(0), &e2);
        assert_eq!(got.value_at(&[1]).unwrap(), st.field().one());
        // abelian: everything zero
        let endo = RingEndomorphism::identity(&CoefficientRing::rationals());
        let ab = HomAlgebroid::abelian(&endo, 2).unwrap();
        let got = lie_derivative_multivector(&ab, &ab.basis(0), &e2);
        assert!(got.is_zero());
    }

    #[test]
    fn covariant_lie_derivative_vanishes_on_abelian() {
        let endo = RingEndomorphism::identity(&CoefficientRing::rationals());
        let st = HomAlgebroid::abelian(&endo, 2).unwrap();
        let om = Alternating::basis_one(2, 1, st.field().one());
        let moved = lie_derivative_form(&st, &st.basis(0), &om);
        assert!(moved.is_zero());
    }

    #[test]
    fn covariant_lie_derivative_on_dual_form() {
        // L_{e1} e^2 evaluated at e2 equals -λ^{-2} ... namely
        // a-term vanishes, leaving -subst(e^2(phi_inv([e1, phi_inv e2]))).
        let lambda = 2;
        let st = affine(lambda);
        let om = Alternating::basis_one(2, 1, st.field().one());
        let got = eval_lie_derivative_form(&st, &st.basis(0), &om, &[st.basis(1)]);
        let expected = st
            .field()
            .one()
            .checked_div(&st.field().from_int(lambda * lambda))
            .unwrap()
            .neg();
        assert_eq!(got, expected);
    }
}
