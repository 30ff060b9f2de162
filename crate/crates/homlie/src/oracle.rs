//! Naive reference evaluators used by the test suites as independent
//! cross-checks of the calculus operators. Everything here expands the
//! defining formulas term by term over all index tuples, with no shared
//! shortcuts with the main implementations: form evaluation enumerates all
//! tuples through signed lookups instead of minors, and wedges are built from
//! explicit permutation signs instead of determinants.

use crate::algebroid::calculus::{Alternating, Multivector};
use crate::algebroid::{HomAlgebroid, Section};
use crate::linalg::Matrix;
use crate::parakahler::ProductStructure;
use crate::ring::RingElement;

fn all_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &out {
            for i in 0..n {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// Form evaluation by brute-force multilinear expansion over every tuple.
pub fn eval_form(st: &HomAlgebroid, omega: &Alternating, args: &[Section]) -> RingElement {
    let field = st.field();
    if omega.degree() == 0 {
        return omega.value(field.zero());
    }
    let n = st.rank();
    let mut acc = field.zero();
    for tuple in all_tuples(n, args.len()) {
        let Some(base) = omega.value_at(&tuple) else {
            continue;
        };
        let mut coeff = field.one();
        for (slot, &i) in tuple.iter().enumerate() {
            coeff = &coeff * &args[slot].0[i];
        }
        acc = &acc + &(&coeff * &base);
    }
    acc
}

fn dagger_eval(st: &HomAlgebroid, omega: &Alternating, args: &[Section]) -> RingElement {
    let pulled: Vec<Section> = args.iter().map(|z| st.phi_inv(z)).collect();
    st.endo().apply(&eval_form(st, omega, &pulled))
}

/// Exterior differential by direct term-by-term expansion of its two sums.
pub fn exterior_derivative_eval(
    st: &HomAlgebroid,
    omega: &Alternating,
    args: &[Section],
) -> RingElement {
    let field = st.field();
    if omega.degree() == 0 {
        return st.anchor_of(&args[0]).apply(&omega.value(field.zero()));
    }
    let q1 = args.len();
    let mut acc = field.zero();
    for i in 0..q1 {
        let mut rest = Vec::new();
        for (k, z) in args.iter().enumerate() {
            if k != i {
                rest.push(st.phi_inv(z));
            }
        }
        let mut term = st.anchor_of(&args[i]).apply(&eval_form(st, omega, &rest));
        if i % 2 == 1 {
            term = term.neg();
        }
        acc = &acc + &term;
    }
    for i in 0..q1 {
        for j in 0..q1 {
            if i >= j {
                continue;
            }
            let mut slots = vec![st.bracket(&st.phi_inv(&args[i]), &st.phi_inv(&args[j]))];
            for (k, z) in args.iter().enumerate() {
                if k != i && k != j {
                    slots.push(z.clone());
                }
            }
            let mut term = dagger_eval(st, omega, &slots);
            if (i + j) % 2 == 1 {
                term = term.neg();
            }
            acc = &acc + &term;
        }
    }
    acc
}

/// Covariant Lie derivative by direct expansion.
pub fn lie_derivative_form_eval(
    st: &HomAlgebroid,
    z: &Section,
    omega: &Alternating,
    args: &[Section],
) -> RingElement {
    let field = st.field();
    if omega.degree() == 0 {
        return st.anchor_of(&st.phi(z)).apply(&omega.value(field.zero()));
    }
    let pulled: Vec<Section> = args.iter().map(|w| st.phi_inv(w)).collect();
    let mut acc = st.anchor_of(&st.phi(z)).apply(&eval_form(st, omega, &pulled));
    for i in 0..args.len() {
        let mut slots = args.to_vec();
        slots[i] = st.bracket(z, &pulled[i]);
        acc = &acc - &dagger_eval(st, omega, &slots);
    }
    acc
}

fn permutation_sign(perm: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Wedge of sections via explicit permutation signs, no determinants.
pub fn wedge_sections(st: &HomAlgebroid, sections: &[Section]) -> Multivector {
    let n = st.rank();
    let p = sections.len();
    let mut out = Alternating::zero(n, p);
    for tuple in all_tuples(n, p) {
        let mut distinct = true;
        for a in 0..p {
            for b in (a + 1)..p {
                if tuple[a] == tuple[b] {
                    distinct = false;
                }
            }
        }
        if !distinct {
            continue;
        }
        let mut sorted = tuple.clone();
        sorted.sort_unstable();
        if sorted != tuple {
            continue; // visit each increasing tuple once, permuting below
        }
        let mut value = st.field().zero();
        for perm in permutations(&tuple) {
            let mut prod = st.field().one();
            for (slot, &i) in perm.iter().enumerate() {
                prod = &prod * &sections[slot].0[i];
            }
            let sign = relative_sign(&tuple, &perm);
            value = if sign > 0 { &value + &prod } else { &value - &prod };
        }
        out.add_signed(tuple, value);
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        let mut rest: Vec<usize> = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn relative_sign(base: &[usize], perm: &[usize]) -> i32 {
    // sign of the permutation taking base to perm
    let positions: Vec<usize> = perm
        .iter()
        .map(|v| base.iter().position(|b| b == v).expect("same multiset"))
        .collect();
    permutation_sign(&positions)
}

/// Hom-Schouten bracket by direct expansion of the defining double sum.
pub fn schouten_bracket(st: &HomAlgebroid, u: &Multivector, v: &Multivector) -> Multivector {
    let n = st.rank();
    let p = u.degree();
    let q = v.degree();
    let mut out = Alternating::zero(n, p + q - 1);
    for (iu, cu) in u.terms() {
        for (iv, cv) in v.terms() {
            let mut fu: Vec<Section> = iu.iter().map(|&i| st.basis(i)).collect();
            fu[0] = fu[0].scale(cu);
            let mut fv: Vec<Section> = iv.iter().map(|&i| st.basis(i)).collect();
            fv[0] = fv[0].scale(cv);
            for a in 1..=p {
                for b in 1..=q {
                    let mut slots = vec![st.bracket(&fu[a - 1], &fv[b - 1])];
                    for (c, s) in fu.iter().enumerate() {
                        if c + 1 != a {
                            slots.push(st.phi(s));
                        }
                    }
                    for (d, s) in fv.iter().enumerate() {
                        if d + 1 != b {
                            slots.push(st.phi(s));
                        }
                    }
                    let wedge = wedge_sections(st, &slots);
                    let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                    out = if sign > 0 { out.add(&wedge) } else { out.sub(&wedge) };
                }
            }
        }
    }
    out
}

/// Nijenhuis torsion by direct four-term expansion with its own composite.
pub fn nijenhuis(
    st: &HomAlgebroid,
    k: &ProductStructure,
    x: &Section,
    y: &Section,
) -> Section {
    let composite = |s: &Section| -> Section {
        // twist ∘ K, recomputed from raw matrices
        let kx = Section(k.matrix().mul_vec(&s.0));
        let subbed: Vec<RingElement> = kx.0.iter().map(|c| st.endo().apply(c)).collect();
        Section(st.bundle().twist_matrix().mul_vec(&subbed))
    };
    let px = composite(x);
    let py = composite(y);
    let mut acc = st.bracket(&px, &py);
    acc = acc.sub(&composite(&st.bracket(&px, y)));
    acc = acc.sub(&composite(&st.bracket(x, &py)));
    acc.add(&st.bracket(x, y))
}

/// Brute-force checker that a matrix is the inverse of another.
pub fn is_two_sided_inverse(a: &Matrix, b: &Matrix) -> bool {
    let n = a.rows();
    let ring = a.at(0, 0).ring().clone();
    a.mul(b) == Matrix::identity(&ring, n) && b.mul(a) == Matrix::identity(&ring, n)
}
