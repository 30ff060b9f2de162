//! Brute-force dense polynomial expander, independent of the library's
//! representation: flat term lists, no canonical map, normalization by
//! sorting at the end only.

#![allow(dead_code)]

use homlie::ring::RingElement;
use num::{BigRational, Zero};

/// Unnormalized term list: (coefficient, exponent vector).
pub type NaivePoly = Vec<(BigRational, Vec<u32>)>;

pub fn naive_add(a: &NaivePoly, b: &NaivePoly) -> NaivePoly {
    let mut out = a.clone();
    out.extend(b.iter().cloned());
    out
}

pub fn naive_mul(a: &NaivePoly, b: &NaivePoly) -> NaivePoly {
    let mut out = Vec::new();
    for (ca, ea) in a {
        for (cb, eb) in b {
            let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            out.push((ca * cb, exps));
        }
    }
    out
}

pub fn naive_neg(a: &NaivePoly) -> NaivePoly {
    a.iter().map(|(c, e)| (-c.clone(), e.clone())).collect()
}

/// Collapses duplicates and drops zeros; sorted by exponent vector.
pub fn normalize(p: &NaivePoly) -> Vec<(Vec<u32>, BigRational)> {
    let mut sorted: Vec<(Vec<u32>, BigRational)> =
        p.iter().map(|(c, e)| (e.clone(), c.clone())).collect();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Vec<u32>, BigRational)> = Vec::new();
    for (e, c) in sorted {
        match out.last_mut() {
            Some((le, lc)) if *le == e => *lc += c,
            _ => out.push((e, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Extracts the term list of a polynomial-valued ring element.
pub fn terms_of(e: &RingElement) -> NaivePoly {
    let p = e
        .as_poly()
        .expect("naive expander needs polynomial values");
    p.terms().map(|(m, c)| (c.clone(), m.0.clone())).collect()
}

/// Exact comparison of a ring element against a naive term list.
pub fn agrees(e: &RingElement, naive: &NaivePoly) -> bool {
    normalize(&terms_of(e)) == normalize(naive)
}
