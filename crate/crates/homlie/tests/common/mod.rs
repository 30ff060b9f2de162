//! Shared builders for the structures exercised across the integration tests.

#![allow(dead_code)]

use homlie::algebroid::{HomAlgebroid, HomBundle, Metric, Section, StructureKind, SymplecticForm};
use homlie::linalg::Matrix;
use homlie::parakahler::{AdaptedSplit, ProductStructure};
use homlie::ring::{CoefficientRing, MultiPoly, RingEndomorphism, TwistedDerivation};
use num::BigRational;

pub fn rational_endo() -> RingEndomorphism {
    RingEndomorphism::identity(&CoefficientRing::rationals())
}

/// The fraction field of Q[x] with the scaling substitution x -> 2x.
pub fn qx_scale_endo() -> RingEndomorphism {
    let ring = CoefficientRing::fraction_field(&["x"]).unwrap();
    let two = BigRational::from_integer(2.into());
    let half = BigRational::new(1.into(), 2.into());
    RingEndomorphism::new(
        &ring,
        vec![MultiPoly::var(1, 0).scale(&two)],
        vec![MultiPoly::var(1, 0).scale(&half)],
    )
    .unwrap()
}

pub fn lie_structure(
    endo: &RingEndomorphism,
    twist_rows: Vec<Vec<&str>>,
    brackets: &[(usize, usize, Vec<&str>)],
    anchors: &[Vec<&str>],
) -> HomAlgebroid {
    let ring = endo.ring().clone();
    let n = twist_rows.len();
    let twist = Matrix::from_fn(n, n, |r, c| ring.parse(twist_rows[r][c]).unwrap());
    let inv = twist.inverse().unwrap();
    let bundle = HomBundle::new(endo, twist, inv).unwrap();
    let mut table = vec![vec![bundle.zero_section(); n]; n];
    for (i, j, coords) in brackets {
        let sec = Section(coords.iter().map(|s| ring.parse(s).unwrap()).collect());
        table[*i][*j] = sec.clone();
        table[*j][*i] = sec.neg();
    }
    let anchors: Vec<TwistedDerivation> = anchors
        .iter()
        .map(|coeffs| {
            TwistedDerivation::new(
                endo,
                coeffs.iter().map(|s| ring.parse(s).unwrap()).collect(),
            )
            .unwrap()
        })
        .collect();
    HomAlgebroid::new(bundle, StructureKind::Lie, table, anchors).unwrap()
}

pub fn metric(st: &HomAlgebroid, rows: Vec<Vec<&str>>) -> Metric {
    let ring = st.field().clone();
    let n = st.rank();
    Metric::new(
        n,
        Matrix::from_fn(n, n, |r, c| ring.parse(rows[r][c]).unwrap()),
    )
    .unwrap()
}

pub fn symplectic(st: &HomAlgebroid, rows: Vec<Vec<&str>>) -> SymplecticForm {
    let ring = st.field().clone();
    let n = st.rank();
    SymplecticForm::new(
        n,
        Matrix::from_fn(n, n, |r, c| ring.parse(rows[r][c]).unwrap()),
    )
    .unwrap()
}

pub fn product_structure(st: &HomAlgebroid, rows: Vec<Vec<&str>>) -> ProductStructure {
    let ring = st.field().clone();
    let n = st.rank();
    ProductStructure::new(
        n,
        Matrix::from_fn(n, n, |r, c| ring.parse(rows[r][c]).unwrap()),
    )
    .unwrap()
}

pub fn basis_split(st: &HomAlgebroid, plus: &[usize], minus: &[usize]) -> AdaptedSplit {
    AdaptedSplit {
        plus: plus.iter().map(|&i| st.basis(i)).collect(),
        minus: minus.iter().map(|&i| st.basis(i)).collect(),
    }
}

/// Rank-2 abelian structure over the rationals with trivial twist.
pub fn abelian_n2() -> HomAlgebroid {
    HomAlgebroid::abelian(&rational_endo(), 2).unwrap()
}

/// [e1,e2] = e2 over the rationals, identity twist.
pub fn rank2_affine() -> HomAlgebroid {
    lie_structure(
        &rational_endo(),
        vec![vec!["1", "0"], vec!["0", "1"]],
        &[(0, 1, vec!["0", "1"])],
        &[vec![], vec![]],
    )
}

/// [e1,e2] = e3 with twist diag(1,-1,-1) over the rationals.
pub fn heisenberg_hom() -> HomAlgebroid {
    lie_structure(
        &rational_endo(),
        vec![
            vec!["1", "0", "0"],
            vec!["0", "-1", "0"],
            vec!["0", "0", "-1"],
        ],
        &[(0, 1, vec!["0", "0", "1"])],
        &[vec![], vec![], vec![]],
    )
}

/// Rank 1 over Q(x) with anchor subst ∘ x d/dx and identity twist.
pub fn poly_rank1_qscale() -> HomAlgebroid {
    lie_structure(&qx_scale_endo(), vec![vec!["1"]], &[], &[vec!["x"]])
}

/// Rank-2 double over Q(x): primal generator with anchor x d/dx, dual
/// generator with zero anchor, all basis brackets zero, identity twist.
pub fn double_zero_poisson() -> HomAlgebroid {
    lie_structure(
        &qx_scale_endo(),
        vec![vec!["1", "0"], vec!["0", "1"]],
        &[],
        &[vec!["x"], vec!["0"]],
    )
}

pub fn double_zero_poisson_attachments(
    st: &HomAlgebroid,
) -> (Metric, SymplecticForm, ProductStructure, AdaptedSplit) {
    (
        metric(st, vec![vec!["0", "1"], vec!["1", "0"]]),
        symplectic(st, vec![vec!["0", "1"], vec!["-1", "0"]]),
        product_structure(st, vec![vec!["1", "0"], vec!["0", "-1"]]),
        basis_split(st, &[0], &[1]),
    )
}

/// Rank-4 double over the rationals with a nonabelian primal block and zero
/// dual and mixed brackets; para-Hermitian but not para-Kahler.
pub fn double_mutant() -> HomAlgebroid {
    lie_structure(
        &rational_endo(),
        vec![
            vec!["1", "0", "0", "0"],
            vec!["0", "1", "0", "0"],
            vec!["0", "0", "1", "0"],
            vec!["0", "0", "0", "1"],
        ],
        &[(0, 1, vec!["0", "1", "0", "0"])],
        &[vec![], vec![], vec![], vec![]],
    )
}

pub fn double_mutant_attachments(
    st: &HomAlgebroid,
) -> (Metric, ProductStructure, AdaptedSplit) {
    (
        metric(
            st,
            vec![
                vec!["0", "0", "1", "0"],
                vec!["0", "0", "0", "1"],
                vec!["1", "0", "0", "0"],
                vec!["0", "1", "0", "0"],
            ],
        ),
        product_structure(
            st,
            vec![
                vec!["1", "0", "0", "0"],
                vec!["0", "1", "0", "0"],
                vec!["0", "0", "-1", "0"],
                vec!["0", "0", "0", "-1"],
            ],
        ),
        basis_split(st, &[0, 1], &[2, 3]),
    )
}

/// Two affine blocks with different diagonal twists and a block product
/// structure equal to the twist inverse on one block and its negative on the
/// other.
pub fn foliation_block() -> HomAlgebroid {
    lie_structure(
        &rational_endo(),
        vec![
            vec!["1", "0", "0", "0"],
            vec!["0", "3", "0", "0"],
            vec!["0", "0", "1", "0"],
            vec!["0", "0", "0", "5"],
        ],
        &[
            (0, 1, vec!["0", "1", "0", "0"]),
            (2, 3, vec!["0", "0", "0", "1"]),
        ],
        &[vec![], vec![], vec![], vec![]],
    )
}

pub fn foliation_block_product(st: &HomAlgebroid) -> ProductStructure {
    product_structure(
        st,
        vec![
            vec!["1", "0", "0", "0"],
            vec!["0", "1/3", "0", "0"],
            vec!["0", "0", "-1", "0"],
            vec!["0", "0", "0", "-1/5"],
        ],
    )
}
