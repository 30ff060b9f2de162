//! Hom-bundles and hom-(Lie-)algebroid structures over a coefficient field:
//! twist maps, sections, bracket/product extension by the twisted Leibniz
//! rules, anchors valued in twisted derivations, metrics and 2-forms.

pub mod calculus;
pub mod checks;

use std::fmt;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::ring::{CoefficientRing, RingElement, RingEndomorphism, TwistedDerivation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("twist matrix must be square, got {rows}x{cols}")]
    TwistShape { rows: usize, cols: usize },
    #[error("declared twist inverse fails on basis section e{index}: got {got}")]
    TwistNotInverse { index: usize, got: String },
    #[error("coefficients must live in a field kind (rationals or fraction field)")]
    NotAField,
    #[error("expected {expected} {what}, got {got}")]
    Count {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("operation requires a {0} structure")]
    WrongKind(&'static str),
    #[error("section spans are not of constant rank: rank {rank} for {count} sections")]
    NotConstantRank { rank: usize, count: usize },
    #[error("matrix attachment must be {rank}x{rank}")]
    BadAttachment { rank: usize },
}

/// A free module of finite rank with a semilinear twist and its declared inverse.
#[derive(Debug, Clone)]
pub struct HomBundle {
    field: CoefficientRing,
    endo: RingEndomorphism,
    rank: usize,
    twist: Matrix,
    twist_inv: Matrix,
}

impl HomBundle {
    /// `twist` is the matrix of the twist on basis sections (columns are the
    /// images), `twist_inv` the matrix of its inverse map in the same sense.
    /// Both semilinear compositions are verified on every basis section.
    pub fn new(
        endo: &RingEndomorphism,
        twist: Matrix,
        twist_inv: Matrix,
    ) -> Result<Self, StructureError> {
        let field = endo.ring().clone();
        if !field.is_field() {
            return Err(StructureError::NotAField);
        }
        if twist.rows() != twist.cols() {
            return Err(StructureError::TwistShape {
                rows: twist.rows(),
                cols: twist.cols(),
            });
        }
        if twist_inv.rows() != twist.rows() || twist_inv.cols() != twist.cols() {
            return Err(StructureError::TwistShape {
                rows: twist_inv.rows(),
                cols: twist_inv.cols(),
            });
        }
        let bundle = HomBundle {
            field,
            endo: endo.clone(),
            rank: twist.rows(),
            twist,
            twist_inv,
        };
        for i in 0..bundle.rank {
            let e = bundle.basis(i);
            let round = bundle.twist_unapply(&bundle.twist_apply(&e));
            if round != e {
                return Err(StructureError::TwistNotInverse {
                    index: i + 1,
                    got: round.render(),
                });
            }
            let round = bundle.twist_apply(&bundle.twist_unapply(&e));
            if round != e {
                return Err(StructureError::TwistNotInverse {
                    index: i + 1,
                    got: round.render(),
                });
            }
        }
        Ok(bundle)
    }

    pub fn identity_twist(endo: &RingEndomorphism, rank: usize) -> Result<Self, StructureError> {
        let id = Matrix::identity(endo.ring(), rank);
        Self::new(endo, id.clone(), id)
    }

    pub fn field(&self) -> &CoefficientRing {
        &self.field
    }

    pub fn endo(&self) -> &RingEndomorphism {
        &self.endo
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn twist_matrix(&self) -> &Matrix {
        &self.twist
    }

    pub fn twist_inv_matrix(&self) -> &Matrix {
        &self.twist_inv
    }

    pub fn basis(&self, i: usize) -> Section {
        Section(
            (0..self.rank)
                .map(|k| if k == i { self.field.one() } else { self.field.zero() })
                .collect(),
        )
    }

    pub fn zero_section(&self) -> Section {
        Section(vec![self.field.zero(); self.rank])
    }

    /// The semilinear twist: coefficients pass through the substitution.
    pub fn twist_apply(&self, s: &Section) -> Section {
        let subbed: Vec<RingElement> = s.0.iter().map(|c| self.endo.apply(c)).collect();
        Section(self.twist.mul_vec(&subbed))
    }

    pub fn twist_unapply(&self, s: &Section) -> Section {
        let subbed: Vec<RingElement> = s.0.iter().map(|c| self.endo.apply_inverse(c)).collect();
        Section(self.twist_inv.mul_vec(&subbed))
    }

    pub fn twist_apply_iter(&self, s: &Section, times: usize) -> Section {
        let mut out = s.clone();
        for _ in 0..times {
            out = self.twist_apply(&out);
        }
        out
    }
}

/// Coordinates of a section in the structure basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section(pub Vec<RingElement>);

impl Section {
    pub fn coords(&self) -> &[RingElement] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Section) -> Section {
        Section(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Section) -> Section {
        Section(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Section {
        Section(self.0.iter().map(|a| a.neg()).collect())
    }

    pub fn scale(&self, f: &RingElement) -> Section {
        Section(self.0.iter().map(|a| a * f).collect())
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                parts.push(format!("e{}", i + 1));
            } else {
                parts.push(format!("({})*e{}", c, i + 1));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    /// Skew bracket with the hom-Jacobi identity (hom-Lie algebroid).
    Lie,
    /// Plain product satisfying the two twisted module rules (hom-algebroid).
    Product,
}

/// Structure constants, anchor table and extension rules on a hom-bundle.
#[derive(Debug, Clone)]
pub struct HomAlgebroid {
    bundle: HomBundle,
    kind: StructureKind,
    /// `table[i][j]` holds the coordinates of `e_i ∘ e_j` (bracket or product).
    table: Vec<Vec<Section>>,
    anchors: Vec<TwistedDerivation>,
}

impl HomAlgebroid {
    pub fn new(
        bundle: HomBundle,
        kind: StructureKind,
        table: Vec<Vec<Section>>,
        anchors: Vec<TwistedDerivation>,
    ) -> Result<Self, StructureError> {
        let n = bundle.rank();
        if table.len() != n {
            return Err(StructureError::Count {
                what: "table rows",
                expected: n,
                got: table.len(),
            });
        }
        for row in &table {
            if row.len() != n {
                return Err(StructureError::Count {
                    what: "table columns",
                    expected: n,
                    got: row.len(),
                });
            }
            for s in row {
                if s.0.len() != n {
                    return Err(StructureError::Count {
                        what: "section coordinates",
                        expected: n,
                        got: s.0.len(),
                    });
                }
            }
        }
        if anchors.len() != n {
            return Err(StructureError::Count {
                what: "anchor entries",
                expected: n,
                got: anchors.len(),
            });
        }
        Ok(HomAlgebroid {
            bundle,
            kind,
            table,
            anchors,
        })
    }

    /// All-zero bracket and anchor over an identity twist.
    pub fn abelian(endo: &RingEndomorphism, rank: usize) -> Result<Self, StructureError> {
        let bundle = HomBundle::identity_twist(endo, rank)?;
        let table = vec![vec![bundle.zero_section(); rank]; rank];
        let anchors = vec![TwistedDerivation::zero(endo); rank];
        Self::new(bundle, StructureKind::Lie, table, anchors)
    }

    pub fn bundle(&self) -> &HomBundle {
        &self.bundle
    }

    pub fn field(&self) -> &CoefficientRing {
        self.bundle.field()
    }

    pub fn endo(&self) -> &RingEndomorphism {
        self.bundle.endo()
    }

    pub fn rank(&self) -> usize {
        self.bundle.rank()
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn table(&self) -> &[Vec<Section>] {
        &self.table
    }

    pub fn anchors(&self) -> &[TwistedDerivation] {
        &self.anchors
    }

    pub fn basis(&self, i: usize) -> Section {
        self.bundle.basis(i)
    }

    pub fn phi(&self, s: &Section) -> Section {
        self.bundle.twist_apply(s)
    }

    pub fn phi_inv(&self, s: &Section) -> Section {
        self.bundle.twist_unapply(s)
    }

    /// The anchor extended module-linearly to arbitrary sections.
    pub fn anchor_of(&self, s: &Section) -> TwistedDerivation {
        let mut acc = TwistedDerivation::zero(self.bundle.endo());
        for (i, c) in s.0.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.anchors[i].scale(c));
            }
        }
        acc
    }

    /// Bracket (lie kind) or product (product kind) of two sections, extended
    /// from the basis table by the twisted Leibniz rules.
    pub fn bracket(&self, x: &Section, y: &Section) -> Section {
        let endo = self.bundle.endo();
        let n = self.rank();
        let fx: Vec<RingElement> = x.0.iter().map(|c| endo.apply(c)).collect();
        let gy: Vec<RingElement> = y.0.iter().map(|c| endo.apply(c)).collect();
        let mut out = self.bundle.zero_section();
        for i in 0..n {
            if fx[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if gy[j].is_zero() {
                    continue;
                }
                out = out.add(&self.table[i][j].scale(&(&fx[i] * &gy[j])));
            }
        }
        let ax = self.anchor_of(&self.phi(x));
        for j in 0..n {
            let d = ax.apply(&y.0[j]);
            if !d.is_zero() {
                out = out.add(&Section(self.bundle.twist.column(j)).scale(&d));
            }
        }
        if self.kind == StructureKind::Lie {
            let ay = self.anchor_of(&self.phi(y));
            for i in 0..n {
                let d = ay.apply(&x.0[i]);
                if !d.is_zero() {
                    out = out.sub(&Section(self.bundle.twist.column(i)).scale(&d));
                }
            }
        }
        out
    }
}

/// Symmetric bilinear pairing given by its matrix on basis sections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric(pub Matrix);

impl Metric {
    pub fn new(rank: usize, mat: Matrix) -> Result<Self, StructureError> {
        if mat.rows() != rank || mat.cols() != rank {
            return Err(StructureError::BadAttachment { rank });
        }
        Ok(Metric(mat))
    }

    pub fn eval(&self, x: &Section, y: &Section) -> RingElement {
        pair(&self.0, x, y)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }
}

/// Antisymmetric bilinear pairing given by its matrix on basis sections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticForm(pub Matrix);

impl SymplecticForm {
    pub fn new(rank: usize, mat: Matrix) -> Result<Self, StructureError> {
        if mat.rows() != rank || mat.cols() != rank {
            return Err(StructureError::BadAttachment { rank });
        }
        Ok(SymplecticForm(mat))
    }

    pub fn eval(&self, x: &Section, y: &Section) -> RingElement {
        pair(&self.0, x, y)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }
}

fn pair(mat: &Matrix, x: &Section, y: &Section) -> RingElement {
    let my = mat.mul_vec(&y.0);
    let mut acc = x.0[0].ring().zero();
    for (a, b) in x.0.iter().zip(&my) {
        acc = &acc + &(a * b);
    }
    acc
}

pub(crate) fn tuple_witness(label: &str, idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| format!("e{}", i + 1)).collect();
    format!("{label}({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MultiPoly;
    use num::BigRational;

    fn rational_endo() -> RingEndomorphism {
        RingEndomorphism::identity(&CoefficientRing::rationals())
    }

    /// [e1,e2] = e2, twist diag(1, lambda), zero anchor, over the rationals.
    pub(crate) fn affine_structure(lambda: i64) -> HomAlgebroid {
        let endo = rational_endo();
        let ring = endo.ring().clone();
        let twist = Matrix::from_rows(vec![
            vec![ring.one(), ring.zero()],
            vec![ring.zero(), ring.from_int(lambda)],
        ]);
        let twist_inv = twist.inverse().unwrap();
        let bundle = HomBundle::new(&endo, twist, twist_inv).unwrap();
        let e2 = bundle.basis(1);
        let zero = bundle.zero_section();
        let table = vec![
            vec![zero.clone(), e2.clone()],
            vec![e2.neg(), zero.clone()],
        ];
        let anchors = vec![TwistedDerivation::zero(&endo); 2];
        HomAlgebroid::new(bundle, StructureKind::Lie, table, anchors).unwrap()
    }

    #[test]
    fn abelian_bracket_vanishes() {
        let st = HomAlgebroid::abelian(&rational_endo(), 2).unwrap();
        let x = Section(vec![st.field().from_int(3), st.field().from_int(-1)]);
        let y = Section(vec![st.field().one(), st.field().from_int(5)]);
        assert!(st.bracket(&x, &y).is_zero());
    }

    #[test]
    fn basis_bracket_reads_table() {
        let st = affine_structure(2);
        assert_eq!(st.bracket(&st.basis(0), &st.basis(1)), st.basis(1));
        assert_eq!(st.bracket(&st.basis(1), &st.basis(0)), st.basis(1).neg());
    }

    #[test]
    fn leibniz_extension_over_polynomials() {
        // rank 1 over Q[x], zero table, anchor = subst ∘ x d/dx, twist (1),
        // with subst x -> 2x: [e1, x e1] = anchor(phi e1)(x) * phi(e1).
        let ring = CoefficientRing::fraction_field(&["x"]).unwrap();
        let two = BigRational::from_integer(2.into());
        let half = BigRational::new(1.into(), 2.into());
        let endo = RingEndomorphism::new(
            &ring,
            vec![MultiPoly::var(1, 0).scale(&two)],
            vec![MultiPoly::var(1, 0).scale(&half)],
        )
        .unwrap();
        let bundle = HomBundle::identity_twist(&endo, 1).unwrap();
        let anchor = TwistedDerivation::new(&endo, vec![ring.var(0)]).unwrap();
        let st = HomAlgebroid::new(
            bundle,
            StructureKind::Lie,
            vec![vec![Section(vec![ring.zero()])]],
            vec![anchor.clone()],
        )
        .unwrap();
        let x = ring.var(0);
        let e1 = st.basis(0);
        let got = st.bracket(&e1, &e1.scale(&x));
        // anchor(phi e1)(x) = subst(x * 1) = 2x
        assert_eq!(got, e1.scale(&ring.parse("2*x").unwrap()));
        // skewness of the extension
        let back = st.bracket(&e1.scale(&x), &e1);
        assert_eq!(back, got.neg());
    }

    #[test]
    fn leibniz_extension_with_shift_substitution() {
        // rank 1 over Q[x], zero table, anchor = subst ∘ d/dx with the shift
        // x -> x+1: [e1, x e1] = anchor(phi e1)(x) phi(e1) = subst(1) e1 = e1
        let ring = CoefficientRing::fraction_field(&["x"]).unwrap();
        let endo = RingEndomorphism::new(
            &ring,
            vec![MultiPoly::var(1, 0).add(&MultiPoly::one(1))],
            vec![MultiPoly::var(1, 0).sub(&MultiPoly::one(1))],
        )
        .unwrap();
        let bundle = HomBundle::identity_twist(&endo, 1).unwrap();
        let anchor = TwistedDerivation::new(&endo, vec![ring.one()]).unwrap();
        let st = HomAlgebroid::new(
            bundle,
            StructureKind::Lie,
            vec![vec![Section(vec![ring.zero()])]],
            vec![anchor],
        )
        .unwrap();
        let got = st.bracket(&st.basis(0), &st.basis(0).scale(&ring.var(0)));
        assert_eq!(got, st.basis(0));
    }

    #[test]
    fn twist_inverse_validated() {
        let endo = rational_endo();
        let ring = endo.ring().clone();
        let twist = Matrix::from_rows(vec![
            vec![ring.from_int(2), ring.zero()],
            vec![ring.zero(), ring.one()],
        ]);
        let bad_inv = Matrix::identity(&ring, 2);
        let err = HomBundle::new(&endo, twist, bad_inv).unwrap_err();
        assert!(matches!(err, StructureError::TwistNotInverse { index: 1, .. }));
    }

    #[test]
    fn pairing_evaluates() {
        let st = affine_structure(1);
        let g = Metric::new(
            2,
            Matrix::from_rows(vec![
                vec![st.field().zero(), st.field().one()],
                vec![st.field().one(), st.field().zero()],
            ]),
        )
        .unwrap();
        let x = Section(vec![st.field().from_int(2), st.field().zero()]);
        let y = Section(vec![st.field().zero(), st.field().from_int(3)]);
        assert_eq!(g.eval(&x, &y), st.field().from_int(6));
    }
}
