//! Almost product, para-complex, para-Hermitian and para-Kahler structures:
//! Nijenhuis torsion, eigen-splits, the fundamental two-form, the full
//! para-Kahler verification suite, and the phase-space construction.
//!
//! The composite of the twist with a product structure is semilinear over
//! functions, so identities involving it are exact matrix statements on basis
//! sections; random probes for those use constant rational coefficients.

use thiserror::Error;

use crate::algebroid::calculus::Alternating;
use crate::algebroid::checks::{
    check_hom_lie_algebroid, check_metric, check_subalgebroid, check_symplectic, project_on_span,
    residual_family, CheckConfig, Probe,
};
use crate::algebroid::{
    HomAlgebroid, HomBundle, Metric, Section, StructureError, StructureKind, SymplecticForm,
};
use crate::connection::{
    check_levi_civita_contract, check_representation, dual_representation, levi_civita,
    left_symmetric_connection, Connection, ConnectionError, Representation,
};
use crate::linalg::Matrix;
use crate::report::VerificationReport;
use crate::ring::{RingElement, TwistedDerivation};

#[derive(Debug, Error)]
pub enum ParaKahlerError {
    #[error("structure error: {0}")]
    Structure(#[from] StructureError),
    #[error("connection error: {0}")]
    Connection(#[from] ConnectionError),
    #[error("a declared adapted split is required over polynomial coefficients")]
    DeclaredSplitRequired,
    #[error("declared split fails verification on the {side} side, section {index}: residual {residual}")]
    SplitFailed {
        side: &'static str,
        index: usize,
        residual: String,
    },
    #[error("eigen-split is incomplete: {plus} + {minus} sections for rank {rank}")]
    SplitIncomplete {
        plus: usize,
        minus: usize,
        rank: usize,
    },
    #[error("{label} does not stay inside the declared span")]
    SpanEscape { label: String },
}

/// A module endomorphism given by its matrix on basis sections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductStructure(pub Matrix);

impl ProductStructure {
    pub fn new(rank: usize, mat: Matrix) -> Result<Self, StructureError> {
        if mat.rows() != rank || mat.cols() != rank {
            return Err(StructureError::BadAttachment { rank });
        }
        Ok(ProductStructure(mat))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    /// `K(X)`: module-linear, no twist on the coefficients.
    pub fn apply(&self, x: &Section) -> Section {
        Section(self.0.mul_vec(&x.0))
    }
}

/// The composite `twist ∘ K` on a section.
pub fn twisted_product_apply(st: &HomAlgebroid, k: &ProductStructure, x: &Section) -> Section {
    st.phi(&k.apply(x))
}

/// Matrix of `twist ∘ K` on basis sections.
fn twisted_product_matrix(st: &HomAlgebroid, k: &ProductStructure) -> Matrix {
    st.bundle()
        .twist_matrix()
        .mul(&k.matrix().apply_endo(st.endo()))
}

/// Squares to the identity on basis sections and commutes with the twist.
pub fn check_almost_product(
    st: &HomAlgebroid,
    k: &ProductStructure,
    cfg: &CheckConfig,
) -> VerificationReport {
    let mut report = VerificationReport::new();
    let n = st.rank();

    let mut items = Vec::new();
    for i in 0..n {
        let e = st.basis(i);
        let twice = twisted_product_apply(st, k, &twisted_product_apply(st, k, &e));
        items.push((format!("square(e{})", i + 1), twice.sub(&e).0));
    }
    residual_family(&mut report, "product_squares_to_identity[basis]", items);

    let mut items = Vec::new();
    for i in 0..n {
        let e = st.basis(i);
        let lhs = st.phi(&k.apply(&e));
        let rhs = k.apply(&st.phi(&e));
        items.push((format!("commute(e{})", i + 1), lhs.sub(&rhs).0));
    }
    residual_family(&mut report, "product_commutes_with_twist[basis]", items);

    // constant-coefficient random probes: the composite is semilinear, so
    // only the rational span carries the pointwise identity
    let mut probe = Probe::new(cfg.seed.wrapping_add(11));
    let mut sq_items = Vec::new();
    let mut cm_items = Vec::new();
    for t in 0..cfg.batch {
        let x = probe.section(st, 0);
        let twice = twisted_product_apply(st, k, &twisted_product_apply(st, k, &x));
        sq_items.push((format!("square#{t}(X={})", x.render()), twice.sub(&x).0));
        let lhs = st.phi(&k.apply(&x));
        let rhs = k.apply(&st.phi(&x));
        cm_items.push((format!("commute#{t}(X={})", x.render()), lhs.sub(&rhs).0));
    }
    residual_family(&mut report, "product_squares_to_identity[random]", sq_items);
    residual_family(&mut report, "product_commutes_with_twist[random]", cm_items);
    report
}

/// Sub-bases on which `twist ∘ K` acts as plus and minus the identity.
#[derive(Debug, Clone)]
pub struct AdaptedSplit {
    pub plus: Vec<Section>,
    pub minus: Vec<Section>,
}

impl AdaptedSplit {
    pub fn dims(&self) -> (usize, usize) {
        (self.plus.len(), self.minus.len())
    }

    pub fn is_para_complex(&self) -> bool {
        self.plus.len() == self.minus.len()
    }
}

/// Computes the eigen-split over the scalar ring, or verifies a declared one;
/// over polynomial coefficients a declared split is required.
pub fn compute_split(
    st: &HomAlgebroid,
    k: &ProductStructure,
    declared: Option<AdaptedSplit>,
) -> Result<AdaptedSplit, ParaKahlerError> {
    let n = st.rank();
    let field = st.field();
    let split = match declared {
        Some(split) => split,
        None => {
            if field.nvars() > 0 {
                return Err(ParaKahlerError::DeclaredSplitRequired);
            }
            let p = twisted_product_matrix(st, k);
            let id = Matrix::identity(field, n);
            let plus: Vec<Section> = p.sub(&id).nullspace().into_iter().map(Section).collect();
            let minus: Vec<Section> = p.add(&id).nullspace().into_iter().map(Section).collect();
            AdaptedSplit { plus, minus }
        }
    };
    for (index, b) in split.plus.iter().enumerate() {
        let r = twisted_product_apply(st, k, b).sub(b);
        if !r.is_zero() {
            return Err(ParaKahlerError::SplitFailed {
                side: "plus",
                index: index + 1,
                residual: r.render(),
            });
        }
    }
    for (index, b) in split.minus.iter().enumerate() {
        let r = twisted_product_apply(st, k, b).add(b);
        if !r.is_zero() {
            return Err(ParaKahlerError::SplitFailed {
                side: "minus",
                index: index + 1,
                residual: r.render(),
            });
        }
    }
    let all: Vec<Section> = split.plus.iter().chain(&split.minus).cloned().collect();
    let mat = Matrix::from_fn(n, all.len(), |r, c| all[c].0[r].clone());
    if all.len() != n || mat.rank() != n {
        return Err(ParaKahlerError::SplitIncomplete {
            plus: split.plus.len(),
            minus: split.minus.len(),
            rank: n,
        });
    }
    Ok(split)
}

/// Projector identities of the half-sum idempotents on basis sections.
pub fn check_projectors(st: &HomAlgebroid, k: &ProductStructure) -> VerificationReport {
    let mut report = VerificationReport::new();
    let n = st.rank();
    let field = st.field();
    let half = field.one().checked_div(&field.from_int(2)).expect("2 invertible");
    let proj = |sign: i64, x: &Section| -> Section {
        let px = twisted_product_apply(st, k, x);
        let signed = if sign > 0 { x.add(&px) } else { x.sub(&px) };
        signed.scale(&half)
    };
    let mut items = Vec::new();
    for i in 0..n {
        let e = st.basis(i);
        let idem_p = proj(1, &proj(1, &e)).sub(&proj(1, &e));
        items.push((format!("P+ idempotent(e{})", i + 1), idem_p.0));
        let idem_m = proj(-1, &proj(-1, &e)).sub(&proj(-1, &e));
        items.push((format!("P- idempotent(e{})", i + 1), idem_m.0));
        let sum = proj(1, &e).add(&proj(-1, &e)).sub(&e);
        items.push((format!("P+ + P- = id(e{})", i + 1), sum.0));
        let cross = proj(1, &proj(-1, &e));
        items.push((format!("P+P- = 0(e{})", i + 1), cross.0));
    }
    residual_family(&mut report, "projector_algebra[basis]", items);
    report
}

/// Four-term Nijenhuis torsion of `twist ∘ K`.
pub fn nijenhuis(
    st: &HomAlgebroid,
    k: &ProductStructure,
    x: &Section,
    y: &Section,
) -> Section {
    let px = twisted_product_apply(st, k, x);
    let py = twisted_product_apply(st, k, y);
    st.bracket(&px, &py)
        .sub(&twisted_product_apply(st, k, &st.bracket(&px, y)))
        .sub(&twisted_product_apply(st, k, &st.bracket(x, &py)))
        .add(&st.bracket(x, y))
}

fn nijenhuis_records(
    st: &HomAlgebroid,
    k: &ProductStructure,
    cfg: &CheckConfig,
    report: &mut VerificationReport,
) {
    let n = st.rank();
    let mut items = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let r = nijenhuis(st, k, &st.basis(i), &st.basis(j));
            items.push((format!("nijenhuis(e{},e{})", i + 1, j + 1), r.0));
        }
    }
    residual_family(report, "nijenhuis_vanishes[basis]", items);

    let mut probe = Probe::new(cfg.seed.wrapping_add(12));
    let mut items = Vec::new();
    for t in 0..cfg.batch {
        let x = probe.section(st, 0);
        let y = probe.section(st, 0);
        let r = nijenhuis(st, k, &x, &y);
        items.push((format!("nijenhuis#{t}(X={}, Y={})", x.render(), y.render()), r.0));
    }
    residual_family(report, "nijenhuis_vanishes[random]", items);

    // tensoriality in the arguments is measured, never asserted
    if st.field().nvars() > 0 {
        let mut probe = Probe::new(cfg.seed.wrapping_add(13));
        for t in 0..2 {
            let f = probe.element(st.field(), cfg.max_degree);
            let i = t % n;
            let j = (t + 1) % n;
            let scaled = nijenhuis(st, k, &st.basis(i).scale(&f), &st.basis(j));
            let base = nijenhuis(st, k, &st.basis(i), &st.basis(j)).scale(&f);
            let diff = scaled.sub(&base);
            report.info(
                "nijenhuis_function_linearity",
                format!("N(f*e{}, e{}) - f*N(e{}, e{}), f={}", i + 1, j + 1, i + 1, j + 1, f),
                diff.render(),
            );
        }
    }
}

/// Layered para-Hermitian verdict: almost product, metric, anti-invariance
/// of the pairing under `twist ∘ K`, and vanishing Nijenhuis torsion.
pub fn check_para_hermitian(
    st: &HomAlgebroid,
    g: &Metric,
    k: &ProductStructure,
    cfg: &CheckConfig,
) -> VerificationReport {
    let mut report = VerificationReport::new();
    report.merge_under("almost_product", check_almost_product(st, k, cfg));
    report.merge_under("metric", check_metric(st, g, cfg));

    let q = twisted_product_matrix(st, k);
    let residual = q.transpose().mul(&g.matrix().mul(&q)).add(g.matrix());
    report.residual_zero(
        "anti_invariance[basis]",
        || "(PhiK)^T G (PhiK) + G".to_string(),
        &residual,
    );
    let mut probe = Probe::new(cfg.seed.wrapping_add(14));
    let mut items = Vec::new();
    for t in 0..cfg.batch {
        let x = probe.section(st, 0);
        let y = probe.section(st, 0);
        let lhs = g.eval(
            &twisted_product_apply(st, k, &x),
            &twisted_product_apply(st, k, &y),
        );
        let r = &lhs + &g.eval(&x, &y);
        items.push((format!("anti#{t}(X={}, Y={})", x.render(), y.render()), r));
    }
    residual_family(&mut report, "anti_invariance[random]", items);

    nijenhuis_records(st, k, cfg, &mut report);
    report
}

/// Everything needed to state the para-Kahler claims about one instance.
#[derive(Debug, Clone)]
pub struct ParaKahlerData {
    pub metric: Metric,
    pub product: ProductStructure,
    pub split: AdaptedSplit,
    pub connection: Connection,
    pub fundamental: SymplecticForm,
}

/// Para-Hermitian battery plus parallelism of `twist ∘ K` under the
/// hom-Levi-Civita connection; assembles the instance data on success.
pub fn check_para_kahler(
    st: &HomAlgebroid,
    g: &Metric,
    k: &ProductStructure,
    declared_split: Option<AdaptedSplit>,
    cfg: &CheckConfig,
) -> (VerificationReport, Option<ParaKahlerData>) {
    let mut report = check_para_hermitian(st, g, k, cfg);
    report.merge(check_projectors(st, k));

    let conn = match levi_civita(st, g) {
        Ok(c) => c,
        Err(e) => {
            report.fail("levi_civita", "koszul solve", e.to_string());
            return (report, None);
        }
    };
    report.merge_under("levi_civita", check_levi_civita_contract(st, g, &conn, cfg));

    // parallelism of twist∘K and its two stated consequences
    let n = st.rank();
    let mut pairs: Vec<(String, Section, Section)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            pairs.push((
                format!("(e{},e{})", i + 1, j + 1),
                st.basis(i),
                st.basis(j),
            ));
        }
    }
    let mut probe = Probe::new(cfg.seed.wrapping_add(15));
    for t in 0..cfg.batch {
        let x = probe.section(st, 0);
        let y = probe.section(st, 0);
        pairs.push((format!("#{t}(X={}, Y={})", x.render(), y.render()), x, y));
    }

    let mut par_items = Vec::new();
    let mut am2a_items = Vec::new();
    let mut am2b_items = Vec::new();
    for (w, x, y) in &pairs {
        let lhs = conn.apply(st, x, &twisted_product_apply(st, k, y));
        let rhs = twisted_product_apply(st, k, &conn.apply(st, x, y));
        par_items.push((format!("parallel{w}"), lhs.sub(&rhs).0));

        let px = twisted_product_apply(st, k, x);
        let lhs = conn.apply(st, &px, &twisted_product_apply(st, k, y));
        let rhs = twisted_product_apply(st, k, &conn.apply(st, &px, y));
        am2a_items.push((format!("parallel_along_pk{w}"), lhs.sub(&rhs).0));

        let lhs = conn.apply(st, x, y);
        let rhs = twisted_product_apply(
            st,
            k,
            &conn.apply(st, x, &twisted_product_apply(st, k, y)),
        );
        am2b_items.push((format!("double_pk{w}"), lhs.sub(&rhs).0));
    }
    residual_family(&mut report, "product_parallel", par_items);
    residual_family(&mut report, "product_parallel_consequence_a", am2a_items);
    residual_family(&mut report, "product_parallel_consequence_b", am2b_items);

    let split = match compute_split(st, k, declared_split) {
        Ok(s) => s,
        Err(e) => {
            report.fail("adapted_split", "eigen split", e.to_string());
            return (report, None);
        }
    };

    if !report.passed() {
        return (report, None);
    }
    let fundamental = fundamental_form(st, g, k);
    let data = ParaKahlerData {
        metric: g.clone(),
        product: k.clone(),
        split,
        connection: conn,
        fundamental,
    };
    (report, Some(data))
}

/// The fundamental two-form `(X, Y) -> <(twist∘K)X, Y>`. Nondegeneracy is
/// asserted: it follows from anti-invariance with a nondegenerate metric.
pub fn fundamental_form(st: &HomAlgebroid, g: &Metric, k: &ProductStructure) -> SymplecticForm {
    let q = twisted_product_matrix(st, k);
    let omega = q.transpose().mul(g.matrix());
    assert!(
        !omega.determinant().is_zero(),
        "fundamental form of a para-Kahler instance cannot be degenerate"
    );
    SymplecticForm(omega)
}

/// Structure induced on the span of the given sections: twist, bracket and
/// anchor all restricted, with closure verified exactly.
pub fn restrict_structure(
    st: &HomAlgebroid,
    sub: &[Section],
) -> Result<HomAlgebroid, ParaKahlerError> {
    let n = st.rank();
    let r = sub.len();
    let mat = Matrix::from_fn(n, r, |row, col| sub[col].0[row].clone());
    if mat.rank() != r {
        return Err(StructureError::NotConstantRank { rank: mat.rank(), count: r }.into());
    }
    let solve_into = |v: &Section, label: String| -> Result<Vec<RingElement>, ParaKahlerError> {
        let (sol, resid) = project_on_span(&mat, &v.0);
        if resid.iter().any(|e| !e.is_zero()) {
            return Err(ParaKahlerError::SpanEscape { label });
        }
        Ok(sol)
    };
    let twist = {
        let mut cols = Vec::with_capacity(r);
        for (j, b) in sub.iter().enumerate() {
            cols.push(solve_into(&st.phi(b), format!("twist(b{})", j + 1))?);
        }
        Matrix::from_fn(r, r, |row, col| cols[col][row].clone())
    };
    let twist_inv = {
        let mut cols = Vec::with_capacity(r);
        for (j, b) in sub.iter().enumerate() {
            cols.push(solve_into(&st.phi_inv(b), format!("twist_inv(b{})", j + 1))?);
        }
        Matrix::from_fn(r, r, |row, col| cols[col][row].clone())
    };
    let bundle = HomBundle::new(st.endo(), twist, twist_inv)?;
    let mut table = Vec::with_capacity(r);
    for (i, bi) in sub.iter().enumerate() {
        let mut row = Vec::with_capacity(r);
        for (j, bj) in sub.iter().enumerate() {
            let v = st.bracket(bi, bj);
            row.push(Section(solve_into(
                &v,
                format!("bracket(b{},b{})", i + 1, j + 1),
            )?));
        }
        table.push(row);
    }
    let anchors: Vec<TwistedDerivation> = sub.iter().map(|b| st.anchor_of(b)).collect();
    HomAlgebroid::new(bundle, st.kind(), table, anchors)
        .map_err(ParaKahlerError::from)
}

/// Connection table restricted to a sub-basis whose span it preserves.
pub fn restrict_connection(
    st: &HomAlgebroid,
    conn: &Connection,
    sub: &[Section],
) -> Result<Connection, ParaKahlerError> {
    let n = st.rank();
    let r = sub.len();
    let mat = Matrix::from_fn(n, r, |row, col| sub[col].0[row].clone());
    let mut gamma = Vec::with_capacity(r);
    for (i, bi) in sub.iter().enumerate() {
        let mut row = Vec::with_capacity(r);
        for (j, bj) in sub.iter().enumerate() {
            let v = conn.apply(st, bi, bj);
            let (sol, resid) = project_on_span(&mat, &v.0);
            if resid.iter().any(|e| !e.is_zero()) {
                return Err(ParaKahlerError::SpanEscape {
                    label: format!("connection(b{},b{})", i + 1, j + 1),
                });
            }
            row.push(Section(sol));
        }
        gamma.push(row);
    }
    Connection::new(r, gamma).map_err(|_| ParaKahlerError::SpanEscape {
        label: "connection table shape".to_string(),
    })
}

/// The full para-Kahler claim battery on an assembled instance.
pub fn verify_parakahler_suite(
    st: &HomAlgebroid,
    data: &ParaKahlerData,
    cfg: &CheckConfig,
) -> VerificationReport {
    let mut report = VerificationReport::new();
    let n = st.rank();
    let g = &data.metric;
    let k = &data.product;
    let split = &data.split;
    let conn = &data.connection;
    let omega = &data.fundamental;

    // (i) vanishing torsion
    nijenhuis_records(st, k, cfg, &mut report);

    // (ii) isotropy and Lagrangian eigen-summands
    let mut items = Vec::new();
    for (side, list) in [("plus", &split.plus), ("minus", &split.minus)] {
        for (i, a) in list.iter().enumerate() {
            for (j, b) in list.iter().enumerate() {
                items.push((format!("<{side}{},{side}{}>", i + 1, j + 1), g.eval(a, b)));
            }
        }
    }
    residual_family(&mut report, "eigen_summands_isotropic", items);

    let mut items = Vec::new();
    for (side, list) in [("plus", &split.plus), ("minus", &split.minus)] {
        for (i, a) in list.iter().enumerate() {
            for (j, b) in list.iter().enumerate() {
                items.push((
                    format!("omega({side}{},{side}{})", i + 1, j + 1),
                    omega.eval(a, b),
                ));
            }
        }
    }
    residual_family(&mut report, "eigen_summands_omega_vanishes", items);

    let (np, nm) = split.dims();
    if 2 * np == n && 2 * nm == n {
        report.pass("eigen_summands_half_dimensional");
    } else {
        report.fail(
            "eigen_summands_half_dimensional",
            format!("dims ({np},{nm})"),
            format!("expected ({},{})", n / 2, n / 2),
        );
    }
    // Lagrangian: the omega-orthogonal of each summand has complementary rank
    for (side, list, other_dim) in [("plus", &split.plus, nm), ("minus", &split.minus, np)] {
        let pairing = Matrix::from_fn(n, list.len(), |row, col| {
            omega.eval(&st.basis(row), &list[col])
        });
        let got = pairing.rank();
        if got == other_dim {
            report.pass(format!("eigen_summand_lagrangian[{side}]"));
        } else {
            report.fail(
                format!("eigen_summand_lagrangian[{side}]"),
                format!("rank of omega pairing with {side} summand"),
                format!("{got}, expected {other_dim}"),
            );
        }
    }

    // (iii) the connection preserves both summands
    let mut items = Vec::new();
    for (side, list) in [("plus", &split.plus), ("minus", &split.minus)] {
        let mat = Matrix::from_fn(n, list.len(), |row, col| list[col].0[row].clone());
        for i in 0..n {
            for (j, b) in list.iter().enumerate() {
                let v = conn.apply(st, &st.basis(i), b);
                let (_, resid) = project_on_span(&mat, &v.0);
                items.push((format!("nabla(e{},{side}{})", i + 1, j + 1), resid));
            }
        }
    }
    residual_family(&mut report, "connection_preserves_split", items);

    // (iv) the twist preserves both summands
    let mut items = Vec::new();
    for (side, list) in [("plus", &split.plus), ("minus", &split.minus)] {
        let mat = Matrix::from_fn(n, list.len(), |row, col| list[col].0[row].clone());
        for (j, b) in list.iter().enumerate() {
            let v = st.phi(b);
            let (_, resid) = project_on_span(&mat, &v.0);
            items.push((format!("twist({side}{})", j + 1), resid));
        }
    }
    residual_family(&mut report, "twist_preserves_split", items);

    // (v) para-Hermitian aggregation
    report.merge_under("para_hermitian", check_para_hermitian(st, g, k, cfg));

    // (vi) the metric pairs the minus summand with the dual of the plus one
    if np == nm {
        let w = Matrix::from_fn(nm, np, |i, j| g.eval(&split.minus[i], &split.plus[j]));
        if w.determinant().is_zero() {
            report.fail(
                "minus_pairs_as_dual_of_plus",
                "pairing matrix <minus_i, plus_j>",
                "degenerate",
            );
        } else {
            report.pass("minus_pairs_as_dual_of_plus");
        }
        let mut items = Vec::new();
        for (i, bm) in split.minus.iter().enumerate() {
            for (j, bp) in split.plus.iter().enumerate() {
                let lhs = st.endo().apply(&g.eval(bm, &st.phi_inv(bp)));
                let rhs = g.eval(&st.phi(bm), bp);
                items.push((format!("intertwine(minus{},plus{})", i + 1, j + 1), &lhs - &rhs));
            }
        }
        residual_family(&mut report, "dual_twist_intertwines", items);
    } else {
        report.fail(
            "minus_pairs_as_dual_of_plus",
            "dimensions",
            format!("({np},{nm}) not equal"),
        );
    }

    // fundamental form is symplectic
    report.merge_under("fundamental_form", check_symplectic(st, omega, cfg));

    // the two canonical connections agree on each eigen-summand
    match left_symmetric_connection(st, omega) {
        Ok(lsc) => {
            let mut items = Vec::new();
            for (side, list) in [("plus", &split.plus), ("minus", &split.minus)] {
                for (i, a) in list.iter().enumerate() {
                    for (j, b) in list.iter().enumerate() {
                        let diff = conn.apply(st, a, b).sub(&lsc.apply(st, a, b));
                        items.push((format!("nabla=nabla_ls({side}{},{side}{})", i + 1, j + 1), diff.0));
                    }
                }
            }
            residual_family(&mut report, "levi_civita_equals_left_symmetric_on_split", items);

            // restricted products are left-symmetric: associator symmetry
            let prod = |x: &Section, y: &Section| lsc.apply(st, x, y);
            let mut items = Vec::new();
            for (side, list) in [("plus", &split.plus), ("minus", &split.minus)] {
                for (i, x) in list.iter().enumerate() {
                    for (j, y) in list.iter().enumerate() {
                        for (l, z) in list.iter().enumerate() {
                            let a1 = prod(&prod(x, y), &st.phi(z)).sub(&prod(&st.phi(x), &prod(y, z)));
                            let a2 = prod(&prod(y, x), &st.phi(z)).sub(&prod(&st.phi(y), &prod(x, z)));
                            items.push((
                                format!("associator({side}:{},{},{})", i + 1, j + 1, l + 1),
                                a1.sub(&a2).0,
                            ));
                        }
                    }
                }
            }
            residual_family(&mut report, "restricted_product_left_symmetric", items);
        }
        Err(e) => report.fail(
            "levi_civita_equals_left_symmetric_on_split",
            "left-symmetric solve",
            e.to_string(),
        ),
    }

    // eigen-summands are subalgebroids carrying representations by the
    // restricted connection
    for (side, list) in [("plus", &split.plus), ("minus", &split.minus)] {
        match check_subalgebroid(st, list, cfg) {
            Ok(sub) => report.merge_under(&format!("subalgebroid_{side}"), sub),
            Err(e) => report.fail(
                format!("subalgebroid_{side}"),
                "constant rank",
                e.to_string(),
            ),
        }
        match restrict_structure(st, list) {
            Ok(rst) => {
                report.merge_under(
                    &format!("restricted_algebroid_{side}"),
                    match check_hom_lie_algebroid(&rst, cfg) {
                        Ok(r) => r,
                        Err(e) => {
                            let mut r = VerificationReport::new();
                            r.fail("battery", "restricted structure", e.to_string());
                            r
                        }
                    },
                );
                match restrict_connection(st, conn, list) {
                    Ok(rconn) => {
                        let rep = Representation::from_connection(&rst, &rconn);
                        report.merge_under(
                            &format!("representation_{side}"),
                            check_representation(&rst, &rep, cfg),
                        );
                    }
                    Err(e) => report.fail(
                        format!("representation_{side}"),
                        "restricted connection",
                        e.to_string(),
                    ),
                }
            }
            Err(e) => report.fail(
                format!("restricted_algebroid_{side}"),
                "restriction",
                e.to_string(),
            ),
        }
    }

    report
}

/// Bracket, twist and anchor of the double `A ⊕ A*` driven by the dual of the
/// given connection-representation. The representation laws are enforced as a
/// precondition.
pub fn build_phase_space(
    st: &HomAlgebroid,
    conn: &Connection,
    cfg: &CheckConfig,
) -> Result<(HomAlgebroid, SymplecticForm), ConnectionError> {
    let rep = Representation::from_connection(st, conn);
    let pre = check_representation(st, &rep, cfg);
    if !pre.passed() {
        return Err(ConnectionError::RepresentationPrecondition(pre));
    }
    let dual = dual_representation(st, &rep);

    let n = st.rank();
    let field = st.field();
    let big = 2 * n;
    let zero = field.zero();

    let embed_primal = |s: &Section| -> Section {
        let mut v = vec![zero.clone(); big];
        v[..n].clone_from_slice(&s.0);
        Section(v)
    };
    let embed_dual = |coords: &[RingElement]| -> Section {
        let mut v = vec![zero.clone(); big];
        v[n..].clone_from_slice(coords);
        Section(v)
    };

    let twist = block_diag(field, st.bundle().twist_matrix(), dual.mu());
    let twist_inv = block_diag(
        field,
        st.bundle().twist_inv_matrix(),
        &st.bundle().twist_matrix().transpose().map(|e| st.endo().apply_inverse(e)),
    );
    let bundle = HomBundle::new(st.endo(), twist, twist_inv)?;

    let mut table = vec![vec![bundle.zero_section(); big]; big];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = embed_primal(&st.table()[i][j]);
        }
    }
    for i in 0..n {
        for m in 0..n {
            // [e_i, f^m] = dual transport of f^m along e_i
            let col: Vec<RingElement> = (0..n)
                .map(|j| dual.operators()[i].linear.at(j, m).clone())
                .collect();
            let moved = embed_dual(&col);
            table[i][n + m] = moved.clone();
            table[n + m][i] = moved.neg();
        }
    }

    let mut anchors = Vec::with_capacity(big);
    anchors.extend(st.anchors().iter().cloned());
    anchors.extend((0..n).map(|_| TwistedDerivation::zero(st.endo())));

    let phase = HomAlgebroid::new(bundle, StructureKind::Lie, table, anchors)?;

    // canonical pairing form: omega(X + a, Y + b) = <b, X> - <a, Y>
    let mut omega = Matrix::zero(field, big, big);
    for i in 0..n {
        omega.set(i, n + i, field.one());
        omega.set(n + i, i, field.from_int(-1));
    }
    Ok((phase, SymplecticForm(omega)))
}

fn block_diag(field: &crate::ring::CoefficientRing, a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.rows();
    let m = b.rows();
    Matrix::from_fn(n + m, n + m, |r, c| {
        if r < n && c < n {
            a.at(r, c).clone()
        } else if r >= n && c >= n {
            b.at(r - n, c - n).clone()
        } else {
            field.zero()
        }
    })
}

/// The canonical symplectic pairing of a phase space built on `A ⊕ A*`.
pub fn canonical_phase_space_form(field: &crate::ring::CoefficientRing, half_rank: usize) -> SymplecticForm {
    let mut omega = Matrix::zero(field, 2 * half_rank, 2 * half_rank);
    for i in 0..half_rank {
        omega.set(i, half_rank + i, field.one());
        omega.set(half_rank + i, i, field.from_int(-1));
    }
    SymplecticForm(omega)
}

/// Two-form wrapper for the fundamental form, as stored calculus data.
pub fn fundamental_as_form(omega: &SymplecticForm) -> Alternating {
    Alternating::from_two_form_matrix(omega.matrix())
}
