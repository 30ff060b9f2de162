//! The structure-description file format: a self-describing JSON document
//! whose matrix and coordinate entries are expressions in a tiny exact
//! grammar (integers, `p/q` literals, ring variables, `+ - * ^`).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use homlie::algebroid::{
    HomAlgebroid, HomBundle, Metric, Section, StructureKind, SymplecticForm,
};
use homlie::connection::Connection;
use homlie::linalg::Matrix;
use homlie::parakahler::{AdaptedSplit, ProductStructure};
use homlie::ring::{CoefficientRing, MultiPoly, RingElement, RingEndomorphism, TwistedDerivation};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("json syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("expression error in {context}: {message}")]
    Expression { context: String, message: String },
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    Dimension {
        context: String,
        expected: usize,
        got: usize,
    },
    #[error("ring error: {0}")]
    Ring(#[from] homlie::ring::RingError),
    #[error("structure error: {0}")]
    Structure(#[from] homlie::algebroid::StructureError),
    #[error("bracket entry ({left},{right}) is out of range for rank {rank}")]
    BracketIndex {
        left: usize,
        right: usize,
        rank: usize,
    },
    #[error("the scalar ring admits only zero anchors, but anchor {0} is nonzero")]
    ScalarAnchor(usize),
    #[error("entry {context} is not representable in the file grammar (a true fraction)")]
    NotSerializable { context: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// A literal entry: either a bare integer or an expression string.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Expr(String),
}

impl Entry {
    fn parse(&self, ring: &CoefficientRing, context: &str) -> Result<RingElement, FormatError> {
        match self {
            Entry::Int(n) => Ok(ring.from_int(*n)),
            Entry::Expr(s) => ring.parse(s).map_err(|e| FormatError::Expression {
                context: context.to_string(),
                message: e.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingBlock {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub substitution: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub substitution_inverse: Vec<Entry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BundleBlock {
    pub rank: usize,
    pub twist: Vec<Vec<Entry>>,
    pub twist_inverse: Vec<Vec<Entry>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: usize,
    pub right: usize,
    pub value: Vec<Entry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketBlock {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<BracketEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SplitBlock {
    pub plus: Vec<Vec<Entry>>,
    pub minus: Vec<Vec<Entry>>,
}

/// The root document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StructureFile {
    pub format: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub ring: RingBlock,
    pub bundle: BundleBlock,
    pub bracket: BracketBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<Vec<Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symplectic: Option<Vec<Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product_structure: Option<Vec<Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<Vec<Vec<Vec<Entry>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Fully validated in-memory structure with its optional attachments.
#[derive(Debug)]
pub struct ParsedStructure {
    pub name: String,
    pub description: Option<String>,
    pub base_ring: CoefficientRing,
    pub structure: HomAlgebroid,
    pub metric: Option<Metric>,
    pub symplectic: Option<SymplecticForm>,
    pub product_structure: Option<ProductStructure>,
    pub split: Option<AdaptedSplit>,
    pub connection: Option<Connection>,
    pub seed: Option<u64>,
}

pub fn parse_str(src: &str) -> Result<ParsedStructure, FormatError> {
    let file: StructureFile = serde_json::from_str(src).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    realize(&file)
}

pub fn parse_path(path: &std::path::Path) -> Result<ParsedStructure, FormatError> {
    let src = std::fs::read_to_string(path)?;
    parse_str(&src)
}

fn parse_matrix(
    ring: &CoefficientRing,
    rows: &[Vec<Entry>],
    rank: usize,
    context: &str,
) -> Result<Matrix, FormatError> {
    if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
        return Err(FormatError::Dimension {
            context: context.to_string(),
            expected: rank,
            got: rows.len(),
        });
    }
    let mut parsed = Vec::with_capacity(rank);
    for (i, row) in rows.iter().enumerate() {
        let mut out = Vec::with_capacity(rank);
        for (j, cell) in row.iter().enumerate() {
            out.push(cell.parse(ring, &format!("{context}[{},{}]", i + 1, j + 1))?);
        }
        parsed.push(out);
    }
    Ok(Matrix::from_rows(parsed))
}

fn parse_section(
    ring: &CoefficientRing,
    coords: &[Entry],
    rank: usize,
    context: &str,
) -> Result<Section, FormatError> {
    if coords.len() != rank {
        return Err(FormatError::Dimension {
            context: context.to_string(),
            expected: rank,
            got: coords.len(),
        });
    }
    let mut out = Vec::with_capacity(rank);
    for (k, cell) in coords.iter().enumerate() {
        out.push(cell.parse(ring, &format!("{context}[{}]", k + 1))?);
    }
    Ok(Section(out))
}

pub fn realize(file: &StructureFile) -> Result<ParsedStructure, FormatError> {
    if file.format != FORMAT_VERSION {
        return Err(FormatError::Version(file.format));
    }
    let vars: Vec<&str> = file.ring.variables.iter().map(|s| s.as_str()).collect();
    let (base_ring, field) = match file.ring.kind.as_str() {
        "rational" => {
            if !vars.is_empty() {
                return Err(FormatError::Expression {
                    context: "ring".into(),
                    message: "the rational ring takes no variables".into(),
                });
            }
            let r = CoefficientRing::rationals();
            (r.clone(), r)
        }
        "polynomial" => {
            let base = CoefficientRing::polynomials(&vars)?;
            let field = base.to_field();
            (base, field)
        }
        other => {
            return Err(FormatError::Expression {
                context: "ring.kind".into(),
                message: format!("unknown kind {other:?} (rational | polynomial)"),
            })
        }
    };

    let nvars = field.nvars();
    let endo = if nvars == 0 {
        RingEndomorphism::identity(&field)
    } else {
        let expect = |entries: &Vec<Entry>, what: &str| -> Result<Vec<MultiPoly>, FormatError> {
            if entries.len() != nvars {
                return Err(FormatError::Dimension {
                    context: format!("ring.{what}"),
                    expected: nvars,
                    got: entries.len(),
                });
            }
            let mut out = Vec::with_capacity(nvars);
            for (i, e) in entries.iter().enumerate() {
                let v = e.parse(&base_ring, &format!("ring.{what}[{}]", i + 1))?;
                out.push(v.as_poly().expect("polynomial ring element"));
            }
            Ok(out)
        };
        let images = expect(&file.ring.substitution, "substitution")?;
        let inverse = expect(&file.ring.substitution_inverse, "substitution_inverse")?;
        RingEndomorphism::new(&field, images, inverse)?
    };

    let rank = file.bundle.rank;
    let twist = parse_matrix(&field, &file.bundle.twist, rank, "bundle.twist")?;
    let twist_inv = parse_matrix(&field, &file.bundle.twist_inverse, rank, "bundle.twist_inverse")?;
    let bundle = HomBundle::new(&endo, twist, twist_inv)?;

    let kind = match file.bracket.kind.as_str() {
        "lie" => StructureKind::Lie,
        "product" => StructureKind::Product,
        other => {
            return Err(FormatError::Expression {
                context: "bracket.kind".into(),
                message: format!("unknown kind {other:?} (lie | product)"),
            })
        }
    };

    let mut table = vec![vec![bundle.zero_section(); rank]; rank];
    let mut explicit = vec![vec![false; rank]; rank];
    for entry in &file.bracket.entries {
        if entry.left == 0 || entry.right == 0 || entry.left > rank || entry.right > rank {
            return Err(FormatError::BracketIndex {
                left: entry.left,
                right: entry.right,
                rank,
            });
        }
        let (i, j) = (entry.left - 1, entry.right - 1);
        let sec = parse_section(
            &field,
            &entry.value,
            rank,
            &format!("bracket[{},{}]", entry.left, entry.right),
        )?;
        table[i][j] = sec;
        explicit[i][j] = true;
    }
    if kind == StructureKind::Lie {
        // fill unspecified mirror entries by skew-symmetry
        for i in 0..rank {
            for j in 0..rank {
                if explicit[i][j] && !explicit[j][i] && i != j {
                    table[j][i] = table[i][j].neg();
                }
            }
        }
    }

    let anchors: Vec<TwistedDerivation> = match &file.anchor {
        None => (0..rank).map(|_| TwistedDerivation::zero(&endo)).collect(),
        Some(rows) => {
            if rows.len() != rank {
                return Err(FormatError::Dimension {
                    context: "anchor".into(),
                    expected: rank,
                    got: rows.len(),
                });
            }
            let mut out = Vec::with_capacity(rank);
            for (i, coeffs) in rows.iter().enumerate() {
                if nvars == 0 {
                    let all_zero = coeffs.iter().all(|e| match e {
                        Entry::Int(n) => *n == 0,
                        Entry::Expr(s) => s.trim() == "0",
                    });
                    if !(coeffs.is_empty() || all_zero) {
                        return Err(FormatError::ScalarAnchor(i + 1));
                    }
                    out.push(TwistedDerivation::zero(&endo));
                    continue;
                }
                if coeffs.len() != nvars {
                    return Err(FormatError::Dimension {
                        context: format!("anchor[{}]", i + 1),
                        expected: nvars,
                        got: coeffs.len(),
                    });
                }
                let mut parsed = Vec::with_capacity(nvars);
                for (v, cell) in coeffs.iter().enumerate() {
                    parsed.push(cell.parse(&field, &format!("anchor[{}][{}]", i + 1, v + 1))?);
                }
                out.push(TwistedDerivation::new(&endo, parsed).map_err(FormatError::Ring)?);
            }
            out
        }
    };

    let structure = HomAlgebroid::new(bundle, kind, table, anchors)?;

    let metric = match &file.metric {
        None => None,
        Some(rows) => Some(Metric::new(
            rank,
            parse_matrix(&field, rows, rank, "metric")?,
        )?),
    };
    let symplectic = match &file.symplectic {
        None => None,
        Some(rows) => Some(SymplecticForm::new(
            rank,
            parse_matrix(&field, rows, rank, "symplectic")?,
        )?),
    };
    let product_structure = match &file.product_structure {
        None => None,
        Some(rows) => Some(ProductStructure::new(
            rank,
            parse_matrix(&field, rows, rank, "product_structure")?,
        )?),
    };
    let split = match &file.split {
        None => None,
        Some(block) => {
            let mut plus = Vec::new();
            for (i, coords) in block.plus.iter().enumerate() {
                plus.push(parse_section(
                    &field,
                    coords,
                    rank,
                    &format!("split.plus[{}]", i + 1),
                )?);
            }
            let mut minus = Vec::new();
            for (i, coords) in block.minus.iter().enumerate() {
                minus.push(parse_section(
                    &field,
                    coords,
                    rank,
                    &format!("split.minus[{}]", i + 1),
                )?);
            }
            Some(AdaptedSplit { plus, minus })
        }
    };
    let connection = match &file.connection {
        None => None,
        Some(rows) => {
            if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
                return Err(FormatError::Dimension {
                    context: "connection".into(),
                    expected: rank,
                    got: rows.len(),
                });
            }
            let mut gamma = Vec::with_capacity(rank);
            for (i, row) in rows.iter().enumerate() {
                let mut out = Vec::with_capacity(rank);
                for (j, coords) in row.iter().enumerate() {
                    out.push(parse_section(
                        &field,
                        coords,
                        rank,
                        &format!("connection[{},{}]", i + 1, j + 1),
                    )?);
                }
                gamma.push(out);
            }
            Some(Connection::new(rank, gamma).map_err(|_| FormatError::Dimension {
                context: "connection".into(),
                expected: rank,
                got: rows.len(),
            })?)
        }
    };

    Ok(ParsedStructure {
        name: file.name.clone(),
        description: file.description.clone(),
        base_ring,
        structure,
        metric,
        symplectic,
        product_structure,
        split,
        connection,
        seed: file.seed,
    })
}

fn render_entry(e: &RingElement, context: &str) -> Result<Entry, FormatError> {
    if e.as_rational().is_none() && e.as_poly().is_none() {
        return Err(FormatError::NotSerializable {
            context: context.to_string(),
        });
    }
    Ok(Entry::Expr(e.to_string()))
}

fn render_matrix(m: &Matrix, context: &str) -> Result<Vec<Vec<Entry>>, FormatError> {
    let mut rows = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for c in 0..m.cols() {
            row.push(render_entry(
                m.at(r, c),
                &format!("{context}[{},{}]", r + 1, c + 1),
            )?);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn render_section(s: &Section, context: &str) -> Result<Vec<Entry>, FormatError> {
    s.0.iter()
        .enumerate()
        .map(|(k, e)| render_entry(e, &format!("{context}[{}]", k + 1)))
        .collect()
}

/// Serializes a validated structure back into the document shape.
pub fn to_file(parsed: &ParsedStructure) -> Result<StructureFile, FormatError> {
    let st = &parsed.structure;
    let rank = st.rank();
    let kind = match st.kind() {
        StructureKind::Lie => "lie",
        StructureKind::Product => "product",
    };
    let mut entries = Vec::new();
    for i in 0..rank {
        for j in 0..rank {
            let sec = &st.table()[i][j];
            if sec.is_zero() {
                continue;
            }
            if st.kind() == StructureKind::Lie && j < i && sec == &st.table()[j][i].neg() {
                continue; // reconstructed by skew-symmetry
            }
            entries.push(BracketEntry {
                left: i + 1,
                right: j + 1,
                value: render_section(sec, &format!("bracket[{},{}]", i + 1, j + 1))?,
            });
        }
    }
    let nvars = st.field().nvars();
    let anchor = if st.anchors().iter().all(|a| a.is_zero()) {
        None
    } else {
        let mut rows = Vec::with_capacity(rank);
        for (i, a) in st.anchors().iter().enumerate() {
            let mut coeffs = Vec::with_capacity(nvars);
            for (v, c) in a.coeffs().iter().enumerate() {
                coeffs.push(render_entry(c, &format!("anchor[{}][{}]", i + 1, v + 1))?);
            }
            rows.push(coeffs);
        }
        Some(rows)
    };
    let ring = RingBlock {
        kind: match parsed.base_ring.kind() {
            homlie::ring::RingKind::Rationals => "rational".into(),
            _ => "polynomial".into(),
        },
        variables: parsed.base_ring.vars().to_vec(),
        substitution: st
            .endo()
            .images()
            .iter()
            .map(|p| Entry::Expr(parsed.base_ring.from_poly(p.clone()).to_string()))
            .collect(),
        substitution_inverse: st
            .endo()
            .inverse_images()
            .iter()
            .map(|p| Entry::Expr(parsed.base_ring.from_poly(p.clone()).to_string()))
            .collect(),
    };
    Ok(StructureFile {
        format: FORMAT_VERSION,
        name: parsed.name.clone(),
        description: parsed.description.clone(),
        ring,
        bundle: BundleBlock {
            rank,
            twist: render_matrix(st.bundle().twist_matrix(), "bundle.twist")?,
            twist_inverse: render_matrix(st.bundle().twist_inv_matrix(), "bundle.twist_inverse")?,
        },
        bracket: BracketBlock {
            kind: kind.into(),
            entries,
        },
        anchor,
        metric: parsed
            .metric
            .as_ref()
            .map(|g| render_matrix(g.matrix(), "metric"))
            .transpose()?,
        symplectic: parsed
            .symplectic
            .as_ref()
            .map(|w| render_matrix(w.matrix(), "symplectic"))
            .transpose()?,
        product_structure: parsed
            .product_structure
            .as_ref()
            .map(|k| render_matrix(k.matrix(), "product_structure"))
            .transpose()?,
        split: parsed
            .split
            .as_ref()
            .map(|s| -> Result<SplitBlock, FormatError> {
                Ok(SplitBlock {
                    plus: s
                        .plus
                        .iter()
                        .enumerate()
                        .map(|(i, b)| render_section(b, &format!("split.plus[{}]", i + 1)))
                        .collect::<Result<_, _>>()?,
                    minus: s
                        .minus
                        .iter()
                        .enumerate()
                        .map(|(i, b)| render_section(b, &format!("split.minus[{}]", i + 1)))
                        .collect::<Result<_, _>>()?,
                })
            })
            .transpose()?,
        connection: parsed
            .connection
            .as_ref()
            .map(|c| -> Result<Vec<Vec<Vec<Entry>>>, FormatError> {
                let mut rows = Vec::with_capacity(rank);
                for i in 0..rank {
                    let mut row = Vec::with_capacity(rank);
                    for j in 0..rank {
                        row.push(render_section(
                            &c.table()[i][j],
                            &format!("connection[{},{}]", i + 1, j + 1),
                        )?);
                    }
                    rows.push(row);
                }
                Ok(rows)
            })
            .transpose()?,
        seed: parsed.seed,
    })
}

pub fn serialize(parsed: &ParsedStructure) -> Result<String, FormatError> {
    let file = to_file(parsed)?;
    Ok(serde_json::to_string_pretty(&file).expect("serializable document") + "\n")
}
