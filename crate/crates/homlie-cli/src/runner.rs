//! Dispatches the verifier battery over a parsed structure and assembles the
//! deterministic machine-readable report.

use serde::Serialize;
use thiserror::Error;

use homlie::algebroid::checks::{
    check_hom_algebroid, check_hom_lie_algebra, check_hom_lie_algebroid, check_left_symmetric,
    check_metric, check_symplectic, d_squared_info, CheckConfig,
};
use homlie::algebroid::StructureKind;
use homlie::connection::{
    check_levi_civita_contract, left_symmetric_connection, levi_civita,
    verify_left_symmetric_identities,
};
use homlie::parakahler::{
    check_almost_product, check_para_hermitian, check_para_kahler, check_projectors,
    compute_split, verify_parakahler_suite,
};
use homlie::report::{CheckRecord, VerificationReport};
use homlie::DEFAULT_SEED;

use crate::format::ParsedStructure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckName {
    HomLieAlgebra,
    HomLieAlgebroid,
    HomAlgebroid,
    Metric,
    Symplectic,
    LeviCivita,
    LeftSymmetric,
    Product,
    ParaHermitian,
    ParaKahler,
}

impl CheckName {
    pub const ALL: &'static [CheckName] = &[
        CheckName::HomLieAlgebra,
        CheckName::HomLieAlgebroid,
        CheckName::HomAlgebroid,
        CheckName::Metric,
        CheckName::Symplectic,
        CheckName::LeviCivita,
        CheckName::LeftSymmetric,
        CheckName::Product,
        CheckName::ParaHermitian,
        CheckName::ParaKahler,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckName::HomLieAlgebra => "homliealgebra",
            CheckName::HomLieAlgebroid => "homliealgebroid",
            CheckName::HomAlgebroid => "homalgebroid",
            CheckName::Metric => "metric",
            CheckName::Symplectic => "symplectic",
            CheckName::LeviCivita => "levicivita",
            CheckName::LeftSymmetric => "leftsymmetric",
            CheckName::Product => "product",
            CheckName::ParaHermitian => "parahermitian",
            CheckName::ParaKahler => "parakahler",
        }
    }

    pub fn parse(s: &str) -> Option<CheckName> {
        Self::ALL.iter().copied().find(|c| c.as_str() == s)
    }
}

#[derive(Debug, Error)]
pub enum RunnerError {
    #[error("unknown check name {0:?}; known: {known}", known = known_names())]
    UnknownCheck(String),
    #[error("check {check} requires {needs}, which the file does not provide")]
    MissingAttachment {
        check: &'static str,
        needs: &'static str,
    },
    #[error("check {check} requires a {needs}-type bracket block")]
    WrongKind {
        check: &'static str,
        needs: &'static str,
    },
}

fn known_names() -> String {
    CheckName::ALL
        .iter()
        .map(|c| c.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Checks runnable with the attachments present in the file.
pub fn applicable_checks(parsed: &ParsedStructure) -> Vec<CheckName> {
    let lie = parsed.structure.kind() == StructureKind::Lie;
    let mut out = Vec::new();
    if lie {
        out.push(CheckName::HomLieAlgebroid);
    } else {
        out.push(CheckName::HomAlgebroid);
    }
    if parsed.metric.is_some() {
        out.push(CheckName::Metric);
    }
    if parsed.symplectic.is_some() && lie {
        out.push(CheckName::Symplectic);
    }
    if parsed.metric.is_some() && lie {
        out.push(CheckName::LeviCivita);
    }
    if parsed.symplectic.is_some() && lie {
        out.push(CheckName::LeftSymmetric);
    }
    if parsed.product_structure.is_some() {
        out.push(CheckName::Product);
    }
    if parsed.metric.is_some() && parsed.product_structure.is_some() && lie {
        out.push(CheckName::ParaHermitian);
        out.push(CheckName::ParaKahler);
    }
    out
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub name: String,
    pub seed: u64,
    pub verdict: String,
    pub checks: Vec<CheckRecord>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report") + "\n"
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("structure: {}\nseed: {}\n", self.name, self.seed));
        for rec in &self.checks {
            let tag = match rec.status {
                homlie::Status::Pass => "PASS",
                homlie::Status::Fail => "FAIL",
                homlie::Status::Info => "INFO",
            };
            out.push_str(&format!("{tag}  {}", rec.name));
            if let Some(w) = &rec.witness {
                out.push_str(&format!("  witness={w}"));
            }
            if let Some(r) = &rec.residual {
                out.push_str(&format!("  residual={r}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }
}

pub fn resolve_selection(
    parsed: &ParsedStructure,
    only: Option<&[String]>,
) -> Result<Vec<CheckName>, RunnerError> {
    match only {
        None => Ok(applicable_checks(parsed)),
        Some(names) => {
            let mut out = Vec::new();
            for raw in names {
                let check = CheckName::parse(raw)
                    .ok_or_else(|| RunnerError::UnknownCheck(raw.clone()))?;
                validate_requirements(parsed, check)?;
                out.push(check);
            }
            Ok(out)
        }
    }
}

fn validate_requirements(parsed: &ParsedStructure, check: CheckName) -> Result<(), RunnerError> {
    let lie = parsed.structure.kind() == StructureKind::Lie;
    let need_lie = |check: &'static str| -> Result<(), RunnerError> {
        if lie {
            Ok(())
        } else {
            Err(RunnerError::WrongKind { check, needs: "lie" })
        }
    };
    match check {
        CheckName::HomLieAlgebra => need_lie("homliealgebra"),
        CheckName::HomLieAlgebroid => need_lie("homliealgebroid"),
        CheckName::HomAlgebroid => {
            if lie {
                Err(RunnerError::WrongKind {
                    check: "homalgebroid",
                    needs: "product",
                })
            } else {
                Ok(())
            }
        }
        CheckName::Metric => parsed.metric.as_ref().map(|_| ()).ok_or(
            RunnerError::MissingAttachment {
                check: "metric",
                needs: "a metric block",
            },
        ),
        CheckName::Symplectic | CheckName::LeftSymmetric => {
            need_lie(check.as_str_static())?;
            parsed.symplectic.as_ref().map(|_| ()).ok_or(
                RunnerError::MissingAttachment {
                    check: check.as_str_static(),
                    needs: "a symplectic block",
                },
            )
        }
        CheckName::LeviCivita => {
            need_lie("levicivita")?;
            parsed.metric.as_ref().map(|_| ()).ok_or(
                RunnerError::MissingAttachment {
                    check: "levicivita",
                    needs: "a metric block",
                },
            )
        }
        CheckName::Product => parsed.product_structure.as_ref().map(|_| ()).ok_or(
            RunnerError::MissingAttachment {
                check: "product",
                needs: "a product_structure block",
            },
        ),
        CheckName::ParaHermitian | CheckName::ParaKahler => {
            need_lie(check.as_str_static())?;
            if parsed.metric.is_none() {
                return Err(RunnerError::MissingAttachment {
                    check: check.as_str_static(),
                    needs: "a metric block",
                });
            }
            if parsed.product_structure.is_none() {
                return Err(RunnerError::MissingAttachment {
                    check: check.as_str_static(),
                    needs: "a product_structure block",
                });
            }
            Ok(())
        }
    }
}

impl CheckName {
    fn as_str_static(&self) -> &'static str {
        self.as_str()
    }
}

/// Runs the selected checks and aggregates their records under per-check
/// prefixes, in selection order.
pub fn run_checks(
    parsed: &ParsedStructure,
    selection: &[CheckName],
    seed_override: Option<u64>,
) -> RunReport {
    let seed = seed_override.or(parsed.seed).unwrap_or(DEFAULT_SEED);
    let cfg = CheckConfig {
        seed,
        ..CheckConfig::default()
    };
    let st = &parsed.structure;
    let mut all = VerificationReport::new();

    for check in selection {
        let mut section = VerificationReport::new();
        match check {
            CheckName::HomLieAlgebra => match check_hom_lie_algebra(st, &cfg) {
                Ok(rep) => section = rep,
                Err(e) => section.fail("precondition", "structure kind", e.to_string()),
            },
            CheckName::HomLieAlgebroid => match check_hom_lie_algebroid(st, &cfg) {
                Ok(mut rep) => {
                    d_squared_info(st, &mut rep);
                    section = rep;
                }
                Err(e) => section.fail("precondition", "structure kind", e.to_string()),
            },
            CheckName::HomAlgebroid => match check_hom_algebroid(st, &cfg) {
                Ok(mut rep) => {
                    if let Some(omega) = &parsed.symplectic {
                        match check_left_symmetric(st, omega, &cfg) {
                            Ok(ls) => rep.merge_under("left_symmetric", ls),
                            Err(e) => rep.fail("left_symmetric", "precondition", e.to_string()),
                        }
                    }
                    section = rep;
                }
                Err(e) => section.fail("precondition", "structure kind", e.to_string()),
            },
            CheckName::Metric => {
                section = check_metric(st, parsed.metric.as_ref().expect("validated"), &cfg);
            }
            CheckName::Symplectic => {
                section =
                    check_symplectic(st, parsed.symplectic.as_ref().expect("validated"), &cfg);
            }
            CheckName::LeviCivita => {
                let g = parsed.metric.as_ref().expect("validated");
                match levi_civita(st, g) {
                    Ok(conn) => section = check_levi_civita_contract(st, g, &conn, &cfg),
                    Err(e) => section.fail("koszul_solve", "linear system", e.to_string()),
                }
            }
            CheckName::LeftSymmetric => {
                let omega = parsed.symplectic.as_ref().expect("validated");
                match left_symmetric_connection(st, omega) {
                    Ok(conn) => section = verify_left_symmetric_identities(st, omega, &conn, &cfg),
                    Err(e) => section.fail("pairing_solve", "linear system", e.to_string()),
                }
            }
            CheckName::Product => {
                let k = parsed.product_structure.as_ref().expect("validated");
                section = check_almost_product(st, k, &cfg);
                section.merge(check_projectors(st, k));
                match compute_split(st, k, parsed.split.clone()) {
                    Ok(split) => {
                        let (np, nm) = split.dims();
                        section.info(
                            "split_dimensions",
                            format!("plus={np}, minus={nm}"),
                            if split.is_para_complex() {
                                "para-complex (equal dimensions)".to_string()
                            } else {
                                "not para-complex".to_string()
                            },
                        );
                        section.pass("adapted_split");
                    }
                    Err(e) => section.fail("adapted_split", "eigen split", e.to_string()),
                }
            }
            CheckName::ParaHermitian => {
                section = check_para_hermitian(
                    st,
                    parsed.metric.as_ref().expect("validated"),
                    parsed.product_structure.as_ref().expect("validated"),
                    &cfg,
                );
            }
            CheckName::ParaKahler => {
                let g = parsed.metric.as_ref().expect("validated");
                let k = parsed.product_structure.as_ref().expect("validated");
                let (rep, data) = check_para_kahler(st, g, k, parsed.split.clone(), &cfg);
                section = rep;
                if let Some(data) = data {
                    section.merge_under("suite", verify_parakahler_suite(st, &data, &cfg));
                }
            }
        }
        all.merge_under(check.as_str(), section);
    }

    RunReport {
        name: parsed.name.clone(),
        seed,
        verdict: if all.passed() { "pass" } else { "fail" }.to_string(),
        checks: all.records,
    }
}
