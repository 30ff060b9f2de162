use homlie_cli::fixtures;
use homlie_cli::format::{self, FormatError};
use homlie_cli::runner;

#[test]
fn all_fixtures_parse() {
    for f in fixtures::FIXTURES {
        let parsed = format::parse_str(f.json).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        assert_eq!(parsed.name, f.name);
    }
}

#[test]
fn parse_serialize_parse_is_identity_on_canonical_forms() {
    for f in fixtures::FIXTURES {
        let first = format::parse_str(f.json).unwrap();
        let document = format::serialize(&first).unwrap();
        let second = format::parse_str(&document).unwrap();
        assert_eq!(first.structure.table(), second.structure.table(), "{}", f.name);
        assert_eq!(first.structure.anchors(), second.structure.anchors(), "{}", f.name);
        assert_eq!(
            first.structure.bundle().twist_matrix(),
            second.structure.bundle().twist_matrix(),
            "{}",
            f.name
        );
        assert_eq!(
            first.metric.as_ref().map(|g| g.matrix().clone()),
            second.metric.as_ref().map(|g| g.matrix().clone()),
            "{}",
            f.name
        );
        assert_eq!(
            first.symplectic.as_ref().map(|w| w.matrix().clone()),
            second.symplectic.as_ref().map(|w| w.matrix().clone()),
            "{}",
            f.name
        );
        // and serialization is idempotent byte for byte
        let document2 = format::serialize(&second).unwrap();
        assert_eq!(document, document2, "{}", f.name);
    }
}

#[test]
fn minimal_rank1_abelian_file_loads() {
    let src = r#"{
        "format": 1,
        "name": "minimal",
        "ring": { "kind": "rational" },
        "bundle": { "rank": 1, "twist": [["1"]], "twist_inverse": [["1"]] },
        "bracket": { "kind": "lie" }
    }"#;
    let parsed = format::parse_str(src).unwrap();
    assert_eq!(parsed.structure.rank(), 1);
    assert!(parsed.metric.is_none());
    assert!(parsed.symplectic.is_none());
    assert_eq!(
        runner::applicable_checks(&parsed),
        vec![runner::CheckName::HomLieAlgebroid]
    );
}

#[test]
fn syntax_error_reports_line_and_column() {
    let src = "{\n  \"format\": 1,\n  broken\n}";
    match format::parse_str(src) {
        Err(FormatError::Syntax { line, column, .. }) => {
            assert_eq!(line, 3);
            assert!(column > 0);
        }
        other => panic!("expected syntax error, got {other:?}"),
    }
}

#[test]
fn wrong_twist_inverse_names_the_entry() {
    let src = r#"{
        "format": 1,
        "name": "bad",
        "ring": { "kind": "rational" },
        "bundle": { "rank": 2, "twist": [["2","0"],["0","1"]], "twist_inverse": [["1","0"],["0","1"]] },
        "bracket": { "kind": "lie" }
    }"#;
    let err = format::parse_str(src).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("e1"), "{msg}");
}

#[test]
fn dimension_mismatch_rejected() {
    let src = r#"{
        "format": 1,
        "name": "bad",
        "ring": { "kind": "rational" },
        "bundle": { "rank": 2, "twist": [["1","0"]], "twist_inverse": [["1","0"],["0","1"]] },
        "bracket": { "kind": "lie" }
    }"#;
    assert!(matches!(
        format::parse_str(src),
        Err(FormatError::Dimension { .. })
    ));
}

#[test]
fn nonzero_scalar_anchor_rejected() {
    let src = r#"{
        "format": 1,
        "name": "bad",
        "ring": { "kind": "rational" },
        "bundle": { "rank": 1, "twist": [["1"]], "twist_inverse": [["1"]] },
        "bracket": { "kind": "lie" },
        "anchor": [ ["1"] ]
    }"#;
    assert!(matches!(
        format::parse_str(src),
        Err(FormatError::ScalarAnchor(1))
    ));
}

#[test]
fn explicit_inconsistent_skew_entries_load_and_fail_checks() {
    // both (1,2) and (2,1) given, not skew: loads, then the battery reports it
    let src = r#"{
        "format": 1,
        "name": "mutant",
        "ring": { "kind": "rational" },
        "bundle": { "rank": 2, "twist": [["1","0"],["0","1"]], "twist_inverse": [["1","0"],["0","1"]] },
        "bracket": { "kind": "lie", "entries": [
            { "left": 1, "right": 2, "value": ["0", "1"] },
            { "left": 2, "right": 1, "value": ["0", "1"] }
        ] }
    }"#;
    let parsed = format::parse_str(src).unwrap();
    let report = runner::run_checks(
        &parsed,
        &[runner::CheckName::HomLieAlgebra],
        None,
    );
    assert!(!report.passed());
    assert!(report
        .checks
        .iter()
        .any(|r| r.name.contains("skew_symmetry") && r.status == homlie::Status::Fail));
}

#[test]
fn product_kind_file_runs_the_module_rule_battery() {
    // a plain product table over the rationals: e1·e1 = e1
    let src = r#"{
        "format": 1,
        "name": "idempotent_product",
        "ring": { "kind": "rational" },
        "bundle": { "rank": 2, "twist": [["1","0"],["0","1"]], "twist_inverse": [["1","0"],["0","1"]] },
        "bracket": { "kind": "product", "entries": [ { "left": 1, "right": 1, "value": ["1", "0"] } ] }
    }"#;
    let parsed = format::parse_str(src).unwrap();
    let selection = runner::applicable_checks(&parsed);
    assert_eq!(selection, vec![runner::CheckName::HomAlgebroid]);
    let report = runner::run_checks(&parsed, &selection, None);
    assert!(report.passed(), "{}", report.render_human());
    // lie-only checks are usage errors on a product file
    let err = runner::resolve_selection(&parsed, Some(&["homliealgebroid".to_string()]))
        .unwrap_err();
    assert!(matches!(err, runner::RunnerError::WrongKind { .. }));
}

#[test]
fn selection_errors() {
    let parsed = format::parse_str(fixtures::by_name("heisenberg_hom").unwrap().json).unwrap();
    // no symplectic block attached
    let err = runner::resolve_selection(&parsed, Some(&["symplectic".to_string()])).unwrap_err();
    assert!(matches!(err, runner::RunnerError::MissingAttachment { .. }));
    let err = runner::resolve_selection(&parsed, Some(&["nonsense".to_string()])).unwrap_err();
    assert!(matches!(err, runner::RunnerError::UnknownCheck(_)));
}
