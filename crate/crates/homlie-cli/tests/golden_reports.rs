//! Byte-for-byte comparison of generated machine reports against the golden
//! files committed per fixture (default seed, applicable checks).

use homlie_cli::fixtures;
use homlie_cli::format;
use homlie_cli::runner;

#[test]
fn golden_reports_match_byte_for_byte() {
    for f in fixtures::FIXTURES {
        let parsed = format::parse_str(f.json).unwrap();
        let selection = runner::applicable_checks(&parsed);
        let report = runner::run_checks(&parsed, &selection, None).to_json();
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("golden")
            .join(format!("{}.report.json", f.name));
        let golden = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing golden file {}: {e}", path.display()));
        assert_eq!(
            report, golden,
            "{}: report drifted from {}",
            f.name,
            path.display()
        );
    }
}
