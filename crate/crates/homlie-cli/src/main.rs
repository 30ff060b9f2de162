use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use homlie_cli::format::{self, FormatError};
use homlie_cli::phase;
use homlie_cli::runner;
use homlie_cli::{exit, fixtures};

#[derive(Parser)]
#[command(
    name = "homlie",
    version,
    about = "Exact verification of hom-Lie algebroid structures, connections and para-Kahler data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification checks on a structure file.
    Check {
        /// Path to the structure file.
        file: PathBuf,
        /// Comma-separated check names to run instead of the applicable set.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        /// Probe seed override (defaults to the file's seed, then builtin).
        #[arg(long)]
        seed: Option<u64>,
        /// Write the machine-readable report to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Build the phase space on the double and write it as a structure file.
    PhaseSpace {
        /// Path to the structure file (needs a metric or connection block).
        file: PathBuf,
        /// Output path for the phase-space structure file.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Pretty-print the parsed content of a structure file.
    Describe {
        /// Path to the structure file.
        file: PathBuf,
    },
    /// List or write the builtin example structures.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    /// List builtin example names with a one-line summary.
    List,
    /// Write a builtin example to disk as <name>.json.
    Write {
        /// Example name (see `examples list`).
        name: String,
        /// Target directory (defaults to the working directory).
        #[arg(short, long, default_value = ".")]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Check {
            file,
            only,
            seed,
            json,
        } => cmd_check(&file, only.as_deref(), seed, json.as_deref()),
        Command::PhaseSpace { file, output } => cmd_phase_space(&file, &output),
        Command::Describe { file } => cmd_describe(&file),
        Command::Examples { action } => match action {
            ExamplesAction::List => cmd_examples_list(),
            ExamplesAction::Write { name, output } => cmd_examples_write(&name, &output),
        },
    };
    ExitCode::from(code)
}

fn parse_or_exit(file: &std::path::Path) -> Result<format::ParsedStructure, u8> {
    match format::parse_path(file) {
        Ok(parsed) => Ok(parsed),
        Err(e) => {
            eprintln!("error: {e}");
            Err(match e {
                FormatError::Io(_) => exit::USAGE,
                _ => exit::PARSE,
            })
        }
    }
}

fn cmd_check(
    file: &std::path::Path,
    only: Option<&[String]>,
    seed: Option<u64>,
    json: Option<&std::path::Path>,
) -> u8 {
    let parsed = match parse_or_exit(file) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let selection = match runner::resolve_selection(&parsed, only) {
        Ok(sel) => sel,
        Err(e) => {
            eprintln!("error: {e}");
            return exit::USAGE;
        }
    };
    let started = Instant::now();
    let report = runner::run_checks(&parsed, &selection, seed);
    print!("{}", report.render_human());
    if let Some(path) = json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return exit::USAGE;
        }
    }
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    if report.passed() {
        exit::ALL_PASS
    } else {
        exit::CHECK_FAILED
    }
}

fn cmd_phase_space(file: &std::path::Path, output: &std::path::Path) -> u8 {
    let parsed = match parse_or_exit(file) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let document = match phase::phase_space_document(&parsed) {
        Ok(doc) => doc,
        Err(phase::PhaseError::NoConnectionSource) => {
            eprintln!("error: {}", phase::PhaseError::NoConnectionSource);
            return exit::USAGE;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return exit::CHECK_FAILED;
        }
    };
    if let Err(e) = std::fs::write(output, &document) {
        eprintln!("error: cannot write {}: {e}", output.display());
        return exit::USAGE;
    }
    // round-trip the emitted file and re-verify the axioms on it
    let reparsed = match parse_or_exit(output) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let selection = runner::applicable_checks(&reparsed);
    let report = runner::run_checks(&reparsed, &selection, None);
    print!("{}", report.render_human());
    println!("wrote {}", output.display());
    if report.passed() {
        exit::ALL_PASS
    } else {
        exit::CHECK_FAILED
    }
}

fn cmd_describe(file: &std::path::Path) -> u8 {
    let parsed = match parse_or_exit(file) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let st = &parsed.structure;
    println!("name: {}", parsed.name);
    if let Some(d) = &parsed.description {
        println!("description: {d}");
    }
    let ring_desc = match parsed.base_ring.kind() {
        homlie::ring::RingKind::Rationals => "rationals".to_string(),
        _ => format!(
            "polynomials in [{}] with substitution [{}]",
            parsed.base_ring.vars().join(", "),
            st.endo()
                .images()
                .iter()
                .map(|p| parsed.base_ring.from_poly(p.clone()).to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
    };
    println!("ring: {ring_desc}");
    println!("rank: {}", st.rank());
    println!(
        "bracket kind: {}",
        match st.kind() {
            homlie::StructureKind::Lie => "lie",
            homlie::StructureKind::Product => "product",
        }
    );
    println!("twist: {}", st.bundle().twist_matrix().render());
    for i in 0..st.rank() {
        for j in 0..st.rank() {
            let sec = &st.table()[i][j];
            if !sec.is_zero() {
                println!("  [e{},e{}] = {}", i + 1, j + 1, sec.render());
            }
        }
    }
    for (i, a) in st.anchors().iter().enumerate() {
        if !a.is_zero() {
            let terms: Vec<String> = a
                .coeffs()
                .iter()
                .zip(parsed.base_ring.vars())
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, v)| format!("({c}) d/d{v}"))
                .collect();
            println!("  anchor(e{}) = subst ∘ [{}]", i + 1, terms.join(" + "));
        }
    }
    if let Some(g) = &parsed.metric {
        println!("metric: {}", g.matrix().render());
    }
    if let Some(w) = &parsed.symplectic {
        println!("symplectic: {}", w.matrix().render());
    }
    if let Some(k) = &parsed.product_structure {
        println!("product structure: {}", k.matrix().render());
    }
    if let Some(s) = &parsed.split {
        println!(
            "declared split: plus=[{}], minus=[{}]",
            s.plus.iter().map(|b| b.render()).collect::<Vec<_>>().join("; "),
            s.minus.iter().map(|b| b.render()).collect::<Vec<_>>().join("; ")
        );
    }
    if parsed.connection.is_some() {
        println!("connection: attached");
    }
    println!(
        "applicable checks: {}",
        runner::applicable_checks(&parsed)
            .iter()
            .map(|c| c.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    );
    exit::ALL_PASS
}

fn cmd_examples_list() -> u8 {
    for f in fixtures::FIXTURES {
        println!("{:<22} {}", f.name, f.summary);
    }
    exit::ALL_PASS
}

fn cmd_examples_write(name: &str, output: &std::path::Path) -> u8 {
    let Some(fixture) = fixtures::by_name(name) else {
        eprintln!(
            "error: unknown example {name:?}; known: {}",
            fixtures::FIXTURES
                .iter()
                .map(|f| f.name)
                .collect::<Vec<_>>()
                .join(", ")
        );
        return exit::USAGE;
    };
    let path = output.join(format!("{name}.json"));
    if let Err(e) = std::fs::create_dir_all(output) {
        eprintln!("error: cannot create {}: {e}", output.display());
        return exit::USAGE;
    }
    if let Err(e) = std::fs::write(&path, fixture.json) {
        eprintln!("error: cannot write {}: {e}", path.display());
        return exit::USAGE;
    }
    println!("wrote {}", path.display());
    exit::ALL_PASS
}
