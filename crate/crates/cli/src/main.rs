//! `hochex`: Hochschild, cyclic and bar homology of small algebras, and
//! excision checks for extensions.
//!
//! Exit codes: 0 ok, 1 violation or failed assertion, 2 unreadable or
//! malformed input, 3 refused by the degree cap.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use excision_core::algebra::{validate_algebra, validate_extension, Algebra};
use excision_core::complexes::{dualize, homology_range};
use excision_core::excision::{check_degree_cap, excision_report_with, ExcisionError, Verdict};
use excision_core::format::{parse_document, Document};
use excision_core::hochschild::{complex_for, internal_top, trace_space, Theory};

const EXIT_VIOLATION: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "hochex", version, about = "Exact Hochschild, cyclic and bar homology, and excision checks")]
struct Cli {
    /// Worker threads for the computation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check associativity of an algebra, or every invariant of an extension.
    Validate { file: PathBuf },
    /// Homology (or with --dual, cohomology) dimensions of an algebra.
    Homology {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = TheoryArg::Hochschild)]
        theory: TheoryArg,
        #[arg(long)]
        dual: bool,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Ignore the degree cap.
        #[arg(long)]
        force: bool,
    },
    /// Dimension and basis of the space of traces on an algebra.
    Trace {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Full excision report for an extension.
    Excision {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Ignore the degree cap.
        #[arg(long)]
        force: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TheoryArg {
    Hochschild,
    Cyclic,
    Bar,
}

impl From<TheoryArg> for Theory {
    fn from(t: TheoryArg) -> Theory {
        match t {
            TheoryArg::Hochschild => Theory::Hochschild,
            TheoryArg::Cyclic => Theory::Cyclic,
            TheoryArg::Bar => Theory::Bar,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Reads and parses an input file, printing the error on failure.
fn load(path: &Path) -> Result<Document, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(EXIT_PARSE)
    })?;
    parse_document(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(EXIT_PARSE)
    })
}

fn load_algebra(path: &Path) -> Result<Algebra, ExitCode> {
    match load(path)? {
        Document::Algebra(a) => Ok(a),
        Document::Extension(_) => {
            eprintln!("error: {}: expected an algebra, found an extension", path.display());
            Err(ExitCode::from(EXIT_PARSE))
        }
    }
}

fn cap_exceeded(e: &ExcisionError) -> ExitCode {
    eprintln!("error: {e}; pass --force to run anyway");
    ExitCode::from(EXIT_CAP)
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn cmd_validate(file: &Path) -> ExitCode {
    let doc = match load(file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let algebras: Vec<(&str, Algebra)> = match &doc {
        Document::Algebra(a) => vec![("algebra", a.clone())],
        Document::Extension(e) => vec![("B", e.b.clone()), ("A", e.a.clone()), ("D", e.d.clone())],
    };
    let mut ok = true;
    for (role, alg) in &algebras {
        match validate_algebra(alg) {
            Ok(()) => println!("{role}: {} (dim {}) is associative", alg.name(), alg.dim()),
            Err(violations) => {
                ok = false;
                println!("{role}: {} is not associative; {} violated triples", alg.name(), violations.len());
                for v in &violations {
                    println!("  {}", render::violation(alg, v));
                }
            }
        }
    }
    if let Document::Extension(ext) = &doc {
        if ok {
            match validate_extension(ext) {
                Ok(()) => println!("extension: valid"),
                Err(v) => {
                    ok = false;
                    println!("extension: {v}");
                }
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VIOLATION)
    }
}

fn cmd_homology(file: &Path, theory: Theory, dual: bool, n: usize, format: Format, force: bool) -> ExitCode {
    let alg = match load_algebra(file) {
        Ok(a) => a,
        Err(code) => return code,
    };
    if !force {
        if let Err(e) = check_degree_cap(alg.dim(), n) {
            return cap_exceeded(&e);
        }
    }
    let top = internal_top(n);
    let complex = match complex_for(&alg, theory, top) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VIOLATION);
        }
    };
    let dims: Vec<usize> = if dual {
        let table = homology_range(&dualize(&complex), top - n..=top);
        (0..=n).map(|q| table.get(top - q).expect("degree in range").dim()).collect()
    } else {
        homology_range(&complex, 0..=n).dims()
    };
    let out = render::HomologyOutput {
        theory,
        variance: if dual { "cohomology" } else { "homology" }.into(),
        algebra: alg.name().to_string(),
        dims,
    };
    match format {
        Format::Json => print_json(&out),
        Format::Text => print!("{}", render::homology_text(&out)),
    }
    ExitCode::SUCCESS
}

fn cmd_trace(file: &Path, format: Format) -> ExitCode {
    let alg = match load_algebra(file) {
        Ok(a) => a,
        Err(code) => return code,
    };
    let space = trace_space(&alg);
    let out = render::TraceOutput::new(&alg, &space);
    match format {
        Format::Json => print_json(&out),
        Format::Text => print!("{}", render::trace_text(&out)),
    }
    ExitCode::SUCCESS
}

fn cmd_excision(file: &Path, n: usize, format: Format, force: bool) -> ExitCode {
    let ext = match load(file) {
        Ok(Document::Extension(e)) => e,
        Ok(Document::Algebra(_)) => {
            eprintln!("error: {}: expected an extension, found an algebra", file.display());
            return ExitCode::from(EXIT_PARSE);
        }
        Err(code) => return code,
    };
    let report = match excision_report_with(&ext, n, force) {
        Ok(r) => r,
        Err(e @ ExcisionError::DegreeCapExceeded { .. }) => return cap_exceeded(&e),
        Err(ExcisionError::Invalid(v)) => {
            println!("extension: {v}");
            return ExitCode::from(EXIT_VIOLATION);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VIOLATION);
        }
    };
    match format {
        Format::Json => print_json(&report),
        Format::Text => print!("{}", render::excision_text(&report)),
    }
    match report.verdict {
        Verdict::Exact => ExitCode::SUCCESS,
        Verdict::OutOfHypothesis => {
            eprintln!("warning: B has no one-sided unit; excision is not expected to hold");
            ExitCode::SUCCESS
        }
        Verdict::AssertionFailure => {
            for f in &report.failures {
                eprintln!("assertion failed: {f}");
            }
            ExitCode::from(EXIT_VIOLATION)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("warning: could not configure {threads} threads: {e}");
        }
    }
    match cli.command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Homology {
            file,
            theory,
            dual,
            max_degree,
            format,
            force,
        } => cmd_homology(&file, theory.into(), dual, max_degree, format, force),
        Command::Trace { file, format } => cmd_trace(&file, format),
        Command::Excision {
            file,
            max_degree,
            format,
            force,
        } => cmd_excision(&file, max_degree, format, force),
    }
}
