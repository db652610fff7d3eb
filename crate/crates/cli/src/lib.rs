//! Command dispatch for the `iaf` binary. [`run`] does all the work and
//! returns the exit status with captured output, so the binary is a thin
//! wrapper and tests can drive it in-process.

mod render;

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use iaf_core::eqcomplex::{twisted_cohomology, ComplexError};
use iaf_core::obstruction::DiagonalCheckConfig;
use iaf_core::problem::{parse_problem, ProblemFile};
use iaf_core::realizable::{analyze, run_validations, CohomologySummary, ObstructionReport};

pub use render::Style;

/// Exit status on success.
pub const EXIT_OK: i32 = 0;
/// A validation failed or a computation could not be completed.
pub const EXIT_FAILURE: i32 = 1;
/// Bad usage, unreadable input, or a parse error.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "iaf", version, about = "Obstructions to Lagrangian fibrations over integral affine manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check relations, duality, boundary and diagonal data.
    Validate(Common),
    /// Twisted cohomology in one degree.
    Cohomology {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: usize,
        /// Representation to use; defaults to the bound coefficient representation.
        #[arg(long)]
        rep: Option<String>,
    },
    /// The obstruction map D and the image of each H² generator.
    Obstruction(Common),
    /// The subgroup R = ker D.
    Realizable(Common),
    /// Everything.
    Report(Common),
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Problem file, or `-` for standard input.
    file: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Run the randomized diagonal certification suite.
    #[arg(long)]
    check_diagonal: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(stderr: String) -> Self {
        Outcome { status: EXIT_USAGE, stdout: String::new(), stderr }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, S>(args: I, stdin: &mut dyn Read, style: Style) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome { status: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let common = match &cli.command {
        Command::Validate(c) | Command::Obstruction(c) | Command::Realizable(c) | Command::Report(c) => c,
        Command::Cohomology { common, .. } => common,
    };
    let (input, problem) = match load(&common.file, stdin) {
        Ok(x) => x,
        Err(msg) => return Outcome::usage(format!("error: {msg}\n")),
    };
    let diagonal = if common.check_diagonal {
        DiagonalCheckConfig::full(common.seed)
    } else {
        DiagonalCheckConfig { seed: common.seed, ..DiagonalCheckConfig::default() }
    };
    let json = common.format == Format::Json;

    match &cli.command {
        Command::Validate(_) => {
            let reports = run_validations(&problem, &diagonal);
            let ok = reports.iter().all(|r| r.passed());
            let stdout = if json { to_json(&reports) } else { render::validations(&reports, style) };
            Outcome { status: if ok { EXIT_OK } else { EXIT_FAILURE }, stdout, stderr: String::new() }
        }
        Command::Cohomology { degree, rep, .. } => cohomology(&problem, *degree, rep.as_deref(), json),
        Command::Obstruction(_) | Command::Realizable(_) | Command::Report(_) => {
            let report = analyze(&problem, &input, &diagonal);
            let stdout = match (&cli.command, json) {
                (Command::Obstruction(_), false) => render::obstruction(&report, style),
                (Command::Obstruction(_), true) => to_json(&ObstructionView::from(&report)),
                (Command::Realizable(_), false) => render::realizable(&report, style),
                (Command::Realizable(_), true) => to_json(&RealizableView::from(&report)),
                (_, false) => render::report(&report, style),
                (_, true) => to_json(&report),
            };
            let stderr = report.errors.iter().map(|e| format!("error: {e}\n")).collect();
            let status = if report.succeeded() { EXIT_OK } else { EXIT_FAILURE };
            Outcome { status, stdout, stderr }
        }
    }
}

fn load(file: &str, stdin: &mut dyn Read) -> Result<(String, ProblemFile), String> {
    let (label, input) = if file == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| format!("<stdin>: {e}"))?;
        ("<stdin>".to_string(), s)
    } else {
        let s = std::fs::read_to_string(file).map_err(|e| format!("{file}: {e}"))?;
        (file.to_string(), s)
    };
    let problem = parse_problem(&input).map_err(|e| format!("{label}: {e}"))?;
    Ok((input, problem))
}

fn cohomology(problem: &ProblemFile, degree: usize, rep: Option<&str>, json: bool) -> Outcome {
    let name = rep.unwrap_or(&problem.bindings.coefficient_rep);
    let Some(r) = problem.representation(name) else {
        return Outcome::usage(format!("error: unknown representation `{name}`\n"));
    };
    match twisted_cohomology(&problem.complex, r, degree) {
        Ok(h) => {
            let summary = CohomologySummary::from_group(&h);
            let stdout = if json { to_json(&summary) } else { render::cohomology(&summary, &problem.complex) };
            Outcome { status: EXIT_OK, stdout, stderr: String::new() }
        }
        Err(e @ ComplexError::DegreeOutOfRange { .. }) => Outcome::usage(format!("error: {e}\n")),
        Err(e) => Outcome { status: EXIT_FAILURE, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ObstructionView<'a> {
    input_sha256: &'a str,
    validations: &'a [iaf_core::check::CheckReport],
    h3: &'a Option<iaf_core::realizable::H3Summary>,
    obstruction: &'a Option<iaf_core::obstruction::ObstructionMap>,
    d_values: &'a [iaf_core::realizable::DValue],
    errors: &'a [String],
}

impl<'a> From<&'a ObstructionReport> for ObstructionView<'a> {
    fn from(r: &'a ObstructionReport) -> Self {
        ObstructionView {
            input_sha256: &r.input_sha256,
            validations: &r.validations,
            h3: &r.h3,
            obstruction: &r.obstruction,
            d_values: &r.d_values,
            errors: &r.errors,
        }
    }
}

#[derive(Serialize)]
struct RealizableView<'a> {
    input_sha256: &'a str,
    validations: &'a [iaf_core::check::CheckReport],
    realizable: &'a Option<iaf_core::realizable::RealizableSubgroup>,
    defining_relations: &'a [String],
    errors: &'a [String],
}

impl<'a> From<&'a ObstructionReport> for RealizableView<'a> {
    fn from(r: &'a ObstructionReport) -> Self {
        RealizableView {
            input_sha256: &r.input_sha256,
            validations: &r.validations,
            realizable: &r.realizable,
            defining_relations: &r.defining_relations,
            errors: &r.errors,
        }
    }
}
