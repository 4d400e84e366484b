use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use reflinv::driver::{self, Scope};
use reflinv::groups::{self, GroupName, MatrixGroup};
use reflinv::klein::{self, KleinName, Slot};
use reflinv::{routes, Error, MPoly};

#[derive(Parser)]
#[command(name = "reflinv", version, about = "Exact invariants of the reflection groups [3,4,3] and [3,3,5]")]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Txt,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Group operations.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Invariant operations.
    Invariant {
        #[command(subcommand)]
        action: InvariantAction,
    },
    /// Run one check, every check with a given prefix, or `all`.
    Verify {
        check: String,
        #[arg(long, value_enum, default_value = "quick")]
        scope: ScopeArg,
        #[arg(long, value_enum, default_value = "txt")]
        format: Format,
    },
    /// Molien series coefficients up to a degree.
    Molien {
        group: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// Export a group, an invariant, or a Klein form such as `f1` or `Tau2`.
    Export {
        object: String,
        #[arg(long, value_enum, default_value = "txt")]
        format: Format,
        /// Route used for invariants.
        #[arg(long)]
        route: Option<String>,
    },
}

#[derive(Subcommand)]
enum GroupAction {
    /// Enumerate a builtin group and print its elements.
    Build {
        name: String,
        #[arg(long, default_value_t = groups::DEFAULT_BOUND)]
        bound: usize,
        /// Name written in the export header.
        #[arg(long = "name", id = "header_name")]
        name_override: Option<String>,
    },
}

#[derive(Subcommand)]
enum InvariantAction {
    /// Construct a named invariant and print it in the polynomial text format.
    Compute {
        name: String,
        #[arg(long)]
        route: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownName(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn group_json(g: &MatrixGroup) -> String {
    let elements: Vec<Vec<Vec<String>>> = g
        .elements()
        .iter()
        .map(|e| (0..4).map(|r| (0..4).map(|c| e.matrix().get(r, c).to_string()).collect()).collect())
        .collect();
    serde_json::to_string_pretty(&serde_json::json!({
        "name": g.name(),
        "order": g.order(),
        "elements": elements,
    }))
    .expect("group serializes")
}

fn poly_output(p: &MPoly, format: Format) -> String {
    match format {
        Format::Txt => p.to_text(),
        Format::Json => serde_json::to_string_pretty(&p.to_json()).expect("polynomial serializes") + "\n",
    }
}

/// `f1`, `Tau2`, `chi1`: a Klein form name followed by its slot.
fn parse_klein(object: &str) -> Option<MPoly> {
    let (name, slot) = object.split_at(object.len().checked_sub(1)?);
    let slot = match slot {
        "1" => Slot::One,
        "2" => Slot::Two,
        _ => return None,
    };
    let name: KleinName = name.parse().ok()?;
    Some(klein::klein_form(name, slot).poly)
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    match &cli.command {
        Command::Group { action: GroupAction::Build { name, bound, name_override } } => {
            let g: GroupName = name.parse()?;
            let mut group = groups::builtin_group(g, *bound)?;
            if let Some(n) = name_override {
                group = group.with_name(n.clone());
            }
            Ok((group.to_text(), true))
        }
        Command::Invariant { action: InvariantAction::Compute { name, route } } => {
            let route = route.as_deref().unwrap_or_else(|| routes::default_route(name));
            Ok((routes::compute(route, name)?.to_text(), true))
        }
        Command::Verify { check, scope, format } => {
            let scope = match scope {
                ScopeArg::Quick => Scope::Quick,
                ScopeArg::Full => Scope::Full,
            };
            let checks = driver::select(check, scope);
            if checks.is_empty() {
                return Err(Failure::Usage(format!("no check matches {check:?} in this scope")));
            }
            let reports = driver::run_checks(&checks, scope);
            let ok = reports.iter().all(|r| r.passed());
            let text = match format {
                Format::Txt => driver::report_text(&reports),
                Format::Json => driver::report_json(&reports) + "\n",
            };
            Ok((text, ok))
        }
        Command::Molien { group, max_degree } => {
            let g = groups::cached_group(group.parse()?);
            let series = groups::molien_series(g, *max_degree)?;
            let text: String =
                series.coefficients.iter().enumerate().map(|(d, c)| format!("{d} {c}\n")).collect();
            Ok((text, true))
        }
        Command::Export { object, format, route } => {
            if let Ok(g) = object.parse::<GroupName>() {
                let group = groups::cached_group(g);
                return Ok((
                    match format {
                        Format::Txt => group.to_text(),
                        Format::Json => group_json(group) + "\n",
                    },
                    true,
                ));
            }
            if let Some(p) = parse_klein(object) {
                return Ok((poly_output(&p, *format), true));
            }
            let route = route.as_deref().unwrap_or_else(|| routes::default_route(object));
            Ok((poly_output(&routes::compute(route, object)?, *format), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
