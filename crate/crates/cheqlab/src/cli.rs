use std::ffi::OsString;
use std::path::{Path, PathBuf};

use cheqlab_core::frames::{chequered, fork, frame_h, medvedev};
use cheqlab_core::{check_p_morphism, parse, Limits, Poset};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::document::{self, FrameDocument};
use crate::error::CliError;
use crate::verify::{self, Profile};
use crate::{config, dot, parallel, render};

/// Exit status: the property holds.
pub const HOLDS: u8 = 0;
/// Exit status: the property definitively fails; a witness was printed.
pub const FAILS: u8 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "cheqlab",
    version,
    about = "Finite Kripke frames: build, model-check, search p-morphisms"
)]
struct Cli {
    /// Work budget for searches and valuation scans (overrides CHEQLAB_BUDGET).
    #[arg(long, global = true, value_name = "N")]
    budget: Option<u64>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Write the main result (document, map, DOT or report) to a file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a frame and write it as a frame document.
    Build {
        family: FamilyArg,
        /// Dimension; ignored for `fork` and `h`.
        n: Option<usize>,
    },
    /// Decide whether a formula is valid on a frame.
    Check { frame: PathBuf, formula: String },
    /// Search for (or verify, with --map) a p-morphism between two frames.
    Morphism {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        onto: bool,
        /// Search on a single thread.
        #[arg(long)]
        deterministic: bool,
        /// Verify this map instead of searching.
        #[arg(long, value_name = "PATH")]
        map: Option<PathBuf>,
    },
    /// Print the Hasse diagram of a frame in Graphviz format.
    ExportDot { frame: PathBuf },
    /// Run the built-in verification suite.
    VerifyPaper {
        #[arg(long, value_enum, default_value_t = ProfileArg::Quick)]
        profile: ProfileArg,
        /// Run checks one after another on a single thread.
        #[arg(long)]
        deterministic: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Cheq,
    Medvedev,
    Fork,
    H,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit status.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code().clamp(0, 2) as u8;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<u8, CliError> {
    let limits = config::limits(cli.budget)?;
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Build { family, n } => build(*family, *n, &limits, out),
        Command::Check { frame, formula } => check(frame, formula, &limits, cli.json, out),
        Command::Morphism {
            source,
            target,
            onto,
            deterministic,
            map,
        } => morphism(
            source,
            target,
            *onto,
            *deterministic,
            map.as_deref(),
            &limits,
            cli.json,
            out,
        ),
        Command::ExportDot { frame } => {
            let (doc, p) = document::load_frame(frame)?;
            emit(out, &dot::to_dot(&doc.name, &p))?;
            Ok(HOLDS)
        }
        Command::VerifyPaper {
            profile,
            deterministic,
        } => {
            let profile = match profile {
                ProfileArg::Quick => Profile::Quick,
                ProfileArg::Full => Profile::Full,
            };
            let report = verify::run(profile, &limits, *deterministic);
            let text = if cli.json {
                report.to_json()
            } else {
                report.to_table()
            };
            emit(out, &text)?;
            Ok(if report.all_passed() { HOLDS } else { FAILS })
        }
    }
}

/// Writes to `out` if given, else to standard output.
fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => document::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn build(
    family: FamilyArg,
    n: Option<usize>,
    limits: &Limits,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    let need =
        |what: &str| n.ok_or_else(|| CliError::Usage(format!("build {what} needs a dimension")));
    let (name, p): (String, Poset) = match family {
        FamilyArg::Cheq => {
            let n = need("cheq")?;
            (format!("cheq-{n}"), chequered(n, limits)?)
        }
        FamilyArg::Medvedev => {
            let n = need("medvedev")?;
            (format!("medvedev-{n}"), medvedev(n, limits)?)
        }
        FamilyArg::Fork => ("fork".to_string(), fork()),
        FamilyArg::H => ("h".to_string(), frame_h()),
    };
    let doc = FrameDocument::from_poset(&name, &p);
    let summary = format!("{name}: {} points, {} covers", p.size(), doc.covers.len());
    match out {
        Some(path) => {
            document::write(path, &doc.to_json())?;
            println!("{summary}");
        }
        None => {
            print!("{}", doc.to_json());
            eprintln!("{summary}");
        }
    }
    Ok(HOLDS)
}

fn check(
    frame: &Path,
    formula: &str,
    limits: &Limits,
    json: bool,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    let (_, p) = document::load_frame(frame)?;
    let f = parse(formula)?;
    let result = parallel::check_validity(&p, &f, limits)?;
    let (text, code) = match result.countermodel() {
        None if json => (
            json!({"formula": f.to_string(), "valid": true}).to_string(),
            HOLDS,
        ),
        None => (format!("valid: {f}"), HOLDS),
        Some(cm) if json => {
            let valuation: serde_json::Map<String, serde_json::Value> = cm
                .valuation
                .iter()
                .map(|(k, u)| {
                    let labels: Vec<&str> = u.members().map(|x| p.label(x)).collect();
                    (k.to_string(), json!(labels))
                })
                .collect();
            let doc = json!({
                "formula": f.to_string(),
                "valid": false,
                "point": p.label(cm.point),
                "valuation": valuation,
            });
            (doc.to_string(), FAILS)
        }
        Some(cm) => (
            format!("not valid: {f}\n{}", render::countermodel(&p, cm)),
            FAILS,
        ),
    };
    emit(out, &format!("{text}\n"))?;
    Ok(code)
}

#[allow(clippy::too_many_arguments)]
fn morphism(
    source: &Path,
    target: &Path,
    onto: bool,
    deterministic: bool,
    map: Option<&Path>,
    limits: &Limits,
    json: bool,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    let (_, p) = document::load_frame(source)?;
    let (_, q) = document::load_frame(target)?;
    if let Some(path) = map {
        let m = document::load_map(path, &p, &q)?;
        let report = check_p_morphism(&m, onto);
        if report.ok() {
            println!("verified: {}", render::map_pairs(&m));
            return Ok(HOLDS);
        }
        for v in &report.violations {
            println!("{}", render::violation(&m, v));
        }
        if report.truncated {
            println!("(more violations omitted)");
        }
        return Ok(FAILS);
    }
    let found = if deterministic {
        cheqlab_core::search_p_morphism(&p, &q, onto, limits)?
    } else {
        parallel::search_p_morphism(&p, &q, onto, limits)?
    };
    match found {
        Some(m) => {
            let text = document::map_to_json(&m);
            match out {
                Some(path) => {
                    document::write(path, &text)?;
                    println!("found: {}", render::map_pairs(&m));
                }
                None if json => print!("{text}"),
                None => {
                    print!("{text}");
                    eprintln!("found: {}", render::map_pairs(&m));
                }
            }
            Ok(HOLDS)
        }
        None => {
            let kind = if onto {
                "onto p-morphism"
            } else {
                "p-morphism"
            };
            println!("no {kind} exists (exhaustive search)");
            Ok(FAILS)
        }
    }
}
