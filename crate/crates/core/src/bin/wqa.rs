use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wqa::cartan::classify_indices;
use wqa::cli::{list_checks, load_config, parse_expression, run_suite, EngineConfig};
use wqa::coalgebra::{standard_coproduct, standard_counit};
use wqa::repr::truncated_character;
use wqa::weakhopf::enumerate_grouplikes;
use wqa::Error;

#[derive(Parser)]
#[command(name = "wqa", version, about = "Exact computations in weak quantized enveloping algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the datum and print its classification.
    Validate { config: PathBuf },
    /// Reduce an expression to normal form.
    Reduce {
        config: PathBuf,
        #[arg(short = 'e', long = "expr")]
        expr: String,
        /// Print every rewrite step.
        #[arg(long)]
        trace: bool,
    },
    /// Run a verification suite.
    Verify {
        config: PathBuf,
        /// Suite name; defaults to the config's `suites`, or `all`.
        #[arg(long)]
        suite: Option<String>,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print a truncated character.
    Character {
        config: PathBuf,
        /// Comma-separated values λ(h_i).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        weight: Vec<i64>,
        #[arg(long)]
        height: Option<usize>,
        #[arg(long)]
        weyl_length: Option<usize>,
    },
    /// Enumerate grouplike torus words.
    Grouplikes {
        config: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
    },
    /// Print every check family with its anchor.
    ListChecks,
}

fn is_config_error(e: &Error) -> bool {
    matches!(e, Error::Io(_) | Error::Parse(_) | Error::Validation(_) | Error::UnsupportedM(_))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("wqa: {e}");
            ExitCode::from(if is_config_error(&e) { 2 } else { 1 })
        }
    }
}

fn run(cmd: Cmd) -> Result<bool, Error> {
    let mut out = String::new();
    let ok = body(cmd, &mut out)?;
    // A closed pipe (e.g. `| head`) is not an error.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    Ok(ok)
}

fn body(cmd: Cmd, out: &mut String) -> Result<bool, Error> {
    match cmd {
        Cmd::Validate { config } => {
            let cfg = load_config(&config)?;
            let c = classify_indices(&cfg.datum);
            _ = writeln!(out, "rank {}  m {}  types {}", cfg.datum.rank(), cfg.m, cfg.tau);
            _ = writeln!(out, "real {:?}  imaginary {:?}", c.real, c.imaginary);
            _ = writeln!(out, "symmetrizers {:?}", cfg.datum.symmetrizers());
            Ok(true)
        }
        Cmd::Reduce { config, expr, trace } => {
            let cfg = load_config(&config)?;
            let p = cfg.presentation()?;
            let x = parse_expression(&expr, &p)?;
            if trace {
                let (r, steps) = p.reduce_traced(&x)?;
                for s in &steps {
                    _ = writeln!(out, "{} * {} [{} -> {}] {}  ({})", s.coeff, s.prefix, s.lhs, s.rhs, s.suffix, s.kind.anchor());
                }
                _ = writeln!(out, "{r}");
            } else {
                _ = writeln!(out, "{}", p.reduce(&x)?);
            }
            Ok(true)
        }
        Cmd::Verify { config, suite, json } => {
            let cfg = load_config(&config)?;
            let suites = match suite {
                Some(s) => vec![s],
                None if cfg.suites.is_empty() => vec!["all".to_string()],
                None => cfg.suites.clone(),
            };
            verify(&cfg, &suites, json, out)
        }
        Cmd::Character { config, weight, height, weyl_length } => {
            let cfg = load_config(&config)?;
            let n = height.unwrap_or(cfg.truncation.module_height);
            let l = weyl_length.unwrap_or(cfg.truncation.weyl_length);
            let ch = truncated_character(&cfg.datum, &weight, n, l)?;
            _ = writeln!(out, "height  drop  multiplicity");
            _ = write!(out, "{}", ch.table());
            Ok(true)
        }
        Cmd::Grouplikes { config, max_len } => {
            let cfg = load_config(&config)?;
            let p = cfg.presentation()?;
            let rep = enumerate_grouplikes(&p, &standard_coproduct(&p), &standard_counit(&p), max_len)?;
            for (w, len) in &rep.elements {
                _ = writeln!(out, "{len}  {w}");
            }
            _ = writeln!(out, "{} grouplike, {} rejected, closed: {}", rep.elements.len(), rep.rejected.len(), rep.closed());
            Ok(rep.closed())
        }
        Cmd::ListChecks => {
            for f in list_checks() {
                _ = writeln!(out, "{:<14} {:<48} {}", f.suite, f.pattern, f.anchor);
            }
            Ok(true)
        }
    }
}

fn verify(cfg: &EngineConfig, suites: &[String], json: bool, out: &mut String) -> Result<bool, Error> {
    let mut ok = true;
    for s in suites {
        let rep = run_suite(cfg, s)?;
        ok &= rep.passed();
        if json {
            _ = writeln!(out, "{}", rep.to_json());
        } else {
            _ = writeln!(out, "{rep}");
        }
    }
    Ok(ok)
}
