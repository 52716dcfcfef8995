//! `cubulate`: command-line front end.
//!
//! Exit codes: 0 on success, 1 on bad input, 2 when a search budget runs out.
//! With `--out FILE`, a run manifest is written to `FILE.manifest.json`.

mod commands;
mod manifest;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use commands::{BudgetExceeded, Command};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Dot,
}

const SCHEMA_HELP: &str = "\
Outputs (field `schema`):
  validate   cubulate.validation/v1
  enumerate  cubulate.census/v1            (also csv)
  develop    cubulate.rectangle/v1
  antitorus  cubulate.antitorus-screen/v1
  gamma      cubulate.gamma/v1
  obstruct   cubulate.obstruction-table/v1 (also csv: n,diam,L)
  wellsep    cubulate.well-separation/v1
  staircase  cubulate.nonacyl-certificate/v1 (also csv, dot)
  certify    cubulate.certify-report/v1
Run manifests: cubulate.run-manifest/v1, written next to --out.
Exit codes: 0 ok, 1 input error, 2 budget exceeded.";

#[derive(Debug, Parser)]
#[command(name = "cubulate", version, about = "Square complexes, anti-tori and staircase certificates", after_help = SCHEMA_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for table rows and census search.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

enum Outcome {
    Done,
    Budget(String),
    NotReproduced,
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<Outcome> {
    if let Command::Certify(args) = &cli.command {
        let report = manifest::certify(&args.artifact, args.manifest.as_deref())?;
        emit(cli.out.as_ref(), &(serde_json::to_string_pretty(&report)? + "\n"))?;
        return Ok(if report.reproduced { Outcome::Done } else { Outcome::NotReproduced });
    }
    let mut cmd = cli.command;
    cmd.absolutize()?;
    let (core, art, text) = manifest::produce(&cmd, cli.format)?;
    emit(cli.out.as_ref(), &text)?;
    if let Some(out) = &cli.out {
        manifest::write_manifest(core, &cmd, out, &text)?;
    }
    Ok(match art.budget_note {
        Some(note) => Outcome::Budget(note),
        None => Outcome::Done,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            eprintln!("\n{SCHEMA_HELP}");
            return ExitCode::from(1);
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| execute(cli)) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Budget(note)) => {
            eprintln!("budget exceeded: {note}");
            ExitCode::from(2)
        }
        Ok(Outcome::NotReproduced) => {
            eprintln!("error: artifact was not reproduced");
            ExitCode::from(1)
        }
        Err(e) if e.is::<BudgetExceeded>() => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
