mod commands;
mod input;
mod report;

use clap::{Parser, ValueEnum};
use input::{InputError, Node, SCHEMA};
use report::Failure;
use serde_json::Value;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Verify torus and Weil-group computations on a JSON input.
#[derive(Parser)]
#[command(name = "lltori", version)]
struct Cli {
    /// One of: cohomology, tn-check, lhs-verify, five-term, h1-weil, kottwitz,
    /// kottwitz-map, tor-quasi-iso, pairing, duality-orders, functoriality,
    /// shapiro, fourier-check, hecke-tower, corpus-sweep
    command: String,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    report: Format,
    /// Overrides the "seed" field of the input.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn load(cli: &Cli) -> Result<Value, InputError> {
    let file = cli.input.display().to_string();
    let text = std::fs::read_to_string(&cli.input).map_err(|e| InputError { path: file.clone(), message: e.to_string() })?;
    let mut doc: Value = serde_json::from_str(&text).map_err(|e| InputError { path: file.clone(), message: format!("line {}, column {}: {}", e.line(), e.column(), e) })?;
    let Some(obj) = doc.as_object_mut() else {
        return input::err("", "the document must be a JSON object");
    };
    match obj.get("schema") {
        Some(Value::String(s)) if s == SCHEMA => {}
        Some(other) => return input::err("schema", format!("unsupported schema {} (expected \"{}\")", other, SCHEMA)),
        None => return input::err("schema", "missing field"),
    }
    if let Some(s) = cli.seed {
        obj.insert("seed".into(), Value::from(s));
    }
    Ok(doc)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !commands::COMMANDS.contains(&cli.command.as_str()) {
        eprintln!("error: unknown command \"{}\" (expected one of {})", cli.command, commands::COMMANDS.join(", "));
        return ExitCode::from(2);
    }
    let doc = match load(&cli) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    };
    let outcome = lltori::par::with_jobs(cli.jobs, || commands::run(&cli.command, &Node::root(&doc)));
    match outcome {
        Ok(r) => {
            match cli.report {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report::to_json(&cli.command, &doc, &r)).expect("JSON values serialize")),
                Format::Text => print!("{}", report::to_text(&cli.command, &doc, &r)),
            }
            if r.pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
        Err(Failure::Math(m)) => {
            eprintln!("check failed: {}", m);
            ExitCode::from(1)
        }
    }
}
