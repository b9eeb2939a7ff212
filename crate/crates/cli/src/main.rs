use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use lcacalc::{build_engine, parse_query, run, CliError, EngineOptions};
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

/// Symbolic Hom/Ext calculator for locally compact abelian groups.
///
/// Flags go before the command; everything after it is read as one query
/// line, e.g. `lcacalc ext Pr(2) , Zp(2)`.
#[derive(Debug, Parser)]
#[command(name = "lcacalc", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Fact table to use instead of the built-in one.
    #[arg(long, value_name = "PATH")]
    facts: Option<PathBuf>,
    /// Bound on nested exact-sequence deductions.
    #[arg(long, value_name = "N")]
    depth: Option<u32>,
    /// Seed for the randomized selftest checks.
    #[arg(long, value_name = "N", default_value_t = 0x5eed)]
    seed: u64,
    /// Remove a rule from the registry (repeatable).
    #[arg(long = "disable-rule", value_name = "ID")]
    disable_rule: Vec<String>,
    /// Command and operands: dual, hom, ext, extq, props, decompose, member,
    /// injective, projective, resolve, oracle-ext, derive, selftest, rules.
    #[arg(required = true, trailing_var_arg = true, allow_hyphen_values = true, value_name = "QUERY")]
    query: Vec<String>,
}

fn fail(format: Format, line: &str, e: &CliError) -> ExitCode {
    match format {
        Format::Text => eprintln!("error[{}]: {e}", e.code()),
        Format::Structured => {
            println!("{}", json!({ "query": line, "error": { "code": e.code(), "message": e.to_string() } }))
        }
    }
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let line = cli.query.join(" ");
    let query = match parse_query(&line) {
        Ok(q) => q,
        Err(e) => return fail(cli.format, &line, &e.into()),
    };
    let opts = EngineOptions { facts: cli.facts, depth: cli.depth, disabled_rules: cli.disable_rule };
    let outcome = build_engine(&opts).and_then(|engine| run(&engine, &query, cli.seed));
    match outcome {
        Ok(o) => {
            match cli.format {
                Format::Text => print!("{}", o.record.text()),
                Format::Structured => println!("{}", o.record.structured()),
            }
            if let Some(note) = o.note {
                eprintln!("{note}");
            }
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => fail(cli.format, &line, &e),
    }
}
