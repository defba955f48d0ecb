use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::Parser;
use plconj::{doc, run, InputError, COMMANDS};
use serde_json::Value;

/// Exact decisions in Thompson's group F: conjugacy, simultaneous conjugacy, roots, centralizers.
///
/// Elements are node lists such as '[["0","0"],["1/2","1/4"],["3/4","1/2"],["1","1"]]' or words
/// such as 'x0 x1^-1 x2'. Tuples are JSON arrays of elements or comma-separated words.
/// Exit status: 0 yes/ok, 1 no, 2 malformed input.
#[derive(Parser, Debug)]
#[command(name = "plconj", version, allow_negative_numbers = true)]
struct Cli {
    /// One of: eval, compose, invert, power, fixedset, reach, conjugate, simconj, roots,
    /// centralizer, intersect, reduce2, verify, sample.
    command: String,

    /// Positional arguments of the command.
    args: Vec<String>,

    /// Read the arguments as a JSON array (or an object with an "args" array) from a file, or
    /// from stdin with '-'.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<String>,

    /// Print the full result document as JSON instead of plain text.
    #[arg(long)]
    json: bool,

    /// Seed for the `sample` test-vector generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn read_args(cli: &Cli) -> Result<Vec<Value>, InputError> {
    let Some(src) = &cli.input else {
        return Ok(cli.args.iter().map(|a| doc::token(a)).collect());
    };
    if !cli.args.is_empty() {
        return Err(InputError("give arguments either positionally or with --in, not both".into()));
    }
    let mut text = String::new();
    if src == "-" {
        io::stdin().read_to_string(&mut text).map_err(|e| InputError(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(src).map_err(|e| InputError(format!("reading {src}: {e}")))?;
    }
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| InputError(format!("parse error at line {} column {}: {e}", e.line(), e.column())))?;
    match v {
        Value::Array(items) => Ok(items),
        Value::Object(mut o) => match o.remove("args") {
            Some(Value::Array(items)) => Ok(items),
            // A lone result document is the argument of `verify`.
            _ => Ok(vec![Value::Object(o)]),
        },
        other => Err(InputError(format!("expected an argument array, got {other}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !COMMANDS.contains(&cli.command.as_str()) {
        eprintln!("plconj: unknown command {:?}; expected one of {}", cli.command, COMMANDS.join(", "));
        return ExitCode::from(2);
    }
    let report = read_args(&cli).and_then(|args| run(&cli.command, &args, cli.seed));
    match report {
        Ok(r) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&r.doc).expect("documents serialize") + "\n"
            } else {
                r.text()
            };
            let _ = io::stdout().write_all(body.as_bytes());
            ExitCode::from(r.exit as u8)
        }
        Err(e) => {
            eprintln!("plconj: {e}");
            ExitCode::from(2)
        }
    }
}
