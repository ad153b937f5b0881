//! `glbranch`: command-line access to the derivative calculus and the
//! branching decision.
//!
//! Exit status: 0 on success, 1 for a false or null answer under `--strict`,
//! 2 on errors (including a failed `selfcheck`).

mod cache;
mod query;
mod render;

use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use rayon::prelude::*;
use serde_json::{json, Value};

use cache::Cache;
use query::{is_negative, resolve, Command, Context};

#[derive(Parser, Debug)]
#[command(name = "glbranch", version, about = "Derivatives, integrals and branching laws for multisegments")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Print results as JSON
    #[arg(long, global = true)]
    json: bool,

    /// Exit with status 1 when the answer is false or null
    #[arg(long, global = true)]
    strict: bool,

    /// Read one query per line ("-" for stdin) and write one JSON result per line
    #[arg(long, global = true, value_name = "FILE")]
    batch: Option<PathBuf>,

    /// JSON-lines result cache, read before and appended after the run
    #[arg(long, global = true, value_name = "FILE")]
    cache: Option<PathBuf>,

    /// Seed for `selfcheck` sampling
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Point bound for `selfcheck` corpora
    #[arg(long, global = true, default_value_t = 6)]
    max_points: usize,

    /// Read bare `{...}` representations as Langlands parameters and print `St{...}`
    #[arg(long, global = true)]
    langlands: bool,
}

/// One line of a batch file: just a subcommand and its own options.
#[derive(Parser, Debug)]
#[command(name = "query", no_binary_name = true)]
struct BatchQuery {
    #[command(subcommand)]
    command: Command,
}

enum Answer {
    Value { name: &'static str, value: Value },
    Error(String),
}

fn answer(cmd: &Command, ctx: &Context, cache: Option<&Cache>) -> Answer {
    let resolved = match resolve(cmd, ctx) {
        Ok(r) => r,
        Err(e) => return Answer::Error(e.to_string()),
    };
    let name = resolved.name();
    let q = resolved.canonical(ctx);
    let h = cache::key(&q);
    if let Some(value) = cache.and_then(|c| c.get(&h)) {
        return Answer::Value { name, value };
    }
    match resolved.run(ctx) {
        Ok(value) => {
            if let Some(c) = cache {
                c.put(h, q, value.clone());
            }
            Answer::Value { name, value }
        }
        Err(e) => Answer::Error(e.to_string()),
    }
}

fn status(a: &Answer, strict: bool) -> u8 {
    match a {
        Answer::Error(_) => 2,
        Answer::Value { name: "selfcheck", value } if is_negative("selfcheck", value) => 2,
        Answer::Value { name, value } if strict && is_negative(name, value) => 1,
        Answer::Value { .. } => 0,
    }
}

fn read_batch(path: &PathBuf) -> std::io::Result<Vec<String>> {
    let reader: Box<dyn BufRead> = if path.as_os_str() == "-" {
        Box::new(BufReader::new(std::io::stdin()))
    } else {
        Box::new(BufReader::new(std::fs::File::open(path)?))
    };
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('#') {
            out.push(t.to_string());
        }
    }
    Ok(out)
}

fn batch_answer(line: &str, ctx: &Context, cache: Option<&Cache>) -> Answer {
    let Some(words) = shlex::split(line) else {
        return Answer::Error(format!("unbalanced quotes in {line:?}"));
    };
    match BatchQuery::try_parse_from(words) {
        Ok(q) => answer(&q.command, ctx, cache),
        Err(e) => Answer::Error(e.to_string().lines().next().unwrap_or("invalid query").to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Context { langlands: cli.langlands, seed: cli.seed, max_points: cli.max_points };
    let cache = match cli.cache.clone().map(Cache::open).transpose() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: cannot read cache: {e}");
            return ExitCode::from(2);
        }
    };

    let code = if let Some(path) = &cli.batch {
        if cli.command.is_some() {
            eprintln!("error: --batch takes its queries from the file, not the command line");
            return ExitCode::from(2);
        }
        let lines = match read_batch(path) {
            Ok(l) => l,
            Err(e) => {
                eprintln!("error: cannot read batch file: {e}");
                return ExitCode::from(2);
            }
        };
        let answers: Vec<Answer> = lines.par_iter().map(|l| batch_answer(l, &ctx, cache.as_ref())).collect();
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        for a in &answers {
            let line = match a {
                Answer::Value { value, .. } => value.to_string(),
                Answer::Error(e) => json!({ "error": e }).to_string(),
            };
            let _ = writeln!(out, "{line}");
        }
        answers.iter().map(|a| status(a, cli.strict)).max().unwrap_or(0)
    } else {
        let Some(cmd) = &cli.command else {
            eprintln!("error: a command or --batch is required (see --help)");
            return ExitCode::from(2);
        };
        let a = answer(cmd, &ctx, cache.as_ref());
        match &a {
            Answer::Value { name, value } => {
                if cli.json {
                    println!("{value}");
                } else {
                    println!("{}", render::text(name, value));
                }
            }
            Answer::Error(e) => eprintln!("error: {e}"),
        }
        status(&a, cli.strict)
    };

    if let Some(c) = cache {
        if let Err(e) = c.flush() {
            eprintln!("error: cannot write cache: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
