//! `nsba`: command-line front end for the non-standard model.

use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use nsba_core::logic::{eval_qf, eval_term, parse_formula, parse_term, run_suite, Env, Status, SuiteConfig};
use nsba_core::pairs::refute_power2_candidate;
use nsba_core::{
    arith, Element, Model, NonStandardModel, PairElement, PairsModel, SamplerConfig, StandardModel,
};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Eval(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Eval(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "nsba", version, about = "Arithmetic in a non-standard model of Buchi arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelKind {
    Nonstd,
    Std,
    Pairs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a term (prints an element) or a quantifier-free formula
    /// (prints true/false). `c` is bound to the generator.
    Eval {
        expr: String,
        /// Extra bindings, `NAME=ELEMENT`.
        #[arg(long = "bind", value_name = "NAME=ELEMENT")]
        bindings: Vec<String>,
    },
    /// x + y
    Add { x: String, y: String },
    /// Compare two elements: LESS, EQUAL or GREATER.
    Cmp { x: String, y: String },
    /// The largest power of two dividing x.
    V2 { x: String },
    /// The residue of x modulo n.
    Mod { x: String, n: u64 },
    /// x / n, if n divides x.
    Div { x: String, n: u64 },
    /// Check the axioms on a model, one TSV line per axiom.
    Axioms {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        cases: u64,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        den_bound: u64,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        offset_bound: u64,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(2..))]
        schema_max: u64,
        /// Comma-separated axiom ids, e.g. `A1,V13`.
        #[arg(long, value_delimiter = ',')]
        axioms: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = ModelKind::Nonstd)]
        model: ModelKind,
    },
    /// Refute a pair as a non-standard power of two in the pairs model.
    Refute { pair: String },
    /// Read commands from stdin, one per line.
    Repl,
}

fn elem(text: &str) -> Result<Element, CliError> {
    text.parse()
        .map_err(|e| CliError::Parse(format!("invalid element `{text}`: {e}")))
}

fn eval_error(e: impl ToString) -> CliError {
    CliError::Eval(e.to_string())
}

fn ordering_name(o: std::cmp::Ordering) -> &'static str {
    match o {
        std::cmp::Ordering::Less => "LESS",
        std::cmp::Ordering::Equal => "EQUAL",
        std::cmp::Ordering::Greater => "GREATER",
    }
}

fn cmd_eval(expr: &str, bindings: &[String], out: &mut dyn Write) -> Result<u8, CliError> {
    let mut env = Env::new();
    env.bind("c", Element::generator());
    for b in bindings {
        let (name, value) = b
            .split_once('=')
            .ok_or_else(|| CliError::Parse(format!("binding `{b}` is not NAME=ELEMENT")))?;
        env.bind(name.trim(), elem(value)?);
    }
    let model = NonStandardModel;
    if let Ok(term) = parse_term(expr) {
        let value = eval_term(&term, &env, &model).map_err(eval_error)?;
        writeln!(out, "{value}").map_err(eval_error)?;
        return Ok(0);
    }
    let formula = parse_formula(expr).map_err(|e| CliError::Parse(e.to_string()))?;
    let truth = eval_qf(&formula, &env, &model).map_err(eval_error)?;
    writeln!(out, "{truth}").map_err(eval_error)?;
    Ok(0)
}

fn report_suite<M: Model>(model: &M, cfg: &SuiteConfig, out: &mut dyn Write) -> Result<u8, CliError> {
    let mut failed = false;
    for report in run_suite(model, cfg) {
        failed |= report.status == Status::Fail;
        writeln!(out, "{report}").map_err(eval_error)?;
    }
    Ok(u8::from(failed))
}

fn run(command: Command, out: &mut dyn Write) -> Result<u8, CliError> {
    let mut print = |s: String| writeln!(out, "{s}").map_err(eval_error);
    match command {
        Command::Eval { expr, bindings } => return cmd_eval(&expr, &bindings, out),
        Command::Add { x, y } => print(arith::add(&elem(&x)?, &elem(&y)?).to_string())?,
        Command::Cmp { x, y } => {
            print(ordering_name(arith::compare(&elem(&x)?, &elem(&y)?)).to_string())?
        }
        Command::V2 { x } => print(arith::v2(&elem(&x)?).to_string())?,
        Command::Mod { x, n } => {
            let r = arith::residue_mod(&elem(&x)?, &n.into()).map_err(eval_error)?;
            print(r.to_string())?
        }
        Command::Div { x, n } => {
            let q = arith::divide(&elem(&x)?, &n.into()).map_err(eval_error)?;
            print(q.to_string())?
        }
        Command::Axioms {
            seed,
            cases,
            den_bound,
            offset_bound,
            schema_max,
            axioms,
            model,
        } => {
            let cfg = SuiteConfig {
                seed,
                cases: cases as usize,
                sampler: SamplerConfig {
                    den_bound,
                    offset_bound,
                    ..SamplerConfig::default()
                },
                schema_max,
                axioms,
            };
            return match model {
                ModelKind::Nonstd => report_suite(&NonStandardModel, &cfg, out),
                ModelKind::Std => report_suite(&StandardModel, &cfg, out),
                ModelKind::Pairs => report_suite(&PairsModel, &cfg, out),
            };
        }
        Command::Refute { pair } => {
            let x: PairElement = pair
                .parse()
                .map_err(|e| CliError::Parse(format!("invalid pair `{pair}`: {e}")))?;
            print(refute_power2_candidate(&x).map_err(eval_error)?.to_string())?
        }
        Command::Repl => return repl(io::stdin().lock(), out),
    }
    Ok(0)
}

/// Splits a line into words; single or double quotes group words.
fn split_words(line: &str) -> Result<Vec<String>, CliError> {
    let (mut words, mut current, mut quote, mut in_word) = (Vec::new(), String::new(), None, false);
    for ch in line.chars() {
        match (quote, ch) {
            (Some(q), ch) if ch == q => quote = None,
            (Some(_), ch) => current.push(ch),
            (None, '"' | '\'') => {
                quote = Some(ch);
                in_word = true;
            }
            (None, ch) if ch.is_whitespace() => {
                if in_word {
                    words.push(std::mem::take(&mut current));
                    in_word = false;
                }
            }
            (None, ch) => {
                current.push(ch);
                in_word = true;
            }
        }
    }
    if quote.is_some() {
        return Err(CliError::Parse("unterminated quote".into()));
    }
    if in_word {
        words.push(current);
    }
    Ok(words)
}

/// Runs each stdin line as a command. Errors are reported and the session
/// continues; the exit code is the worst seen.
fn repl(input: impl BufRead, out: &mut dyn Write) -> Result<u8, CliError> {
    let mut worst = 0;
    for line in input.lines() {
        let line = line.map_err(eval_error)?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if matches!(line, "quit" | "exit") {
            break;
        }
        let outcome = split_words(line).and_then(|words| {
            let cli = Cli::try_parse_from(std::iter::once("nsba".to_string()).chain(words))
                .map_err(|e| CliError::Parse(e.to_string().trim_end().to_string()))?;
            match cli.command {
                Command::Repl => Err(CliError::Parse("already in a repl".into())),
                command => run(command, out),
            }
        });
        let code = outcome.unwrap_or_else(|e| {
            let _ = writeln!(out, "error: {e}");
            e.exit_code()
        });
        worst = worst.max(code);
    }
    Ok(worst)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = run(cli.command, &mut out).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    });
    let _ = out.flush();
    ExitCode::from(code)
}
