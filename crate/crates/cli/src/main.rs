//! `doxlogic` command-line front end.
//!
//! Exit codes: 0 success / true / valid, 1 false / invalid / fuzz failures,
//! 2 evaluation errors, 64 usage errors, 66 unreadable or malformed input
//! files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use doxlogic::harness::{fuzz_targets, FuzzTarget, GenConfig};
use doxlogic::hilbert::{check_derivation_with, load_derivation, ProofConfig};
use doxlogic::{bundled, load_game, parse, CheckError, Checker, Formula, Game, NameSet, StrategyQuery};

const EXIT_FALSE: u8 = 1;
const EXIT_EVAL: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_NOINPUT: u8 = 66;

#[derive(Parser)]
#[command(name = "doxlogic", version, about = "Model checker and proof checker for trust-based beliefs and doxastic strategies")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula at a state.
    Check {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(long)]
        formula: String,
    },
    /// Find the first strategy profile witnessing [C]{A;P}{X}goal.
    Synth(SynthArgs),
    /// Check a derivation file.
    Prove {
        #[arg(long)]
        proof: PathBuf,
        /// Accept GeneralizedPublicBelief axiom lines.
        #[arg(long)]
        generalized_public_belief: bool,
    },
    /// Fuzz the axiom schemas and derived principles for soundness.
    Fuzz(FuzzArgs),
    /// Write the bundled example files.
    Examples {
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    game: PathBuf,
    #[arg(long)]
    state: String,
    /// Comma-separated actors.
    #[arg(long, default_value = "")]
    coalition: String,
    /// Comma-separated variables trusted before the transition.
    #[arg(long, default_value = "")]
    ante: String,
    /// Comma-separated variables trusted after the transition.
    #[arg(long, default_value = "")]
    post: String,
    /// Comma-separated variables the strategy may depend on.
    #[arg(long, default_value = "")]
    data: String,
    #[arg(long)]
    goal: String,
}

#[derive(Args)]
struct FuzzArgs {
    /// JSON generator configuration; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Fuzz only this schema or derived principle (e.g. Truth, CorruptedTruth).
    #[arg(long)]
    schema: Option<FuzzTarget>,
    #[arg(long)]
    max_states: Option<usize>,
    #[arg(long)]
    max_formula_depth: Option<usize>,
    /// Also write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failed invocation: exit code and message for stderr.
struct Failure(u8, String);

fn names(list: &str) -> NameSet {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn read_game(path: &Path) -> Result<Game, Failure> {
    load_game(path).map_err(|e| Failure(EXIT_NOINPUT, format!("{}: {e}", path.display())))
}

fn read_formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| Failure(EXIT_EVAL, format!("formula: {e}")))
}

fn eval_error(e: CheckError) -> Failure {
    Failure(EXIT_EVAL, e.to_string())
}

fn emit(format: Format, text: &str, value: serde_json::Value) {
    let mut out = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = match format {
        Format::Text => writeln!(out, "{text}"),
        Format::Json => writeln!(out, "{value}"),
    };
}

fn check(format: Format, game: &Path, state: &str, formula: &str) -> Result<u8, Failure> {
    let game = read_game(game)?;
    let f = read_formula(formula)?;
    let verdict = Checker::new(&game).satisfies(state, &f).map_err(eval_error)?;
    emit(
        format,
        &verdict.to_string(),
        json!({"state": state, "formula": f.to_string(), "verdict": verdict}),
    );
    Ok(if verdict { 0 } else { EXIT_FALSE })
}

fn synth(format: Format, args: &SynthArgs) -> Result<u8, Failure> {
    let game = read_game(&args.game)?;
    let query = StrategyQuery {
        coalition: names(&args.coalition),
        ante: names(&args.ante),
        post: names(&args.post),
        data: names(&args.data),
        goal: read_formula(&args.goal)?,
    };
    let result = Checker::new(&game)
        .check_strategy(&args.state, &query)
        .map_err(eval_error)?;
    let text = match &result.witness {
        Some(profile) => profile.iter().map(|(a, s)| format!("{a}={s}")).collect::<Vec<_>>().join(" "),
        None => "none".to_string(),
    };
    let text = if text.is_empty() { "{}".to_string() } else { text };
    emit(
        format,
        &text,
        json!({"state": args.state, "formula": query.formula().to_string(), "witness": result.witness}),
    );
    Ok(if result.verdict { 0 } else { EXIT_FALSE })
}

fn prove(format: Format, path: &Path, generalized_public_belief: bool) -> Result<u8, Failure> {
    let d = load_derivation(path).map_err(|e| Failure(EXIT_NOINPUT, format!("{}: {e}", path.display())))?;
    let config = ProofConfig {
        generalized_public_belief,
    };
    let outcome = check_derivation_with(&d, &config);
    let conclusion = d.conclusion().map(|f| f.to_string());
    match outcome {
        Ok(()) => {
            let text = format!("valid: {}", conclusion.as_deref().unwrap_or(""));
            emit(
                format,
                &text,
                json!({"valid": true, "lines": d.len(), "conclusion": conclusion}),
            );
            Ok(0)
        }
        Err(failure) => {
            emit(
                format,
                &format!("invalid: {failure}"),
                json!({
                    "valid": false,
                    "lines": d.len(),
                    "conclusion": conclusion,
                    "failure": {"line": failure.line, "reason": failure.reason.to_string()},
                }),
            );
            Ok(EXIT_FALSE)
        }
    }
}

fn fuzz(format: Format, args: &FuzzArgs) -> Result<u8, Failure> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure(EXIT_NOINPUT, format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Failure(EXIT_NOINPUT, format!("{}: {e}", path.display())))?
        }
        None => GenConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(trials) = args.trials {
        config.trials = trials;
    }
    if let Some(n) = args.max_states {
        config.max_states = n;
    }
    if let Some(n) = args.max_formula_depth {
        config.max_formula_depth = n;
    }
    let targets = match args.schema {
        Some(t) => vec![t],
        None => FuzzTarget::sound(),
    };
    let report = fuzz_targets(&targets, &config);
    let value = serde_json::to_value(&report).expect("report serializes");
    if let Some(out) = &args.out {
        let text = serde_json::to_string_pretty(&value).expect("report serializes");
        fs::write(out, text + "\n").map_err(|e| Failure(EXIT_NOINPUT, format!("{}: {e}", out.display())))?;
    }
    let text = report
        .schemas
        .iter()
        .map(|s| {
            let mut line = format!("{}: {} trials, {} failures", s.schema, s.trials, s.failures.len());
            if let Some(first) = s.failures.first() {
                line += &format!(" (first: trial {}, {})", first.trial, first.instance);
            }
            line
        })
        .chain([format!("total failures: {}", report.total_failures())])
        .collect::<Vec<_>>()
        .join("\n");
    emit(format, &text, value);
    Ok(if report.total_failures() == 0 { 0 } else { EXIT_FALSE })
}

fn examples(format: Format, dir: &Path) -> Result<u8, Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure(EXIT_NOINPUT, format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for (name, contents) in bundled::files() {
        let path = dir.join(name);
        fs::write(&path, contents).map_err(|e| Failure(EXIT_NOINPUT, format!("{}: {e}", path.display())))?;
        written.push(path.display().to_string());
    }
    emit(format, &written.join("\n"), json!({"written": written}));
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    let outcome = match &cli.command {
        Command::Check { game, state, formula } => check(format, game, state, formula),
        Command::Synth(args) => synth(format, args),
        Command::Prove {
            proof,
            generalized_public_belief,
        } => prove(format, proof, *generalized_public_belief),
        Command::Fuzz(args) => fuzz(format, args),
        Command::Examples { dir } => examples(format, dir),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
