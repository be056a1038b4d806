use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use henkin_forge::coding::{code, henkin_witness, level_of, Discipline};
use henkin_forge::henkin::{complete, Extraction, Options};
use henkin_forge::kont::complete_prime;
use henkin_forge::nbe::{check_min, is_normal, normalize, show_sequent, MinFormula, MinProof};
use henkin_forge::parse::{parse_formula, parse_proof, parse_theory};
use henkin_forge::proof::{check, pretty, render_sketch, ObjectProof};
use henkin_forge::semantics::{Witness, GALLERY};
use henkin_forge::syntax::{alpha_eq, show_context, Formula, Theory};

#[derive(Parser, Debug)]
#[command(
    name = "henkin-forge",
    version,
    about = "Classical proof kernel and completeness extraction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Check a proof against a theory and, optionally, a formula.
    Check,
    /// Extract a proof of a formula from a validity witness.
    Extract,
    /// Evaluate a proof by soundness and extract it back.
    Roundtrip,
    /// Normalize a minimal implicational proof.
    Nbe,
    /// Show the code and enumeration level of a formula, or list witnesses.
    Info,
}

#[derive(clap::Args, Debug, Clone)]
struct RunConfig {
    /// Theory file: one formula per line, `//` comments.
    #[arg(long, global = true)]
    theory: Option<PathBuf>,
    /// Goal formula.
    #[arg(long, global = true)]
    formula: Option<String>,
    /// File holding an s-expression proof.
    #[arg(long, global = true, conflicts_with = "witness")]
    proof: Option<PathBuf>,
    /// Built-in witness name.
    #[arg(long, global = true)]
    witness: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Engine::Core)]
    engine: Engine,
    /// Print one line per engine event.
    #[arg(long, global = true)]
    trace: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tree)]
    format: Format,
    #[arg(long, global = true, default_value_t = 1024)]
    max_replays: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Engine {
    Core,
    Kont,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Tree,
    Term,
}

type CliResult<T> = Result<T, String>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

impl RunConfig {
    fn theory(&self) -> CliResult<Theory> {
        match &self.theory {
            None => Ok(Theory::empty()),
            Some(path) => parse_theory(&read(path)?).map_err(|e| format!("{}: {e}", path.display())),
        }
    }

    fn formula(&self) -> CliResult<Option<Formula>> {
        self.formula
            .as_deref()
            .map(|s| parse_formula(s).map_err(|e| format!("formula: {e}")))
            .transpose()
    }

    fn proof(&self) -> CliResult<ObjectProof> {
        let path = self.proof.as_ref().ok_or("--proof FILE is required")?;
        parse_proof(read(path)?.trim()).map_err(|e| format!("{}: {e}", path.display()))
    }

    fn options(&self) -> Options {
        Options {
            trace: self.trace,
            max_replays: self.max_replays,
        }
    }
}

/// What a command prints and whether its final check succeeded.
struct Report {
    text: String,
    ok: bool,
}

fn sequent(ctx: &[Formula], a: &Formula) -> String {
    if ctx.is_empty() {
        format!("|- {a}")
    } else {
        format!("{} |- {a}", show_context(ctx))
    }
}

fn render_proof(format: Format, p: &ObjectProof, ctx: &[Formula]) -> CliResult<String> {
    match format {
        Format::Term => Ok(format!("{p}\n")),
        Format::Tree => pretty(p, ctx).map_err(|e| e.to_string()),
    }
}

fn cmd_check(config: &RunConfig) -> CliResult<Report> {
    let theory = config.theory()?;
    let p = config.proof()?;
    let mut text = String::new();
    let ok = match check(&p, theory.members()) {
        Ok(found) => match config.formula()? {
            Some(a) if !alpha_eq(&a, &found) => {
                text.push_str(&format!("proves `{found}`, not `{a}`\nverdict: rejected\n"));
                false
            }
            _ => {
                text.push_str(&format!("{}\nverdict: ok\n", sequent(theory.members(), &found)));
                true
            }
        },
        Err(e) => {
            text.push_str(&format!("{e}\nverdict: rejected\n"));
            false
        }
    };
    Ok(Report { text, ok })
}

fn run_engine(config: &RunConfig, witness: &Witness, goal: &Formula) -> CliResult<Extraction> {
    let out = match config.engine {
        Engine::Core => complete(witness, goal, config.options()),
        Engine::Kont => complete_prime(witness, goal, config.options()),
    };
    out.map_err(|e| e.to_string())
}

fn extraction_text(config: &RunConfig, e: &Extraction) -> String {
    let mut text = match config.format {
        Format::Tree => render_sketch(e.proof.sketch()),
        Format::Term => format!("{}\n", e.proof.proof()),
    };
    text.push_str(&format!("context: [{}]\n", show_context(&e.ctx)));
    if config.trace {
        for line in &e.trace {
            text.push_str(&format!("trace: {line}\n"));
        }
        if config.engine == Engine::Kont {
            text.push_str(&format!("replays: {}\n", e.replays));
        }
    }
    text
}

fn cmd_extract(config: &RunConfig) -> CliResult<Report> {
    let witness = match (&config.witness, &config.proof) {
        (Some(name), _) => Witness::by_name(name).map_err(|e| e.to_string())?,
        (None, Some(_)) => Witness::from_proof(config.theory()?, config.proof()?).map_err(|e| e.to_string())?,
        (None, None) => return Err("extract needs --witness NAME or --proof FILE".into()),
    };
    let goal = config.formula()?.unwrap_or_else(|| witness.formula());
    let e = run_engine(config, &witness, &goal)?;
    let ok = e.proof.recheck().is_ok();
    Ok(Report {
        text: extraction_text(config, &e),
        ok,
    })
}

fn cmd_roundtrip(config: &RunConfig) -> CliResult<Report> {
    let theory = config.theory()?;
    let p = config.proof()?;
    let found = check(&p, theory.members()).map_err(|e| format!("input proof: {e}"))?;
    let goal = match config.formula()? {
        Some(a) if !alpha_eq(&a, &found) => return Err(format!("input proof proves `{found}`, not `{a}`")),
        Some(a) => a,
        None => found,
    };
    let mut text = format!("input: {}\n", sequent(theory.members(), &goal));
    let witness = Witness::from_proof(theory, p).map_err(|e| e.to_string())?;
    let e = run_engine(config, &witness, &goal)?;
    let ok = e.proof.recheck().is_ok() && alpha_eq(e.proof.conclusion(), &goal);
    text.push_str(&format!("extracted: {}\n", sequent(&e.ctx, &goal)));
    text.push_str(&extraction_text(config, &e));
    text.push_str(if ok { "verdict: ok\n" } else { "verdict: rejected\n" });
    Ok(Report { text, ok })
}

fn cmd_nbe(config: &RunConfig) -> CliResult<Report> {
    let theory = config.theory()?;
    let ctx = theory
        .members()
        .iter()
        .map(MinFormula::from_formula)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let p = MinProof::from_object(&config.proof()?).map_err(|e| e.to_string())?;
    let a = check_min(&p, &ctx).map_err(|e| e.to_string())?;
    let n = normalize(&p, &ctx).map_err(|e| e.to_string())?;
    let ok = check_min(&n, &ctx).as_ref() == Ok(&a) && is_normal(&n, &ctx);
    let mut text = format!("{}\n", show_sequent(&ctx, &a));
    text.push_str(&render_proof(config.format, &n.to_object(), theory.members())?);
    text.push_str(if ok { "verdict: ok\n" } else { "verdict: rejected\n" });
    Ok(Report { text, ok })
}

fn cmd_info(config: &RunConfig) -> CliResult<Report> {
    let Some(a) = config.formula()? else {
        let mut text = String::from("witnesses:\n");
        for name in GALLERY {
            let w = Witness::by_name(name).map_err(|e| e.to_string())?;
            text.push_str(&format!("  {name}: {}\n", w.formula()));
        }
        return Ok(Report { text, ok: true });
    };
    let mut text = format!("formula: {a}\ncode: {}\n", code(&a));
    for (label, d) in [
        ("two-class", Discipline::TwoClass),
        ("three-class", Discipline::ThreeClass),
    ] {
        match level_of(&a, d) {
            Ok(level) => text.push_str(&format!("level ({label}): {level} ({:?})\n", level.class)),
            Err(e) => text.push_str(&format!("level ({label}): none, {e}\n")),
        }
    }
    if matches!(a, Formula::Forall(..) | Formula::Exists(..)) {
        text.push_str(&format!("witness variable: {}\n", henkin_witness(&a)));
    }
    Ok(Report { text, ok: true })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check => cmd_check(&cli.config),
        Command::Extract => cmd_extract(&cli.config),
        Command::Roundtrip => cmd_roundtrip(&cli.config),
        Command::Nbe => cmd_nbe(&cli.config),
        Command::Info => cmd_info(&cli.config),
    };
    match result {
        Ok(report) => {
            print!("{}", report.text);
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
