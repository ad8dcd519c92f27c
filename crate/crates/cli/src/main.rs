//! `nonzero`: decide emptiness of zero and nonzero tree automata and check
//! the certificates it emits.
//!
//! Exit status: 0 nonempty or valid, 1 empty or invalid, 2 usage, parse or
//! certificate error, 3 a size guard tripped.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use nonzero_automata::catalog;
use nonzero_automata::certificate::{
    parse_certificate, serialize_jumping_witness, serialize_positional_run,
};
use nonzero_automata::jumping::{decide_emptiness_with, oracle_explicit_game, Side, SolverConfig};
use nonzero_automata::translate::translate_zero_to_nonzero;
use nonzero_automata::trivial::{
    brute_force_acceptance_witness, trivial_emptiness, TrivialOutcome,
};
use nonzero_automata::verify::{
    certificate_automaton, certify, unreachable_choices, verify_positional_run, Answer, Certificate,
};
use nonzero_automata::{
    parse_automaton, serialize_nonzero, Automaton, GuardExceeded, NonzeroAutomaton, RunSemantics,
    Verdict,
};

#[derive(Parser)]
#[command(
    name = "nonzero",
    version,
    about = "Emptiness checking for zero and nonzero tree automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct Guards {
    /// Largest automaton the explicit game oracle will build.
    #[arg(long, default_value_t = 3)]
    guard_states: usize,
    /// Largest number of candidate subsets an exhaustive search may try.
    #[arg(long, default_value_t = 1 << 16)]
    guard_subsets: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Decide emptiness through the jumping game.
    Check {
        file: PathBuf,
        /// Write the winning side's witness here.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Re-check the witness with the independent checker.
        #[arg(long)]
        certify: bool,
        #[command(flatten)]
        guards: Guards,
    },
    /// Decide emptiness ignoring the sure condition.
    CheckTrivial {
        file: PathBuf,
        /// Root state; defaults to the initial (maximal) state.
        #[arg(long)]
        root: Option<String>,
        /// Write a positional run here when nonempty.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Translate a zero automaton into a nonzero automaton.
    Translate { file: PathBuf },
    /// Check a certificate file against an automaton.
    Verify {
        automaton: PathBuf,
        witness: PathBuf,
        /// Check positional runs against the sure condition as well.
        #[arg(long)]
        full: bool,
    },
    /// Decide emptiness by brute force.
    Oracle {
        file: PathBuf,
        /// Search acceptance witnesses instead of solving the explicit game.
        #[arg(long)]
        trivial: bool,
        #[command(flatten)]
        guards: Guards,
    },
    /// Print a built-in automaton.
    Example { name: String },
}

/// The Pathfinder witness search gave up before finding a valid witness.
#[derive(Debug)]
struct Incomplete(usize);

impl std::fmt::Display for Incomplete {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "no checked Pathfinder witness within {} candidates per state",
            self.0
        )
    }
}

impl std::error::Error for Incomplete {}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read `{}`", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write `{}`", path.display()))
}

fn load(path: &Path) -> Result<Automaton> {
    parse_automaton(&read(path)?).with_context(|| format!("`{}`", path.display()))
}

fn nonzero_only<'a>(a: &'a Automaton, command: &str) -> Result<&'a NonzeroAutomaton> {
    match a {
        Automaton::Nonzero(a) => Ok(a),
        Automaton::Zero(_) => {
            bail!("`{command}` expects a nonzero automaton, got a zero automaton")
        }
    }
}

fn verdict(nonempty: bool) -> u8 {
    println!("{}", if nonempty { "NONEMPTY" } else { "EMPTY" });
    if nonempty {
        0
    } else {
        1
    }
}

fn check(file: &Path, witness: Option<&Path>, certify_witness: bool, guards: Guards) -> Result<u8> {
    let a = load(file)?;
    let answer = decide_emptiness_with(
        &a,
        SolverConfig {
            search_guard: guards.guard_subsets,
        },
    );
    if !answer.witness_valid {
        verdict(answer.nonempty);
        return Err(Incomplete(guards.guard_subsets).into());
    }
    if let Some(out) = witness {
        write(
            out,
            &serialize_jumping_witness(&answer.automaton, &answer.witness),
        )?;
    }
    if certify_witness {
        let claimed = if answer.nonempty {
            Answer::Nonempty
        } else {
            Answer::Empty
        };
        if let Verdict::Fails(f) =
            certify(&a, claimed, &Certificate::Jumping(answer.witness.clone()))?
        {
            bail!(
                "emitted witness failed its checker: {}",
                f.describe(&answer.automaton)
            );
        }
    }
    Ok(verdict(answer.nonempty))
}

fn check_trivial(file: &Path, root: Option<&str>, witness: Option<&Path>) -> Result<u8> {
    let a = load(file)?;
    let a = nonzero_only(&a, "check-trivial")?;
    let root = match root {
        Some(name) => a
            .state_by_name(name)
            .ok_or_else(|| anyhow!("unknown root state `{name}`"))?,
        None => a.initial(),
    };
    match trivial_emptiness(a, root) {
        TrivialOutcome::Nonempty(run) => {
            if let Some(out) = witness {
                write(out, &serialize_positional_run(a, &run))?;
            }
            Ok(verdict(true))
        }
        TrivialOutcome::Empty => {
            if witness.is_some() {
                eprintln!("note: no positional run exists, no witness written");
            }
            Ok(verdict(false))
        }
    }
}

fn translate(file: &Path) -> Result<u8> {
    match load(file)? {
        Automaton::Zero(z) => {
            print!("{}", serialize_nonzero(&translate_zero_to_nonzero(&z)));
            Ok(0)
        }
        Automaton::Nonzero(_) => {
            bail!("`translate` expects a zero automaton, got a nonzero automaton")
        }
    }
}

fn verify(aut: &Path, witness: &Path, full: bool) -> Result<u8> {
    let a = load(aut)?;
    let target = certificate_automaton(&a);
    let cert = parse_certificate(&target, &read(witness)?)
        .with_context(|| format!("`{}`", witness.display()))?;
    if let Certificate::Run(run) = &cert {
        for q in unreachable_choices(&target, run) {
            eprintln!(
                "warning: choice for `{}` is unreachable from the root",
                target.state_name(q)
            );
        }
    }
    let failure = match (&cert, full) {
        (Certificate::Run(run), true) => {
            let base = nonzero_only(&a, "verify --full")?;
            verify_positional_run(base, run, RunSemantics::Full)?
                .failure()
                .map(|f| f.describe(base))
        }
        _ => {
            let answer = match &cert {
                Certificate::Jumping(w) if w.side == Side::Pathfinder => Answer::Empty,
                _ => Answer::Nonempty,
            };
            certify(&a, answer, &cert)?
                .failure()
                .map(|f| f.describe(&target))
        }
    };
    match failure {
        None => {
            println!("VALID");
            Ok(0)
        }
        Some(reason) => {
            println!("INVALID: {reason}");
            Ok(1)
        }
    }
}

fn oracle(file: &Path, trivial: bool, guards: Guards) -> Result<u8> {
    let a = load(file)?;
    if trivial {
        let base = nonzero_only(&a, "oracle --trivial")?;
        // 2^m subsets of m transitions
        let max_transitions =
            usize::BITS as usize - 1 - guards.guard_subsets.max(1).leading_zeros() as usize;
        let found = brute_force_acceptance_witness(base, base.initial(), max_transitions)?;
        return Ok(verdict(found.is_some()));
    }
    let game = certificate_automaton(&a);
    let regions = oracle_explicit_game(&game, guards.guard_states)?;
    Ok(verdict(regions.automaton.contains(game.initial())))
}

fn example(name: &str) -> Result<u8> {
    let a = catalog::by_name(name).ok_or_else(|| {
        anyhow!(
            "unknown example `{name}`; known: {}",
            catalog::NAMES.join(", ")
        )
    })?;
    print!("{}", serialize_nonzero(&a));
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check {
            file,
            witness,
            certify,
            guards,
        } => check(&file, witness.as_deref(), certify, guards),
        Command::CheckTrivial {
            file,
            root,
            witness,
        } => check_trivial(&file, root.as_deref(), witness.as_deref()),
        Command::Translate { file } => translate(&file),
        Command::Verify {
            automaton,
            witness,
            full,
        } => verify(&automaton, &witness, full),
        Command::Oracle {
            file,
            trivial,
            guards,
        } => oracle(&file, trivial, guards),
        Command::Example { name } => example(&name),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.is::<GuardExceeded>() || err.is::<Incomplete>() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
