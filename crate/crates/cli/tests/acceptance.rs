//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nonzero_automata::catalog;
use nonzero_automata::certificate::parse_certificate;
use nonzero_automata::generate::{random_nonzero, random_zero, Shape};
use nonzero_automata::jumping::{
    check_automaton_witness, check_pathfinder_witness, oracle_explicit_game, solve_jumping_game,
    WitnessOrigin,
};
use nonzero_automata::translate::translate_zero_to_nonzero;
use nonzero_automata::trivial::{
    brute_force_acceptance_witness, trivial_emptiness, TrivialOutcome,
};
use nonzero_automata::verify::{verify_positional_run, Certificate, RunFailure};
use nonzero_automata::{decide_emptiness, parse_automaton, Automaton, RunSemantics, Verdict};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn dense_check() -> Outcome {
    let a = Automaton::Nonzero(catalog::dense());
    let start = Instant::now();
    let answer = decide_emptiness(&a);
    let elapsed = start.elapsed();
    ensure(answer.nonempty, "dense automaton reported EMPTY")?;
    let verdict =
        check_automaton_witness(&answer.automaton, &answer.witness).map_err(|e| e.to_string())?;
    ensure(
        verdict.holds(),
        format!("emitted witness rejected: {verdict:?}"),
    )?;
    ensure(
        elapsed < Duration::from_secs(1),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!("NONEMPTY, witness checked, {elapsed:?}"))
}

fn everywhere_positive_check() -> Outcome {
    let base = catalog::everywhere_positive();
    let start = Instant::now();
    let answer = decide_emptiness(&Automaton::Nonzero(base.clone()));
    let elapsed = start.elapsed();
    ensure(
        answer.nonempty,
        "everywhere-positive automaton reported EMPTY",
    )?;
    ensure(
        elapsed < Duration::from_secs(5),
        format!("took {elapsed:?}"),
    )?;
    let text = fs::read_to_string(data("ep-published.jw")).map_err(|e| e.to_string())?;
    let Certificate::Jumping(w) = parse_certificate(&base, &text).map_err(|e| e.to_string())?
    else {
        return Err("published witness file is not a jumping witness".into());
    };
    match check_automaton_witness(&base, &w).map_err(|e| e.to_string())? {
        Verdict::Holds => Ok(format!(
            "NONEMPTY in {elapsed:?}, published move sets accepted"
        )),
        Verdict::Fails(f) => Err(format!(
            "NONEMPTY in {elapsed:?}, but the published move sets are rejected: {}",
            f.describe(&base)
        )),
    }
}

fn trivial_oracle() -> Outcome {
    let shape = Shape {
        max_states: 4,
        max_letters: 2,
        max_transitions: 12,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a11);
    let start = Instant::now();
    let mut nonempty = 0;
    let count = 500;
    for i in 0..count {
        let a = random_nonzero(&mut rng, shape);
        for q in a.states() {
            let fast = trivial_emptiness(&a, q).is_nonempty();
            let slow = brute_force_acceptance_witness(&a, q, 12)
                .map_err(|e| e.to_string())?
                .is_some();
            ensure(
                fast == slow,
                format!("instance {i}, root {}: {fast} vs {slow}", a.state_name(q)),
            )?;
            nonempty += usize::from(fast && q == a.initial());
        }
    }
    let elapsed = start.elapsed();
    ensure(
        elapsed < Duration::from_secs(60),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!("{count} automata agree at every root ({nonempty} nonempty at the initial state), {elapsed:?}"))
}

fn jumping_oracle() -> Outcome {
    let shape = Shape {
        max_states: 3,
        max_letters: 2,
        max_transitions: 12,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a3e);
    let count = 200;
    let mut automaton_wins = 0;
    for i in 0..count {
        let a = random_nonzero(&mut rng, shape);
        let sol = solve_jumping_game(&a);
        let regions = oracle_explicit_game(&a, 3).map_err(|e| e.to_string())?;
        ensure(
            sol.automaton_region == regions.automaton
                && sol.pathfinder_region == regions.pathfinder,
            format!("instance {i}: regions differ from the explicit game"),
        )?;
        ensure(
            sol.pathfinder_origin != WitnessOrigin::Incomplete,
            format!("instance {i}: witness extraction incomplete"),
        )?;
        let ok_a =
            check_automaton_witness(&a, &sol.automaton_witness).map_err(|e| e.to_string())?;
        let ok_p =
            check_pathfinder_witness(&a, &sol.pathfinder_witness).map_err(|e| e.to_string())?;
        ensure(
            ok_a.holds(),
            format!("instance {i}: Automaton witness rejected: {ok_a:?}"),
        )?;
        ensure(
            ok_p.holds(),
            format!("instance {i}: Pathfinder witness rejected: {ok_p:?}"),
        )?;
        automaton_wins += usize::from(sol.automaton_region.contains(a.initial()));
    }
    Ok(format!(
        "{count} automata agree, all witnesses checked ({automaton_wins} won by Automaton)"
    ))
}

fn translation_consistency() -> Outcome {
    let shape = Shape {
        max_states: 4,
        max_letters: 2,
        max_transitions: 12,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let count = 200;
    for i in 0..count {
        let z = random_zero(&mut rng, shape, false);
        let b = z.base();
        let translated = translate_zero_to_nonzero(&z);
        let plain = b.with_acceptance(b.forall_set().clone(), b.one_set().clone(), b.empty_set());
        let lhs = decide_emptiness(&Automaton::Nonzero(translated)).nonempty;
        let rhs = decide_emptiness(&Automaton::Nonzero(plain)).nonempty;
        ensure(lhs == rhs, format!("seedless instance {i}: {lhs} vs {rhs}"))?;
    }
    for (i, seeded) in [false, true]
        .into_iter()
        .cycle()
        .take(2 * count)
        .enumerate()
    {
        let z = random_zero(&mut rng, shape, seeded);
        let n = z.base().num_states();
        let bound = n * (1 + z.seed_set().len() + z.base().positive_set().len());
        let size = translate_zero_to_nonzero(&z).num_states();
        ensure(
            size <= bound,
            format!("instance {i}: {size} states exceeds bound {bound}"),
        )?;
    }
    for (file, expected) in [("seeded-positive.aut", true), ("seeded-empty.aut", false)] {
        let text = fs::read_to_string(data(file)).map_err(|e| e.to_string())?;
        let z = parse_automaton(&text).map_err(|e| e.to_string())?;
        ensure(
            matches!(z, Automaton::Zero(_)),
            format!("{file} is not a zero automaton"),
        )?;
        let got = decide_emptiness(&z).nonempty;
        ensure(got == expected, format!("{file}: nonempty = {got}"))?;
    }
    Ok(format!(
        "{count} seedless automata agree, size bound on {} more, 1-state examples as expected",
        2 * count
    ))
}

fn certificate_soundness() -> Outcome {
    let shape = Shape {
        max_states: 4,
        max_letters: 2,
        max_transitions: 12,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0xce27);
    let mut runs = 0;
    for i in 0..300 {
        let a = random_nonzero(&mut rng, shape);
        for q in a.states() {
            if let TrivialOutcome::Nonempty(run) = trivial_emptiness(&a, q) {
                let v = verify_positional_run(&a, &run, RunSemantics::Trivial)
                    .map_err(|e| e.to_string())?;
                ensure(
                    v.holds(),
                    format!("instance {i}, root {}: {v:?}", a.state_name(q)),
                )?;
                runs += 1;
            }
        }
    }
    let dense = catalog::dense();
    let TrivialOutcome::Nonempty(run) = trivial_emptiness(&dense, dense.initial()) else {
        return Err("dense automaton has no positional run".into());
    };
    let trivial =
        verify_positional_run(&dense, &run, RunSemantics::Trivial).map_err(|e| e.to_string())?;
    ensure(
        trivial.holds(),
        "dense run rejected under trivial semantics",
    )?;
    let full =
        verify_positional_run(&dense, &run, RunSemantics::Full).map_err(|e| e.to_string())?;
    ensure(
        matches!(full, Verdict::Fails(RunFailure::Sure(_))),
        format!("dense run under full semantics: {full:?}"),
    )?;
    Ok(format!(
        "{runs} emitted runs verified, dense run fails the sure check"
    ))
}

fn run_cli(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonzero"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("cli binary runs")
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for name in [
        "dense.aut",
        "everywhere-positive.aut",
        "ep-published.jw",
        "ep-corrected.jw",
        "seeded-positive.aut",
        "seeded-empty.aut",
        "empty1.aut",
    ] {
        fs::copy(data(name), dir.path().join(name)).map_err(|e| e.to_string())?;
    }
    let commands: Vec<Vec<&str>> = vec![
        vec!["example", "dense"],
        vec!["example", "everywhere-positive"],
        vec!["check", "dense.aut", "--witness", "w.out", "--certify"],
        vec![
            "check",
            "everywhere-positive.aut",
            "--witness",
            "w.out",
            "--certify",
        ],
        vec!["check", "empty1.aut", "--witness", "w.out", "--certify"],
        vec![
            "check",
            "seeded-positive.aut",
            "--witness",
            "w.out",
            "--certify",
        ],
        vec![
            "check",
            "seeded-empty.aut",
            "--witness",
            "w.out",
            "--certify",
        ],
        vec!["check-trivial", "dense.aut", "--witness", "w.out"],
        vec![
            "check-trivial",
            "everywhere-positive.aut",
            "--witness",
            "w.out",
        ],
        vec!["translate", "seeded-positive.aut"],
        vec!["verify", "everywhere-positive.aut", "ep-published.jw"],
        vec!["verify", "everywhere-positive.aut", "ep-corrected.jw"],
        vec!["oracle", "dense.aut"],
        vec!["oracle", "dense.aut", "--trivial"],
        vec!["oracle", "everywhere-positive.aut"],
    ];
    for args in &commands {
        let out = dir.path().join("w.out");
        let mut seen = Vec::new();
        for _ in 0..2 {
            let _ = fs::remove_file(&out);
            let o = run_cli(args, dir.path());
            let witness = fs::read(&out).ok();
            seen.push((o.status.code(), o.stdout, o.stderr, witness));
        }
        ensure(
            seen[0] == seen[1],
            format!("`{}` differs between runs", args.join(" ")),
        )?;
    }
    Ok(format!(
        "{} commands byte-identical across two runs",
        commands.len()
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 dense automaton", dense_check),
        ("2 everywhere-positive automaton", everywhere_positive_check),
        ("3 trivial emptiness vs brute force", trivial_oracle),
        ("4 jumping game vs explicit game", jumping_oracle),
        ("5 translation consistency", translation_consistency),
        ("6 certificate soundness", certificate_soundness),
        ("7 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
