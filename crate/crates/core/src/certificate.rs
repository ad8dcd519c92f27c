//! Text formats for certificates. State and letter names refer to the
//! automaton the certificate is about.
//!
//! ```text
//! acceptance-witness        positional-run        automaton-witness
//! root f                    root f                region s n f
//! trans f b n s             pick f b n s          move f : n f s f
//! ```
//!
//! `pathfinder-witness` files have the same shape as `automaton-witness`
//! files. Region states without a `move` line have an empty pair set.

use std::fmt::Write as _;

use crate::automaton::{NonzeroAutomaton, StateId, StateSet, Transition};
use crate::error::ParseError;
use crate::format::tokenize;
use crate::jumping::{JumpingWitness, PairSet, Side};
use crate::trivial::{AcceptanceWitness, PositionalRun};
use crate::verify::Certificate;

fn state(a: &NonzeroAutomaton, line: usize, name: &str) -> Result<StateId, ParseError> {
    a.state_by_name(name)
        .ok_or_else(|| ParseError::at(line, format!("unknown state `{name}`")))
}

fn transition(a: &NonzeroAutomaton, line: usize, args: &[&str]) -> Result<Transition, ParseError> {
    let [q, letter, l, r] = args else {
        return Err(ParseError::at(
            line,
            "expected `<state> <letter> <left> <right>`",
        ));
    };
    let letter = a
        .letter_by_name(letter)
        .ok_or_else(|| ParseError::at(line, format!("unknown letter `{letter}`")))?;
    Ok(Transition::new(
        state(a, line, q)?,
        letter,
        state(a, line, l)?,
        state(a, line, r)?,
    ))
}

/// Parses any certificate file, dispatching on its header line.
pub fn parse_certificate(a: &NonzeroAutomaton, text: &str) -> Result<Certificate, ParseError> {
    let mut lines = tokenize(text);
    let Some((line, header)) = lines.next() else {
        return Err(ParseError::whole("empty certificate file"));
    };
    match header.as_slice() {
        ["acceptance-witness"] | ["positional-run"] => {
            let run = header[0] == "positional-run";
            let keyword = if run { "pick" } else { "trans" };
            let mut root = None;
            let mut transitions = Vec::new();
            let mut picked = PositionalRun::new(a.num_states(), a.initial());
            for (line, tokens) in lines {
                match (tokens[0], &tokens[1..]) {
                    ("root", [q]) => {
                        if root.is_some() {
                            return Err(ParseError::at(line, "`root` given twice"));
                        }
                        root = Some(state(a, line, q)?);
                    }
                    (k, args) if k == keyword => {
                        let t = transition(a, line, args)?;
                        if run {
                            if picked.pick(t).is_some() {
                                return Err(ParseError::at(
                                    line,
                                    "second choice for the same state",
                                ));
                            }
                        } else if transitions.contains(&t) {
                            return Err(ParseError::at(line, "duplicate transition"));
                        } else {
                            transitions.push(t);
                        }
                    }
                    _ => {
                        return Err(ParseError::at(
                            line,
                            format!("unexpected line `{}`", tokens.join(" ")),
                        ))
                    }
                }
            }
            let root = root.ok_or_else(|| ParseError::whole("missing `root` line"))?;
            if run {
                let mut r = PositionalRun::new(a.num_states(), root);
                for t in picked.picks() {
                    r.pick(*t);
                }
                Ok(Certificate::Run(r))
            } else {
                Ok(Certificate::Acceptance(AcceptanceWitness::new(
                    root,
                    transitions,
                )))
            }
        }
        ["automaton-witness"] | ["pathfinder-witness"] => {
            let side = if header[0] == "automaton-witness" {
                Side::Automaton
            } else {
                Side::Pathfinder
            };
            let n = a.num_states();
            let mut region = None;
            let mut moves: Vec<(usize, StateId, PairSet)> = Vec::new();
            for (line, tokens) in lines {
                match tokens[0] {
                    "region" => {
                        if region.is_some() {
                            return Err(ParseError::at(line, "`region` given twice"));
                        }
                        let mut set = StateSet::empty(n);
                        for name in &tokens[1..] {
                            set.insert(state(a, line, name)?);
                        }
                        region = Some(set);
                    }
                    "move" => {
                        if tokens.len() < 3 || tokens[2] != ":" {
                            return Err(ParseError::at(
                                line,
                                "expected `move <state> : <state> <max> ...`",
                            ));
                        }
                        let q = state(a, line, tokens[1])?;
                        if moves.iter().any(|(_, p, _)| *p == q) {
                            return Err(ParseError::at(
                                line,
                                "second `move` line for the same state",
                            ));
                        }
                        let rest = &tokens[3..];
                        if rest.len() % 2 != 0 {
                            return Err(ParseError::at(line, "pairs must come as `<state> <max>`"));
                        }
                        let mut pairs = PairSet::empty(n);
                        for chunk in rest.chunks(2) {
                            pairs.insert(state(a, line, chunk[0])?, state(a, line, chunk[1])?);
                        }
                        moves.push((line, q, pairs));
                    }
                    other => {
                        return Err(ParseError::at(
                            line,
                            format!("unexpected keyword `{other}`"),
                        ))
                    }
                }
            }
            let region = region.ok_or_else(|| ParseError::whole("missing `region` line"))?;
            let mut w = JumpingWitness::new(side, region);
            for (line, q, pairs) in moves {
                if !w.region.contains(q) {
                    return Err(ParseError::at(
                        line,
                        format!("`{}` is not in the region", a.state_name(q)),
                    ));
                }
                w.set_moves(q, pairs);
            }
            Ok(Certificate::Jumping(w))
        }
        _ => Err(ParseError::at(
            line,
            format!("unknown certificate header `{}`", header.join(" ")),
        )),
    }
}

pub fn serialize_acceptance_witness(a: &NonzeroAutomaton, w: &AcceptanceWitness) -> String {
    let mut out = String::from("acceptance-witness\n");
    let _ = writeln!(out, "root {}", a.state_name(w.root));
    for t in &w.transitions {
        let _ = writeln!(out, "trans {}", a.display_transition(t));
    }
    out
}

pub fn serialize_positional_run(a: &NonzeroAutomaton, r: &PositionalRun) -> String {
    let mut out = String::from("positional-run\n");
    let _ = writeln!(out, "root {}", a.state_name(r.root()));
    for t in r.picks() {
        let _ = writeln!(out, "pick {}", a.display_transition(t));
    }
    out
}

pub fn serialize_jumping_witness(a: &NonzeroAutomaton, w: &JumpingWitness) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", w.side.header());
    out.push_str("region");
    for q in w.region.iter() {
        out.push(' ');
        out.push_str(a.state_name(q));
    }
    out.push('\n');
    for q in w.region.iter() {
        let _ = write!(out, "move {} :", a.state_name(q));
        for (r, m) in w.moves(q).iter() {
            let _ = write!(out, " {} {}", a.state_name(r), a.state_name(m));
        }
        out.push('\n');
    }
    out
}

pub fn serialize_certificate(a: &NonzeroAutomaton, c: &Certificate) -> String {
    match c {
        Certificate::Acceptance(w) => serialize_acceptance_witness(a, w),
        Certificate::Run(r) => serialize_positional_run(a, r),
        Certificate::Jumping(w) => serialize_jumping_witness(a, w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn jumping_round_trip() {
        let a = catalog::dense();
        let text = "automaton-witness\nregion s n f\nmove s : f s n f s f\nmove n : n n s n\nmove f : n f s f\n";
        let c = parse_certificate(&a, text).unwrap();
        let canonical = serialize_certificate(&a, &c);
        assert_eq!(canonical, "automaton-witness\nregion s n f\nmove s : s f n f f s\nmove n : s n n n\nmove f : s f n f\n");
        assert_eq!(parse_certificate(&a, &canonical).unwrap(), c);
    }

    #[test]
    fn run_round_trip() {
        let a = catalog::dense();
        let text = "positional-run\nroot f\npick s b n s\npick f b n s\npick n b n s\n";
        let c = parse_certificate(&a, text).unwrap();
        let canonical = serialize_certificate(&a, &c);
        assert_eq!(
            canonical,
            "positional-run\nroot f\npick s b n s\npick n b n s\npick f b n s\n"
        );
    }

    #[test]
    fn witness_round_trip() {
        let a = catalog::dense();
        let text = "acceptance-witness\nroot f\ntrans f b n s\ntrans s b n s\ntrans n b n s\n";
        let c = parse_certificate(&a, text).unwrap();
        assert_eq!(
            parse_certificate(&a, &serialize_certificate(&a, &c)).unwrap(),
            c
        );
    }

    #[test]
    fn errors_carry_lines() {
        let a = catalog::dense();
        let err = parse_certificate(&a, "positional-run\nroot f\npick f b n x\n").unwrap_err();
        assert_eq!(err.line, Some(3));
        let err = parse_certificate(&a, "positional-run\npick f b n s\npick f a f f\nroot f\n")
            .unwrap_err();
        assert_eq!(err.line, Some(3));
        let err = parse_certificate(&a, "automaton-witness\nregion f\nmove n : n n\n").unwrap_err();
        assert_eq!(err.line, Some(3));
        assert!(parse_certificate(&a, "nonsense\n").is_err());
        assert!(parse_certificate(&a, "positional-run\n").is_err());
    }
}
