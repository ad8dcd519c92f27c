//! The line-based automaton file format.
//!
//! ```text
//! kind nonzero            # or `kind zero`
//! states s n f            # ascending; the last state is initial
//! alphabet a b
//! forall n f
//! one n
//! positive                # keyword alone for the empty set
//! trans s a f f
//! ```
//!
//! Zero automata additionally carry a mandatory `seed` line. `#` starts a
//! comment, blank lines are ignored.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::automaton::{
    Automaton, LetterId, NonzeroAutomaton, StateId, StateSet, Transition, ZeroAutomaton,
};
use crate::error::ParseError;

/// Splits `text` into `(line number, tokens)` for every non-blank line.
pub(crate) fn tokenize(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

#[derive(Default)]
struct Sections<'a> {
    kind: Option<(usize, &'a str)>,
    states: Option<(usize, Vec<&'a str>)>,
    alphabet: Option<(usize, Vec<&'a str>)>,
    forall: Option<(usize, Vec<&'a str>)>,
    one: Option<(usize, Vec<&'a str>)>,
    positive: Option<(usize, Vec<&'a str>)>,
    seed: Option<(usize, Vec<&'a str>)>,
    trans: Vec<(usize, Vec<&'a str>)>,
}

fn set_once<'a>(
    slot: &mut Option<(usize, Vec<&'a str>)>,
    line: usize,
    keyword: &str,
    args: Vec<&'a str>,
) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(ParseError::at(line, format!("`{keyword}` given twice")));
    }
    *slot = Some((line, args));
    Ok(())
}

/// Parses an automaton file.
pub fn parse_automaton(text: &str) -> Result<Automaton, ParseError> {
    let mut sec = Sections::default();
    for (line, tokens) in tokenize(text) {
        let keyword = tokens[0];
        let args = tokens[1..].to_vec();
        if sec.kind.is_none() && keyword != "kind" {
            return Err(ParseError::at(line, "file must start with a `kind` line"));
        }
        match keyword {
            "kind" => {
                if sec.kind.is_some() {
                    return Err(ParseError::at(line, "`kind` given twice"));
                }
                match args.as_slice() {
                    [k @ ("nonzero" | "zero")] => sec.kind = Some((line, k)),
                    _ => {
                        return Err(ParseError::at(
                            line,
                            "expected `kind nonzero` or `kind zero`",
                        ))
                    }
                }
            }
            "states" => set_once(&mut sec.states, line, keyword, args)?,
            "alphabet" => set_once(&mut sec.alphabet, line, keyword, args)?,
            "forall" => set_once(&mut sec.forall, line, keyword, args)?,
            "one" => set_once(&mut sec.one, line, keyword, args)?,
            "positive" => set_once(&mut sec.positive, line, keyword, args)?,
            "seed" => set_once(&mut sec.seed, line, keyword, args)?,
            "trans" => sec.trans.push((line, args)),
            other => return Err(ParseError::at(line, format!("unknown keyword `{other}`"))),
        }
    }

    let (kind_line, kind) = sec
        .kind
        .ok_or_else(|| ParseError::whole("empty file: missing `kind` line"))?;
    let (states_line, state_names) = sec
        .states
        .ok_or_else(|| ParseError::whole("missing `states` line"))?;
    let (alphabet_line, letter_names) = sec
        .alphabet
        .ok_or_else(|| ParseError::whole("missing `alphabet` line"))?;
    if state_names.is_empty() {
        return Err(ParseError::at(states_line, "no states declared"));
    }
    if letter_names.is_empty() {
        return Err(ParseError::at(alphabet_line, "alphabet is empty"));
    }

    let mut state_index: HashMap<&str, StateId> = HashMap::new();
    for (i, name) in state_names.iter().enumerate() {
        if state_index.insert(name, StateId::from_index(i)).is_some() {
            return Err(ParseError::at(
                states_line,
                format!("state `{name}` declared twice"),
            ));
        }
    }
    let mut letter_index: HashMap<&str, LetterId> = HashMap::new();
    for (i, name) in letter_names.iter().enumerate() {
        if letter_index.insert(name, LetterId(i as u32)).is_some() {
            return Err(ParseError::at(
                alphabet_line,
                format!("letter `{name}` declared twice"),
            ));
        }
    }
    let n = state_names.len();
    let resolve_set =
        |slot: Option<(usize, Vec<&str>)>, keyword: &str| -> Result<StateSet, ParseError> {
            let (line, names) =
                slot.ok_or_else(|| ParseError::whole(format!("missing `{keyword}` line")))?;
            let mut set = StateSet::empty(n);
            for name in names {
                let q = *state_index
                    .get(name)
                    .ok_or_else(|| ParseError::at(line, format!("unknown state `{name}`")))?;
                if !set.insert(q) {
                    return Err(ParseError::at(line, format!("state `{name}` listed twice")));
                }
            }
            Ok(set)
        };
    let forall = resolve_set(sec.forall, "forall")?;
    let one = resolve_set(sec.one, "one")?;
    let positive = resolve_set(sec.positive, "positive")?;

    let mut transitions = Vec::with_capacity(sec.trans.len());
    let mut seen: HashMap<Transition, usize> = HashMap::new();
    for (line, args) in sec.trans {
        let [q, a, r0, r1] = args.as_slice() else {
            return Err(ParseError::at(line, "expected `trans q a r0 r1`"));
        };
        let state = |name: &str| {
            state_index
                .get(name)
                .copied()
                .ok_or_else(|| ParseError::at(line, format!("unknown state `{name}`")))
        };
        let letter = letter_index
            .get(a)
            .copied()
            .ok_or_else(|| ParseError::at(line, format!("unknown letter `{a}`")))?;
        let t = Transition::new(state(q)?, letter, state(r0)?, state(r1)?);
        if let Some(first) = seen.insert(t, line) {
            return Err(ParseError::at(
                line,
                format!("duplicate transition (first on line {first})"),
            ));
        }
        transitions.push(t);
    }

    let base = NonzeroAutomaton::new(
        state_names.iter().map(|s| s.to_string()).collect(),
        letter_names.iter().map(|s| s.to_string()).collect(),
        transitions,
        forall,
        one,
        positive,
    )
    .map_err(|e| ParseError::whole(e.to_string()))?;

    match kind {
        "zero" => {
            let seed = resolve_set(sec.seed, "seed")?;
            let z = ZeroAutomaton::new(base, seed).map_err(|e| ParseError::whole(e.to_string()))?;
            Ok(Automaton::Zero(z))
        }
        _ => {
            if let Some((line, _)) = sec.seed {
                return Err(ParseError::at(
                    line,
                    "`seed` is only allowed with `kind zero`",
                ));
            }
            let _ = kind_line;
            Ok(Automaton::Nonzero(base))
        }
    }
}

fn write_set(out: &mut String, keyword: &str, a: &NonzeroAutomaton, set: &StateSet) {
    out.push_str(keyword);
    for q in set.iter() {
        out.push(' ');
        out.push_str(a.state_name(q));
    }
    out.push('\n');
}

/// Canonical text for an automaton.
pub fn serialize_automaton(automaton: &Automaton) -> String {
    let a = automaton.base();
    let mut out = String::new();
    let _ = writeln!(out, "kind {}", automaton.kind_name());
    let _ = writeln!(out, "states {}", a.state_names().join(" "));
    let _ = writeln!(out, "alphabet {}", a.letter_names().join(" "));
    write_set(&mut out, "forall", a, a.forall_set());
    write_set(&mut out, "one", a, a.one_set());
    write_set(&mut out, "positive", a, a.positive_set());
    if let Automaton::Zero(z) = automaton {
        write_set(&mut out, "seed", a, z.seed_set());
    }
    for t in a.transitions() {
        let _ = writeln!(out, "trans {}", a.display_transition(t));
    }
    out
}

/// Shorthand for serializing a nonzero automaton.
pub fn serialize_nonzero(a: &NonzeroAutomaton) -> String {
    serialize_automaton(&Automaton::Nonzero(a.clone()))
}
