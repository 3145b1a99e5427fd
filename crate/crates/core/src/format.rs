//! Plain-text automaton files.
//!
//! ```text
//! # comment
//! alphabet: a b
//! states: 0 1 2
//! initial: 0
//! final: 2
//! 0 a -> 0 1
//! 1 b -> 2
//! ```
//!
//! Header lines may appear in any order but must precede the transitions.
//! A missing transition line means the target set is empty.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::automaton::{Alphabet, Nfa, StateId};
use crate::error::{Error, Result};

pub fn parse_nfa(text: &str) -> Result<Nfa> {
    let mut alphabet: Option<Alphabet> = None;
    let mut states: Option<Vec<String>> = None;
    let mut initial: Option<Vec<String>> = None;
    let mut finals: Option<Vec<String>> = None;
    let mut nfa: Option<(Nfa, HashMap<String, StateId>)> = None;

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let err = |message: String| Error::Format {
            line: line_no,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }

        if let Some((key, value)) = line.split_once(':') {
            if nfa.is_some() {
                return Err(err(format!("header {:?} after transitions", key.trim())));
            }
            let words: Vec<String> = value.split_whitespace().map(String::from).collect();
            let slot = match key.trim() {
                "alphabet" => {
                    let symbols = value.split_whitespace().map(|w| {
                        let mut chars = w.chars();
                        match (chars.next(), chars.next()) {
                            (Some(c), None) => Ok(c),
                            _ => Err(err(format!("symbol {w:?} is not a single character"))),
                        }
                    });
                    let symbols = symbols.collect::<Result<Vec<char>>>()?;
                    let parsed = Alphabet::new(symbols).map_err(|e| err(e.to_string()))?;
                    if alphabet.replace(parsed).is_some() {
                        return Err(err("duplicate alphabet line".into()));
                    }
                    continue;
                }
                "states" => &mut states,
                "initial" => &mut initial,
                "final" => &mut finals,
                other => return Err(err(format!("unknown header {other:?}"))),
            };
            if slot.replace(words).is_some() {
                return Err(err(format!("duplicate {:?} line", key.trim())));
            }
            continue;
        }

        if nfa.is_none() {
            nfa = Some(start(
                alphabet.take(),
                states.take(),
                &initial,
                &finals,
                line_no,
            )?);
        }
        let (automaton, ids) = nfa.as_mut().expect("initialized above");
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| err(format!("expected `state symbol -> targets`, got {line:?}")))?;
        let lhs: Vec<&str> = lhs.split_whitespace().collect();
        let [from, symbol] = lhs[..] else {
            return Err(err("expected a state and a symbol before `->`".into()));
        };
        let lookup = |name: &str| {
            ids.get(name)
                .copied()
                .ok_or_else(|| err(format!("unknown state {name:?}")))
        };
        let from = lookup(from)?;
        let mut chars = symbol.chars();
        let symbol = match (chars.next(), chars.next()) {
            (Some(c), None) => automaton.alphabet().index_of(c),
            _ => None,
        }
        .ok_or_else(|| err(format!("symbol {symbol:?} is not in the alphabet")))?;
        let targets = rhs
            .split_whitespace()
            .map(lookup)
            .collect::<Result<Vec<_>>>()?;
        for to in targets {
            automaton.add_transition(from, symbol, to);
        }
    }

    match nfa {
        Some((automaton, _)) => Ok(automaton),
        None => {
            let line = text.lines().count().max(1);
            Ok(start(alphabet, states, &initial, &finals, line)?.0)
        }
    }
}

fn start(
    alphabet: Option<Alphabet>,
    states: Option<Vec<String>>,
    initial: &Option<Vec<String>>,
    finals: &Option<Vec<String>>,
    line: usize,
) -> Result<(Nfa, HashMap<String, StateId>)> {
    let err = |message: &str| Error::Format {
        line,
        message: message.into(),
    };
    let alphabet = alphabet.ok_or_else(|| err("missing alphabet line"))?;
    let names = states.ok_or_else(|| err("missing states line"))?;
    let mut ids = HashMap::new();
    for (i, name) in names.iter().enumerate() {
        if ids.insert(name.clone(), i).is_some() {
            return Err(err(&format!("duplicate state {name:?}")));
        }
    }
    let mut nfa = Nfa::with_names(alphabet, names);
    for (list, is_initial) in [(initial, true), (finals, false)] {
        for name in list.iter().flatten() {
            let q = *ids
                .get(name)
                .ok_or_else(|| err(&format!("unknown state {name:?}")))?;
            if is_initial {
                nfa.set_initial(q, true);
            } else {
                nfa.set_final(q, true);
            }
        }
    }
    Ok((nfa, ids))
}

/// Writes `nfa` in the file format. Only non-empty transitions are listed.
pub fn write_nfa(nfa: &Nfa) -> String {
    let mut out = String::new();
    let names = |set: &mut dyn Iterator<Item = StateId>| {
        set.map(|q| nfa.name(q).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(out, "alphabet: {}", nfa.alphabet());
    let _ = writeln!(out, "states: {}", names(&mut (0..nfa.len())));
    let _ = writeln!(
        out,
        "initial: {}",
        names(&mut nfa.initials().iter().copied())
    );
    let _ = writeln!(out, "final: {}", names(&mut nfa.finals().iter().copied()));
    for q in 0..nfa.len() {
        for a in 0..nfa.alphabet().len() {
            let targets = nfa.successors(q, a);
            if !targets.is_empty() {
                let _ = writeln!(
                    out,
                    "{} {} -> {}",
                    nfa.name(q),
                    nfa.alphabet().symbol(a),
                    names(&mut targets.iter().copied())
                );
            }
        }
    }
    out
}
