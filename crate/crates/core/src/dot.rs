//! Graphviz output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::automaton::Nfa;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(nfa: &Nfa, title: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(title));
    let _ = writeln!(out, "  rankdir=LR;");
    for q in 0..nfa.len() {
        let shape = if nfa.is_final(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(out, "  {} [shape={shape}];", quote(nfa.name(q)));
    }
    for (i, &q) in nfa.initials().iter().enumerate() {
        let _ = writeln!(out, "  __start{i} [shape=point, style=invis];");
        let _ = writeln!(out, "  __start{i} -> {};", quote(nfa.name(q)));
    }
    let mut edges: BTreeMap<(usize, usize), Vec<char>> = BTreeMap::new();
    for (from, a, to) in nfa.transitions() {
        edges
            .entry((from, to))
            .or_default()
            .push(nfa.alphabet().symbol(a));
    }
    for ((from, to), symbols) in edges {
        let label: Vec<String> = symbols.iter().map(char::to_string).collect();
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(nfa.name(from)),
            quote(nfa.name(to)),
            quote(&label.join(","))
        );
    }
    out.push_str("}\n");
    out
}
