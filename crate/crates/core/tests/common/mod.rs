#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use atomlib::{
    parse_nfa, Alphabet, AtomLabel, AtomicCandidate, Cover, Grid, Language, Nfa,
    QuotientAtomMatrix, Regex,
};
use rand::rngs::StdRng;
use rand::Rng;

pub fn ab() -> Alphabet {
    Alphabet::parse("a b").unwrap()
}

// Σ*abΣ*

pub const N_A: &str = "\
alphabet: a b
states: 0 1 2
initial: 0
final: 2
0 a -> 0 1
0 b -> 0
1 b -> 2
2 a -> 2
2 b -> 2
";

pub const N_B: &str = "\
alphabet: a b
states: 0 1 2
initial: 0
final: 2
0 a -> 1
0 b -> 0
1 a -> 1
1 b -> 1 2
2 a -> 1 2
2 b -> 0
";

pub const N_C: &str = "\
alphabet: a b
states: 0 1 2
initial: 0
final: 2
0 a -> 1
0 b -> 0
1 a -> 1
1 b -> 1 2
2 a -> 2
";

/// Quotient DFA of Σ*abΣ*.
pub const D_AB: &str = "\
alphabet: a b
states: 0 1 2
initial: 0
final: 2
0 a -> 1
0 b -> 0
1 a -> 1
1 b -> 2
2 a -> 2
2 b -> 2
";

/// Átomaton of Σ*abΣ* with atoms named by their quotient sets.
pub const ATOMATON_AB: &str = "\
alphabet: a b
states: 012 12 2
initial: 012
final: 2
012 a -> 012 12
012 b -> 012
12 b -> 12 2
2 a -> 2
";

pub const N_282: &str = "\
alphabet: a b
states: 0 1 2
initial: 0
final: 2
0 a -> 1
0 b -> 0
1 a -> 1
1 b -> 0 1 2
2 a -> 0 2
";

// Σ*(b ∪ aa) ∪ a

pub const D_KW: &str = "\
alphabet: a b
states: 0 1 2
initial: 0
final: 1 2
0 a -> 1
0 b -> 2
1 a -> 1
1 b -> 2
2 a -> 0
2 b -> 2
";

/// Trim átomaton of the `D_KW` language.
pub const ATOMATON_KW: &str = "\
alphabet: a b
states: C B A
initial: B A
final: C
B a -> C
A a -> A B
A b -> A C
";

// Nine quotients; minimal NFA has four states, minimal atomic NFA five

pub const D_MP: &str = "\
alphabet: a b
states: 0 1 2 3 4 5 6 7 8
initial: 0
final: 2 5 7
0 a -> 1
0 b -> 2
1 a -> 3
1 b -> 4
2 a -> 5
2 b -> 4
3 a -> 3
3 b -> 1
4 a -> 6
4 b -> 2
5 a -> 7
5 b -> 2
6 a -> 3
6 b -> 8
7 a -> 7
7 b -> 7
8 a -> 6
8 b -> 7
";

pub const ATOMATON_MP: &str = "\
alphabet: a b
states: A B C D E F
initial: B D F
final: A
A a -> A B
B a -> C
B b -> A
C b -> B D
D b -> C
E a -> D
F a -> E F
F b -> E F
";

pub const N_MIN: &str = "\
alphabet: a b
states: 0 1 2 3
initial: 0
final: 2
0 a -> 1
0 b -> 1 2
1 a -> 3
1 b -> 0 3
2 a -> 0 2 3
3 a -> 3
3 b -> 1
";

pub fn nfa(text: &str) -> Nfa {
    parse_nfa(text).unwrap()
}

pub fn lang(text: &str) -> Language {
    Language::from_nfa(&nfa(text)).unwrap()
}

/// Atom descriptors (quotient index sets) under the letters used in fixtures.
pub fn letters_kw() -> Vec<(char, BTreeSet<usize>)> {
    vec![
        ('A', [0, 1, 2].into()),
        ('B', [0, 1].into()),
        ('C', [1, 2].into()),
    ]
}

pub fn letters_ab() -> Vec<(char, BTreeSet<usize>)> {
    vec![
        ('A', [0, 1, 2].into()),
        ('B', [1, 2].into()),
        ('C', [2].into()),
    ]
}

pub fn letters_mp() -> Vec<(char, BTreeSet<usize>)> {
    vec![
        ('A', [2, 5, 7].into()),
        ('B', [0, 4, 5, 7, 8].into()),
        ('C', [1, 2, 6, 7, 8].into()),
        ('D', [0, 3, 4, 5, 6, 7, 8].into()),
        ('E', (1..=8).collect()),
        ('F', (0..=8).collect()),
    ]
}

/// Translates fixture atom letters into library atom indices via descriptors.
pub struct Letters {
    table: Vec<(char, usize)>,
    final_atom: usize,
}

impl Letters {
    pub fn new(lang: &Language, letters: Vec<(char, BTreeSet<usize>)>) -> Self {
        let index = lang.descriptor_index();
        let table = letters
            .into_iter()
            .map(|(c, d)| {
                (
                    c,
                    *index
                        .get(&d)
                        .unwrap_or_else(|| panic!("no atom {c} = {d:?}")),
                )
            })
            .collect();
        Letters {
            table,
            final_atom: lang.atoms().final_atom(),
        }
    }

    pub fn atom(&self, c: char) -> usize {
        self.table.iter().find(|(l, _)| *l == c).unwrap().1
    }

    pub fn set(&self, word: &str) -> BTreeSet<usize> {
        word.chars().map(|c| self.atom(c)).collect()
    }

    pub fn label(&self, word: &str) -> AtomLabel {
        word.chars().map(|c| self.atom(c)).collect()
    }

    /// Parses a candidate from rows like `"AB: a -> AB C; b -> A"`. Final
    /// states are the ones containing the final atom.
    pub fn candidate(&self, states: &[&str], initial: &[&str], rows: &[&str]) -> AtomicCandidate {
        let labels: Vec<AtomLabel> = states.iter().map(|s| self.label(s)).collect();
        let pos = |s: &str| states.iter().position(|t| *t == s).unwrap();
        let finals = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.contains(self.final_atom))
            .map(|(i, _)| i)
            .collect();
        let mut transitions = vec![vec![BTreeSet::new(); 2]; states.len()];
        for row in rows {
            let (state, rest) = row.split_once(':').unwrap();
            let q = pos(state.trim());
            for part in rest.split(';') {
                let (sym, targets) = part.split_once("->").unwrap();
                let a = match sym.trim() {
                    "a" => 0,
                    "b" => 1,
                    s => panic!("bad symbol {s}"),
                };
                for t in targets.split_whitespace() {
                    transitions[q][a].insert(pos(t));
                }
            }
        }
        AtomicCandidate::new(
            labels,
            initial.iter().map(|s| pos(s)).collect(),
            finals,
            transitions,
        )
        .unwrap()
    }
}

/// Every word up to `max_len` over `alphabet`.
pub fn words(alphabet: &Alphabet, max_len: usize) -> Vec<Vec<usize>> {
    alphabet.words_up_to(max_len).collect()
}

/// Bounded-word language agreement.
pub fn agree(x: &Nfa, y: &Nfa, max_len: usize) -> bool {
    words(x.alphabet(), max_len)
        .iter()
        .all(|w| x.accepts(w) == y.accepts(w))
}

/// Direct recursive membership test for a regex.
pub fn regex_matches(re: &Regex, word: &[usize]) -> bool {
    match re {
        Regex::Empty => false,
        Regex::Epsilon => word.is_empty(),
        Regex::Symbol(a) => word == [*a],
        Regex::Union(x, y) => regex_matches(x, word) || regex_matches(y, word),
        Regex::Concat(x, y) => {
            (0..=word.len()).any(|i| regex_matches(x, &word[..i]) && regex_matches(y, &word[i..]))
        }
        Regex::Star(x) => {
            word.is_empty()
                || (1..=word.len())
                    .any(|i| regex_matches(x, &word[..i]) && regex_matches(re, &word[i..]))
        }
    }
}

/// A random regex over `symbols` letters with AST depth at most `depth`.
pub fn random_regex(rng: &mut StdRng, symbols: usize, depth: usize) -> Regex {
    let leaf = depth <= 1 || rng.random_bool(0.25);
    if leaf {
        return match rng.random_range(0..10) {
            0 => Regex::Epsilon,
            _ => Regex::Symbol(rng.random_range(0..symbols)),
        };
    }
    match rng.random_range(0..3) {
        0 => Regex::union(
            random_regex(rng, symbols, depth - 1),
            random_regex(rng, symbols, depth - 1),
        ),
        1 => Regex::concat(
            random_regex(rng, symbols, depth - 1),
            random_regex(rng, symbols, depth - 1),
        ),
        _ => Regex::star(random_regex(rng, symbols, depth - 1)),
    }
}

/// Random NFA with `n` states; each transition present with probability `density`.
pub fn random_nfa(rng: &mut StdRng, alphabet: &Alphabet, n: usize, density: f64) -> Nfa {
    let mut nfa = Nfa::new(alphabet.clone(), n);
    for q in 0..n {
        for a in 0..alphabet.len() {
            for t in 0..n {
                if rng.random_bool(density) {
                    nfa.add_transition(q, a, t);
                }
            }
        }
        if rng.random_bool(0.3) {
            nfa.set_final(q, true);
        }
    }
    nfa.set_initial(0, true);
    if rng.random_bool(0.3) && n > 1 {
        nfa.set_initial(n - 1, true);
    }
    nfa
}

/// Label-level view of a candidate, independent of state order.
pub type Shape = (
    BTreeSet<AtomLabel>,
    BTreeSet<AtomLabel>,
    BTreeMap<(AtomLabel, usize), BTreeSet<AtomLabel>>,
);

pub fn shape(c: &AtomicCandidate) -> Shape {
    shape_over(c, 2)
}

pub fn shape_over(c: &AtomicCandidate, symbols: usize) -> Shape {
    let labels = |set: &BTreeSet<usize>| set.iter().map(|&q| c.states()[q]).collect();
    let mut edges = BTreeMap::new();
    for (q, &l) in c.states().iter().enumerate() {
        for a in 0..symbols {
            edges.insert((l, a), labels(c.successors(q, a)));
        }
    }
    (labels(c.initials()), labels(c.finals()), edges)
}

/// The five-state atomic NFA for the nine-quotient language.
pub fn mp_five_state(l: &Letters) -> AtomicCandidate {
    l.candidate(
        &["BDF", "CEF", "AEF", "DEF", "EF"],
        &["BDF"],
        &[
            "BDF: a -> CEF; b -> CEF AEF",
            "CEF: a -> DEF; b -> BDF DEF",
            "AEF: a -> BDF AEF DEF; b -> EF",
            "DEF: a -> DEF; b -> CEF",
            "EF: a -> DEF; b -> EF",
        ],
    )
}

/// The four-grid cover of the nine-quotient language, in grid order.
pub fn mp_cover(l: &Language, letters: &Letters) -> Cover {
    let m = QuotientAtomMatrix::new(l).unwrap();
    let grids = vec![
        Grid::new([0, 4, 5, 7, 8], letters.label("BDF")),
        Grid::new([1, 2, 6, 7, 8], letters.label("CEF")),
        Grid::new([2, 5, 7], letters.label("AEF")),
        Grid::new([3, 4, 5, 6, 7, 8], letters.label("DEF")),
    ];
    Cover::new(&m, grids).unwrap()
}

/// Every maximal all-ones rectangle, by brute force over row and column sets.
pub fn brute_force_maximal(rows: &[AtomLabel], columns: usize) -> BTreeSet<(u64, u64)> {
    let n = rows.len();
    let mut grids = Vec::new();
    for p in 1u64..1 << n {
        for r in 1u64..1 << columns {
            if (0..n).all(|i| p >> i & 1 == 0 || rows[i].0 & r == r) {
                grids.push((p, r));
            }
        }
    }
    let contained = |(p, r): (u64, u64), (q, s): (u64, u64)| p & !q == 0 && r & !s == 0;
    grids
        .iter()
        .copied()
        .filter(|&g| !grids.iter().any(|&h| h != g && contained(g, h)))
        .collect()
}

pub fn as_pairs(grids: &[Grid]) -> BTreeSet<(u64, u64)> {
    grids
        .iter()
        .map(|g| {
            (
                g.quotients().iter().fold(0, |acc, i| acc | 1 << i),
                g.atoms().0,
            )
        })
        .collect()
}
