//! Finite automata over a small explicit alphabet.
//!
//! States are dense indices `0..len()`; display names live in a side table and
//! never influence any operation. Symbols are likewise addressed by their index
//! in the [`Alphabet`].

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub type StateId = usize;
pub type StateSet = BTreeSet<StateId>;

/// An ordered set of distinct single-character symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("no symbols".into()));
        }
        for (i, c) in symbols.iter().enumerate() {
            if c.is_whitespace() {
                return Err(Error::InvalidAlphabet("whitespace is not a symbol".into()));
            }
            if symbols[..i].contains(c) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Parses a whitespace-separated list of single characters, e.g. `"a b"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut symbols = Vec::new();
        for token in spec.split_whitespace() {
            let mut chars = token.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => symbols.push(c),
                _ => {
                    return Err(Error::InvalidAlphabet(format!(
                        "{token:?} is not a single character"
                    )))
                }
            }
        }
        Alphabet::new(symbols)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> char {
        self.symbols[index]
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == c)
    }

    /// Translates a word into symbol indices.
    pub fn encode(&self, word: &str) -> Result<Vec<usize>> {
        word.chars()
            .enumerate()
            .map(|(position, symbol)| {
                self.index_of(symbol)
                    .ok_or(Error::UnknownSymbol { symbol, position })
            })
            .collect()
    }

    pub fn decode(&self, word: &[usize]) -> String {
        word.iter().map(|&a| self.symbols[a]).collect()
    }

    /// All words of length at most `max_len`, shortest first, in lexicographic
    /// order within each length.
    pub fn words_up_to(&self, max_len: usize) -> impl Iterator<Item = Vec<usize>> {
        let k = self.len();
        (0..=max_len).flat_map(move |len| {
            let total = k.pow(len as u32);
            (0..total).map(move |mut code| {
                let mut word = vec![0; len];
                for slot in word.iter_mut().rev() {
                    *slot = code % k;
                    code /= k;
                }
                word
            })
        })
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A nondeterministic automaton, possibly with several initial states.
///
/// Transitions are total in the sense that every `(state, symbol)` pair has a
/// (possibly empty) target set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    names: Vec<String>,
    delta: Vec<Vec<StateSet>>,
    initials: StateSet,
    finals: StateSet,
}

impl Nfa {
    /// An automaton with `states` states named `0..states`, no transitions,
    /// no initial and no final states.
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        let names = (0..states).map(|q| q.to_string()).collect();
        Self::with_names(alphabet, names)
    }

    pub fn with_names(alphabet: Alphabet, names: Vec<String>) -> Self {
        let delta = vec![vec![StateSet::new(); alphabet.len()]; names.len()];
        Nfa {
            alphabet,
            names,
            delta,
            initials: StateSet::new(),
            finals: StateSet::new(),
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> StateId {
        self.names.push(name.into());
        self.delta.push(vec![StateSet::new(); self.alphabet.len()]);
        self.names.len() - 1
    }

    pub fn add_transition(&mut self, from: StateId, symbol: usize, to: StateId) {
        assert!(to < self.len(), "target state {to} out of range");
        self.delta[from][symbol].insert(to);
    }

    pub fn set_initial(&mut self, q: StateId, initial: bool) {
        assert!(q < self.len());
        if initial {
            self.initials.insert(q);
        } else {
            self.initials.remove(&q);
        }
    }

    pub fn set_final(&mut self, q: StateId, accepting: bool) {
        assert!(q < self.len());
        if accepting {
            self.finals.insert(q);
        } else {
            self.finals.remove(&q);
        }
    }

    pub fn rename_state(&mut self, q: StateId, name: impl Into<String>) {
        self.names[q] = name.into();
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn successors(&self, q: StateId, symbol: usize) -> &StateSet {
        &self.delta[q][symbol]
    }

    pub fn initials(&self) -> &StateSet {
        &self.initials
    }

    pub fn finals(&self) -> &StateSet {
        &self.finals
    }

    pub fn is_initial(&self, q: StateId) -> bool {
        self.initials.contains(&q)
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals.contains(&q)
    }

    /// Iterates over all transitions as `(from, symbol, to)`.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, usize, StateId)> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(a, targets)| targets.iter().map(move |&t| (q, a, t)))
        })
    }

    pub fn transition_count(&self) -> usize {
        self.delta.iter().flatten().map(|t| t.len()).sum()
    }

    pub fn step(&self, from: &StateSet, symbol: usize) -> StateSet {
        let mut next = StateSet::new();
        for &q in from {
            next.extend(&self.delta[q][symbol]);
        }
        next
    }

    pub fn run(&self, from: &StateSet, word: &[usize]) -> StateSet {
        word.iter()
            .fold(from.clone(), |current, &a| self.step(&current, a))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        !self.run(&self.initials, word).is_disjoint(&self.finals)
    }

    pub fn accepts_str(&self, word: &str) -> Result<bool> {
        Ok(self.accepts(&self.alphabet.encode(word)?))
    }

    /// Same automaton with a different set of initial states; its language is
    /// the right language of `initials`.
    pub fn with_initials(&self, initials: StateSet) -> Nfa {
        Nfa {
            initials,
            ..self.clone()
        }
    }

    /// Swaps initial and final states and reverses every transition.
    pub fn reverse(&self) -> Nfa {
        let mut reversed = Nfa::with_names(self.alphabet.clone(), self.names.clone());
        for (q, a, t) in self.transitions() {
            reversed.delta[t][a].insert(q);
        }
        reversed.initials = self.finals.clone();
        reversed.finals = self.initials.clone();
        reversed
    }

    /// Subset construction restricted to subsets reachable from the initial
    /// subset. States are numbered in breadth-first discovery order, exploring
    /// symbols in alphabet order; the empty subset is kept when reached.
    pub fn determinize(&self) -> SubsetDfa {
        let mut labels: Vec<StateSet> = vec![self.initials.clone()];
        let mut index: HashMap<StateSet, StateId> = HashMap::new();
        index.insert(self.initials.clone(), 0);
        let mut delta: Vec<Vec<StateId>> = Vec::new();
        let mut queue = VecDeque::from([0]);
        while let Some(current) = queue.pop_front() {
            let mut row = Vec::with_capacity(self.alphabet.len());
            for a in 0..self.alphabet.len() {
                let next = self.step(&labels[current], a);
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    labels.push(next);
                    queue.push_back(labels.len() - 1);
                    labels.len() - 1
                });
                row.push(id);
            }
            // ids are dequeued in increasing order
            delta.push(row);
        }
        let finals = labels
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_disjoint(&self.finals))
            .map(|(i, _)| i)
            .collect();
        let names = labels.iter().map(|s| self.subset_name(s)).collect();
        SubsetDfa {
            dfa: Dfa {
                alphabet: self.alphabet.clone(),
                names,
                delta,
                initial: 0,
                finals,
            },
            labels,
        }
    }

    fn subset_name(&self, subset: &StateSet) -> String {
        let inner: Vec<&str> = subset.iter().map(|&q| self.names[q].as_str()).collect();
        format!("{{{}}}", inner.join(","))
    }

    /// States reachable from an initial state.
    pub fn reachable(&self) -> StateSet {
        let mut seen = self.initials.clone();
        let mut stack: Vec<StateId> = seen.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for targets in &self.delta[q] {
                for &t in targets {
                    if seen.insert(t) {
                        stack.push(t);
                    }
                }
            }
        }
        seen
    }

    /// States from which a final state is reachable.
    pub fn coreachable(&self) -> StateSet {
        self.reverse().reachable()
    }

    pub fn is_trim(&self) -> bool {
        let reach = self.reachable();
        let coreach = self.coreachable();
        reach.len() == self.len() && coreach.len() == self.len()
    }

    /// Removes unreachable and empty states.
    pub fn trim(&self) -> Nfa {
        self.trim_with_map().0
    }

    /// Like [`Nfa::trim`], also returning for each surviving state its index in
    /// `self`.
    pub fn trim_with_map(&self) -> (Nfa, Vec<StateId>) {
        let reach = self.reachable();
        let keep: Vec<StateId> = self.coreachable().intersection(&reach).copied().collect();
        (self.restrict(&keep), keep)
    }

    /// The sub-automaton induced by `keep`, renumbered in the order given.
    pub fn restrict(&self, keep: &[StateId]) -> Nfa {
        let mut position = vec![None; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            position[old] = Some(new);
        }
        let names = keep.iter().map(|&q| self.names[q].clone()).collect();
        let mut out = Nfa::with_names(self.alphabet.clone(), names);
        for (new, &old) in keep.iter().enumerate() {
            for a in 0..self.alphabet.len() {
                out.delta[new][a] = self.delta[old][a]
                    .iter()
                    .filter_map(|&t| position[t])
                    .collect();
            }
        }
        let map_set = |set: &StateSet| set.iter().filter_map(|&q| position[q]).collect();
        out.initials = map_set(&self.initials);
        out.finals = map_set(&self.finals);
        out
    }

    pub fn accepts_nothing(&self) -> bool {
        self.reachable().is_disjoint(&self.finals)
    }

    /// Minimal complete DFA of the accepted language.
    pub fn minimal_dfa(&self) -> Dfa {
        self.determinize().dfa.minimize()
    }

    /// Language equality, decided exactly by comparing minimal DFAs.
    pub fn equivalent(&self, other: &Nfa) -> Result<bool> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self
            .minimal_dfa()
            .is_isomorphic(&other.minimal_dfa())
            .is_some())
    }

    /// Whether the two languages share a word (product reachability).
    pub fn intersects(&self, other: &Nfa) -> Result<bool> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut seen = std::collections::HashSet::new();
        let mut stack = Vec::new();
        for &p in &self.initials {
            for &q in &other.initials {
                if seen.insert((p, q)) {
                    stack.push((p, q));
                }
            }
        }
        while let Some((p, q)) = stack.pop() {
            if self.is_final(p) && other.is_final(q) {
                return Ok(true);
            }
            for a in 0..self.alphabet.len() {
                for &p2 in &self.delta[p][a] {
                    for &q2 in &other.delta[q][a] {
                        if seen.insert((p2, q2)) {
                            stack.push((p2, q2));
                        }
                    }
                }
            }
        }
        Ok(false)
    }

    /// The minimal DFA of the right language of each state.
    pub fn right_language_dfas(&self) -> Vec<Dfa> {
        (0..self.len())
            .map(|q| self.with_initials(StateSet::from([q])).minimal_dfa())
            .collect()
    }

    /// The first pair of distinct states with equal right languages, if any.
    pub fn equivalent_states(&self) -> Option<(StateId, StateId)> {
        let dfas = self.right_language_dfas();
        for p in 0..self.len() {
            for q in p + 1..self.len() {
                if dfas[p].is_isomorphic(&dfas[q]).is_some() {
                    return Some((p, q));
                }
            }
        }
        None
    }

    pub fn is_reduced(&self) -> bool {
        self.equivalent_states().is_none()
    }

    /// Exchanges the roles of two symbols in every transition.
    pub fn swap_symbols(&self, a: usize, b: usize) -> Nfa {
        let mut out = self.clone();
        for row in &mut out.delta {
            row.swap(a, b);
        }
        out
    }

    /// Whether the automaton is a complete DFA with one initial state.
    pub fn as_dfa(&self) -> Option<Dfa> {
        if self.initials.len() != 1 {
            return None;
        }
        let mut delta = Vec::with_capacity(self.len());
        for row in &self.delta {
            let mut out = Vec::with_capacity(row.len());
            for targets in row {
                if targets.len() != 1 {
                    return None;
                }
                out.push(*targets.iter().next().unwrap());
            }
            delta.push(out);
        }
        Some(Dfa {
            alphabet: self.alphabet.clone(),
            names: self.names.clone(),
            delta,
            initial: *self.initials.iter().next().unwrap(),
            finals: self.finals.clone(),
        })
    }
}

/// A complete deterministic automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    names: Vec<String>,
    delta: Vec<Vec<StateId>>,
    initial: StateId,
    finals: StateSet,
}

/// Result of the subset construction: the DFA plus, for every DFA state, the
/// subset of source states it stands for.
#[derive(Clone, Debug)]
pub struct SubsetDfa {
    pub dfa: Dfa,
    pub labels: Vec<StateSet>,
}

impl Dfa {
    /// Builds a DFA from a full transition table `delta[state][symbol]`.
    pub fn from_table(
        alphabet: Alphabet,
        delta: Vec<Vec<StateId>>,
        initial: StateId,
        finals: StateSet,
    ) -> Result<Self> {
        let n = delta.len();
        let bad = |msg: String| Err(Error::InternalInvariantViolation(msg));
        if initial >= n {
            return bad(format!("initial state {initial} out of range"));
        }
        if finals.iter().any(|&q| q >= n) {
            return bad("final state out of range".into());
        }
        for row in &delta {
            if row.len() != alphabet.len() || row.iter().any(|&t| t >= n) {
                return bad("transition table is not total over the alphabet".into());
            }
        }
        Ok(Dfa {
            alphabet,
            names: (0..n).map(|q| q.to_string()).collect(),
            delta,
            initial,
            finals,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn finals(&self) -> &StateSet {
        &self.finals
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals.contains(&q)
    }

    pub fn next(&self, q: StateId, symbol: usize) -> StateId {
        self.delta[q][symbol]
    }

    pub fn run(&self, from: StateId, word: &[usize]) -> StateId {
        word.iter().fold(from, |q, &a| self.delta[q][a])
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.is_final(self.run(self.initial, word))
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::with_names(self.alphabet.clone(), self.names.clone());
        for (q, row) in self.delta.iter().enumerate() {
            for (a, &t) in row.iter().enumerate() {
                nfa.add_transition(q, a, t);
            }
        }
        nfa.initials.insert(self.initial);
        nfa.finals = self.finals.clone();
        nfa
    }

    pub fn reverse(&self) -> Nfa {
        self.to_nfa().reverse()
    }

    /// Minimal complete DFA by double reversal: determinizing the reverse of
    /// an accessible DFA yields the minimal DFA of the reversed language.
    /// States are renamed `0..n` in breadth-first order from the initial state.
    pub fn minimize(&self) -> Dfa {
        let reversed = self.reverse().determinize().dfa;
        let mut minimal = reversed.reverse().determinize().dfa;
        minimal.names = (0..minimal.len()).map(|q| q.to_string()).collect();
        minimal
    }

    /// A bijection `self -> other` preserving the initial state, final states
    /// and transitions, found by pairing states breadth-first from the initial
    /// states. Both automata are assumed accessible.
    pub fn is_isomorphic(&self, other: &Dfa) -> Option<Vec<StateId>> {
        if self.len() != other.len() || self.alphabet != other.alphabet {
            return None;
        }
        let mut forward = vec![None; self.len()];
        let mut backward = vec![None; other.len()];
        forward[self.initial] = Some(other.initial);
        backward[other.initial] = Some(self.initial);
        let mut queue = VecDeque::from([(self.initial, other.initial)]);
        while let Some((p, q)) = queue.pop_front() {
            if self.is_final(p) != other.is_final(q) {
                return None;
            }
            for a in 0..self.alphabet.len() {
                let (p2, q2) = (self.delta[p][a], other.delta[q][a]);
                match (forward[p2], backward[q2]) {
                    (None, None) => {
                        forward[p2] = Some(q2);
                        backward[q2] = Some(p2);
                        queue.push_back((p2, q2));
                    }
                    (Some(x), Some(y)) if x == q2 && y == p2 => {}
                    _ => return None,
                }
            }
        }
        forward.into_iter().collect()
    }
}
