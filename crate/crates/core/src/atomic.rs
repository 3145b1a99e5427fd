//! Atomic NFAs: the atomicity test, per-state atom decompositions, the
//! legality conditions for atom-labelled candidates, the maximal reduced
//! atomic NFA, and exhaustive enumeration of trim reduced atomic NFAs.

use std::collections::BTreeSet;
use std::fmt;

use crate::atoms::{label_name, AtomLabel, Language};
use crate::automaton::{Alphabet, Nfa, StateSet};
use crate::error::{Error, Result};

/// Enumeration refuses languages with more positive atoms than this unless
/// the guardrail is overridden.
pub const MAX_ENUMERATION_ATOMS: usize = 16;

/// Largest collection size the enumerator represents (state sets are `u64`).
pub const MAX_CANDIDATE_STATES: usize = 64;

/// Whether the trim part of `nfa` is atomic: its reverse, determinized, is a
/// minimal DFA.
pub fn is_atomic(nfa: &Nfa) -> Result<bool> {
    let trimmed = nfa.trim();
    if trimmed.is_empty() {
        return Err(Error::EmptyLanguage);
    }
    let reversed = trimmed.reverse().determinize().dfa;
    let minimal = reversed.minimize();
    Ok(reversed.is_isomorphic(&minimal).is_some())
}

/// How the right language of one state relates to the atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    /// The right language is exactly the union of these positive atoms.
    Union(BTreeSet<usize>),
    /// The right language meets these atoms but is not their union.
    NotAUnion(BTreeSet<usize>),
}

impl Decomposition {
    pub fn atoms(&self) -> &BTreeSet<usize> {
        match self {
            Decomposition::Union(a) | Decomposition::NotAUnion(a) => a,
        }
    }

    pub fn is_union(&self) -> bool {
        matches!(self, Decomposition::Union(_))
    }

    pub fn label(&self) -> Option<AtomLabel> {
        match self {
            Decomposition::Union(a) => Some(a.iter().copied().collect()),
            Decomposition::NotAUnion(_) => None,
        }
    }
}

/// For each state of `nfa`, the atoms its right language intersects and
/// whether it equals their union. Both questions are decided exactly.
pub fn state_atom_decomposition(nfa: &Nfa, lang: &Language) -> Result<Vec<Decomposition>> {
    if !nfa.equivalent(&lang.to_nfa())? {
        return Err(Error::LanguageMismatch);
    }
    let atomaton = lang.atomaton().nfa();
    let negative = lang.atoms().negative();
    (0..nfa.len())
        .map(|q| {
            let right = nfa.with_initials(StateSet::from([q]));
            let mut touched = BTreeSet::new();
            for j in 0..atomaton.len() {
                if right.intersects(&atomaton.with_initials(StateSet::from([j])))? {
                    touched.insert(j);
                }
            }
            let exact = negative.is_none_or(|neg| !touched.contains(&neg))
                && right.equivalent(&lang.atoms_nfa(&touched))?;
            Ok(if exact {
                Decomposition::Union(touched)
            } else {
                Decomposition::NotAUnion(touched)
            })
        })
        .collect()
}

/// A proposed reduced atomic NFA whose states are named by sets of positive
/// atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AtomicCandidate {
    states: Vec<AtomLabel>,
    initials: BTreeSet<usize>,
    finals: BTreeSet<usize>,
    /// `transitions[state][symbol]`, as indices into `states`.
    transitions: Vec<Vec<BTreeSet<usize>>>,
}

impl AtomicCandidate {
    pub fn new(
        states: Vec<AtomLabel>,
        initials: BTreeSet<usize>,
        finals: BTreeSet<usize>,
        transitions: Vec<Vec<BTreeSet<usize>>>,
    ) -> Result<Self> {
        let invalid = |msg: &str| Err(Error::InternalInvariantViolation(msg.to_string()));
        let r = states.len();
        if states.iter().any(|l| l.is_empty()) {
            return invalid("candidate states must be non-empty atom sets");
        }
        if states.iter().collect::<BTreeSet<_>>().len() != r {
            return invalid("candidate states must be distinct atom sets");
        }
        if transitions.len() != r
            || transitions.iter().flatten().flatten().any(|&t| t >= r)
            || initials.iter().chain(&finals).any(|&q| q >= r)
        {
            return invalid("candidate refers to a missing state");
        }
        Ok(AtomicCandidate {
            states,
            initials,
            finals,
            transitions,
        })
    }

    /// Reads an NFA whose states are known to be unions of atoms, naming each
    /// state by its atom set. Returns `None` unless every state decomposes
    /// and the labels are pairwise distinct.
    pub fn relabel(nfa: &Nfa, decomposition: &[Decomposition]) -> Option<Self> {
        let states: Option<Vec<AtomLabel>> = decomposition.iter().map(|d| d.label()).collect();
        let alphabet = nfa.alphabet().len();
        let transitions = (0..nfa.len())
            .map(|q| {
                (0..alphabet)
                    .map(|a| nfa.successors(q, a).clone())
                    .collect()
            })
            .collect();
        Self::new(
            states?,
            nfa.initials().clone(),
            nfa.finals().clone(),
            transitions,
        )
        .ok()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[AtomLabel] {
        &self.states
    }

    pub fn initials(&self) -> &BTreeSet<usize> {
        &self.initials
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn successors(&self, state: usize, symbol: usize) -> &BTreeSet<usize> {
        &self.transitions[state][symbol]
    }

    pub fn state_of(&self, label: AtomLabel) -> Option<usize> {
        self.states.iter().position(|&l| l == label)
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.iter().flatten().map(|t| t.len()).sum()
    }

    /// `S(·)`: the union of the labels of a set of states.
    pub fn union_of(&self, states: &BTreeSet<usize>) -> AtomLabel {
        states
            .iter()
            .fold(AtomLabel::EMPTY, |acc, &q| acc.union(self.states[q]))
    }

    /// The same structure as a plain NFA; states are named by their labels.
    pub fn to_nfa(&self, alphabet: &Alphabet) -> Nfa {
        let names = self.states.iter().map(|&l| label_name(l)).collect();
        let mut nfa = Nfa::with_names(alphabet.clone(), names);
        for (q, row) in self.transitions.iter().enumerate() {
            for (a, targets) in row.iter().enumerate() {
                for &t in targets {
                    nfa.add_transition(q, a, t);
                }
            }
        }
        for &q in &self.initials {
            nfa.set_initial(q, true);
        }
        for &q in &self.finals {
            nfa.set_final(q, true);
        }
        nfa
    }
}

/// Which legality condition a candidate fails first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A label mentions something other than a positive atom.
    UnknownAtom { state: usize },
    /// The union of the initial labels is not the set of initial atoms.
    InitialUnion,
    /// The union of the successor labels differs from the átomaton image.
    TransitionUnion { state: usize, symbol: usize },
    /// Final states are not exactly the states containing the final atom.
    FinalMembership { state: usize },
    /// The state is unreachable or cannot reach a final state.
    NotTrim { state: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownAtom { state } => write!(f, "unknown-atom at state {state}"),
            Violation::InitialUnion => f.write_str("initial-union"),
            Violation::TransitionUnion { state, symbol } => {
                write!(f, "transition-union at state {state}, symbol {symbol}")
            }
            Violation::FinalMembership { state } => write!(f, "final-membership at state {state}"),
            Violation::NotTrim { state } => write!(f, "not-trim at state {state}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LegalityReport {
    pub violation: Option<Violation>,
}

impl LegalityReport {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks a candidate against the three legality conditions and trimness.
/// A candidate passing all of them is a trim reduced atomic NFA of `lang`.
pub fn check_legality(candidate: &AtomicCandidate, lang: &Language) -> LegalityReport {
    let fail = |v| LegalityReport { violation: Some(v) };
    let positive = lang.atoms().all_positive();
    for (state, &label) in candidate.states.iter().enumerate() {
        if !label.is_subset(positive) {
            return fail(Violation::UnknownAtom { state });
        }
    }
    if candidate.union_of(&candidate.initials) != lang.atoms().initial_label() {
        return fail(Violation::InitialUnion);
    }
    for (state, &label) in candidate.states.iter().enumerate() {
        for symbol in 0..lang.alphabet().len() {
            let image = candidate.union_of(&candidate.transitions[state][symbol]);
            if image != lang.alpha(label, symbol) {
                return fail(Violation::TransitionUnion { state, symbol });
            }
        }
    }
    let final_atom = lang.atoms().final_atom();
    for (state, &label) in candidate.states.iter().enumerate() {
        if candidate.finals.contains(&state) != label.contains(final_atom) {
            return fail(Violation::FinalMembership { state });
        }
    }
    let nfa = candidate.to_nfa(lang.alphabet());
    let reach = nfa.reachable();
    let coreach = nfa.coreachable();
    if let Some(state) = (0..nfa.len()).find(|q| !reach.contains(q) || !coreach.contains(q)) {
        return fail(Violation::NotTrim { state });
    }
    LegalityReport { violation: None }
}

/// Every non-empty subset of some quotient's positive-atom set, in label
/// order. These are the only labels a state of a trim atomic NFA can carry.
pub fn candidate_labels(lang: &Language) -> Vec<AtomLabel> {
    let mut labels = BTreeSet::new();
    for quotient in lang.quotient_labels() {
        let full = quotient.0;
        let mut sub = full;
        while sub != 0 {
            labels.insert(AtomLabel(sub));
            sub = (sub - 1) & full;
        }
    }
    labels.into_iter().collect()
}

fn guard_atoms(lang: &Language, override_guardrails: bool) -> Result<()> {
    let p = lang.positive_count();
    if p > MAX_ENUMERATION_ATOMS && !override_guardrails {
        return Err(Error::Guardrail {
            what: "number of positive atoms",
            actual: p,
            limit: MAX_ENUMERATION_ATOMS,
        });
    }
    Ok(())
}

/// The largest trim reduced atomic NFA: all candidate labels as states,
/// `β(B, a) = {B' | B' ⊆ α(B, a)}`, initial states the subsets of the initial
/// quotient's atoms, final states those containing the final atom.
pub fn maximal_atomic_nfa(lang: &Language, override_guardrails: bool) -> Result<AtomicCandidate> {
    guard_atoms(lang, override_guardrails)?;
    let states = candidate_labels(lang);
    let initial = lang.atoms().initial_label();
    let final_atom = lang.atoms().final_atom();
    let within = |bound: AtomLabel| -> BTreeSet<usize> {
        (0..states.len())
            .filter(|&i| states[i].is_subset(bound))
            .collect()
    };
    let transitions = states
        .iter()
        .map(|&b| {
            (0..lang.alphabet().len())
                .map(|a| within(lang.alpha(b, a)))
                .collect()
        })
        .collect();
    let finals = (0..states.len())
        .filter(|&i| states[i].contains(final_atom))
        .collect();
    AtomicCandidate::new(states.clone(), within(initial), finals, transitions)
}

/// Whether some quotient is the union of all positive atoms, i.e. whether a
/// trim reduced atomic NFA with `2^p - 1` states exists.
pub fn has_full_atomic_nfa(lang: &Language) -> bool {
    let all = lang.atoms().all_positive();
    lang.quotient_labels().into_iter().any(|l| l == all)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub max_states: usize,
    /// Emit every admissible initial set and transition set. When false, only
    /// the subset-maximal choice is emitted for each collection.
    pub count_transition_variants: bool,
    pub override_guardrails: bool,
}

impl EnumerationOptions {
    pub fn new(max_states: usize) -> Self {
        EnumerationOptions {
            max_states,
            count_transition_variants: true,
            override_guardrails: false,
        }
    }
}

/// Exhaustive search for trim reduced atomic NFAs of a language.
///
/// Output order: by number of states; then by state collection, comparing the
/// label-ordered collections lexicographically; then by initial set and
/// transition sets, where each choice is ordered by the binary code of the
/// chosen states and the last `(state, symbol)` pair varies fastest.
#[derive(Clone, Debug)]
pub struct AtomicEnumerator {
    labels: Vec<AtomLabel>,
    /// `images[i][a]` = `α(labels[i], a)`.
    images: Vec<Vec<AtomLabel>>,
    /// `successors[j][a]` = `α({j}, a)` for each positive atom `j`.
    successors: Vec<Vec<AtomLabel>>,
    initial: AtomLabel,
    final_atom: usize,
    options: EnumerationOptions,
}

impl AtomicEnumerator {
    pub fn new(lang: &Language, options: EnumerationOptions) -> Result<Self> {
        guard_atoms(lang, options.override_guardrails)?;
        let labels = candidate_labels(lang);
        let symbols = lang.alphabet().len();
        let images = labels
            .iter()
            .map(|&l| (0..symbols).map(|a| lang.alpha(l, a)).collect())
            .collect();
        let successors = (0..lang.positive_count())
            .map(|j| {
                (0..symbols)
                    .map(|a| lang.alpha(AtomLabel::singleton(j), a))
                    .collect()
            })
            .collect();
        let max_states = options.max_states.min(labels.len());
        if max_states > MAX_CANDIDATE_STATES {
            return Err(Error::TooLarge {
                what: "maximum number of candidate states",
                actual: max_states,
                limit: MAX_CANDIDATE_STATES,
            });
        }
        Ok(AtomicEnumerator {
            labels,
            images,
            successors,
            initial: lang.atoms().initial_label(),
            final_atom: lang.atoms().final_atom(),
            options: EnumerationOptions {
                max_states,
                ..options
            },
        })
    }

    pub fn labels(&self) -> &[AtomLabel] {
        &self.labels
    }

    pub fn max_states(&self) -> usize {
        self.options.max_states
    }

    fn alphabet_len(&self) -> usize {
        self.successors.first().map_or(0, Vec::len)
    }

    fn alpha(&self, label: AtomLabel, symbol: usize) -> AtomLabel {
        label.iter().fold(AtomLabel::EMPTY, |acc, j| {
            acc.union(self.successors[j][symbol])
        })
    }

    /// Collection viability: the initial atoms and every átomaton image
    /// `α(B, a)` can be assembled from members contained in them.
    fn viable(&self, members: &[usize]) -> bool {
        let cover = |target: AtomLabel| {
            members
                .iter()
                .map(|&m| self.labels[m])
                .filter(|l| l.is_subset(target))
                .fold(AtomLabel::EMPTY, AtomLabel::union)
                == target
        };
        cover(self.initial)
            && members
                .iter()
                .all(|&m| self.images[m].iter().all(|&image| cover(image)))
    }

    /// Viable state collections (as label lists) with `size` members.
    pub fn collections_of_size(&self, size: usize) -> impl Iterator<Item = Vec<AtomLabel>> + '_ {
        Combinations::new(self.labels.len(), size)
            .filter(move |c| self.viable(c))
            .map(move |c| c.iter().map(|&i| self.labels[i]).collect())
    }

    /// Viable collections of every size up to the bound, in output order.
    pub fn collections(&self) -> impl Iterator<Item = Vec<AtomLabel>> + '_ {
        (1..=self.options.max_states).flat_map(move |k| self.collections_of_size(k))
    }

    /// All trim candidates over one state collection (empty if the collection
    /// is not viable or admits no trim choice).
    pub fn candidates_for(&self, collection: &[AtomLabel]) -> CollectionCandidates {
        CollectionCandidates::new(self, collection)
    }

    pub fn candidates(&self) -> impl Iterator<Item = AtomicCandidate> + '_ {
        self.collections()
            .flat_map(move |c| self.candidates_for(&c))
    }

    /// Number of candidates, without materializing them.
    pub fn count(&self) -> u64 {
        self.collections()
            .map(|c| self.candidates_for(&c).count_remaining())
            .sum()
    }

    /// Smallest number of states of a trim reduced atomic NFA, searching up
    /// to the configured bound.
    pub fn minimal_size(&self) -> Option<usize> {
        (1..=self.options.max_states).find(|&k| {
            self.collections_of_size(k)
                .any(|c| self.candidates_for(&c).has_any())
        })
    }
}

impl IntoIterator for AtomicEnumerator {
    type Item = AtomicCandidate;
    type IntoIter = Candidates;

    fn into_iter(self) -> Candidates {
        Candidates {
            combos: Combinations::new(self.labels.len(), 1),
            size: 1,
            current: None,
            space: self,
        }
    }
}

/// Owning stream over every candidate of an [`AtomicEnumerator`].
pub struct Candidates {
    space: AtomicEnumerator,
    size: usize,
    combos: Combinations,
    current: Option<CollectionCandidates>,
}

impl Iterator for Candidates {
    type Item = AtomicCandidate;

    fn next(&mut self) -> Option<AtomicCandidate> {
        loop {
            if let Some(candidate) = self.current.as_mut().and_then(Iterator::next) {
                return Some(candidate);
            }
            match self.combos.next() {
                Some(c) if self.space.viable(&c) => {
                    let labels: Vec<AtomLabel> = c.iter().map(|&i| self.space.labels[i]).collect();
                    self.current = Some(self.space.candidates_for(&labels));
                }
                Some(_) => {}
                None if self.size < self.space.options.max_states => {
                    self.size += 1;
                    self.combos = Combinations::new(self.space.labels.len(), self.size);
                }
                None => return None,
            }
        }
    }
}

/// Lexicographic `k`-combinations of `0..n`.
pub(crate) struct Combinations {
    n: usize,
    indices: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            indices: (0..k).collect(),
            done: k > n || k == 0,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let current = self.indices.clone();
        let k = self.indices.len();
        match (0..k).rev().find(|&i| self.indices[i] < self.n - k + i) {
            Some(i) => {
                self.indices[i] += 1;
                for j in i + 1..k {
                    self.indices[j] = self.indices[j - 1] + 1;
                }
            }
            None => self.done = true,
        }
        Some(current)
    }
}

/// Streams the trim candidates of a single state collection.
pub struct CollectionCandidates {
    states: Vec<AtomLabel>,
    finals: u64,
    /// `choices[0]` are initial-set options; `choices[1 + q * k + a]` are the
    /// options for `(q, a)`. Each option is a bitmask over `states`.
    choices: Vec<Vec<u64>>,
    alphabet: usize,
    odometer: Vec<usize>,
    exhausted: bool,
}

impl CollectionCandidates {
    fn new(enumerator: &AtomicEnumerator, collection: &[AtomLabel]) -> Self {
        let states = collection.to_vec();
        let alphabet = enumerator.alphabet_len();
        let variants = enumerator.options.count_transition_variants;
        let options_for = |target: AtomLabel| -> Vec<u64> {
            let eligible: u64 = states
                .iter()
                .enumerate()
                .filter(|(_, l)| l.is_subset(target))
                .fold(0, |acc, (i, _)| acc | 1 << i);
            let union_of = |mask: u64| {
                (0..states.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .fold(AtomLabel::EMPTY, |acc, i| acc.union(states[i]))
            };
            if union_of(eligible) != target {
                return Vec::new();
            }
            if !variants {
                return vec![eligible];
            }
            // Submasks of `eligible`, ascending.
            let mut out = Vec::new();
            let mut sub: u64 = 0;
            loop {
                if union_of(sub) == target {
                    out.push(sub);
                }
                if sub == eligible {
                    break;
                }
                sub = (sub.wrapping_sub(eligible)) & eligible;
            }
            out
        };
        let mut choices = vec![options_for(enumerator.initial)];
        for &label in &states {
            for a in 0..alphabet {
                choices.push(options_for(enumerator.alpha(label, a)));
            }
        }
        let finals = states
            .iter()
            .enumerate()
            .filter(|(_, l)| l.contains(enumerator.final_atom))
            .fold(0, |acc, (i, _)| acc | 1 << i);
        let mut this = CollectionCandidates {
            odometer: vec![0; choices.len()],
            exhausted: choices.iter().any(|c| c.is_empty()),
            states,
            finals,
            choices,
            alphabet,
        };
        // Every option is a subset of the last (subset-maximal) one, and
        // trimness is monotone in edges: if the maximal choice is not trim,
        // nothing in this collection is.
        if !this.exhausted && !this.trim(&this.maximal_config()) {
            this.exhausted = true;
        }
        this
    }

    fn maximal_config(&self) -> Vec<usize> {
        self.choices.iter().map(|c| c.len() - 1).collect()
    }

    fn trim(&self, config: &[usize]) -> bool {
        let r = self.states.len();
        let all = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
        let edge = |q: usize, a: usize| {
            self.choices[1 + q * self.alphabet + a][config[1 + q * self.alphabet + a]]
        };
        let out: Vec<u64> = (0..r)
            .map(|q| (0..self.alphabet).fold(0, |acc, a| acc | edge(q, a)))
            .collect();
        let mut reach = self.choices[0][config[0]];
        loop {
            let next = (0..r)
                .filter(|&q| reach >> q & 1 == 1)
                .fold(reach, |acc, q| acc | out[q]);
            if next == reach {
                break;
            }
            reach = next;
        }
        if reach != all {
            return false;
        }
        let mut coreach = self.finals;
        loop {
            let next = (0..r)
                .filter(|&q| out[q] & coreach != 0)
                .fold(coreach, |acc, q| acc | 1 << q);
            if next == coreach {
                break;
            }
            coreach = next;
        }
        coreach == all
    }

    /// Moves to the next trim configuration at or after the odometer.
    fn seek(&mut self) -> Option<Vec<usize>> {
        while !self.exhausted {
            let config = self.odometer.clone();
            self.advance();
            if self.trim(&config) {
                return Some(config);
            }
        }
        None
    }

    fn advance(&mut self) {
        for slot in (0..self.odometer.len()).rev() {
            self.odometer[slot] += 1;
            if self.odometer[slot] < self.choices[slot].len() {
                return;
            }
            self.odometer[slot] = 0;
        }
        self.exhausted = true;
    }

    fn build(&self, config: &[usize]) -> AtomicCandidate {
        let r = self.states.len();
        let bits =
            |mask: u64| -> BTreeSet<usize> { (0..r).filter(|&i| mask >> i & 1 == 1).collect() };
        let transitions = (0..r)
            .map(|q| {
                (0..self.alphabet)
                    .map(|a| {
                        let slot = 1 + q * self.alphabet + a;
                        bits(self.choices[slot][config[slot]])
                    })
                    .collect()
            })
            .collect();
        AtomicCandidate {
            states: self.states.clone(),
            initials: bits(self.choices[0][config[0]]),
            finals: bits(self.finals),
            transitions,
        }
    }

    fn has_any(&self) -> bool {
        !self.exhausted
    }

    fn count_remaining(mut self) -> u64 {
        let mut n = 0;
        while self.seek().is_some() {
            n += 1;
        }
        n
    }
}

impl Iterator for CollectionCandidates {
    type Item = AtomicCandidate;

    fn next(&mut self) -> Option<AtomicCandidate> {
        let config = self.seek()?;
        Some(self.build(&config))
    }
}

/// Streams every trim reduced atomic NFA with at most `options.max_states`
/// states.
pub fn enumerate_atomic_nfas(lang: &Language, options: EnumerationOptions) -> Result<Candidates> {
    Ok(AtomicEnumerator::new(lang, options)?.into_iter())
}

/// Smallest number of states of any trim reduced atomic NFA of `lang`.
pub fn minimal_atomic_nfa_size(lang: &Language, override_guardrails: bool) -> Result<usize> {
    let labels = candidate_labels(lang).len();
    let options = EnumerationOptions {
        max_states: labels.min(MAX_CANDIDATE_STATES),
        count_transition_variants: false,
        override_guardrails,
    };
    AtomicEnumerator::new(lang, options)?
        .minimal_size()
        .ok_or_else(|| {
            if labels > MAX_CANDIDATE_STATES {
                Error::TooLarge {
                    what: "number of candidate states",
                    actual: labels,
                    limit: MAX_CANDIDATE_STATES,
                }
            } else {
                Error::InternalInvariantViolation("the maximal atomic NFA was not found".into())
            }
        })
}
