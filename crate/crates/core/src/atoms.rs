//! Quotients and atoms of a regular language, and its átomaton.
//!
//! Atoms are identified by their descriptor: the set of quotient indices that
//! appear uncomplemented in the intersection. They are read off as the subset
//! labels of the determinized reverse of the quotient DFA. Positive atoms are
//! numbered `0..p` in the breadth-first order of that construction (so the
//! final atom is always atom 0); the negative atom, when present, is numbered
//! `p`, last.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::automaton::{Alphabet, Dfa, Nfa, StateId, StateSet};
use crate::error::{Error, Result};

/// A set of positive atom indices, stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct AtomLabel(pub u64);

impl AtomLabel {
    pub const EMPTY: AtomLabel = AtomLabel(0);

    pub fn singleton(atom: usize) -> Self {
        AtomLabel(1 << atom)
    }

    /// The label `{0, 1, .., count - 1}`.
    pub fn full(count: usize) -> Self {
        if count >= 64 {
            AtomLabel(u64::MAX)
        } else {
            AtomLabel((1u64 << count) - 1)
        }
    }

    pub fn contains(self, atom: usize) -> bool {
        self.0 >> atom & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: AtomLabel) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: AtomLabel) -> AtomLabel {
        AtomLabel(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |&i| bits >> i & 1 == 1)
    }
}

impl FromIterator<usize> for AtomLabel {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        AtomLabel(iter.into_iter().fold(0, |acc, i| acc | 1 << i))
    }
}

impl PartialOrd for AtomLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on the sorted member lists, so `{0} < {0,1} < {1}`.
impl Ord for AtomLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

/// Display name of atom `index`: `A`, `B`, .. `Z`, then `X26`, `X27`, ..
pub fn atom_name(index: usize) -> String {
    if index < 26 {
        char::from(b'A' + index as u8).to_string()
    } else {
        format!("X{index}")
    }
}

/// Concatenated atom names, e.g. `ABD`.
pub fn label_name(label: AtomLabel) -> String {
    label.iter().map(atom_name).collect()
}

/// The minimal complete DFA of a non-empty language, whose state `i` stands
/// for quotient `K_i`. States are numbered breadth-first from `K_in = 0`.
#[derive(Clone, Debug)]
pub struct QuotientDfa {
    dfa: Dfa,
}

impl QuotientDfa {
    pub fn from_nfa(nfa: &Nfa) -> Result<Self> {
        Self::from_dfa(&nfa.determinize().dfa)
    }

    pub fn from_dfa(dfa: &Dfa) -> Result<Self> {
        let dfa = dfa.minimize();
        if dfa.finals().is_empty() {
            return Err(Error::EmptyLanguage);
        }
        Ok(QuotientDfa { dfa })
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.dfa.alphabet()
    }

    /// Number of quotients, `n`.
    pub fn len(&self) -> usize {
        self.dfa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dfa.is_empty()
    }

    pub fn initial(&self) -> usize {
        self.dfa.initial()
    }

    pub fn final_indices(&self) -> &StateSet {
        self.dfa.finals()
    }

    pub fn is_final(&self, i: usize) -> bool {
        self.dfa.is_final(i)
    }

    /// `a⁻¹K_i`, as a quotient index.
    pub fn next(&self, i: usize, symbol: usize) -> usize {
        self.dfa.next(i, symbol)
    }

    /// Whether `word ∈ K_i`.
    pub fn contains(&self, i: usize, word: &[usize]) -> bool {
        self.dfa.is_final(self.dfa.run(i, word))
    }

    /// The empty quotient, if the language has one.
    pub fn empty_quotient(&self) -> Option<usize> {
        let live = self.dfa.to_nfa().coreachable();
        (0..self.len()).find(|q| !live.contains(q))
    }

    /// Indices of the non-empty quotients, ascending.
    pub fn non_empty(&self) -> Vec<usize> {
        let sink = self.empty_quotient();
        (0..self.len()).filter(|&i| Some(i) != sink).collect()
    }
}

/// The atoms of a language, described by their uncomplemented quotients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomSet {
    descriptors: Vec<BTreeSet<usize>>,
    positive: usize,
    final_atom: usize,
    initial_atoms: BTreeSet<usize>,
}

impl AtomSet {
    pub fn compute(quotients: &QuotientDfa) -> Self {
        Atoms::build(quotients).atoms
    }

    /// Number of atoms, `m`.
    pub fn len(&self) -> usize {
        self.descriptors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.descriptors.is_empty()
    }

    /// Number of positive atoms, `p`.
    pub fn positive_count(&self) -> usize {
        self.positive
    }

    pub fn has_negative(&self) -> bool {
        self.descriptors.len() > self.positive
    }

    pub fn negative(&self) -> Option<usize> {
        self.has_negative().then_some(self.positive)
    }

    pub fn descriptor(&self, atom: usize) -> &BTreeSet<usize> {
        &self.descriptors[atom]
    }

    pub fn descriptors(&self) -> &[BTreeSet<usize>] {
        &self.descriptors
    }

    /// The unique atom containing the empty word.
    pub fn final_atom(&self) -> usize {
        self.final_atom
    }

    /// Atoms having `K_in` uncomplemented.
    pub fn initial_atoms(&self) -> &BTreeSet<usize> {
        &self.initial_atoms
    }

    pub fn initial_label(&self) -> AtomLabel {
        self.initial_atoms.iter().copied().collect()
    }

    pub fn all_positive(&self) -> AtomLabel {
        AtomLabel::full(self.positive)
    }

    /// The positive atoms whose union is quotient `K_i`.
    pub fn quotient_label(&self, quotient: usize) -> AtomLabel {
        (0..self.positive)
            .filter(|&j| self.descriptors[j].contains(&quotient))
            .collect()
    }

    /// The atom containing `word`.
    pub fn atom_of_word(&self, quotients: &QuotientDfa, word: &[usize]) -> usize {
        let descriptor: BTreeSet<usize> = (0..quotients.len())
            .filter(|&i| quotients.contains(i, word))
            .collect();
        self.descriptors
            .iter()
            .position(|d| *d == descriptor)
            .expect("atoms partition every word")
    }
}

/// The átomaton: one state per atom, `A_i -a-> A_j` iff `aA_j ⊆ A_i`.
#[derive(Clone, Debug)]
pub struct Atomaton {
    nfa: Nfa,
    trim: Nfa,
    successors: Vec<Vec<AtomLabel>>,
}

impl Atomaton {
    pub fn compute(quotients: &QuotientDfa) -> Result<Self> {
        Atoms::build(quotients).atomaton()
    }

    /// Full átomaton, including the negative atom when it exists.
    pub fn nfa(&self) -> &Nfa {
        &self.nfa
    }

    /// Átomaton without the negative atom; states are the positive atoms.
    pub fn trim_nfa(&self) -> &Nfa {
        &self.trim
    }

    /// `α(B, a)`: the union of the successors of every atom in `label`.
    pub fn alpha(&self, label: AtomLabel, symbol: usize) -> AtomLabel {
        label.iter().fold(AtomLabel::EMPTY, |acc, j| {
            acc.union(self.successors[j][symbol])
        })
    }
}

/// Shared construction of the atoms and the átomaton.
struct Atoms {
    atoms: AtomSet,
    /// Determinized reverse of the quotient DFA.
    reversed: Dfa,
    /// `order[s]` = atom index of reversed-DFA state `s`.
    order: Vec<usize>,
}

impl Atoms {
    fn build(quotients: &QuotientDfa) -> Self {
        let subset = quotients.dfa().reverse().determinize();
        let positive = subset.labels.iter().filter(|l| !l.is_empty()).count();
        let mut order = vec![0; subset.labels.len()];
        let mut next = 0;
        for (s, label) in subset.labels.iter().enumerate() {
            if label.is_empty() {
                order[s] = positive;
            } else {
                order[s] = next;
                next += 1;
            }
        }
        let mut descriptors = vec![BTreeSet::new(); subset.labels.len()];
        for (s, label) in subset.labels.into_iter().enumerate() {
            descriptors[order[s]] = label;
        }
        let initial = quotients.initial();
        let initial_atoms = (0..positive)
            .filter(|&j| descriptors[j].contains(&initial))
            .collect();
        let atoms = AtomSet {
            descriptors,
            positive,
            final_atom: order[subset.dfa.initial()],
            initial_atoms,
        };
        Atoms {
            atoms,
            reversed: subset.dfa,
            order,
        }
    }

    fn atomaton(self) -> Result<Atomaton> {
        let Atoms {
            atoms,
            reversed,
            order,
        } = self;
        if atoms.positive > 64 {
            return Err(Error::TooLarge {
                what: "number of positive atoms",
                actual: atoms.positive,
                limit: 64,
            });
        }
        let alphabet = reversed.alphabet().clone();
        let names = (0..atoms.len()).map(atom_name).collect();
        let mut nfa = Nfa::with_names(alphabet.clone(), names);
        let mut successors = vec![vec![AtomLabel::EMPTY; alphabet.len()]; atoms.positive];
        for s in 0..reversed.len() {
            for a in 0..alphabet.len() {
                let (from, to) = (order[reversed.next(s, a)], order[s]);
                nfa.add_transition(from, a, to);
                if from < atoms.positive && to < atoms.positive {
                    successors[from][a].0 |= 1 << to;
                }
            }
        }
        for &j in &atoms.initial_atoms {
            nfa.set_initial(j, true);
        }
        nfa.set_final(atoms.final_atom, true);

        let (trim, kept) = nfa.trim_with_map();
        if kept != (0..atoms.positive).collect::<Vec<StateId>>() {
            return Err(Error::InternalInvariantViolation(
                "trimming the átomaton must remove exactly the negative atom".into(),
            ));
        }
        Ok(Atomaton {
            nfa,
            trim,
            successors,
        })
    }
}

/// A non-empty regular language together with its quotients, atoms and
/// átomaton; the starting point for every analysis downstream.
#[derive(Clone, Debug)]
pub struct Language {
    quotients: QuotientDfa,
    atoms: AtomSet,
    atomaton: Atomaton,
}

impl Language {
    pub fn from_nfa(nfa: &Nfa) -> Result<Self> {
        Self::from_quotients(QuotientDfa::from_nfa(nfa)?)
    }

    pub fn from_dfa(dfa: &Dfa) -> Result<Self> {
        Self::from_quotients(QuotientDfa::from_dfa(dfa)?)
    }

    pub fn from_quotients(quotients: QuotientDfa) -> Result<Self> {
        let parts = Atoms::build(&quotients);
        let atoms = parts.atoms.clone();
        let atomaton = parts.atomaton()?;
        Ok(Language {
            quotients,
            atoms,
            atomaton,
        })
    }

    pub fn quotients(&self) -> &QuotientDfa {
        &self.quotients
    }

    pub fn atoms(&self) -> &AtomSet {
        &self.atoms
    }

    pub fn atomaton(&self) -> &Atomaton {
        &self.atomaton
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.quotients.alphabet()
    }

    pub fn positive_count(&self) -> usize {
        self.atoms.positive_count()
    }

    pub fn alpha(&self, label: AtomLabel, symbol: usize) -> AtomLabel {
        self.atomaton.alpha(label, symbol)
    }

    /// The language itself, as an NFA (the quotient DFA).
    pub fn to_nfa(&self) -> Nfa {
        self.quotients.dfa().to_nfa()
    }

    /// An NFA accepting the union of the given atoms.
    pub fn atoms_nfa(&self, atoms: &BTreeSet<usize>) -> Nfa {
        self.atomaton.nfa().with_initials(atoms.clone())
    }

    /// Positive-atom decomposition of each quotient, indexed by quotient.
    pub fn quotient_labels(&self) -> Vec<AtomLabel> {
        (0..self.quotients.len())
            .map(|i| self.atoms.quotient_label(i))
            .collect()
    }

    /// Maps each atom descriptor to its atom index.
    pub fn descriptor_index(&self) -> HashMap<BTreeSet<usize>, usize> {
        self.atoms
            .descriptors()
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, d)| (d, i))
            .collect()
    }
}

impl fmt::Display for Language {
    /// Lists quotients with their atom decompositions, then the atoms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &self.quotients;
        writeln!(f, "quotients: {}", q.len())?;
        for i in 0..q.len() {
            let mut tags = Vec::new();
            if i == q.initial() {
                tags.push("initial");
            }
            if q.is_final(i) {
                tags.push("final");
            }
            if Some(i) == q.empty_quotient() {
                tags.push("empty");
            }
            let atoms: Vec<String> = self.atoms.quotient_label(i).iter().map(atom_name).collect();
            write!(f, "  K{i} = {{{}}}", atoms.join(","))?;
            if !tags.is_empty() {
                write!(f, "  ({})", tags.join(", "))?;
            }
            writeln!(f)?;
        }
        writeln!(
            f,
            "atoms: {} ({} positive)",
            self.atoms.len(),
            self.atoms.positive_count()
        )?;
        for j in 0..self.atoms.len() {
            let descriptor: Vec<String> = self
                .atoms
                .descriptor(j)
                .iter()
                .map(|i| format!("K{i}"))
                .collect();
            let mut tags = Vec::new();
            if self.atoms.initial_atoms().contains(&j) {
                tags.push("initial");
            }
            if j == self.atoms.final_atom() {
                tags.push("final");
            }
            if Some(j) == self.atoms.negative() {
                tags.push("negative");
            }
            write!(f, "  {} = {{{}}}", atom_name(j), descriptor.join(","))?;
            if !tags.is_empty() {
                write!(f, "  ({})", tags.join(", "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
