//! Kameda–Weiner NFA minimization over the quotient-atom matrix.
//!
//! Rows of the matrix are the non-empty quotients, columns the positive atoms,
//! and entry `(i, j)` is set iff `A_j ⊆ K_i`. A grid is an all-ones
//! sub-rectangle `P × R`; a cover is a set of grids containing every entry.
//! Each cover induces an NFA with one state per grid, and the smallest cover
//! whose NFA accepts the language gives a minimal NFA.

use std::collections::BTreeSet;
use std::fmt;

use crate::atomic::Combinations;
use crate::atoms::{atom_name, AtomLabel, Language, QuotientDfa};
use crate::automaton::Nfa;
use crate::error::{Error, Result};

/// Cover search refuses more maximal grids than this unless overridden.
pub const MAX_GRIDS: usize = 24;

/// Quotient indices are stored in a `u64`.
const MAX_QUOTIENTS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientAtomMatrix {
    /// Non-empty quotient indices, ascending.
    rows: Vec<usize>,
    /// `entries[i]` = positive atoms contained in quotient `i` (empty for the
    /// empty quotient). Indexed by quotient, not by row position.
    entries: Vec<AtomLabel>,
    columns: usize,
}

impl QuotientAtomMatrix {
    pub fn new(lang: &Language) -> Result<Self> {
        let quotients = lang.quotients();
        if quotients.len() > MAX_QUOTIENTS {
            return Err(Error::TooLarge {
                what: "number of quotients",
                actual: quotients.len(),
                limit: MAX_QUOTIENTS,
            });
        }
        let rows = quotients.non_empty();
        if rows.is_empty() {
            return Err(Error::EmptyLanguage);
        }
        Ok(QuotientAtomMatrix {
            rows,
            entries: lang.quotient_labels(),
            columns: lang.positive_count(),
        })
    }

    /// A matrix given directly by its rows; row `i` is quotient `i`.
    pub fn from_rows(entries: Vec<AtomLabel>, columns: usize) -> Self {
        let rows = (0..entries.len())
            .filter(|&i| !entries[i].is_empty())
            .collect();
        QuotientAtomMatrix {
            rows,
            entries,
            columns,
        }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn get(&self, quotient: usize, atom: usize) -> bool {
        self.entries[quotient].contains(atom)
    }

    pub fn row(&self, quotient: usize) -> AtomLabel {
        self.entries[quotient]
    }

    pub fn point_count(&self) -> usize {
        self.rows.iter().map(|&i| self.entries[i].len()).sum()
    }

    /// Rows containing every atom of `atoms`.
    fn rows_covering(&self, atoms: AtomLabel) -> u64 {
        self.rows
            .iter()
            .filter(|&&i| atoms.is_subset(self.entries[i]))
            .fold(0, |acc, &i| acc | 1 << i)
    }
}

impl fmt::Display for QuotientAtomMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "   ")?;
        for j in 0..self.columns {
            write!(f, " {}", atom_name(j))?;
        }
        writeln!(f)?;
        for &i in &self.rows {
            write!(f, "K{i:<2}")?;
            for j in 0..self.columns {
                let cell = if self.get(i, j) { "1" } else { "." };
                write!(f, " {cell:>width$}", width = atom_name(j).len())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// An all-ones rectangle `P × R` of the quotient-atom matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    quotients: u64,
    atoms: AtomLabel,
}

impl Grid {
    pub fn new(quotients: impl IntoIterator<Item = usize>, atoms: AtomLabel) -> Self {
        Grid {
            quotients: quotients.into_iter().fold(0, |acc, i| acc | 1 << i),
            atoms,
        }
    }

    pub fn quotients(&self) -> BTreeSet<usize> {
        (0..64).filter(|&i| self.has_quotient(i)).collect()
    }

    pub fn has_quotient(&self, quotient: usize) -> bool {
        self.quotients >> quotient & 1 == 1
    }

    pub fn atoms(&self) -> AtomLabel {
        self.atoms
    }

    pub fn is_within(&self, other: &Grid) -> bool {
        self.quotients & !other.quotients == 0 && self.atoms.is_subset(other.atoms)
    }

    pub fn fits(&self, matrix: &QuotientAtomMatrix) -> bool {
        self.quotients != 0
            && !self.atoms.is_empty()
            && self
                .quotients()
                .iter()
                .all(|&i| i < matrix.entries.len() && self.atoms.is_subset(matrix.entries[i]))
    }

    /// Grid order: lexicographic on the ascending quotient lists.
    fn sort_key(&self) -> (Vec<usize>, AtomLabel) {
        (self.quotients().into_iter().collect(), self.atoms)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.quotients().iter().map(usize::to_string).collect();
        let r: Vec<String> = self.atoms.iter().map(atom_name).collect();
        write!(f, "{{{}}} x {{{}}}", p.join(","), r.join(","))
    }
}

/// Every maximal grid, ordered lexicographically by quotient set.
///
/// The atom sets of maximal grids are exactly the non-empty intersections of
/// row sets; each such `R` pairs with `P` = all rows containing `R`.
pub fn maximal_grids(matrix: &QuotientAtomMatrix) -> Vec<Grid> {
    let mut family: BTreeSet<u64> = matrix
        .rows
        .iter()
        .map(|&i| matrix.entries[i].0)
        .filter(|&r| r != 0)
        .collect();
    let mut frontier: Vec<u64> = family.iter().copied().collect();
    while let Some(r) = frontier.pop() {
        let fresh: Vec<u64> = family
            .iter()
            .map(|&s| s & r)
            .filter(|&x| x != 0 && !family.contains(&x))
            .collect();
        for x in fresh {
            if family.insert(x) {
                frontier.push(x);
            }
        }
    }
    let mut grids: Vec<Grid> = family
        .into_iter()
        .map(|r| Grid {
            quotients: matrix.rows_covering(AtomLabel(r)),
            atoms: AtomLabel(r),
        })
        .collect();
    grids.sort_by_key(Grid::sort_key);
    grids
}

/// A set of grids covering every point of the matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    grids: Vec<Grid>,
    /// `f[i]` = indices of the grids whose quotient set contains `K_i`.
    f: Vec<BTreeSet<usize>>,
}

impl Cover {
    /// Builds the cover, checking that every point lies in some grid.
    pub fn new(matrix: &QuotientAtomMatrix, grids: Vec<Grid>) -> Option<Self> {
        if !grids.iter().all(|g| g.fits(matrix)) {
            return None;
        }
        let covered = matrix.rows.iter().all(|&i| {
            grids
                .iter()
                .filter(|g| g.has_quotient(i))
                .fold(AtomLabel::EMPTY, |acc, g| acc.union(g.atoms))
                == matrix.entries[i]
        });
        if !covered {
            return None;
        }
        let f = (0..matrix.entries.len())
            .map(|i| {
                (0..grids.len())
                    .filter(|&g| grids[g].has_quotient(i))
                    .collect()
            })
            .collect();
        Some(Cover { grids, f })
    }

    pub fn grids(&self) -> &[Grid] {
        &self.grids
    }

    pub fn len(&self) -> usize {
        self.grids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grids.is_empty()
    }

    /// `f(K_i)`: grids whose quotient set contains `K_i`; empty for the empty
    /// quotient.
    pub fn f(&self, quotient: usize) -> &BTreeSet<usize> {
        &self.f[quotient]
    }
}

/// All covers made of exactly `k` of the given grids, in lexicographic order
/// of grid indices.
pub fn enumerate_covers<'a>(
    matrix: &'a QuotientAtomMatrix,
    grids: &'a [Grid],
    k: usize,
) -> impl Iterator<Item = Cover> + 'a {
    Combinations::new(grids.len(), k)
        .filter_map(move |chosen| Cover::new(matrix, chosen.iter().map(|&g| grids[g]).collect()))
}

/// One row of the cover-NFA construction: for each symbol `x`, the quotient
/// set `x⁻¹P` and the successor set `η_C(g, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionRow {
    pub grid: usize,
    pub quotients: BTreeSet<usize>,
    pub per_symbol: Vec<(BTreeSet<usize>, BTreeSet<usize>)>,
}

/// `η_C(g, x) = ⋂_{K_i ∈ P} f(x⁻¹K_i)` for every grid and symbol.
pub fn construction_table(cover: &Cover, quotients: &QuotientDfa) -> Vec<ConstructionRow> {
    cover
        .grids
        .iter()
        .enumerate()
        .map(|(g, grid)| {
            let members = grid.quotients();
            let per_symbol = (0..quotients.alphabet().len())
                .map(|x| {
                    let targets: BTreeSet<usize> =
                        members.iter().map(|&i| quotients.next(i, x)).collect();
                    let mut eta: Option<BTreeSet<usize>> = None;
                    for &t in &targets {
                        let f = cover.f.get(t).cloned().unwrap_or_default();
                        eta = Some(match eta {
                            None => f,
                            Some(acc) => acc.intersection(&f).copied().collect(),
                        });
                    }
                    (targets, eta.unwrap_or_default())
                })
                .collect();
            ConstructionRow {
                grid: g,
                quotients: members,
                per_symbol,
            }
        })
        .collect()
}

/// The NFA induced by a cover, and whether it accepts the language.
#[derive(Clone, Debug)]
pub struct CoverNfa {
    pub nfa: Nfa,
    pub cover: Cover,
    pub legal: bool,
}

/// Builds `N_C`: one state per grid, initial states `f(K_in)`, a grid is final
/// iff all its quotients are final, transitions by `η_C`. Legality is decided
/// by exact language equivalence with the quotient DFA.
pub fn nfa_from_cover(cover: &Cover, quotients: &QuotientDfa) -> Result<CoverNfa> {
    let names = (0..cover.len()).map(|g| format!("g{g}")).collect();
    let mut nfa = Nfa::with_names(quotients.alphabet().clone(), names);
    for row in construction_table(cover, quotients) {
        for (x, (_, eta)) in row.per_symbol.iter().enumerate() {
            for &t in eta {
                nfa.add_transition(row.grid, x, t);
            }
        }
        if row.quotients.iter().all(|&i| quotients.is_final(i)) {
            nfa.set_final(row.grid, true);
        }
    }
    for &g in cover.f(quotients.initial()) {
        nfa.set_initial(g, true);
    }
    let legal = nfa.equivalent(&quotients.dfa().to_nfa())?;
    Ok(CoverNfa {
        nfa,
        cover: cover.clone(),
        legal,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MinimizeOptions {
    /// Stop after covers of this many grids (defaults to all maximal grids).
    pub max_cover_size: Option<usize>,
    pub override_guardrails: bool,
}

/// Tries covers by maximal grids in order of increasing size and returns the
/// first legal one; its NFA is a minimal NFA of the language.
pub fn minimize_nfa(lang: &Language, options: MinimizeOptions) -> Result<CoverNfa> {
    let matrix = QuotientAtomMatrix::new(lang)?;
    let grids = maximal_grids(&matrix);
    if grids.len() > MAX_GRIDS && !options.override_guardrails {
        return Err(Error::Guardrail {
            what: "number of maximal grids",
            actual: grids.len(),
            limit: MAX_GRIDS,
        });
    }
    let limit = options
        .max_cover_size
        .unwrap_or(grids.len())
        .min(grids.len());
    for k in 1..=limit {
        for cover in enumerate_covers(&matrix, &grids, k) {
            let built = nfa_from_cover(&cover, lang.quotients())?;
            if built.legal {
                return Ok(built);
            }
        }
    }
    if limit == grids.len() {
        Err(Error::InternalInvariantViolation(
            "the cover by all maximal grids is not legal".into(),
        ))
    } else {
        Err(Error::SearchExhausted(limit))
    }
}
