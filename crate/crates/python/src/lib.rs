//! Python bindings: `Nfa` and `Language` classes.

use atomlib_core as core;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A nondeterministic automaton over a finite alphabet.
#[pyclass(name = "Nfa", module = "atomlib")]
struct PyNfa {
    inner: core::Nfa,
}

#[pymethods]
impl PyNfa {
    /// Parse the line-oriented automaton format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyNfa {
            inner: core::parse_nfa(text).map_err(err)?,
        })
    }

    /// Glushkov automaton of a regular expression; `alphabet` is space-separated.
    #[staticmethod]
    fn from_regex(regex: &str, alphabet: &str) -> PyResult<Self> {
        let alphabet = core::Alphabet::parse(alphabet).map_err(err)?;
        let re = core::Regex::parse(regex, &alphabet).map_err(err)?;
        Ok(PyNfa {
            inner: re.to_nfa(&alphabet),
        })
    }

    fn to_text(&self) -> String {
        core::write_nfa(&self.inner)
    }

    #[pyo3(signature = (title = "automaton"))]
    fn to_dot(&self, title: &str) -> String {
        core::to_dot(&self.inner, title)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Nfa(states={}, transitions={})",
            self.inner.len(),
            self.inner.transition_count()
        )
    }

    fn __eq__(&self, other: &PyNfa) -> bool {
        self.inner == other.inner
    }

    #[getter]
    fn alphabet(&self) -> Vec<char> {
        self.inner.alphabet().symbols().to_vec()
    }

    #[getter]
    fn states(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    #[getter]
    fn initials(&self) -> Vec<usize> {
        self.inner.initials().iter().copied().collect()
    }

    #[getter]
    fn finals(&self) -> Vec<usize> {
        self.inner.finals().iter().copied().collect()
    }

    /// `(from, symbol, to)` triples, symbols as characters.
    fn transitions(&self) -> Vec<(usize, char, usize)> {
        let alphabet = self.inner.alphabet();
        self.inner
            .transitions()
            .map(|(p, a, q)| (p, alphabet.symbol(a), q))
            .collect()
    }

    fn accepts(&self, word: &str) -> PyResult<bool> {
        self.inner.accepts_str(word).map_err(err)
    }

    fn reverse(&self) -> Self {
        PyNfa {
            inner: self.inner.reverse(),
        }
    }

    /// Subset construction, reachable subsets only.
    fn determinize(&self) -> Self {
        PyNfa {
            inner: self.inner.determinize().dfa.to_nfa(),
        }
    }

    fn trim(&self) -> Self {
        PyNfa {
            inner: self.inner.trim(),
        }
    }

    fn minimal_dfa(&self) -> Self {
        PyNfa {
            inner: self.inner.minimal_dfa().to_nfa(),
        }
    }

    fn equivalent(&self, other: &PyNfa) -> PyResult<bool> {
        self.inner.equivalent(&other.inner).map_err(err)
    }

    fn is_trim(&self) -> bool {
        self.inner.is_trim()
    }

    fn is_reduced(&self) -> bool {
        self.inner.is_reduced()
    }

    fn is_atomic(&self) -> PyResult<bool> {
        core::is_atomic(&self.inner).map_err(err)
    }
}

/// A non-empty regular language with its quotients and atoms.
#[pyclass(name = "Language", module = "atomlib")]
struct PyLanguage {
    inner: core::Language,
}

impl PyLanguage {
    fn candidate_nfa(&self, c: &core::AtomicCandidate) -> PyNfa {
        PyNfa {
            inner: c.to_nfa(self.inner.alphabet()),
        }
    }
}

#[pymethods]
impl PyLanguage {
    #[new]
    fn new(nfa: &PyNfa) -> PyResult<Self> {
        Ok(PyLanguage {
            inner: core::Language::from_nfa(&nfa.inner).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_regex(regex: &str, alphabet: &str) -> PyResult<Self> {
        Self::new(&PyNfa::from_regex(regex, alphabet)?)
    }

    fn quotient_count(&self) -> usize {
        self.inner.quotients().len()
    }

    fn quotient_dfa(&self) -> PyNfa {
        PyNfa {
            inner: self.inner.quotients().dfa().to_nfa(),
        }
    }

    /// Atom names with the quotient indices each one lies in.
    fn atoms(&self) -> Vec<(String, Vec<usize>)> {
        let atoms = self.inner.atoms();
        (0..atoms.len())
            .map(|j| {
                let descriptor = atoms.descriptor(j).iter().copied().collect();
                (core::atom_name(j), descriptor)
            })
            .collect()
    }

    fn positive_atom_count(&self) -> usize {
        self.inner.positive_count()
    }

    fn has_negative_atom(&self) -> bool {
        self.inner.atoms().has_negative()
    }

    /// Atom names whose union is quotient `index`.
    fn quotient_atoms(&self, index: usize) -> PyResult<Vec<String>> {
        if index >= self.inner.quotients().len() {
            return Err(PyValueError::new_err(format!("no quotient {index}")));
        }
        let label = self.inner.atoms().quotient_label(index);
        Ok(label.iter().map(core::atom_name).collect())
    }

    fn atomaton(&self) -> PyNfa {
        PyNfa {
            inner: self.inner.atomaton().nfa().clone(),
        }
    }

    /// Per state of `nfa`: whether its right language is a union of atoms,
    /// and the atoms it meets.
    fn decompose(&self, nfa: &PyNfa) -> PyResult<Vec<(bool, Vec<String>)>> {
        let d = core::state_atom_decomposition(&nfa.inner, &self.inner).map_err(err)?;
        Ok(d.iter()
            .map(|d| {
                (
                    d.is_union(),
                    d.atoms().iter().map(|&j| core::atom_name(j)).collect(),
                )
            })
            .collect())
    }

    #[pyo3(signature = (override_guardrails = false))]
    fn maximal_atomic_nfa(&self, override_guardrails: bool) -> PyResult<PyNfa> {
        let c = core::maximal_atomic_nfa(&self.inner, override_guardrails).map_err(err)?;
        Ok(self.candidate_nfa(&c))
    }

    #[pyo3(signature = (override_guardrails = false))]
    fn minimal_atomic_nfa_size(&self, override_guardrails: bool) -> PyResult<usize> {
        core::minimal_atomic_nfa_size(&self.inner, override_guardrails).map_err(err)
    }

    #[pyo3(signature = (max_states, maximal_only = false, override_guardrails = false))]
    fn count_atomic_nfas(
        &self,
        max_states: usize,
        maximal_only: bool,
        override_guardrails: bool,
    ) -> PyResult<u64> {
        let options = core::EnumerationOptions {
            max_states,
            count_transition_variants: !maximal_only,
            override_guardrails,
        };
        Ok(core::AtomicEnumerator::new(&self.inner, options)
            .map_err(err)?
            .count())
    }

    #[pyo3(signature = (max_states, maximal_only = false, override_guardrails = false))]
    fn enumerate_atomic_nfas(
        &self,
        max_states: usize,
        maximal_only: bool,
        override_guardrails: bool,
    ) -> PyResult<Vec<PyNfa>> {
        let options = core::EnumerationOptions {
            max_states,
            count_transition_variants: !maximal_only,
            override_guardrails,
        };
        let candidates = core::enumerate_atomic_nfas(&self.inner, options).map_err(err)?;
        Ok(candidates.map(|c| self.candidate_nfa(&c)).collect())
    }

    /// Kameda-Weiner minimal NFA.
    #[pyo3(signature = (max_cover_size = None, override_guardrails = false))]
    fn minimize(
        &self,
        max_cover_size: Option<usize>,
        override_guardrails: bool,
    ) -> PyResult<PyNfa> {
        let options = core::MinimizeOptions {
            max_cover_size,
            override_guardrails,
        };
        let result = core::minimize_nfa(&self.inner, options).map_err(err)?;
        Ok(PyNfa { inner: result.nfa })
    }
}

#[pymodule]
fn atomlib(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNfa>()?;
    m.add_class::<PyLanguage>()?;
    Ok(())
}
