//! Acceptance run: one PASS/FAIL line per criterion, with fixed limits.

mod common;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use atomlib::kameda_weiner::{construction_table, enumerate_covers};
use atomlib::{
    check_legality, has_full_atomic_nfa, is_atomic, label_name, maximal_atomic_nfa, maximal_grids,
    minimal_atomic_nfa_size, minimize_nfa, nfa_from_cover, state_atom_decomposition, Alphabet,
    AtomLabel, AtomicCandidate, AtomicEnumerator, Decomposition, EnumerationOptions, Language,
    MinimizeOptions, Nfa, QuotientAtomMatrix, QuotientDfa, Regex,
};
use common::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const LIMIT_1: Duration = Duration::from_secs(5);
const LIMIT_3: Duration = Duration::from_secs(60);
const LIMIT_6: Duration = Duration::from_secs(600);

/// Random languages in the property run, and their generator settings.
const RANDOM_REGEXES: usize = 200;
const REGEX_DEPTH: usize = 6;
const SEED: u64 = 0x5eed_a70b;
/// Bounded-word checks use every word up to this length.
const WORD_LEN: usize = 8;
/// Largest enumeration size in the legality round-trip.
const ENUMERATION_CAP: usize = 7;
/// Cap on the number of state collections examined per language.
const COLLECTION_BUDGET: u64 = 40_000_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
/// Grid quotients, then (P_a, η_a) and (P_b, η_b) for one construction row.
type Row<'a> = (
    &'a [usize],
    &'a [usize],
    &'a [usize],
    &'a [usize],
    &'a [usize],
);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

trait OrFail<T> {
    fn or_fail(self, what: &str) -> Result<T, String>;
}

impl<T, E: std::fmt::Display> OrFail<T> for Result<T, E> {
    fn or_fail(self, what: &str) -> Result<T, String> {
        self.map_err(|e| format!("{what}: {e}"))
    }
}

fn regex_lang(re: &str, alphabet: &Alphabet) -> Result<(Regex, Language), String> {
    let re = Regex::parse(re, alphabet).or_fail("parse")?;
    let l = Language::from_nfa(&re.to_nfa(alphabet)).or_fail("language")?;
    Ok((re, l))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (_, l) = regex_lang(".*ab.*", &ab())?;
    let letters = Letters::new(&l, letters_ab());
    let small = AtomicEnumerator::new(&l, EnumerationOptions::new(2)).or_fail("enumerator")?;
    ensure!(
        small.count() == 0,
        "{} candidates with at most 2 states",
        small.count()
    );

    let e = AtomicEnumerator::new(&l, EnumerationOptions::new(3)).or_fail("enumerator")?;
    let mut per_collection = BTreeMap::new();
    for c in e.collections() {
        let n = e.candidates_for(&c).count() as u64;
        if n > 0 {
            let mut names: Vec<String> = c.iter().map(|&x| label_name(x)).collect();
            names.sort();
            per_collection.insert(names.join(","), n);
        }
    }
    let name = |s: &str| {
        let mut names: Vec<String> = s.split(',').map(|w| label_name(letters.label(w))).collect();
        names.sort();
        names.join(",")
    };
    let expected: BTreeMap<String, u64> = [
        (name("A,B,C"), 1),
        (name("A,AB,C"), 8),
        (name("A,AB,AC"), 16),
        (name("A,AB,ABC"), 256),
    ]
    .into_iter()
    .collect();
    ensure!(
        per_collection == expected,
        "per-collection counts {per_collection:?}"
    );
    let total = e.count();
    ensure!(total == 281, "total {total}");
    let elapsed = start.elapsed();
    ensure!(elapsed < LIMIT_1, "took {elapsed:?}");
    Ok(format!(
        "281 = 1 + 8 + 16 + 256, none below 3 states, {elapsed:.2?} < {LIMIT_1:?}"
    ))
}

fn criterion_2() -> Outcome {
    for (label, text, expected) in [
        ("a", N_A, (false, false)),
        ("b", N_B, (true, false)),
        ("c", N_C, (true, true)),
    ] {
        let n = nfa(text);
        let got = (
            is_atomic(&n).or_fail(label)?,
            is_atomic(&n.reverse()).or_fail(label)?,
        );
        ensure!(got == expected, "N_{label}: {got:?}, expected {expected:?}");
    }
    Ok("(false, false) (true, false) (true, true)".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let l = lang(D_MP);
    let letters = Letters::new(&l, letters_mp());
    let kw = minimize_nfa(&l, MinimizeOptions::default()).or_fail("minimize")?;
    ensure!(kw.nfa.len() == 4, "minimize gave {} states", kw.nfa.len());
    let atomic_size = minimal_atomic_nfa_size(&l, false).or_fail("minimal atomic size")?;
    ensure!(atomic_size == 5, "minimal atomic size {atomic_size}");

    let m = QuotientAtomMatrix::new(&l).or_fail("matrix")?;
    let grids = maximal_grids(&m);
    let mut legal = 0;
    for cover in enumerate_covers(&m, &grids, 4) {
        let built = nfa_from_cover(&cover, l.quotients()).or_fail("cover")?;
        if built.legal {
            legal += 1;
            ensure!(
                !is_atomic(&built.nfa).or_fail("atomic")?,
                "atomic 4-state NFA from {:?}",
                cover.grids()
            );
        }
    }
    ensure!(legal > 0, "no legal 4-cover");

    let witness = mp_five_state(&letters);
    let report = check_legality(&witness, &l);
    ensure!(report.ok(), "five-state witness rejected: {report:?}");
    let n = witness.to_nfa(l.alphabet());
    ensure!(n.len() == 5, "witness has {} states", n.len());
    ensure!(is_atomic(&n).or_fail("atomic")?, "witness is not atomic");
    ensure!(
        n.equivalent(&l.to_nfa()).or_fail("equivalence")?,
        "witness not equivalent"
    );
    let elapsed = start.elapsed();
    ensure!(elapsed < LIMIT_3, "took {elapsed:?}");
    Ok(format!(
        "KW 4 states, atomic minimum 5, {legal} legal 4-covers all non-atomic, {elapsed:.2?} < {LIMIT_3:?}"
    ))
}

fn criterion_4() -> Outcome {
    let s = ab();
    let (_, l) = regex_lang(".*(b|aa)|a", &s)?;
    let letters = Letters::new(&l, letters_kw());
    ensure!(
        l.atoms().positive_count() == 3,
        "{} positive atoms",
        l.atoms().positive_count()
    );
    let atom_res = [
        ('A', Regex::parse(".*(b|aa)", &s).unwrap()),
        ('B', Regex::parse("a", &s).unwrap()),
        ('C', Regex::parse("%", &s).unwrap()),
    ];
    let decompositions = [(0, "AB"), (1, "ABC"), (2, "AC")];
    for w in words(&s, WORD_LEN) {
        let owner = l.atoms().atom_of_word(l.quotients(), &w);
        for (name, re) in &atom_res {
            ensure!(
                (owner == letters.atom(*name)) == regex_matches(re, &w),
                "atom {name} on {}",
                s.decode(&w)
            );
        }
        for (i, atoms) in decompositions {
            let in_union = atoms
                .chars()
                .any(|c| regex_matches(&atom_res.iter().find(|x| x.0 == c).unwrap().1, &w));
            ensure!(
                l.quotients().contains(i, &w) == in_union,
                "K{i} on {}",
                s.decode(&w)
            );
        }
    }
    ensure!(l.quotients().initial() == 0, "L is not K0");

    let two: Vec<AtomicCandidate> = atomlib::enumerate_atomic_nfas(&l, EnumerationOptions::new(2))
        .or_fail("enumerate")?
        .collect();
    ensure!(two.len() == 1, "{} two-state candidates", two.len());
    let one = AtomicEnumerator::new(&l, EnumerationOptions::new(1)).or_fail("enumerator")?;
    ensure!(one.count() == 0, "one-state candidate exists");

    let max = maximal_atomic_nfa(&l, false).or_fail("maximal")?;
    ensure!(max.len() == 7, "maximal has {} states", max.len());
    ensure!(check_legality(&max, &l).ok(), "maximal is not legal");
    ensure!(has_full_atomic_nfa(&l), "no full atomic NFA");
    ensure!(
        l.atoms().quotient_label(1) == l.atoms().all_positive(),
        "K1 is not the union of all positive atoms"
    );
    Ok(
        "atoms and decompositions on words <= 8, unique 2-state minimum, maximal 7 = 2^3 - 1"
            .into(),
    )
}

fn criterion_5() -> Outcome {
    let l = lang(D_MP);
    let letters = Letters::new(&l, letters_mp());
    let m = QuotientAtomMatrix::new(&l).or_fail("matrix")?;
    let table = [
        "1.1.1.", "11.1..", "11.1.1", "111...", "111.1.", "111.11", "1111..", "111111", "11111.",
    ];
    ensure!(m.rows().len() == 9 && m.columns() == 6, "matrix shape");
    for (i, row) in table.iter().enumerate() {
        for (cell, atom) in row.chars().zip("FEDCBA".chars()) {
            ensure!(
                m.get(i, letters.atom(atom)) == (cell == '1'),
                "entry K{i} {atom}"
            );
        }
    }

    let cover = mp_cover(&l, &letters);
    let built = nfa_from_cover(&cover, l.quotients()).or_fail("cover")?;
    ensure!(built.legal, "cover is not legal");

    let set = |v: &[usize]| v.iter().copied().collect::<BTreeSet<usize>>();
    let expected: [Row; 4] = [
        (&[0, 4, 5, 7, 8], &[1, 6, 7], &[1], &[2, 7], &[1, 2]),
        (&[1, 2, 6, 7, 8], &[3, 5, 6, 7], &[3], &[4, 7, 8], &[0, 3]),
        (&[2, 5, 7], &[5, 7], &[0, 2, 3], &[2, 4, 7], &[]),
        (&[3, 4, 5, 6, 7, 8], &[3, 6, 7], &[3], &[1, 2, 7, 8], &[1]),
    ];
    let rows = construction_table(&cover, l.quotients());
    ensure!(rows.len() == 4, "{} rows", rows.len());
    for (row, (p, ap, eta_a, bp, eta_b)) in rows.iter().zip(expected) {
        ensure!(row.quotients == set(p), "P of g{}", row.grid);
        ensure!(
            row.per_symbol[0] == (set(ap), set(eta_a)),
            "a-row of g{}",
            row.grid
        );
        ensure!(
            row.per_symbol[1] == (set(bp), set(eta_b)),
            "b-row of g{}",
            row.grid
        );
    }
    // η(g0, a) = f(1) ∩ f(6) ∩ f(7)
    let eta = [1, 6, 7]
        .iter()
        .map(|&q| cover.f(q).clone())
        .reduce(|x, y| &x & &y)
        .unwrap();
    ensure!(eta == set(&[1]), "f(1) & f(6) & f(7) = {eta:?}");

    let target = nfa(N_MIN);
    ensure!(
        built.nfa.transitions().eq(target.transitions())
            && built.nfa.initials() == target.initials()
            && built.nfa.finals() == target.finals(),
        "cover NFA differs from the expected 4-state NFA"
    );
    Ok("37-point matrix, legal 4-cover, construction rows and cover NFA match".into())
}

/// Shortest word reaching each quotient.
fn access_words(q: &QuotientDfa) -> Vec<Vec<usize>> {
    let mut access: Vec<Option<Vec<usize>>> = vec![None; q.len()];
    access[q.initial()] = Some(Vec::new());
    let mut queue = VecDeque::from([q.initial()]);
    while let Some(i) = queue.pop_front() {
        for a in 0..q.alphabet().len() {
            let j = q.next(i, a);
            if access[j].is_none() {
                let mut w = access[i].clone().unwrap();
                w.push(a);
                access[j] = Some(w);
                queue.push_back(j);
            }
        }
    }
    access.into_iter().map(Option::unwrap).collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Largest size up to `cap` whose collections fit in the budget.
fn enumeration_bound(labels: usize, cap: usize) -> usize {
    let mut total = 0u64;
    let mut bound = 0;
    for k in 1..=cap.min(labels) {
        total = total.saturating_add(binomial(labels as u64, k as u64));
        if total > COLLECTION_BUDGET {
            break;
        }
        bound = k;
    }
    bound
}

fn permuted(n: &Nfa, rng: &mut StdRng) -> Nfa {
    let mut order: Vec<usize> = (0..n.len()).collect();
    order.shuffle(rng);
    let mut out = Nfa::new(n.alphabet().clone(), n.len());
    for (from, a, to) in n.transitions() {
        out.add_transition(order[from], a, order[to]);
    }
    for &q in n.initials() {
        out.set_initial(order[q], true);
    }
    for &q in n.finals() {
        out.set_final(order[q], true);
    }
    out
}

#[derive(Default)]
struct Tally {
    languages: usize,
    words: usize,
    candidates: usize,
    truncated: usize,
    random_atomic: usize,
    covers: usize,
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut tally = Tally::default();
    for index in 0..RANDOM_REGEXES {
        let symbols = if rng.random_bool(0.2) { 1 } else { 2 };
        let s = Alphabet::new(['a', 'b'].into_iter().take(symbols)).unwrap();
        let re = random_regex(&mut rng, symbols, REGEX_DEPTH);
        let shown = re.display(&s);
        let ctx = |part: &str| format!("regex #{index} {shown}: {part}");
        let glushkov = re.to_nfa(&s);
        let l = Language::from_nfa(&glushkov).or_fail(&ctx("language"))?;
        tally.languages += 1;
        let q = l.quotients();
        let atoms = l.atoms();
        let at = l.atomaton().nfa();

        // (a) partition and (b) quotient reconstruction.
        let singles: Vec<Nfa> = (0..atoms.len())
            .map(|j| at.with_initials([j].into()))
            .collect();
        let access = access_words(q);
        for w in words(&s, WORD_LEN) {
            let owners: Vec<usize> = (0..atoms.len())
                .filter(|&j| singles[j].accepts(&w))
                .collect();
            ensure!(
                owners.len() == 1,
                "{}: {} owned by {owners:?}",
                ctx("partition"),
                s.decode(&w)
            );
            for (i, x) in access.iter().enumerate() {
                let xw: Vec<usize> = x.iter().chain(&w).copied().collect();
                ensure!(
                    glushkov.accepts(&xw) == atoms.descriptor(owners[0]).contains(&i),
                    "{}: K{i} on {}",
                    ctx("reconstruction"),
                    s.decode(&w)
                );
            }
            tally.words += 1;
        }

        // (c) the reversed átomaton is the determinized reversed quotient DFA, atom j
        // landing on the subset of quotients that contain it.
        let reversed = at
            .reverse()
            .as_dfa()
            .ok_or_else(|| ctx("reversed átomaton is not a DFA"))?;
        let det = q.dfa().reverse().determinize();
        let phi = reversed
            .is_isomorphic(&det.dfa)
            .ok_or_else(|| ctx("not isomorphic to the determinized reversal"))?;
        for (j, &image) in phi.iter().enumerate() {
            ensure!(
                &det.labels[image] == atoms.descriptor(j),
                "{}: atom {j}",
                ctx("phi")
            );
        }

        // (d) legality round-trip over enumerated candidates.
        let p = atoms.positive_count();
        let cap = ((1usize << p.min(10)) - 1).min(ENUMERATION_CAP);
        // The collection budget bounds the work, so the atom-count guardrail is lifted.
        let probe = AtomicEnumerator::new(
            &l,
            EnumerationOptions {
                override_guardrails: true,
                ..EnumerationOptions::new(cap)
            },
        )
        .or_fail(&ctx("enumerator"))?;
        let bound = enumeration_bound(probe.labels().len(), cap);
        if bound < cap {
            tally.truncated += 1;
        }
        let options = EnumerationOptions {
            count_transition_variants: false,
            override_guardrails: true,
            ..EnumerationOptions::new(bound)
        };
        let e = AtomicEnumerator::new(&l, options).or_fail(&ctx("enumerator"))?;
        let mut found = 0;
        for c in e.candidates() {
            let report = check_legality(&c, &l);
            ensure!(
                report.ok(),
                "{}: {report:?}",
                ctx("emitted candidate is illegal")
            );
            let n = c.to_nfa(&s);
            ensure!(n.is_trim(), "{}", ctx("candidate not trim"));
            ensure!(
                n.equivalent(&glushkov).unwrap(),
                "{}",
                ctx("candidate not equivalent")
            );
            ensure!(is_atomic(&n).unwrap(), "{}", ctx("candidate not atomic"));
            ensure!(n.is_reduced(), "{}", ctx("candidate not reduced"));
            let shuffled = permuted(&n, &mut rng);
            let d = state_atom_decomposition(&shuffled, &l).or_fail(&ctx("decomposition"))?;
            let back =
                AtomicCandidate::relabel(&shuffled, &d).ok_or_else(|| ctx("relabel failed"))?;
            ensure!(
                shape_over(&back, symbols) == shape_over(&c, symbols),
                "{}",
                ctx("relabel changed the candidate")
            );
            ensure!(
                check_legality(&back, &l).ok(),
                "{}",
                ctx("relabelled candidate is illegal")
            );
            found += 1;
        }
        let trim_atomaton = l.atomaton().trim_nfa().len();
        ensure!(
            trim_atomaton > bound || found > 0,
            "{}",
            ctx("no candidate although the átomaton fits the bound")
        );
        tally.candidates += found;

        // Converse on an unrelated random NFA: trim, reduced and atomic implies legal labels.
        let states = rng.random_range(1..=4);
        let r = random_nfa(&mut rng, &s, states, 0.35).trim();
        if !r.is_empty() && r.is_reduced() && is_atomic(&r).unwrap() {
            let lr = Language::from_nfa(&r).unwrap();
            let d = state_atom_decomposition(&r, &lr).or_fail("random decomposition")?;
            ensure!(
                d.iter().all(Decomposition::is_union),
                "random atomic NFA has a non-union state"
            );
            let c = AtomicCandidate::relabel(&r, &d).ok_or("random relabel failed")?;
            let report = check_legality(&c, &lr);
            ensure!(
                report.ok(),
                "random atomic NFA relabels illegally: {report:?}"
            );
            tally.random_atomic += 1;
        }

        // (e) Kameda–Weiner.
        let options = MinimizeOptions {
            override_guardrails: true,
            ..MinimizeOptions::default()
        };
        let kw = minimize_nfa(&l, options).or_fail(&ctx("minimize"))?;
        ensure!(kw.legal, "{}", ctx("minimize result flagged illegal"));
        ensure!(
            kw.nfa.equivalent(&glushkov).unwrap(),
            "{}",
            ctx("minimize result not equivalent")
        );
        ensure!(
            kw.nfa.len() <= q.non_empty().len(),
            "{}: {} states for {} non-empty quotients",
            ctx("minimize"),
            kw.nfa.len(),
            q.non_empty().len()
        );
        tally.covers += 1;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < LIMIT_6, "took {elapsed:?}");
    Ok(format!(
        "{} languages, {} bounded-word checks, {} candidates round-tripped ({} languages capped at {} collections), \
         {} random atomic NFAs, {} minimizations, {elapsed:.1?} < {LIMIT_6:?}",
        tally.languages,
        tally.words,
        tally.candidates,
        tally.truncated,
        COLLECTION_BUDGET,
        tally.random_atomic,
        tally.covers
    ))
}

fn criterion_7() -> Outcome {
    let l = lang(D_AB);
    let letters = Letters::new(&l, letters_ab());
    let d = state_atom_decomposition(&nfa(N_282), &l).or_fail("decomposition")?;
    ensure!(
        d[0] == Decomposition::Union(letters.set("A")),
        "state 0: {:?}",
        d[0]
    );
    ensure!(
        d[1] == Decomposition::Union(letters.set("AB")),
        "state 1: {:?}",
        d[1]
    );
    ensure!(
        matches!(d[2], Decomposition::NotAUnion(_)),
        "state 2: {:?}",
        d[2]
    );
    let met: Vec<String> = d[2]
        .atoms()
        .iter()
        .map(|&j| label_name(AtomLabel::singleton(j)))
        .collect();
    Ok(format!(
        "states 0, 1 are A and AB; state 2 meets {{{}}} but is not a union",
        met.join(",")
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("enumeration count for .*ab.*", criterion_1),
        ("atomicity of three NFAs and their reversals", criterion_2),
        ("KW minimum below the atomic minimum", criterion_3),
        ("atoms and atomic NFAs of .*(b|aa)|a", criterion_4),
        ("KW worked example", criterion_5),
        ("random-language properties", criterion_6),
        ("non-atomic state of a 3-state NFA", criterion_7),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {message}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(reason) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {reason}", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
