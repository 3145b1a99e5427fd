use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use atomlib::{
    atom_name, enumerate_atomic_nfas, is_atomic, label_name, maximal_atomic_nfa,
    minimal_atomic_nfa_size, minimize_nfa, parse_nfa, state_atom_decomposition, to_dot, write_nfa,
    Alphabet, Decomposition, EnumerationOptions, Language, MinimizeOptions, Nfa, Regex,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "atomlib",
    version,
    about = "Quotients, atoms, atomic NFAs and NFA minimization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Regular expression: `|`, juxtaposition, postfix `*`, `.` for any symbol, `%` for the empty word.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    regex: Option<String>,

    /// Automaton file.
    #[arg(long)]
    file: Option<PathBuf>,

    /// Space-separated symbols; required with --regex.
    #[arg(long, requires = "regex")]
    alphabet: Option<String>,
}

#[derive(Args)]
struct Output {
    /// Also write the resulting automaton as Graphviz DOT.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the quotients and atoms with their descriptors.
    Atoms {
        #[command(flatten)]
        input: Input,
    },
    /// Print the átomaton.
    Atomaton {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Decide atomicity and decompose each state into atoms.
    IsAtomic {
        #[command(flatten)]
        input: Input,
        /// Exit with status 1 when the automaton is not atomic.
        #[arg(long)]
        strict: bool,
    },
    /// Print the maximal trim reduced atomic NFA.
    MaxAtomic {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        #[arg(long)]
        override_guardrails: bool,
    },
    /// Enumerate trim reduced atomic NFAs up to a number of states.
    EnumerateAtomic {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "K")]
        max_states: usize,
        /// Print only the number of candidates.
        #[arg(long)]
        count_only: bool,
        /// Emit only the subset-maximal initial and transition sets per state collection.
        #[arg(long)]
        maximal_only: bool,
        #[arg(long)]
        override_guardrails: bool,
    },
    /// Minimal NFA by the Kameda-Weiner cover search.
    Minimize {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        /// Give up after covers of this many grids.
        #[arg(long, value_name = "K")]
        max_cover: Option<usize>,
        #[arg(long)]
        override_guardrails: bool,
    },
    /// A minimal trim reduced atomic NFA.
    MinimizeAtomic {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        #[arg(long)]
        override_guardrails: bool,
    },
    /// Decide whether two automaton files accept the same language.
    Equiv {
        file1: PathBuf,
        file2: PathBuf,
        /// Exit with status 1 when the languages differ.
        #[arg(long)]
        strict: bool,
    },
    /// Print the input automaton as Graphviz DOT.
    Dot {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
}

enum Failure {
    /// Bad input: exit status 2.
    Input(String),
    /// A negative verdict under --strict: exit status 1.
    Negative,
}

impl From<atomlib::Error> for Failure {
    fn from(e: atomlib::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Run = Result<String, Failure>;

fn read_file(path: &Path) -> Result<Nfa, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_nfa(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

impl Input {
    fn nfa(&self) -> Result<Nfa, Failure> {
        match (&self.regex, &self.file) {
            (Some(re), _) => {
                let spec = self
                    .alphabet
                    .as_deref()
                    .ok_or_else(|| Failure::Input("--alphabet is required with --regex".into()))?;
                let alphabet = Alphabet::parse(spec)?;
                Ok(Regex::parse(re, &alphabet)?.to_nfa(&alphabet))
            }
            (None, Some(path)) => read_file(path),
            (None, None) => Err(Failure::Input(
                "one of --regex or --file is required".into(),
            )),
        }
    }

    fn language(&self) -> Result<Language, Failure> {
        Ok(Language::from_nfa(&self.nfa()?)?)
    }
}

impl Output {
    fn emit(&self, nfa: &Nfa, title: &str) -> Result<(), Failure> {
        if let Some(path) = &self.dot {
            fs::write(path, to_dot(nfa, title))
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    }
}

fn set_of(items: impl IntoIterator<Item = String>) -> String {
    format!("{{{}}}", items.into_iter().collect::<Vec<_>>().join(", "))
}

fn atoms_report(l: &Language) -> String {
    let q = l.quotients();
    let atoms = l.atoms();
    let mut out = String::new();
    writeln!(out, "quotients: {}", q.len()).unwrap();
    for i in 0..q.len() {
        let mut tags = Vec::new();
        if i == q.initial() {
            tags.push("initial");
        }
        if q.is_final(i) {
            tags.push("final");
        }
        if q.empty_quotient() == Some(i) {
            tags.push("empty");
        }
        let union: Vec<String> = atoms.quotient_label(i).iter().map(atom_name).collect();
        let union = if union.is_empty() {
            "∅".to_string()
        } else {
            union.join(" ∪ ")
        };
        let tags = if tags.is_empty() {
            String::new()
        } else {
            format!("  ({})", tags.join(", "))
        };
        writeln!(out, "  K{i} = {union}{tags}").unwrap();
    }
    let negative = if atoms.has_negative() {
        "present"
    } else {
        "absent"
    };
    writeln!(
        out,
        "atoms: {} positive, negative atom {negative}",
        atoms.positive_count()
    )
    .unwrap();
    for j in 0..atoms.len() {
        let mut tags = Vec::new();
        if atoms.initial_atoms().contains(&j) {
            tags.push("initial");
        }
        if atoms.final_atom() == j {
            tags.push("final");
        }
        if atoms.negative() == Some(j) {
            tags.push("negative");
        }
        let descriptor = set_of(atoms.descriptor(j).iter().map(|i| format!("K{i}")));
        let tags = if tags.is_empty() {
            String::new()
        } else {
            format!("  ({})", tags.join(", "))
        };
        writeln!(out, "  {} = {descriptor}{tags}", atom_name(j)).unwrap();
    }
    out
}

fn is_atomic_report(n: &Nfa, strict: bool) -> Run {
    let l = Language::from_nfa(n)?;
    let atomic = is_atomic(n)?;
    let mut out = format!("atomic: {atomic}\n");
    for (q, d) in state_atom_decomposition(n, &l)?.iter().enumerate() {
        let names = d.atoms().iter().map(|&j| atom_name(j));
        let line = match d {
            Decomposition::Union(_) if d.atoms().is_empty() => "∅".to_string(),
            Decomposition::Union(_) => names.collect::<Vec<_>>().join(" ∪ "),
            Decomposition::NotAUnion(_) => format!("not a union of atoms; meets {}", set_of(names)),
        };
        writeln!(out, "  {}: {line}", n.name(q)).unwrap();
    }
    if strict && !atomic {
        print!("{out}");
        return Err(Failure::Negative);
    }
    Ok(out)
}

fn run(command: Command) -> Run {
    match command {
        Command::Atoms { input } => Ok(atoms_report(&input.language()?)),
        Command::Atomaton { input, output } => {
            let l = input.language()?;
            let at = l.atomaton().nfa();
            output.emit(at, "atomaton")?;
            Ok(write_nfa(at))
        }
        Command::IsAtomic { input, strict } => is_atomic_report(&input.nfa()?, strict),
        Command::MaxAtomic {
            input,
            output,
            override_guardrails,
        } => {
            let l = input.language()?;
            let nfa = maximal_atomic_nfa(&l, override_guardrails)?.to_nfa(l.alphabet());
            output.emit(&nfa, "maximal atomic NFA")?;
            Ok(format!("# {} states\n{}", nfa.len(), write_nfa(&nfa)))
        }
        Command::EnumerateAtomic {
            input,
            max_states,
            count_only,
            maximal_only,
            override_guardrails,
        } => {
            let l = input.language()?;
            let options = EnumerationOptions {
                max_states,
                count_transition_variants: !maximal_only,
                override_guardrails,
            };
            let candidates = enumerate_atomic_nfas(&l, options)?;
            if count_only {
                return Ok(format!("{}\n", candidates.count()));
            }
            let blocks: Vec<String> = candidates
                .map(|c| write_nfa(&c.to_nfa(l.alphabet())))
                .collect();
            Ok(blocks.join("\n"))
        }
        Command::Minimize {
            input,
            output,
            max_cover,
            override_guardrails,
        } => {
            let l = input.language()?;
            let options = MinimizeOptions {
                max_cover_size: max_cover,
                override_guardrails,
            };
            let result = minimize_nfa(&l, options)?;
            output.emit(&result.nfa, "minimal NFA")?;
            let mut out = format!("# {} states\n", result.nfa.len());
            for (i, g) in result.cover.grids().iter().enumerate() {
                let quotients = set_of(g.quotients().iter().map(|q| format!("K{q}")));
                writeln!(out, "# g{i} = {quotients} x {}", label_name(g.atoms())).unwrap();
            }
            Ok(out + &write_nfa(&result.nfa))
        }
        Command::MinimizeAtomic {
            input,
            output,
            override_guardrails,
        } => {
            let l = input.language()?;
            let size = minimal_atomic_nfa_size(&l, override_guardrails)?;
            let options = EnumerationOptions {
                max_states: size,
                count_transition_variants: false,
                override_guardrails,
            };
            let first = enumerate_atomic_nfas(&l, options)?
                .next()
                .ok_or_else(|| Failure::Input("no atomic NFA found".into()))?;
            let nfa = first.to_nfa(l.alphabet());
            output.emit(&nfa, "minimal atomic NFA")?;
            Ok(format!("# {} states\n{}", nfa.len(), write_nfa(&nfa)))
        }
        Command::Equiv {
            file1,
            file2,
            strict,
        } => {
            let equivalent = read_file(&file1)?.equivalent(&read_file(&file2)?)?;
            let out = format!("equivalent: {equivalent}\n");
            if strict && !equivalent {
                print!("{out}");
                return Err(Failure::Negative);
            }
            Ok(out)
        }
        Command::Dot { input, output } => {
            let nfa = input.nfa()?;
            let dot = to_dot(&nfa, "automaton");
            match &output.dot {
                Some(_) => {
                    output.emit(&nfa, "automaton")?;
                    Ok(String::new())
                }
                None => Ok(dot),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
