//! Regular expressions over a fixed alphabet.
//!
//! Syntax: `|` for union, juxtaposition for concatenation, postfix `*`,
//! parentheses, `.` for any symbol and `%` for the empty word. Whitespace is
//! ignored.

use std::collections::BTreeSet;
use std::fmt;

use crate::automaton::{Alphabet, Nfa};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Regex {
    /// The empty language. Has no concrete syntax and displays as `∅`.
    Empty,
    Epsilon,
    Symbol(usize),
    Concat(Box<Regex>, Box<Regex>),
    Union(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn parse(input: &str, alphabet: &Alphabet) -> Result<Regex> {
        let tokens: Vec<(usize, char)> = input
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let mut parser = Parser {
            tokens,
            pos: 0,
            end: input.chars().count(),
            alphabet,
        };
        let re = parser.union()?;
        match parser.peek() {
            None => Ok(re),
            Some((at, ')')) => Err(Error::Syntax {
                position: at,
                message: "unmatched ')'".into(),
            }),
            Some((at, c)) => Err(Error::Syntax {
                position: at,
                message: format!("unexpected {c:?}"),
            }),
        }
    }

    pub fn concat(a: Regex, b: Regex) -> Regex {
        Regex::Concat(Box::new(a), Box::new(b))
    }

    pub fn union(a: Regex, b: Regex) -> Regex {
        Regex::Union(Box::new(a), Box::new(b))
    }

    pub fn star(a: Regex) -> Regex {
        Regex::Star(Box::new(a))
    }

    pub fn any(alphabet: &Alphabet) -> Regex {
        (1..alphabet.len()).fold(Regex::Symbol(0), |acc, a| {
            Regex::union(acc, Regex::Symbol(a))
        })
    }

    pub fn nullable(&self) -> bool {
        match self {
            Regex::Empty | Regex::Symbol(_) => false,
            Regex::Epsilon | Regex::Star(_) => true,
            Regex::Concat(a, b) => a.nullable() && b.nullable(),
            Regex::Union(a, b) => a.nullable() || b.nullable(),
        }
    }

    /// Glushkov position automaton: state 0 is the initial state, states
    /// `1..=n` are the symbol occurrences from left to right.
    pub fn to_nfa(&self, alphabet: &Alphabet) -> Nfa {
        let mut symbols = Vec::new();
        let g = self.glushkov(&mut symbols);
        let mut nfa = Nfa::new(alphabet.clone(), symbols.len() + 1);
        nfa.set_initial(0, true);
        if g.nullable {
            nfa.set_final(0, true);
        }
        for &p in &g.last {
            nfa.set_final(p, true);
        }
        for &p in &g.first {
            nfa.add_transition(0, symbols[p - 1], p);
        }
        for (p, q) in g.follow {
            nfa.add_transition(p, symbols[q - 1], q);
        }
        nfa
    }

    fn glushkov(&self, symbols: &mut Vec<usize>) -> Positions {
        match self {
            Regex::Empty => Positions::default(),
            Regex::Epsilon => Positions {
                nullable: true,
                ..Positions::default()
            },
            Regex::Symbol(a) => {
                symbols.push(*a);
                let p = symbols.len();
                Positions {
                    nullable: false,
                    first: BTreeSet::from([p]),
                    last: BTreeSet::from([p]),
                    follow: BTreeSet::new(),
                }
            }
            Regex::Union(a, b) => {
                let x = a.glushkov(symbols);
                let y = b.glushkov(symbols);
                Positions {
                    nullable: x.nullable || y.nullable,
                    first: &x.first | &y.first,
                    last: &x.last | &y.last,
                    follow: &x.follow | &y.follow,
                }
            }
            Regex::Concat(a, b) => {
                let x = a.glushkov(symbols);
                let y = b.glushkov(symbols);
                let mut follow = &x.follow | &y.follow;
                for &p in &x.last {
                    for &q in &y.first {
                        follow.insert((p, q));
                    }
                }
                Positions {
                    nullable: x.nullable && y.nullable,
                    first: if x.nullable {
                        &x.first | &y.first
                    } else {
                        x.first
                    },
                    last: if y.nullable {
                        &x.last | &y.last
                    } else {
                        y.last
                    },
                    follow,
                }
            }
            Regex::Star(a) => {
                let mut x = a.glushkov(symbols);
                for &p in &x.last {
                    for &q in &x.first {
                        x.follow.insert((p, q));
                    }
                }
                x.nullable = true;
                x
            }
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        Shown { re: self, alphabet }
    }
}

#[derive(Default)]
struct Positions {
    nullable: bool,
    first: BTreeSet<usize>,
    last: BTreeSet<usize>,
    follow: BTreeSet<(usize, usize)>,
}

struct Parser<'a> {
    tokens: Vec<(usize, char)>,
    pos: usize,
    end: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<(usize, char)> {
        self.tokens.get(self.pos).copied()
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |(at, _)| at)
    }

    fn union(&mut self) -> Result<Regex> {
        let mut re = self.concat()?;
        while let Some((_, '|')) = self.peek() {
            self.pos += 1;
            re = Regex::union(re, self.concat()?);
        }
        Ok(re)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut re: Option<Regex> = None;
        while let Some((_, c)) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let next = self.postfix()?;
            re = Some(match re {
                None => next,
                Some(prev) => Regex::concat(prev, next),
            });
        }
        re.ok_or_else(|| Error::Syntax {
            position: self.here(),
            message: "expected an expression".into(),
        })
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut re = self.atom()?;
        while let Some((_, '*')) = self.peek() {
            self.pos += 1;
            re = Regex::star(re);
        }
        Ok(re)
    }

    fn atom(&mut self) -> Result<Regex> {
        let (at, c) = self.peek().ok_or_else(|| Error::Syntax {
            position: self.end,
            message: "unexpected end of input".into(),
        })?;
        self.pos += 1;
        match c {
            '(' => {
                let re = self.union()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.pos += 1;
                        Ok(re)
                    }
                    _ => Err(Error::Syntax {
                        position: self.here(),
                        message: "expected ')'".into(),
                    }),
                }
            }
            '%' => Ok(Regex::Epsilon),
            '.' => Ok(Regex::any(self.alphabet)),
            '*' => Err(Error::Syntax {
                position: at,
                message: "'*' has nothing to repeat".into(),
            }),
            c => self
                .alphabet
                .index_of(c)
                .map(Regex::Symbol)
                .ok_or(Error::UnknownSymbol {
                    symbol: c,
                    position: at,
                }),
        }
    }
}

struct Shown<'a> {
    re: &'a Regex,
    alphabet: &'a Alphabet,
}

impl Shown<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, re: &Regex, prec: u8) -> fmt::Result {
        // 0 = union, 1 = concatenation, 2 = star, 3 = atom
        let mine = match re {
            Regex::Union(..) => 0,
            Regex::Concat(..) => 1,
            Regex::Star(..) => 2,
            _ => 3,
        };
        let wrap = mine < prec;
        if wrap {
            write!(f, "(")?;
        }
        match re {
            Regex::Empty => write!(f, "∅")?,
            Regex::Epsilon => write!(f, "%")?,
            Regex::Symbol(a) => write!(f, "{}", self.alphabet.symbol(*a))?,
            Regex::Union(a, b) => {
                self.write(f, a, 0)?;
                write!(f, "|")?;
                self.write(f, b, 1)?;
            }
            Regex::Concat(a, b) => {
                self.write(f, a, 1)?;
                self.write(f, b, 2)?;
            }
            Regex::Star(a) => {
                self.write(f, a, 3)?;
                write!(f, "*")?;
            }
        }
        if wrap {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.re, 0)
    }
}
