//! Checking equational derivations.
//!
//! Terms are kept modulo associativity and commutativity of `+` and
//! associativity of `·`, which is exactly what [`TermSum`] represents. A proof
//! step names an axiom, a direction, a substitution and an explicit site, so
//! checking never has to guess a match.

pub mod axioms;
pub mod script;
pub mod search;

use std::fmt;

use crate::term::{ParseError, TermSum, Variable, MAX_REPEAT};

pub use axioms::{Axiom, AxiomSet};
pub use script::{apply_step, check_script, Direction, ProofError, ProofScript, RewriteStep, Verdict};
pub use search::{bounded_search, SearchError, SearchLimits};

/// A term as written, before flattening.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(Variable),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

impl Term {
    pub fn parse(text: &str) -> Result<Term, ParseError> {
        let mut p = TreeParser { src: text.as_bytes(), pos: 0 };
        let t = p.sum()?;
        match p.peek() {
            None => Ok(t),
            Some(c) => Err(ParseError::new(p.pos, format!("unexpected {:?}", c as char))),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Add(a, b) => write!(f, "({a} + {b})"),
            Term::Mul(a, b) => write!(f, "({a}{b})"),
        }
    }
}

/// Flattens products and sorts summands.
pub fn ac_normal(t: &Term) -> TermSum {
    match t {
        Term::Var(v) => TermSum::var(v.clone()),
        Term::Add(a, b) => ac_normal(a).add(&ac_normal(b)),
        Term::Mul(a, b) => ac_normal(a).mul(&ac_normal(b)),
    }
}

/// Parses a term with parentheses, powers and coefficients and flattens it.
pub fn parse_flat(text: &str) -> Result<TermSum, ParseError> {
    Term::parse(text).map(|t| ac_normal(&t))
}

/// Parses `lhs ~ rhs` where either side may use parentheses.
pub fn parse_flat_identity(text: &str) -> Result<crate::term::Identity, ParseError> {
    let split = text.find(['~', '=']).ok_or_else(|| ParseError::new(text.len(), "expected '~' or '='"))?;
    let lhs = parse_flat(&text[..split])?;
    let rhs = parse_flat(&text[split + 1..]).map_err(|e| ParseError::new(e.position + split + 1, e.message))?;
    Ok(crate::term::Identity::new(lhs, rhs))
}

struct TreeParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TreeParser<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn err(&self, m: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, m)
    }

    fn integer(&mut self) -> Result<u32, ParseError> {
        self.peek();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match text.parse::<u32>() {
            Ok(n) if n > 0 && n <= MAX_REPEAT && !text.starts_with('0') => Ok(n),
            _ => Err(ParseError::new(start, format!("bad integer {text:?}"))),
        }
    }

    fn sum(&mut self) -> Result<Term, ParseError> {
        let mut t = self.product()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            t = Term::Add(Box::new(t), Box::new(self.product()?));
        }
        Ok(t)
    }

    fn product(&mut self) -> Result<Term, ParseError> {
        let coefficient = match self.peek() {
            Some(c) if c.is_ascii_digit() => Some(self.integer()?),
            _ => None,
        };
        let mut t = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    t = Term::Mul(Box::new(t), Box::new(self.power()?));
                }
                Some(c) if c == b'(' || c.is_ascii_lowercase() => t = Term::Mul(Box::new(t), Box::new(self.power()?)),
                _ => break,
            }
        }
        Ok(match coefficient {
            Some(k) => repeat(t, k, Term::Add),
            None => t,
        })
    }

    fn power(&mut self) -> Result<Term, ParseError> {
        let t = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.integer()?;
            return Ok(repeat(t, k, Term::Mul));
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(t)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                self.pos += 1;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Variable::new(name).map(Term::Var).map_err(|e| ParseError::new(start + e.position, e.message))
            }
            Some(c) => Err(self.err(format!("expected a term, found {:?}", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn repeat(t: Term, k: u32, op: fn(Box<Term>, Box<Term>) -> Term) -> Term {
    let mut out = t.clone();
    for _ in 1..k {
        out = op(Box::new(out), Box::new(t.clone()));
    }
    out
}
