//! Syntax of semiring terms over the signature `{+, ·}`.
//!
//! A term is kept in its flattened form: a finite multiset of words over the
//! variables ([`TermSum`] of [`Monomial`]s). Every semiring term can be brought
//! into this shape with associativity of `·`, commutativity and associativity
//! of `+`, and the two distributive laws, so the flattened form is all the rest
//! of the crate ever needs.
//!
//! The textual syntax is
//!
//! ```text
//! identity := sum ("~" | "=") sum ;
//! sum      := addend { "+" addend } ;
//! addend   := [ integer ] monomial ;
//! monomial := factor { [ "*" ] factor } ;
//! factor   := variable [ "^" integer ] ;
//! variable := lowercase-letter { digit } ;
//! integer  := nonzero-digit { digit } ;
//! ```

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Upper bound on coefficients and exponents accepted by the parser.
pub const MAX_REPEAT: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError { position, message: message.into() }
    }
}

/// A variable: a lowercase letter followed by optional digits (`x`, `y2`, `z10`).
///
/// Variables are ordered by letter, then numerically by their digit suffix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    letter: u8,
    digits: Box<str>,
}

impl Variable {
    pub fn new(name: &str) -> Result<Self, ParseError> {
        let bytes = name.as_bytes();
        match bytes.first() {
            Some(c) if c.is_ascii_lowercase() => {}
            _ => return Err(ParseError::new(0, format!("invalid variable name {name:?}"))),
        }
        if let Some(pos) = bytes[1..].iter().position(|b| !b.is_ascii_digit()) {
            return Err(ParseError::new(pos + 1, format!("invalid variable name {name:?}")));
        }
        Ok(Variable { letter: bytes[0], digits: name[1..].into() })
    }

    /// Shorthand for single-letter variables; panics on anything else.
    pub fn letter(c: char) -> Self {
        assert!(c.is_ascii_lowercase(), "not a lowercase letter: {c:?}");
        Variable { letter: c as u8, digits: "".into() }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl Ord for Variable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letter
            .cmp(&other.letter)
            .then(self.digits.len().cmp(&other.digits.len()))
            .then(self.digits.cmp(&other.digits))
    }
}

impl PartialOrd for Variable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter as char, self.digits)
    }
}

impl FromStr for Variable {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variable::new(s)
    }
}

/// A nonempty word over the variables, i.e. an element of the free semigroup.
///
/// Monomials are totally ordered by length first, then lexicographically by
/// letters; this is the order used for canonical printing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<Variable>);

impl Monomial {
    pub fn new(letters: Vec<Variable>) -> Option<Self> {
        if letters.is_empty() {
            None
        } else {
            Some(Monomial(letters))
        }
    }

    pub fn var(v: Variable) -> Self {
        Monomial(vec![v])
    }

    /// Parses a single monomial such as `x^2y`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut p = Parser::new(text);
        let m = p.monomial()?;
        p.expect_end()?;
        Ok(m)
    }

    pub fn letters(&self) -> &[Variable] {
        &self.0
    }

    pub fn head(&self) -> &Variable {
        &self.0[0]
    }

    pub fn tail(&self) -> &Variable {
        &self.0[self.0.len() - 1]
    }

    pub fn content(&self) -> BTreeSet<Variable> {
        self.0.iter().cloned().collect()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn product(&self, other: &Monomial) -> Monomial {
        let mut letters = self.0.clone();
        letters.extend(other.0.iter().cloned());
        Monomial(letters)
    }

    /// `self` repeated `k` times as a word; `k` must be positive.
    pub fn power(&self, k: usize) -> Monomial {
        assert!(k > 0, "zero power of a monomial");
        Monomial((0..k).flat_map(|_| self.0.iter().cloned()).collect())
    }

    pub fn rename(&self, f: &impl Fn(&Variable) -> Variable) -> Monomial {
        Monomial(self.0.iter().map(f).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        while i < self.0.len() {
            let v = &self.0[i];
            let run = self.0[i..].iter().take_while(|w| *w == v).count();
            if run >= 2 {
                write!(f, "{v}^{run}")?;
            } else {
                write!(f, "{v}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// A nonempty finite multiset of monomials, `u₁ + ⋯ + u_m`.
///
/// The multiset is stored sorted by the canonical monomial order, so two sums
/// that differ only by reordering of summands are equal values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermSum {
    terms: BTreeMap<Monomial, u32>,
}

impl TermSum {
    /// Builds a sum from `(monomial, multiplicity)` pairs. Zero multiplicities are
    /// dropped; returns `None` if nothing remains.
    pub fn from_counts(items: impl IntoIterator<Item = (Monomial, u32)>) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (m, k) in items {
            if k > 0 {
                *terms.entry(m).or_insert(0) += k;
            }
        }
        if terms.is_empty() {
            None
        } else {
            Some(TermSum { terms })
        }
    }

    pub fn from_monomials(items: impl IntoIterator<Item = Monomial>) -> Option<Self> {
        Self::from_counts(items.into_iter().map(|m| (m, 1)))
    }

    pub fn monomial(m: Monomial) -> Self {
        TermSum { terms: BTreeMap::from([(m, 1)]) }
    }

    pub fn var(v: Variable) -> Self {
        Self::monomial(Monomial::var(v))
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut p = Parser::new(text);
        let s = p.sum()?;
        p.expect_end()?;
        Ok(s)
    }

    /// Distinct monomials with their multiplicities, in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().map(|(m, k)| (m, *k))
    }

    /// Summands with repetition, in canonical order. Index `i` of this list is
    /// the `i`-th summand as addressed by proof steps.
    pub fn summands(&self) -> Vec<&Monomial> {
        self.terms
            .iter()
            .flat_map(|(m, k)| std::iter::repeat(m).take(*k as usize))
            .collect()
    }

    /// Total number of summands `m`, counted with multiplicity.
    pub fn summand_count(&self) -> usize {
        self.terms.values().map(|k| *k as usize).sum()
    }

    pub fn distinct_count(&self) -> usize {
        self.terms.len()
    }

    /// Total number of letters over all summands, with multiplicity.
    pub fn size(&self) -> usize {
        self.terms.iter().map(|(m, k)| m.len() * *k as usize).sum()
    }

    pub fn occ(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn sum_content(&self) -> BTreeSet<Variable> {
        self.terms.keys().flat_map(|m| m.letters().iter().cloned()).collect()
    }

    pub fn sum_heads(&self) -> BTreeSet<Variable> {
        self.terms.keys().map(|m| m.head().clone()).collect()
    }

    pub fn sum_tails(&self) -> BTreeSet<Variable> {
        self.terms.keys().map(|m| m.tail().clone()).collect()
    }

    pub fn as_single_monomial(&self) -> Option<&Monomial> {
        match self.terms.iter().next() {
            Some((m, 1)) if self.terms.len() == 1 => Some(m),
            _ => None,
        }
    }

    pub fn as_variable(&self) -> Option<&Variable> {
        self.as_single_monomial().filter(|m| m.len() == 1).map(|m| m.head())
    }

    pub fn add(&self, other: &TermSum) -> TermSum {
        let mut terms = self.terms.clone();
        for (m, k) in &other.terms {
            *terms.entry(m.clone()).or_insert(0) += k;
        }
        TermSum { terms }
    }

    /// `k·self`, i.e. every multiplicity scaled by `k > 0`.
    pub fn scale(&self, k: u32) -> TermSum {
        assert!(k > 0, "zero multiple of a sum");
        TermSum { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    /// Product expanded by both distributive laws.
    pub fn mul(&self, other: &TermSum) -> TermSum {
        let mut terms = BTreeMap::new();
        for (a, i) in &self.terms {
            for (b, j) in &other.terms {
                *terms.entry(a.product(b)).or_insert(0) += i * j;
            }
        }
        TermSum { terms }
    }

    /// Multiset difference `self - other`; `None` if `other` is not contained in
    /// `self`. The result may be empty, hence the inner `Option`.
    pub fn checked_sub(&self, other: &TermSum) -> Option<Option<TermSum>> {
        let mut terms = self.terms.clone();
        for (m, k) in &other.terms {
            let c = terms.get_mut(m)?;
            if *c < *k {
                return None;
            }
            *c -= k;
            if *c == 0 {
                terms.remove(m);
            }
        }
        Some(if terms.is_empty() { None } else { Some(TermSum { terms }) })
    }

    /// Substitutes a sum for each variable and flattens the result.
    /// Variables missing from `map` are left in place.
    pub fn substitute(&self, map: &BTreeMap<Variable, TermSum>) -> TermSum {
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, k) in &self.terms {
            let mut prod: Option<TermSum> = None;
            for v in m.letters() {
                let image = map.get(v).cloned().unwrap_or_else(|| TermSum::var(v.clone()));
                prod = Some(match prod {
                    None => image,
                    Some(p) => p.mul(&image),
                });
            }
            for (mm, kk) in prod.expect("monomials are nonempty").terms {
                *acc.entry(mm).or_insert(0) += kk * k;
            }
        }
        TermSum { terms: acc }
    }

    pub fn rename(&self, f: &impl Fn(&Variable) -> Variable) -> TermSum {
        TermSum::from_counts(self.terms.iter().map(|(m, k)| (m.rename(f), *k)))
            .expect("renaming preserves nonemptiness")
    }
}

impl fmt::Display for TermSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (m, k)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *k >= 2 {
                write!(f, "{k}")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for TermSum {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TermSum::parse(s)
    }
}

/// A formal equation `lhs ≈ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Identity {
    pub lhs: TermSum,
    pub rhs: TermSum,
}

impl Identity {
    pub fn new(lhs: TermSum, rhs: TermSum) -> Self {
        Identity { lhs, rhs }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_identity(text)
    }

    /// Variables of both sides, sorted.
    pub fn variables(&self) -> BTreeSet<Variable> {
        let mut vars = self.lhs.sum_content();
        vars.extend(self.rhs.sum_content());
        vars
    }

    pub fn reversed(&self) -> Identity {
        Identity { lhs: self.rhs.clone(), rhs: self.lhs.clone() }
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn rename(&self, f: &impl Fn(&Variable) -> Variable) -> Identity {
        Identity { lhs: self.lhs.rename(f), rhs: self.rhs.rename(f) }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ~ {}", self.lhs, self.rhs)
    }
}

impl FromStr for Identity {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_identity(s)
    }
}

pub fn parse_identity(text: &str) -> Result<Identity, ParseError> {
    let mut p = Parser::new(text);
    let lhs = p.sum()?;
    p.skip_ws();
    match p.peek() {
        Some(b'~') | Some(b'=') => p.pos += 1,
        Some(c) => return Err(p.error(format!("expected '~' or '=', found {:?}", c as char))),
        None => return Err(p.error("expected '~' or '=', found end of input")),
    }
    let rhs = p.sum()?;
    p.expect_end()?;
    Ok(Identity { lhs, rhs })
}

/// Canonical text of an identity.
pub fn render(id: &Identity) -> String {
    id.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected {:?}", c as char))),
        }
    }

    fn integer(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'0') {
            return Err(self.error("integers may not start with 0"));
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse::<u32>() {
            Ok(n) if n <= MAX_REPEAT => Ok(n),
            _ => Err(ParseError::new(start, format!("integer {text} exceeds {MAX_REPEAT}"))),
        }
    }

    fn variable(&mut self) -> Result<Variable, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_lowercase() => self.pos += 1,
            Some(c) => return Err(self.error(format!("expected a variable, found {:?}", *c as char))),
            None => return Err(self.error("expected a variable, found end of input")),
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Variable::new(name).map_err(|e| ParseError::new(start + e.position, e.message))
    }

    fn factor(&mut self, out: &mut Vec<Variable>) -> Result<(), ParseError> {
        let v = self.variable()?;
        let exp = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.integer()?
        } else {
            1
        };
        out.extend(std::iter::repeat(v).take(exp as usize));
        if out.len() > MAX_REPEAT as usize {
            return Err(self.error(format!("monomial longer than {MAX_REPEAT} letters")));
        }
        Ok(())
    }

    fn monomial(&mut self) -> Result<Monomial, ParseError> {
        let mut letters = Vec::new();
        self.factor(&mut letters)?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.factor(&mut letters)?;
                }
                Some(c) if c.is_ascii_lowercase() => self.factor(&mut letters)?,
                _ => break,
            }
        }
        Ok(Monomial(letters))
    }

    fn addend(&mut self) -> Result<(Monomial, u32), ParseError> {
        let coefficient = match self.peek() {
            Some(c) if c.is_ascii_digit() => self.integer()?,
            Some(c) if c.is_ascii_lowercase() => 1,
            Some(c) => return Err(self.error(format!("expected a term, found {:?}", c as char))),
            None => return Err(self.error("empty side")),
        };
        Ok((self.monomial()?, coefficient))
    }

    fn sum(&mut self) -> Result<TermSum, ParseError> {
        let mut items = vec![self.addend()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            items.push(self.addend()?);
        }
        Ok(TermSum::from_counts(items).expect("at least one addend with positive coefficient"))
    }
}

/// Normal form of a single monomial modulo the identities of **Sr**(2):
/// a bare variable stays itself, longer words collapse to head, content and tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonoNf {
    Bare(Variable),
    Shape { head: Variable, content: BTreeSet<Variable>, tail: Variable },
}

pub fn mono_normal_form(m: &Monomial) -> MonoNf {
    if m.len() == 1 {
        MonoNf::Bare(m.head().clone())
    } else {
        MonoNf::Shape { head: m.head().clone(), content: m.content(), tail: m.tail().clone() }
    }
}

/// Replaces every variable `x` by `x + x` on both sides and flattens.
///
/// A monomial of length `ℓ` with multiplicity `k` becomes the same monomial
/// with multiplicity `k·2^ℓ`.
pub fn hat_identity(id: &Identity) -> Identity {
    let doubled: BTreeMap<Variable, TermSum> = id
        .variables()
        .into_iter()
        .map(|v| {
            let m = Monomial::var(v.clone());
            (v, TermSum::from_counts([(m, 2)]).expect("nonzero"))
        })
        .collect();
    Identity { lhs: id.lhs.substitute(&doubled), rhs: id.rhs.substitute(&doubled) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum(text: &str) -> TermSum {
        TermSum::parse(text).unwrap()
    }

    fn mono(text: &str) -> Monomial {
        Monomial::parse(text).unwrap()
    }

    fn v(c: char) -> Variable {
        Variable::letter(c)
    }

    #[test]
    fn parses_commutativity() {
        let id = parse_identity("x + y ~ y + x").unwrap();
        assert_eq!(id.lhs, id.rhs);
        assert_eq!(id.lhs.occ(&mono("x")), 1);
        assert_eq!(id.lhs.occ(&mono("y")), 1);
    }

    #[test]
    fn exponent_and_coefficient_sugar() {
        let id = parse_identity("x^2 y ~ x y").unwrap();
        assert_eq!(id.lhs, TermSum::monomial(Monomial::new(vec![v('x'), v('x'), v('y')]).unwrap()));
        assert_eq!(id.rhs, TermSum::monomial(mono("xy")));

        let id = parse_identity("x + y ~ x + 3y").unwrap();
        assert_eq!(id.rhs.occ(&mono("y")), 3);
        assert_eq!(id.rhs.occ(&mono("x")), 1);
        assert_eq!(id.rhs.summand_count(), 4);
    }

    #[test]
    fn star_and_juxtaposition_agree() {
        assert_eq!(sum("x*y*z"), sum("xyz"));
        assert_eq!(sum("x * y^2"), sum("xyy"));
        assert_eq!(sum("x1x2"), sum("x1 * x2"));
        assert_eq!(mono("x1x2").len(), 2);
    }

    #[test]
    fn equals_sign_is_a_synonym() {
        assert_eq!(parse_identity("xy = x").unwrap(), parse_identity("xy ~ x").unwrap());
    }

    #[test]
    fn render_examples() {
        let id = parse_identity("x + 3y ~ y + x").unwrap();
        assert_eq!(render(&id), "x + 3y ~ x + y");
        let id = parse_identity("xxy ~ xy").unwrap();
        assert_eq!(render(&id), "x^2y ~ xy");
        let id = parse_identity("yx + 2 x x ~ z").unwrap();
        assert_eq!(render(&id), "2x^2 + yx ~ z");
    }

    #[test]
    fn render_is_canonical() {
        for text in ["y + x ~ x*x", "3 xyx + z ~ 2y", "x^3y^2 ~ x^2 y^2 x"] {
            let once = render(&parse_identity(text).unwrap());
            let twice = render(&parse_identity(&once).unwrap());
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", " ~ x", "x ~ ", "x + ~ y", "x ~ y ~ z", "0x ~ x", "x^0 ~ x", "X ~ x", "x ~ y +", "x ~ 1", "x y ~ x (y)", "x ~~ y"] {
            assert!(parse_identity(bad).is_err(), "{bad:?} should be rejected");
        }
        let err = parse_identity("x + y ~ x $").unwrap_err();
        assert_eq!(err.position, 10);
        let err = parse_identity("x + ~ y").unwrap_err();
        assert_eq!(err.position, 4);
    }

    #[test]
    fn rejects_oversized_repeat() {
        assert!(parse_identity("x^70000 ~ x").is_err());
        assert!(parse_identity("99999999999x ~ x").is_err());
    }

    #[test]
    fn monomial_statistics() {
        let m = mono("xyx");
        assert_eq!(m.head(), &v('x'));
        assert_eq!(m.tail(), &v('x'));
        assert_eq!(m.content(), BTreeSet::from([v('x'), v('y')]));
        assert_eq!(m.len(), 3);

        let m = mono("x");
        assert_eq!(m.head(), m.tail());
        assert_eq!(m.content(), BTreeSet::from([v('x')]));
        assert_eq!(m.len(), 1);

        let m = mono("x^2y");
        assert_eq!(m.content(), BTreeSet::from([v('x'), v('y')]));
        assert_eq!(m.len(), 3);
    }

    #[test]
    fn sum_statistics() {
        assert_eq!(sum("xy + z").sum_heads(), BTreeSet::from([v('x'), v('z')]));
        assert_eq!(sum("xy + z").sum_tails(), BTreeSet::from([v('y'), v('z')]));
        assert_eq!(sum("xy + z").sum_content(), BTreeSet::from([v('x'), v('y'), v('z')]));
        assert_eq!(sum("x + 3y").occ(&mono("y")), 3);
        assert_eq!(sum("x + y").occ(&mono("z")), 0);
    }

    #[test]
    fn monomial_normal_forms() {
        assert_eq!(mono_normal_form(&mono("x^2y")), mono_normal_form(&mono("xy")));
        assert_eq!(
            mono_normal_form(&mono("x^2y")),
            MonoNf::Shape { head: v('x'), content: BTreeSet::from([v('x'), v('y')]), tail: v('y') }
        );
        assert_eq!(mono_normal_form(&mono("x")), MonoNf::Bare(v('x')));
        assert_ne!(mono_normal_form(&mono("x")), mono_normal_form(&mono("x^2")));
        assert_eq!(mono_normal_form(&mono("xy^2x")), mono_normal_form(&mono("xyx")));
    }

    #[test]
    fn hat_examples() {
        let h = hat_identity(&parse_identity("x + x ~ x").unwrap());
        assert_eq!(h, parse_identity("4x ~ 2x").unwrap());
        assert_eq!(render(&h), "4x ~ 2x");
        let h = hat_identity(&parse_identity("xy ~ x").unwrap());
        assert_eq!(h, parse_identity("4xy ~ 2x").unwrap());
    }

    #[test]
    fn hat_scales_by_powers_of_two() {
        let id = parse_identity("3xyz + x ~ 2y^2 + zx").unwrap();
        let h = hat_identity(&id);
        for (side, hside) in [(&id.lhs, &h.lhs), (&id.rhs, &h.rhs)] {
            for (m, k) in side.iter() {
                assert_eq!(hside.occ(m), k << m.len());
            }
            assert_eq!(side.distinct_count(), hside.distinct_count());
        }
    }

    #[test]
    fn substitution_distributes() {
        let u = sum("xy");
        let map = BTreeMap::from([(v('x'), sum("y + z")), (v('y'), sum("x"))]);
        assert_eq!(u.substitute(&map), sum("yx + zx"));
    }

    #[test]
    fn multiset_difference() {
        let u = sum("x + 2y + z");
        assert_eq!(u.checked_sub(&sum("y + z")), Some(Some(sum("x + y"))));
        assert_eq!(u.checked_sub(&sum("3y")), None);
        assert_eq!(u.checked_sub(&u), Some(None));
    }

    #[test]
    fn variable_order_is_numeric_on_suffix() {
        let mut vars: Vec<Variable> = ["x10", "x2", "x", "a3"].iter().map(|s| s.parse().unwrap()).collect();
        vars.sort();
        let names: Vec<String> = vars.iter().map(|v| v.name()).collect();
        assert_eq!(names, ["a3", "x", "x2", "x10"]);
    }

    #[test]
    fn summand_indices_follow_canonical_order() {
        let u = sum("yz + x + 2xz");
        let names: Vec<String> = u.summands().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["x", "xz", "xz", "yz"]);
    }
}
