//! The ten two-element semirings and brute-force evaluation over them.
//!
//! Everything else in the crate is checked against this module: a term is
//! evaluated under every 0/1 assignment of its variables and the two sides of
//! an identity are compared.
//!
//! Evaluation is bit-parallel. For `n` variables, assignment rank `r` (binary
//! counter over the variables sorted by name, first variable most significant)
//! is bit `r` of a [`TruthTable`], and each semiring operation is applied to
//! whole words at once.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::term::{Identity, Monomial, TermSum, Variable};

/// Satisfaction checks on this many variables or more are refused.
pub const MAX_VARIABLES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown semiring {0:?} (expected one of L2 R2 M2 D2 N2 T2 Z2 W2 Z7 Z8)")]
    UnknownSemiring(String),
    #[error("variable {0} is not bound by the assignment")]
    Unbound(Variable),
    #[error("{0} variables exceed the limit of {max} for exhaustive evaluation", max = MAX_VARIABLES - 1)]
    TooManyVariables(usize),
    #[error("additive idempotents of {0} are not closed under the operations")]
    NotClosed(SemiringName),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SemiringName {
    L2,
    R2,
    M2,
    D2,
    N2,
    T2,
    Z2,
    W2,
    Z7,
    Z8,
}

impl SemiringName {
    pub const ALL: [SemiringName; 10] = [
        SemiringName::L2,
        SemiringName::R2,
        SemiringName::M2,
        SemiringName::D2,
        SemiringName::N2,
        SemiringName::T2,
        SemiringName::Z2,
        SemiringName::W2,
        SemiringName::Z7,
        SemiringName::Z8,
    ];

    /// The six semirings with idempotent addition.
    pub const AI: [SemiringName; 6] = [
        SemiringName::L2,
        SemiringName::R2,
        SemiringName::M2,
        SemiringName::D2,
        SemiringName::N2,
        SemiringName::T2,
    ];

    pub const NON_AI: [SemiringName; 4] =
        [SemiringName::Z2, SemiringName::W2, SemiringName::Z7, SemiringName::Z8];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn is_ai(self) -> bool {
        self.index() < 6
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SemiringName::L2 => "L2",
            SemiringName::R2 => "R2",
            SemiringName::M2 => "M2",
            SemiringName::D2 => "D2",
            SemiringName::N2 => "N2",
            SemiringName::T2 => "T2",
            SemiringName::Z2 => "Z2",
            SemiringName::W2 => "W2",
            SemiringName::Z7 => "Z7",
            SemiringName::Z8 => "Z8",
        }
    }

    pub fn table(self) -> &'static SemiringTable {
        &TABLES[self.index()]
    }
}

impl fmt::Display for SemiringName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SemiringName {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        Self::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(t))
            .ok_or_else(|| ModelError::UnknownSemiring(s.to_string()))
    }
}

/// A binary operation on `{0,1}`; `table[a][b]` is `a ∘ b`.
pub type OpTable = [[u8; 2]; 2];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiringTable {
    pub name: SemiringName,
    pub add: OpTable,
    pub mul: OpTable,
}

const fn table(name: SemiringName, add: OpTable, mul: OpTable) -> SemiringTable {
    SemiringTable { name, add, mul }
}

const JOIN: OpTable = [[0, 1], [1, 1]];
const ZERO: OpTable = [[0, 0], [0, 0]];
const XOR: OpTable = [[0, 1], [1, 0]];
const AND: OpTable = [[0, 0], [0, 1]];

static TABLES: [SemiringTable; 10] = [
    table(SemiringName::L2, JOIN, [[0, 0], [1, 1]]),
    table(SemiringName::R2, JOIN, [[0, 1], [0, 1]]),
    table(SemiringName::M2, JOIN, JOIN),
    table(SemiringName::D2, JOIN, AND),
    table(SemiringName::N2, JOIN, ZERO),
    table(SemiringName::T2, JOIN, [[1, 1], [1, 1]]),
    table(SemiringName::Z2, ZERO, ZERO),
    table(SemiringName::W2, ZERO, AND),
    table(SemiringName::Z7, XOR, ZERO),
    table(SemiringName::Z8, XOR, AND),
];

pub fn semiring(name: &str) -> Result<&'static SemiringTable, ModelError> {
    Ok(name.parse::<SemiringName>()?.table())
}

pub fn all_semirings() -> impl Iterator<Item = &'static SemiringTable> {
    TABLES.iter()
}

/// Which law a table violates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{law} fails at ({a}, {b}, {c})")]
pub struct LawViolation {
    pub law: &'static str,
    pub a: u8,
    pub b: u8,
    pub c: u8,
}

impl SemiringTable {
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    /// Checks the semiring axioms over all 8 triples.
    pub fn validate(&self) -> Result<(), LawViolation> {
        let laws: [(&'static str, &dyn Fn(u8, u8, u8) -> bool); 5] = [
            ("commutativity of +", &|a, b, _| self.add(a, b) == self.add(b, a)),
            ("associativity of +", &|a, b, c| self.add(self.add(a, b), c) == self.add(a, self.add(b, c))),
            ("associativity of ·", &|a, b, c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))),
            ("left distributivity", &|a, b, c| {
                self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c))
            }),
            ("right distributivity", &|a, b, c| {
                self.mul(self.add(b, c), a) == self.add(self.mul(b, a), self.mul(c, a))
            }),
        ];
        for (law, holds) in laws {
            for t in 0..8u8 {
                let (a, b, c) = (t >> 2 & 1, t >> 1 & 1, t & 1);
                if !holds(a, b, c) {
                    return Err(LawViolation { law, a, b, c });
                }
            }
        }
        Ok(())
    }

    pub fn add_op(&self) -> BitOp {
        BitOp::from_table(&self.add)
    }

    pub fn mul_op(&self) -> BitOp {
        BitOp::from_table(&self.mul)
    }
}

/// A binary boolean operation applied lane-wise to machine words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitOp {
    // minterms[a][b]: whether (a, b) maps to 1
    minterms: [[bool; 2]; 2],
}

impl BitOp {
    pub fn from_table(t: &OpTable) -> Self {
        BitOp { minterms: [[t[0][0] == 1, t[0][1] == 1], [t[1][0] == 1, t[1][1] == 1]] }
    }

    #[inline]
    pub fn apply64(&self, a: u64, b: u64) -> u64 {
        let mut r = 0;
        if self.minterms[0][0] {
            r |= !a & !b;
        }
        if self.minterms[0][1] {
            r |= !a & b;
        }
        if self.minterms[1][0] {
            r |= a & !b;
        }
        if self.minterms[1][1] {
            r |= a & b;
        }
        r
    }

    #[inline]
    pub fn apply128(&self, a: u128, b: u128) -> u128 {
        let mut r = 0;
        if self.minterms[0][0] {
            r |= !a & !b;
        }
        if self.minterms[0][1] {
            r |= !a & b;
        }
        if self.minterms[1][0] {
            r |= a & !b;
        }
        if self.minterms[1][1] {
            r |= a & b;
        }
        r
    }
}

/// A 0/1 valuation of variables.
pub type Assignment = BTreeMap<Variable, u8>;

/// Evaluates `u` in `s`, folding products left to right and sums in summand order.
pub fn eval_term(s: &SemiringTable, u: &TermSum, a: &Assignment) -> Result<u8, ModelError> {
    let value = |v: &Variable| a.get(v).copied().ok_or_else(|| ModelError::Unbound(v.clone()));
    let mut acc: Option<u8> = None;
    for (m, k) in u.iter() {
        let mut word = m.letters().iter();
        let mut p = value(word.next().expect("nonempty monomial"))?;
        for v in word {
            p = s.mul(p, value(v)?);
        }
        for _ in 0..k {
            acc = Some(match acc {
                None => p,
                Some(x) => s.add(x, p),
            });
        }
    }
    Ok(acc.expect("nonempty sum"))
}

/// The function computed by a term over a fixed variable order, one bit per
/// assignment rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    words: Vec<u64>,
}

impl TruthTable {
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn bit(&self, rank: usize) -> bool {
        self.words[rank / 64] >> (rank % 64) & 1 == 1
    }

    /// First rank at which `self` and `other` differ.
    pub fn first_difference(&self, other: &TruthTable) -> Option<usize> {
        self.words
            .iter()
            .zip(&other.words)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map(|(i, (a, b))| i * 64 + (a ^ b).trailing_zeros() as usize)
    }

    /// Lowest word, enough to hold the whole table for up to 6 variables.
    pub fn low_word(&self) -> u64 {
        self.words[0]
    }
}

/// A term sum with variables replaced by their positions in a fixed order,
/// ready for bit-parallel evaluation.
#[derive(Debug, Clone)]
pub struct CompiledSum {
    monomials: Vec<(Vec<usize>, u32)>,
}

/// Variable order plus precomputed projection columns.
#[derive(Debug, Clone)]
pub struct EvalContext {
    vars: Vec<Variable>,
    columns: Vec<Vec<u64>>,
    mask: u64,
}

impl EvalContext {
    pub fn new(vars: impl IntoIterator<Item = Variable>) -> Result<Self, ModelError> {
        let vars: Vec<Variable> = vars.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let n = vars.len();
        if n >= MAX_VARIABLES {
            return Err(ModelError::TooManyVariables(n));
        }
        let rows = 1usize << n;
        let nwords = rows.div_ceil(64);
        let mask = if rows >= 64 { u64::MAX } else { (1u64 << rows) - 1 };
        let columns = (0..n)
            .map(|i| {
                let shift = n - 1 - i;
                let mut col = vec![0u64; nwords];
                for r in 0..rows {
                    if r >> shift & 1 == 1 {
                        col[r / 64] |= 1 << (r % 64);
                    }
                }
                col
            })
            .collect();
        Ok(EvalContext { vars, columns, mask })
    }

    pub fn for_identity(id: &Identity) -> Result<Self, ModelError> {
        Self::new(id.variables())
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        1 << self.vars.len()
    }

    pub fn compile(&self, u: &TermSum) -> Result<CompiledSum, ModelError> {
        let monomials = u
            .iter()
            .map(|(m, k)| Ok((self.positions(m)?, k)))
            .collect::<Result<_, ModelError>>()?;
        Ok(CompiledSum { monomials })
    }

    fn positions(&self, m: &Monomial) -> Result<Vec<usize>, ModelError> {
        m.letters()
            .iter()
            .map(|v| self.vars.binary_search(v).map_err(|_| ModelError::Unbound(v.clone())))
            .collect()
    }

    pub fn truth_table(&self, s: &SemiringTable, u: &CompiledSum) -> TruthTable {
        let (add, mul) = (s.add_op(), s.mul_op());
        let nwords = self.columns.first().map_or(1, Vec::len);
        let mut words = Vec::with_capacity(nwords);
        for w in 0..nwords {
            let col = |i: usize| if self.columns.is_empty() { 0 } else { self.columns[i][w] };
            let mut acc: Option<u64> = None;
            for (letters, k) in &u.monomials {
                let mut p = col(letters[0]);
                for &i in &letters[1..] {
                    p = mul.apply64(p, col(i));
                }
                for _ in 0..*k {
                    acc = Some(match acc {
                        None => p,
                        Some(x) => add.apply64(x, p),
                    });
                }
            }
            words.push(acc.expect("nonempty sum") & self.mask);
        }
        TruthTable { words }
    }

    /// The assignment of the given rank, in binary-counter order.
    pub fn assignment(&self, rank: usize) -> Assignment {
        let n = self.vars.len();
        self.vars.iter().enumerate().map(|(i, v)| (v.clone(), (rank >> (n - 1 - i) & 1) as u8)).collect()
    }
}

/// First assignment (in binary-counter order) on which the two sides differ.
pub fn counterexample(s: &SemiringTable, id: &Identity) -> Result<Option<Assignment>, ModelError> {
    let ctx = EvalContext::for_identity(id)?;
    let l = ctx.truth_table(s, &ctx.compile(&id.lhs)?);
    let r = ctx.truth_table(s, &ctx.compile(&id.rhs)?);
    Ok(l.first_difference(&r).map(|rank| ctx.assignment(rank)))
}

pub fn satisfies(s: &SemiringTable, id: &Identity) -> Result<bool, ModelError> {
    Ok(counterexample(s, id)?.is_none())
}

/// Satisfaction in every table of `tables`; true for the empty family.
pub fn satisfies_all<'a>(
    tables: impl IntoIterator<Item = &'a SemiringTable>,
    id: &Identity,
) -> Result<bool, ModelError> {
    let ctx = EvalContext::for_identity(id)?;
    let l = ctx.compile(&id.lhs)?;
    let r = ctx.compile(&id.rhs)?;
    for s in tables {
        if ctx.truth_table(s, &l) != ctx.truth_table(s, &r) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Truth tables of both sides of `id` in each of the ten semirings.
pub fn truth_tables(id: &Identity) -> Result<Vec<(TruthTable, TruthTable)>, ModelError> {
    let ctx = EvalContext::for_identity(id)?;
    let l = ctx.compile(&id.lhs)?;
    let r = ctx.compile(&id.rhs)?;
    Ok(all_semirings().map(|s| (ctx.truth_table(s, &l), ctx.truth_table(s, &r))).collect())
}

/// `E⁺(S) = {a : a + a = a}` with the restricted operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsemiring {
    pub elements: Vec<u8>,
    pub add: Vec<Vec<u8>>,
    pub mul: Vec<Vec<u8>>,
}

pub fn additive_idempotents(s: &SemiringTable) -> Result<Subsemiring, ModelError> {
    let elements: Vec<u8> = (0..2).filter(|&a| s.add(a, a) == a).collect();
    let pos = |x: u8| elements.iter().position(|&e| e == x);
    let mut add = vec![vec![0; elements.len()]; elements.len()];
    let mut mul = add.clone();
    for (i, &a) in elements.iter().enumerate() {
        for (j, &b) in elements.iter().enumerate() {
            let (p, q) = (s.add(a, b), s.mul(a, b));
            if pos(p).is_none() || pos(q).is_none() {
                return Err(ModelError::NotClosed(s.name));
            }
            add[i][j] = p;
            mul[i][j] = q;
        }
    }
    Ok(Subsemiring { elements, add, mul })
}

impl Subsemiring {
    /// Semiring axioms on the subset.
    pub fn is_semiring(&self) -> bool {
        let n = self.elements.len();
        let idx = |x: u8| self.elements.iter().position(|&e| e == x).expect("closed");
        let add = |a: usize, b: usize| idx(self.add[a][b]);
        let mul = |a: usize, b: usize| idx(self.mul[a][b]);
        (0..n).all(|a| {
            (0..n).all(|b| {
                add(a, b) == add(b, a)
                    && (0..n).all(|c| {
                        add(add(a, b), c) == add(a, add(b, c))
                            && mul(mul(a, b), c) == mul(a, mul(b, c))
                            && mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
                            && mul(add(b, c), a) == add(mul(b, a), mul(c, a))
                    })
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_identity;

    fn id(text: &str) -> Identity {
        parse_identity(text).unwrap()
    }

    fn sum(text: &str) -> TermSum {
        TermSum::parse(text).unwrap()
    }

    fn assign(pairs: &[(char, u8)]) -> Assignment {
        pairs.iter().map(|&(c, b)| (Variable::letter(c), b)).collect()
    }

    #[test]
    fn all_tables_are_semirings() {
        for s in all_semirings() {
            s.validate().unwrap_or_else(|e| panic!("{}: {e}", s.name));
        }
    }

    #[test]
    fn validation_catches_a_broken_table() {
        let bad = SemiringTable { name: SemiringName::L2, add: [[0, 1], [0, 1]], mul: ZERO };
        assert_eq!(bad.validate().unwrap_err().law, "commutativity of +");
        let bad = SemiringTable { name: SemiringName::L2, add: XOR, mul: JOIN };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn tables_are_pairwise_distinct() {
        for a in all_semirings() {
            for b in all_semirings() {
                if a.name != b.name {
                    assert!(a.add != b.add || a.mul != b.mul);
                }
            }
        }
    }

    #[test]
    fn table_lookups() {
        let z8 = semiring("Z8").unwrap();
        assert_eq!(z8.add, [[0, 1], [1, 0]]);
        let l2 = semiring("L2").unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(l2.mul(x, y), x);
            }
        }
        let w2 = semiring("W2").unwrap();
        assert_eq!(w2.add, [[0, 0], [0, 0]]);
        assert!(matches!(semiring("Q9"), Err(ModelError::UnknownSemiring(_))));
    }

    #[test]
    fn evaluation_examples() {
        let z8 = SemiringName::Z8.table();
        assert_eq!(eval_term(z8, &sum("2x"), &assign(&[('x', 1)])).unwrap(), 0);
        let l2 = SemiringName::L2.table();
        assert_eq!(eval_term(l2, &sum("xy"), &assign(&[('x', 0), ('y', 1)])).unwrap(), 0);
        let m2 = SemiringName::M2.table();
        assert_eq!(eval_term(m2, &sum("x + y"), &assign(&[('x', 0), ('y', 1)])).unwrap(), 1);
        assert_eq!(
            eval_term(m2, &sum("x + y"), &assign(&[('x', 0)])),
            Err(ModelError::Unbound(Variable::letter('y')))
        );
    }

    #[test]
    fn satisfaction_examples() {
        assert!(satisfies(SemiringName::N2.table(), &id("xy ~ zt")).unwrap());
        assert!(!satisfies(SemiringName::Z2.table(), &id("x ~ x + x")).unwrap());
        let cex = counterexample(SemiringName::Z2.table(), &id("x ~ x + x")).unwrap().unwrap();
        assert_eq!(cex, assign(&[('x', 1)]));
        for s in all_semirings() {
            assert!(satisfies(s, &id("xyz + x ~ xyz + x")).unwrap());
        }
        assert!(satisfies_all(all_semirings(), &id("x + y ~ x + 3y")).unwrap());
        assert!(!satisfies_all(all_semirings(), &id("x ~ x + x")).unwrap());
        assert!(satisfies_all(std::iter::empty(), &id("x ~ y")).unwrap());
    }

    #[test]
    fn bit_parallel_matches_pointwise_evaluation() {
        let u = sum("x1x2 + 3x3 + x2x1x7 + x4x5x6x3 + x8");
        let ctx = EvalContext::new(u.sum_content()).unwrap();
        assert_eq!(ctx.rows(), 256);
        let compiled = ctx.compile(&u).unwrap();
        for s in all_semirings() {
            let tt = ctx.truth_table(s, &compiled);
            for r in 0..ctx.rows() {
                let expected = eval_term(s, &u, &ctx.assignment(r)).unwrap();
                assert_eq!(tt.bit(r) as u8, expected, "{} rank {r}", s.name);
            }
        }
    }

    #[test]
    fn binary_counter_order() {
        let ctx = EvalContext::new([Variable::letter('y'), Variable::letter('x')]).unwrap();
        assert_eq!(ctx.assignment(1), assign(&[('x', 0), ('y', 1)]));
        assert_eq!(ctx.assignment(2), assign(&[('x', 1), ('y', 0)]));
    }

    #[test]
    fn refuses_twenty_variables() {
        let text = (0..20).map(|i| format!("x{i}")).collect::<Vec<_>>().join(" + ");
        let big = id(&format!("{text} ~ x0"));
        assert_eq!(satisfies(SemiringName::M2.table(), &big), Err(ModelError::TooManyVariables(20)));
        let text = (0..19).map(|i| format!("x{i}")).collect::<Vec<_>>().join(" + ");
        let ok = id(&format!("{text} ~ {text}"));
        assert!(satisfies(SemiringName::M2.table(), &ok).unwrap());
    }

    #[test]
    fn additive_idempotent_examples() {
        assert_eq!(additive_idempotents(SemiringName::L2.table()).unwrap().elements, vec![0, 1]);
        assert_eq!(additive_idempotents(SemiringName::Z8.table()).unwrap().elements, vec![0]);
        assert_eq!(additive_idempotents(SemiringName::Z2.table()).unwrap().elements, vec![0]);
        for s in all_semirings() {
            let sub = additive_idempotents(s).unwrap();
            assert!(sub.is_semiring(), "{}", s.name);
            assert_eq!(sub.elements.len(), if s.name.is_ai() { 2 } else { 1 });
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism_on_two_variable_terms() {
        let terms = ["x", "y", "xy", "yx", "x + y", "2x + xy", "xyx + y"];
        for s in all_semirings() {
            for a in terms {
                for b in terms {
                    let (u, v) = (sum(a), sum(b));
                    for r in 0..4u8 {
                        let asg = assign(&[('x', r >> 1), ('y', r & 1)]);
                        let eu = eval_term(s, &u, &asg).unwrap();
                        let ev = eval_term(s, &v, &asg).unwrap();
                        assert_eq!(eval_term(s, &u.mul(&v), &asg).unwrap(), s.mul(eu, ev));
                        assert_eq!(eval_term(s, &u.add(&v), &asg).unwrap(), s.add(eu, ev));
                    }
                }
            }
        }
    }
}
