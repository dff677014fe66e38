//! HSP membership among the two-element semirings.
//!
//! A two-element algebra `A` is generated by two elements, so `A ∈ HSP(T)`
//! exactly when every two-variable identity of `T` holds in `A`. That is
//! decided on the free algebra `F_T(2)`, realised concretely as the subalgebra
//! of `∏_{S∈T} S^(S²)` generated by the two projections. Appending an `A`
//! block and checking that the `A` coordinates are a function of the `T`
//! coordinates (kernel inclusion) gives the verdict.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::models::{BitOp, ModelError, SemiringName};
use crate::term::{Identity, Monomial, TermSum, Variable};

/// A subset of the ten semirings, bit `i` standing for `SemiringName::ALL[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorSet(u16);

impl GeneratorSet {
    pub const EMPTY: GeneratorSet = GeneratorSet(0);
    pub const ALL: GeneratorSet = GeneratorSet(0x3ff);
    pub const AI: GeneratorSet = GeneratorSet(0x03f);
    pub const NON_AI: GeneratorSet = GeneratorSet(0x3c0);

    pub fn from_mask(mask: u16) -> Option<Self> {
        (mask <= 0x3ff).then_some(GeneratorSet(mask))
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    pub fn single(name: SemiringName) -> Self {
        GeneratorSet(1 << name.index())
    }

    pub fn contains(self, name: SemiringName) -> bool {
        self.0 >> name.index() & 1 == 1
    }

    pub fn with(self, name: SemiringName) -> Self {
        GeneratorSet(self.0 | 1 << name.index())
    }

    pub fn without(self, name: SemiringName) -> Self {
        GeneratorSet(self.0 & !(1 << name.index()))
    }

    pub fn union(self, other: Self) -> Self {
        GeneratorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        GeneratorSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = SemiringName> {
        SemiringName::ALL.into_iter().filter(move |n| self.contains(*n))
    }

    /// All 1024 subsets in mask order.
    pub fn all_subsets() -> impl Iterator<Item = GeneratorSet> {
        (0..=0x3ffu16).map(GeneratorSet)
    }

    /// All subsets of `self` in mask order.
    pub fn subsets(self) -> impl Iterator<Item = GeneratorSet> {
        (0..=0x3ffu16).filter(move |m| m & !self.0 == 0).map(GeneratorSet)
    }

    pub fn names(self) -> Vec<&'static str> {
        self.iter().map(SemiringName::as_str).collect()
    }
}

impl FromIterator<SemiringName> for GeneratorSet {
    fn from_iter<I: IntoIterator<Item = SemiringName>>(iter: I) -> Self {
        iter.into_iter().fold(GeneratorSet::EMPTY, GeneratorSet::with)
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("{}")
        } else {
            f.write_str(&self.names().join(","))
        }
    }
}

impl FromStr for GeneratorSet {
    type Err = ModelError;

    /// Comma- or space-separated names; `all`, `ai`, `{}` and the empty string
    /// are accepted as shorthands.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "" | "{}" | "none" => return Ok(GeneratorSet::EMPTY),
            "all" => return Ok(GeneratorSet::ALL),
            "ai" => return Ok(GeneratorSet::AI),
            _ => {}
        }
        t.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(SemiringName::from_str)
            .collect()
    }
}

/// Elements of a free algebra inside a product of two-element semirings.
/// Each block holds the `2^arity` values of a term on all assignments of the
/// generators, so the whole vector is a fixed-width bit word.
pub type PairedVector = u128;

#[derive(Debug, Clone)]
struct LaneOps {
    lanes: Vec<(u128, BitOp, BitOp)>,
}

impl LaneOps {
    fn new(blocks: &[SemiringName], width: usize) -> Self {
        let mut lanes: Vec<(SemiringName, u128)> = Vec::new();
        for (b, name) in blocks.iter().enumerate() {
            let lane = ((1u128 << width) - 1) << (b * width);
            match lanes.iter_mut().find(|(n, _)| n == name) {
                Some((_, m)) => *m |= lane,
                None => lanes.push((*name, lane)),
            }
        }
        LaneOps {
            lanes: lanes
                .into_iter()
                .map(|(n, mask)| (mask, n.table().add_op(), n.table().mul_op()))
                .collect(),
        }
    }

    #[inline]
    fn add(&self, a: u128, b: u128) -> u128 {
        self.lanes.iter().fold(0, |r, (m, add, _)| r | (add.apply128(a, b) & m))
    }

    #[inline]
    fn mul(&self, a: u128, b: u128) -> u128 {
        self.lanes.iter().fold(0, |r, (m, _, mul)| r | (mul.apply128(a, b) & m))
    }
}

/// The subalgebra generated by the projection vectors.
#[derive(Debug, Clone)]
pub struct FreeClosure {
    pub blocks: Vec<SemiringName>,
    pub arity: usize,
    /// Generators first, then products, then sums, in discovery order.
    pub elements: Vec<PairedVector>,
    /// Number of leading elements that are products of generators.
    pub monomial_count: usize,
}

impl FreeClosure {
    pub fn width(&self) -> usize {
        1 << self.arity
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The `i`-th generator vector.
    pub fn generator(&self, i: usize) -> PairedVector {
        projection(&self.blocks, self.arity, i)
    }

    pub fn block(&self, v: PairedVector, b: usize) -> u8 {
        let w = self.width();
        ((v >> (b * w)) & ((1 << w) - 1)) as u8
    }

    pub fn block_mask(&self, blocks: impl IntoIterator<Item = usize>) -> u128 {
        let w = self.width();
        blocks.into_iter().fold(0, |m, b| m | ((1u128 << w) - 1) << (b * w))
    }

    pub fn add(&self, a: PairedVector, b: PairedVector) -> PairedVector {
        LaneOps::new(&self.blocks, self.width()).add(a, b)
    }

    pub fn mul(&self, a: PairedVector, b: PairedVector) -> PairedVector {
        LaneOps::new(&self.blocks, self.width()).mul(a, b)
    }
}

fn projection(blocks: &[SemiringName], arity: usize, var: usize) -> PairedVector {
    let width = 1 << arity;
    let mut lane = 0u128;
    for r in 0..width {
        if r >> (arity - 1 - var) & 1 == 1 {
            lane |= 1 << r;
        }
    }
    (0..blocks.len()).fold(0, |v, b| v | lane << (b * width))
}

/// Closure of the `arity` projections in the product of `blocks`.
///
/// Products are closed first (the multiplicative subsemigroup of monomial
/// functions, breadth-first), then sums are added one monomial at a time.
/// By distributivity every element is a sum of monomials, so this reaches the
/// whole generated subalgebra.
pub fn closure_of_blocks(blocks: &[SemiringName], arity: usize) -> FreeClosure {
    assert!(arity == 2 || arity == 3, "arity {arity} not supported");
    let width = 1usize << arity;
    assert!(blocks.len() * width <= 128, "too many blocks for a 128-bit vector");
    let ops = LaneOps::new(blocks, width);

    let mut seen: HashSet<u128> = HashSet::new();
    let mut elements: Vec<u128> = Vec::new();
    for i in 0..arity {
        let g = projection(blocks, arity, i);
        if seen.insert(g) {
            elements.push(g);
        }
    }
    let mut next = 0;
    while next < elements.len() {
        let p = elements[next];
        next += 1;
        let mut i = 0;
        while i < next {
            let q = elements[i];
            for r in [ops.mul(p, q), ops.mul(q, p)] {
                if seen.insert(r) {
                    elements.push(r);
                }
            }
            i += 1;
        }
    }
    let monomial_count = elements.len();
    let mut next = 0;
    while next < elements.len() {
        let s = elements[next];
        next += 1;
        for m in 0..monomial_count {
            let r = ops.add(s, elements[m]);
            if seen.insert(r) {
                elements.push(r);
            }
        }
    }
    FreeClosure { blocks: blocks.to_vec(), arity, elements, monomial_count }
}

/// Two-generated free closure over `t`, with an optional extra block appended
/// after the blocks of `t`.
pub fn free_closure(t: GeneratorSet, extra: Option<SemiringName>) -> FreeClosure {
    let mut blocks: Vec<SemiringName> = t.iter().collect();
    blocks.extend(extra);
    assert!(!blocks.is_empty(), "free closure over no blocks");
    closure_of_blocks(&blocks, 2)
}

fn kernel_included(c: &FreeClosure, source: u128, target: u128) -> bool {
    let mut map: HashMap<u128, u128> = HashMap::with_capacity(c.len());
    c.elements.iter().all(|&v| *map.entry(v & source).or_insert(v & target) == v & target)
}

/// `A ∈ HSP(T)` with generators of the given arity (2 suffices; 3 is a cross-check).
pub fn is_member_with_arity(a: SemiringName, t: GeneratorSet, arity: usize) -> bool {
    let mut blocks: Vec<SemiringName> = t.iter().collect();
    blocks.push(a);
    let c = closure_of_blocks(&blocks, arity);
    let n = blocks.len();
    kernel_included(&c, c.block_mask(0..n - 1), c.block_mask([n - 1]))
}

pub fn is_member(a: SemiringName, t: GeneratorSet) -> bool {
    is_member_with_arity(a, t, 2)
}

/// `HSP(t1) ⊆ HSP(t2)`.
pub fn leq(t1: GeneratorSet, t2: GeneratorSet) -> bool {
    t1.iter().all(|a| is_member(a, t2))
}

/// The largest generator set producing the same variety as `t`.
pub fn canonical_label(t: GeneratorSet) -> GeneratorSet {
    SemiringName::ALL.into_iter().filter(|a| is_member(*a, t)).collect()
}

/// Answers membership queries by projecting one closure over all ten blocks.
///
/// The projection of the generated subalgebra onto a subset of blocks is the
/// subalgebra generated there, so this agrees with [`is_member`].
#[derive(Debug, Clone)]
pub struct MembershipOracle {
    closure: FreeClosure,
}

impl MembershipOracle {
    pub fn new() -> Self {
        MembershipOracle { closure: closure_of_blocks(&SemiringName::ALL, 2) }
    }

    /// Shared instance.
    pub fn global() -> &'static MembershipOracle {
        static ORACLE: OnceLock<MembershipOracle> = OnceLock::new();
        ORACLE.get_or_init(MembershipOracle::new)
    }

    pub fn closure(&self) -> &FreeClosure {
        &self.closure
    }

    pub fn is_member(&self, a: SemiringName, t: GeneratorSet) -> bool {
        let c = &self.closure;
        let source = c.block_mask(t.iter().map(SemiringName::index));
        kernel_included(c, source, c.block_mask([a.index()]))
    }

    pub fn canonical_label(&self, t: GeneratorSet) -> GeneratorSet {
        SemiringName::ALL.into_iter().filter(|a| self.is_member(*a, t)).collect()
    }

    /// Canonical labels of all 1024 subsets, indexed by mask.
    pub fn all_labels(&self) -> Vec<GeneratorSet> {
        let subsets: Vec<GeneratorSet> = GeneratorSet::all_subsets().collect();
        subsets.par_iter().map(|t| self.canonical_label(*t)).collect()
    }
}

impl Default for MembershipOracle {
    fn default() -> Self {
        Self::new()
    }
}

/// Minimal subsets of `label` generating the same variety.
pub fn minimal_generating_sets(label: GeneratorSet, labels: &[GeneratorSet]) -> Vec<GeneratorSet> {
    let generating: Vec<GeneratorSet> = label.subsets().filter(|s| labels[s.mask() as usize] == label).collect();
    generating
        .iter()
        .filter(|s| !generating.iter().any(|r| r != *s && r.is_subset(**s)))
        .copied()
        .collect()
}

/// The `membership.tsv` table: one line `name TAB mask TAB 0/1` for every
/// semiring and every subset mask.
pub fn membership_table() -> String {
    let rows: Vec<String> = GeneratorSet::all_subsets()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|t| {
            SemiringName::ALL
                .iter()
                .map(|a| format!("{}\t{}\t{}\n", a, t.mask(), is_member(*a, *t) as u8))
                .collect::<String>()
        })
        .collect();
    let mut by_name: Vec<String> = Vec::with_capacity(10 * 1024);
    for a in 0..10 {
        for row in &rows {
            by_name.push(row.lines().nth(a).expect("ten lines per subset").to_string());
        }
    }
    by_name.join("\n") + "\n"
}

/// Bounds of a grid of two-variable term sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridBounds {
    pub max_summands: usize,
    pub max_length: usize,
}

impl GridBounds {
    pub const DEFAULT: GridBounds = GridBounds { max_summands: 4, max_length: 4 };
}

/// Words over `letters` of length `1..=max_length`, shortest first.
pub fn words(letters: &[Variable], max_length: usize) -> Vec<Monomial> {
    let mut out: Vec<Vec<Variable>> = Vec::new();
    let mut layer: Vec<Vec<Variable>> = vec![vec![]];
    for _ in 0..max_length {
        layer = layer
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |v| {
                    let mut w = w.clone();
                    w.push(v.clone());
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out.into_iter().map(|w| Monomial::new(w).expect("nonempty")).collect()
}

/// All multisets of 1..=k items drawn from `n` items, as sorted index lists.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == k {
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// One smallest representative term for each distinct 2-variable term
/// function (over all ten semirings) realised inside the grid.
#[derive(Debug, Clone)]
pub struct GridRepresentatives {
    pub bounds: GridBounds,
    /// (function as ten 4-bit lanes, representative sum)
    pub reps: Vec<(u64, TermSum)>,
}

impl GridRepresentatives {
    pub fn build(bounds: GridBounds) -> Self {
        let xy = [Variable::letter('x'), Variable::letter('y')];
        let monos = words(&xy, bounds.max_length);
        let ctx = crate::models::EvalContext::new(xy.iter().cloned()).expect("two variables");
        let mono_fns: Vec<Vec<u64>> = monos
            .iter()
            .map(|m| {
                let c = ctx.compile(&TermSum::monomial(m.clone())).expect("bound");
                SemiringName::ALL.iter().map(|s| ctx.truth_table(s.table(), &c).low_word()).collect()
            })
            .collect();
        let ops: Vec<BitOp> = SemiringName::ALL.iter().map(|s| s.table().add_op()).collect();
        let mut seen: HashMap<u64, usize> = HashMap::new();
        let mut reps = Vec::new();
        for ms in multisets(monos.len(), bounds.max_summands) {
            let mut packed = 0u64;
            for (b, op) in ops.iter().enumerate() {
                let lane = ms
                    .iter()
                    .map(|&i| mono_fns[i][b])
                    .reduce(|a, c| op.apply64(a, c) & 0xf)
                    .expect("nonempty");
                packed |= lane << (4 * b);
            }
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(packed) {
                e.insert(reps.len());
                let sum = TermSum::from_monomials(ms.iter().map(|&i| monos[i].clone())).expect("nonempty");
                reps.push((packed, sum));
            }
        }
        GridRepresentatives { bounds, reps }
    }

    /// A grid identity that holds in every member of `t` but fails in `a`.
    pub fn separating_identity(&self, a: SemiringName, t: GeneratorSet) -> Option<Identity> {
        let source: u64 = t.iter().fold(0, |m, n| m | 0xf << (4 * n.index()));
        let target: u64 = 0xf << (4 * a.index());
        let mut first: HashMap<u64, usize> = HashMap::new();
        for (i, (f, _)) in self.reps.iter().enumerate() {
            match first.entry(f & source) {
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(i);
                }
                std::collections::hash_map::Entry::Occupied(e) => {
                    let (g, ref u) = self.reps[*e.get()];
                    if g & target != f & target {
                        return Some(Identity::new(u.clone(), self.reps[i].1.clone()));
                    }
                }
            }
        }
        None
    }
}

/// Searches for a two-variable identity separating `a` from `HSP(t)`, starting
/// from the default grid and enlarging the summand bound until one is found.
/// Returns `None` when `a ∈ HSP(t)`.
pub fn find_separating_identity(a: SemiringName, t: GeneratorSet) -> Option<(Identity, GridBounds)> {
    if is_member(a, t) {
        return None;
    }
    static GRIDS: OnceLock<Vec<GridRepresentatives>> = OnceLock::new();
    let grids = GRIDS.get_or_init(|| {
        (4..=7)
            .map(|k| GridRepresentatives::build(GridBounds { max_summands: k, max_length: 3.max(8 - k) }))
            .collect()
    });
    grids
        .iter()
        .find_map(|g| g.separating_identity(a, t).map(|id| (id, g.bounds)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use SemiringName::*;

    fn set(names: &[SemiringName]) -> GeneratorSet {
        names.iter().copied().collect()
    }

    #[test]
    fn generator_set_parsing_and_display() {
        let t: GeneratorSet = "L2, R2 Z8".parse().unwrap();
        assert_eq!(t, set(&[L2, R2, Z8]));
        assert_eq!(t.to_string(), "L2,R2,Z8");
        assert_eq!("".parse::<GeneratorSet>().unwrap(), GeneratorSet::EMPTY);
        assert_eq!("all".parse::<GeneratorSet>().unwrap(), GeneratorSet::ALL);
        assert_eq!(GeneratorSet::AI, set(&SemiringName::AI));
        assert_eq!(GeneratorSet::NON_AI, set(&SemiringName::NON_AI));
        assert!("L2,Q3".parse::<GeneratorSet>().is_err());
        assert_eq!(GeneratorSet::EMPTY.to_string(), "{}");
    }

    #[test]
    fn m2_closure() {
        let c = free_closure(set(&[M2]), None);
        assert!(c.len() <= 16);
        let (x, y) = (c.generator(0), c.generator(1));
        assert_eq!(c.add(x, y), c.mul(x, y));
        assert!(c.elements.contains(&c.add(x, y)));
        // x, y, x+y
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn l2_closure() {
        let c = free_closure(set(&[L2]), None);
        let (x, y) = (c.generator(0), c.generator(1));
        assert_eq!(c.mul(x, y), x);
    }

    #[test]
    fn closure_is_closed() {
        for t in [set(&[Z8]), set(&[N2, W2]), set(&[D2, Z7, T2])] {
            let c = free_closure(t, None);
            let all: HashSet<u128> = c.elements.iter().copied().collect();
            for &a in &c.elements {
                for &b in &c.elements {
                    assert!(all.contains(&c.add(a, b)));
                    assert!(all.contains(&c.mul(a, b)));
                }
            }
        }
    }

    #[test]
    fn closure_size_over_all_ten() {
        assert_eq!(free_closure(GeneratorSet::ALL, None).len(), 214);
    }

    #[test]
    fn membership_examples() {
        for a in SemiringName::ALL {
            assert!(is_member(a, GeneratorSet::single(a)));
            assert!(!is_member(a, GeneratorSet::EMPTY));
        }
        assert!(!is_member(D2, set(&[L2, R2, M2, N2, T2])));
        assert!(!is_member(Z8, set(&SemiringName::AI)));
    }

    #[test]
    fn leq_examples() {
        let t = set(&[L2, Z7]);
        assert!(leq(t, t.with(W2)));
        assert!(leq(GeneratorSet::AI, GeneratorSet::ALL));
        assert!(!leq(set(&[Z8]), GeneratorSet::AI));
    }

    #[test]
    fn canonical_label_bounds() {
        assert_eq!(canonical_label(GeneratorSet::EMPTY), GeneratorSet::EMPTY);
        assert_eq!(canonical_label(GeneratorSet::ALL), GeneratorSet::ALL);
    }

    #[test]
    fn oracle_agrees_with_direct_closure_on_samples() {
        let oracle = MembershipOracle::global();
        for mask in (0..1024u16).step_by(37) {
            let t = GeneratorSet::from_mask(mask).unwrap();
            for a in SemiringName::ALL {
                assert_eq!(oracle.is_member(a, t), is_member(a, t), "{a} in {t}");
            }
        }
    }

    #[test]
    fn separating_identity_is_a_real_witness() {
        let t = set(&[Z2, W2, Z7]);
        let (id, _) = find_separating_identity(Z8, t).unwrap();
        for s in t.iter() {
            assert!(models::satisfies(s.table(), &id).unwrap());
        }
        assert!(!models::satisfies(Z8.table(), &id).unwrap());
        assert!(find_separating_identity(Z8, t.with(Z8)).is_none());
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(3, 2).len(), 3 + 6);
        assert_eq!(words(&[Variable::letter('x'), Variable::letter('y')], 4).len(), 30);
    }
}
