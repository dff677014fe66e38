//! The lattice of subvarieties generated by subsets of the ten semirings.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::models::{self, SemiringName};
use crate::term::{Identity, Monomial, TermSum, Variable};
use crate::variety::{self, GeneratorSet, MembershipOracle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("{0} is not an additively idempotent class")]
    NotAi(GeneratorSet),
    #[error("{0} is not a class of the lattice")]
    UnknownClass(GeneratorSet),
    #[error("{what} of {a} and {b} is not unique")]
    NotUnique { what: &'static str, a: GeneratorSet, b: GeneratorSet },
    #[error("{0} is not a subset of Z2,W2,Z7,Z8")]
    NotNonAi(GeneratorSet),
    #[error(transparent)]
    Model(#[from] models::ModelError),
}

/// A variety, keyed by its canonical label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VarietyClass {
    pub label: GeneratorSet,
}

impl VarietyClass {
    pub fn is_ai(self) -> bool {
        self.label.is_subset(GeneratorSet::AI)
    }
}

impl fmt::Display for VarietyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.label)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseTag {
    N2T2,
    T2only,
    N2only,
    Neither,
}

impl CaseTag {
    pub const ALL: [CaseTag; 4] = [CaseTag::N2T2, CaseTag::T2only, CaseTag::N2only, CaseTag::Neither];

    pub fn of(base: GeneratorSet) -> CaseTag {
        match (base.contains(SemiringName::N2), base.contains(SemiringName::T2)) {
            (true, true) => CaseTag::N2T2,
            (false, true) => CaseTag::T2only,
            (true, false) => CaseTag::N2only,
            (false, false) => CaseTag::Neither,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::N2T2 => "N2T2",
            CaseTag::T2only => "T2only",
            CaseTag::N2only => "N2only",
            CaseTag::Neither => "neither",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

type Bits = [u64; 16];

fn bit_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn bit_get(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn bits_and(a: &Bits, b: &Bits) -> Bits {
    std::array::from_fn(|i| a[i] & b[i])
}

fn bits_subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn bits_iter(b: &Bits) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(w, &word)| {
        (0..64).filter(move |i| word >> i & 1 == 1).map(move |i| w * 64 + i)
    })
}

#[derive(Debug, Clone)]
pub struct SubvarietyLattice {
    /// Sorted by (size, mask).
    classes: Vec<VarietyClass>,
    index: HashMap<GeneratorSet, usize>,
    /// Canonical label of every subset, indexed by mask.
    labels: Vec<GeneratorSet>,
    /// `below[i]` holds every `j` with `classes[j] ≤ classes[i]`.
    below: Vec<Bits>,
    above: Vec<Bits>,
    covers: Vec<(usize, usize)>,
    join: Vec<Vec<u16>>,
    meet: Vec<Vec<u16>>,
}

impl SubvarietyLattice {
    /// Enumerates all classes with the shared membership oracle and verifies
    /// that joins and meets exist and are unique.
    pub fn enumerate() -> Result<Self, LatticeError> {
        Self::from_labels(MembershipOracle::global().all_labels())
    }

    /// Enumerates with one direct free-closure computation per query.
    pub fn enumerate_direct() -> Result<Self, LatticeError> {
        let labels: Vec<GeneratorSet> = GeneratorSet::all_subsets()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|t| variety::canonical_label(*t))
            .collect();
        Self::from_labels(labels)
    }

    fn from_labels(labels: Vec<GeneratorSet>) -> Result<Self, LatticeError> {
        assert!(labels.len() == 1024);
        let distinct: BTreeSet<(usize, GeneratorSet)> = labels.iter().map(|l| (l.len(), *l)).collect();
        let classes: Vec<VarietyClass> = distinct.into_iter().map(|(_, label)| VarietyClass { label }).collect();
        assert!(classes.len() <= 1024);
        let index: HashMap<GeneratorSet, usize> = classes.iter().enumerate().map(|(i, c)| (c.label, i)).collect();
        let n = classes.len();

        let mut below = vec![[0u64; 16]; n];
        let mut above = vec![[0u64; 16]; n];
        for i in 0..n {
            for j in 0..n {
                if classes[j].label.is_subset(classes[i].label) {
                    bit_set(&mut below[i], j);
                    bit_set(&mut above[j], i);
                }
            }
        }
        let mut covers = Vec::new();
        for lo in 0..n {
            for hi in bits_iter(&above[lo]) {
                if hi == lo {
                    continue;
                }
                let between = bits_and(&above[lo], &below[hi]);
                if between.iter().map(|w| w.count_ones()).sum::<u32>() == 2 {
                    covers.push((lo, hi));
                }
            }
        }

        let mut lattice = SubvarietyLattice {
            classes,
            index,
            labels,
            below,
            above,
            covers,
            join: Vec::new(),
            meet: Vec::new(),
        };
        let tables: Result<Vec<(Vec<u16>, Vec<u16>)>, LatticeError> = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut joins = Vec::with_capacity(n);
                let mut meets = Vec::with_capacity(n);
                for b in 0..n {
                    joins.push(lattice.compute_join(a, b)? as u16);
                    meets.push(lattice.compute_meet(a, b)? as u16);
                }
                Ok((joins, meets))
            })
            .collect();
        let (join, meet) = tables?.into_iter().unzip();
        lattice.join = join;
        lattice.meet = meet;
        Ok(lattice)
    }

    /// Least upper bound, checked to lie below every common upper bound.
    /// Antisymmetry makes such an element unique when it exists.
    fn compute_join(&self, a: usize, b: usize) -> Result<usize, LatticeError> {
        let upper = bits_and(&self.above[a], &self.above[b]);
        let (la, lb) = (self.classes[a].label, self.classes[b].label);
        let by_union = self.index[&self.labels[la.union(lb).mask() as usize]];
        if bit_get(&upper, by_union) && bits_subset(&upper, &self.above[by_union]) {
            Ok(by_union)
        } else {
            Err(LatticeError::NotUnique { what: "join", a: la, b: lb })
        }
    }

    /// Greatest lower bound by scanning the common lower bounds, largest first.
    fn compute_meet(&self, a: usize, b: usize) -> Result<usize, LatticeError> {
        let lower = bits_and(&self.below[a], &self.below[b]);
        let candidates: Vec<usize> = bits_iter(&lower).collect();
        candidates
            .into_iter()
            .rev()
            .find(|&l| bits_subset(&lower, &self.below[l]))
            .ok_or(LatticeError::NotUnique { what: "meet", a: self.classes[a].label, b: self.classes[b].label })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[VarietyClass] {
        &self.classes
    }

    pub fn covers(&self) -> impl Iterator<Item = (VarietyClass, VarietyClass)> + '_ {
        self.covers.iter().map(|&(a, b)| (self.classes[a], self.classes[b]))
    }

    pub fn cover_count(&self) -> usize {
        self.covers.len()
    }

    /// Canonical label of an arbitrary generator set.
    pub fn label_of(&self, t: GeneratorSet) -> GeneratorSet {
        self.labels[t.mask() as usize]
    }

    pub fn class_of(&self, t: GeneratorSet) -> VarietyClass {
        VarietyClass { label: self.label_of(t) }
    }

    fn idx(&self, c: VarietyClass) -> Result<usize, LatticeError> {
        self.index.get(&c.label).copied().ok_or(LatticeError::UnknownClass(c.label))
    }

    pub fn contains(&self, c: VarietyClass) -> bool {
        self.index.contains_key(&c.label)
    }

    pub fn bottom(&self) -> VarietyClass {
        self.class_of(GeneratorSet::EMPTY)
    }

    pub fn top(&self) -> VarietyClass {
        self.class_of(GeneratorSet::ALL)
    }

    pub fn leq(&self, a: VarietyClass, b: VarietyClass) -> bool {
        a.label.is_subset(b.label)
    }

    pub fn join(&self, a: VarietyClass, b: VarietyClass) -> Result<VarietyClass, LatticeError> {
        let (i, j) = (self.idx(a)?, self.idx(b)?);
        Ok(self.classes[self.join[i][j] as usize])
    }

    pub fn meet(&self, a: VarietyClass, b: VarietyClass) -> Result<VarietyClass, LatticeError> {
        let (i, j) = (self.idx(a)?, self.idx(b)?);
        Ok(self.classes[self.meet[i][j] as usize])
    }

    /// `V ↦ V ∩ aiSr(2)`.
    pub fn phi(&self, c: VarietyClass) -> VarietyClass {
        VarietyClass { label: c.label.intersection(GeneratorSet::AI) }
    }

    /// The largest ai class below `c`, found by scanning.
    pub fn max_ai_below(&self, c: VarietyClass) -> Result<VarietyClass, LatticeError> {
        let i = self.idx(c)?;
        let ai: Vec<usize> = bits_iter(&self.below[i]).filter(|&j| self.classes[j].is_ai()).collect();
        let maxima: Vec<usize> =
            ai.iter().copied().filter(|&j| ai.iter().all(|&k| k == j || !bit_get(&self.below[k], j))).collect();
        match maxima.as_slice() {
            [m] => Ok(self.classes[*m]),
            _ => Err(LatticeError::NotUnique { what: "ai part", a: c.label, b: c.label }),
        }
    }

    pub fn ai_classes(&self) -> Vec<VarietyClass> {
        self.classes.iter().copied().filter(|c| c.is_ai()).collect()
    }

    /// The interval `[V, V̂]` above an ai class.
    pub fn interval(&self, base: VarietyClass) -> Result<IntervalReport, LatticeError> {
        let b = self.idx(base)?;
        if !base.is_ai() {
            return Err(LatticeError::NotAi(base.label));
        }
        let top = self.class_of(base.label.union(GeneratorSet::NON_AI));
        let t = self.idx(top)?;
        let inside = bits_and(&self.above[b], &self.below[t]);
        let members: Vec<VarietyClass> = bits_iter(&inside).map(|i| self.classes[i]).collect();
        let edges: Vec<(VarietyClass, VarietyClass)> = self
            .covers
            .iter()
            .filter(|(lo, hi)| bit_get(&inside, *lo) && bit_get(&inside, *hi))
            .map(|&(lo, hi)| (self.classes[lo], self.classes[hi]))
            .collect();
        Ok(IntervalReport { base, top, members, edges, case_tag: CaseTag::of(base.label) })
    }

    /// All 64 intervals in mask order of their bases.
    pub fn intervals(&self) -> Vec<IntervalReport> {
        let mut bases = self.ai_classes();
        bases.sort_by_key(|c| c.label.mask());
        bases.into_iter().map(|b| self.interval(b).expect("ai class")).collect()
    }

    /// The unique maximal class below `top(base)` all of whose generators
    /// satisfy `extra`.
    pub fn maximal_satisfying(&self, base: VarietyClass, extra: &[Identity]) -> Result<VarietyClass, RelativeRefutation> {
        let top = self.class_of(base.label.union(GeneratorSet::NON_AI));
        let good: GeneratorSet = top
            .label
            .iter()
            .filter(|s| extra.iter().all(|id| models::satisfies(s.table(), id).unwrap_or(false)))
            .collect();
        let candidates: Vec<VarietyClass> =
            self.classes.iter().copied().filter(|c| c.label.is_subset(top.label) && c.label.is_subset(good)).collect();
        let maxima: Vec<VarietyClass> = candidates
            .iter()
            .copied()
            .filter(|c| candidates.iter().all(|d| d == c || !c.label.is_subset(d.label)))
            .collect();
        match maxima.as_slice() {
            [m] => Ok(*m),
            _ => Err(RelativeRefutation { maxima }),
        }
    }

    /// Whether `extra` cuts `[base, top(base)]` down to exactly
    /// `join(base, class(expected))`.
    pub fn check_relative_axiom(
        &self,
        base: VarietyClass,
        extra: &Identity,
        expected: GeneratorSet,
    ) -> Result<RelativeOutcome, LatticeError> {
        self.relative_outcome(base, std::slice::from_ref(extra), expected)
    }

    fn relative_outcome(
        &self,
        base: VarietyClass,
        extra: &[Identity],
        expected: GeneratorSet,
    ) -> Result<RelativeOutcome, LatticeError> {
        if !base.is_ai() {
            return Err(LatticeError::NotAi(base.label));
        }
        if !expected.is_subset(GeneratorSet::NON_AI) {
            return Err(LatticeError::NotNonAi(expected));
        }
        let target = self.class_of(base.label.union(expected));
        Ok(match self.maximal_satisfying(base, extra) {
            Ok(found) => RelativeOutcome { base, expected: target, found: Some(found), refutation: None },
            Err(r) => RelativeOutcome { base, expected: target, found: None, refutation: Some(r) },
        })
    }

    /// Probe check for the schema `x + u' ≈ 2x + v'` (with `V ⊨ u' ≈ v'` and
    /// `x` absent from both), expected to cut out `V ∨ HSP(Z2, W2)`.
    pub fn probe_schema(&self, base: VarietyClass) -> Result<RelativeOutcome, LatticeError> {
        let probes = schema_probes(base.label);
        self.relative_outcome(base, &probes, GeneratorSet::single(SemiringName::Z2).with(SemiringName::W2))
    }

    pub fn export_dot(&self) -> String {
        dot(self.classes.iter().copied(), self.covers())
    }

    pub fn export_json(&self) -> String {
        let intervals = self.intervals();
        let doc = LatticeJson {
            classes: self.classes.iter().map(ClassJson::from).collect(),
            covers: self.covers().map(|(a, b)| [a.label.mask(), b.label.mask()]).collect(),
            intervals: intervals.iter().map(IntervalJson::from).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelativeRefutation {
    pub maxima: Vec<VarietyClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelativeOutcome {
    pub base: VarietyClass,
    pub expected: VarietyClass,
    pub found: Option<VarietyClass>,
    pub refutation: Option<RelativeRefutation>,
}

impl RelativeOutcome {
    pub fn holds(&self) -> bool {
        self.found == Some(self.expected)
    }
}

fn var(c: char) -> TermSum {
    TermSum::var(Variable::letter(c))
}

fn mono(s: &str) -> TermSum {
    TermSum::monomial(Monomial::parse(s).expect("literal monomial"))
}

/// Finite instances of `x + u' ≈ 2x + v'`.
pub fn schema_probes(base: GeneratorSet) -> Vec<Identity> {
    let x = var('x');
    let mut pairs: Vec<(TermSum, TermSum)> = ["y", "yz", "y^2", "yzw"].iter().map(|m| (mono(m), mono(m))).collect();
    pairs.push((var('y').add(&var('z')), var('y').add(&var('z'))));
    // Basis identities holding throughout V, with x renamed away.
    let rename = |v: &Variable| if v.name() == "x" { Variable::letter('v') } else { v.clone() };
    for s in base.iter() {
        for (_, id) in crate::proofs::axioms::basis(s) {
            if base.iter().all(|t| models::satisfies(t.table(), &id).unwrap_or(false)) {
                let id = id.rename(&rename);
                pairs.push((id.lhs, id.rhs));
            }
        }
    }
    pairs
        .into_iter()
        .map(|(u, v)| Identity::new(x.add(&u), x.scale(2).add(&v)))
        .collect()
}

/// One of the nine single-identity relative axiomatizations.
#[derive(Debug, Clone)]
pub struct RelativeLemma {
    pub identity: &'static str,
    pub expected: &'static [SemiringName],
    pub condition: &'static str,
    applies: fn(GeneratorSet) -> bool,
}

impl RelativeLemma {
    pub fn applies(&self, base: GeneratorSet) -> bool {
        (self.applies)(base)
    }

    pub fn identity(&self) -> Identity {
        Identity::parse(self.identity).expect("literal identity")
    }

    pub fn expected(&self) -> GeneratorSet {
        self.expected.iter().copied().collect()
    }
}

use SemiringName::{N2, T2, W2, Z2, Z7, Z8};

pub const RELATIVE_LEMMAS: [RelativeLemma; 9] = [
    RelativeLemma { identity: "2x^2 ~ 3x^2", expected: &[Z2, W2, Z7], condition: "any", applies: |_| true },
    RelativeLemma { identity: "xy ~ 3xy", expected: &[Z2, Z7, Z8], condition: "any", applies: |_| true },
    RelativeLemma { identity: "xy ~ 2xy", expected: &[Z2, Z7], condition: "any", applies: |_| true },
    RelativeLemma { identity: "x^2 ~ x + 2x^2", expected: &[Z2, Z8], condition: "N2 not in V", applies: |b| !b.contains(N2) },
    RelativeLemma {
        identity: "x^2 ~ x",
        expected: &[W2, Z8],
        condition: "V within L2,R2,M2,D2",
        applies: |b| !b.contains(N2) && !b.contains(T2),
    },
    RelativeLemma { identity: "x ~ x + 2x^2", expected: &[Z7, Z8], condition: "T2 not in V", applies: |b| !b.contains(T2) },
    RelativeLemma { identity: "x^2 ~ x + x^2", expected: &[Z2], condition: "N2 not in V", applies: |b| !b.contains(N2) },
    RelativeLemma { identity: "x ~ x + x^2", expected: &[Z7], condition: "T2 in V", applies: |b| b.contains(T2) },
    RelativeLemma { identity: "x ~ 2x + x^2", expected: &[Z8], condition: "T2 not in V", applies: |b| !b.contains(T2) },
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalReport {
    pub base: VarietyClass,
    pub top: VarietyClass,
    pub members: Vec<VarietyClass>,
    pub edges: Vec<(VarietyClass, VarietyClass)>,
    pub case_tag: CaseTag,
}

impl IntervalReport {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn export_dot(&self) -> String {
        dot(self.members.iter().copied(), self.edges.iter().copied())
    }

    pub fn export_json(&self) -> String {
        serde_json::to_string_pretty(&IntervalJson::from(self)).expect("serializable") + "\n"
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "base    {}", self.base.label);
        let _ = writeln!(out, "top     {}", self.top.label);
        let _ = writeln!(out, "case    {}", self.case_tag);
        let _ = writeln!(out, "size    {}", self.size());
        let _ = writeln!(out, "edges   {}", self.edges.len());
        for m in &self.members {
            let _ = writeln!(out, "  {}", m.label);
        }
        out
    }
}

fn dot(nodes: impl Iterator<Item = VarietyClass>, edges: impl Iterator<Item = (VarietyClass, VarietyClass)>) -> String {
    let mut out = String::from("digraph subvarieties {\n  rankdir=BT;\n");
    for n in nodes {
        let _ = writeln!(out, "  \"{}\";", n.label);
    }
    for (lo, hi) in edges {
        let _ = writeln!(out, "  \"{}\" -> \"{}\";", lo.label, hi.label);
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct ClassJson {
    mask: u16,
    generators: Vec<&'static str>,
    is_ai: bool,
}

impl From<&VarietyClass> for ClassJson {
    fn from(c: &VarietyClass) -> Self {
        ClassJson { mask: c.label.mask(), generators: c.label.names(), is_ai: c.is_ai() }
    }
}

#[derive(Serialize)]
struct IntervalJson {
    base: u16,
    top: u16,
    case: &'static str,
    members: Vec<u16>,
}

impl From<&IntervalReport> for IntervalJson {
    fn from(r: &IntervalReport) -> Self {
        IntervalJson {
            base: r.base.label.mask(),
            top: r.top.label.mask(),
            case: r.case_tag.as_str(),
            members: r.members.iter().map(|m| m.label.mask()).collect(),
        }
    }
}

#[derive(Serialize)]
struct LatticeJson {
    classes: Vec<ClassJson>,
    covers: Vec<[u16; 2]>,
    intervals: Vec<IntervalJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;
    use SemiringName::*;

    fn lattice() -> &'static SubvarietyLattice {
        static L: OnceLock<SubvarietyLattice> = OnceLock::new();
        L.get_or_init(|| SubvarietyLattice::enumerate().unwrap())
    }

    fn set(names: &[SemiringName]) -> GeneratorSet {
        names.iter().copied().collect()
    }

    #[test]
    fn bounds() {
        let l = lattice();
        assert_eq!(l.bottom().label, GeneratorSet::EMPTY);
        assert_eq!(l.top().label, GeneratorSet::ALL);
        assert_eq!(l.classes()[0], l.bottom());
    }

    #[test]
    fn sixty_four_ai_classes_form_a_boolean_lattice() {
        let l = lattice();
        let ai = l.ai_classes();
        assert_eq!(ai.len(), 64);
        for a in &ai {
            for b in &ai {
                assert_eq!(variety::leq(a.label, b.label), a.label.is_subset(b.label));
            }
        }
    }

    #[test]
    fn join_examples() {
        let l = lattice();
        let j = l.join(l.class_of(set(&[L2])), l.class_of(set(&[R2]))).unwrap();
        assert!(j.label.contains(L2) && j.label.contains(R2));
        let j = l.join(l.class_of(GeneratorSet::AI), l.class_of(GeneratorSet::NON_AI)).unwrap();
        assert_eq!(j, l.top());
        let a = l.class_of(set(&[D2, Z7]));
        assert_eq!(l.meet(a, a).unwrap(), a);
    }

    #[test]
    fn phi_top_and_max_ai_below() {
        let l = lattice();
        assert_eq!(l.phi(l.top()).label, GeneratorSet::AI);
        for c in l.classes() {
            assert_eq!(l.phi(*c), l.max_ai_below(*c).unwrap());
        }
    }

    #[test]
    fn intervals_partition_classes() {
        let l = lattice();
        let ivs = l.intervals();
        assert_eq!(ivs.len(), 64);
        let total: usize = ivs.iter().map(IntervalReport::size).sum();
        assert_eq!(total, l.len());
        let all: BTreeSet<VarietyClass> = ivs.iter().flat_map(|r| r.members.iter().copied()).collect();
        assert_eq!(all.len(), l.len());
    }

    #[test]
    fn interval_rejects_non_ai_base() {
        let l = lattice();
        assert!(matches!(l.interval(l.class_of(set(&[Z7]))), Err(LatticeError::NotAi(_))));
    }

    #[test]
    fn relative_axiom_example() {
        let l = lattice();
        let base = l.class_of(GeneratorSet::AI);
        let out = l.check_relative_axiom(base, &Identity::parse("2x^2 ~ 3x^2").unwrap(), set(&[Z2, W2, Z7])).unwrap();
        assert!(out.holds(), "{out:?}");
    }

    #[test]
    fn double_idempotence_cuts_out_the_ai_part() {
        let l = lattice();
        let found = l.maximal_satisfying(l.class_of(GeneratorSet::AI), &[Identity::parse("2x ~ x").unwrap()]).unwrap();
        assert_eq!(found.label, GeneratorSet::AI);
    }

    #[test]
    fn exports_are_deterministic() {
        let l = lattice();
        assert_eq!(l.export_dot(), l.export_dot());
        let dot = l.export_dot();
        assert_eq!(dot.lines().filter(|s| s.ends_with(';') && !s.contains("->") && !s.contains("rankdir")).count(), l.len());
        let json: serde_json::Value = serde_json::from_str(&l.export_json()).unwrap();
        assert_eq!(json["classes"].as_array().unwrap().len(), l.len());
        assert_eq!(json["intervals"].as_array().unwrap().len(), 64);
    }
}
