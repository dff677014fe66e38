//! Syntactic satisfaction criteria for the ten two-element semirings and the
//! semantic signature deciding the equational theory of **Sr**(2).
//!
//! Each semiring `S` gets a [`CriterionKey`]: a syntactic invariant of one side
//! such that a nontrivial identity `u ≈ v` holds in `S` exactly when the keys of
//! `u` and `v` coincide. The [`SemanticSignature`] bundles the components for
//! all ten semirings.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::models::{self, ModelError, SemiringName};
use crate::term::{Identity, TermSum, Variable};

pub type VarSet = BTreeSet<Variable>;

/// W₂ component: a single monomial with its content, or at least two summands.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum W2Class {
    Single(VarSet),
    Plural,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemanticSignature {
    pub heads: VarSet,
    pub tails: VarSet,
    pub contents: VarSet,
    /// ⊆-minimal monomial contents.
    pub min_contents: BTreeSet<VarSet>,
    pub unit_monomials: VarSet,
    pub has_long_monomial: bool,
    pub is_bare_variable: bool,
    pub w2_class: W2Class,
    /// Single-letter summands occurring an odd number of times.
    pub odd_unit_monomials: VarSet,
    /// Contents `c` for which the summands with content `c` are odd in number.
    pub odd_content_classes: BTreeSet<VarSet>,
}

pub fn min_contents(u: &TermSum) -> BTreeSet<VarSet> {
    let all: BTreeSet<VarSet> = u.iter().map(|(m, _)| m.content()).collect();
    all.iter()
        .filter(|c| !all.iter().any(|d| d != *c && d.is_subset(c)))
        .cloned()
        .collect()
}

pub fn unit_monomials(u: &TermSum) -> VarSet {
    u.iter().filter(|(m, _)| m.len() == 1).map(|(m, _)| m.head().clone()).collect()
}

pub fn has_long_monomial(u: &TermSum) -> bool {
    u.iter().any(|(m, _)| m.len() >= 2)
}

pub fn odd_unit_monomials(u: &TermSum) -> VarSet {
    u.iter().filter(|(m, k)| m.len() == 1 && k % 2 == 1).map(|(m, _)| m.head().clone()).collect()
}

pub fn odd_content_classes(u: &TermSum) -> BTreeSet<VarSet> {
    let mut odd = BTreeSet::new();
    for (m, k) in u.iter() {
        if k % 2 == 1 {
            let c = m.content();
            if !odd.remove(&c) {
                odd.insert(c);
            }
        }
    }
    odd
}

pub fn w2_class(u: &TermSum) -> W2Class {
    match u.as_single_monomial() {
        Some(m) => W2Class::Single(m.content()),
        None => W2Class::Plural,
    }
}

pub fn signature(u: &TermSum) -> SemanticSignature {
    SemanticSignature {
        heads: u.sum_heads(),
        tails: u.sum_tails(),
        contents: u.sum_content(),
        min_contents: min_contents(u),
        unit_monomials: unit_monomials(u),
        has_long_monomial: has_long_monomial(u),
        is_bare_variable: u.as_variable().is_some(),
        w2_class: w2_class(u),
        odd_unit_monomials: odd_unit_monomials(u),
        odd_content_classes: odd_content_classes(u),
    }
}

/// Decides `u ≈ v` in **Sr**(2) by comparing signatures.
pub fn sr2_equal(u: &TermSum, v: &TermSum) -> bool {
    signature(u) == signature(v)
}

/// The invariant of one side that a given semiring's criterion compares.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CriterionKey {
    Vars(VarSet),
    Antichain(BTreeSet<VarSet>),
    /// T₂: a sum containing a long monomial is constantly 1; otherwise it is
    /// the join of its letters.
    T2 { long: bool, units: VarSet },
    /// Z₂: a bare variable, or `None` for every other sum (constantly 0).
    Z2(Option<Variable>),
    W2(W2Class),
    Classes(BTreeSet<VarSet>),
}

pub fn criterion_key(name: SemiringName, u: &TermSum) -> CriterionKey {
    use SemiringName::*;
    match name {
        L2 => CriterionKey::Vars(u.sum_heads()),
        R2 => CriterionKey::Vars(u.sum_tails()),
        M2 => CriterionKey::Vars(u.sum_content()),
        D2 => CriterionKey::Antichain(min_contents(u)),
        N2 => CriterionKey::Vars(unit_monomials(u)),
        T2 => {
            let long = has_long_monomial(u);
            CriterionKey::T2 { long, units: if long { VarSet::new() } else { unit_monomials(u) } }
        }
        Z2 => CriterionKey::Z2(u.as_variable().cloned()),
        W2 => CriterionKey::W2(w2_class(u)),
        Z7 => CriterionKey::Vars(odd_unit_monomials(u)),
        Z8 => CriterionKey::Classes(odd_content_classes(u)),
    }
}

/// Syntactic satisfaction test for one semiring.
pub fn criterion(name: SemiringName, id: &Identity) -> bool {
    id.is_trivial() || criterion_key(name, &id.lhs) == criterion_key(name, &id.rhs)
}

/// Reference forms of the quantified criteria, evaluated literally. Used to
/// cross-check the quantifier-free keys above.
pub mod literal {
    use super::*;

    /// D₂: every summand of either side is dominated (by content inclusion)
    /// by some summand of the other side.
    pub fn d2(id: &Identity) -> bool {
        let cu: Vec<VarSet> = id.lhs.iter().map(|(m, _)| m.content()).collect();
        let cv: Vec<VarSet> = id.rhs.iter().map(|(m, _)| m.content()).collect();
        cu.iter().all(|ui| cv.iter().any(|vj| vj.is_subset(ui)))
            && cv.iter().all(|vk| cu.iter().any(|ul| ul.is_subset(vk)))
    }

    /// Number of summands (with multiplicity) whose content lies inside `a`.
    pub fn count_inside(u: &TermSum, a: &VarSet) -> u64 {
        u.iter().filter(|(m, _)| m.content().is_subset(a)).map(|(_, k)| k as u64).sum()
    }

    /// Z₈: for every nonempty `A ⊆ C(u) ∪ C(v)` the counts of summands with
    /// content inside `A` have equal parity. Exponential in the variable count.
    pub fn z8(id: &Identity) -> bool {
        first_z8_parity_mismatch(id).is_none()
    }

    pub fn first_z8_parity_mismatch(id: &Identity) -> Option<VarSet> {
        let vars: Vec<Variable> = id.variables().into_iter().collect();
        assert!(vars.len() < 24, "subset enumeration over {} variables", vars.len());
        (1u32..1 << vars.len()).find_map(|bits| {
            let a: VarSet =
                vars.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, v)| v.clone()).collect();
            (count_inside(&id.lhs, &a) % 2 != count_inside(&id.rhs, &a) % 2).then_some(a)
        })
    }
}

/// A subset `A` on which the Z₈ parities differ, taken as a smallest class in
/// the symmetric difference of the odd content classes.
pub fn z8_parity_witness(id: &Identity) -> Option<VarSet> {
    let l = odd_content_classes(&id.lhs);
    let r = odd_content_classes(&id.rhs);
    l.symmetric_difference(&r).min_by_key(|c| c.len()).cloned()
}

fn show_set(s: &VarSet) -> String {
    let items: Vec<String> = s.iter().map(Variable::name).collect();
    format!("{{{}}}", items.join(","))
}

fn show_family(f: &BTreeSet<VarSet>) -> String {
    let items: Vec<String> = f.iter().map(show_set).collect();
    format!("{{{}}}", items.join(","))
}

impl fmt::Display for CriterionKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriterionKey::Vars(s) => f.write_str(&show_set(s)),
            CriterionKey::Antichain(a) | CriterionKey::Classes(a) => f.write_str(&show_family(a)),
            CriterionKey::T2 { long: true, .. } => f.write_str("long monomial"),
            CriterionKey::T2 { long: false, units } => write!(f, "letters only {}", show_set(units)),
            CriterionKey::Z2(Some(v)) => write!(f, "bare {v}"),
            CriterionKey::Z2(None) => f.write_str("not a variable"),
            CriterionKey::W2(W2Class::Single(c)) => write!(f, "single, content {}", show_set(c)),
            CriterionKey::W2(W2Class::Plural) => f.write_str("plural"),
        }
    }
}

fn component_label(name: SemiringName) -> &'static str {
    use SemiringName::*;
    match name {
        L2 => "H(u)",
        R2 => "T(u)",
        M2 => "C(u)",
        D2 => "min contents",
        N2 => "unit monomials",
        T2 => "long monomial",
        Z2 => "bare variable",
        W2 => "summand shape",
        Z7 => "odd unit monomials",
        Z8 => "odd content classes",
    }
}

/// One row of an `explain` report.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionRow {
    pub semiring: SemiringName,
    pub component: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub criterion: bool,
    pub model: bool,
    /// Counterexample assignment from brute force, `var=bit` pairs.
    pub counterexample: Option<String>,
    /// Z₈ only: a set `A` on which the parities differ.
    pub parity_witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Explanation {
    pub identity: String,
    pub rows: Vec<CriterionRow>,
    pub sr2_equal: bool,
    pub all_models: bool,
}

impl Explanation {
    pub fn disagreements(&self) -> impl Iterator<Item = &CriterionRow> {
        self.rows.iter().filter(|r| r.criterion != r.model)
    }

    pub fn render_text(&self) -> String {
        let mut rows = vec![[
            "semiring".to_string(),
            "component".to_string(),
            "lhs".to_string(),
            "rhs".to_string(),
            "criterion".to_string(),
            "model".to_string(),
            "witness".to_string(),
        ]];
        for r in &self.rows {
            let witness = match (&r.counterexample, &r.parity_witness) {
                (Some(c), Some(a)) => format!("{c}; A={a}"),
                (Some(c), None) => c.clone(),
                (None, _) => String::new(),
            };
            rows.push([
                r.semiring.to_string(),
                r.component.to_string(),
                r.lhs.clone(),
                r.rhs.clone(),
                r.criterion.to_string(),
                r.model.to_string(),
                witness,
            ]);
        }
        let widths: Vec<usize> =
            (0..7).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
        let mut out = format!("identity: {}\n", self.identity);
        for r in &rows {
            let line: Vec<String> =
                r.iter().zip(&widths).map(|(cell, w)| format!("{cell:<w$}", w = *w)).collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out.push_str(&format!("Sr(2) signature equal: {}\n", self.sr2_equal));
        out
    }
}

pub fn explain(id: &Identity) -> Result<Explanation, ModelError> {
    let mut rows = Vec::with_capacity(10);
    for s in models::all_semirings() {
        let cex = models::counterexample(s, id)?;
        let parity_witness = (s.name == SemiringName::Z8).then(|| z8_parity_witness(id)).flatten();
        rows.push(CriterionRow {
            semiring: s.name,
            component: component_label(s.name),
            lhs: criterion_key(s.name, &id.lhs).to_string(),
            rhs: criterion_key(s.name, &id.rhs).to_string(),
            criterion: criterion(s.name, id),
            model: cex.is_none(),
            counterexample: cex.map(|a| {
                a.iter().map(|(v, b)| format!("{v}={b}")).collect::<Vec<_>>().join(",")
            }),
            parity_witness: parity_witness.as_ref().map(show_set),
        });
    }
    let all_models = rows.iter().all(|r| r.model);
    Ok(Explanation { identity: id.to_string(), rows, sr2_equal: sr2_equal(&id.lhs, &id.rhs), all_models })
}
