//! Breadth-first search for short rewrite chains.
//!
//! Substitutions range over monomials only, so the search is incomplete even
//! within its limits. A failed search says nothing about derivability.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::models;
use crate::term::{Identity, Monomial, TermSum, Variable};

use super::axioms::AxiomSet;
use super::script::{apply_step, Direction, ProofScript, RewriteStep};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest number of letters in any intermediate term.
    pub max_size: usize,
    pub max_steps: usize,
    /// Largest number of terms in one breadth-first layer.
    pub max_frontier: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_size: 12, max_steps: 6, max_frontier: 200_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search limits must be positive")]
    InvalidLimits,
    #[error("frontier grew to {size} terms at depth {depth}, over the limit")]
    FrontierExceeded { depth: usize, size: usize },
}

type Binding = BTreeMap<Variable, Vec<Variable>>;

/// All ways to match `pattern` (variables standing for nonempty words)
/// against `word`, extending `b`.
fn match_word(pattern: &[Variable], word: &[Variable], b: &Binding, out: &mut Vec<Binding>) {
    let Some((first, rest)) = pattern.split_first() else {
        if word.is_empty() {
            out.push(b.clone());
        }
        return;
    };
    if let Some(image) = b.get(first) {
        if word.starts_with(image) {
            match_word(rest, &word[image.len()..], b, out);
        }
        return;
    }
    // Every later pattern letter needs at least one letter of the word.
    for len in 1..=word.len().saturating_sub(rest.len()) {
        let mut b2 = b.clone();
        b2.insert(first.clone(), word[..len].to_vec());
        match_word(rest, &word[len..], &b2, out);
    }
}

/// Matches the summands of `pattern` against distinct summands of `target`.
fn match_sum(pattern: &[&Monomial], target: &[&Monomial], used: &mut Vec<usize>, b: &Binding, out: &mut Vec<(Vec<usize>, Binding)>) {
    let Some((first, rest)) = pattern.split_first() else {
        let mut idx = used.clone();
        idx.sort_unstable();
        out.push((idx, b.clone()));
        return;
    };
    for (i, m) in target.iter().enumerate() {
        if used.contains(&i) || (i > 0 && target[i - 1] == *m && !used.contains(&(i - 1))) {
            continue;
        }
        let mut found = Vec::new();
        match_word(first.letters(), m.letters(), b, &mut found);
        for b2 in found {
            used.push(i);
            match_sum(rest, target, used, &b2, out);
            used.pop();
        }
    }
}

fn to_substitution(b: &Binding) -> BTreeMap<Variable, TermSum> {
    b.iter()
        .map(|(v, w)| (v.clone(), TermSum::monomial(Monomial::new(w.clone()).expect("nonempty image"))))
        .collect()
}

/// Every step applicable to `u` whose result stays within `max_size`.
pub fn neighbours(u: &TermSum, axioms: &AxiomSet, max_size: usize) -> Vec<(RewriteStep, TermSum)> {
    let target = u.summands();
    let mut out = Vec::new();
    for (id, identity) in axioms.iter() {
        for direction in [Direction::Forward, Direction::Backward] {
            let (from, to) = match direction {
                Direction::Forward => (&identity.lhs, &identity.rhs),
                Direction::Backward => (&identity.rhs, &identity.lhs),
            };
            // Variables introduced by the other side would be unconstrained.
            if !to.sum_content().is_subset(&from.sum_content()) || identity.is_trivial() {
                continue;
            }
            let mut candidates: Vec<RewriteStep> = Vec::new();
            if let Some(p) = from.as_single_monomial() {
                for (i, m) in target.iter().enumerate() {
                    if i > 0 && target[i - 1] == *m {
                        continue;
                    }
                    let w = m.letters();
                    for start in 0..w.len() {
                        for end in start + 1..=w.len() {
                            let mut found = Vec::new();
                            match_word(p.letters(), &w[start..end], &Binding::new(), &mut found);
                            for b in found {
                                candidates.push(RewriteStep {
                                    axiom: id.to_string(),
                                    direction,
                                    substitution: to_substitution(&b),
                                    summands: Some(vec![i]),
                                    span: Some((start, end)),
                                });
                            }
                        }
                    }
                }
            } else {
                let pattern = from.summands();
                let mut found = Vec::new();
                match_sum(&pattern, &target, &mut Vec::new(), &Binding::new(), &mut found);
                for (idx, b) in found {
                    candidates.push(RewriteStep {
                        axiom: id.to_string(),
                        direction,
                        substitution: to_substitution(&b),
                        summands: Some(idx),
                        span: None,
                    });
                }
            }
            for step in candidates {
                if let Ok(next) = apply_step(u, &step, axioms) {
                    if next.size() <= max_size {
                        out.push((step, next));
                    }
                }
            }
        }
    }
    out
}

/// Looks for a script deriving `goal` from `axioms` within `limits`.
///
/// Returns `Ok(None)` without searching when some two-element semiring
/// satisfies every axiom but not the goal, since no derivation can exist.
pub fn bounded_search(goal: &Identity, axioms: &AxiomSet, limits: SearchLimits) -> Result<Option<ProofScript>, SearchError> {
    if limits.max_size == 0 || limits.max_frontier == 0 {
        return Err(SearchError::InvalidLimits);
    }
    let script = |steps| ProofScript {
        name: None,
        goal: goal.clone(),
        axioms: axioms.name().to_string(),
        steps,
        lemmas: vec![],
        note: None,
    };
    if goal.is_trivial() {
        return Ok(Some(script(vec![])));
    }
    let refuted = axioms
        .models()
        .into_iter()
        .any(|s| !models::satisfies(s.table(), goal).unwrap_or(true));
    if refuted {
        return Ok(None);
    }

    let mut parent: HashMap<TermSum, Option<(TermSum, RewriteStep)>> = HashMap::new();
    parent.insert(goal.lhs.clone(), None);
    let mut layer = vec![goal.lhs.clone()];
    for depth in 1..=limits.max_steps {
        let mut next_layer = Vec::new();
        for u in &layer {
            for (step, v) in neighbours(u, axioms, limits.max_size) {
                if parent.contains_key(&v) {
                    continue;
                }
                parent.insert(v.clone(), Some((u.clone(), step)));
                if v == goal.rhs {
                    let mut steps = Vec::new();
                    let mut cur = v;
                    while let Some(Some((prev, step))) = parent.get(&cur) {
                        steps.push(step.clone());
                        cur = prev.clone();
                    }
                    steps.reverse();
                    return Ok(Some(script(steps)));
                }
                next_layer.push(v);
            }
        }
        if next_layer.len() > limits.max_frontier {
            return Err(SearchError::FrontierExceeded { depth, size: next_layer.len() });
        }
        if next_layer.is_empty() {
            break;
        }
        layer = next_layer;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proofs::script::check_script;

    #[test]
    fn word_matching() {
        let x = Variable::letter('x');
        let y = Variable::letter('y');
        let w: Vec<Variable> = "xxyx".chars().map(Variable::letter).collect();
        let mut out = Vec::new();
        match_word(&[x.clone(), y.clone()], &w, &Binding::new(), &mut out);
        assert_eq!(out.len(), 3);
        let mut out = Vec::new();
        match_word(&[x.clone(), x.clone()], &w[..2], &Binding::new(), &mut out);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0][&x], vec![x]);
    }

    #[test]
    fn finds_the_cube_law() {
        let goal = Identity::parse("x^3 ~ x^2").unwrap();
        let axioms = AxiomSet::named("eq3,eq4").unwrap();
        let limits = SearchLimits { max_size: 8, max_steps: 6, max_frontier: 100_000 };
        let p = bounded_search(&goal, &axioms, limits).unwrap().expect("script");
        assert!(check_script(&p, &axioms).is_accepted());
    }

    #[test]
    fn refuted_goal_has_no_script() {
        let goal = Identity::parse("x ~ 2x").unwrap();
        let axioms = AxiomSet::named("sr2").unwrap();
        assert_eq!(bounded_search(&goal, &axioms, SearchLimits::default()), Ok(None));
    }

    #[test]
    fn trivial_goal_has_empty_script() {
        let goal = Identity::parse("x + y ~ y + x").unwrap();
        let p = bounded_search(&goal, &AxiomSet::named("sr2").unwrap(), SearchLimits::default()).unwrap().unwrap();
        assert!(p.steps.is_empty());
    }

    #[test]
    fn frontier_limit_is_a_distinct_error() {
        let goal = Identity::parse("xy ~ x^2y").unwrap();
        let axioms = AxiomSet::named("reduced").unwrap();
        let limits = SearchLimits { max_size: 10, max_steps: 6, max_frontier: 3 };
        assert!(matches!(bounded_search(&goal, &axioms, limits), Err(SearchError::FrontierExceeded { .. })));
    }
}
