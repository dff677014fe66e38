//! Proof scripts: explicit rewrite chains and their checker.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::term::{Identity, Monomial, ParseError, TermSum, Variable};

use super::axioms::{Axiom, AxiomError, AxiomSet};
use super::{parse_flat, parse_flat_identity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "fwd")]
    Forward,
    #[serde(rename = "bwd")]
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "fwd",
            Direction::Backward => "bwd",
        })
    }
}

/// One application of an axiom instance inside a context.
///
/// `summands` selects a sub-multiset of the current sum by index into
/// [`TermSum::summands`]; `None` selects everything. `span` is a half-open
/// letter range `[start, end)` inside the single selected monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub axiom: String,
    pub direction: Direction,
    pub substitution: BTreeMap<Variable, TermSum>,
    pub summands: Option<Vec<usize>>,
    pub span: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofScript {
    pub name: Option<String>,
    pub goal: Identity,
    pub axioms: String,
    pub steps: Vec<RewriteStep>,
    /// Other scripts whose goals may be used as axioms, by relative path.
    pub lemmas: Vec<String>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("axiom {0:?} is not in the axiom set")]
    UnknownAxiom(String),
    #[error("substitution for {axiom} is missing variable {var}")]
    MissingSubstitution { axiom: String, var: Variable },
    #[error("substitution binds {0}, which does not occur in the axiom")]
    UnusedSubstitution(Variable),
    #[error("summand index {index} out of range for a sum of {count} summands")]
    SummandIndex { index: usize, count: usize },
    #[error("summand index {0} selected twice")]
    DuplicateSummand(usize),
    #[error("factor span used with the sum-shaped instance `{instance}`")]
    SpanOnSum { instance: String },
    #[error("factor span needs exactly one selected summand, got {0}")]
    SpanSelection(usize),
    #[error("span [{start}, {end}) does not fit a monomial of length {len}")]
    SpanRange { start: usize, end: usize, len: usize },
    #[error("site mismatch: expected `{expected}`, found `{found}`")]
    SiteMismatch { expected: String, found: String },
    #[error("steps end at `{reached}` instead of `{expected}`")]
    EndMismatch { reached: String, expected: String },
    #[error("parse error in {context}: {error}")]
    Parse { context: String, error: ParseError },
    #[error(transparent)]
    Axioms(#[from] AxiomError),
    #[error("lemma {name}: {error}")]
    Lemma { name: String, error: Box<ProofError> },
    #[error("lemma {0} rejected")]
    LemmaRejected(String),
    #[error("lemma {lemma} uses axiom {axiom}, which the citing script's set lacks")]
    LemmaAxioms { lemma: String, axiom: String },
    #[error("lemma cycle through {0}")]
    LemmaCycle(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed script: {0}")]
    Json(String),
}

/// Applies one step to `u`.
pub fn apply_step(u: &TermSum, step: &RewriteStep, axioms: &AxiomSet) -> Result<TermSum, ProofError> {
    let id = axioms.get(&step.axiom).ok_or_else(|| ProofError::UnknownAxiom(step.axiom.clone()))?;
    let (from, to) = match step.direction {
        Direction::Forward => (&id.lhs, &id.rhs),
        Direction::Backward => (&id.rhs, &id.lhs),
    };
    let vars = id.variables();
    if let Some(var) = vars.iter().find(|v| !step.substitution.contains_key(*v)) {
        return Err(ProofError::MissingSubstitution { axiom: step.axiom.clone(), var: var.clone() });
    }
    if let Some(v) = step.substitution.keys().find(|v| !vars.contains(*v)) {
        return Err(ProofError::UnusedSubstitution(v.clone()));
    }
    let instance_from = from.substitute(&step.substitution);
    let instance_to = to.substitute(&step.substitution);

    let all = u.summands();
    let chosen: Vec<usize> = match &step.summands {
        None => (0..all.len()).collect(),
        Some(idx) => {
            let mut seen = BTreeSet::new();
            for &i in idx {
                if i >= all.len() {
                    return Err(ProofError::SummandIndex { index: i, count: all.len() });
                }
                if !seen.insert(i) {
                    return Err(ProofError::DuplicateSummand(i));
                }
            }
            idx.clone()
        }
    };
    let rest = TermSum::from_monomials(
        all.iter().enumerate().filter(|(i, _)| !chosen.contains(i)).map(|(_, m)| (*m).clone()),
    );
    let selected = TermSum::from_monomials(chosen.iter().map(|&i| all[i].clone()));

    let replaced = match step.span {
        None => {
            if selected.as_ref() != Some(&instance_from) {
                let found = selected.map(|s| s.to_string()).unwrap_or_default();
                return Err(ProofError::SiteMismatch { expected: instance_from.to_string(), found });
            }
            instance_to
        }
        Some((start, end)) => {
            let pattern = match instance_from.as_single_monomial() {
                Some(m) => m,
                None => return Err(ProofError::SpanOnSum { instance: instance_from.to_string() }),
            };
            if chosen.len() != 1 {
                return Err(ProofError::SpanSelection(chosen.len()));
            }
            let word = all[chosen[0]].letters();
            if start >= end || end > word.len() {
                return Err(ProofError::SpanRange { start, end, len: word.len() });
            }
            let found = Monomial::new(word[start..end].to_vec()).expect("nonempty span");
            if &found != pattern {
                return Err(ProofError::SiteMismatch { expected: pattern.to_string(), found: found.to_string() });
            }
            let mut out = instance_to;
            if start > 0 {
                out = TermSum::monomial(Monomial::new(word[..start].to_vec()).expect("nonempty")).mul(&out);
            }
            if end < word.len() {
                out = out.mul(&TermSum::monomial(Monomial::new(word[end..].to_vec()).expect("nonempty")));
            }
            out
        }
    };
    Ok(match rest {
        Some(r) => r.add(&replaced),
        None => replaced,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every intermediate term, starting with the goal's left side.
    Accepted { trace: Vec<TermSum> },
    /// `step` is the failing step's index, or the step count when the chain
    /// ends on the wrong term.
    Rejected { step: usize, error: ProofError },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted { .. })
    }
}

/// Replays the steps from the goal's left side.
pub fn check_script(p: &ProofScript, axioms: &AxiomSet) -> Verdict {
    let mut u = p.goal.lhs.clone();
    let mut trace = vec![u.clone()];
    for (i, step) in p.steps.iter().enumerate() {
        match apply_step(&u, step, axioms) {
            Ok(next) => u = next,
            Err(error) => return Verdict::Rejected { step: i, error },
        }
        trace.push(u.clone());
    }
    if u != p.goal.rhs {
        return Verdict::Rejected {
            step: p.steps.len(),
            error: ProofError::EndMismatch { reached: u.to_string(), expected: p.goal.rhs.to_string() },
        };
    }
    Verdict::Accepted { trace }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct StepJson {
    axiom: String,
    dir: Direction,
    #[serde(default)]
    subst: BTreeMap<String, String>,
    #[serde(default)]
    summands: Option<Vec<usize>>,
    #[serde(default)]
    span: Option<[usize; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ScriptJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    goal: String,
    axioms: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    lemmas: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    steps: Vec<StepJson>,
}

impl ProofScript {
    pub fn from_json(text: &str) -> Result<ProofScript, ProofError> {
        let raw: ScriptJson = serde_json::from_str(text).map_err(|e| ProofError::Json(e.to_string()))?;
        let goal = parse_flat_identity(&raw.goal)
            .map_err(|error| ProofError::Parse { context: "goal".into(), error })?;
        let steps = raw
            .steps
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                let mut substitution = BTreeMap::new();
                for (k, v) in s.subst {
                    let ctx = |error| ProofError::Parse { context: format!("step {i} substitution for {k}"), error };
                    let var = Variable::new(&k).map_err(ctx)?;
                    let term = parse_flat(&v).map_err(ctx)?;
                    substitution.insert(var, term);
                }
                Ok(RewriteStep {
                    axiom: s.axiom,
                    direction: s.dir,
                    substitution,
                    summands: s.summands,
                    span: s.span.map(|[a, b]| (a, b)),
                })
            })
            .collect::<Result<Vec<_>, ProofError>>()?;
        Ok(ProofScript { name: raw.name, goal, axioms: raw.axioms, steps, lemmas: raw.lemmas, note: raw.note })
    }

    pub fn to_json(&self) -> String {
        let raw = ScriptJson {
            name: self.name.clone(),
            goal: self.goal.to_string(),
            axioms: self.axioms.clone(),
            lemmas: self.lemmas.clone(),
            note: self.note.clone(),
            steps: self
                .steps
                .iter()
                .map(|s| StepJson {
                    axiom: s.axiom.clone(),
                    dir: s.direction,
                    subst: s.substitution.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
                    summands: s.summands.clone(),
                    span: s.span.map(|(a, b)| [a, b]),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable") + "\n"
    }
}

/// Result of checking a script together with the lemmas it cites.
#[derive(Debug, Clone)]
pub struct Checked {
    pub script: ProofScript,
    /// The axiom set the script was checked against, lemma goals included.
    pub axioms: AxiomSet,
    pub verdict: Verdict,
    pub lemmas: Vec<Checked>,
}

impl Checked {
    /// The axioms the script ultimately rests on, lemma goals excluded.
    pub fn base_axioms(&self) -> Result<AxiomSet, ProofError> {
        Ok(AxiomSet::named(&self.script.axioms)?)
    }
}

/// Checks a script given as text; `load` resolves lemma references.
pub fn check_source(text: &str, load: &dyn Fn(&str) -> Result<String, ProofError>) -> Result<Checked, ProofError> {
    check_rec(text, "<root>", load, &mut Vec::new())
}

fn check_rec(
    text: &str,
    label: &str,
    load: &dyn Fn(&str) -> Result<String, ProofError>,
    stack: &mut Vec<String>,
) -> Result<Checked, ProofError> {
    let script = ProofScript::from_json(text)?;
    let mut axioms = AxiomSet::named(&script.axioms)?;
    let mut lemmas = Vec::new();
    stack.push(label.to_string());
    for reference in &script.lemmas {
        if stack.contains(reference) {
            return Err(ProofError::LemmaCycle(reference.clone()));
        }
        let wrap = |error: ProofError| ProofError::Lemma { name: reference.clone(), error: Box::new(error) };
        let source = load(reference).map_err(wrap)?;
        let lemma = check_rec(&source, reference, load, stack).map_err(wrap)?;
        if !lemma.verdict.is_accepted() {
            return Err(ProofError::LemmaRejected(reference.clone()));
        }
        for (id, _) in AxiomSet::named(&lemma.script.axioms)?.iter() {
            if axioms.get(id).is_none() {
                return Err(ProofError::LemmaAxioms { lemma: reference.clone(), axiom: id.to_string() });
            }
        }
        let id = lemma.script.name.clone().unwrap_or_else(|| reference.clone());
        axioms.insert(Axiom { id, identity: lemma.script.goal.clone() })?;
        lemmas.push(lemma);
    }
    stack.pop();
    let verdict = check_script(&script, &axioms);
    Ok(Checked { script, axioms, verdict, lemmas })
}

/// Checks a script file; lemma paths are relative to the file's directory.
pub fn check_file(path: &Path) -> Result<Checked, ProofError> {
    let dir: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let read = |p: &Path| {
        std::fs::read_to_string(p).map_err(|e| ProofError::Io { path: p.display().to_string(), message: e.to_string() })
    };
    let text = read(path)?;
    check_source(&text, &|rel| read(&dir.join(rel)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum(s: &str) -> TermSum {
        parse_flat(s).unwrap()
    }

    fn step(axiom: &str, dir: Direction, subst: &[(&str, &str)], summands: Option<Vec<usize>>, span: Option<(usize, usize)>) -> RewriteStep {
        RewriteStep {
            axiom: axiom.into(),
            direction: dir,
            substitution: subst.iter().map(|(k, v)| (Variable::new(k).unwrap(), sum(v))).collect(),
            summands,
            span,
        }
    }

    fn sr2() -> AxiomSet {
        AxiomSet::named("sr2").unwrap()
    }

    #[test]
    fn cube_steps() {
        let ax = sr2();
        let s1 = step("eq4", Direction::Backward, &[("x", "x^2"), ("y", "x")], None, None);
        let u = apply_step(&sum("x^3"), &s1, &ax).unwrap();
        assert_eq!(u, sum("x^6"));
        let s2 = step("eq4", Direction::Forward, &[("x", "x"), ("y", "x")], Some(vec![0]), Some((0, 4)));
        let u = apply_step(&u, &s2, &ax).unwrap();
        assert_eq!(u, sum("x^4"));
        let s3 = step("eq4", Direction::Forward, &[("x", "x"), ("y", "x")], None, None);
        assert_eq!(apply_step(&u, &s3, &ax).unwrap(), sum("x^2"));
    }

    #[test]
    fn sum_step() {
        let s = step("eq10", Direction::Forward, &[("x", "x"), ("y", "y")], Some(vec![0, 1]), None);
        assert_eq!(apply_step(&sum("x + y"), &s, &sr2()).unwrap(), sum("x + 3y"));
        let s = step("eq10", Direction::Forward, &[("x", "y"), ("y", "x")], Some(vec![0, 1]), None);
        assert_eq!(apply_step(&sum("x + y"), &s, &sr2()).unwrap(), sum("3x + y"));
    }

    #[test]
    fn rewriting_inside_a_larger_sum() {
        let s = step("eq4", Direction::Forward, &[("x", "y"), ("y", "z")], Some(vec![1]), Some((1, 5)));
        assert_eq!(apply_step(&sum("x + xyzyzt"), &s, &sr2()).unwrap(), sum("x + xyzt"));
    }

    #[test]
    fn step_errors() {
        let ax = sr2();
        let u = sum("x + y");
        let missing = step("eq10", Direction::Forward, &[("x", "x")], None, None);
        assert!(matches!(apply_step(&u, &missing, &ax), Err(ProofError::MissingSubstitution { .. })));
        let extra = step("eq10", Direction::Forward, &[("x", "x"), ("y", "y"), ("z", "z")], None, None);
        assert!(matches!(apply_step(&u, &extra, &ax), Err(ProofError::UnusedSubstitution(_))));
        let wrong = step("eq10", Direction::Forward, &[("x", "x"), ("y", "z")], None, None);
        assert!(matches!(apply_step(&u, &wrong, &ax), Err(ProofError::SiteMismatch { .. })));
        let span = step("eq10", Direction::Forward, &[("x", "x"), ("y", "y")], Some(vec![0]), Some((0, 1)));
        assert!(matches!(apply_step(&u, &span, &ax), Err(ProofError::SpanOnSum { .. })));
        let range = step("eq10", Direction::Forward, &[("x", "x"), ("y", "y")], Some(vec![2]), None);
        assert!(matches!(apply_step(&u, &range, &ax), Err(ProofError::SummandIndex { .. })));
        let dup = step("eq10", Direction::Forward, &[("x", "x"), ("y", "y")], Some(vec![0, 0]), None);
        assert!(matches!(apply_step(&u, &dup, &ax), Err(ProofError::DuplicateSummand(0))));
        let unknown = step("L2.b2", Direction::Forward, &[("x", "x"), ("y", "y")], None, None);
        assert!(matches!(apply_step(&u, &unknown, &ax), Err(ProofError::UnknownAxiom(_))));
    }

    #[test]
    fn empty_script_for_trivial_goal() {
        let p = ProofScript {
            name: None,
            goal: Identity::parse("x + y ~ y + x").unwrap(),
            axioms: "sr2".into(),
            steps: vec![],
            lemmas: vec![],
            note: None,
        };
        assert!(check_script(&p, &sr2()).is_accepted());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"goal": "x^3 ~ x^2", "axioms": "eq3,eq4", "steps": [
            {"axiom": "eq4", "dir": "bwd", "subst": {"x": "x^2", "y": "x"}, "summands": null, "span": null},
            {"axiom": "eq4", "dir": "fwd", "subst": {"x": "x", "y": "x"}, "summands": [0], "span": [0, 4]},
            {"axiom": "eq4", "dir": "fwd", "subst": {"x": "x", "y": "x"}}]}"#;
        let p = ProofScript::from_json(text).unwrap();
        let ax = AxiomSet::named(&p.axioms).unwrap();
        assert!(check_script(&p, &ax).is_accepted());
        assert_eq!(ProofScript::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn wrong_end_is_reported_after_last_step() {
        let text = r#"{"goal": "x^3 ~ x", "axioms": "eq4", "steps": [
            {"axiom": "eq4", "dir": "bwd", "subst": {"x": "x^2", "y": "x"}}]}"#;
        let p = ProofScript::from_json(text).unwrap();
        match check_script(&p, &AxiomSet::named("eq4").unwrap()) {
            Verdict::Rejected { step: 1, error: ProofError::EndMismatch { .. } } => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lemma_cycles_are_rejected() {
        let a = r#"{"name": "a", "goal": "x ~ x", "axioms": "eq4", "lemmas": ["b"], "steps": []}"#;
        let b = r#"{"name": "b", "goal": "x ~ x", "axioms": "eq4", "lemmas": ["b"], "steps": []}"#;
        let load = |r: &str| Ok(if r == "b" { b.to_string() } else { a.to_string() });
        assert!(check_source(a, &load).is_err());
    }
}
