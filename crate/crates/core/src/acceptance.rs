//! The acceptance suite: eleven end-to-end checks of the whole pipeline.
//!
//! Each check returns a [`CriterionResult`] with a pass flag and human
//! readable details. The same functions back the `selftest` subcommand and
//! the `acceptance` integration test.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::criteria::{criterion, criterion_key, literal, signature, sr2_equal};
use crate::lattice::{CaseTag, SubvarietyLattice, VarietyClass, RELATIVE_LEMMAS};
use crate::models::{self, EvalContext, SemiringName};
use crate::proofs::axioms::{self, AxiomSet};
use crate::proofs::script::{self, check_script, ProofError, Verdict};
use crate::term::{Identity, Monomial, TermSum, Variable};
use crate::variety::{self, multisets, words, GeneratorSet, MembershipOracle};

pub const EXPECTED_CLASSES: usize = 480;
pub const ENUMERATION_BUDGET: Duration = Duration::from_secs(60);
pub const RANDOM_IDENTITIES: usize = 100_000;

/// Interval sizes per case.
pub const EXPECTED_INTERVAL_SIZES: [(CaseTag, usize); 4] =
    [(CaseTag::N2T2, 6), (CaseTag::T2only, 8), (CaseTag::N2only, 9), (CaseTag::Neither, 7)];

/// Hasse edges of the interval with both N2 and T2 in the base.
pub const EXPECTED_N2T2_EDGES: usize = 7;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub number: usize,
    pub title: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {:>2} {}", self.number, self.title)?;
        for d in &self.details {
            write!(f, "\n        {d}")?;
        }
        Ok(())
    }
}

fn result(number: usize, title: &'static str, checks: Vec<(bool, String)>) -> CriterionResult {
    let passed = checks.iter().all(|(ok, _)| *ok);
    let details = checks
        .into_iter()
        .map(|(ok, d)| format!("{} {d}", if ok { "ok  " } else { "FAIL" }))
        .collect();
    CriterionResult { number, title, passed, details }
}

/// The lattice plus the time its enumeration took, shared between checks.
pub fn lattice() -> &'static (SubvarietyLattice, Duration) {
    static L: OnceLock<(SubvarietyLattice, Duration)> = OnceLock::new();
    L.get_or_init(|| {
        let start = Instant::now();
        let l = SubvarietyLattice::enumerate().expect("joins and meets are unique");
        (l, start.elapsed())
    })
}

pub fn lattice_cardinality() -> CriterionResult {
    let (l, elapsed) = lattice();
    let count_ok = l.len() == EXPECTED_CLASSES;
    let mut checks = vec![
        (count_ok, format!("{} distinct classes from 1024 generator subsets (expected {EXPECTED_CLASSES})", l.len())),
        (*elapsed < ENUMERATION_BUDGET, format!("enumeration took {:.2?} (budget {ENUMERATION_BUDGET:?})", elapsed)),
    ];
    if !count_ok {
        checks.push((true, separation_note(l)));
    }
    result(1, "lattice cardinality", checks)
}

/// Describes one pair of classes the expected count would merge, with the
/// identity that separates them.
fn separation_note(l: &SubvarietyLattice) -> String {
    let base = GeneratorSet::AI;
    let a = l.class_of(base.with(SemiringName::Z7));
    let b = l.class_of(base.with(SemiringName::Z7).with(SemiringName::Z2));
    match variety::find_separating_identity(SemiringName::Z2, a.label) {
        Some((id, _)) => format!("e.g. {} and {} are separated by `{id}`", a.label, b.label),
        None => format!("{} and {} coincide", a.label, b.label),
    }
}

pub fn ai_restriction() -> CriterionResult {
    let (l, _) = lattice();
    let ai = l.ai_classes();
    let mut mismatches = 0;
    for a in &ai {
        for b in &ai {
            if variety::leq(a.label, b.label) != a.label.is_subset(b.label) {
                mismatches += 1;
            }
        }
    }
    let labels_ok = ai.iter().map(|c| c.label).collect::<std::collections::BTreeSet<_>>()
        == GeneratorSet::AI.subsets().collect();
    result(
        2,
        "additively idempotent restriction",
        vec![
            (ai.len() == 64, format!("{} ai classes (expected 64)", ai.len())),
            (labels_ok, "ai labels are exactly the subsets of the six ai names".into()),
            (mismatches == 0, format!("{mismatches} order/inclusion mismatches over 64x64 pairs")),
        ],
    )
}

pub fn interval_census() -> CriterionResult {
    let (l, _) = lattice();
    let ivs = l.intervals();
    let total: usize = ivs.iter().map(|r| r.size()).sum();
    let distinct: std::collections::BTreeSet<VarietyClass> = ivs.iter().flat_map(|r| r.members.iter().copied()).collect();
    let mut checks = vec![
        (ivs.len() == 64, format!("{} intervals (expected 64)", ivs.len())),
        (
            total == l.len() && distinct.len() == l.len(),
            format!("intervals cover {} classes with {} memberships", distinct.len(), total),
        ),
    ];
    for (tag, expected) in EXPECTED_INTERVAL_SIZES {
        let of_tag: Vec<_> = ivs.iter().filter(|r| r.case_tag == tag).collect();
        let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
        let mut edges: BTreeMap<usize, usize> = BTreeMap::new();
        for r in &of_tag {
            *sizes.entry(r.size()).or_default() += 1;
            *edges.entry(r.edges.len()).or_default() += 1;
        }
        let ok = of_tag.len() == 16 && sizes.keys().eq([expected].iter());
        checks.push((
            ok,
            format!("{tag}: {} intervals, sizes {sizes:?} (expected 16 of size {expected}), edge counts {edges:?}", of_tag.len()),
        ));
        if tag == CaseTag::N2T2 {
            let edge_ok = edges.keys().eq([EXPECTED_N2T2_EDGES].iter());
            checks.push((edge_ok, format!("{tag}: Hasse edges {edges:?} (expected {EXPECTED_N2T2_EDGES})")));
        }
    }
    result(3, "interval census", checks)
}

/// Every sum over `letters` with at most `summands` summands, each of length
/// at most `length`.
pub fn grid(letters: &[Variable], summands: usize, length: usize) -> Vec<TermSum> {
    let monos = words(letters, length);
    multisets(monos.len(), summands)
        .into_iter()
        .map(|ms| TermSum::from_monomials(ms.into_iter().map(|i| monos[i].clone())).expect("nonempty"))
        .collect()
}

fn xyz() -> Vec<Variable> {
    "xyz".chars().map(Variable::letter).collect()
}

/// The default grid for the criteria checks.
pub fn default_grid() -> &'static Vec<TermSum> {
    static G: OnceLock<Vec<TermSum>> = OnceLock::new();
    G.get_or_init(|| grid(&xyz(), 3, 4))
}

/// Truth tables of every grid sum over `{x, y, z}`, one vector per semiring.
fn grid_tables(sums: &[TermSum]) -> Vec<Vec<u64>> {
    let ctx = EvalContext::new(xyz()).expect("three variables");
    let compiled: Vec<_> = sums.par_iter().map(|u| ctx.compile(u).expect("bound")).collect();
    models::all_semirings()
        .map(|s| compiled.par_iter().map(|c| ctx.truth_table(s, c).low_word()).collect())
        .collect()
}

/// Two functions on the same domain induce the same partition when equality
/// of one value is equivalent to equality of the other. Returns a pair of
/// indices violating that, if any, plus the number of violations.
fn partition_mismatch<K: Hash + Eq + Clone, T: Hash + Eq + Clone>(keys: &[K], tables: &[T]) -> (usize, Option<(usize, usize)>) {
    let mut by_key: HashMap<&K, usize> = HashMap::new();
    let mut by_table: HashMap<&T, usize> = HashMap::new();
    let mut count = 0;
    let mut first = None;
    for i in 0..keys.len() {
        let ki = *by_key.entry(&keys[i]).or_insert(i);
        let ti = *by_table.entry(&tables[i]).or_insert(i);
        if tables[ki] != tables[i] {
            count += 1;
            first.get_or_insert((ki, i));
        }
        if keys[ti] != keys[i] {
            count += 1;
            first.get_or_insert((ti, i));
        }
    }
    (count, first)
}

/// Random identities: half independent pairs, half small perturbations of
/// the left side, so that true identities are well represented.
pub fn random_identities(seed: u64, n: usize) -> Vec<Identity> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters: Vec<Variable> = "xyzuvw".chars().map(Variable::letter).collect();
    let random_sum = |rng: &mut ChaCha8Rng, vars: &[Variable]| {
        let k = rng.gen_range(1..=5);
        TermSum::from_monomials((0..k).map(|_| {
            let len = rng.gen_range(1..=6);
            Monomial::new((0..len).map(|_| vars.choose(rng).expect("nonempty").clone()).collect()).expect("nonempty")
        }))
        .expect("nonempty")
    };
    (0..n)
        .map(|i| {
            let nv = rng.gen_range(1..=6);
            let vars = &letters[..nv];
            let u = random_sum(&mut rng, vars);
            let v = if i % 2 == 0 { random_sum(&mut rng, vars) } else { perturb(&mut rng, &u, vars) };
            Identity::new(u, v)
        })
        .collect()
}

fn perturb(rng: &mut ChaCha8Rng, u: &TermSum, vars: &[Variable]) -> TermSum {
    let mut ms: Vec<Vec<Variable>> = u.summands().into_iter().map(|m| m.letters().to_vec()).collect();
    for _ in 0..rng.gen_range(1..=2) {
        let i = rng.gen_range(0..ms.len());
        match rng.gen_range(0..5) {
            0 if ms[i].len() >= 2 => {
                let a = rng.gen_range(0..ms[i].len());
                let b = rng.gen_range(0..ms[i].len());
                ms[i].swap(a, b);
            }
            1 if ms[i].len() < 6 => {
                let a = rng.gen_range(0..ms[i].len());
                let letter = ms[i][a].clone();
                ms[i].insert(a, letter);
            }
            2 if ms.len() < 5 => ms.push(ms[i].clone()),
            3 if ms.len() > 1 => {
                ms.remove(i);
            }
            _ => {
                let a = rng.gen_range(0..ms[i].len());
                ms[i][a] = vars.choose(rng).expect("nonempty").clone();
            }
        }
    }
    TermSum::from_monomials(ms.into_iter().map(|w| Monomial::new(w).expect("nonempty"))).expect("nonempty")
}

pub fn random_suite(seed: u64) -> &'static Vec<Identity> {
    static R: OnceLock<(u64, Vec<Identity>)> = OnceLock::new();
    let (s, ids) = R.get_or_init(|| (seed, random_identities(seed, RANDOM_IDENTITIES)));
    assert_eq!(*s, seed, "random suite already built with another seed");
    ids
}

pub fn criteria_oracle(seed: u64) -> CriterionResult {
    let sums = default_grid();
    let tables = grid_tables(sums);
    let mut checks = Vec::new();
    for s in SemiringName::ALL {
        let keys: Vec<_> = sums.par_iter().map(|u| criterion_key(s, u)).collect();
        let (count, first) = partition_mismatch(&keys, &tables[s.index()]);
        let example = first.map(|(a, b)| format!(", e.g. `{} ~ {}`", sums[a], sums[b])).unwrap_or_default();
        checks.push((count == 0, format!("{s}: {count} grid discrepancies over {} sums{example}", sums.len())));
    }

    let ids = random_suite(seed);
    let bad: Vec<(SemiringName, &Identity)> = ids
        .par_iter()
        .flat_map_iter(|id| {
            SemiringName::ALL.into_iter().filter_map(move |s| {
                let model = models::satisfies(s.table(), id).expect("at most six variables");
                (criterion(s, id) != model).then_some((s, id))
            })
        })
        .collect();
    let holding = ids.iter().filter(|id| criterion(SemiringName::Z8, id)).count();
    checks.push((
        bad.is_empty(),
        format!(
            "{} random discrepancies over {} identities (seed {seed}; {holding} hold in Z8){}",
            bad.len(),
            ids.len(),
            bad.first().map(|(s, id)| format!(", e.g. {s}: `{id}`")).unwrap_or_default()
        ),
    ));

    // Quantified forms against the keys, on a four-variable grid and the random suite.
    let small = grid(&"xyzu".chars().map(Variable::letter).collect::<Vec<_>>(), 2, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut literal_bad = 0;
    for _ in 0..20_000 {
        let id = Identity::new(small.choose(&mut rng).unwrap().clone(), small.choose(&mut rng).unwrap().clone());
        if literal::z8(&id) != criterion(SemiringName::Z8, &id) || literal::d2(&id) != criterion(SemiringName::D2, &id) {
            literal_bad += 1;
        }
    }
    for id in ids.iter().take(20_000) {
        if literal::z8(id) != criterion(SemiringName::Z8, id) || literal::d2(id) != criterion(SemiringName::D2, id) {
            literal_bad += 1;
        }
    }
    checks.push((literal_bad == 0, format!("{literal_bad} quantified-form disagreements (D2, Z8) over 40000 samples")));
    result(4, "criteria and models agree", checks)
}

pub fn sr2_completeness(seed: u64) -> CriterionResult {
    let sums = default_grid();
    let tables = grid_tables(sums);
    let sigs: Vec<_> = sums.par_iter().map(signature).collect();
    let joint: Vec<[u64; 10]> = (0..sums.len()).map(|i| std::array::from_fn(|s| tables[s][i])).collect();
    let (count, first) = partition_mismatch(&sigs, &joint);
    let example = first.map(|(a, b)| format!(", e.g. `{} ~ {}`", sums[a], sums[b])).unwrap_or_default();
    let classes = joint.iter().collect::<std::collections::HashSet<_>>().len();

    let ids = random_suite(seed);
    let bad = ids
        .par_iter()
        .filter(|id| {
            let all = models::satisfies_all(models::all_semirings(), id).expect("at most six variables");
            sr2_equal(&id.lhs, &id.rhs) != all
        })
        .count();
    let holding = ids.iter().filter(|id| sr2_equal(&id.lhs, &id.rhs)).count();
    result(
        5,
        "signature equality decides the ten-semiring theory",
        vec![
            (count == 0, format!("{count} grid discrepancies over {} sums ({classes} classes){example}", sums.len())),
            (bad == 0, format!("{bad} random discrepancies over {} identities ({holding} true)", ids.len())),
        ],
    )
}

pub fn basis_sanity() -> CriterionResult {
    let mut checks = Vec::new();
    let common = AxiomSet::named("sr2,doubling").expect("registered");
    let failing: Vec<String> = common
        .iter()
        .flat_map(|(id, identity)| {
            models::all_semirings()
                .filter(move |s| !models::satisfies(s, identity).unwrap_or(false))
                .map(move |s| format!("{} fails {id}", s.name))
        })
        .collect();
    checks.push((failing.is_empty(), format!("common identities hold in all ten ({} failures)", failing.len())));
    let own: Vec<String> = SemiringName::ALL
        .into_iter()
        .flat_map(|s| {
            axioms::basis(s)
                .into_iter()
                .filter(move |(_, b)| !models::satisfies(s.table(), b).unwrap_or(false))
                .map(|(id, _)| id)
        })
        .collect();
    checks.push((own.is_empty(), format!("each semiring satisfies its own basis ({} failures)", own.len())));
    let mut mismatched = Vec::new();
    for s in SemiringName::ALL {
        let basis = axioms::basis(s);
        for t in SemiringName::ALL {
            let sat = basis.iter().all(|(_, b)| models::satisfies(t.table(), b).unwrap_or(false));
            if sat != variety::is_member(t, GeneratorSet::single(s)) {
                mismatched.push(format!("{t} vs basis({s})"));
            }
        }
    }
    checks.push((
        mismatched.is_empty(),
        format!("basis satisfaction matches membership over 100 ordered pairs ({} mismatches)", mismatched.len()),
    ));
    result(6, "basis sanity", checks)
}

pub fn relative_axioms() -> CriterionResult {
    let (l, _) = lattice();
    let mut checks = Vec::new();
    for lemma in &RELATIVE_LEMMAS {
        let extra = lemma.identity();
        let mut applicable = 0;
        let mut failures = Vec::new();
        for base in l.ai_classes() {
            if !lemma.applies(base.label) {
                continue;
            }
            applicable += 1;
            let out = l.check_relative_axiom(base, &extra, lemma.expected()).expect("valid base");
            if !out.holds() {
                let found = match (&out.found, &out.refutation) {
                    (Some(f), _) => f.label.to_string(),
                    (None, Some(r)) => format!("no unique maximum among {:?}", r.maxima.iter().map(|m| m.label.to_string()).collect::<Vec<_>>()),
                    (None, None) => "nothing".into(),
                };
                failures.push(format!("base {} gives {found}, expected {}", base.label, out.expected.label));
            }
        }
        let refuted_by: Vec<String> = SemiringName::AI
            .into_iter()
            .filter(|s| !models::satisfies(s.table(), &extra).unwrap_or(false))
            .map(|s| s.to_string())
            .collect();
        let mut line = format!(
            "`{}` ({}): {}/{} bases, expected V v HSP({})",
            lemma.identity,
            lemma.condition,
            applicable - failures.len(),
            applicable,
            lemma.expected().to_string()
        );
        if !failures.is_empty() {
            line.push_str(&format!("; first failure: {}", failures[0]));
            if !refuted_by.is_empty() {
                line.push_str(&format!("; refuted by ai semirings {}", refuted_by.join(",")));
            }
        }
        checks.push((failures.is_empty() && applicable > 0, line));
    }
    // The schema is only probed; its outcome is data, not a pass condition.
    let mut agree = 0;
    let mut disagree = Vec::new();
    for base in l.ai_classes() {
        let out = l.probe_schema(base).expect("valid base");
        if out.holds() {
            agree += 1;
        } else {
            disagree.push(base.label.to_string());
        }
    }
    checks.push((
        true,
        format!(
            "schema `x + u' ~ 2x + v'` probe: {agree}/64 bases cut out V v HSP(Z2,W2){}",
            if disagree.is_empty() { String::new() } else { format!("; differs for {}", disagree.join(" | ")) }
        ),
    ));
    result(7, "relative axiomatizations", checks)
}

pub fn phi_morphism() -> CriterionResult {
    let (l, _) = lattice();
    let classes = l.classes();
    let bad: (usize, usize) = classes
        .par_iter()
        .map(|a| {
            let mut j = 0;
            let mut m = 0;
            for b in classes {
                let pj = l.phi(l.join(*a, *b).expect("in lattice"));
                if pj != l.join(l.phi(*a), l.phi(*b)).expect("in lattice") {
                    j += 1;
                }
                let pm = l.phi(l.meet(*a, *b).expect("in lattice"));
                if pm != l.meet(l.phi(*a), l.phi(*b)).expect("in lattice") {
                    m += 1;
                }
            }
            (j, m)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    let image: std::collections::BTreeSet<VarietyClass> = classes.iter().map(|c| l.phi(*c)).collect();
    let ai: std::collections::BTreeSet<VarietyClass> = l.ai_classes().into_iter().collect();
    let fibers_ok = l.intervals().iter().all(|r| {
        let fiber: Vec<VarietyClass> = classes.iter().copied().filter(|c| l.phi(*c) == r.base).collect();
        fiber == r.members
    });
    let pairs = classes.len() * classes.len();
    result(
        8,
        "phi is a lattice epimorphism onto the ai part",
        vec![
            (bad.0 == 0, format!("joins preserved over {pairs} pairs ({} failures)", bad.0)),
            (bad.1 == 0, format!("meets preserved over {pairs} pairs ({} failures)", bad.1)),
            (image == ai, format!("image has {} classes, all ai: {}", image.len(), image.is_subset(&ai))),
            (fibers_ok, "every fiber equals its interval".into()),
        ],
    )
}

pub fn idempotent_part() -> CriterionResult {
    let (l, _) = lattice();
    let idem = Identity::parse("2x ~ x").expect("literal");
    let top = l.top();
    let found = l.maximal_satisfying(l.class_of(GeneratorSet::AI), std::slice::from_ref(&idem));
    let ok = matches!(found, Ok(c) if c.label == GeneratorSet::AI);
    result(
        9,
        "x + x ~ x cuts out the ai part",
        vec![(
            ok,
            format!(
                "maximal class below {} satisfying `{idem}`: {}",
                top.label,
                found.map(|c| c.label.to_string()).unwrap_or_else(|_| "not unique".into())
            ),
        )],
    )
}

/// The shipped proof scripts, by file name.
pub const CORPUS: [(&str, &str); 7] = [
    ("cube.json", include_str!("proofs/corpus/cube.json")),
    ("eq1.json", include_str!("proofs/corpus/eq1.json")),
    ("eq2.json", include_str!("proofs/corpus/eq2.json")),
    ("eq7.json", include_str!("proofs/corpus/eq7.json")),
    ("eq8.json", include_str!("proofs/corpus/eq8.json")),
    ("eq9.json", include_str!("proofs/corpus/eq9.json")),
    ("double_summand.json", include_str!("proofs/corpus/double_summand.json")),
];

pub fn load_corpus(name: &str) -> Result<String, ProofError> {
    CORPUS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| text.to_string())
        .ok_or_else(|| ProofError::Io { path: name.to_string(), message: "not in the corpus".into() })
}

/// Corrupts step `i` by binding its first variable to a fresh letter.
fn corrupt(p: &script::ProofScript, i: usize) -> script::ProofScript {
    let mut q = p.clone();
    let step = &mut q.steps[i];
    if let Some((_, v)) = step.substitution.iter_mut().next() {
        *v = TermSum::var(Variable::new("w9").expect("valid"));
    }
    q
}

pub fn proof_corpus() -> CriterionResult {
    let mut checks = Vec::new();
    for (name, text) in CORPUS {
        let checked = match script::check_source(text, &load_corpus) {
            Ok(c) => c,
            Err(e) => {
                checks.push((false, format!("{name}: {e}")));
                continue;
            }
        };
        let accepted = checked.verdict.is_accepted();
        let base = checked.base_axioms().expect("resolved while checking");
        let models = base.models();
        let sound = models.iter().all(|s| models::satisfies(s.table(), &checked.script.goal).unwrap_or(false));
        let verdict = match &checked.verdict {
            Verdict::Accepted { .. } => "accepted".to_string(),
            Verdict::Rejected { step, error } => format!("rejected at step {step}: {error}"),
        };
        checks.push((
            accepted && sound,
            format!(
                "{name}: `{}` from {} in {} steps, {verdict}; goal holds in all {} models of the axioms: {sound}",
                checked.script.goal,
                checked.script.axioms,
                checked.script.steps.len(),
                models.len()
            ),
        ));
        if accepted {
            let mut caught = 0;
            for i in 0..checked.script.steps.len() {
                let bad = corrupt(&checked.script, i);
                if matches!(check_script(&bad, &checked.axioms), Verdict::Rejected { step, .. } if step == i) {
                    caught += 1;
                }
            }
            let n = checked.script.steps.len();
            checks.push((caught == n, format!("{name}: {caught}/{n} corrupted variants rejected at the corrupted step")));
        }
    }
    result(10, "proof corpus", checks)
}

pub fn closure_laws() -> CriterionResult {
    let oracle = MembershipOracle::global();
    let labels = oracle.all_labels();
    let all: Vec<GeneratorSet> = GeneratorSet::all_subsets().collect();
    let extensive = all.iter().all(|t| t.is_subset(labels[t.mask() as usize]));
    let idempotent = all.iter().all(|t| {
        let l = labels[t.mask() as usize];
        labels[l.mask() as usize] == l
    });
    let monotone = all.par_iter().all(|t2| {
        let l2 = labels[t2.mask() as usize];
        t2.subsets().all(|t1| labels[t1.mask() as usize].is_subset(l2))
    });
    // leq(T1, T2) holds iff T1 lies inside the label of T2.
    let up: Vec<[u64; 16]> = all
        .iter()
        .map(|t1| {
            let mut row = [0u64; 16];
            for t2 in &all {
                if t1.is_subset(labels[t2.mask() as usize]) {
                    row[t2.mask() as usize / 64] |= 1 << (t2.mask() % 64);
                }
            }
            row
        })
        .collect();
    let get = |row: &[u64; 16], i: usize| row[i / 64] >> (i % 64) & 1 == 1;
    let reflexive = (0..1024).all(|i| get(&up[i], i));
    let transitive = (0..1024).into_par_iter().all(|a| {
        (0..1024).filter(|&b| get(&up[a], b)).all(|b| up[b].iter().zip(&up[a]).all(|(x, y)| x & !y == 0))
    });
    let sample_ok = all.iter().step_by(41).all(|t1| {
        all.iter().step_by(53).all(|t2| variety::leq(*t1, *t2) == t1.is_subset(labels[t2.mask() as usize]))
    });
    let (l, _) = lattice();
    result(
        11,
        "closure laws and lattice property",
        vec![
            (extensive, "canonical_label is extensive".into()),
            (monotone, "canonical_label is monotone".into()),
            (idempotent, "canonical_label is idempotent".into()),
            (reflexive && transitive, "leq is a preorder on the 1024 subsets".into()),
            (sample_ok, "leq agrees with direct free-closure tests on a sample".into()),
            (true, format!("quotient order has {} classes with unique joins and meets", l.len())),
        ],
    )
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    vec![
        lattice_cardinality(),
        ai_restriction(),
        interval_census(),
        criteria_oracle(seed),
        sr2_completeness(seed),
        basis_sanity(),
        relative_axioms(),
        phi_morphism(),
        idempotent_part(),
        proof_corpus(),
        closure_laws(),
    ]
}
