use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sr2::acceptance;
use sr2::criteria;
use sr2::lattice::SubvarietyLattice;
use sr2::models::{self, SemiringName};
use sr2::proofs::{self, script, AxiomSet, SearchError, SearchLimits, Verdict};
use sr2::term::Identity;
use sr2::variety::{self, GeneratorSet};

const OK: u8 = 0;
const REFUTED: u8 = 1;
const USAGE: u8 = 2;
const RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "sr2", version, about = "Identities, HSP membership and subvariety lattice of the two-element semirings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an identity in each semiring of a generator set and in the variety they generate.
    Check {
        identity: String,
        /// Generator names, comma separated (`all`, `ai` and `{}` are accepted).
        #[arg(long, default_value = "all")]
        over: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Show the invariant each semiring's criterion compares, with verdicts and witnesses.
    Explain {
        identity: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide whether a semiring lies in the variety generated by a set.
    Member {
        semiring: Option<String>,
        generators: Option<String>,
        /// Print a separating identity when the answer is no.
        #[arg(long)]
        witness: bool,
        /// Print the full membership table (name, mask, 0/1) instead.
        #[arg(long)]
        table: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the subvariety lattice.
    Lattice {
        /// Print only the number of classes.
        #[arg(long)]
        count: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Restrict the output to the interval above this ai base.
        #[arg(long)]
        interval: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report the interval between an ai variety and its join with Z2, W2, Z7, Z8.
    Interval {
        base: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a proof script, or search for one with --search.
    Prove {
        /// Script file (JSON).
        script: Option<PathBuf>,
        /// Goal identity to search for instead of checking a file.
        #[arg(long)]
        search: Option<String>,
        #[arg(long, default_value = "sr2")]
        axioms: String,
        #[arg(long, default_value_t = 12)]
        max_size: usize,
        #[arg(long, default_value_t = 6)]
        max_steps: usize,
        #[arg(long, default_value_t = 200_000)]
        max_frontier: usize,
        /// Write a found script here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run only the listed criteria (e.g. 1,4,10).
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure { code: USAGE, message: message.to_string() }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("VARIETY_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Check { identity, over, format } => check(&identity, &over, format),
        Command::Explain { identity, format } => explain(&identity, format),
        Command::Member { semiring, generators, witness, table, out } => {
            if table {
                emit(&variety::membership_table(), out.as_ref())?;
                return Ok(OK);
            }
            match (semiring, generators) {
                (Some(s), g) => member(&s, g.as_deref().unwrap_or(""), witness),
                (None, _) => Err(usage("member needs a semiring name, or --table")),
            }
        }
        Command::Lattice { count, format, interval, out } => lattice(count, format, interval, out),
        Command::Interval { base, format, out } => lattice(false, format, Some(base), out),
        Command::Prove { script, search, axioms, max_size, max_steps, max_frontier, out } => match (script, search) {
            (Some(path), None) => prove(&path),
            (None, Some(goal)) => search_proof(&goal, &axioms, SearchLimits { max_size, max_steps, max_frontier }, out),
            _ => Err(usage("prove needs either a script path or --search GOAL")),
        },
        Command::Selftest { seed, only } => selftest(seed, &only),
    }
}

fn parse_identity(text: &str) -> Result<Identity, Failure> {
    proofs::parse_flat_identity(text).map_err(|e| usage(format!("{e} in {text:?}")))
}

fn parse_set(text: &str) -> Result<GeneratorSet, Failure> {
    text.parse().map_err(usage)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure { code: USAGE, message: format!("{}: {e}", p.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

#[derive(Serialize)]
struct CheckRow {
    semiring: SemiringName,
    criterion: bool,
    model: bool,
    counterexample: Option<String>,
}

#[derive(Serialize)]
struct CheckReport {
    identity: String,
    over: String,
    rows: Vec<CheckRow>,
    holds: bool,
    disagreement: bool,
}

fn check(text: &str, over: &str, format: Format) -> Outcome {
    let id = parse_identity(text)?;
    let set = parse_set(over)?;
    let mut rows = Vec::new();
    for s in set.iter() {
        let cex = models::counterexample(s.table(), &id).map_err(usage)?;
        rows.push(CheckRow {
            semiring: s,
            criterion: criteria::criterion(s, &id),
            model: cex.is_none(),
            counterexample: cex.map(|a| a.iter().map(|(v, b)| format!("{v}={b}")).collect::<Vec<_>>().join(",")),
        });
    }
    let holds = rows.iter().all(|r| r.model);
    let disagreement = rows.iter().any(|r| r.model != r.criterion);
    let report = CheckReport { identity: id.to_string(), over: set.to_string(), rows, holds, disagreement };
    match format {
        Format::Json => print!("{}", json(&report)),
        _ => {
            println!("identity: {}", report.identity);
            println!("{:<8}  {:<9}  {:<5}  witness", "semiring", "criterion", "model");
            for r in &report.rows {
                let flag = if r.criterion != r.model { "  DISAGREE" } else { "" };
                println!(
                    "{:<8}  {:<9}  {:<5}  {}{flag}",
                    r.semiring.to_string(),
                    r.criterion,
                    r.model,
                    r.counterexample.as_deref().unwrap_or("")
                );
            }
            println!("holds in HSP({}): {}", report.over, report.holds);
        }
    }
    if disagreement {
        return Err(Failure { code: REFUTED, message: "criterion and model disagree".into() });
    }
    Ok(if holds { OK } else { REFUTED })
}

fn explain(text: &str, format: Format) -> Outcome {
    let id = parse_identity(text)?;
    let e = criteria::explain(&id).map_err(usage)?;
    match format {
        Format::Json => print!("{}", json(&e)),
        _ => print!("{}", e.render_text()),
    }
    Ok(if e.all_models { OK } else { REFUTED })
}

fn member(semiring: &str, generators: &str, witness: bool) -> Outcome {
    let a: SemiringName = semiring.parse().map_err(usage)?;
    let t = parse_set(generators)?;
    let yes = variety::is_member(a, t);
    println!("{a} in HSP({t}): {yes}");
    if witness && !yes {
        if let Some((id, _)) = variety::find_separating_identity(a, t) {
            println!("separating identity: {id}");
        }
    }
    Ok(if yes { OK } else { REFUTED })
}

fn lattice(count: bool, format: Format, interval: Option<String>, out: Option<PathBuf>) -> Outcome {
    let l = SubvarietyLattice::enumerate().map_err(|e| Failure { code: REFUTED, message: e.to_string() })?;
    if count {
        println!("{}", l.len());
        return Ok(OK);
    }
    let text = match interval {
        Some(base) => {
            let base = l.class_of(parse_set(&base)?);
            let r = l.interval(base).map_err(usage)?;
            match format {
                Format::Text => r.render_text(),
                Format::Json => r.export_json(),
                Format::Dot => r.export_dot(),
            }
        }
        None => match format {
            Format::Json => l.export_json(),
            Format::Dot => l.export_dot(),
            Format::Text => {
                let mut s = format!("classes {}\ncovers  {}\n", l.len(), l.cover_count());
                for c in l.classes() {
                    s.push_str(&format!("{:>4}  {}{}\n", c.label.mask(), c.label, if c.is_ai() { "  (ai)" } else { "" }));
                }
                s
            }
        },
    };
    emit(&text, out.as_ref())?;
    Ok(OK)
}

fn prove(path: &PathBuf) -> Outcome {
    let checked = script::check_file(path).map_err(usage)?;
    match &checked.verdict {
        Verdict::Accepted { trace } => {
            println!("accepted: {} ({} steps)", checked.script.goal, checked.script.steps.len());
            for (i, u) in trace.iter().enumerate() {
                println!("  {i:>2}  {u}");
            }
            Ok(OK)
        }
        Verdict::Rejected { step, error } => {
            println!("rejected at step {step}: {error}");
            Ok(REFUTED)
        }
    }
}

fn search_proof(goal: &str, axioms: &str, limits: SearchLimits, out: Option<PathBuf>) -> Outcome {
    let goal = parse_identity(goal)?;
    let set = AxiomSet::named(axioms).map_err(usage)?;
    match proofs::bounded_search(&goal, &set, limits) {
        Ok(Some(p)) => {
            emit(&p.to_json(), out.as_ref())?;
            Ok(OK)
        }
        Ok(None) => {
            println!("no script found within limits");
            Ok(REFUTED)
        }
        Err(e @ SearchError::FrontierExceeded { .. }) => Err(Failure { code: RESOURCE, message: e.to_string() }),
        Err(e) => Err(usage(e)),
    }
}

fn selftest(seed: u64, only: &[usize]) -> Outcome {
    let checks: Vec<(usize, Box<dyn Fn() -> acceptance::CriterionResult>)> = vec![
        (1, Box::new(acceptance::lattice_cardinality)),
        (2, Box::new(acceptance::ai_restriction)),
        (3, Box::new(acceptance::interval_census)),
        (4, Box::new(move || acceptance::criteria_oracle(seed))),
        (5, Box::new(move || acceptance::sr2_completeness(seed))),
        (6, Box::new(acceptance::basis_sanity)),
        (7, Box::new(acceptance::relative_axioms)),
        (8, Box::new(acceptance::phi_morphism)),
        (9, Box::new(acceptance::idempotent_part)),
        (10, Box::new(acceptance::proof_corpus)),
        (11, Box::new(acceptance::closure_laws)),
    ];
    let mut failed = 0;
    for (n, f) in checks {
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let r = f();
        failed += usize::from(!r.passed);
        println!("{r}");
    }
    println!("{} failing", failed);
    Ok(if failed == 0 { OK } else { REFUTED })
}
