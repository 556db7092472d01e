use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use dndouble::catalog::{expected_count, krull_schmidt, label_multiset, Setting};
use dndouble::double::{verify_hopf, QuantumDouble};
use dndouble::io;
use dndouble::verify::{self, Budget, Status, SuiteSelection};
use dndouble::ydcatalog::{expected_yd_count, yd_catalog, yd_krull_schmidt, yd_label_multiset};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

/// Modular representations of dihedral groups and Yetter–Drinfeld modules over their quantum doubles.
#[derive(Parser)]
#[command(name = "dndouble", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArgs {
    /// Odd prime characteristic.
    #[arg(long, env = "DNDOUBLE_P")]
    p: u64,
    /// The dihedral group has order 2n; p must divide n.
    #[arg(long, env = "DNDOUBLE_N")]
    n: u64,
}

#[derive(Args)]
struct RunArgs {
    /// Seed for every randomized search.
    #[arg(long, env = "DNDOUBLE_SEED", default_value_t = 0)]
    seed: u64,
    /// Random samples per certificate or isomorphism search.
    #[arg(long, env = "DNDOUBLE_BUDGET_SAMPLES", default_value_t = 64)]
    budget_samples: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Group data, conjugacy classes and expected catalog sizes.
    Info {
        #[command(flatten)]
        group: GroupArgs,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Write the indecomposable kD_n-modules as JSON.
    Catalog {
        #[command(flatten)]
        group: GroupArgs,
        /// Output file; stdout when absent.
        #[arg(long, env = "DNDOUBLE_OUT")]
        out: Option<PathBuf>,
    },
    /// Write the indecomposable Yetter–Drinfeld modules as JSON.
    YdCatalog {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, env = "DNDOUBLE_OUT")]
        out: Option<PathBuf>,
    },
    /// Run property suites and report each check.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        run: RunArgs,
        /// matrices, catalog, hopf, yd, mackey or all.
        #[arg(long, env = "DNDOUBLE_SUITE", default_value = "all")]
        suite: SuiteSelection,
        /// Largest n for which the Hopf axiom sweep runs.
        #[arg(long, env = "DNDOUBLE_BUDGET_HOPF_MAX_N", default_value_t = 12)]
        budget_hopf_max_n: u32,
        /// Random modules per closure probe.
        #[arg(long, env = "DNDOUBLE_BUDGET_PROBE_MODULES", default_value_t = 200)]
        budget_probe_modules: usize,
        /// Also write the report as JSON to this file.
        #[arg(long, env = "DNDOUBLE_OUT")]
        out: Option<PathBuf>,
    },
    /// Decompose a representation (or a graded module) read from a JSON file.
    Decompose {
        file: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check the Hopf algebra axioms of the quantum double on all basis tuples.
    HopfCheck {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, env = "DNDOUBLE_BUDGET_HOPF_MAX_N", default_value_t = 12)]
        budget_hopf_max_n: u32,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Verification(String),
    Inconclusive(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Verification(_) => EXIT_FAIL,
            Failure::Inconclusive(_) => EXIT_INCONCLUSIVE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Verification(m) | Failure::Inconclusive(m) => m,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn setting(g: &GroupArgs) -> Result<Setting, Failure> {
    Setting::new(g.p, g.n).map_err(input)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(input)
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Info { group, json } => info(&setting(&group)?, json),
        Command::Catalog { group, out } => {
            let s = setting(&group)?;
            let cat = s.full_catalog().map_err(input)?;
            emit(out.as_deref(), &pretty(&io::catalog_to_json(&cat)))
        }
        Command::YdCatalog { group, out } => {
            let s = setting(&group)?;
            let cat = yd_catalog(&s).map_err(input)?;
            emit(out.as_deref(), &pretty(&io::yd_catalog_to_json(&cat)))
        }
        Command::Verify { group, run, suite, budget_hopf_max_n, budget_probe_modules, out } => {
            let s = setting(&group)?;
            let budget = Budget {
                hopf_max_n: budget_hopf_max_n,
                samples: run.budget_samples,
                probe_modules: budget_probe_modules,
            };
            let report = verify::run(&s, suite, run.seed, &budget);
            for c in &report.checks {
                println!("{c}");
            }
            if let Some(path) = out {
                let v = serde_json::to_value(&report).expect("report serializes");
                emit(Some(&path), &pretty(&v))?;
            }
            match report.status() {
                Status::Fail => {
                    let failed: Vec<&str> =
                        report.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.as_str()).collect();
                    Err(Failure::Verification(format!("failed: {}", failed.join(", "))))
                }
                Status::Inconclusive => Err(Failure::Inconclusive("some checks were inconclusive".to_string())),
                _ => Ok(()),
            }
        }
        Command::Decompose { file, run } => decompose(&file, &run),
        Command::HopfCheck { group, budget_hopf_max_n } => {
            let s = setting(&group)?;
            if s.params.n() > budget_hopf_max_n {
                return Err(Failure::Input(format!(
                    "n = {} exceeds the Hopf sweep budget {budget_hopf_max_n}",
                    s.params.n()
                )));
            }
            let report = verify_hopf(&QuantumDouble::new(s.params));
            println!("dimension {}", report.dimension);
            for a in &report.axioms {
                let status = if a.passed() { "pass" } else { "FAIL" };
                println!("{:<36} {:>8} {status}", a.name, a.checked);
                if let Some(f) = &a.failure {
                    println!("    {f}");
                }
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification("Hopf axioms fail".to_string()))
            }
        }
    }
}

fn info(s: &Setting, as_json: bool) -> Result<(), Failure> {
    let p = &s.params;
    let classes: Vec<Value> = p
        .conjugacy_classes()
        .iter()
        .map(|c| {
            json!({
                "rep": c.rep.to_string(),
                "size": c.members.len(),
                "centralizer": p.centralizer(c.rep).name(),
                "p_regular": !p.element_order(c.rep).is_multiple_of(p.p()),
            })
        })
        .collect();
    let kdn = expected_count(p);
    let yd = expected_yd_count(p);
    if as_json {
        let v = json!({
            "p": p.p(), "n": p.n(), "s": p.s(), "t": p.t(),
            "field": io::FieldJson::of(&s.field),
            "classes": classes,
            "kdn_indecomposables": kdn,
            "yd_indecomposables": yd,
        });
        return emit(None, &pretty(&v));
    }
    let mut text = format!(
        "p={} n={} s={} t={} field=F_{}^{}\n",
        p.p(),
        p.n(),
        p.s(),
        p.t(),
        s.field.characteristic(),
        s.field.degree()
    );
    text.push_str("classes:\n");
    for c in &classes {
        text.push_str(&format!(
            "  {:<6} size {:<3} centralizer {}{}\n",
            c["rep"].as_str().unwrap_or(""),
            c["size"],
            c["centralizer"].as_str().unwrap_or(""),
            if c["p_regular"] == json!(true) { "  (p-regular)" } else { "" }
        ));
    }
    text.push_str(&format!("kD_n indecomposables: {kdn}; YD indecomposables: {yd}\n"));
    emit(None, &text)
}

fn decompose(file: &Path, run: &RunArgs) -> Result<(), Failure> {
    let text = fs::read_to_string(file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(input)?;
    let mut rng = ChaCha8Rng::seed_from_u64(run.seed);
    let labels = if v.get("grading").is_some() {
        let m = io::yd_from_json(&v).map_err(input)?;
        if let Some(bad) = m.check().first() {
            return Err(Failure::Input(format!("grading incompatible with the action: {bad}")));
        }
        let s = Setting::new(m.params().p() as u64, m.params().n() as u64).map_err(input)?;
        align_field(&s, m.field())?;
        let cat = yd_catalog(&s).map_err(input)?;
        let parts = yd_krull_schmidt(&m, &cat, &mut rng, run.budget_samples).map_err(|e| {
            if e.is_inconclusive() {
                Failure::Inconclusive(e.to_string())
            } else {
                input(e)
            }
        })?;
        yd_label_multiset(&parts)
    } else {
        let rep = io::rep_from_json(&v).map_err(input)?;
        let s = Setting::new(rep.params().p() as u64, rep.params().n() as u64).map_err(input)?;
        align_field(&s, rep.field())?;
        let cat = s.subgroup_catalog(rep.subgroup()).map_err(input)?;
        let parts = krull_schmidt(&rep, &cat, &mut rng, run.budget_samples).map_err(|e| {
            if e.is_inconclusive() {
                Failure::Inconclusive(e.to_string())
            } else {
                input(e)
            }
        })?;
        label_multiset(&parts)
    };
    println!("{}", labels.join(" + "));
    if labels.iter().any(|l| l.starts_with('?')) {
        return Err(Failure::Verification("some summands match no catalog entry".to_string()));
    }
    Ok(())
}

/// Catalog entries live over the setting's field; inputs must use the same one.
fn align_field(s: &Setting, field: &dndouble::field::Field) -> Result<(), Failure> {
    if field != &s.field {
        return Err(Failure::Input(format!(
            "input field differs from the field of the catalog (modulus {:?})",
            s.field.modulus()
        )));
    }
    Ok(())
}
