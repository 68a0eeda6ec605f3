mod datum_file;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use f4tori::forms::{
    clifford_target, equivalent, invariants_of, is_isotropic_global, is_isotropic_local, is_trivial_clifford,
    DiagonalForm, WittInvariants,
};
use f4tori::octonion::Mutation;
use f4tori::realizability::{f4_classify_global_with, Answer};
use f4tori::selftest;
use serde_json::{json, Value};

const RHO_CONVENTION: &str = "rho_v counts the real places of E^sigma above v that are unramified in E";

#[derive(Parser)]
#[command(name = "f4tori", version, about = "Realizability of maximal tori in F4 and orthogonal groups over Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide realizability of the datum in a TOML file.
    Classify { path: PathBuf },
    /// Invariants of diagonal forms given as comma-separated rationals.
    Qform {
        #[command(subcommand)]
        op: QformOp,
    },
    /// Randomized checks of the algebra kernel.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, hide = true)]
        mutate: Option<MutateFlag>,
    },
}

#[derive(Subcommand)]
enum QformOp {
    Invariants { form: String },
    Clifford { form: String },
    Isotropy { form: String },
    Equivalent { a: String, b: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum MutateFlag {
    StarSquare,
}

fn print(v: &Value) {
    // A closed pipe (e.g. `| head`) is not an error worth panicking over.
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(v).expect("json"));
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(3)
}

fn classify(path: &PathBuf) -> ExitCode {
    let src = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => return fail(format!("{}: {e}", path.display())),
    };
    let parsed = match datum_file::parse(&src) {
        Ok(p) => p,
        Err(l) => return fail(format!("{}:{}:{}: {}", path.display(), l.line, l.column, l.message)),
    };
    let bound = parsed.options.prime_search_bound;
    let verdict = match f4_classify_global_with(&parsed.datum, parsed.form, bound) {
        Ok(v) => v,
        Err(e) => return fail(format!("{}: {e}", path.display())),
    };
    print(&json!({
        "command": "classify",
        "file": path.display().to_string(),
        "conventions": {
            "rho_convention": RHO_CONVENTION,
            "prime_search_bound": bound,
            "seed": parsed.options.seed,
            "variable": parsed.options.variable,
            "finite_splitting_overrides": parsed.overrides.finite_splitting,
        },
        "real_form": parsed.form,
        "verdict": verdict,
    }));
    ExitCode::from(match verdict.answer {
        Answer::Yes => 0,
        Answer::No => 1,
        Answer::UnknownWithinBound => 2,
    })
}

fn form(s: &str) -> Result<WittInvariants, String> {
    let q = DiagonalForm::parse(s).map_err(|e| format!("{s}: {e}"))?;
    invariants_of(&q).map_err(|e| e.to_string())
}

fn qform(op: &QformOp) -> Result<Value, String> {
    Ok(match op {
        QformOp::Invariants { form: s } => {
            let q = form(s)?;
            json!({ "command": "qform invariants", "form": s, "invariants": q })
        }
        QformOp::Clifford { form: s } => {
            let q = form(s)?;
            let trivial = is_trivial_clifford(&q).map_err(|e| e.to_string())?;
            let target = clifford_target(&q).map_err(|e| e.to_string())?;
            json!({
                "command": "qform clifford",
                "form": s,
                "invariants": q,
                "trivial": trivial,
                "hasse_for_trivial_clifford": target,
            })
        }
        QformOp::Isotropy { form: s } => {
            let q = form(s)?;
            let mut local = serde_json::Map::new();
            for v in q.bad_places() {
                local.insert(v.to_string(), json!(is_isotropic_local(&q, v).map_err(|e| e.to_string())?));
            }
            let isotropic = is_isotropic_global(&q).map_err(|e| e.to_string())?;
            json!({ "command": "qform isotropy", "form": s, "invariants": q, "isotropic": isotropic, "local": local })
        }
        QformOp::Equivalent { a, b } => {
            let (qa, qb) = (form(a)?, form(b)?);
            json!({ "command": "qform equivalent", "forms": [a, b], "invariants": [qa, qb], "equivalent": equivalent(&qa, &qb) })
        }
    })
}

fn run_selftest(seed: u64, trials: usize, mutate: Option<MutateFlag>) -> ExitCode {
    if trials == 0 {
        eprintln!("warning: trials = 0, every check passes vacuously");
    }
    let mutation = mutate.map(|MutateFlag::StarSquare| Mutation::StarSquare);
    let checks = selftest::run_all(trials, seed, mutation);
    let pass = checks.iter().all(|c| c.pass);
    print(&json!({
        "command": "selftest",
        "conventions": { "seed": seed, "trials": trials, "mutation": mutate.map(|_| "star-square") },
        "pass": pass,
        "checks": checks,
    }));
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Classify { path } => classify(path),
        Command::Qform { op } => match qform(op) {
            Ok(v) => {
                print(&v);
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::Selftest { seed, trials, mutate } => run_selftest(*seed, *trials, *mutate),
    }
}
