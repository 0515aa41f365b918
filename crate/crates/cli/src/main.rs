mod instance;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use latmem::cvp::cvp_search_with;
use latmem::exact::to_rat_vec;
use latmem::lattice::{shortest_form_vector, GramForm};
use latmem::membership::{lmp_solve_with, MembershipConfig, Stats};
use latmem::oracle::{oracle_cvp, oracle_lmp, oracle_svp, EnumerationBudget};
use latmem::{Error, Rational};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use instance::{Instance, Kind};

#[derive(Parser)]
#[command(
    name = "latmem",
    version,
    about = "Exact lattice membership and closest vector solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closest vector to the target under the given norm.
    Cvp(Opts),
    /// Does the body contain a lattice point?
    Lmp(Opts),
    /// Shortest nonzero lattice vector in the Euclidean norm.
    Svp(Opts),
    /// Solve with both the main algorithm and brute force; exit 0 iff they agree.
    Check(Opts),
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    input: std::path::PathBuf,
    /// Recurse on raw slice hyperplanes (no coefficient replacement).
    #[arg(long)]
    no_replacement: bool,
    /// Use brute-force enumeration instead of the main algorithm.
    #[arg(long)]
    oracle: bool,
    #[arg(long, env = "LATMEM_MAX_DIM", default_value_t = 8)]
    max_dim: usize,
    /// Emit JSON instead of a one-line summary.
    #[arg(long)]
    json: bool,
}

fn rat_json(x: &Rational) -> Value {
    if x.is_integer() {
        if let Some(v) = x.to_integer().to_i64() {
            return json!(v);
        }
    }
    json!(x.to_string())
}

fn vec_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

fn stats_json(s: &Stats) -> Value {
    json!({
        "recursive_calls": s.recursive_calls,
        "flatness_calls": s.flatness_calls,
        "max_coeff_bits": s.max_coeff_bits,
    })
}

/// Answer as JSON plus a human summary.
fn solve(
    inst: &Instance,
    cfg: &MembershipConfig,
    brute: bool,
) -> latmem::Result<(Value, String, Stats)> {
    let l = &inst.lattice;
    match inst.kind {
        Kind::Cvp => {
            let t = inst.target.as_ref().expect("parsed");
            let norm = inst.norm.as_ref().expect("parsed");
            let (r, stats) = if brute {
                (oracle_cvp(l, t, norm)?, Stats::default())
            } else {
                cvp_search_with(l, t, norm, cfg)?
            };
            let closest: Vec<String> = r.closest.iter().map(ToString::to_string).collect();
            let text = format!(
                "distance_pow = {}, closest = ({})",
                r.distance_pow,
                closest.join(", ")
            );
            let answer = json!({
                "closest": vec_json(&r.closest),
                "coeffs": vec_json(&to_rat_vec(&r.coeffs)),
                "distance_pow": r.distance_pow.to_string(),
            });
            Ok((answer, text, stats))
        }
        Kind::Lmp => {
            let body = inst.body.as_ref().expect("parsed");
            let (a, stats) = if brute {
                (oracle_lmp(body, l)?, Stats::default())
            } else {
                lmp_solve_with(body, l, cfg)?
            };
            Ok((json!(a), format!("answer = {a}"), stats))
        }
        Kind::Svp => {
            let (y, val) = if brute {
                oracle_svp(l, &EnumerationBudget::default())?
            } else {
                shortest_form_vector(&GramForm::new(l.gram())?)?
            };
            let v = l.matrix().mul_vec(&to_rat_vec(&y));
            let answer = json!({ "shortest_sq": val.to_string(), "vector": vec_json(&v) });
            Ok((answer, format!("shortest_sq = {val}"), Stats::default()))
        }
    }
}

/// The comparable part of an answer; witnesses may differ under ties.
fn key(kind: Kind, answer: &Value) -> Value {
    match kind {
        Kind::Cvp => answer["distance_pow"].clone(),
        Kind::Svp => answer["shortest_sq"].clone(),
        Kind::Lmp => answer.clone(),
    }
}

fn exit_for(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::BudgetExceeded => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn run(cmd: Command) -> ExitCode {
    let (opts, expected) = match &cmd {
        Command::Cvp(o) => (o, Some(Kind::Cvp)),
        Command::Lmp(o) => (o, Some(Kind::Lmp)),
        Command::Svp(o) => (o, Some(Kind::Svp)),
        Command::Check(o) => (o, None),
    };
    let text = match std::fs::read_to_string(&opts.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", opts.input.display());
            return ExitCode::from(2);
        }
    };
    let inst = match instance::parse(&text) {
        Ok(i) => i,
        Err(e) => return exit_for(&e),
    };
    if expected.is_some_and(|k| k != inst.kind) {
        eprintln!("error: instance kind does not match the subcommand");
        return ExitCode::from(2);
    }
    let cfg = MembershipConfig {
        no_replacement: opts.no_replacement,
        max_dimension: opts.max_dim,
        rounding_bits: None,
    };
    if inst.lattice.dim() > opts.max_dim {
        return exit_for(&Error::DimensionTooLarge(inst.lattice.dim(), opts.max_dim));
    }
    if expected.is_none() {
        let main = solve(&inst, &cfg, false);
        let brute = solve(&inst, &cfg, true);
        let ((a, _, stats), (b, _, _)) = match (main, brute) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return exit_for(&e),
        };
        let agree = key(inst.kind, &a) == key(inst.kind, &b);
        let out = json!({ "schema": 1, "agree": agree, "main": a, "oracle": b, "stats": stats_json(&stats) });
        println!(
            "{}",
            if opts.json {
                out.to_string()
            } else {
                format!("agree = {agree}")
            }
        );
        return if agree {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        };
    }
    match solve(&inst, &cfg, opts.oracle) {
        Ok((answer, summary, stats)) => {
            if opts.json {
                println!(
                    "{}",
                    json!({ "schema": 1, "answer": answer, "stats": stats_json(&stats) })
                );
            } else {
                println!("{summary}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => exit_for(&e),
    }
}

fn main() -> ExitCode {
    run(Cli::parse().command)
}
