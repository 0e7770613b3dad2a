//! The `pushcalc` command line. Every command writes one JSON document.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on usage, parse or IO errors.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chern;
use crate::derivation::{check_exactness_f, check_exactness_r};
use crate::error::{Error, Result};
use crate::liealg::{construct_sign_q, point_table, verify_lie_axioms, verify_sign_axioms, EulerLattice, SignSystem};
use crate::polyring::Basis;
use crate::pushforward::{decompose, pi_even, pi_odd_obstructions, Base, PushforwardClass};
use crate::sample;
use crate::suite;

#[derive(Parser, Debug)]
#[command(name = "pushcalc", version, about = "Exact pushforward computations and verification sweeps")]
pub struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Add wall-clock time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Kernel basis (even degree) or obstruction count (odd degree).
    Pi {
        #[arg(long, allow_hyphen_values = true)]
        rank: i64,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// Write a kernel class as an element of the twisted algebra acting on a base class.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        base: BaseArg,
    },
    /// Run a verification sweep.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Run every acceptance criterion.
    Selftest {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BaseArg {
    Pe,
    Gen,
}

impl From<BaseArg> for Base {
    fn from(b: BaseArg) -> Self {
        match b {
            BaseArg::Pe => Base::Pe,
            BaseArg::Gen => Base::Gen,
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
pub struct RankRange {
    #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
    pub rank_min: i64,
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub rank_max: i64,
}

#[derive(Subcommand, Debug)]
pub enum Check {
    ExactnessR {
        #[arg(long, default_value_t = 10)]
        dmax: i64,
        #[arg(long, default_value_t = 10)]
        emax: i64,
    },
    ExactnessF {
        #[command(flatten)]
        ranks: RankRange,
        /// Largest weight; degrees run up to twice this.
        #[arg(long, default_value_t = 10)]
        kmax: i64,
    },
    Composition {
        #[arg(long, default_value_t = 3)]
        imax: u32,
        #[arg(long, default_value_t = 3)]
        jmax: u32,
        #[command(flatten)]
        ranks: RankRange,
    },
    Pullpush {
        #[arg(long, default_value_t = 5)]
        kmax: u32,
        #[command(flatten)]
        ranks: RankRange,
    },
    Duality {
        #[arg(long, default_value_t = 5)]
        kmax: u32,
        #[command(flatten)]
        ranks: RankRange,
    },
    Commutator {
        #[command(flatten)]
        ranks: RankRange,
        #[arg(long, default_value_t = 4)]
        jmax: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    Newton {
        #[arg(long, default_value_t = 16)]
        max_weight: i64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    Lie {
        #[arg(long)]
        lattice: PathBuf,
        /// Sign system JSON; constructed from the lattice when omitted.
        #[arg(long)]
        signs: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        window: i64,
    },
}

/// Bounds that keep a run at desk scale.
const MAX_ORDER: usize = 40;
const MAX_WEIGHT: i64 = 24;
const MAX_WINDOW: i64 = 4;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Value,
    pub pass: bool,
    pub details: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl RunReport {
    fn new(command: &str, parameters: Value, details: Vec<(bool, Value)>) -> Self {
        let pass = details.iter().all(|(p, _)| *p);
        RunReport { command: command.into(), parameters, pass, details: details.into_iter().map(|(_, v)| v).collect(), timing_ms: None }
    }
}

fn bound(name: &str, v: i64, lo: i64, hi: i64) -> Result<()> {
    if v < lo || v > hi {
        return Err(Error::Usage(format!("--{name} must lie in [{lo}, {hi}], got {v}")));
    }
    Ok(())
}

fn check_ranks(r: &RankRange) -> Result<()> {
    bound("rank-min", r.rank_min, -10, 10)?;
    bound("rank-max", r.rank_max, r.rank_min, 10)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Execute a parsed command and return the report.
pub fn execute(cli: &Cli) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Pi { rank, degree, order } => cmd_pi(*rank, *degree, *order)?,
        Command::Decompose { input, base } => cmd_decompose(input, (*base).into())?,
        Command::Verify { check } => cmd_verify(check)?,
        Command::Selftest { seed } => {
            let crit = suite::run_all(*seed);
            let details = crit.iter().map(|c| (c.pass, to_value(c))).collect();
            RunReport::new("selftest", json!({ "seed": seed }), details)
        }
    };
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    Ok(report)
}

fn cmd_pi(r: i64, k: i64, order: usize) -> Result<RunReport> {
    bound("order", order as i64, 0, MAX_ORDER as i64)?;
    bound("degree", k, -2 * MAX_WEIGHT, 2 * MAX_WEIGHT)?;
    let params = json!({ "rank": r, "degree": k, "order": order });
    let detail = if k.rem_euclid(2) == 0 {
        let basis = pi_even(k, r, order)?;
        json!({ "degree": k, "rank": r, "order": order, "dimension": basis.len(), "basis": basis })
    } else {
        to_value(&pi_odd_obstructions(k, r, order)?)
    };
    Ok(RunReport::new("pi", params, vec![(true, detail)]))
}

fn cmd_decompose(input: &Path, base: Base) -> Result<RunReport> {
    let e: PushforwardClass = read_json(input)?;
    let params = json!({ "input": input.display().to_string(), "base": base });
    if let Some(i) = e.kernel_defect() {
        let detail = json!({ "error": "class is not in the kernel", "index": i });
        return Ok(RunReport::new("decompose", params, vec![(false, detail)]));
    }
    let detail = match decompose(&e, base) {
        Ok(d) => (true, to_value(&d)),
        Err(Error::Invariant(msg)) => (false, json!({ "error": msg })),
        Err(err) => return Err(err),
    };
    Ok(RunReport::new("decompose", params, vec![detail]))
}

fn ranks_of(r: &RankRange) -> Vec<i64> {
    (r.rank_min..=r.rank_max).collect()
}

fn cmd_verify(check: &Check) -> Result<RunReport> {
    match check {
        Check::ExactnessR { dmax, emax } => {
            bound("dmax", *dmax, 0, MAX_WEIGHT)?;
            bound("emax", *emax, 0, MAX_WEIGHT)?;
            let rep = check_exactness_r(*dmax, *emax);
            Ok(RunReport::new("verify exactness-r", json!({ "dmax": dmax, "emax": emax }), vec![(rep.pass, to_value(&rep))]))
        }
        Check::ExactnessF { ranks, kmax } => {
            check_ranks(ranks)?;
            bound("kmax", *kmax, 0, MAX_WEIGHT)?;
            let details = ranks_of(ranks)
                .into_iter()
                .map(|r| {
                    let rep = check_exactness_f(r, *kmax);
                    (rep.pass, to_value(&rep))
                })
                .collect();
            let params = json!({ "rank_min": ranks.rank_min, "rank_max": ranks.rank_max, "kmax": kmax });
            Ok(RunReport::new("verify exactness-f", params, details))
        }
        Check::Composition { imax, jmax, ranks } => {
            check_ranks(ranks)?;
            bound("imax", *imax as i64, 0, 8)?;
            bound("jmax", *jmax as i64, 0, 8)?;
            let rs = ranks_of(ranks);
            let mut tuples = Vec::new();
            for i in 0..=*imax {
                for j in 0..=*jmax {
                    for &a in &rs {
                        for &b in &rs {
                            for &c in &rs {
                                tuples.push((i, j, a, b, c));
                            }
                        }
                    }
                }
            }
            let reps: Vec<chern::CheckReport> =
                tuples.par_iter().map(|&(i, j, a, b, c)| chern::composition_check(i, j, a, b, c)).collect::<Result<_>>()?;
            let details = reps.iter().map(|r| (r.pass, to_value(r))).collect();
            let params = json!({ "imax": imax, "jmax": jmax, "rank_min": ranks.rank_min, "rank_max": ranks.rank_max });
            Ok(RunReport::new("verify composition", params, details))
        }
        Check::Pullpush { kmax, ranks } | Check::Duality { kmax, ranks } => {
            check_ranks(ranks)?;
            bound("kmax", *kmax as i64, 0, MAX_WEIGHT)?;
            let dual = matches!(check, Check::Duality { .. });
            let mut details = Vec::new();
            for k in 0..=*kmax {
                for r in ranks_of(ranks) {
                    let rep = if dual { chern::dual_check(k, r) } else { chern::pull_push_check(k, r) };
                    details.push((rep.pass, to_value(&rep)));
                }
            }
            let name = if dual { "verify duality" } else { "verify pullpush" };
            Ok(RunReport::new(name, json!({ "kmax": kmax, "rank_min": ranks.rank_min, "rank_max": ranks.rank_max }), details))
        }
        Check::Commutator { ranks, jmax, samples, order, seed } => {
            check_ranks(ranks)?;
            bound("jmax", *jmax as i64, 1, 8)?;
            bound("order", *order as i64, *jmax as i64, MAX_ORDER as i64)?;
            let mut rng = sample::rng(*seed);
            let mut details = Vec::new();
            for r in ranks_of(ranks) {
                let classes = suite::commutator_samples(&mut rng, r, *samples, *order)?;
                for j in 1..=*jmax {
                    let mut failed = 0;
                    for e in &classes {
                        if !suite::commutator_holds(e, j)? {
                            failed += 1;
                        }
                    }
                    details.push((failed == 0, json!({ "r": r, "j": j, "samples": classes.len(), "failed": failed })));
                }
            }
            let params = json!({
                "rank_min": ranks.rank_min, "rank_max": ranks.rank_max, "jmax": jmax,
                "samples": samples, "order": order, "seed": seed,
            });
            Ok(RunReport::new("verify commutator", params, details))
        }
        Check::Newton { max_weight, samples, seed } => {
            bound("max-weight", *max_weight, 0, MAX_WEIGHT)?;
            let mut rng = sample::rng(*seed);
            let mut details = Vec::new();
            for basis in [Basis::Y, Basis::Z] {
                let mut failed = Vec::new();
                for _ in 0..*samples {
                    let p = sample::random_poly_upto(&mut rng, basis, *max_weight, 4);
                    if !suite::newton_roundtrip(&p)? {
                        failed.push(p);
                    }
                }
                details.push((failed.is_empty(), json!({ "basis": basis.tag(), "samples": samples, "failed": failed })));
            }
            Ok(RunReport::new("verify newton", json!({ "max_weight": max_weight, "samples": samples, "seed": seed }), details))
        }
        Check::Lie { lattice, signs, window } => {
            bound("window", *window, 1, MAX_WINDOW)?;
            let l: EulerLattice = read_json(lattice)?;
            if l.rank() > 4 {
                return Err(Error::Usage("lattice rank is limited to 4".into()));
            }
            let s: SignSystem = match signs {
                Some(p) => read_json(p)?,
                None => construct_sign_q(&l),
            };
            let sign_window = (*window - 1).max(1);
            let sr = verify_sign_axioms(&s, &l, sign_window)?;
            let lr = verify_lie_axioms(&point_table(&l, &s, *window)?, &l)?;
            let params = json!({ "lattice": l, "window": window, "sign_window": sign_window });
            Ok(RunReport::new("verify lie", params, vec![(sr.pass, to_value(&sr)), (lr.pass, to_value(&lr))]))
        }
    }
}

/// Run the command line and return the process exit code.
pub fn main_with_args(args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be positive");
            return 2;
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return 2;
        }
    }
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(Error::Invariant(msg)) => {
            eprintln!("error: internal invariant violated: {msg}");
            return 1;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    let written = match &cli.out {
        Some(p) => std::fs::write(p, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    if report.pass {
        0
    } else {
        1
    }
}
