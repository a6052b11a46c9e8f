use std::process::ExitCode;

use arith_cocycles::dedekind::{dedekind_sum, dedekind_sum_fast};
use arith_cocycles::eisenstein::{phi, phi_sym};
use arith_cocycles::exact::{fmt_rat, rat_json, Int};
use arith_cocycles::gv::{asai_e, re_gv_tilde, re_gv_tilde_naive};
use arith_cocycles::rademacher::{rademacher_phi, rademacher_phi_tilde};
use arith_cocycles::verify::{run_suite_with, SuiteOptions, VerificationReport};
use arith_cocycles::{Error, Mat2Q, Rat, TorsionPoint};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

/// Exact cocycles on GL⁺(2,Q) and their verification suites.
#[derive(Parser)]
#[command(name = "cocycles", version)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; defaults to COCYCLES_THREADS, then the number of CPUs.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classical Dedekind sum s(m/n).
    Dedekind {
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        /// Reciprocity algorithm instead of the direct sum.
        #[arg(long)]
        fast: bool,
    },
    /// Rademacher function Φ on SL(2,Z), or Φ̃ on GL⁺(2,Q).
    Rademacher {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        tilde: bool,
    },
    /// Petersson-Asai cocycle e(g₁,g₂) on SL(2,Q).
    Asai(PairArgs),
    /// Re G̃V(g₁,g₂) on GL⁺(2,Q).
    Gv {
        #[command(flatten)]
        pair: PairArgs,
        /// Enumerate fibers instead of the closed form.
        #[arg(long)]
        naive: bool,
    },
    /// Transgression defect for one pair, or a seeded batch.
    Transgress {
        #[arg(long, allow_hyphen_values = true, requires = "g2", conflicts_with = "samples")]
        g1: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "g1")]
        g2: Option<String>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Eisenstein cocycle Φ⁽ᵐ⁾ₓ(γ).
    Eis {
        /// Weight m; with --sym, m = 2n.
        #[arg(long)]
        m: usize,
        #[arg(long)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Symmetric-tensor variant with values in W_{n-1} ⊗ W_{n-1}.
        #[arg(long)]
        sym: bool,
    },
    /// Run an identity suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the JSON report to this path.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Record elapsed time in the report.
        #[arg(long)]
        timed: bool,
    },
    /// Numeric cross-check against the q-series oracle.
    Oracle {
        /// asai, g2, mu, mu-fd, gv, tgv, borel or all.
        #[arg(long)]
        check: String,
        /// Tolerance 10^-prec; defaults per check.
        #[arg(long)]
        prec: Option<u32>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct PairArgs {
    #[arg(long, allow_hyphen_values = true)]
    g1: String,
    #[arg(long, allow_hyphen_values = true)]
    g2: String,
}

const ORACLE_CHECKS: &[(&str, usize)] = &[
    ("asai", 200),
    ("g2", 10),
    ("mu", 50),
    ("mu-fd", 50),
    ("gv", 50),
    ("tgv", 20),
    ("borel", 50),
];

enum Failure {
    Identity,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn parse_int(s: &str, what: &str) -> Result<Int, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("--{what}: not an integer: `{s}`")))
}

fn emit(json: bool, human: String, machine: serde_json::Value) {
    if json {
        println!("{machine}");
    } else {
        println!("{human}");
    }
}

fn emit_rat(json: bool, r: &Rat) {
    emit(json, fmt_rat(r), json!({ "value": rat_json(r) }));
}

fn report_out(json: bool, r: &VerificationReport) -> Outcome {
    if json {
        println!("{}", r.to_json());
    } else {
        println!("{}: {} ({} samples, seed {})", r.suite, status_word(r), r.samples, r.seed);
        for n in &r.notes {
            println!("  note: {n}");
        }
        for f in &r.failures {
            println!("  FAIL {} -> {}", f.input, f.defect);
        }
    }
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Identity)
    }
}

fn status_word(r: &VerificationReport) -> &'static str {
    if r.passed() {
        "pass"
    } else {
        "fail"
    }
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.cmd {
        Cmd::Dedekind { m, n, fast } => {
            let (m, n) = (parse_int(&m, "m")?, parse_int(&n, "n")?);
            let s = if fast {
                dedekind_sum_fast(&m, &n)?
            } else {
                dedekind_sum(&m, &n)?
            };
            emit_rat(json, &s);
        }
        Cmd::Rademacher { matrix, tilde } => {
            let g = Mat2Q::parse(&matrix)?;
            let v = if tilde {
                rademacher_phi_tilde(&g)?
            } else {
                rademacher_phi(&g)?
            };
            emit_rat(json, &v);
        }
        Cmd::Asai(p) => {
            let e = asai_e(&Mat2Q::parse(&p.g1)?, &Mat2Q::parse(&p.g2)?)?;
            emit(json, e.to_string(), json!({ "value": e }));
        }
        Cmd::Gv { pair, naive } => {
            let (g1, g2) = (Mat2Q::parse(&pair.g1)?, Mat2Q::parse(&pair.g2)?);
            let v = if naive {
                re_gv_tilde_naive(&g1, &g2)?
            } else {
                re_gv_tilde(&g1, &g2)?
            };
            emit_rat(json, &v);
        }
        Cmd::Transgress { g1, g2, samples, seed } => match (g1, g2, samples) {
            (Some(g1), Some(g2), None) => {
                let (g1, g2) = (Mat2Q::parse(&g1)?, Mat2Q::parse(&g2)?);
                let half_gv = re_gv_tilde(&g1, &g2)? / Rat::from_integer(2.into());
                let e = asai_e(&g1, &g2)?;
                let cob = rademacher_phi_tilde(&(&g1 * &g2))?
                    - rademacher_phi_tilde(&g1)?
                    - rademacher_phi_tilde(&g2)?;
                let defect = &half_gv + Rat::from_integer(e.into()) - &cob;
                emit(
                    json,
                    format!(
                        "½Re G̃V = {}, e = {e}, δΦ̃ = {}, defect = {}",
                        fmt_rat(&half_gv),
                        fmt_rat(&cob),
                        fmt_rat(&defect)
                    ),
                    json!({
                        "half_re_gv": rat_json(&half_gv),
                        "asai_e": e,
                        "coboundary": rat_json(&cob),
                        "defect": rat_json(&defect),
                    }),
                );
                if defect != Rat::from_integer(0.into()) {
                    return Err(Failure::Identity);
                }
            }
            (None, None, Some(samples)) => {
                let r = run_suite_with("transgression", seed, samples, &SuiteOptions::default())?;
                report_out(json, &r)?;
            }
            _ => return Err(Failure::Usage("give either --g1/--g2 or --samples".into())),
        },
        Cmd::Eis { m, x, matrix, sym } => {
            let x = TorsionPoint::parse(&x)?;
            let g = Mat2Q::parse(&matrix)?;
            if sym {
                if m % 2 != 0 {
                    return Err(Failure::Usage(format!("--sym needs an even weight, got {m}")));
                }
                let v = phi_sym(m / 2, &x, &g)?;
                let machine = serde_json::to_value(&v).expect("value serializes");
                emit(json, v.value.to_string(), machine);
            } else {
                let v = phi(m, &x, &g)?;
                let machine = serde_json::to_value(&v).expect("value serializes");
                emit(json, v.value.to_string(), machine);
            }
        }
        Cmd::Verify { suite, samples, seed, out, timed } => {
            let opts = SuiteOptions { tolerance: None, timed };
            let r = run_suite_with(&suite, seed, samples, &opts)?;
            if let Some(path) = out {
                std::fs::write(&path, r.to_json() + "\n")
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            report_out(json, &r)?;
        }
        Cmd::Oracle { check, prec, samples, seed } => {
            let selected: Vec<(&str, usize)> = if check == "all" {
                ORACLE_CHECKS.to_vec()
            } else {
                let found = ORACLE_CHECKS.iter().find(|(n, _)| *n == check);
                vec![*found.ok_or_else(|| Failure::Usage(format!("unknown check `{check}`")))?]
            };
            let opts = SuiteOptions {
                tolerance: prec.map(|p| 10f64.powi(-(p as i32))),
                timed: false,
            };
            let mut ok = true;
            for (name, default_samples) in selected {
                let suite = format!("oracle-{name}");
                let r = run_suite_with(&suite, seed, samples.unwrap_or(default_samples), &opts)?;
                ok &= report_out(json, &r).is_ok();
            }
            if !ok {
                return Err(Failure::Identity);
            }
        }
    }
    Ok(())
}

fn threads(cli: &Cli) -> Result<Option<usize>, Failure> {
    if let Some(n) = cli.threads {
        return Ok(Some(n));
    }
    match std::env::var("COCYCLES_THREADS") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("COCYCLES_THREADS: not a count: `{v}`"))),
        Err(_) => Ok(None),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = threads(&cli).and_then(|n| {
        if let Some(n) = n {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| Failure::Usage(e.to_string()))?;
        }
        run(cli)
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identity) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
