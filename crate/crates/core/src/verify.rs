//! Seeded identity suites and their JSON reports.

use std::time::Instant;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dedekind::{dedekind_sum, dedekind_sum_cf, dedekind_sum_fast};
use crate::eisenstein::{
    cocycle_defect, distribution_defect, phi_chain, phi_closed, phi_sym_chain, phi_sym_closed,
};
use crate::error::{Error, Result};
use crate::exact::{fmt_rat, int, rat, Rat};
use crate::gl2::{pipe_action, primitive_rep, sigma0, Mat2, Mat2Q, TorsionPoint, TorsionSum};
use crate::gv::{asai_e, re_gv_borel, re_gv_coboundary, re_gv_tilde, transgression_defect};
use crate::oracle;
use crate::rademacher::{coboundary_variants, rademacher_phi_tilde};
use crate::sampling::{self as smp, case_rng, CaseRng};

/// Every suite name accepted by `run_suite`.
pub const SUITES: &[&str] = &[
    "transgression",
    "splitting",
    "rademacher-tr",
    "gv-pgl",
    "gv-cocycle",
    "borel",
    "gv-diag",
    "dedekind-fast",
    "dedekind-reciprocity",
    "eis-chain",
    "eis-gamma-n",
    "eis-twisted",
    "distribution",
    "eis-sym",
    "oracle-asai",
    "oracle-g2",
    "oracle-mu",
    "oracle-mu-fd",
    "oracle-gv",
    "oracle-tgv",
    "oracle-borel",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub input: String,
    pub defect: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub failures: Vec<Failure>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub status: Status,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    /// Overrides the tolerance of numeric suites.
    pub tolerance: Option<f64>,
    /// Record wall-clock time in the report.
    pub timed: bool,
}

pub fn run_suite(name: &str, seed: u64, samples: usize) -> Result<VerificationReport> {
    run_suite_with(name, seed, samples, &SuiteOptions::default())
}

pub fn run_suite_with(
    name: &str,
    seed: u64,
    samples: usize,
    opts: &SuiteOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let tol = |default: f64| opts.tolerance.unwrap_or(default);
    let (failures, notes) = match name {
        "transgression" => transgression(seed, samples),
        "splitting" => plain(each(seed, samples, splitting_case)),
        "rademacher-tr" => rademacher_tr(seed, samples),
        "gv-pgl" => plain(each(seed, samples, gv_pgl_case)),
        "gv-cocycle" => plain(each(seed, samples, gv_cocycle_case)),
        "borel" => plain(each(seed, samples, borel_case)),
        "gv-diag" => plain(each(seed, samples, gv_diag_case)),
        "dedekind-fast" => plain(each(seed, samples, dedekind_fast_case)),
        "dedekind-reciprocity" => plain(each(seed, samples, reciprocity_case)),
        "eis-chain" => plain(each(seed, samples, eis_chain_case)),
        "eis-gamma-n" => plain(each(seed, samples, eis_gamma_case)),
        "eis-twisted" => eis_twisted(seed, samples),
        "distribution" => plain(each(seed, samples, distribution_case)),
        "eis-sym" => plain(each(seed, samples, eis_sym_case)),
        "oracle-asai" => numeric(seed, samples, tol(1e-9), asai_numeric_case),
        "oracle-g2" => numeric(seed, samples, tol(1e-12), g2_case),
        "oracle-mu" => numeric(seed, samples, tol(1e-10), mu_case),
        "oracle-mu-fd" => numeric(seed, samples, tol(1e-6), mu_fd_case),
        "oracle-gv" => numeric(seed, samples, tol(1e-9), gv_numeric_case),
        "oracle-tgv" => numeric(seed, samples, tol(1e-8), tgv_case),
        "oracle-borel" => numeric(seed, samples, tol(1e-6), borel_numeric_case),
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    let status = if failures.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(VerificationReport {
        suite: name.to_string(),
        seed,
        samples,
        failures,
        notes,
        elapsed_ms: opts.timed.then(|| start.elapsed().as_millis() as u64),
        status,
    })
}

type Outcome = Result<Option<Failure>>;

fn plain(failures: Vec<Failure>) -> (Vec<Failure>, Vec<String>) {
    (failures, Vec::new())
}

fn run_cases<T: Send>(seed: u64, samples: usize, f: impl Fn(&mut CaseRng, usize) -> T + Sync) -> Vec<T> {
    (0..samples)
        .into_par_iter()
        .map(|i| f(&mut case_rng(seed, i as u64), i))
        .collect()
}

fn each(seed: u64, samples: usize, f: fn(&mut CaseRng, usize) -> Outcome) -> Vec<Failure> {
    run_cases(seed, samples, |rng, i| match f(rng, i) {
        Ok(r) => r,
        Err(e) => Some(Failure {
            input: format!("sample {i}"),
            defect: format!("error: {e}"),
        }),
    })
    .into_iter()
    .flatten()
    .collect()
}

fn fail_unless(ok: bool, input: impl FnOnce() -> String, defect: impl FnOnce() -> String) -> Outcome {
    Ok((!ok).then(|| Failure {
        input: input(),
        defect: defect(),
    }))
}

fn exact_zero(defect: Rat, input: impl FnOnce() -> String) -> Outcome {
    fail_unless(defect.is_zero(), input, || fmt_rat(&defect))
}

fn pair(g1: &Mat2Q, g2: &Mat2Q) -> String {
    format!("g1 = [{g1}], g2 = [{g2}]")
}

fn hand_pairs() -> Vec<(Mat2Q, Mat2Q)> {
    let t = Mat2Q::from_i64(1, 1, 0, 1);
    vec![
        (sigma0(), sigma0()),
        (t.clone(), t),
        (Mat2Q::from_i64(-1, 0, 0, -1), sigma0()),
    ]
}

fn transgression(seed: u64, samples: usize) -> (Vec<Failure>, Vec<String>) {
    let mut failures = Vec::new();
    for (g1, g2) in hand_pairs() {
        let r = transgression_defect(&g1, &g2);
        let f = match r {
            Ok(d) => exact_zero(d, || pair(&g1, &g2)).unwrap_or(None),
            Err(e) => Some(Failure {
                input: pair(&g1, &g2),
                defect: format!("error: {e}"),
            }),
        };
        failures.extend(f);
    }
    failures.extend(each(seed, samples, |rng, _| {
        let g1 = smp::sl2q_word(rng, 20, 8);
        let g2 = smp::sl2q_word(rng, 20, 8);
        exact_zero(transgression_defect(&g1, &g2)?, || pair(&g1, &g2))
    }));
    (failures, vec!["hand cases (σ₀,σ₀), (T,T), (-I,σ₀) checked in addition".into()])
}

fn splitting_case(rng: &mut CaseRng, _: usize) -> Outcome {
    let (s1, s2) = (smp::sl2z(rng, 50), smp::sl2z(rng, 50));
    let cob = rademacher_phi_tilde(&(&s1 * &s2))? - rademacher_phi_tilde(&s1)? - rademacher_phi_tilde(&s2)?;
    let e = asai_e(&s1, &s2)?;
    exact_zero(cob - rat(e as i64, 1), || pair(&s1, &s2))
}

fn rademacher_tr(seed: u64, samples: usize) -> (Vec<Failure>, Vec<String>) {
    let results = run_cases(seed, samples, |rng, _| {
        let (s1, s2) = (smp::sl2z(rng, 50), smp::sl2z(rng, 50));
        (coboundary_variants(&s1, &s2), s1, s2)
    });
    let mut failures = Vec::new();
    let (mut used, mut plus, mut minus) = (0usize, 0usize, 0usize);
    for (r, s1, s2) in results {
        match r {
            Err(e) => failures.push(Failure {
                input: pair(&s1, &s2),
                defect: format!("error: {e}"),
            }),
            Ok(None) => {}
            Ok(Some(c)) => {
                used += 1;
                plus += usize::from(c.plus_holds);
                minus += usize::from(c.minus_holds);
                if !c.plus_holds {
                    failures.push(Failure {
                        input: pair(&s1, &s2),
                        defect: "Φ(σ₁σ₂) ≠ Φ(σ₁) + Φ(σ₂) - 3 sign(c₁c₂c₃)".into(),
                    });
                }
            }
        }
    }
    if used > 0 && minus == used {
        failures.push(Failure {
            input: format!("{used} pairs"),
            defect: "both sign variants hold".into(),
        });
    }
    let notes = vec![
        format!("pairs with c₁c₂c₃ ≠ 0: {used} of {samples}"),
        format!("Φ(σ₁σ₂) = Φ(σ₁) + Φ(σ₂) - 3 sign(c₁c₂c₃): holds on {plus}/{used}"),
        format!("Φ(σ₁σ₂) = Φ(σ₁) - Φ(σ₂) - 3 sign(c₁c₂c₃): holds on {minus}/{used}; this sign is wrong"),
    ];
    (failures, notes)
}

fn scalar(rng: &mut CaseRng) -> Rat {
    let mut k = smp::positive_rational(rng, 6);
    if rng.gen_bool(0.5) {
        k = -k;
    }
    k
}

fn gv_pgl_case(rng: &mut CaseRng, _: usize) -> Outcome {
    let (g1, g2) = (smp::gl_plus(rng, 6), smp::gl_plus(rng, 6));
    let (k1, k2) = (scalar(rng), scalar(rng));
    let base = re_gv_tilde(&g1, &g2)?;
    let moved = re_gv_tilde(&g1.scale(&k1), &g2.scale(&k2))?;
    exact_zero(moved - base, || {
        format!("{}, k1 = {}, k2 = {}", pair(&g1, &g2), fmt_rat(&k1), fmt_rat(&k2))
    })
}

fn gv_cocycle_case(rng: &mut CaseRng, _: usize) -> Outcome {
    let g: Vec<Mat2Q> = (0..3).map(|_| smp::gl_plus(rng, 5)).collect();
    exact_zero(re_gv_coboundary(&g[0], &g[1], &g[2])?, || {
        format!("g1 = [{}], g2 = [{}], g3 = [{}]", g[0], g[1], g[2])
    })
}

fn borel_case(rng: &mut CaseRng, _: usize) -> Outcome {
    let (b1, b2) = (smp::b1_plus(rng, 12), smp::b1_plus(rng, 12));
    exact_zero(re_gv_tilde(&b1, &b2)? - re_gv_borel(&b1, &b2)?, || pair(&b1, &b2))
}

fn gv_diag_case(_: &mut CaseRng, i: usize) -> Outcome {
    let (m, n) = ((i % 12) as i64 + 1, ((i / 12) % 12) as i64 + 1);
    let d = Mat2Q::from_i64(m, 0, 0, n);
    exact_zero(re_gv_tilde(&d, &sigma0())?, || pair(&d, &sigma0()))
}

fn coprime_pair(rng: &mut CaseRng, max_n: i64) -> (i64, i64) {
    loop {
        let n = rng.gen_range(1..=max_n);
        let m = rng.gen_range(-n..=n);
        if num_integer::gcd(m, n) == 1 {
            return (m, n);
        }
    }
}

fn dedekind_fast_case(rng: &mut CaseRng, i: usize) -> Outcome {
    let max_n = if i % 2 == 0 { 2000 } else { 1_000_000_000 };
    let (m, n) = coprime_pair(rng, max_n);
    let (mi, ni) = (int(m), int(n));
    let fast = dedekind_sum_fast(&mi, &ni)?;
    let reference = if n <= 2000 {
        dedekind_sum(&mi, &ni)?
    } else {
        dedekind_sum_cf(&mi, &ni)?
    };
    exact_zero(fast - reference, || format!("m = {m}, n = {n}"))
}

fn reciprocity_case(rng: &mut CaseRng, _: usize) -> Outcome {
    let (m, n) = loop {
        let n = rng.gen_range(2..=500i64);
        let m = rng.gen_range(1..n);
        if num_integer::gcd(m, n) == 1 {
            break (m, n);
        }
    };
    let lhs = dedekind_sum(&int(m), &int(n))? + dedekind_sum(&int(n), &int(m))?;
    let rhs = rat(m * m + n * n + 1, 12 * m * n) - rat(1, 4);
    exact_zero(lhs - rhs, || format!("m = {m}, n = {n}"))
}

fn nonzero_point(rng: &mut CaseRng, max_den: i64, need: bool) -> TorsionPoint {
    loop {
        let x = smp::torsion_point(rng, max_den);
        if !(need && x.is_zero()) {
            return x;
        }
    }
}

fn eis_input(m: usize, x: &TorsionPoint, g: &Mat2Q) -> String {
    format!("m = {m}, x = {x}, γ = [{g}]")
}

const CHAIN_WEIGHTS: [usize; 5] = [2, 3, 4, 6, 8];

fn eis_chain_case(rng: &mut CaseRng, i: usize) -> Outcome {
    let m = CHAIN_WEIGHTS[i % CHAIN_WEIGHTS.len()];
    let x = nonzero_point(rng, 12, m == 2);
    let s = smp::sl2z_cpos(rng, 20);
    let chain = phi_chain(m, &TorsionSum::point(x.clone()), &s)?;
    let closed = phi_closed(m, &x, &s)?;
    let diff = chain.value.sub(&closed.value);
    fail_unless(diff.is_zero(), || eis_input(m, &x, &s), || diff.to_string())
}

fn eis_gamma_case(rng: &mut CaseRng, i: usize) -> Outcome {
    let level = 2 + (i % 4) as i64;
    let m = [2, 3, 4, 6][(i / 4) % 4];
    let x = loop {
        let x = smp::torsion_point_level(rng, level);
        if !(m == 2 && x.is_zero()) {
            break x;
        }
    };
    // α must equal its own sign-normalized representative, else x|α = -x
    let (a, b) = loop {
        let a = smp::gamma_n(rng, level, 1, 2);
        let b = smp::gamma_n(rng, level, 1, 2);
        let normalized = a.c.is_positive() || (a.c.is_zero() && a.d.is_positive());
        let ab = &a * &b;
        let small = [&ab.a, &ab.b, &ab.c, &ab.d].iter().all(|e| e.abs() <= rat(60, 1));
        if normalized && small {
            break (a, b);
        }
    };
    let input = || format!("N = {level}, {}, {}", eis_input(m, &x, &a), pair(&a, &b));
    if pipe_action(&x, &a)? != TorsionSum::point(x.clone()) {
        return fail_unless(false, input, || "x|α ≠ x".into());
    }
    let d = cocycle_defect(m, &x, &a, &b)?;
    fail_unless(d.is_zero(), input, || d.value.to_string())
}

fn is_square(r: &Rat) -> bool {
    let root = |n: &num_bigint::BigInt| {
        let s = n.sqrt();
        &s * &s == *n
    };
    !r.is_negative() && root(r.numer()) && root(r.denom())
}

fn eis_twisted(seed: u64, samples: usize) -> (Vec<Failure>, Vec<String>) {
    let results = run_cases(seed, samples, |rng, i| -> (Outcome, bool) {
        let m = [2, 3, 4][i % 3];
        let x = nonzero_point(rng, 6, m == 2);
        let (a, b) = (smp::gl_plus(rng, 3), smp::gl_plus(rng, 3));
        let square = primitive_rep(&a).map(|p| is_square(&Rat::from_integer(p.det())));
        let outcome = cocycle_defect(m, &x, &a, &b).and_then(|d| {
            fail_unless(
                d.is_zero(),
                || format!("{}, β = [{b}]", eis_input(m, &x, &a)),
                || d.value.to_string(),
            )
        });
        (outcome, square.unwrap_or(true))
    });
    let non_square = results.iter().filter(|(_, sq)| !sq).count();
    let failures = results
        .into_iter()
        .enumerate()
        .filter_map(|(i, (o, _))| match o {
            Ok(f) => f,
            Err(e) => Some(Failure {
                input: format!("sample {i}"),
                defect: format!("error: {e}"),
            }),
        })
        .collect();
    (failures, vec![format!("non-square det(α): {non_square}/{samples}")])
}

fn distribution_case(rng: &mut CaseRng, i: usize) -> Outcome {
    let n = 2 + (i % 2) as u32;
    let m = [2, 3, 4][(i / 2) % 3];
    let x = nonzero_point(rng, 6, m == 2);
    let g = smp::gl_plus(rng, 3);
    let d = distribution_defect(m, &x, &g, n)?;
    fail_unless(d.is_zero(), || format!("n = {n}, {}", eis_input(m, &x, &g)), || d.value.to_string())
}

fn eis_sym_case(rng: &mut CaseRng, i: usize) -> Outcome {
    let n = 1 + i % 3;
    let x = nonzero_point(rng, 8, n == 1);
    let s = smp::sl2z_cpos(rng, 12);
    let input = || format!("n = {n}, x = {x}, γ = [{s}]");
    let closed = phi_sym_closed(n, &x, &s)?;
    let chain = phi_sym_chain(n, &TorsionSum::point(x.clone()), &s)?;
    if !closed.value.is_swap_symmetric() || !chain.value.is_swap_symmetric() {
        return fail_unless(false, input, || "not swap-symmetric".into());
    }
    let diff = chain.value.sub(&closed.value);
    if !diff.is_zero() {
        return fail_unless(false, input, || format!("chain - closed = {diff}"));
    }
    if n == 1 {
        let scalar = phi_closed(2, &x, &s)?.value.coeff(0).clone();
        let d = closed.value.coeff(0, 0).clone() - scalar;
        return fail_unless(d.is_zero(), input, || format!("sym - scalar = {d}"));
    }
    Ok(None)
}

fn numeric(
    seed: u64,
    samples: usize,
    tol: f64,
    f: fn(&mut CaseRng) -> Result<(String, f64)>,
) -> (Vec<Failure>, Vec<String>) {
    let results = run_cases(seed, samples, |rng, i| {
        // resample when a point falls below the guard height
        for _ in 0..1000 {
            match f(rng) {
                Err(Error::Guard(_)) => continue,
                Err(e) => return Some((format!("sample {i}"), format!("error: {e}"))),
                Ok((input, defect)) => {
                    return (!(defect < tol)).then(|| (input, format!("{defect:.3e}")));
                }
            }
        }
        Some((format!("sample {i}"), "no admissible sample".into()))
    });
    let failures = results
        .into_iter()
        .flatten()
        .map(|(input, defect)| Failure { input, defect })
        .collect();
    (failures, vec![format!("tolerance {tol:e}")])
}

fn upper_point(rng: &mut CaseRng, lo: f64, hi: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(lo..hi))
}

fn asai_numeric_case(rng: &mut CaseRng) -> Result<(String, f64)> {
    let (g1, g2) = (smp::sl2q_word(rng, 5, 4), smp::sl2q_word(rng, 5, 4));
    let z = upper_point(rng, 0.5, 2.0);
    let num = oracle::asai_e_numeric(&g1, &g2, z)?;
    let exact = asai_e(&g1, &g2)?;
    Ok((format!("{}, z = {z}", pair(&g1, &g2)), (num - exact as f64).norm()))
}

fn image_point(g: &Mat2Q, z: Complex64) -> Result<Complex64> {
    let w = oracle::mobius(&oracle::to_f64_mat(g), z);
    if w.im < oracle::GUARD_IM {
        return Err(Error::Guard(format!("Im γz = {}", w.im)));
    }
    Ok(w)
}

fn g2_case(rng: &mut CaseRng) -> Result<(String, f64)> {
    let s = smp::sl2z(rng, 3);
    let z = upper_point(rng, 0.8, 1.5);
    let w = image_point(&s, z)?;
    let f = oracle::to_f64_mat(&s);
    let j = z * f.c + f.d;
    let i2pi = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let defect = oracle::g2(w)? / (j * j) - oracle::g2(z)? + i2pi * f.c / j;
    Ok((format!("γ = [{s}], z = {z}"), defect.norm()))
}

fn mu_case(rng: &mut CaseRng) -> Result<(String, f64)> {
    let s = smp::sl2z(rng, 10);
    let z = upper_point(rng, 0.5, 2.0);
    Ok((format!("γ = [{s}], z = {z}"), oracle::eval_mu(&s, z)?.norm()))
}

fn mu_fd_case(rng: &mut CaseRng) -> Result<(String, f64)> {
    let g = smp::gl_plus(rng, 3);
    let z = upper_point(rng, 0.5, 2.0);
    let exact = oracle::eval_mu(&g, z)?;
    let fd = oracle::mu_from_eta(&g, z, 1e-4)?;
    Ok((format!("γ = [{g}], z = {z}"), (exact - fd).norm()))
}

fn borelish(rng: &mut CaseRng) -> Mat2Q {
    let g = borel_small(rng);
    if rng.gen_bool(1.0 / 3.0) {
        let t = [rat(1, 5), rat(-1, 5), rat(1, 4), rat(-1, 4)][rng.gen_range(0..4)].clone();
        &g * &Mat2::new(Rat::one(), Rat::zero(), t, Rat::one())
    } else {
        g
    }
}

/// [[a, b], [0, 1/a]] with a ∈ {1, 2/3, 3/2, 4/5, 5/4} and |b| ≤ 1.
fn borel_small(rng: &mut CaseRng) -> Mat2Q {
    const DIAG: [(i64, i64); 5] = [(1, 1), (2, 3), (3, 2), (4, 5), (5, 4)];
    const SHIFT: [(i64, i64); 7] = [(0, 1), (1, 2), (-1, 2), (1, 1), (-1, 1), (1, 3), (-1, 3)];
    let (p, q) = DIAG[rng.gen_range(0..DIAG.len())];
    let (r, s) = SHIFT[rng.gen_range(0..SHIFT.len())];
    Mat2::new(rat(p, q), rat(r, s), Rat::zero(), rat(q, p))
}

fn gv_numeric_case(rng: &mut CaseRng) -> Result<(String, f64)> {
    let g: Vec<Mat2Q> = (0..3).map(|_| borelish(rng)).collect();
    let z0 = Complex64::new(0.0, 2.0);
    let gv = |a: &Mat2Q, b: &Mat2Q| oracle::gv_numeric(a, b, z0).map(|q| q.value);
    let g12 = &g[0] * &g[1];
    let g23 = &g[1] * &g[2];
    let defect = gv(&g[1], &g[2])? - gv(&g12, &g[2])? + gv(&g[0], &g23)? - gv(&g[0], &g[1])?;
    Ok((
        format!("g1 = [{}], g2 = [{}], g3 = [{}]", g[0], g[1], g[2]),
        defect.norm(),
    ))
}

fn tgv_case(rng: &mut CaseRng) -> Result<(String, f64)> {
    let (a, b) = (smp::sl2z(rng, 2), smp::sl2z(rng, 2));
    let z0 = Complex64::new(rng.gen_range(-0.3..0.3), rng.gen_range(1.0..1.6));
    let ab = &a * &b;
    for g in [&a, &b, &ab] {
        image_point(g, z0)?;
    }
    let nterms = oracle::default_nterms(Complex64::new(0.0, oracle::GUARD_IM));
    let whole = oracle::tgv_delta_numeric(&ab, z0, nterms)?.value;
    let head = oracle::tgv_delta_numeric(&a, z0, nterms)?.value;
    let tail = oracle::act_w10(&a, &oracle::tgv_delta_numeric(&b, z0, nterms)?.value);
    let defect = (0..11)
        .map(|k| (whole[k] - head[k] - tail[k]).norm())
        .fold(0.0, f64::max);
    Ok((format!("{}, z0 = {z0}", pair(&a, &b)), defect))
}

fn borel_numeric_case(rng: &mut CaseRng) -> Result<(String, f64)> {
    // the q-expansion tail at β₁(iY) is of size exp(-2πa₁²Y)
    let (b1, b2) = (borel_small(rng), borel_small(rng));
    let y = 20.0;
    let z = Complex64::new(0.0, y);
    let f = |r: &Rat| r.to_f64().unwrap_or(f64::NAN);
    let reg = z * (1.0 - f(&b2.a) / f(&b2.d)) * (f(&b1.a) / f(&b1.d) - 1.0) / 6.0;
    let num = (oracle::gv_numeric(&b1, &b2, z)?.value + reg).re;
    let exact = f(&re_gv_borel(&b1, &b2)?);
    Ok((pair(&b1, &b2), (num - exact).abs()))
}
