//! Floating-point q-series for G₂, η and Δ, and path integrals built on them.

use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::gl2::{Mat2, Mat2Q};
use crate::poly::HomPoly;

pub type ComplexF = Complex64;

/// Series are only evaluated where Im z is at least this large.
pub const GUARD_IM: f64 = 0.3;

/// Weight-k slash uses det^{k·SLASH_DET_EXPONENT}(cz+d)^{-k} f(γz).
pub const SLASH_DET_EXPONENT: f64 = 0.5;

/// Truncation target for |q|^nterms.
pub const SERIES_TAIL: f64 = 1e-18;

/// Gauss-Legendre nodes per unit of path length.
pub const NODES_PER_UNIT: usize = 64;

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

pub fn to_f64_mat(g: &Mat2Q) -> Mat2<f64> {
    g.map(|e: &Rat| e.to_f64().unwrap_or(f64::NAN))
}

pub fn mobius(g: &Mat2<f64>, z: Complex64) -> Complex64 {
    (z * g.a + g.b) / (z * g.c + g.d)
}

fn guard(z: Complex64, what: &str) -> Result<()> {
    if z.im < GUARD_IM || !z.im.is_finite() {
        return Err(Error::Guard(format!("{what}: Im = {:.4} < {GUARD_IM}", z.im)));
    }
    Ok(())
}

/// Smallest n with |q|^n below `SERIES_TAIL`.
pub fn default_nterms(z: Complex64) -> usize {
    let decay = 2.0 * PI * z.im.max(1e-6);
    ((SERIES_TAIL.recip().ln() / decay).ceil() as usize).max(1) + 2
}

fn q_of(z: Complex64) -> Complex64 {
    (2.0 * PI * i() * z).exp()
}

/// G₂(z) = π²/3 - 8π² Σ σ₁(n) qⁿ, summed as a Lambert series.
pub fn eval_g2(z: Complex64, nterms: usize) -> Result<Complex64> {
    if z.im <= 0.0 {
        return Err(Error::Guard(format!("G2 needs Im z > 0, got {z}")));
    }
    let q = q_of(z);
    let mut acc = Complex64::zero();
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..=nterms {
        qn *= q;
        acc += qn * (n as f64) / (Complex64::new(1.0, 0.0) - qn);
    }
    Ok(Complex64::new(PI * PI / 3.0, 0.0) - acc * (8.0 * PI * PI))
}

pub fn g2(z: Complex64) -> Result<Complex64> {
    eval_g2(z, default_nterms(z))
}

/// η(z) = q^{1/24} Π_{n ≤ nterms} (1 - qⁿ).
pub fn eval_eta(z: Complex64, nterms: usize) -> Result<Complex64> {
    if z.im <= 0.0 {
        return Err(Error::Guard(format!("eta needs Im z > 0, got {z}")));
    }
    let q = q_of(z);
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 0..nterms {
        qn *= q;
        prod *= Complex64::new(1.0, 0.0) - qn;
    }
    Ok((2.0 * PI * i() * z / 24.0).exp() * prod)
}

pub fn eta(z: Complex64) -> Result<Complex64> {
    eval_eta(z, default_nterms(z))
}

/// Δ = q Π (1 - qⁿ)²⁴.
pub fn eval_delta(z: Complex64, nterms: usize) -> Result<Complex64> {
    if z.im <= 0.0 {
        return Err(Error::Guard(format!("Delta needs Im z > 0, got {z}")));
    }
    let q = q_of(z);
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 0..nterms {
        qn *= q;
        prod *= Complex64::new(1.0, 0.0) - qn;
    }
    Ok(q * prod.powu(24))
}

/// μ_γ(z) = (1/2π²)(G₂|γ(z) - G₂(z) + 2πic/(cz+d)).
pub fn eval_mu(g: &Mat2Q, z: Complex64) -> Result<Complex64> {
    guard(z, "mu base point")?;
    let gf = to_f64_mat(g);
    let gz = mobius(&gf, z);
    guard(gz, "mu image point")?;
    let det = g.det().to_f64().unwrap_or(f64::NAN);
    let j = z * gf.c + gf.d;
    let slash = g2(gz)? * det.powf(2.0 * SLASH_DET_EXPONENT) / (j * j);
    Ok((slash - g2(z)? + 2.0 * PI * i() * gf.c / j) / (2.0 * PI * PI))
}

/// (1/2πi) d/dz log(η⁴|γ / η⁴) by a central difference of step h.
pub fn mu_from_eta(g: &Mat2Q, z: Complex64, h: f64) -> Result<Complex64> {
    let gf = to_f64_mat(g);
    let det = g.det().to_f64().unwrap_or(f64::NAN);
    let ratio = |w: Complex64| -> Result<Complex64> {
        guard(w, "eta base point")?;
        let gw = mobius(&gf, w);
        guard(gw, "eta image point")?;
        let j = w * gf.c + gf.d;
        let num = eta(gw)?.powu(4) * det.powf(4.0 * SLASH_DET_EXPONENT) / (j * j);
        Ok(num / eta(w)?.powu(4))
    };
    let quotient = ratio(z + h)? / ratio(z - h)?;
    Ok(quotient.ln() / (2.0 * h) / (2.0 * PI * i()))
}

/// Value and a Richardson-style error estimate of a quadrature.
#[derive(Clone, Copy, Debug)]
pub struct Quadrature<T> {
    pub value: T,
    pub error: f64,
}

fn legendre() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(NonZeroUsize::new(NODES_PER_UNIT).unwrap()))
}

fn panels_sum(
    a: Complex64,
    b: Complex64,
    panels: usize,
    dim: usize,
    f: &dyn Fn(Complex64) -> Result<Vec<Complex64>>,
) -> Result<Vec<Complex64>> {
    let rule = legendre();
    let step = (b - a) / panels as f64;
    let mut acc = vec![Complex64::zero(); dim];
    for p in 0..panels {
        let lo = a + step * p as f64;
        let mid = lo + step * 0.5;
        for &(x, w) in rule.as_node_weight_pairs() {
            let v = f(mid + step * (0.5 * x))?;
            for (s, vi) in acc.iter_mut().zip(v) {
                *s += vi * (0.5 * w);
            }
        }
    }
    Ok(acc.into_iter().map(|s| s * step).collect())
}

/// ∫ f along the segment [a, b], composite Gauss-Legendre, checked against a doubled mesh.
pub fn integrate_segment(
    a: Complex64,
    b: Complex64,
    dim: usize,
    f: &dyn Fn(Complex64) -> Result<Vec<Complex64>>,
) -> Result<Quadrature<Vec<Complex64>>> {
    if a == b {
        return Ok(Quadrature {
            value: vec![Complex64::zero(); dim],
            error: 0.0,
        });
    }
    let panels = ((b - a).norm().ceil() as usize).max(1);
    let coarse = panels_sum(a, b, panels, dim, f)?;
    let fine = panels_sum(a, b, 2 * panels, dim, f)?;
    let error = coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| (c - f).norm())
        .fold(0.0, f64::max);
    Ok(Quadrature { value: fine, error })
}

fn check_path(a: Complex64, b: Complex64) -> Result<()> {
    guard(a, "path start")?;
    guard(b, "path end")
}

/// GV(γ₁,γ₂) = ∫_{z₀}^{γ₂z₀} μ_{γ₁}(z) dz along the straight segment.
pub fn gv_numeric(g1: &Mat2Q, g2: &Mat2Q, z0: Complex64) -> Result<Quadrature<Complex64>> {
    let end = mobius(&to_f64_mat(g2), z0);
    check_path(z0, end)?;
    let q = integrate_segment(z0, end, 1, &|z| Ok(vec![eval_mu(g1, z)?]))?;
    Ok(Quadrature {
        value: q.value[0],
        error: q.error,
    })
}

/// Components of ∫_{z₀}^{γz₀} (zT₁+T₂)¹⁰ Δ(z) dz; entry k multiplies T₁ᵏT₂^{10-k}.
pub fn tgv_delta_numeric(g: &Mat2Q, z0: Complex64, nterms: usize) -> Result<Quadrature<Vec<Complex64>>> {
    tgv_delta_between(z0, mobius(&to_f64_mat(g), z0), nterms)
}

/// ∫_a^b (zT₁+T₂)¹⁰ Δ(z) dz by components.
pub fn tgv_delta_between(a: Complex64, b: Complex64, nterms: usize) -> Result<Quadrature<Vec<Complex64>>> {
    check_path(a, b)?;
    let binom: Vec<f64> = (0..=10u32)
        .map(|k| (1..=k).fold(1.0, |acc, j| acc * (10 - k + j) as f64 / j as f64))
        .collect();
    integrate_segment(a, b, 11, &|z| {
        let d = eval_delta(z, nterms)?;
        let mut zk = Complex64::new(1.0, 0.0);
        let mut out = Vec::with_capacity(11);
        for c in &binom {
            out.push(zk * d * *c);
            zk *= z;
        }
        Ok(out)
    })
}

/// γ·P for P ∈ W₁₀(C) and γ ∈ SL(2,Z).
pub fn act_w10(g: &Mat2Q, v: &[Complex64]) -> Vec<Complex64> {
    let gm = to_f64_mat(g).map(|e| Complex64::new(*e, 0.0));
    HomPoly::from_coeffs(v.to_vec()).substitute(&gm).coeffs().to_vec()
}

fn log_branch(w: Complex64) -> Complex64 {
    let mut l = w.ln();
    if l.im >= PI {
        l.im -= 2.0 * PI;
    }
    l
}

/// (1/2πi)(log j(g₂,z) + log j(g₁,g₂z) - log j(g₁g₂,z)), Im log ∈ [-π, π).
pub fn asai_e_numeric(g1: &Mat2Q, g2: &Mat2Q, z: Complex64) -> Result<Complex64> {
    if z.im <= 0.0 {
        return Err(Error::Guard(format!("asai needs Im z > 0, got {z}")));
    }
    let (f1, f2) = (to_f64_mat(g1), to_f64_mat(g2));
    let f12 = to_f64_mat(&(g1 * g2));
    let j = |g: &Mat2<f64>, w: Complex64| w * g.c + g.d;
    let total = log_branch(j(&f2, z)) + log_branch(j(&f1, mobius(&f2, z))) - log_branch(j(&f12, z));
    Ok(total / (2.0 * PI * i()))
}
