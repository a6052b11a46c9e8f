//! Higher-weight Eisenstein cocycles Φ⁽ᵐ⁾ₓ with values in W_{m-2}.
//!
//! Bernoulli functions here use the odd sawtooth B₁(integer) = 0; with the
//! floor value -1/2 the closed forms stop satisfying the cocycle relation.

use num_integer::{binomial, Integer};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, int, pb_sym_rat, rat, rat_int, Int, Rat, SqrtSum};
use crate::gl2::{
    bruhat_factor, bruhat_factor_torus, pipe_action_sum, primitive_rep, sigma0, Bruhat, Mat2,
    Mat2Q, Mat2Z, TorsionPoint, TorsionSum,
};
use crate::poly::{gl_act, integrate_linear_power, integrate_linear_power4, HomPoly, HomPoly4};

/// Value of a weight-m cocycle: a form of degree m-2, or of bidegree (n-1, n-1).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EisCocycleValue<P = HomPoly<SqrtSum>> {
    pub weight: usize,
    pub value: P,
}

pub type EisSymValue = EisCocycleValue<HomPoly4<SqrtSum>>;

impl EisCocycleValue {
    fn from_rat(weight: usize, p: HomPoly<Rat>) -> Self {
        EisCocycleValue {
            weight,
            value: p.to_sqrt(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl EisSymValue {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

/// Which Bruhat representative the chain uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruhatConvention {
    /// β₁ = [[1, a/c], [0, 1]], β₂ = [[c, d], [0, det/c]].
    Standard,
    /// The standard pair moved by diag(s, t) through σ₀.
    Torus(Rat, Rat),
}

fn check_weight(m: usize, xs: &TorsionSum) -> Result<()> {
    if m < 2 {
        return Err(Error::BadWeight { min: 2, got: m });
    }
    if m == 2 && xs.iter().any(|(x, _)| x.is_zero()) {
        return Err(Error::WeightTwoOrigin);
    }
    Ok(())
}

fn t1() -> HomPoly<Rat> {
    HomPoly::linear(Rat::one(), Rat::zero())
}

fn t2() -> HomPoly<Rat> {
    HomPoly::linear(Rat::zero(), Rat::one())
}

fn binom(n: usize, k: usize) -> Rat {
    rat_int(binomial(int(n as i64), int(k as i64)))
}

fn alt(k: usize) -> Rat {
    if k % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// a₀(φ⁽ᵐ⁾ₓ) = -B_m(x₁)/m.
pub fn a0_phi(m: usize, x: &TorsionPoint) -> Result<Rat> {
    check_weight(m, &TorsionSum::point(x.clone()))?;
    Ok(-pb_sym_rat(m, &x.x1) / rat(m as i64, 1))
}

fn borel_rat(m: usize, xs: &TorsionSum, b: &Mat2Q) -> HomPoly<Rat> {
    let mut bsum = Rat::zero();
    for (x, mu) in xs.iter() {
        bsum += pb_sym_rat(m, &x.x1) * rat(*mu, 1);
    }
    if bsum.is_zero() || b.b.is_zero() {
        return HomPoly::zero(m - 2);
    }
    integrate_linear_power(&t1(), &t2(), m - 2, &Rat::zero(), &(&b.b / &b.d))
        .scale(&(-bsum / rat(m as i64, 1)))
}

fn require_upper(b: &Mat2Q) -> Result<()> {
    if !b.c.is_zero() {
        return Err(Error::NotUpperTriangular);
    }
    if !b.det().is_positive() {
        return Err(Error::NonPositiveDet(fmt_rat(&b.det())));
    }
    Ok(())
}

/// Φ⁽ᵐ⁾ₓ(β) = -(B_m(x₁)/m) ∫₀^{b/d} (tT₁+T₂)^{m-2} dt.
pub fn phi_on_borel(m: usize, x: &TorsionPoint, b: &Mat2Q) -> Result<EisCocycleValue> {
    let xs = TorsionSum::point(x.clone());
    check_weight(m, &xs)?;
    require_upper(b)?;
    Ok(EisCocycleValue::from_rat(m, borel_rat(m, &xs, b)))
}

/// Σ_x μ Σ_k (-1)^k C(m-2,k) B_{m-k-1}(x₁)/(m-k-1) · B_{k+1}(x₂)/(k+1) · T₁ᵏT₂^{m-2-k}.
fn sigma0_rat(m: usize, xs: &TorsionSum) -> HomPoly<Rat> {
    let n = m - 2;
    let mut sums = vec![Rat::zero(); n + 1];
    let mut b1 = vec![Rat::zero(); m];
    let mut b2 = vec![Rat::zero(); m];
    for (x, mu) in xs.iter() {
        for j in 1..m {
            b1[j] = pb_sym_rat(j, &x.x1);
            b2[j] = pb_sym_rat(j, &x.x2);
        }
        let mu = rat(*mu, 1);
        for (k, s) in sums.iter_mut().enumerate() {
            let v = &b1[m - k - 1] * &b2[k + 1];
            if !v.is_zero() {
                *s += v * &mu;
            }
        }
    }
    let coeffs = sums
        .into_iter()
        .enumerate()
        .map(|(k, s)| s * alt(k) * binom(n, k) / rat(((m - k - 1) * (k + 1)) as i64, 1))
        .collect();
    HomPoly::from_coeffs(coeffs)
}

/// Φ⁽ᵐ⁾ₓ(σ₀).
pub fn phi_at_sigma0(m: usize, x: &TorsionPoint) -> Result<EisCocycleValue> {
    let xs = TorsionSum::point(x.clone());
    check_weight(m, &xs)?;
    Ok(EisCocycleValue::from_rat(m, sigma0_rat(m, &xs)))
}

fn require_sl2z_cpos(s: &Mat2Q) -> Result<Mat2Z> {
    let z = s.to_int()?;
    if !z.det().is_one() {
        return Err(Error::DetNotOne(z.det().to_string()));
    }
    if !z.c.is_positive() {
        return Err(Error::NonPositiveC);
    }
    Ok(z)
}

fn grd_sym(p: usize, q: usize, x: &TorsionPoint, a: &Int, c: &Int) -> Rat {
    crate::dedekind::grd_sum_sym(p, q, x, a, c).expect("coprime by unimodularity")
}

fn closed_rat(m: usize, x: &TorsionPoint, s: &Mat2Z) -> HomPoly<Rat> {
    let n = m - 2;
    let (a, b, c, d) = (
        rat_int(s.a.clone()),
        rat_int(s.b.clone()),
        rat_int(s.c.clone()),
        rat_int(s.d.clone()),
    );
    let mr = rat(m as i64, 1);
    let first = integrate_linear_power(&t1(), &t2(), n, &Rat::zero(), &(&a / &c))
        .scale(&(-pb_sym_rat(m, &x.x1) / &mr));
    let la = HomPoly::linear(a.clone(), c.clone());
    let lb = HomPoly::linear(b, d.clone());
    let second = integrate_linear_power(&la, &lb, n, &(-&d / &c), &Rat::zero())
        .scale(&(-pb_sym_rat(m, &(&a * &x.x1 + &c * &x.x2)) / &mr));
    let mut third = HomPoly::zero(n);
    for k in 0..=n {
        let coef = alt(k) * binom(n, k) * grd_sym(m - k - 1, k + 1, x, &s.a, &s.c);
        if coef.is_zero() {
            continue;
        }
        let term = t1().pow(k).mul(&la.pow(n - k));
        third = third.add(&term.scale(&coef));
    }
    first.add(&second).add(&third)
}

/// Closed form on SL(2,Z) with c > 0.
pub fn phi_closed(m: usize, x: &TorsionPoint, s: &Mat2Q) -> Result<EisCocycleValue> {
    check_weight(m, &TorsionSum::point(x.clone()))?;
    let z = require_sl2z_cpos(s)?;
    Ok(EisCocycleValue::from_rat(m, closed_rat(m, x, &z)))
}

fn twist_matrix(g: &Mat2Q) -> Result<Mat2Q> {
    Ok(primitive_rep(g)?.map(|e| rat_int(e.clone())))
}

fn factor(g: &Mat2Q, conv: &BruhatConvention) -> Result<Bruhat> {
    match conv {
        BruhatConvention::Standard => bruhat_factor(g),
        BruhatConvention::Torus(s, t) => bruhat_factor_torus(g, s, t),
    }
}

/// Generic Bruhat chain: Borel piece, σ₀ piece and the twist by primitive representatives.
fn chain_generic<P: Clone>(
    xs: &TorsionSum,
    g: &Mat2Q,
    conv: &BruhatConvention,
    borel: &dyn Fn(&TorsionSum, &Mat2Q) -> P,
    at_sigma0: &dyn Fn(&TorsionSum) -> P,
    add: &dyn Fn(&P, &P) -> P,
    twist: &dyn Fn(&P, &Mat2Q) -> P,
) -> Result<P> {
    match factor(g, conv)? {
        Bruhat::Borel(b) => Ok(borel(xs, &b)),
        Bruhat::Big { beta1, beta2 } => {
            let s0 = sigma0();
            let head = borel(xs, &beta1);
            let ys = pipe_action_sum(xs, &beta1)?;
            let zs = pipe_action_sum(&ys, &s0)?;
            let tail = twist(&borel(&zs, &beta2), &twist_matrix(&s0)?);
            let inner = add(&at_sigma0(&ys), &tail);
            Ok(add(&head, &twist(&inner, &twist_matrix(&beta1)?)))
        }
    }
}

fn chain_rat(m: usize, xs: &TorsionSum, g: &Mat2Q, conv: &BruhatConvention) -> Result<HomPoly<Rat>> {
    chain_generic(
        xs,
        g,
        conv,
        &|xs, b| borel_rat(m, xs, b),
        &|ys| sigma0_rat(m, ys),
        &|p, q| p.add(q),
        &|p, a| p.substitute(a),
    )
}

/// Φ⁽ᵐ⁾ extended linearly over formal sums and to GL⁺(2,Q) through the Bruhat chain.
pub fn phi_chain(m: usize, xs: &TorsionSum, g: &Mat2Q) -> Result<EisCocycleValue> {
    phi_chain_with(m, xs, g, &BruhatConvention::Standard)
}

pub fn phi_chain_with(
    m: usize,
    xs: &TorsionSum,
    g: &Mat2Q,
    conv: &BruhatConvention,
) -> Result<EisCocycleValue> {
    check_weight(m, xs)?;
    Ok(EisCocycleValue::from_rat(m, chain_rat(m, xs, g, conv)?))
}

/// Weighted torsion action x|_m α = det(α_p)^{(m-2)/2} Σ_{y·α̌_p = x} y, as (points, scalar).
pub fn weighted_pipe(m: usize, xs: &TorsionSum, a: &Mat2Q) -> Result<(TorsionSum, SqrtSum)> {
    let det = rat_int(primitive_rep(a)?.det());
    Ok((
        pipe_action_sum(xs, a)?,
        SqrtSum::pow_half(&det, m as i64 - 2)?,
    ))
}

/// Φₓ(αβ) - Φₓ(α) - α_p·Φ_{x|α}(β), with α_p the primitive representative and the weight-m torsion action.
pub fn cocycle_defect(m: usize, x: &TorsionPoint, a: &Mat2Q, b: &Mat2Q) -> Result<EisCocycleValue> {
    let xs = TorsionSum::point(x.clone());
    check_weight(m, &xs)?;
    let ab = a * b;
    let whole = phi_chain(m, &xs, &ab)?.value;
    let head = phi_chain(m, &xs, a)?.value;
    let (ys, w) = weighted_pipe(m, &xs, a)?;
    let tail = phi_chain(m, &ys, b)?.value.scale(&w);
    let ap = primitive_rep(a)?.map(|e| rat_int(e.clone()));
    let value = whole.sub(&head).sub(&gl_act(&ap, &tail)?);
    Ok(EisCocycleValue { weight: m, value })
}

/// Φₓ(γ) - n^{m-2} Σ_{ny ≡ x} Φ_y(γ).
pub fn distribution_defect(m: usize, x: &TorsionPoint, g: &Mat2Q, n: u32) -> Result<EisCocycleValue> {
    let xs = TorsionSum::point(x.clone());
    check_weight(m, &xs)?;
    let nr = rat(n as i64, 1);
    let mut ys = TorsionSum::new();
    for j in 0..n {
        for k in 0..n {
            ys.add(
                TorsionPoint::new(
                    (&x.x1 + rat(j as i64, 1)) / &nr,
                    (&x.x2 + rat(k as i64, 1)) / &nr,
                ),
                1,
            );
        }
    }
    let lhs = chain_rat(m, &xs, g, &BruhatConvention::Standard)?;
    let rhs = chain_rat(m, &ys, g, &BruhatConvention::Standard)?
        .scale(&num_traits::Pow::pow(&nr, (m - 2) as u32));
    Ok(EisCocycleValue::from_rat(m, lhs.sub(&rhs)))
}

fn check_sym(n: usize, xs: &TorsionSum) -> Result<usize> {
    if n < 1 {
        return Err(Error::BadWeight { min: 1, got: n });
    }
    check_weight(2 * n, xs)?;
    Ok(2 * n)
}

fn sym_borel(n: usize, xs: &TorsionSum, b: &Mat2Q) -> HomPoly4<Rat> {
    let m = 2 * n;
    let mut bsum = Rat::zero();
    for (x, mu) in xs.iter() {
        bsum += pb_sym_rat(m, &x.x1) * rat(*mu, 1);
    }
    if bsum.is_zero() || b.b.is_zero() {
        return HomPoly4::zero(n - 1);
    }
    integrate_linear_power4(&t1(), &t2(), n - 1, &Rat::zero(), &(&b.b / &b.d))
        .scale(&(-bsum / rat(m as i64, 1)))
}

fn sym_closed_rat(n: usize, x: &TorsionPoint, s: &Mat2Z) -> HomPoly4<Rat> {
    let m = 2 * n;
    let (a, b, c, d) = (
        rat_int(s.a.clone()),
        rat_int(s.b.clone()),
        rat_int(s.c.clone()),
        rat_int(s.d.clone()),
    );
    let mr = rat(m as i64, 1);
    let first = integrate_linear_power4(&t1(), &t2(), n - 1, &Rat::zero(), &(&a / &c))
        .scale(&(-pb_sym_rat(m, &x.x1) / &mr));
    let la = HomPoly::linear(a.clone(), c.clone());
    let lb = HomPoly::linear(b, d.clone());
    let second = integrate_linear_power4(&la, &lb, n - 1, &(-&d / &c), &Rat::zero())
        .scale(&(-pb_sym_rat(m, &(&a * &x.x1 + &c * &x.x2)) / &mr));
    let mut third = HomPoly4::zero(n - 1);
    let parts: Vec<HomPoly<Rat>> = (0..n)
        .map(|k| t1().pow(k).mul(&la.pow(n - k - 1)))
        .collect();
    for k in 0..n {
        for l in 0..n {
            let coef = alt(k + l)
                * binom(n - 1, k)
                * binom(n - 1, l)
                * grd_sym(m - k - l - 1, k + l + 1, x, &s.a, &s.c);
            if coef.is_zero() {
                continue;
            }
            third = third.add(&HomPoly4::tensor(&parts[k], &parts[l]).scale(&coef));
        }
    }
    first.add(&second).add(&third)
}

fn sym_sigma0(n: usize, ys: &TorsionSum) -> HomPoly4<Rat> {
    let s0 = Mat2::new(Int::zero(), -Int::one(), Int::one(), Int::zero());
    let mut out = HomPoly4::zero(n - 1);
    for (y, mu) in ys.iter() {
        out = out.add(&sym_closed_rat(n, y, &s0).scale(&rat(*mu, 1)));
    }
    out
}

fn sym_chain_rat(n: usize, xs: &TorsionSum, g: &Mat2Q, conv: &BruhatConvention) -> Result<HomPoly4<Rat>> {
    chain_generic(
        xs,
        g,
        conv,
        &|xs, b| sym_borel(n, xs, b),
        &|ys| sym_sigma0(n, ys),
        &|p, q| p.add(q),
        &|p, a| p.substitute(a),
    )
}

/// Symmetric-tensor closed form on SL(2,Z) with c > 0, weight m = 2n.
pub fn phi_sym_closed(n: usize, x: &TorsionPoint, s: &Mat2Q) -> Result<EisSymValue> {
    let m = check_sym(n, &TorsionSum::point(x.clone()))?;
    let z = require_sl2z_cpos(s)?;
    Ok(EisCocycleValue {
        weight: m,
        value: sym_closed_rat(n, x, &z).to_sqrt(),
    })
}

/// Symmetric-tensor variant through the Bruhat chain.
pub fn phi_sym_chain(n: usize, xs: &TorsionSum, g: &Mat2Q) -> Result<EisSymValue> {
    let m = check_sym(n, xs)?;
    Ok(EisCocycleValue {
        weight: m,
        value: sym_chain_rat(n, xs, g, &BruhatConvention::Standard)?.to_sqrt(),
    })
}

/// Symmetric-tensor variant: closed form when γ ∈ SL(2,Z) has c > 0, chain otherwise.
pub fn phi_sym(n: usize, x: &TorsionPoint, g: &Mat2Q) -> Result<EisSymValue> {
    if g.is_integral() && g.det().is_one() && g.c.is_positive() {
        phi_sym_closed(n, x, g)
    } else {
        phi_sym_chain(n, &TorsionSum::point(x.clone()), g)
    }
}

/// Φ for a single point: closed form when available, chain otherwise.
pub fn phi(m: usize, x: &TorsionPoint, g: &Mat2Q) -> Result<EisCocycleValue> {
    if g.is_integral() && g.det().is_one() && g.c.is_positive() {
        phi_closed(m, x, g)
    } else {
        phi_chain(m, &TorsionSum::point(x.clone()), g)
    }
}

/// Γ(N) membership for integral unimodular matrices.
pub fn in_gamma(n: i64, g: &Mat2Q) -> bool {
    let Ok(z) = g.to_int() else { return false };
    let n = Int::from(n);
    z.det().is_one()
        && (&z.a - Int::one()).is_multiple_of(&n)
        && z.b.is_multiple_of(&n)
        && z.c.is_multiple_of(&n)
        && (&z.d - Int::one()).is_multiple_of(&n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: i64, b: i64, c: i64, d: i64) -> TorsionPoint {
        TorsionPoint::new(rat(a, b), rat(c, d))
    }

    fn scalar(v: &EisCocycleValue) -> Rat {
        assert_eq!(v.value.degree(), 0);
        v.value.coeff(0).rational_part()
    }

    #[test]
    fn a0_examples() {
        assert_eq!(a0_phi(2, &pt(1, 2, 0, 1)).unwrap(), rat(1, 24));
        assert_eq!(a0_phi(4, &pt(0, 1, 0, 1)).unwrap(), rat(1, 120));
        assert_eq!(a0_phi(3, &pt(1, 3, 2, 7)).unwrap(), rat(-1, 81));
        assert_eq!(a0_phi(2, &TorsionPoint::zero()), Err(Error::WeightTwoOrigin));
    }

    #[test]
    fn borel_examples() {
        let t = Mat2Q::from_i64(1, 1, 0, 1);
        assert!(phi_on_borel(3, &pt(1, 3, 0, 1), &Mat2Q::identity()).unwrap().is_zero());
        assert_eq!(scalar(&phi_on_borel(2, &pt(1, 2, 0, 1), &t).unwrap()), rat(1, 24));
        let v = phi_on_borel(4, &pt(0, 1, 1, 2), &t).unwrap().value.rational_part();
        let want = HomPoly::from_coeffs(vec![rat(1, 120), rat(1, 120), rat(1, 360)]);
        assert_eq!(v, want);
    }

    #[test]
    fn sigma0_examples() {
        assert!(phi_at_sigma0(2, &pt(1, 2, 0, 1)).unwrap().is_zero());
        assert_eq!(scalar(&phi_at_sigma0(2, &pt(1, 3, 1, 3)).unwrap()), rat(1, 36));
        for m in [2, 3, 4, 6] {
            let x = pt(1, 5, 2, 3);
            assert_eq!(phi_at_sigma0(m, &x).unwrap(), phi_closed(m, &x, &sigma0()).unwrap());
        }
    }

    #[test]
    fn closed_hand_value() {
        // -1/36 from the GRD term, +1/36 from each integral
        let v = phi_closed(2, &pt(1, 3, 1, 3), &Mat2Q::from_i64(1, 0, 1, 1)).unwrap();
        assert_eq!(scalar(&v), rat(1, 36));
    }

    #[test]
    fn chain_matches_closed() {
        let x = pt(1, 4, 2, 3);
        for m in [2, 3, 4, 5] {
            for (a, b, c, d) in [(1, -1, 1, 0), (2, 1, 3, 2), (-3, 1, 5, -2), (0, -1, 1, 4)] {
                let s = Mat2Q::from_i64(a, b, c, d);
                assert_eq!(
                    phi_chain(m, &TorsionSum::point(x.clone()), &s).unwrap(),
                    phi_closed(m, &x, &s).unwrap(),
                    "m={m} s={s}"
                );
            }
        }
    }

    #[test]
    fn identity_and_origin() {
        let x = pt(1, 3, 0, 1);
        assert!(phi_chain(4, &TorsionSum::point(x), &Mat2Q::identity()).unwrap().is_zero());
        let err = phi_chain(2, &TorsionSum::point(TorsionPoint::zero()), &sigma0());
        assert_eq!(err, Err(Error::WeightTwoOrigin));
    }

    #[test]
    fn sym_weight_two_is_scalar_case() {
        let x = pt(2, 5, 1, 3);
        let s = Mat2Q::from_i64(3, 1, 5, 2);
        let a = phi_sym(1, &x, &s).unwrap().value;
        let b = phi_closed(2, &x, &s).unwrap().value;
        assert_eq!(a.coeff(0, 0), b.coeff(0));
    }
}
