//! Petersson-Asai cocycle, rational Godbillon-Vey cocycle and transgression.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dedekind::dedekind_unchecked;
use crate::error::{Error, Result};
use crate::exact::{fmt_rat, pb_rat, rat, rat_int, Int, Rat};
use crate::gl2::{fiber, primitive_rep, row_hermite, Mat2, Mat2Q, Mat2Z, TorsionPoint};
use crate::rademacher::rademacher_phi_tilde;

fn require_sl2q(g: &Mat2Q) -> Result<()> {
    let det = g.det();
    if !det.is_one() {
        return Err(Error::DetNotOne(fmt_rat(&det)));
    }
    Ok(())
}

fn x_of(g: &Mat2Q) -> &Rat {
    if g.c.is_zero() {
        &g.d
    } else {
        &g.c
    }
}

fn hilbert(x1: &Rat, x2: &Rat) -> i32 {
    i32::from(x1.is_negative() && x2.is_negative())
}

/// e(g₁,g₂) = -(x(g₁)|x(g₂)) + (-x(g₁)x(g₂) | x(g₁g₂)).
pub fn asai_e(g1: &Mat2Q, g2: &Mat2Q) -> Result<i32> {
    require_sl2q(g1)?;
    require_sl2q(g2)?;
    let g3 = g1 * g2;
    let (x1, x2, x3) = (x_of(g1), x_of(g2), x_of(&g3));
    Ok(-hilbert(x1, x2) + hilbert(&-(x1 * x2), x3))
}

/// Σ_{y ∈ K(M)} B₂(y₁) where K(M) = {y ∈ (Q/Z)² : y·M ∈ Z²}.
///
/// The first coordinates of K(M) form (1/e)Z/Z, each hit |K|/e times.
fn kernel_b2_sum(m: &Mat2Z) -> Rat {
    let det = m.det();
    let (_, _, e) = row_hermite(&m.adj());
    Rat::new(det, Int::from(6) * &e * &e)
}

/// Σ_{g ∈ K(M)} B₁(g₁)B₁(g₂) - B₁(0)², reduced to a classical Dedekind sum.
fn kernel_b1b1_sum(m: &Mat2Z) -> Rat {
    let (_, q, r) = row_hermite(&m.adj());
    let g = q.gcd(&r);
    dedekind_unchecked(&(q / &g), &(r / &g))
}

/// Re G̃V(γ₁,γ₂), evaluated in closed form on primitive representatives.
pub fn re_gv_tilde(g1: &Mat2Q, g2: &Mat2Q) -> Result<Rat> {
    let p1 = primitive_rep(g1)?;
    let p2 = primitive_rep(g2)?;
    let ch1 = p1.adj();
    let s1 = kernel_b2_sum(&ch1) - rat(1, 6);
    if p2.c.is_zero() {
        return Ok(Rat::new(p2.b.clone(), p2.d.clone()) * s1);
    }
    let ch2 = p2.adj();
    let s12 = kernel_b2_sum(&(&ch2 * &ch1)) - kernel_b2_sum(&ch2);
    let g = p2.a.gcd(&p2.c);
    let (ap, cp) = (&p2.a / &g, &p2.c / &g);
    let n = Mat2::new(cp.clone(), -ap.clone(), Int::zero(), Int::one());
    let dbl = kernel_b1b1_sum(&(&n * &ch1)) - dedekind_unchecked(&ap, &cp);
    let c2 = rat_int(p2.c.clone());
    Ok(rat_int(p2.a.clone()) / &c2 * s1 + rat_int(p2.d.clone()) / &c2 * s12 - rat(2, 1) * dbl)
}

/// Re G̃V by explicit enumeration of the fibers; O(det) work.
pub fn re_gv_tilde_naive(g1: &Mat2Q, g2: &Mat2Q) -> Result<Rat> {
    let p1 = primitive_rep(g1)?;
    let p2 = primitive_rep(g2)?;
    let ch1 = p1.adj();
    let zero = TorsionPoint::zero();
    let k1: Vec<TorsionPoint> = fiber(&ch1, &zero)?
        .iter()
        .map(|(y, _)| y.clone())
        .filter(|y| !y.is_zero())
        .collect();
    let b2_sum = |pts: &mut dyn Iterator<Item = TorsionPoint>| -> Rat {
        pts.map(|y| pb_rat(2, &y.x1)).fold(Rat::zero(), |a, b| a + b)
    };
    let s1 = b2_sum(&mut k1.iter().cloned());
    if p2.c.is_zero() {
        return Ok(Rat::new(p2.b.clone(), p2.d.clone()) * s1);
    }
    let ch2 = p2.adj();
    // middle term: y ∈ K(γ̌₂γ̌₁) with y·γ̌₂ ≠ 0
    let k12 = fiber(&(&ch2 * &ch1), &zero)?;
    let s12 = b2_sum(
        &mut k12
            .iter()
            .map(|(y, _)| y.clone())
            .filter(|y| !y.times(&ch2).is_zero()),
    );
    let g = p2.a.gcd(&p2.c);
    let (ap, cp) = (rat_int(&p2.a / &g), &p2.c / &g);
    let cpr = rat_int(cp.clone());
    let mut dbl = Rat::zero();
    for y in &k1 {
        let mut j = Int::zero();
        while j < cp {
            let t = (&y.x1 + rat_int(j.clone())) / &cpr;
            dbl += pb_rat(1, &t) * pb_rat(1, &(&ap * &t + &y.x2));
            j += 1;
        }
    }
    let c2 = rat_int(p2.c.clone());
    Ok(rat_int(p2.a.clone()) / &c2 * s1 + rat_int(p2.d.clone()) / &c2 * s12 - rat(2, 1) * dbl)
}

fn require_b1plus(b: &Mat2Q) -> Result<()> {
    if !b.c.is_zero() || !b.a.is_positive() || !(&b.a * &b.d).is_one() {
        return Err(Error::NotInB1Plus);
    }
    Ok(())
}

/// Re G̃V(β₁,β₂) = (1/6)(b₂/d₂)(a₁/d₁ - 1) on B₁⁺(Q).
pub fn re_gv_borel(b1: &Mat2Q, b2: &Mat2Q) -> Result<Rat> {
    require_b1plus(b1)?;
    require_b1plus(b2)?;
    Ok(&b2.b / &b2.d * (&b1.a / &b1.d - Rat::one()) / rat(6, 1))
}

/// ½Re G̃V + e - (Φ̃(γ₁γ₂) - Φ̃(γ₁) - Φ̃(γ₂)); identically zero.
pub fn transgression_defect(g1: &Mat2Q, g2: &Mat2Q) -> Result<Rat> {
    let e = asai_e(g1, g2)?;
    let gv = re_gv_tilde(g1, g2)?;
    let cob = rademacher_phi_tilde(&(g1 * g2))? - rademacher_phi_tilde(g1)? - rademacher_phi_tilde(g2)?;
    Ok(gv / rat(2, 1) + rat(e as i64, 1) - cob)
}

/// δ(Re G̃V)(γ₁,γ₂,γ₃) with trivial coefficients.
pub fn re_gv_coboundary(g1: &Mat2Q, g2: &Mat2Q, g3: &Mat2Q) -> Result<Rat> {
    let g12 = g1 * g2;
    let g23 = g2 * g3;
    Ok(re_gv_tilde(g2, g3)? - re_gv_tilde(&g12, g3)? + re_gv_tilde(g1, &g23)?
        - re_gv_tilde(g1, g2)?)
}
