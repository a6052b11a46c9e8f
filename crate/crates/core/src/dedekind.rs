//! Classical Dedekind sums and generalized Rademacher-Dedekind sums.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{pb_rat, pb_sym_rat, rat, rat_int, Int, Rat};
use crate::gl2::TorsionPoint;

fn check_args(m: &Int, n: &Int) -> Result<()> {
    if !n.is_positive() {
        return Err(Error::NonPositiveModulus(n.to_string()));
    }
    if !m.gcd(n).is_one() {
        return Err(Error::NotCoprime(m.to_string(), n.to_string()));
    }
    Ok(())
}

/// s(m/n) = Σ_{j=1}^{n-1} B₁(j/n) B₁(mj/n), summed term by term.
pub fn dedekind_sum(m: &Int, n: &Int) -> Result<Rat> {
    check_args(m, n)?;
    if let (Some(mi), Some(ni)) = (m.to_i64(), n.to_i64()) {
        if ni < 1 << 40 {
            return Ok(naive_small(mi.rem_euclid(ni), ni));
        }
    }
    let nr = rat_int(n.clone());
    let mr = rat_int(m.clone());
    let mut acc = Rat::zero();
    let mut j = Int::one();
    while &j < n {
        let x = rat_int(j.clone()) / &nr;
        acc += pb_rat(1, &x) * pb_rat(1, &(&mr * &x));
        j += 1;
    }
    Ok(acc)
}

// 4n²·s(m/n) = Σ (2j - n)(2(mj mod n) - n), exact in i128 for n < 2⁴⁰
fn naive_small(m: i64, n: i64) -> Rat {
    let (m, n) = (m as i128, n as i128);
    let mut acc: i128 = 0;
    let mut r: i128 = 0;
    for j in 1..n {
        r += m;
        if r >= n {
            r -= n;
        }
        acc += (2 * j - n) * (2 * r - n);
    }
    Rat::new(Int::from(acc), Int::from(4 * n * n))
}

/// s(m/n) from the continued fraction m/n = [0; a₁, …, a_t]:
/// 12s = (m + m̄)/n + Σ(-1)^{i+1}aᵢ - 2 - (-1)^{t+1}, with m·m̄ ≡ 1 (mod n).
pub fn dedekind_sum_cf(m: &Int, n: &Int) -> Result<Rat> {
    check_args(m, n)?;
    if n.is_one() {
        return Ok(Rat::zero());
    }
    let h = m.mod_floor(n);
    let inv = {
        let e = h.extended_gcd(n);
        e.x.mod_floor(n)
    };
    let (mut p, mut q) = (n.clone(), h.clone());
    let mut alt = Int::zero();
    let mut t = 0usize;
    while !q.is_zero() {
        let (a, r) = p.div_mod_floor(&q);
        if t % 2 == 0 {
            alt += a;
        } else {
            alt -= a;
        }
        t += 1;
        p = q;
        q = r;
    }
    let tail = if t % 2 == 1 { 3 } else { 1 };
    let twelve_s = Rat::new(h + inv, n.clone()) + rat_int(alt) - rat(tail, 1);
    Ok(twelve_s / rat(12, 1))
}

/// Same value via reciprocity and the Euclidean algorithm.
pub fn dedekind_sum_fast(m: &Int, n: &Int) -> Result<Rat> {
    check_args(m, n)?;
    Ok(dedekind_unchecked(m, n))
}

pub(crate) fn dedekind_unchecked(m: &Int, n: &Int) -> Rat {
    // s(h,k) = (h² + k² + 1)/(12hk) - 1/4 - s(k mod h, h)
    let mut h = m.mod_floor(n);
    let mut k = n.clone();
    let mut num = Int::zero();
    let mut den = Int::one();
    let mut quarters: i64 = 0;
    let mut positive = true;
    while !h.is_zero() {
        let tn = &h * &h + &k * &k + 1u32;
        let td = Int::from(12) * &h * &k;
        // num/den ± tn/td without reducing at every step
        let g = den.gcd(&td);
        let (a, b) = (&td / &g, &den / &g);
        num = if positive { num * &a + tn * b } else { num * &a - tn * b };
        den *= a;
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        quarters += if positive { -1 } else { 1 };
        let r = k.mod_floor(&h);
        k = h;
        h = r;
        positive = !positive;
    }
    Rat::new(num, den) + rat(quarters, 4)
}

pub fn dedekind_i64(m: i64, n: i64) -> Result<Rat> {
    dedekind_sum_fast(&Int::from(m), &Int::from(n))
}

fn grd_with(
    p: usize,
    q: usize,
    x: &TorsionPoint,
    a: &Int,
    c: &Int,
    pb: fn(usize, &Rat) -> Rat,
) -> Result<Rat> {
    if p == 0 || q == 0 {
        return Err(Error::BadWeight { min: 1, got: 0 });
    }
    check_args(a, c)?;
    let cr = rat_int(c.clone());
    let ar = rat_int(a.clone());
    let mut acc = Rat::zero();
    let mut r = Int::zero();
    while &r < c {
        let t = (&x.x1 + rat_int(r.clone())) / &cr;
        let second = &x.x2 + &ar * &t;
        acc += pb(p, &t) * pb(q, &second);
        r += 1;
    }
    Ok(acc / rat((p * q) as i64, 1))
}

/// S^{(p,q)}_x(a/c) = Σ_{r<c} B_p((x₁+r)/c)/p · B_q(x₂ + a(x₁+r)/c)/q, with B₁(0) = -1/2.
pub fn grd_sum(p: usize, q: usize, x: &TorsionPoint, a: &Int, c: &Int) -> Result<Rat> {
    grd_with(p, q, x, a, c, pb_rat)
}

/// As `grd_sum` but with the odd sawtooth B₁(0) = 0.
pub fn grd_sum_sym(p: usize, q: usize, x: &TorsionPoint, a: &Int, c: &Int) -> Result<Rat> {
    grd_with(p, q, x, a, c, pb_sym_rat)
}
