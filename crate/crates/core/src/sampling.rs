//! Seeded generators for matrices and torsion points.
//!
//! Every sample index gets its own ChaCha stream, so results do not depend
//! on how samples are split across threads.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::{int, rat, Int, Rat};
use crate::gl2::{Mat2, Mat2Q, TorsionPoint};

pub type CaseRng = ChaCha8Rng;

/// Generator for sample `index` of a run seeded with `seed`.
pub fn case_rng(seed: u64, index: u64) -> CaseRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// p/q with |p| ≤ h and 1 ≤ q ≤ h.
pub fn rational(rng: &mut CaseRng, h: i64) -> Rat {
    let h = h.max(1);
    rat(rng.gen_range(-h..=h), rng.gen_range(1..=h))
}

pub fn positive_rational(rng: &mut CaseRng, h: i64) -> Rat {
    let h = h.max(1);
    rat(rng.gen_range(1..=h), rng.gen_range(1..=h))
}

fn upper(t: Rat) -> Mat2Q {
    Mat2::new(Rat::one(), t, Rat::zero(), Rat::one())
}

fn lower(t: Rat) -> Mat2Q {
    Mat2::new(Rat::one(), Rat::zero(), t, Rat::one())
}

fn torus(u: Rat) -> Mat2Q {
    let inv = u.recip();
    Mat2::new(u, Rat::zero(), Rat::zero(), inv)
}

/// Product of 1..=len elementary factors of height ≤ h, times -I half of the time.
pub fn sl2q_word(rng: &mut CaseRng, h: i64, len: usize) -> Mat2Q {
    let n = rng.gen_range(1..=len.max(1));
    let mut g = Mat2Q::identity();
    for _ in 0..n {
        let f = match rng.gen_range(0..3) {
            0 => upper(rational(rng, h)),
            1 => lower(rational(rng, h)),
            _ => torus(positive_rational(rng, h)),
        };
        g = &g * &f;
    }
    if rng.gen_bool(0.5) {
        g.neg()
    } else {
        g
    }
}

/// Uniform-ish element of SL(2,Z) with all entries bounded by `bound`.
pub fn sl2z(rng: &mut CaseRng, bound: i64) -> Mat2Q {
    let bound = bound.max(1);
    loop {
        let a = int(rng.gen_range(-bound..=bound));
        let c = int(rng.gen_range(-bound..=bound));
        let e = a.extended_gcd(&c);
        if !e.gcd.abs().is_one() {
            continue;
        }
        // a·d0 - b0·c = 1
        let s = e.gcd.signum();
        let (d0, b0) = (&e.x * &s, -(&e.y * &s));
        // the solution set is (b0 + ka, d0 + kc)
        let k = if c.is_zero() {
            int(rng.gen_range(-bound..=bound))
        } else {
            Rat::new(-&d0, c.clone()).round().to_integer() + int(rng.gen_range(-1..=1))
        };
        let (b, d) = (b0 + &k * &a, d0 + &k * &c);
        let lim = int(bound);
        if b.abs() <= lim && d.abs() <= lim {
            return int_mat(a, b, c, d);
        }
    }
}

/// Element of SL(2,Z) with c > 0 and entries bounded by `bound`.
pub fn sl2z_cpos(rng: &mut CaseRng, bound: i64) -> Mat2Q {
    loop {
        let g = sl2z(rng, bound);
        if g.c.is_positive() {
            return g;
        }
        if g.c.is_negative() {
            return g.neg();
        }
    }
}

fn int_mat(a: Int, b: Int, c: Int, d: Int) -> Mat2Q {
    Mat2::new(a, b, c, d).map(|e| Rat::from_integer(e.clone()))
}

/// Rational matrix with entries of height ≤ h and positive determinant.
pub fn gl_plus(rng: &mut CaseRng, h: i64) -> Mat2Q {
    loop {
        let g = Mat2::new(
            rational(rng, h),
            rational(rng, h),
            rational(rng, h),
            rational(rng, h),
        );
        let det = g.det();
        if det.is_positive() {
            return g;
        }
        if det.is_negative() {
            return Mat2::new(g.b, g.a, g.d, g.c);
        }
    }
}

/// Integral matrix with entries in [-h, h] and positive determinant.
pub fn gl_plus_int(rng: &mut CaseRng, h: i64) -> Mat2Q {
    loop {
        let e = |rng: &mut CaseRng| int(rng.gen_range(-h..=h));
        let g = int_mat(e(rng), e(rng), e(rng), e(rng));
        if g.det().is_positive() {
            return g;
        }
    }
}

/// [[u, b], [0, 1/u]] with u > 0.
pub fn b1_plus(rng: &mut CaseRng, h: i64) -> Mat2Q {
    let u = positive_rational(rng, h);
    let b = rational(rng, h);
    let inv = u.recip();
    Mat2::new(u, b, Rat::zero(), inv)
}

/// Point of (Q/Z)² whose coordinates have denominators ≤ `max_den`.
pub fn torsion_point(rng: &mut CaseRng, max_den: i64) -> TorsionPoint {
    let coord = |rng: &mut CaseRng| {
        let q = rng.gen_range(1..=max_den.max(1));
        rat(rng.gen_range(0..q), q)
    };
    let x1 = coord(rng);
    let x2 = coord(rng);
    TorsionPoint::new(x1, x2)
}

/// Point of ((1/n)Z/Z)².
pub fn torsion_point_level(rng: &mut CaseRng, n: i64) -> TorsionPoint {
    TorsionPoint::new(rat(rng.gen_range(0..n), n), rat(rng.gen_range(0..n), n))
}

/// Element of Γ(n): a product of conjugates of Tⁿ and its transpose.
pub fn gamma_n(rng: &mut CaseRng, n: i64, factors: usize, conj_bound: i64) -> Mat2Q {
    let mut g = Mat2Q::identity();
    for _ in 0..rng.gen_range(1..=factors.max(1)) {
        let k = if rng.gen_bool(0.5) { n } else { -n };
        let u = if rng.gen_bool(0.5) {
            Mat2Q::from_i64(1, k, 0, 1)
        } else {
            Mat2Q::from_i64(1, 0, k, 1)
        };
        let s = sl2z(rng, conj_bound);
        g = &g * &(&(&s * &u) * &s.adj());
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::in_gamma;

    #[test]
    fn streams_are_reproducible() {
        let a = sl2q_word(&mut case_rng(3, 17), 20, 8);
        let b = sl2q_word(&mut case_rng(3, 17), 20, 8);
        assert_eq!(a, b);
        assert!(a.det().is_one());
    }

    #[test]
    fn generators_respect_constraints() {
        for i in 0..200 {
            let rng = &mut case_rng(1, i);
            let s = sl2z(rng, 50);
            assert!(s.det().is_one() && s.is_integral());
            assert!([&s.a, &s.b, &s.c, &s.d].iter().all(|e| e.abs() <= rat(50, 1)));
            assert!(sl2z_cpos(rng, 20).c.is_positive());
            assert!(gl_plus(rng, 5).det().is_positive());
            let b = b1_plus(rng, 5);
            assert!(b.c.is_zero() && (&b.a * &b.d).is_one());
            let n = 2 + (i as i64 % 4);
            let g = gamma_n(rng, n, 2, 2);
            assert!(in_gamma(n, &g), "{n} {g}");
        }
    }
}
