//! Rademacher's Φ on SL(2,Z) and its rational extension Φ̃ to GL⁺(2,Q).

use num_traits::{One, Signed, Zero};

use crate::dedekind::dedekind_unchecked;
use crate::error::{Error, Result};
use crate::exact::{fmt_rat, rat, rat_int, sign, Int, Rat};
use crate::gl2::{sl2z_factor, Mat2Q, Mat2Z};

fn require_sl2z(s: &Mat2Q) -> Result<Mat2Z> {
    let m = s.to_int()?;
    let det = m.det();
    if !det.is_one() {
        return Err(Error::DetNotOne(det.to_string()));
    }
    Ok(m)
}

fn s_of(a: &Int, c: &Int) -> Rat {
    dedekind_unchecked(a, &c.abs())
}

/// Φ(σ): b/d if c = 0, else (a+d)/c - 12 sign(c) s(a/|c|).
pub fn rademacher_phi(s: &Mat2Q) -> Result<Rat> {
    let m = require_sl2z(s)?;
    let v = if m.c.is_zero() {
        Rat::new(m.b.clone(), m.d.clone())
    } else {
        Rat::new(&m.a + &m.d, m.c.clone())
            - rat(12 * sign(&m.c) as i64, 1) * s_of(&m.a, &m.c)
    };
    debug_assert!(v.is_integer(), "Φ must be integral, got {}", fmt_rat(&v));
    Ok(v)
}

pub(crate) fn phi_tilde_sl2z(m: &Mat2Z) -> Rat {
    if m.c.is_zero() {
        Rat::new(m.b.clone(), Int::from(12) * &m.d) + rat((1 - sign(&m.d)) as i64, 4)
    } else {
        Rat::new(&m.a + &m.d, Int::from(12) * &m.c)
            - rat(sign(&m.c) as i64, 1) * (rat(1, 4) + s_of(&m.a, &m.c))
    }
}

pub(crate) fn phi_tilde_borel(b: &Mat2Q) -> Rat {
    &b.b / (rat(12, 1) * &b.d) + rat((1 - sign(&b.d)) as i64, 4)
}

/// Φ̃(γ) = Φ̃(σ) + Φ̃(β) for the factorization γ = σβ.
pub fn rademacher_phi_tilde(g: &Mat2Q) -> Result<Rat> {
    let (sigma, beta) = sl2z_factor(g)?;
    Ok(phi_tilde_sl2z(&sigma) + phi_tilde_borel(&beta))
}

/// Φ̃ evaluated through an explicitly supplied factorization γ = σβ.
pub fn phi_tilde_factored(sigma: &Mat2Z, beta: &Mat2Q) -> Result<Rat> {
    if !sigma.det().is_one() {
        return Err(Error::DetNotOne(sigma.det().to_string()));
    }
    if !beta.c.is_zero() {
        return Err(Error::NotUpperTriangular);
    }
    Ok(phi_tilde_sl2z(sigma) + phi_tilde_borel(beta))
}

/// Which sign in Φ(σ₁σ₂) = Φ(σ₁) ± Φ(σ₂) - 3 sign(c₁c₂c₃) holds on a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoboundaryCheck {
    pub plus_holds: bool,
    pub minus_holds: bool,
}

/// Evaluate both sign variants on a pair with c₁c₂c₃ ≠ 0; None otherwise.
pub fn coboundary_variants(s1: &Mat2Q, s2: &Mat2Q) -> Result<Option<CoboundaryCheck>> {
    let s3 = s1 * s2;
    let (c1, c2, c3) = (&s1.c, &s2.c, &s3.c);
    if c1.is_zero() || c2.is_zero() || c3.is_zero() {
        return Ok(None);
    }
    let (p1, p2, p3) = (rademacher_phi(s1)?, rademacher_phi(s2)?, rademacher_phi(&s3)?);
    let corr = rat(3 * (sign(c1) * sign(c2) * sign(c3)) as i64, 1);
    Ok(Some(CoboundaryCheck {
        plus_holds: p3 == &p1 + &p2 - &corr,
        minus_holds: p3 == &p1 - &p2 - &corr,
    }))
}

/// 12Φ̃(σ) expressed through Φ(σ) and signs on SL(2,Z).
pub fn phi_tilde_via_phi(s: &Mat2Q) -> Result<Rat> {
    let phi = rademacher_phi(s)?;
    let twelve = if s.c.is_zero() {
        phi + rat(3 * (1 - sign(&s.d)) as i64, 1)
    } else {
        phi - rat(3 * sign(&s.c) as i64, 1)
    };
    Ok(twelve / rat(12, 1))
}

pub fn is_sl2z(s: &Mat2Q) -> bool {
    s.is_integral() && s.det() == rat_int(Int::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2::sigma0;

    #[test]
    fn phi_examples() {
        assert_eq!(rademacher_phi(&Mat2Q::from_i64(1, 1, 0, 1)).unwrap(), rat(1, 1));
        assert_eq!(rademacher_phi(&sigma0()).unwrap(), rat(0, 1));
        assert_eq!(rademacher_phi(&Mat2Q::from_i64(-1, 0, 0, -1)).unwrap(), rat(0, 1));
        assert!(rademacher_phi(&Mat2Q::from_i64(2, 0, 0, 1)).is_err());
    }

    #[test]
    fn phi_tilde_examples() {
        assert_eq!(
            rademacher_phi_tilde(&Mat2Q::from_i64(-1, 0, 0, -1)).unwrap(),
            rat(1, 2)
        );
        assert_eq!(rademacher_phi_tilde(&sigma0()).unwrap(), rat(-1, 4));
        assert_eq!(rademacher_phi_tilde(&Mat2Q::from_i64(1, 7, 0, 1)).unwrap(), rat(7, 12));
    }

    #[test]
    fn tilde_relation() {
        for (a, b, c, d) in [(2, 1, 1, 1), (1, 0, -3, 1), (-1, 5, 0, -1), (5, 2, 7, 3)] {
            let s = Mat2Q::from_i64(a, b, c, d);
            assert_eq!(phi_tilde_via_phi(&s).unwrap(), rademacher_phi_tilde(&s).unwrap());
        }
    }
}
