//! Homogeneous polynomials in (T₁,T₂) and in (T₁,T₂;T₃,T₄) with the GL⁺(2) action.

use std::fmt;

use num_integer::binomial;
use num_traits::Zero;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;
use crate::exact::{rat, Rat, SqrtSum};
use crate::gl2::{Mat2, Mat2Q};
use crate::scalar::Ring;

/// Degree-m form; `coeffs[k]` multiplies T₁ᵏT₂^{m-k}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Serialize> Serialize for HomPoly<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for HomPoly<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coeffs = Vec::<T>::deserialize(d)?;
        if coeffs.is_empty() {
            return Err(de::Error::custom("empty coefficient array"));
        }
        Ok(HomPoly { coeffs })
    }
}

impl<T: Ring> HomPoly<T> {
    pub fn zero(deg: usize) -> Self {
        HomPoly {
            coeffs: vec![T::zero(); deg + 1],
        }
    }

    pub fn constant(c: T) -> Self {
        HomPoly { coeffs: vec![c] }
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        HomPoly { coeffs }
    }

    pub fn monomial(deg: usize, k: usize, c: T) -> Self {
        let mut p = Self::zero(deg);
        p.coeffs[k] = c;
        p
    }

    /// a·T₁ + c·T₂
    pub fn linear(a: T, c: T) -> Self {
        HomPoly { coeffs: vec![c, a] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree(), o.degree(), "degree mismatch");
        HomPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-T::one()))
    }

    pub fn scale(&self, k: &T) -> Self {
        HomPoly {
            coeffs: self.coeffs.iter().map(|a| a.clone() * k.clone()).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.degree() + o.degree());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out.coeffs[i + j] = out.coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::constant(T::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> HomPoly<U> {
        HomPoly {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// The forms P(aT₁+cT₂, bT₁+dT₂) for each monomial of the given degree.
    fn substituted_basis(deg: usize, m: &Mat2<T>) -> Vec<Self> {
        let l1 = Self::linear(m.a.clone(), m.c.clone());
        let l2 = Self::linear(m.b.clone(), m.d.clone());
        let mut p1 = vec![Self::constant(T::one())];
        let mut p2 = vec![Self::constant(T::one())];
        for k in 0..deg {
            p1.push(p1[k].mul(&l1));
            p2.push(p2[k].mul(&l2));
        }
        (0..=deg).map(|k| p1[k].mul(&p2[deg - k])).collect()
    }

    /// P(aT₁+cT₂, bT₁+dT₂), without any determinant factor.
    pub fn substitute(&self, m: &Mat2<T>) -> Self {
        let basis = Self::substituted_basis(self.degree(), m);
        let mut out = Self::zero(self.degree());
        for (c, b) in self.coeffs.iter().zip(&basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c));
            }
        }
        out
    }
}

impl HomPoly<Rat> {
    pub fn to_sqrt(&self) -> HomPoly<SqrtSum> {
        self.map(|c| SqrtSum::rational(c.clone()))
    }
}

impl HomPoly<SqrtSum> {
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    pub fn rational_part(&self) -> HomPoly<Rat> {
        self.map(|c| c.rational_part())
    }
}

impl<T: Ring + fmt::Display> fmt::Display for HomPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.degree();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            match k {
                0 => {}
                1 => write!(f, "*T1")?,
                _ => write!(f, "*T1^{k}")?,
            }
            match m - k {
                0 => {}
                1 => write!(f, "*T2")?,
                e => write!(f, "*T2^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn monomial_fmt(f: &mut fmt::Formatter<'_>, var: &str, e: usize) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "*{var}"),
        _ => write!(f, "*{var}^{e}"),
    }
}

impl<T: Ring + fmt::Display> fmt::Display for HomPoly4<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.deg;
        let mut first = true;
        for (i, row) in self.grid.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "({c})")?;
                monomial_fmt(f, "T1", i)?;
                monomial_fmt(f, "T2", n - i)?;
                monomial_fmt(f, "T3", j)?;
                monomial_fmt(f, "T4", n - j)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn mat_sqrt(g: &Mat2Q) -> Mat2<SqrtSum> {
    g.map(|e| SqrtSum::rational(e.clone()))
}

/// (g·P)(T₁,T₂) = det(g)^{-m/2} P(aT₁+cT₂, bT₁+dT₂).
pub fn gl_act(g: &Mat2Q, p: &HomPoly<SqrtSum>) -> Result<HomPoly<SqrtSum>> {
    let k = SqrtSum::pow_half(&g.det(), -(p.degree() as i64))?;
    Ok(p.substitute(&mat_sqrt(g)).scale(&k))
}

fn binom(n: usize, k: usize) -> Rat {
    crate::exact::rat_int(binomial(
        crate::exact::int(n as i64),
        crate::exact::int(k as i64),
    ))
}

/// Coefficients in t of (t·A + B)^n.
pub fn linear_power<T: Ring>(a: &HomPoly<T>, b: &HomPoly<T>, n: usize) -> Vec<HomPoly<T>> {
    let mut pa = vec![HomPoly::constant(T::one())];
    let mut pb = vec![HomPoly::constant(T::one())];
    for k in 0..n {
        pa.push(pa[k].mul(a));
        pb.push(pb[k].mul(b));
    }
    (0..=n)
        .map(|j| pa[j].mul(&pb[n - j]).scale(&T::from_rat(&binom(n, j))))
        .collect()
}

/// ∫_lo^hi Σ_j P_j t^j dt for polynomial coefficients P_j.
pub fn poly_integrate<T: Ring>(ps: &[HomPoly<T>], lo: &Rat, hi: &Rat) -> HomPoly<T> {
    let deg = ps.first().map(|p| p.degree()).unwrap_or(0);
    let mut out = HomPoly::zero(deg);
    let (mut lp, mut hp) = (lo.clone(), hi.clone());
    for (j, p) in ps.iter().enumerate() {
        let w = (&hp - &lp) / rat(j as i64 + 1, 1);
        out = out.add(&p.scale(&T::from_rat(&w)));
        lp *= lo;
        hp *= hi;
    }
    out
}

/// ∫_lo^hi (t·A + B)^n dt.
pub fn integrate_linear_power<T: Ring>(
    a: &HomPoly<T>,
    b: &HomPoly<T>,
    n: usize,
    lo: &Rat,
    hi: &Rat,
) -> HomPoly<T> {
    poly_integrate(&linear_power(a, b, n), lo, hi)
}

/// Element of W_{n-1} ⊗ W_{n-1}; `grid[i][j]` multiplies T₁ⁱT₂^{n-1-i}·T₃ʲT₄^{n-1-j}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomPoly4<T> {
    deg: usize,
    grid: Vec<Vec<T>>,
}

impl<T: Serialize> Serialize for HomPoly4<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.grid.serialize(s)
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for HomPoly4<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let grid = Vec::<Vec<T>>::deserialize(d)?;
        let n = grid.len();
        if n == 0 || grid.iter().any(|r| r.len() != n) {
            return Err(de::Error::custom("coefficient grid must be square and non-empty"));
        }
        Ok(HomPoly4 { deg: n - 1, grid })
    }
}

impl<T: Ring> HomPoly4<T> {
    /// Zero element of bidegree (deg, deg).
    pub fn zero(deg: usize) -> Self {
        HomPoly4 {
            deg,
            grid: vec![vec![T::zero(); deg + 1]; deg + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn coeff(&self, i: usize, j: usize) -> &T {
        &self.grid[i][j]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.grid
    }

    pub fn tensor(p: &HomPoly<T>, q: &HomPoly<T>) -> Self {
        assert_eq!(p.degree(), q.degree(), "bidegree mismatch");
        let mut out = Self::zero(p.degree());
        for (i, a) in p.coeffs().iter().enumerate() {
            for (j, b) in q.coeffs().iter().enumerate() {
                out.grid[i][j] = a.clone() * b.clone();
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.deg, o.deg, "bidegree mismatch");
        let mut out = self.clone();
        for (r, ro) in out.grid.iter_mut().zip(&o.grid) {
            for (c, co) in r.iter_mut().zip(ro) {
                *c = c.clone() + co.clone();
            }
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-T::one()))
    }

    pub fn scale(&self, k: &T) -> Self {
        let mut out = self.clone();
        for r in out.grid.iter_mut() {
            for c in r.iter_mut() {
                *c = c.clone() * k.clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.grid.iter().flatten().all(|c| c.is_zero())
    }

    /// Invariance under (T₁,T₂) ↔ (T₃,T₄).
    pub fn is_swap_symmetric(&self) -> bool {
        (0..=self.deg).all(|i| (0..i).all(|j| self.grid[i][j] == self.grid[j][i]))
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> HomPoly4<U> {
        HomPoly4 {
            deg: self.deg,
            grid: self.grid.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    /// The substitution of `HomPoly::substitute` applied to both variable pairs.
    pub fn substitute(&self, m: &Mat2<T>) -> Self {
        let s = HomPoly::substituted_basis(self.deg, m);
        let n = self.deg + 1;
        // out = Sᵀ · grid · S
        let mut tmp = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if self.grid[i][j].is_zero() {
                    continue;
                }
                for l in 0..n {
                    tmp[i][l] = tmp[i][l].clone() + self.grid[i][j].clone() * s[j].coeffs[l].clone();
                }
            }
        }
        let mut out = Self::zero(self.deg);
        for i in 0..n {
            for k in 0..n {
                let sik = &s[i].coeffs[k];
                if sik.is_zero() {
                    continue;
                }
                for l in 0..n {
                    out.grid[k][l] = out.grid[k][l].clone() + sik.clone() * tmp[i][l].clone();
                }
            }
        }
        out
    }
}

impl HomPoly4<Rat> {
    pub fn to_sqrt(&self) -> HomPoly4<SqrtSum> {
        self.map(|c| SqrtSum::rational(c.clone()))
    }
}

/// Tensor-square action: det(g)^{-(n-1)} times the substitution in both pairs.
pub fn gl_act4(g: &Mat2Q, p: &HomPoly4<SqrtSum>) -> Result<HomPoly4<SqrtSum>> {
    let k = SqrtSum::pow_half(&g.det(), -2 * p.degree() as i64)?;
    Ok(p.substitute(&mat_sqrt(g)).scale(&k))
}

/// ∫_lo^hi (tA+B)^n (tA'+B')^n dt with (A',B') the copies of (A,B) in T₃,T₄.
pub fn integrate_linear_power4<T: Ring>(
    a: &HomPoly<T>,
    b: &HomPoly<T>,
    n: usize,
    lo: &Rat,
    hi: &Rat,
) -> HomPoly4<T> {
    let ps = linear_power(a, b, n);
    let mut out = HomPoly4::zero(n * a.degree().max(b.degree()));
    for (j, pj) in ps.iter().enumerate() {
        for (l, ql) in ps.iter().enumerate() {
            let e = (j + l + 1) as u32;
            let w = (num_traits::Pow::pow(hi, e) - num_traits::Pow::pow(lo, e)) / rat(e as i64, 1);
            if w.is_zero() {
                continue;
            }
            out = out.add(&HomPoly4::tensor(pj, ql).scale(&T::from_rat(&w)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[(i64, i64)]) -> HomPoly<Rat> {
        HomPoly::from_coeffs(v.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn sigma0_on_monomials() {
        let s0 = crate::gl2::sigma0();
        for m in 0..6 {
            for k in 0..=m {
                let p = HomPoly::monomial(m, k, SqrtSum::rational(rat(1, 1)));
                let got = gl_act(&s0, &p).unwrap();
                // T₂ᵏ(-T₁)^{m-k}
                let sign = if (m - k) % 2 == 0 { 1 } else { -1 };
                let want = HomPoly::monomial(m, m - k, SqrtSum::rational(rat(sign, 1)));
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn identity_and_scaling() {
        let p = q(&[(1, 2), (-3, 1), (2, 7)]).to_sqrt();
        assert_eq!(gl_act(&Mat2Q::identity(), &p).unwrap(), p);
        let g = Mat2Q::from_i64(2, 1, 1, 3);
        let k = Mat2::new(rat(3, 2), rat(0, 1), rat(0, 1), rat(3, 2));
        assert_eq!(gl_act(&(&g * &k), &p).unwrap(), gl_act(&g, &p).unwrap());
    }

    #[test]
    fn integrals() {
        let t1 = q(&[(0, 1), (1, 1)]);
        let t2 = q(&[(1, 1), (0, 1)]);
        let zero = rat(0, 1);
        assert!(integrate_linear_power(&t1, &t2, 2, &zero, &zero).is_zero());
        // z₀T₂² + z₀²T₁T₂ + z₀³T₁²/3 at z₀ = 2
        let got = integrate_linear_power(&t1, &t2, 2, &zero, &rat(2, 1));
        assert_eq!(got, q(&[(2, 1), (4, 1), (8, 3)]));
        let one = integrate_linear_power(&t1, &t2, 0, &zero, &rat(1, 1));
        assert_eq!(one, q(&[(1, 1)]));
    }

    #[test]
    fn tensor_action() {
        let p = q(&[(1, 1), (2, 1), (0, 1)]);
        let r = q(&[(0, 1), (-1, 3), (5, 1)]);
        let g = Mat2::new(rat(2, 1), rat(1, 3), rat(-1, 1), rat(1, 2));
        let lhs = HomPoly4::tensor(&p, &r).substitute(&g);
        let rhs = HomPoly4::tensor(&p.substitute(&g), &r.substitute(&g));
        assert_eq!(lhs, rhs);
    }
}
