//! 2x2 matrices, torsion points of (Q/Z)^2 and the action x|γ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, lcm_denoms, parse_rat, rat_int, Int, Rat};
use crate::scalar::Ring;

/// [[a, b], [c, d]]
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Ring> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    /// Adjugate [[d, -b], [-c, a]].
    pub fn adj(&self) -> Self {
        Mat2::new(
            self.d.clone(),
            -self.b.clone(),
            -self.c.clone(),
            self.a.clone(),
        )
    }

    pub fn scale(&self, k: &T) -> Self {
        Mat2::new(
            self.a.clone() * k.clone(),
            self.b.clone() * k.clone(),
            self.c.clone() * k.clone(),
            self.d.clone() * k.clone(),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat2<U> {
        Mat2 {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
            d: f(&self.d),
        }
    }
}

impl<T: Ring> Mul for &Mat2<T> {
    type Output = Mat2<T>;
    fn mul(self, o: &Mat2<T>) -> Mat2<T> {
        Mat2::new(
            self.a.clone() * o.a.clone() + self.b.clone() * o.c.clone(),
            self.a.clone() * o.b.clone() + self.b.clone() * o.d.clone(),
            self.c.clone() * o.a.clone() + self.d.clone() * o.c.clone(),
            self.c.clone() * o.b.clone() + self.d.clone() * o.d.clone(),
        )
    }
}

impl<T: Ring> Mul for Mat2<T> {
    type Output = Mat2<T>;
    fn mul(self, o: Mat2<T>) -> Mat2<T> {
        &self * &o
    }
}

impl<T: crate::scalar::Scalar> Mat2<T> {
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        Some(self.adj().map(|e| e.clone() / det.clone()))
    }
}

pub type Mat2Q = Mat2<Rat>;
pub type Mat2Z = Mat2<Int>;

impl Ring for Int {
    fn from_rat(r: &Rat) -> Self {
        r.to_integer()
    }
}

impl Mat2Q {
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(rat_i(a), rat_i(b), rat_i(c), rat_i(d))
    }

    pub fn is_integral(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .all(|e| e.is_integer())
    }

    pub fn to_int(&self) -> Result<Mat2Z> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        Ok(self.map(|e| e.to_integer()))
    }

    pub fn is_upper(&self) -> bool {
        self.c.is_zero()
    }

    fn require_pos_det(&self) -> Result<Rat> {
        let det = self.det();
        if !det.is_positive() {
            return Err(Error::NonPositiveDet(fmt_rat(&det)));
        }
        Ok(det)
    }

    /// Parse "a b; c d".
    pub fn parse(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s.split(';').collect();
        if rows.len() != 2 {
            return Err(Error::Parse(format!("expected `a b; c d`, got `{s}`")));
        }
        let mut e = Vec::with_capacity(4);
        for row in rows {
            let parts: Vec<&str> = row.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(Error::Parse(format!("expected two entries per row in `{s}`")));
            }
            for p in parts {
                e.push(parse_rat(p)?);
            }
        }
        let d = e.pop().unwrap();
        let c = e.pop().unwrap();
        let b = e.pop().unwrap();
        let a = e.pop().unwrap();
        Ok(Mat2::new(a, b, c, d))
    }
}

fn rat_i(n: i64) -> Rat {
    rat_int(Int::from(n))
}

impl fmt::Display for Mat2Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}; {} {}",
            fmt_rat(&self.a),
            fmt_rat(&self.b),
            fmt_rat(&self.c),
            fmt_rat(&self.d)
        )
    }
}

impl fmt::Display for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}; {} {}", self.a, self.b, self.c, self.d)
    }
}

pub fn sigma0() -> Mat2Q {
    Mat2Q::from_i64(0, -1, 1, 0)
}

/// det(γ)·γ⁻¹ for integral γ with positive determinant.
pub fn check_matrix(g: &Mat2Q) -> Result<Mat2Q> {
    if !g.is_integral() {
        return Err(Error::NotIntegral);
    }
    g.require_pos_det()?;
    Ok(g.adj())
}

/// Positive rational multiple with coprime integer entries, c > 0 or (c = 0, d > 0).
pub fn primitive_rep(g: &Mat2Q) -> Result<Mat2Z> {
    if g.a.is_zero() && g.b.is_zero() && g.c.is_zero() && g.d.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    g.require_pos_det()?;
    Ok(primitive_int(g))
}

pub(crate) fn primitive_int(g: &Mat2Q) -> Mat2Z {
    let l = lcm_denoms([&g.a, &g.b, &g.c, &g.d]);
    let m = g.map(|e| (e * rat_int(l.clone())).to_integer());
    let gcd = m.a.gcd(&m.b).gcd(&m.c).gcd(&m.d);
    let m = m.map(|e| e / &gcd);
    if m.c.is_negative() || (m.c.is_zero() && m.d.is_negative()) {
        m.neg()
    } else {
        m
    }
}

fn completion(p: &Int, q: &Int) -> Mat2Z {
    // p x + q y = 1
    let e = p.extended_gcd(q);
    let (x, y) = if e.gcd.is_negative() {
        (-e.x, -e.y)
    } else {
        (e.x, e.y)
    };
    Mat2::new(p.clone(), -y, q.clone(), x)
}

/// γ = σ·β with σ ∈ SL(2,Z) and β upper triangular.
pub fn sl2z_factor(g: &Mat2Q) -> Result<(Mat2Z, Mat2Q)> {
    g.require_pos_det()?;
    let l = lcm_denoms([&g.a, &g.c]);
    let (p, q) = (
        (&g.a * rat_int(l.clone())).to_integer(),
        (&g.c * rat_int(l)).to_integer(),
    );
    let h = p.gcd(&q);
    let sigma = completion(&(p / &h), &(q / &h));
    let beta = &sigma.adj().map(|e| rat_int(e.clone())) * g;
    debug_assert!(beta.c.is_zero());
    Ok((sigma, beta))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bruhat {
    Borel(Mat2Q),
    Big { beta1: Mat2Q, beta2: Mat2Q },
}

/// γ itself when c = 0, otherwise γ = [[1, a/c], [0, 1]]·σ₀·[[c, d], [0, det/c]].
pub fn bruhat_factor(g: &Mat2Q) -> Result<Bruhat> {
    let det = g.require_pos_det()?;
    if g.c.is_zero() {
        return Ok(Bruhat::Borel(g.clone()));
    }
    let beta1 = Mat2::new(Rat::one(), &g.a / &g.c, Rat::zero(), Rat::one());
    let beta2 = Mat2::new(g.c.clone(), g.d.clone(), Rat::zero(), det / &g.c);
    Ok(Bruhat::Big { beta1, beta2 })
}

/// Same decomposition moved along the torus: β₁·diag(s,t) and diag(t,s)⁻¹·β₂.
pub fn bruhat_factor_torus(g: &Mat2Q, s: &Rat, t: &Rat) -> Result<Bruhat> {
    match bruhat_factor(g)? {
        Bruhat::Borel(b) => Ok(Bruhat::Borel(b)),
        Bruhat::Big { beta1, beta2 } => {
            let z = Rat::zero();
            let left = Mat2::new(s.clone(), z.clone(), z.clone(), t.clone());
            let right = Mat2::new(t.recip(), z.clone(), z, s.recip());
            Ok(Bruhat::Big {
                beta1: &beta1 * &left,
                beta2: &right * &beta2,
            })
        }
    }
}

/// Element of (Q/Z)^2 with both coordinates in [0, 1).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TorsionPoint {
    pub x1: Rat,
    pub x2: Rat,
}

impl TorsionPoint {
    pub fn new(x1: Rat, x2: Rat) -> Self {
        TorsionPoint {
            x1: x1.fract_pos(),
            x2: x2.fract_pos(),
        }
    }

    pub fn zero() -> Self {
        TorsionPoint::new(Rat::zero(), Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x1.is_zero() && self.x2.is_zero()
    }

    /// Row vector times integral matrix, reduced mod 1.
    pub fn times(&self, m: &Mat2Z) -> TorsionPoint {
        let (a, b, c, d) = (
            rat_int(m.a.clone()),
            rat_int(m.b.clone()),
            rat_int(m.c.clone()),
            rat_int(m.d.clone()),
        );
        TorsionPoint::new(&self.x1 * a + &self.x2 * c, &self.x1 * b + &self.x2 * d)
    }

    /// Parse "p/q,r/s".
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `x1,x2`, got `{s}`")))?;
        Ok(TorsionPoint::new(parse_rat(a)?, parse_rat(b)?))
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_rat(&self.x1), fmt_rat(&self.x2))
    }
}

trait FractPos {
    fn fract_pos(&self) -> Self;
}

impl FractPos for Rat {
    fn fract_pos(&self) -> Rat {
        self - self.floor()
    }
}

/// Formal integer combination of torsion points.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TorsionSum {
    terms: BTreeMap<TorsionPoint, i64>,
}

impl TorsionSum {
    pub fn new() -> Self {
        TorsionSum::default()
    }

    pub fn point(x: TorsionPoint) -> Self {
        let mut s = TorsionSum::new();
        s.add(x, 1);
        s
    }

    pub fn add(&mut self, x: TorsionPoint, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.terms.entry(x.clone()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.terms.remove(&x);
        }
    }

    pub fn add_sum(&mut self, other: &TorsionSum) {
        for (x, m) in &other.terms {
            self.add(x.clone(), *m);
        }
    }

    pub fn scaled(&self, k: i64) -> TorsionSum {
        let mut s = TorsionSum::new();
        for (x, m) in &self.terms {
            s.add(x.clone(), m * k);
        }
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TorsionPoint, &i64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_multiplicity(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn contains(&self, x: &TorsionPoint) -> bool {
        self.terms.contains_key(x)
    }
}

impl FromIterator<TorsionPoint> for TorsionSum {
    fn from_iter<I: IntoIterator<Item = TorsionPoint>>(iter: I) -> Self {
        let mut s = TorsionSum::new();
        for x in iter {
            s.add(x, 1);
        }
        s
    }
}

/// U·M·V = diag(d1, d2) with U, V unimodular and d1 | d2.
pub struct Smith {
    pub u: Mat2Z,
    pub v: Mat2Z,
    pub d1: Int,
    pub d2: Int,
}

pub fn smith_2x2(m: &Mat2Z) -> Smith {
    let mut a = [[m.a.clone(), m.b.clone()], [m.c.clone(), m.d.clone()]];
    let one = Int::one;
    let zero = Int::zero;
    let mut u = [[one(), zero()], [zero(), one()]];
    let mut v = [[one(), zero()], [zero(), one()]];

    fn row_op(a: &mut [[Int; 2]; 2], u: &mut [[Int; 2]; 2], i: usize, j: usize, k: &Int) {
        for t in 0..2 {
            let x = &a[j][t] * k;
            a[i][t] -= x;
            let y = &u[j][t] * k;
            u[i][t] -= y;
        }
    }
    fn col_op(a: &mut [[Int; 2]; 2], v: &mut [[Int; 2]; 2], i: usize, j: usize, k: &Int) {
        for t in 0..2 {
            let x = &a[t][j] * k;
            a[t][i] -= x;
            let y = &v[t][j] * k;
            v[t][i] -= y;
        }
    }

    loop {
        while !a[1][0].is_zero() {
            if a[0][0].is_zero() || a[1][0].abs() < a[0][0].abs() {
                a.swap(0, 1);
                u.swap(0, 1);
            } else {
                let k = a[1][0].div_floor(&a[0][0]);
                row_op(&mut a, &mut u, 1, 0, &k);
            }
        }
        while !a[0][1].is_zero() {
            if a[0][0].is_zero() || a[0][1].abs() < a[0][0].abs() {
                for t in 0..2 {
                    let r = &mut a[t];
                    r.swap(0, 1);
                    v[t].swap(0, 1);
                }
            } else {
                let k = a[0][1].div_floor(&a[0][0]);
                col_op(&mut a, &mut v, 1, 0, &k);
            }
        }
        if !a[1][0].is_zero() {
            continue;
        }
        if !a[0][0].is_zero() && !a[1][1].is_multiple_of(&a[0][0]) {
            for t in 0..2 {
                let x = a[1][t].clone();
                a[0][t] += x;
                let y = u[1][t].clone();
                u[0][t] += y;
            }
            continue;
        }
        break;
    }
    let to_mat = |x: &[[Int; 2]; 2]| {
        Mat2::new(x[0][0].clone(), x[0][1].clone(), x[1][0].clone(), x[1][1].clone())
    };
    Smith {
        u: to_mat(&u),
        v: to_mat(&v),
        d1: a[0][0].clone(),
        d2: a[1][1].clone(),
    }
}

/// Row Hermite form U·M = [[p, q], [0, r]] with p, r > 0 and 0 ≤ q < r.
pub fn row_hermite(m: &Mat2Z) -> (Int, Int, Int) {
    let e = m.a.extended_gcd(&m.c);
    let (g, x, y) = if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    };
    let q = &x * &m.b + &y * &m.d;
    let r = m.det() / &g;
    let (q, r) = if r.is_negative() { (q, -r) } else { (q, r) };
    let q = q.mod_floor(&r);
    (g, q, r)
}

/// All y ∈ (Q/Z)^2 with y·M ≡ x (mod Z^2).
pub fn fiber(m: &Mat2Z, x: &TorsionPoint) -> Result<TorsionSum> {
    let det = m.det();
    if !det.is_positive() {
        return Err(Error::NonPositiveDet(det.to_string()));
    }
    if det.is_one() {
        return Ok(TorsionSum::point(x.times(&m.adj())));
    }
    let Smith { u, v, d1, d2 } = smith_2x2(m);
    let xv = x.times(&v);
    let (n1, n2) = (
        usize::try_from(d1.abs()).expect("fiber too large"),
        usize::try_from(d2.abs()).expect("fiber too large"),
    );
    let (d1, d2) = (rat_int(d1), rat_int(d2));
    let mut out = TorsionSum::new();
    for k1 in 0..n1 {
        let w1 = (&xv.x1 + rat_i(k1 as i64)) / &d1;
        for k2 in 0..n2 {
            let w2 = (&xv.x2 + rat_i(k2 as i64)) / &d2;
            let y = TorsionPoint::new(
                &w1 * rat_int(u.a.clone()) + &w2 * rat_int(u.c.clone()),
                &w1 * rat_int(u.b.clone()) + &w2 * rat_int(u.d.clone()),
            );
            out.add(y, 1);
        }
    }
    Ok(out)
}

/// x|γ = fiber(check(primitive_rep(γ)), x).
pub fn pipe_action(x: &TorsionPoint, g: &Mat2Q) -> Result<TorsionSum> {
    let p = primitive_rep(g)?;
    fiber(&p.adj(), x)
}

/// Linear extension of x|γ over a formal sum.
pub fn pipe_action_sum(xs: &TorsionSum, g: &Mat2Q) -> Result<TorsionSum> {
    let p = primitive_rep(g)?;
    let ch = p.adj();
    let mut out = TorsionSum::new();
    for (x, m) in xs.iter() {
        out.add_sum(&fiber(&ch, x)?.scaled(*m));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn pt(a: i64, b: i64, c: i64, d: i64) -> TorsionPoint {
        TorsionPoint::new(rat(a, b), rat(c, d))
    }

    #[test]
    fn check_examples() {
        let two = Mat2Q::from_i64(2, 0, 0, 2);
        assert_eq!(check_matrix(&two).unwrap(), two);
        assert_eq!(
            check_matrix(&sigma0()).unwrap(),
            Mat2Q::from_i64(0, 1, -1, 0)
        );
        let half = Mat2::new(rat(1, 2), rat(0, 1), rat(0, 1), rat(1, 1));
        assert_eq!(check_matrix(&half), Err(Error::NotIntegral));
    }

    #[test]
    fn primitive_examples() {
        let h = Mat2::new(rat(1, 2), rat(0, 1), rat(0, 1), rat(1, 2));
        assert_eq!(primitive_rep(&h).unwrap(), Mat2::new(1.into(), 0.into(), 0.into(), 1.into()));
        assert!(primitive_rep(&Mat2Q::from_i64(0, -1, -1, 0)).is_err());
        let m = primitive_rep(&Mat2Q::from_i64(2, 2, -2, 0)).unwrap();
        assert_eq!(m, Mat2::new((-1).into(), (-1).into(), 1.into(), 0.into()));
    }

    #[test]
    fn factorizations() {
        let g = Mat2::new(rat(1, 1), rat(0, 1), rat(1, 2), rat(1, 1));
        let (s, b) = sl2z_factor(&g).unwrap();
        assert_eq!((s.a.clone(), s.c.clone()), (2.into(), 1.into()));
        assert!(s.det().is_one() && b.c.is_zero());
        assert_eq!(&s.map(|e| rat_int(e.clone())) * &b, g);

        let t = Mat2Q::from_i64(1, -1, 1, 0);
        match bruhat_factor(&t).unwrap() {
            Bruhat::Big { beta1, beta2 } => assert_eq!(&(&beta1 * &sigma0()) * &beta2, t),
            _ => panic!(),
        }
        match bruhat_factor(&sigma0()).unwrap() {
            Bruhat::Big { beta1, beta2 } => {
                assert_eq!(beta1, Mat2Q::identity());
                assert_eq!(beta2, Mat2Q::identity());
            }
            _ => panic!(),
        }
    }

    #[test]
    fn fiber_examples() {
        let two = Mat2::new(2.into(), 0.into(), 0.into(), 2.into());
        let f = fiber(&two, &TorsionPoint::zero()).unwrap();
        let want: TorsionSum = [pt(0, 1, 0, 1), pt(0, 1, 1, 2), pt(1, 2, 0, 1), pt(1, 2, 1, 2)]
            .into_iter()
            .collect();
        assert_eq!(f, want);
        let p = pipe_action(&TorsionPoint::zero(), &Mat2Q::from_i64(1, 0, 0, 2)).unwrap();
        let want: TorsionSum = [pt(0, 1, 0, 1), pt(1, 2, 0, 1)].into_iter().collect();
        assert_eq!(p, want);
    }

    #[test]
    fn hermite() {
        let m = Mat2::new(4.into(), 6.into(), 2.into(), 9.into());
        let (p, q, r) = row_hermite(&m);
        assert_eq!(&p * &r, m.det());
        assert_eq!(p, 2.into());
        assert!(q < r);
    }

    #[test]
    fn parse_matrix() {
        let m = Mat2Q::parse("1/2 -1; 0 +2").unwrap();
        assert_eq!(m, Mat2::new(rat(1, 2), rat(-1, 1), rat(0, 1), rat(2, 1)));
        assert!(Mat2Q::parse("1 2 3; 4").is_err());
        assert!(Mat2Q::parse("1 2").is_err());
    }
}
