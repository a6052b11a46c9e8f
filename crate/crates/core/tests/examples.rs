use arith_cocycles::dedekind::{dedekind_sum, dedekind_sum_fast, grd_sum};
use arith_cocycles::eisenstein::{phi_chain, phi_closed, phi_on_borel, phi_sym};
use arith_cocycles::exact::{bernoulli_number, bernoulli_poly, int, periodic_bernoulli, rat};
use arith_cocycles::gl2::{
    bruhat_factor, check_matrix, fiber, pipe_action, primitive_rep, sigma0, sl2z_factor, Bruhat,
};
use arith_cocycles::gv::{asai_e, re_gv_borel, re_gv_tilde, transgression_defect};
use arith_cocycles::oracle::{asai_e_numeric, eval_mu, g2, gv_numeric, tgv_delta_numeric};
use arith_cocycles::poly::{gl_act, integrate_linear_power};
use arith_cocycles::rademacher::{rademacher_phi, rademacher_phi_tilde};
use arith_cocycles::{HomPoly, Mat2, Mat2Q, Rat, SqrtSum, TorsionPoint, TorsionSum};
use num_complex::Complex64;
use num_traits::{One, Zero};

fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2Q {
    Mat2Q::from_i64(a, b, c, d)
}

fn pt(a: i64, b: i64, c: i64, d: i64) -> TorsionPoint {
    TorsionPoint::new(rat(a, b), rat(c, d))
}

fn t() -> Mat2Q {
    m(1, 1, 0, 1)
}

#[test]
fn bernoulli_values() {
    assert_eq!(bernoulli_number(0), rat(1, 1));
    assert_eq!(bernoulli_number(2), rat(1, 6));
    assert_eq!(bernoulli_number(4), rat(-1, 30));
    assert_eq!(bernoulli_poly(1, &rat(1, 2)), rat(0, 1));
    assert_eq!(bernoulli_poly(2, &rat(0, 1)), rat(1, 6));
    assert_eq!(bernoulli_poly(4, &rat(1, 2)), rat(7, 240));
    assert_eq!(periodic_bernoulli(1, &rat(7, 3)), rat(-1, 6));
    assert_eq!(periodic_bernoulli(2, &rat(-1, 2)), rat(-1, 12));
    assert_eq!(periodic_bernoulli(1, &rat(5, 1)), rat(-1, 2));
    assert!((bernoulli_poly(2, &0.25f64) - (-1.0 / 48.0)).abs() < 1e-15);
}

#[test]
fn matrix_canonical_forms() {
    assert_eq!(check_matrix(&m(2, 0, 0, 2)).unwrap(), m(2, 0, 0, 2));
    assert_eq!(check_matrix(&sigma0()).unwrap(), m(0, 1, -1, 0));
    let half = Mat2::new(rat(1, 2), rat(0, 1), rat(0, 1), rat(1, 2));
    assert_eq!(primitive_rep(&half).unwrap(), Mat2::new(int(1), int(0), int(0), int(1)));
    assert!(primitive_rep(&m(0, -1, -1, 0)).is_err());
    assert_eq!(primitive_rep(&m(2, 2, -2, 0)).unwrap(), Mat2::new(int(-1), int(-1), int(1), int(0)));

    let g = Mat2::new(rat(1, 1), rat(0, 1), rat(1, 2), rat(1, 1));
    let (s, b) = sl2z_factor(&g).unwrap();
    assert_eq!((s.a.clone(), s.c.clone()), (int(2), int(1)));
    assert!(b.c.is_zero());
    assert_eq!(&s.map(|e| Rat::from_integer(e.clone())) * &b, g);

    assert!(matches!(bruhat_factor(&t()).unwrap(), Bruhat::Borel(_)));
    let g = m(1, -1, 1, 0);
    match bruhat_factor(&g).unwrap() {
        Bruhat::Big { beta1, beta2 } => assert_eq!(&(&beta1 * &sigma0()) * &beta2, g),
        Bruhat::Borel(_) => panic!("c ≠ 0"),
    }
}

#[test]
fn torsion_fibers() {
    let z = TorsionPoint::zero();
    let two = Mat2::new(int(2), int(0), int(0), int(2));
    let f = fiber(&two, &z).unwrap();
    assert_eq!(f.len(), 4);
    for p in [pt(0, 1, 1, 2), pt(1, 2, 0, 1), pt(1, 2, 1, 2)] {
        assert!(f.contains(&p));
    }
    let want: TorsionSum = [z.clone(), pt(1, 2, 0, 1)].into_iter().collect();
    assert_eq!(pipe_action(&z, &m(1, 0, 0, 2)).unwrap(), want);
    let x = pt(1, 3, 2, 3);
    assert_eq!(pipe_action(&x, &Mat2Q::identity()).unwrap(), TorsionSum::point(x.clone()));
    assert_eq!(pipe_action(&x, &m(2, 1, 1, 1)).unwrap(), TorsionSum::point(pt(1, 3, 0, 1)));
}

#[test]
fn dedekind_values() {
    assert_eq!(dedekind_sum(&int(0), &int(1)).unwrap(), rat(0, 1));
    assert_eq!(dedekind_sum(&int(1), &int(3)).unwrap(), rat(1, 18));
    assert_eq!(dedekind_sum(&int(1), &int(5)).unwrap(), rat(1, 5));
    assert_eq!(dedekind_sum_fast(&int(2), &int(5)).unwrap(), rat(0, 1));
    let n = int(1_000_003);
    assert_eq!(dedekind_sum_fast(&int(1), &n).unwrap(), dedekind_sum(&int(1), &n).unwrap());
    // single term r = 0 at a/c = 0/1
    let x = pt(1, 3, 1, 4);
    let want = bernoulli_poly(2, &rat(1, 3)) * bernoulli_poly(3, &rat(1, 4)) / rat(6, 1);
    assert_eq!(grd_sum(2, 3, &x, &int(0), &int(1)).unwrap(), want);
}

#[test]
fn rademacher_values() {
    assert_eq!(rademacher_phi(&t()).unwrap(), rat(1, 1));
    assert_eq!(rademacher_phi(&sigma0()).unwrap(), rat(0, 1));
    assert_eq!(rademacher_phi(&m(-1, 0, 0, -1)).unwrap(), rat(0, 1));
    assert_eq!(rademacher_phi_tilde(&m(-1, 0, 0, -1)).unwrap(), rat(1, 2));
    assert_eq!(rademacher_phi_tilde(&sigma0()).unwrap(), rat(-1, 4));
    assert_eq!(rademacher_phi_tilde(&m(1, 5, 0, 1)).unwrap(), rat(5, 12));
}

#[test]
fn asai_and_gv_values() {
    assert_eq!(asai_e(&sigma0(), &sigma0()).unwrap(), 1);
    assert_eq!(asai_e(&t(), &t()).unwrap(), 0);
    let beta = Mat2::new(rat(3, 1), rat(1, 7), rat(0, 1), rat(1, 3));
    assert_eq!(asai_e(&m(5, 2, 7, 3), &beta).unwrap(), 0);

    assert_eq!(re_gv_tilde(&sigma0(), &sigma0()).unwrap(), rat(0, 1));
    assert_eq!(re_gv_tilde(&m(1, 0, 0, 2), &t()).unwrap(), rat(-1, 12));
    let b1 = Mat2::new(rat(2, 1), rat(0, 1), rat(0, 1), rat(1, 2));
    assert_eq!(re_gv_borel(&b1, &t()).unwrap(), rat(1, 2));
    assert!(re_gv_borel(&Mat2Q::identity(), &t()).unwrap().is_zero());
    assert!(re_gv_borel(&b1, &Mat2Q::identity()).unwrap().is_zero());

    assert!(transgression_defect(&sigma0(), &sigma0()).unwrap().is_zero());
    assert!(transgression_defect(&Mat2Q::identity(), &m(2, 1, 1, 1)).unwrap().is_zero());
}

#[test]
fn polynomial_action_and_integrals() {
    let p = HomPoly::monomial(3, 1, SqrtSum::one());
    assert_eq!(gl_act(&Mat2Q::identity(), &p).unwrap(), p);
    // T₁T₂² ↦ T₂(-T₁)²
    let want = HomPoly::monomial(3, 2, SqrtSum::one());
    assert_eq!(gl_act(&sigma0(), &p).unwrap(), want);
    let g = m(2, 1, 1, 3);
    let k = Mat2::new(rat(3, 1), rat(0, 1), rat(0, 1), rat(3, 1));
    assert_eq!(gl_act(&(&g * &k), &p).unwrap(), gl_act(&g, &p).unwrap());

    let t1 = HomPoly::linear(Rat::one(), Rat::zero());
    let t2 = HomPoly::linear(Rat::zero(), Rat::one());
    let z0 = rat(3, 2);
    let got = integrate_linear_power(&t1, &t2, 2, &rat(0, 1), &z0);
    let z2 = &z0 * &z0;
    let want = HomPoly::from_coeffs(vec![z0.clone(), z2.clone(), &z2 * &z0 / rat(3, 1)]);
    assert_eq!(got, want);
    assert!(integrate_linear_power(&t1, &t2, 2, &z0, &z0).is_zero());
    assert_eq!(integrate_linear_power(&t1, &t2, 0, &rat(0, 1), &rat(1, 1)), HomPoly::constant(rat(1, 1)));
}

fn scalar(v: &HomPoly<SqrtSum>) -> Rat {
    assert_eq!(v.degree(), 0);
    v.coeff(0).rational_part()
}

#[test]
fn eisenstein_values() {
    assert_eq!(scalar(&phi_on_borel(2, &pt(1, 2, 0, 1), &t()).unwrap().value), rat(1, 24));
    let v = phi_on_borel(4, &pt(0, 1, 1, 2), &t()).unwrap().value;
    let c = rat(1, 120);
    let want = HomPoly::from_coeffs(vec![c.clone(), c.clone(), c / rat(3, 1)]).to_sqrt();
    assert_eq!(v, want);

    let s = m(1, 0, 1, 1);
    let x = pt(1, 3, 1, 3);
    assert_eq!(scalar(&phi_closed(2, &x, &s).unwrap().value), rat(1, 36));
    let g = m(1, -1, 1, 0);
    for mm in [2, 3, 4, 6] {
        let chain = phi_chain(mm, &TorsionSum::point(x.clone()), &g).unwrap();
        assert_eq!(chain, phi_closed(mm, &x, &g).unwrap());
        assert!(phi_chain(mm, &TorsionSum::point(x.clone()), &Mat2Q::identity()).unwrap().is_zero());
    }
    let sym = phi_sym(1, &x, &s).unwrap().value;
    assert_eq!(sym.coeff(0, 0).rational_part(), rat(1, 36));
}

#[test]
fn oracle_values() {
    let far = g2(Complex64::new(0.0, 10.0)).unwrap();
    assert!((far - std::f64::consts::PI.powi(2) / 3.0).norm() < 1e-12);
    let z = Complex64::new(0.0, 2.0);
    assert!(eval_mu(&m(2, 1, 1, 1), z).unwrap().norm() < 1e-10);
    let half = Mat2::new(rat(1, 1), rat(1, 2), rat(0, 1), rat(1, 1));
    assert!(eval_mu(&half, z).unwrap().norm() > 1e-8);
    assert!(gv_numeric(&t(), &half, z).unwrap().value.norm() < 1e-10);
    assert!(gv_numeric(&half, &Mat2Q::identity(), z).unwrap().value.norm() == 0.0);
    let tgv = tgv_delta_numeric(&Mat2Q::identity(), z, 30).unwrap().value;
    assert!(tgv.iter().all(|c| c.norm() == 0.0));
    for w in [Complex64::new(0.0, 1.0), Complex64::new(1.0, 2.0)] {
        let e = asai_e_numeric(&sigma0(), &sigma0(), w).unwrap();
        assert!((e - 1.0).norm() < 1e-12);
        let up = asai_e_numeric(&t(), &half, w).unwrap();
        assert!(up.norm() < 1e-12);
    }
}
