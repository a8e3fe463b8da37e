use proptest::prelude::*;

use super::*;
use crate::qalgebra::{parse_element, parse_scalar, Tensor};
use crate::scalar::CyclotomicField;

fn refl(n: u32, m: u32, mu: i64) -> Arc<Reflection> {
    let f = CyclotomicField::get(n);
    Reflection::build(n, m, 1, Scalar::from_int(&f, mu), 1).unwrap()
}

fn failures(res: &[crate::report::CheckResult]) -> Vec<String> {
    res.iter().filter(|c| !c.passed()).map(|c| format!("{}/{}: {:?}", c.group, c.name, c.witness)).collect()
}

#[test]
fn c_q_matches_hand_expansion() {
    // α(y²) = y²⊗a² + (1+λ⁻¹) y⊗ab + 1⊗b², and d picks the b-linear part.
    let r = refl(3, 1, 1);
    let x = r.x();
    assert_eq!(r.c_q(1), &x.one());
    assert_eq!(r.c_q(2), &(&x.one() + x.lambda(-1)));
    assert_eq!(r.c_q(2), &r.c_q_closed(2));
    let y2 = parse_element("y^2", x).unwrap();
    assert_eq!(r.act(&r.dual().d(), &y2), parse_element("y", x).unwrap().scale(r.c_q(2)));
}

#[test]
fn d_shifts_e_down_by_m() {
    let r = refl(3, 2, 1);
    let (dual, a) = (r.dual(), r.a());
    let d = dual.d();
    for p in -2..=2 {
        let lhs = dual.left_by(&d, &FiniteDual::e(a, p));
        assert!(!lhs.is_zero());
        assert_eq!(lhs, dual.right_by(&FiniteDual::e(a, p - 2), &d));
        assert_ne!(lhs, dual.right_by(&FiniteDual::e(a, p + 2), &d));
    }
}

#[test]
fn phi_right_translate_sign() {
    // n = 2: a⁻¹b·a = λ⁻¹ b, so φ(a⁻¹b·a) = λ⁻¹ = -1.
    let r = refl(2, 1, 1);
    let a = r.a();
    let f = r.dual().phi_right(&parse_element("a", a).unwrap());
    assert_eq!(f, FiniteDual::term(a, Monomial::new(-1, 1), a.lambda(-1).clone()));
    assert_eq!(f.at(Monomial::new(-1, 1)), Scalar::from_int(a.field(), -1));
}

#[test]
fn gamma_and_beta_c_on_generators() {
    let r = refl(3, 1, 1);
    let rg = r.reflected();
    assert_eq!(rg.gamma_monomial(Monomial::new(1, 0)).to_string(), "u (x) x");
    assert_eq!(rg.gamma_monomial(Monomial::new(0, 1)).to_string(), "1 (x) y + w (x) x");
    assert_eq!(rg.gamma(&Element::one(r.x())), Tensor::unit(&[r.c().clone(), r.x().clone()]));
    assert_eq!(rg.beta_c_hom().apply_monomial(Monomial::new(1, 0)).to_string(), "x (x) x^-1");
}

#[test]
fn c_nilpotent_relation() {
    let f = CyclotomicField::get(2);
    let r = Reflection::build(2, 1, 1, Scalar::from_int(&f, 3), 1).unwrap();
    let c = r.c();
    let w = parse_element("w", c).unwrap();
    assert_eq!(w.mul(&w), parse_element("3*u^2 - 3", c).unwrap());
}

#[test]
fn grouplike_bracket_is_g() {
    // z = x⁻ˢ: ω(x⁻ˢ) = 1, β(a⁻ˢ) = xˢ⊗x⁻ˢ, ω′(xˢ) = 1, so z·b = z.
    let r = refl(3, 1, 1);
    let x = r.x();
    for s in -2..=2 {
        let b = r.bracket_b(&r.hat_basis(Monomial::new(-s, 0)), &r.hat_basis(Monomial::new(s, 0))).unwrap();
        assert_eq!(b, BElement::basis(x, s, 0));
        let eps = if s == 0 { x.one() } else { x.zero() };
        assert_eq!(r.eps_b(&b).unwrap(), eps);
    }
}

#[test]
fn b_product_and_display() {
    let r = refl(3, 1, 1);
    let x = r.x();
    let gh = BElement::basis(x, 2, 1);
    assert_eq!(gh.to_string(), "g_2*h");
    assert_eq!(gh.mul(&BElement::basis(x, 1, 0)), gh);
    assert!(gh.mul(&BElement::basis(x, 2, 0)).is_zero());
    assert_eq!(gh.mul(&BElement::basis(x, 1, 1)).to_string(), "g_2*h^2");
    assert!(gh.mul(&BElement::basis(x, 1, 1)).mul(&BElement::basis(x, 0, 1)).is_zero());
}

#[test]
fn pairing_of_g_with_c() {
    // z·g_s = δ_{p,-s} z and γ(xᵖ) = uᵖ⊗xᵖ.
    let r = refl(2, 1, 1);
    let (x, c) = (r.x(), r.c());
    for s in -1..=1 {
        for p in -1..=1 {
            for j in 0..2 {
                let v = r.pairing(&BElement::basis(x, s, 0), &Element::gens(c, p, j)).unwrap();
                let expect = if s == -p && j == 0 { x.one() } else { x.zero() };
                assert_eq!(v, expect, "g_{s} at u^{p} w^{j}");
            }
        }
    }
}

#[test]
fn theta_x_on_y() {
    let r = refl(3, 2, 1);
    let y = parse_element("y", r.x()).unwrap();
    assert_eq!(r.theta_x_via_dual(&y), y.scale(r.x().lambda(2)));
}

#[test]
fn suites_pass() {
    for (n, m, mu, p) in [(2u32, 1u32, "1", 2u32), (3, 1, "1", 2), (3, 2, "z", 1), (3, 1, "0", 1), (4, 3, "2", 1)] {
        let r = Reflection::build(n, m, 1, parse_scalar(mu, n).unwrap(), p).unwrap();
        let bad = failures(&r.verify_all(Window::new(p)));
        assert!(bad.is_empty(), "n={n} m={m} mu={mu}: {bad:#?}");
    }
}

fn b_elem(x: &Pres, coeffs: &[i64]) -> BElement {
    let n = x.n() as usize;
    BElement::from_terms(
        x,
        coeffs.iter().enumerate().map(|(i, c)| (((i / n) as i64 - 1, (i % n) as u32), Scalar::from_int(x.field(), *c))),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn b_product_is_associative_and_acts(
        c1 in prop::collection::vec(-2i64..=2, 9),
        c2 in prop::collection::vec(-2i64..=2, 9),
        c3 in prop::collection::vec(-2i64..=2, 9),
    ) {
        let r = refl(3, 1, 1);
        let x = r.x();
        let (b1, b2, b3) = (b_elem(x, &c1), b_elem(x, &c2), b_elem(x, &c3));
        prop_assert_eq!(b1.mul(&b2).mul(&b3), b1.mul(&b2.mul(&b3)));
        for mono in Window::new(3).monomials(3) {
            let z = Element::monomial(x, mono);
            prop_assert_eq!(r.b_act(&z, &b1.mul(&b2)), r.b_act(&r.b_act(&z, &b1), &b2));
        }
    }

    #[test]
    fn ahat_bracket_is_bilinear(
        c1 in prop::collection::vec(-2i64..=2, 6),
        c2 in prop::collection::vec(-2i64..=2, 6),
        k in -3i64..=3,
    ) {
        let r = refl(2, 1, 1);
        let x = r.x();
        let mons = Window::new(1).monomials(2);
        let make = |cs: &[i64]| FiniteDual::from_terms(x, mons.iter().copied().zip(cs.iter().map(|c| Scalar::from_int(x.field(), *c))));
        let (w1, w2) = (make(&c1), make(&c2));
        let kk = Scalar::from_int(x.field(), k);
        let w3 = r.hat_basis(Monomial::new(1, 0));
        prop_assert_eq!(
            r.bracket_ahat(&w1.add(&w2.scale(&kk)), &w3),
            r.bracket_ahat(&w1, &w3).add(&r.bracket_ahat(&w2, &w3).scale(&kk))
        );
        prop_assert_eq!(
            r.bracket_b(&w3, &w1.add(&w2.scale(&kk))).unwrap(),
            r.bracket_b(&w3, &w1).unwrap().add(&r.bracket_b(&w3, &w2).unwrap().scale(&kk))
        );
    }
}
