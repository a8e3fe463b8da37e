use super::*;
use crate::qalgebra::parse_element;
use crate::scalar::CyclotomicField;

fn obj(n: u32, m: u32, mu: i64) -> Arc<GaloisObject> {
    let f = CyclotomicField::get(n);
    GaloisObject::build(n, m, 1, Scalar::from_int(&f, mu), 2).unwrap()
}

fn lit(g: &GaloisObject, s: &str) -> Element {
    parse_element(s, g.x()).unwrap()
}

fn alit(g: &GaloisObject, s: &str) -> Element {
    parse_element(s, g.a()).unwrap()
}

#[test]
fn coaction_on_generators() {
    let g = obj(3, 1, 1);
    let x1 = Monomial::new(1, 0);
    assert_eq!(g.alpha_monomial(x1).to_string(), "x (x) a");
    assert_eq!(g.alpha(&Element::one(g.x())), Tensor::unit(&[g.x().clone(), g.a().clone()]));
    // (y⊗a + 1⊗b)² by hand: (1⊗b)(y⊗a) = y⊗ba = λ⁻¹ y⊗ab.
    let y = lit(&g, "y");
    let (xa, xb) = (Tensor::pure([&y, &alit(&g, "a")]), Tensor::pure([&Element::one(g.x()), &alit(&g, "b")]));
    let by_hand = xa.mul(&xa).add(&xa.mul(&xb)).add(&xb.mul(&xa)).add(&xb.mul(&xb));
    let expect = Tensor::pure([&lit(&g, "y^2"), &alit(&g, "a^2")])
        .add(&Tensor::pure([&y, &alit(&g, "a*b")]).scale(&(&g.x().one() + g.x().lambda(-1))))
        .add(&Tensor::pure([&Element::one(g.x()), &alit(&g, "b^2")]));
    assert_eq!(by_hand, expect);
    assert_eq!(g.alpha(&lit(&g, "y^2")), expect);
}

#[test]
fn beta_values_and_inverse_galois_map() {
    let g = obj(2, 1, 1);
    let a1 = Monomial::new(1, 0);
    assert_eq!(g.beta_monomial(a1).to_string(), "x^-1 (x) x");
    assert_eq!(g.beta(&Element::one(g.a())), Tensor::unit(&[g.x().clone(), g.x().clone()]));
    let xa = [g.x().clone(), g.a().clone()];
    let t = Tensor::basis(&xa, [Monomial::ONE, a1]);
    assert_eq!(g.galois_v_inv(&t), (*g.beta_monomial(a1)).clone());
    // β(ab) from the op-product of β(a) and β(b).
    let b1 = Monomial::new(0, 1);
    let ab = g.beta(&alit(&g, "a*b"));
    assert_eq!(ab, g.beta_monomial(a1).mul_with(&g.beta_monomial(b1), [true, false]));
    // z_(0) z_(1)^[1] ⊗ z_(1)^[2] = 1⊗z for z = x, y.
    for z in [a1, b1] {
        let mut acc = Tensor::zero(&[g.x().clone(), g.x().clone()]);
        for (k, c) in g.alpha_monomial(z).terms() {
            let left = Tensor::basis(&[g.x().clone(), g.x().clone()], [k[0], Monomial::ONE]);
            acc = acc.add(&left.mul(&g.beta_monomial(k[1])).scale(c));
        }
        assert_eq!(acc, Tensor::basis(&[g.x().clone(), g.x().clone()], [Monomial::ONE, z]));
    }
}

#[test]
fn functionals_and_modular_data_match_table() {
    for (n, m) in [(2, 1), (3, 1), (3, 2), (5, 2)] {
        let g = obj(n, m, 1);
        let top = Monomial::new(0, n - 1);
        assert!(g.phi_x().at(top).is_one());
        let (n, mi) = (n as i64, m as i64);
        let psi_top = Monomial::new(mi * (1 - n), (n - 1) as u32);
        assert_eq!(g.psi_x().at(psi_top), *g.x().lambda(-mi));
        assert_eq!(*g.delta_x(), Element::gens(g.x(), (n - 1) * mi, 0), "n={n} m={m}");
    }
}

#[test]
fn automorphisms_on_generators() {
    let g = obj(3, 1, 1);
    let (x1, y1) = (Monomial::new(1, 0), Monomial::new(0, 1));
    assert_eq!(g.sigma_x().apply_monomial(x1), lit(&g, "z^2*x"));
    assert_eq!(g.sigma_x().apply_monomial(y1), lit(&g, "y"));
    assert_eq!(g.sigma_x_solved().apply_monomial(x1), lit(&g, "z^-1*x"));
    assert_eq!(g.theta_x().apply_monomial(y1).to_string(), "z^1*y");
    assert_eq!(g.theta_x().apply(&Element::one(g.x())), Element::one(g.x()));
    // x commutes with powers of x, so σ′_X(x) = σ_X(x).
    assert_eq!(g.sigma_x_prime().apply_monomial(x1), lit(&g, "z^-1*x"));
    assert_eq!(g.theta_x_definitional(&lit(&g, "x")), lit(&g, "x"));
    assert_eq!(g.theta_x_definitional(&lit(&g, "y")), lit(&g, "z*y"));
}

#[test]
fn miyashita_ulbrich_examples() {
    let g = obj(3, 1, 2);
    let a = alit(&g, "a");
    assert_eq!(g.miyashita_ulbrich(&lit(&g, "x"), &a), lit(&g, "x"));
    assert_eq!(g.miyashita_ulbrich(&Element::one(g.x()), &a), Element::one(g.x()));
}

#[test]
fn cocycle_examples() {
    let g = obj(3, 1, 2);
    let c = Cocycle::new(&g);
    let mu = g.mu();
    assert!(c.eta(Monomial::new(2, 0), Monomial::new(-1, 0)).unwrap().is_one());
    let (q, r) = (1u32, 2i64);
    let v = c.eta(Monomial::new(0, q), Monomial::new(r, 3 - q)).unwrap();
    assert_eq!(v, &mu * g.x().lambda(-r * q as i64));
    assert!(c.eta(Monomial::new(0, 1), Monomial::new(0, 1)).unwrap().is_zero());
}

#[test]
fn representation_y_matrix_for_n2() {
    let f = CyclotomicField::get(2);
    let x = Presentation::galois_object(2, 1, 1, Scalar::one(&f)).unwrap();
    let rep = Representation::new(&x);
    for p in -2i64..=2 {
        let sign = Scalar::from_int(&f, if p % 2 == 0 { 1 } else { -1 });
        assert_eq!(rep.act_y(&rep.basis(p, 0)), BTreeMap::from([((p, 1), sign.clone())]));
        assert_eq!(rep.act_y(&rep.basis(p, 1)), BTreeMap::from([((p + 2, 0), sign)]));
    }
}

#[test]
fn no_antipode_witness_depends_on_mu() {
    for mu in [1, 2, 0] {
        let g = obj(3, 2, mu);
        let (lhs, rhs) = g.no_antipode_values();
        assert_eq!(lhs, Element::scalar(g.x(), Scalar::from_int(g.x().field(), -mu)));
        assert_eq!(lhs == rhs, mu == 0);
        assert!(g.no_antipode_witness().is_none());
    }
}

#[test]
fn suites_pass_on_small_window() {
    for (n, m, mu) in [(2, 1, 1), (3, 1, 1), (3, 2, 0)] {
        let g = obj(n, m, mu);
        for c in g.verify_all(Window::new(1)) {
            assert!(c.passed(), "{n} {m} {mu}: {} {:?}", c.name, c.witness);
        }
    }
}
