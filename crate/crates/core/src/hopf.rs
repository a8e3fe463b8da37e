//! Hopf structure on A(n,m,λ) and on the reflected C: Δ(g1) = g1⊗g1,
//! Δ(g2) = g2⊗g1ᵐ + 1⊗g2, S(g1) = g1⁻¹, S(g2) = -g2 g1⁻ᵐ.
//!
//! φ, δ, σ, τ are solved from their defining identities. For A the closed
//! form φ(aᵖbᵠ) = δ_{p,0}δ_{q,n-1} is kept only as a cross-check.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::qalgebra::{AlgebraKind, Element, Functional, LinearMap, Monomial, MonomialHom, Pres, Tensor, Window};
use crate::report::{compare, run_check, CheckResult};
use crate::scalar::Scalar;
use crate::solve::{functional_from_values, invariant_functionals, SingletonPairing};

pub struct HopfStructure {
    pres: Pres,
    coproduct: MonomialHom<2>,
    antipode: LinearMap,
    antipode_inv: LinearMap,
    phi: Functional,
    phi_values: BTreeMap<Monomial, Scalar>,
    phi_closed: Option<Functional>,
    psi: Functional,
    delta: Element,
    delta_inv: Element,
    sigma: LinearMap,
    sigma_inv: LinearMap,
    sigma_prime: LinearMap,
    tau: Scalar,
    psi_phi_delta: Scalar,
    solve_window: Window,
}

fn counit_at(m: Monomial) -> bool {
    m.q == 0
}

impl HopfStructure {
    /// Builds the structure on an A- or C-type presentation, solving φ on
    /// `solve_window`.
    pub fn new(pres: &Pres, solve_window: Window) -> Result<Arc<HopfStructure>> {
        if pres.kind() == AlgebraKind::GaloisObject {
            return Err(Error::Config("the Galois object carries no Hopf structure".into()));
        }
        let m = pres.m() as i64;
        let g = |p, q| Element::gens(pres, p, q);
        let coproduct = MonomialHom::new(
            "Delta",
            pres,
            [false, false],
            Tensor::pure([&g(1, 0), &g(1, 0)]),
            Tensor::pure([&g(-1, 0), &g(-1, 0)]),
            Tensor::pure([&g(0, 1), &g(m, 0)]).add(&Tensor::pure([&g(0, 0), &g(0, 1)])),
        )?;
        let antipode_hom = MonomialHom::new(
            "S",
            pres,
            [true],
            Tensor::from_element(&g(-1, 0)),
            Tensor::from_element(&g(1, 0)),
            Tensor::from_element(&g(0, 1).mul(&g(-m, 0)).neg()),
        )?;
        let antipode = LinearMap::from_hom(Arc::new(antipode_hom));
        let reach = (pres.m() * pres.n()) as i64 + 1;
        let antipode_inv = antipode.monomial_inverse("S^-1", reach);

        // Left invariance (ι⊗φ)Δ(e) = φ(e)·1.
        let sols = invariant_functionals(pres, solve_window, |e| (*coproduct.apply_monomial(e)).clone(), 1);
        if sols.len() != 1 {
            return Err(Error::Verification(format!(
                "left invariant functional is not unique on the solve window ({} solutions)",
                sols.len()
            )));
        }
        let top = Monomial::new(0, pres.n() - 1);
        let raw = &sols[0];
        let Some(scale) = raw.get(&top) else {
            return Err(Error::Verification("left integral vanishes on the top monomial".into()));
        };
        let scale = scale.inv()?;
        let phi_values: BTreeMap<Monomial, Scalar> = raw.iter().map(|(m, c)| (*m, c * &scale)).collect();
        let phi = functional_from_values("phi", pres, &phi_values);
        let phi_closed = (pres.kind() == AlgebraKind::QuantumGroup).then(|| {
            let (one, zero) = (pres.one(), pres.zero());
            Functional::new("phi_closed", pres, move |m| if m == top { one.clone() } else { zero.clone() })
        });
        if phi_values.len() != 1 {
            return Err(Error::Verification("left integral is not supported on one monomial".into()));
        }
        let support = *phi_values.keys().next().expect("nonempty");

        // Modular element: (φ⊗ι)Δ(s) = φ(s)·δ on the support monomial.
        let delta = coproduct
            .apply_monomial(support)
            .contract(0, |x| phi.at(x))
            .scale(&phi.at(support).inv()?);
        let delta_inv = delta
            .inverse()
            .map_err(|_| Error::Verification(format!("modular element {delta} is not invertible")))?;

        let pairing = SingletonPairing::new(phi.clone(), support)?;
        let sigma = pairing.modular_automorphism("sigma");
        let sigma_inv = sigma.monomial_inverse("sigma^-1", reach);
        let sigma_prime = {
            let (s, d, di) = (sigma.clone(), delta.clone(), delta_inv.clone());
            let p = pres.clone();
            LinearMap::new("sigma'", pres, pres, move |x| d.mul(&s.apply(&Element::monomial(&p, x))).mul(&di))
        };

        let s2 = antipode.apply(&antipode.apply_monomial(support));
        let tau = &phi.eval(&s2) * &phi.at(support).inv()?;
        if tau.is_zero() {
            return Err(Error::Verification("scaling constant vanishes".into()));
        }

        let psi = phi.compose(&antipode);
        // ψ = c·φ(·δ); c is read off at the support of φ(·δ).
        let phi_delta = phi.right_translate(&delta);
        let psi_support = Element::monomial(pres, support).mul(&delta_inv);
        let (ps, _) = psi_support.as_single_term().expect("δ⁻¹ is a monomial");
        let psi_phi_delta = &psi.at(ps) * &phi_delta.at(ps).inv()?;

        Ok(Arc::new(HopfStructure {
            pres: pres.clone(),
            coproduct,
            antipode,
            antipode_inv,
            phi,
            phi_values,
            phi_closed,
            psi,
            delta,
            delta_inv,
            sigma,
            sigma_inv,
            sigma_prime,
            tau,
            psi_phi_delta,
            solve_window,
        }))
    }

    pub fn pres(&self) -> &Pres {
        &self.pres
    }

    pub fn coproduct_hom(&self) -> &MonomialHom<2> {
        &self.coproduct
    }

    pub fn coproduct(&self, e: &Element) -> Tensor<2> {
        self.coproduct.apply(e)
    }

    pub fn coproduct_monomial(&self, m: Monomial) -> Arc<Tensor<2>> {
        self.coproduct.apply_monomial(m)
    }

    pub fn counit_monomial(&self, m: Monomial) -> Scalar {
        if counit_at(m) {
            self.pres.one()
        } else {
            self.pres.zero()
        }
    }

    pub fn counit(&self, e: &Element) -> Scalar {
        let mut acc = self.pres.zero();
        for (m, c) in e.terms() {
            if counit_at(*m) {
                acc = &acc + c;
            }
        }
        acc
    }

    pub fn counit_functional(&self) -> Functional {
        let (one, zero) = (self.pres.one(), self.pres.zero());
        Functional::new("eps", &self.pres, move |m| if counit_at(m) { one.clone() } else { zero.clone() })
    }

    pub fn antipode(&self) -> &LinearMap {
        &self.antipode
    }

    pub fn antipode_inv(&self) -> &LinearMap {
        &self.antipode_inv
    }

    pub fn left_integral(&self) -> &Functional {
        &self.phi
    }

    /// Nonzero values of φ on the basis.
    pub fn phi_values(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.phi_values
    }

    pub fn phi_support(&self) -> Monomial {
        *self.phi_values.keys().next().expect("phi has a support")
    }

    /// ψ = φ∘S.
    pub fn right_integral(&self) -> &Functional {
        &self.psi
    }

    pub fn modular_element(&self) -> &Element {
        &self.delta
    }

    pub fn modular_element_inv(&self) -> &Element {
        &self.delta_inv
    }

    pub fn sigma(&self) -> &LinearMap {
        &self.sigma
    }

    pub fn sigma_inv(&self) -> &LinearMap {
        &self.sigma_inv
    }

    /// σ'(x) = δσ(x)δ⁻¹.
    pub fn sigma_prime(&self) -> &LinearMap {
        &self.sigma_prime
    }

    pub fn tau(&self) -> &Scalar {
        &self.tau
    }

    /// The constant c in ψ = c·φ(·δ).
    pub fn psi_normalization(&self) -> &Scalar {
        &self.psi_phi_delta
    }

    pub fn solve_window(&self) -> Window {
        self.solve_window
    }

    pub fn mono(&self, m: Monomial) -> Element {
        Element::monomial(&self.pres, m)
    }

    /// Solved structure data as canonical literals.
    pub fn table(&self, prefix: &str) -> BTreeMap<String, String> {
        let [g1, g2] = self.pres.names();
        let mut t = BTreeMap::new();
        let mut phi = String::new();
        for (m, c) in &self.phi_values {
            let _ = write!(phi, "{}={} ", self.pres.format_monomial(*m), c);
        }
        t.insert(format!("{prefix}phi support"), phi.trim_end().to_string());
        t.insert(format!("{prefix}delta"), self.delta.to_string());
        for (name, m) in [(g1, Monomial::new(1, 0)), (g2, Monomial::new(0, 1))] {
            t.insert(format!("{prefix}sigma({name})"), self.sigma.apply_monomial(m).to_string());
            t.insert(format!("{prefix}S({name})"), self.antipode.apply_monomial(m).to_string());
        }
        t.insert(format!("{prefix}tau"), self.tau.to_string());
        t.insert(format!("{prefix}psi/phi(.delta)"), self.psi_phi_delta.to_string());
        t
    }

    /// Hopf axioms and the defining identities of φ, ψ, δ, σ, τ on `w`
    /// (invariance of the solved functionals is re-checked on w+2).
    pub fn verify_axioms(&self, w: Window) -> Vec<CheckResult> {
        let group = match self.pres.kind() {
            AlgebraKind::Reflected => "hopf-C",
            _ => "hopf",
        };
        let n = self.pres.n();
        let mons = w.monomials(n);
        let wide = w.grow(2).monomials(n);
        let pairs: Vec<(Monomial, Monomial)> =
            mons.iter().flat_map(|a| mons.iter().map(move |b| (*a, *b))).collect();
        let pres = &self.pres;
        let fmt = |m: Monomial| pres.format_monomial(m);
        let fmt2 = |(a, b): (Monomial, Monomial)| format!("{} (x) {}", fmt(a), fmt(b));
        let delta_op = |m: Monomial| (*self.coproduct.apply_monomial(m)).clone();
        let one = Element::one(pres);
        let mut out = Vec::new();

        out.push(run_check(group, "coassociativity", mons.clone(), |&m| {
            let d = self.coproduct.apply_monomial(m);
            let lhs = d.expand(0, delta_op);
            let rhs = d.expand(1, delta_op);
            compare(fmt(m), &lhs, &rhs)
        }));
        out.push(run_check(group, "counit", mons.clone(), |&m| {
            let d = self.coproduct.apply_monomial(m);
            let e = self.mono(m);
            let l = d.contract(0, |x| self.counit_monomial(x));
            let r = d.contract(1, |x| self.counit_monomial(x));
            compare(fmt(m), &l, &e).or_else(|| compare(fmt(m), &r, &e))
        }));
        out.push(run_check(group, "antipode", mons.clone(), |&m| {
            let d = self.coproduct.apply_monomial(m);
            let eps = Element::scalar(pres, self.counit_monomial(m));
            let l = d.map_leg(0, pres, |x| self.antipode.apply_monomial(x)).multiply_legs();
            let r = d.map_leg(1, pres, |x| self.antipode.apply_monomial(x)).multiply_legs();
            compare(fmt(m), &l, &eps).or_else(|| compare(fmt(m), &r, &eps))
        }));
        out.push(run_check(group, "antipode-inverse", mons.clone(), |&m| {
            let e = self.mono(m);
            let a = self.antipode.apply(&self.antipode_inv.apply_monomial(m));
            let b = self.antipode_inv.apply(&self.antipode.apply_monomial(m));
            compare(fmt(m), &a, &e).or_else(|| compare(fmt(m), &b, &e))
        }));
        out.push(run_check(group, "coproduct-homomorphism", pairs.clone(), |&(a, b)| {
            let (ea, eb) = (self.mono(a), self.mono(b));
            let lhs = self.coproduct(&ea.mul(&eb));
            let rhs = self.coproduct.apply_monomial(a).mul(&self.coproduct.apply_monomial(b));
            compare(fmt2((a, b)), &lhs, &rhs)
        }));
        out.push(run_check(group, "antipode-antihomomorphism", pairs.clone(), |&(a, b)| {
            let (ea, eb) = (self.mono(a), self.mono(b));
            let lhs = self.antipode.apply(&ea.mul(&eb));
            let rhs = self.antipode.apply_monomial(b).mul(&self.antipode.apply_monomial(a));
            compare(fmt2((a, b)), &lhs, &rhs)
        }));
        // T₁(a⊗b) = Δ(a)(1⊗b), T₁⁻¹(a⊗b) = ((ι⊗S)Δ(a))(1⊗b);
        // T₂(a⊗b) = (a⊗1)Δ(b), T₂⁻¹(a⊗b) = (a⊗1)((S⊗ι)Δ(b)).
        out.push(run_check(group, "galois-maps-bijective", pairs.clone(), |&(a, b)| {
            let legs = [pres.clone(), pres.clone()];
            let t = Tensor::basis(&legs, [a, b]);
            let s = |x| self.antipode.apply_monomial(x);
            let t1 = |t: &Tensor<2>| {
                let mut acc = Tensor::zero(&legs);
                for (k, c) in t.terms() {
                    let r = self.coproduct.apply_monomial(k[0]).mul(&Tensor::basis(&legs, [Monomial::ONE, k[1]]));
                    acc = acc.add(&r.scale(c));
                }
                acc
            };
            let t1_inv = |t: &Tensor<2>| {
                let mut acc = Tensor::zero(&legs);
                for (k, c) in t.terms() {
                    let d = self.coproduct.apply_monomial(k[0]).map_leg(1, pres, s);
                    acc = acc.add(&d.mul(&Tensor::basis(&legs, [Monomial::ONE, k[1]])).scale(c));
                }
                acc
            };
            let t2 = |t: &Tensor<2>| {
                let mut acc = Tensor::zero(&legs);
                for (k, c) in t.terms() {
                    let r = Tensor::basis(&legs, [k[0], Monomial::ONE]).mul(&self.coproduct.apply_monomial(k[1]));
                    acc = acc.add(&r.scale(c));
                }
                acc
            };
            let t2_inv = |t: &Tensor<2>| {
                let mut acc = Tensor::zero(&legs);
                for (k, c) in t.terms() {
                    let d = self.coproduct.apply_monomial(k[1]).map_leg(0, pres, s);
                    acc = acc.add(&Tensor::basis(&legs, [k[0], Monomial::ONE]).mul(&d).scale(c));
                }
                acc
            };
            let input = fmt2((a, b));
            compare(&input, &t1(&t1_inv(&t)), &t)
                .or_else(|| compare(&input, &t1_inv(&t1(&t)), &t))
                .or_else(|| compare(&input, &t2(&t2_inv(&t)), &t))
                .or_else(|| compare(&input, &t2_inv(&t2(&t)), &t))
        }));
        out.push(run_check(group, "phi-left-invariance", wide.clone(), |&m| {
            let lhs = self.coproduct.apply_monomial(m).contract(1, |x| self.phi.at(x));
            compare(fmt(m), &lhs, &one.scale(&self.phi.at(m)))
        }));
        if let Some(closed) = &self.phi_closed {
            out.push(run_check(group, "phi-closed-form", wide.clone(), |&m| {
                compare(fmt(m), &self.phi.at(m), &closed.at(m))
            }));
        }
        out.push(run_check(group, "psi-right-invariance", wide.clone(), |&m| {
            let lhs = self.coproduct.apply_monomial(m).contract(0, |x| self.psi.at(x));
            compare(fmt(m), &lhs, &one.scale(&self.psi.at(m)))
        }));
        out.push(run_check(group, "modular-element", wide.clone(), |&m| {
            let lhs = self.coproduct.apply_monomial(m).contract(0, |x| self.phi.at(x));
            compare(fmt(m), &lhs, &self.delta.scale(&self.phi.at(m)))
        }));
        out.push(run_check(group, "modular-element-grouplike", vec![()], |_| {
            let lhs = self.coproduct(&self.delta);
            let rhs = Tensor::pure([&self.delta, &self.delta]);
            compare("delta", &lhs, &rhs).or_else(|| compare("eps(delta)", &self.counit(&self.delta), &pres.one()))
        }));
        out.push(run_check(group, "psi-is-phi-delta", wide.clone(), |&m| {
            let rhs = &self.psi_phi_delta * &self.phi.eval(&self.mono(m).mul(&self.delta));
            compare(fmt(m), &self.psi.at(m), &rhs)
        }));
        out.push(run_check(group, "sigma-kms", pairs.clone(), |&(a, b)| {
            let (ea, eb) = (self.mono(a), self.mono(b));
            let lhs = self.phi.eval(&ea.mul(&eb));
            let rhs = self.phi.eval(&eb.mul(&self.sigma.apply_monomial(a)));
            compare(fmt2((a, b)), &lhs, &rhs)
        }));
        out.push(run_check(group, "sigma-automorphism", pairs.clone(), |&(a, b)| {
            let (ea, eb) = (self.mono(a), self.mono(b));
            let lhs = self.sigma.apply(&ea.mul(&eb));
            let rhs = self.sigma.apply_monomial(a).mul(&self.sigma.apply_monomial(b));
            let inv = self.sigma_inv.apply(&self.sigma.apply_monomial(a));
            compare(fmt2((a, b)), &lhs, &rhs)
                .or_else(|| compare(fmt(a), &self.phi.eval(&self.sigma.apply_monomial(a)), &self.phi.at(a)))
                .or_else(|| compare(fmt(a), &inv, &ea))
        }));
        out.push(run_check(group, "sigma-prime-kms", pairs, |&(a, b)| {
            let (ea, eb) = (self.mono(a), self.mono(b));
            let lhs = self.psi.eval(&ea.mul(&eb));
            let rhs = self.psi.eval(&eb.mul(&self.sigma_prime.apply_monomial(a)));
            compare(fmt2((a, b)), &lhs, &rhs)
        }));
        out.push(run_check(group, "scaling-constant", wide, |&m| {
            let s2 = self.antipode.apply(&self.antipode.apply_monomial(m));
            compare(fmt(m), &self.phi.eval(&s2), &(&self.tau * &self.phi.at(m)))
        }));
        out.push(run_check(group, "generator-coproducts", vec![()], |_| {
            let mm = pres.m() as i64;
            let g = |p, q| Element::gens(pres, p, q);
            let d1 = Tensor::pure([&g(1, 0), &g(1, 0)]);
            let d2 = Tensor::pure([&g(0, 1), &g(mm, 0)]).add(&Tensor::pure([&g(0, 0), &g(0, 1)]));
            compare("g1", &self.coproduct(&g(1, 0)), &d1)
                .or_else(|| compare("g2", &self.coproduct(&g(0, 1)), &d2))
        }));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::{parse_element, Presentation};
    use crate::scalar::CyclotomicField;

    fn a(n: u32, m: u32) -> Arc<HopfStructure> {
        let p = Presentation::quantum_group(n, m, 1).unwrap();
        HopfStructure::new(&p, Window::new(3 + m * n)).unwrap()
    }

    #[test]
    fn coproduct_examples() {
        for (n, m) in [(2u32, 1u32), (3, 1), (3, 2), (5, 2)] {
            let h = a(n, m);
            let p = h.pres().clone();
            let lit = |s: &str| parse_element(s, &p).unwrap();
            assert_eq!(h.coproduct(&lit("a^2")), Tensor::pure([&lit("a^2"), &lit("a^2")]));
            let am = Element::gens(&p, m as i64, 0);
            let b = lit("b");
            let one = lit("1");
            let db = Tensor::pure([&b, &am]).add(&Tensor::pure([&one, &b]));
            assert_eq!(h.coproduct(&b), db);
            // Δ(b²) = b²⊗a²ᵐ + (1+λ⁻ᵐ) b⊗aᵐb + 1⊗b², by direct tensor products.
            let b2 = b.mul(&b);
            let a2m = am.mul(&am);
            let ambb = am.mul(&b);
            let c = &p.one() + p.lambda(-(m as i64));
            let expect = Tensor::pure([&b2, &a2m])
                .add(&Tensor::pure([&b, &ambb]).scale(&c))
                .add(&Tensor::pure([&one, &b2]));
            assert_eq!(h.coproduct(&b2), expect);
        }
    }

    #[test]
    fn counit_and_antipode_examples() {
        let h = a(3, 2);
        let p = h.pres().clone();
        let lit = |s: &str| parse_element(s, &p).unwrap();
        assert!(h.counit(&lit("a^5")).is_one());
        assert!(h.counit(&lit("a^2*b")).is_zero());
        assert_eq!(h.antipode().apply(&lit("b")), lit("-b*a^-2"));
        // S(ab) = S(b)S(a) = -b a^{-m} a^{-1} = -λ^{m+1} a^{-m-1} b.
        let m = 2i64;
        let expect = Element::term(&p, -p.lambda(m + 1).clone(), Monomial::new(-m - 1, 1));
        assert_eq!(h.antipode().apply(&lit("a*b")), expect);
    }

    #[test]
    fn integral_values() {
        for n in 2..6 {
            let h = a(n, 1);
            let p = h.pres().clone();
            let phi = h.left_integral();
            assert!(phi.at(Monomial::new(0, n - 1)).is_one());
            assert!(phi.at(Monomial::new(1, n - 1)).is_zero());
            assert!(phi.at(Monomial::ONE).is_zero());
            let _ = p;
        }
    }

    #[test]
    fn structure_of_smallest_case() {
        // A(2,1,-1): δ = a, σ(a) = -a.
        let h = a(2, 1);
        let p = h.pres().clone();
        assert_eq!(*h.modular_element(), Element::gens(&p, 1, 0));
        assert_eq!(h.sigma().apply_monomial(Monomial::new(1, 0)), Element::gens(&p, 1, 0).neg());
        // τ from φ∘S² on the whole window
        for m in Window::new(4).monomials(2) {
            let e = Element::monomial(&p, m);
            let s2 = h.antipode().apply(&h.antipode().apply(&e));
            assert_eq!(h.left_integral().eval(&s2), h.tau() * &h.left_integral().eval(&e));
        }
    }

    #[test]
    fn modular_element_general_pattern() {
        for (n, m) in [(3u32, 1u32), (3, 2), (4, 3), (5, 2)] {
            let h = a(n, m);
            let p = h.pres().clone();
            assert_eq!(*h.modular_element(), Element::gens(&p, (m * (n - 1)) as i64, 0));
        }
    }

    #[test]
    fn axioms_hold_on_small_windows() {
        let h = a(3, 1);
        for c in h.verify_axioms(Window::new(2)) {
            assert!(c.passed(), "{}: {:?}", c.name, c.witness);
        }
        let h = a(2, 1);
        let r = h.verify_axioms(Window::new(0));
        assert!(r.iter().all(|c| c.passed()));
    }

    #[test]
    fn reflected_presentation_is_hopf() {
        let f = CyclotomicField::get(2);
        let c = Presentation::reflected(2, 1, 1, Scalar::one(&f)).unwrap();
        let h = HopfStructure::new(&c, Window::new(5)).unwrap();
        for chk in h.verify_axioms(Window::new(3)) {
            assert!(chk.passed(), "{}: {:?}", chk.name, chk.witness);
        }
    }

    #[test]
    fn galois_object_is_refused() {
        let f = CyclotomicField::get(2);
        let x = Presentation::galois_object(2, 1, 1, Scalar::one(&f)).unwrap();
        assert!(matches!(HopfStructure::new(&x, Window::new(3)), Err(Error::Config(_))));
    }

    #[test]
    fn non_coprime_m_breaks_the_coproduct() {
        // λᵐ is not primitive, so Δ(b)ⁿ ≠ 0.
        let p = Presentation::quantum_group(4, 2, 1).unwrap();
        assert!(matches!(HopfStructure::new(&p, Window::new(3)), Err(Error::Verification(_))));
    }
}
