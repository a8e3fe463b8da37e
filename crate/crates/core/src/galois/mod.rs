//! The Galois object X(n,m,λ,μ): xy = λyx, yⁿ = μx^{mn}, with right
//! A-coaction α(x) = x⊗a, α(y) = y⊗aᵐ + 1⊗b and the inverse data
//! β̃(a) = x⁻¹⊗x, β̃(b) = -yx⁻ᵐ⊗xᵐ + 1⊗y in X^op⊗X.
//!
//! ψ_X and δ_X are solved. φ_X is read off its defining identity
//! (ι⊗φ)α(x) = φ_X(x)1. σ_X, θ_X come from the closed forms and are checked
//! against the solved modular automorphism and against x ↦ σ_X(δ̂·x).

mod cocycle;
mod representation;
mod suite;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use cocycle::Cocycle;
pub use representation::{Representation, Vector};
pub use suite::IDENTITY_LABELS;

use crate::error::{Error, Result};
use crate::hopf::HopfStructure;
use crate::qalgebra::{Element, Functional, LinearMap, Monomial, MonomialHom, Pres, Presentation, Tensor, Window};
use crate::scalar::Scalar;
use crate::solve::{functional_from_values, invariant_functionals, SingletonPairing};

pub struct GaloisObject {
    hopf: Arc<HopfStructure>,
    x: Pres,
    alpha: Arc<MonomialHom<2>>,
    beta: MonomialHom<2>,
    phi_x: Functional,
    psi_x: Functional,
    psi_values: BTreeMap<Monomial, Scalar>,
    psi_x_raw_dim: usize,
    delta_x: Element,
    delta_x_inv: Element,
    sigma_x: LinearMap,
    sigma_x_inv: LinearMap,
    sigma_x_solved: LinearMap,
    sigma_x_prime: LinearMap,
    theta_x: LinearMap,
    theta_x_inv: LinearMap,
    hat_delta: Functional,
    sigma_prime_inv: LinearMap,
}

impl GaloisObject {
    /// X(n,m,ζᵏ,μ) over A(n,m,ζᵏ). `p` is the verification window; solving
    /// happens on p + mn.
    pub fn build(n: u32, m: u32, lambda_exp: i64, mu: Scalar, p: u32) -> Result<Arc<GaloisObject>> {
        let x = Presentation::galois_object(n, m, lambda_exp, mu)?;
        let a = Presentation::quantum_group(n, m, lambda_exp)?;
        let hopf = HopfStructure::new(&a, Window::new(p + m * n))?;
        GaloisObject::new(hopf, &x)
    }

    pub fn new(hopf: Arc<HopfStructure>, x: &Pres) -> Result<Arc<GaloisObject>> {
        let a = hopf.pres().clone();
        if (a.n(), a.m(), a.lambda_exp()) != (x.n(), x.m(), x.lambda_exp()) {
            return Err(Error::PresentationMismatch(format!("{x} is not a Galois object over {a}")));
        }
        let (n, m) = (x.n(), x.m() as i64);
        let gx = |p, q| Element::gens(x, p, q);
        let ga = |p, q| Element::gens(&a, p, q);

        let alpha = MonomialHom::new(
            "alpha",
            x,
            [false, false],
            Tensor::pure([&gx(1, 0), &ga(1, 0)]),
            Tensor::pure([&gx(-1, 0), &ga(-1, 0)]),
            Tensor::pure([&gx(0, 1), &ga(m, 0)]).add(&Tensor::pure([&gx(0, 0), &ga(0, 1)])),
        )?;
        let y_xm = gx(0, 1).mul(&gx(-m, 0));
        let beta = MonomialHom::new(
            "beta",
            &a,
            [true, false],
            Tensor::pure([&gx(-1, 0), &gx(1, 0)]),
            Tensor::pure([&gx(1, 0), &gx(-1, 0)]),
            Tensor::pure([&y_xm.neg(), &gx(m, 0)]).add(&Tensor::pure([&gx(0, 0), &gx(0, 1)])),
        )?;
        let alpha_arc = Arc::new(alpha);

        // φ_X(x) is the coefficient of 1 in (ι⊗φ)α(x); the suite checks that
        // nothing else survives.
        let phi_x = {
            let (al, h) = (alpha_arc.clone(), hopf.clone());
            Functional::new("phi_X", x, move |mono| {
                al.apply_monomial(mono).contract(1, |c| h.left_integral().at(c)).coeff(Monomial::ONE)
            })
        };

        // Invariance (ψ_X⊗ι)α(x) = ψ_X(x)·1, solved on the hopf solve window.
        let sols = invariant_functionals(x, hopf.solve_window(), |e| (*alpha_arc.apply_monomial(e)).clone(), 0);
        let psi_x_raw_dim = sols.len();
        if sols.len() != 1 {
            return Err(Error::Verification(format!(
                "invariant functional on X is not unique on the solve window ({} solutions)",
                sols.len()
            )));
        }
        let raw = &sols[0];
        let top = Monomial::new(0, n - 1);
        let pairing = SingletonPairing::new(phi_x.clone(), top)?;
        let support: Vec<Monomial> = raw.keys().copied().collect();
        let raw_delta = pairing.represent(&support, |mono| raw.get(&mono).cloned().unwrap_or_else(|| x.zero()), false)?;
        let Some((dm, dc)) = raw_delta.as_single_term() else {
            return Err(Error::Verification(format!("modular element {raw_delta} of X is not a monomial")));
        };
        if dm.q != 0 {
            return Err(Error::Verification(format!("modular element {raw_delta} of X is not invertible")));
        }
        // Normalize δ_X to coefficient 1.
        let scale = dc.inv()?;
        let psi_values: BTreeMap<Monomial, Scalar> = raw.iter().map(|(k, c)| (*k, c * &scale)).collect();
        let psi_x = functional_from_values("psi_X", x, &psi_values);
        let delta_x = Element::monomial(x, dm);
        let delta_x_inv = delta_x.inverse()?;

        let closed = |name: &str, gx1: Scalar, gx1_inv: Scalar, gy: Scalar| -> Result<LinearMap> {
            let hom = MonomialHom::new(
                name,
                x,
                [false],
                Tensor::from_element(&gx(1, 0).scale(&gx1)),
                Tensor::from_element(&gx(-1, 0).scale(&gx1_inv)),
                Tensor::from_element(&gx(0, 1).scale(&gy)),
            )?;
            Ok(LinearMap::from_hom(Arc::new(hom)))
        };
        let lam = |e: i64| x.lambda(e).clone();
        let sigma_x = closed("sigma_X", lam(-1), lam(1), x.one())?;
        let sigma_x_inv = closed("sigma_X^-1", lam(1), lam(-1), x.one())?;
        let theta_x = closed("theta_X", x.one(), x.one(), lam(m))?;
        let theta_x_inv = closed("theta_X^-1", x.one(), x.one(), lam(-m))?;
        let sigma_x_solved = pairing.modular_automorphism("sigma_X(solved)");
        let sigma_x_prime = {
            let (s, d, di, xx) = (sigma_x.clone(), delta_x.clone(), delta_x_inv.clone(), x.clone());
            LinearMap::new("sigma'_X", x, x, move |mono| {
                d.mul(&s.apply(&Element::monomial(&xx, mono))).mul(&di)
            })
        };
        let hat_delta = {
            let h = hopf.clone();
            Functional::new("hat_delta", &a, move |c| h.counit(&h.sigma_inv().apply_monomial(c)))
        };
        let sigma_prime_inv = {
            let h = hopf.clone();
            let aa = a.clone();
            LinearMap::new("sigma'^-1", &a, &a, move |c| {
                let conj = h.modular_element_inv().mul(&Element::monomial(&aa, c)).mul(h.modular_element());
                h.sigma_inv().apply(&conj)
            })
        };

        Ok(Arc::new(GaloisObject {
            hopf,
            x: x.clone(),
            alpha: alpha_arc,
            beta,
            phi_x,
            psi_x,
            psi_values,
            psi_x_raw_dim,
            delta_x,
            delta_x_inv,
            sigma_x,
            sigma_x_inv,
            sigma_x_solved,
            sigma_x_prime,
            theta_x,
            theta_x_inv,
            hat_delta,
            sigma_prime_inv,
        }))
    }

    pub fn hopf(&self) -> &Arc<HopfStructure> {
        &self.hopf
    }

    pub fn a(&self) -> &Pres {
        self.hopf.pres()
    }

    pub fn x(&self) -> &Pres {
        &self.x
    }

    pub fn mu(&self) -> Scalar {
        self.x.mu()
    }

    pub fn xm(&self, m: Monomial) -> Element {
        Element::monomial(&self.x, m)
    }

    pub fn am(&self, m: Monomial) -> Element {
        Element::monomial(self.a(), m)
    }

    pub fn alpha_hom(&self) -> &MonomialHom<2> {
        &self.alpha
    }

    pub fn alpha(&self, e: &Element) -> Tensor<2> {
        self.alpha.apply(e)
    }

    pub fn alpha_monomial(&self, m: Monomial) -> Arc<Tensor<2>> {
        self.alpha.apply_monomial(m)
    }

    pub fn beta_hom(&self) -> &MonomialHom<2> {
        &self.beta
    }

    /// β(e) = e^{[1]}⊗e^{[2]} read as an element of X⊗X.
    pub fn beta(&self, e: &Element) -> Tensor<2> {
        self.beta.apply(e)
    }

    pub fn beta_monomial(&self, m: Monomial) -> Arc<Tensor<2>> {
        self.beta.apply_monomial(m)
    }

    fn xa_legs(&self) -> [Pres; 2] {
        [self.x.clone(), self.a().clone()]
    }

    fn xx_legs(&self) -> [Pres; 2] {
        [self.x.clone(), self.x.clone()]
    }

    /// V(x⊗y) = (x⊗1)α(y).
    pub fn galois_v(&self, t: &Tensor<2>) -> Tensor<2> {
        let legs = self.xa_legs();
        let mut acc = Tensor::zero(&legs);
        for (k, c) in t.terms() {
            let left = Tensor::basis(&legs, [k[0], Monomial::ONE]);
            acc = acc.add(&left.mul(&self.alpha_monomial(k[1])).scale(c));
        }
        acc
    }

    /// V⁻¹(x⊗a) = (x⊗1)β(a).
    pub fn galois_v_inv(&self, t: &Tensor<2>) -> Tensor<2> {
        let legs = self.xx_legs();
        let mut acc = Tensor::zero(&legs);
        for (k, c) in t.terms() {
            let left = Tensor::basis(&legs, [k[0], Monomial::ONE]);
            acc = acc.add(&left.mul(&self.beta_monomial(k[1])).scale(c));
        }
        acc
    }

    /// W(x⊗y) = α(x)(y⊗1).
    pub fn galois_w(&self, t: &Tensor<2>) -> Tensor<2> {
        let legs = self.xa_legs();
        let mut acc = Tensor::zero(&legs);
        for (k, c) in t.terms() {
            let right = Tensor::basis(&legs, [k[1], Monomial::ONE]);
            acc = acc.add(&self.alpha_monomial(k[0]).mul(&right).scale(c));
        }
        acc
    }

    /// W⁻¹(y⊗S(a)) = β(a)(1⊗y), i.e. W⁻¹(y⊗c) = β(S⁻¹c)(1⊗y).
    pub fn galois_w_inv(&self, t: &Tensor<2>) -> Tensor<2> {
        let legs = self.xx_legs();
        let mut acc = Tensor::zero(&legs);
        for (k, c) in t.terms() {
            let b = self.beta(&self.hopf.antipode_inv().apply_monomial(k[1]));
            let right = Tensor::basis(&legs, [Monomial::ONE, k[0]]);
            acc = acc.add(&b.mul(&right).scale(c));
        }
        acc
    }

    /// The Miyashita–Ulbrich action x·a = a^{[1]} x a^{[2]}.
    pub fn miyashita_ulbrich(&self, x: &Element, a: &Element) -> Element {
        let b = self.beta(a);
        let mut acc = Element::zero(&self.x);
        for (k, c) in b.terms() {
            acc = acc.add(&self.xm(k[0]).mul(x).mul(&self.xm(k[1])).scale(c));
        }
        acc
    }

    /// φ_X from (ι⊗φ)α(x) = φ_X(x)1.
    pub fn phi_x(&self) -> &Functional {
        &self.phi_x
    }

    /// The closed form φ_X(xᵖyᵠ) = δ_{q,n-1}δ_{p,0}.
    pub fn phi_x_table(&self, m: Monomial) -> Scalar {
        if m == Monomial::new(0, self.x.n() - 1) {
            self.x.one()
        } else {
            self.x.zero()
        }
    }

    /// The solved invariant functional, normalized by δ_X having coefficient 1.
    pub fn psi_x(&self) -> &Functional {
        &self.psi_x
    }

    /// ψ_X(xᵖyᵠ) = δ_{q,n-1}δ_{p,m(1-n)}λ⁻ᵐ.
    pub fn psi_x_table(&self, mono: Monomial) -> Scalar {
        let (n, m) = (self.x.n() as i64, self.x.m() as i64);
        if mono == Monomial::new(m * (1 - n), (n - 1) as u32) {
            self.x.lambda(-m).clone()
        } else {
            self.x.zero()
        }
    }

    /// Dimension of the space of invariant functionals on the solve window.
    pub fn psi_x_solution_dim(&self) -> usize {
        self.psi_x_raw_dim
    }

    pub fn delta_x(&self) -> &Element {
        &self.delta_x
    }

    pub fn delta_x_inv(&self) -> &Element {
        &self.delta_x_inv
    }

    pub fn sigma_x(&self) -> &LinearMap {
        &self.sigma_x
    }

    pub fn sigma_x_inv(&self) -> &LinearMap {
        &self.sigma_x_inv
    }

    /// σ_X solved from φ_X(yσ_X(x)) = φ_X(xy).
    pub fn sigma_x_solved(&self) -> &LinearMap {
        &self.sigma_x_solved
    }

    pub fn sigma_x_prime(&self) -> &LinearMap {
        &self.sigma_x_prime
    }

    pub fn theta_x(&self) -> &LinearMap {
        &self.theta_x
    }

    pub fn theta_x_inv(&self) -> &LinearMap {
        &self.theta_x_inv
    }

    /// δ̂ = ε∘σ⁻¹ as a functional on A.
    pub fn hat_delta(&self) -> &Functional {
        &self.hat_delta
    }

    /// ω·x = (ι⊗ω)α(x) for a functional ω on A.
    pub fn act(&self, omega: impl Fn(Monomial) -> Scalar, x: &Element) -> Element {
        let mut acc = Element::zero(&self.x);
        for (m, c) in x.terms() {
            acc = acc.add(&self.alpha_monomial(*m).contract(1, &omega).scale(c));
        }
        acc
    }

    /// θ_X(x) = σ_X(δ̂·x), straight from the definition.
    pub fn theta_x_definitional(&self, x: &Element) -> Element {
        self.sigma_x.apply(&self.act(|c| self.hat_delta.at(c), x))
    }

    /// σ'⁻¹ on A, with σ'(a) = δσ(a)δ⁻¹.
    pub fn sigma_prime_inv_a(&self) -> &LinearMap {
        &self.sigma_prime_inv
    }

    /// Structure data as canonical literals.
    pub fn table(&self) -> BTreeMap<String, String> {
        let mut t = BTreeMap::new();
        let [gx, gy] = self.x.names();
        let (x1, y1) = (Monomial::new(1, 0), Monomial::new(0, 1));
        t.insert("delta_X".into(), self.delta_x.to_string());
        let psi: Vec<String> = self
            .psi_values
            .iter()
            .map(|(m, c)| format!("{}={}", self.x.format_monomial(*m), c))
            .collect();
        t.insert("psi_X support".into(), psi.join(" "));
        t.insert("phi_X support".into(), format!("{}=1", self.x.format_monomial(Monomial::new(0, self.x.n() - 1))));
        for (name, mono) in [(gx, x1), (gy, y1)] {
            t.insert(format!("sigma_X({name})"), self.sigma_x.apply_monomial(mono).to_string());
            t.insert(format!("sigma'_X({name})"), self.sigma_x_prime.apply_monomial(mono).to_string());
            t.insert(format!("theta_X({name})"), self.theta_x.apply_monomial(mono).to_string());
            t.insert(format!("alpha({name})"), self.alpha_monomial(mono).to_string());
        }
        let [ga, gb] = self.a().names();
        for (name, mono) in [(ga, x1), (gb, y1)] {
            t.insert(format!("beta({name})"), self.beta_monomial(mono).to_string());
        }
        t.insert("mu".into(), self.mu().to_string());
        t
    }
}

#[cfg(test)]
mod tests;
