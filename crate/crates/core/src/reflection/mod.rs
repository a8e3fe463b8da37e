//! Reflecting A across the Galois object X. The dual Â acts on X, the
//! restricted dual X̂ carries the brackets [·,·]_Â and [·,·]_B, the operators
//! g_s hᵠ span the algebra B, and the presented C (uw = λwu,
//! wⁿ = μ(u^{mn} - 1)) makes X a C–A-bi-Galois object.
//!
//! Â is worked with in the basis F_{p,q} dual to aᵖbᵠ. The usual generators
//! are e_p = F_{p,0} and the multiplier d(aʳbˢ) = δ_{s,1}; with the product
//! (ω₁ω₂)(c) = (ω₁⊗ω₂)Δ(c) they satisfy d e_p = e_{p-m} d.

mod bmod;
mod dual;
mod hatx;
mod reflected;
mod suite;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

pub use bmod::BElement;
pub use dual::{Dual, DualElement, DualMultiplier, FiniteDual, OnBasis, XDual};
pub use hatx::{Form, HatXElement};
pub use reflected::ReflectedGroup;

use crate::error::{Error, Result};
use crate::galois::GaloisObject;
use crate::qalgebra::{gaussian_binomial, Element, Monomial, Pres, Window};
use crate::scalar::Scalar;

pub struct Reflection {
    g: Arc<GaloisObject>,
    dual: Dual,
    solve: Window,
    c_q: Vec<Scalar>,
    reflected: ReflectedGroup,
    s_b: RwLock<HashMap<(i64, u32), BElement>>,
    s_b_inv: RwLock<HashMap<(i64, u32), BElement>>,
    pairing: RwLock<HashMap<(i64, u32), BTreeMap<Monomial, Scalar>>>,
}

impl Reflection {
    /// Builds X(n,m,ζᵏ,μ) with window `p` and reflects it.
    pub fn build(n: u32, m: u32, lambda_exp: i64, mu: Scalar, p: u32) -> Result<Arc<Reflection>> {
        let g = GaloisObject::build(n, m, lambda_exp, mu, p)?;
        Reflection::new(&g)
    }

    /// Solves happen on the Galois object's solve window (P + mn).
    pub fn new(g: &Arc<GaloisObject>) -> Result<Arc<Reflection>> {
        let dual = Dual::new(g.hopf());
        let solve = g.hopf().solve_window();
        let x = g.x();
        let n = x.n();
        // C_q is read off d·yᵠ = C_q yᵠ⁻¹.
        let d = dual.d();
        let mut c_q = vec![x.zero()];
        for q in 1..n {
            let img = g.act(|c| d.at(c), &g.xm(Monomial::new(0, q)));
            let c = img.coeff(Monomial::new(0, q - 1));
            if c.is_zero() {
                return Err(Error::Verification(format!("d acts by zero on y^{q}")));
            }
            c_q.push(c);
        }
        let reflected = ReflectedGroup::construct(g, solve)?;
        Ok(Arc::new(Reflection {
            g: g.clone(),
            dual,
            solve,
            c_q,
            reflected,
            s_b: RwLock::new(HashMap::new()),
            s_b_inv: RwLock::new(HashMap::new()),
            pairing: RwLock::new(HashMap::new()),
        }))
    }

    pub fn galois(&self) -> &Arc<GaloisObject> {
        &self.g
    }

    pub fn dual(&self) -> &Dual {
        &self.dual
    }

    pub fn x(&self) -> &Pres {
        self.g.x()
    }

    pub fn a(&self) -> &Pres {
        self.g.a()
    }

    pub fn solve_window(&self) -> Window {
        self.solve
    }

    pub fn reflected(&self) -> &ReflectedGroup {
        &self.reflected
    }

    /// C_q from d·xᵖyᵠ = C_q xᵖyᵠ⁻¹ (q ≥ 1).
    pub fn c_q(&self, q: u32) -> &Scalar {
        &self.c_q[q as usize]
    }

    /// The closed form [q]_{λ^{-m}} = 1 + λ⁻ᵐ + ... + λ^{-m(q-1)}.
    pub fn c_q_closed(&self, q: u32) -> Scalar {
        let x = self.x();
        gaussian_binomial(q as i64, 1, x.lambda(-(x.m() as i64))).expect("0 <= 1 <= q")
    }

    /// ω·x = (ι⊗ω)α(x).
    pub fn act(&self, f: &dyn OnBasis, x: &Element) -> Element {
        self.g.act(|c| f.at(c), x)
    }

    /// θ_X through the dual: x ↦ σ_X(δ̂·x).
    pub fn theta_x_via_dual(&self, x: &Element) -> Element {
        let hd = self.dual.hat_delta();
        self.g.sigma_x().apply(&self.act(&hd, x))
    }

    /// Structure data as canonical literals.
    pub fn table(&self) -> BTreeMap<String, String> {
        let mut t = BTreeMap::new();
        for q in 1..self.x().n() {
            t.insert(format!("C_{q}"), self.c_q(q).to_string());
        }
        t.extend(self.reflected.table());
        t
    }
}

#[cfg(test)]
mod tests;
