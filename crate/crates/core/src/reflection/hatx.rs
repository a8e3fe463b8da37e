//! The restricted dual X̂ = {φ_X(·x)} and its four presentations, the Â
//! actions on it and the Â-valued bracket.

use std::fmt;

use super::dual::{FiniteDual, OnBasis, XDual};
use super::{DualElement, Reflection};
use crate::qalgebra::{Element, Monomial};

/// Which functional a representative x stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    /// φ_X(·x)
    PhiRight,
    /// φ_X(x·)
    PhiLeft,
    /// ψ_X(·x)
    PsiRight,
    /// ψ_X(x·)
    PsiLeft,
}

impl Form {
    pub const ALL: [Form; 4] = [Form::PhiRight, Form::PhiLeft, Form::PsiRight, Form::PsiLeft];
}

#[derive(Clone, Debug, PartialEq)]
pub struct HatXElement {
    pub rep: Element,
    pub form: Form,
}

impl HatXElement {
    pub fn new(rep: Element, form: Form) -> HatXElement {
        HatXElement { rep, form }
    }
}

impl fmt::Display for HatXElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.rep;
        match self.form {
            Form::PhiRight => write!(f, "phi_X(.({r}))"),
            Form::PhiLeft => write!(f, "phi_X(({r}).)"),
            Form::PsiRight => write!(f, "psi_X(.({r}))"),
            Form::PsiLeft => write!(f, "psi_X(({r}).)"),
        }
    }
}

impl Reflection {
    /// The representative r′ with ω = φ_X(·r′). Uses φ_X(rz) = φ_X(zσ_X(r))
    /// and ψ_X = φ_X(·δ_X).
    fn phi_right_rep(&self, w: &HatXElement) -> Element {
        let g = &self.g;
        match w.form {
            Form::PhiRight => w.rep.clone(),
            Form::PhiLeft => g.sigma_x().apply(&w.rep),
            Form::PsiRight => w.rep.mul(g.delta_x()),
            Form::PsiLeft => g.delta_x().mul(&g.sigma_x().apply(&w.rep)),
        }
    }

    fn rep_in_form(&self, r: &Element, form: Form) -> HatXElement {
        let g = &self.g;
        let rep = match form {
            Form::PhiRight => r.clone(),
            Form::PhiLeft => g.sigma_x_inv().apply(r),
            Form::PsiRight => r.mul(g.delta_x_inv()),
            Form::PsiLeft => g.sigma_x_inv().apply(&g.delta_x_inv().mul(r)),
        };
        HatXElement::new(rep, form)
    }

    /// Rewrites ω in another form.
    pub fn convert(&self, w: &HatXElement, form: Form) -> HatXElement {
        self.rep_in_form(&self.phi_right_rep(w), form)
    }

    /// ω expanded in the basis dual to xᵖyᵠ. φ_X(z·xᵖyᵠ) ≠ 0 forces
    /// z = x⁻ᵖy^{n-1-q}.
    pub fn hatx(&self, w: &HatXElement) -> XDual {
        let r = self.phi_right_rep(w);
        let n = self.x().n();
        let cands: Vec<Monomial> = r.terms().map(|(m, _)| Monomial::new(-m.p, n - 1 - m.q)).collect();
        let phi = self.g.phi_x();
        FiniteDual::tabulate(self.x(), cands, |z| phi.eval(&self.g.xm(z).mul(&r)))
    }

    /// Evaluates ω straight from its form, without expanding.
    pub fn hatx_eval(&self, w: &HatXElement, z: &Element) -> crate::scalar::Scalar {
        let g = &self.g;
        match w.form {
            Form::PhiRight => g.phi_x().eval(&z.mul(&w.rep)),
            Form::PhiLeft => g.phi_x().eval(&w.rep.mul(z)),
            Form::PsiRight => g.psi_x().eval(&z.mul(&w.rep)),
            Form::PsiLeft => g.psi_x().eval(&w.rep.mul(z)),
        }
    }

    /// The representative of a finite functional in the given form.
    pub fn hatx_rep(&self, w: &XDual, form: Form) -> HatXElement {
        let n = self.x().n();
        let mut r = Element::zero(self.x());
        for (z, c) in w.terms() {
            let t = self.g.xm(Monomial::new(-z.p, n - 1 - z.q));
            let v = self.g.phi_x().eval(&self.g.xm(*z).mul(&t));
            r = r.add(&t.scale(&(c * &v.inv().expect("phi_X pairs dual monomials"))));
        }
        self.rep_in_form(&r, form)
    }

    /// ω·f with (ω·f)(z) = ω(f·z). f·xᵖyᵠ only involves xᵖyʲ with j ≤ q.
    pub fn hat_right(&self, w: &XDual, f: &dyn OnBasis) -> XDual {
        let n = self.x().n();
        let cands: Vec<Monomial> = w.support().flat_map(|m| (m.q..n).map(move |q| Monomial::new(m.p, q))).collect();
        FiniteDual::tabulate(self.x(), cands, |z| w.eval(&self.act(f, &self.g.xm(z))))
    }

    /// ω₁·ω := ω·Ŝ⁻¹(ω₁).
    pub fn hat_left(&self, f: &DualElement, w: &XDual) -> XDual {
        self.hat_right(w, &self.dual.antipode_inv(f))
    }

    /// ω∘θ_X.
    pub fn hat_theta(&self, w: &XDual) -> XDual {
        w.pullback_diagonal(self.g.theta_x())
    }

    pub fn hat_theta_inv(&self, w: &XDual) -> XDual {
        w.pullback_diagonal(self.g.theta_x_inv())
    }

    /// [ω,ω′]_Â(a) = (ω⊗ω′)β(a). β(aʳbˢ) has terms in
    /// x^{-r-mj}yʲ ⊗ x^{r+mj}y^{s-j}, which bounds the support.
    pub fn bracket_ahat(&self, w: &XDual, w2: &XDual) -> DualElement {
        let (n, m) = (self.x().n(), self.x().m() as i64);
        let mut cands = Vec::new();
        for l in w.support() {
            for r in w2.support() {
                if l.q + r.q < n {
                    cands.push(Monomial::new(r.p - m * l.q as i64, l.q + r.q));
                }
            }
        }
        FiniteDual::tabulate(self.a(), cands, |c| self.bracket_ahat_at(w, w2, c))
    }

    /// (ω⊗ω′)β(c) at one monomial, with no support assumption.
    pub fn bracket_ahat_at(&self, w: &XDual, w2: &XDual, c: Monomial) -> crate::scalar::Scalar {
        let mut acc = self.x().zero();
        for (k, s) in self.g.beta_monomial(c).terms() {
            let l = w.at(k[0]);
            if !l.is_zero() {
                acc = &acc + &(&(s * &l) * &w2.at(k[1]));
            }
        }
        acc
    }

    /// The dual basis functional at xᵖyᵠ.
    pub fn hat_basis(&self, m: Monomial) -> XDual {
        FiniteDual::basis(self.x(), m)
    }
}
