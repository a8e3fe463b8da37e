//! The cleft structure of X: the colinear section Φ(aᵖbᵠ) = xᵖyᵠ, its
//! convolution inverse Φ̄, and the cocycle η(c⊗c′) = Φ(c₁)Φ(c′₁)Φ̄(c₂c′₂).

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::GaloisObject;
use crate::error::{Error, Result};
use crate::qalgebra::{Element, Monomial, Tensor};
use crate::scalar::Scalar;

pub struct Cocycle {
    g: Arc<GaloisObject>,
    inverse: RwLock<HashMap<Monomial, Element>>,
}

impl Cocycle {
    pub fn new(g: &Arc<GaloisObject>) -> Cocycle {
        Cocycle { g: g.clone(), inverse: RwLock::new(HashMap::new()) }
    }

    pub fn section(&self, m: Monomial) -> Element {
        self.g.xm(m)
    }

    fn section_of(&self, e: &Element) -> Element {
        Element::from_terms(self.g.x(), e.terms().map(|(m, c)| (*m, c.clone())))
    }

    /// Φ̄ with Φ(c₁)Φ̄(c₂) = ε(c)1, by recursion on the b-degree: the only
    /// term of Δ(aᵖbᵠ) whose second leg is aᵖbᵠ itself is aᵖ⊗aᵖbᵠ.
    pub fn section_inverse(&self, m: Monomial) -> Element {
        if let Some(e) = self.inverse.read().unwrap_or_else(|e| e.into_inner()).get(&m) {
            return e.clone();
        }
        let x = self.g.x();
        let e = if m.q == 0 {
            Element::gens(x, -m.p, 0)
        } else {
            let d = self.g.hopf().coproduct_monomial(m);
            let mut rest = Element::zero(x);
            let mut lead = None;
            for (k, c) in d.terms() {
                if k[1] == m {
                    debug_assert_eq!(k[0], Monomial::new(m.p, 0));
                    lead = Some(c.clone());
                } else {
                    rest = rest.add(&self.section(k[0]).mul(&self.section_inverse(k[1])).scale(c));
                }
            }
            let lead = lead.expect("leading coproduct term");
            let inv = lead.inv().expect("nonzero");
            Element::gens(x, -m.p, 0).mul(&rest).scale(&inv).neg()
        };
        self.inverse
            .write()
            .unwrap_or_else(|e| e.into_inner())
            .insert(m, e.clone());
        e
    }

    fn section_inverse_of(&self, e: &Element) -> Element {
        let mut acc = Element::zero(self.g.x());
        for (m, c) in e.terms() {
            acc = acc.add(&self.section_inverse(*m).scale(c));
        }
        acc
    }

    /// η(c⊗c′) as an element of X; it lies in the coinvariants k·1.
    pub fn eta_element(&self, c: Monomial, c2: Monomial) -> Element {
        let hopf = self.g.hopf();
        let (dc, dc2) = (hopf.coproduct_monomial(c), hopf.coproduct_monomial(c2));
        let mut acc = Element::zero(self.g.x());
        for (k, s) in dc.terms() {
            for (k2, s2) in dc2.terms() {
                let second = self.g.am(k[1]).mul(&self.g.am(k2[1]));
                let v = self
                    .section(k[0])
                    .mul(&self.section(k2[0]))
                    .mul(&self.section_inverse_of(&second));
                acc = acc.add(&v.scale(&(s * s2)));
            }
        }
        acc
    }

    /// The scalar η(c⊗c′); errors when the value is not a multiple of 1.
    pub fn eta(&self, c: Monomial, c2: Monomial) -> Result<Scalar> {
        let e = self.eta_element(c, c2);
        match e.as_single_term() {
            None if e.is_zero() => Ok(self.g.x().zero()),
            Some((Monomial::ONE, v)) => Ok(v.clone()),
            _ => Err(Error::Verification(format!("cocycle value {e} is not a scalar"))),
        }
    }

    /// 1 if q = s = 0, μλ^{-rq} if q+s = n, else 0.
    pub fn eta_table(&self, c: Monomial, c2: Monomial) -> Scalar {
        let x = self.g.x();
        if c.q == 0 && c2.q == 0 {
            x.one()
        } else if c.q + c2.q == x.n() {
            &self.g.mu() * x.lambda(-c2.p * c.q as i64)
        } else {
            x.zero()
        }
    }

    /// Φ̄(c₁)Φ(c₂), which must equal ε(c)1 as well.
    pub fn left_convolution(&self, m: Monomial) -> Element {
        let d = self.g.hopf().coproduct_monomial(m);
        let mut acc = Element::zero(self.g.x());
        for (k, c) in d.terms() {
            acc = acc.add(&self.section_inverse(k[0]).mul(&self.section(k[1])).scale(c));
        }
        acc
    }

    /// Colinearity α∘Φ = (Φ⊗ι)∘Δ at one monomial, as (lhs, rhs).
    pub fn colinearity(&self, m: Monomial) -> (Tensor<2>, Tensor<2>) {
        let lhs = (*self.g.alpha_monomial(m)).clone();
        let rhs = self.g.hopf().coproduct_monomial(m).map_leg(0, self.g.x(), |k| self.section_of(&self.g.am(k)));
        (lhs, rhs)
    }
}
