//! The algebra B spanned by the operators g_s hᵏ acting on the right of X:
//! xᵖyʳ·g_s = δ_{p,-s}xᵖyʳ and xᵖyʳ·h = C_r x^{p+m}y^{r-1}. Brackets
//! [ω,ω′]_B are computed as operators and then solved into this basis.

use std::collections::BTreeMap;
use std::fmt;

use super::dual::{FiniteDual, XDual};
use super::{Form, Reflection};
use crate::error::{Error, Result};
use crate::linalg::LinearSystem;
use crate::qalgebra::{add_into, format_term, join_terms, Element, Monomial, Pres};
use crate::scalar::Scalar;

/// Σ c·g_s hᵏ, keyed by (s, k).
#[derive(Clone, PartialEq)]
pub struct BElement {
    x: Pres,
    terms: BTreeMap<(i64, u32), Scalar>,
}

impl fmt::Debug for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join_terms(
            f,
            self.terms.iter().map(|((s, k), c)| {
                let body = match k {
                    0 => format!("g_{s}"),
                    1 => format!("g_{s}*h"),
                    k => format!("g_{s}*h^{k}"),
                };
                format_term(c, &body)
            }),
        )
    }
}

impl BElement {
    pub fn zero(x: &Pres) -> Self {
        BElement { x: x.clone(), terms: BTreeMap::new() }
    }

    /// g_s hᵏ.
    pub fn basis(x: &Pres, s: i64, k: u32) -> Self {
        Self::from_terms(x, [((s, k), x.one())])
    }

    pub fn from_terms(x: &Pres, it: impl IntoIterator<Item = ((i64, u32), Scalar)>) -> Self {
        let mut out = Self::zero(x);
        for (k, c) in it {
            assert!(k.1 < x.n(), "h^{} vanishes", k.1);
            add_into(&mut out.terms, k, &c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: i64, k: u32) -> Scalar {
        self.terms.get(&(s, k)).cloned().unwrap_or_else(|| self.x.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            add_into(&mut out.terms, *k, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-&self.x.one()))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_terms(&self.x, self.terms.iter().map(|(k, c)| (*k, c * s)))
    }

    /// g_s hᵠ · g_t hʳ = δ_{s,t+mq} g_s h^{q+r}, with hⁿ = 0.
    pub fn mul(&self, o: &Self) -> Self {
        let (n, m) = (self.x.n(), self.x.m() as i64);
        let mut out = Self::zero(&self.x);
        for ((s, q), c) in &self.terms {
            for ((t, r), c2) in &o.terms {
                if *s == t + m * *q as i64 && q + r < n {
                    add_into(&mut out.terms, (*s, q + r), &(c * c2));
                }
            }
        }
        out
    }
}

impl Reflection {
    /// xᵖyʳ·g_s hᵏ = δ_{p,-s} C_r⋯C_{r-k+1} x^{p+mk}y^{r-k}.
    pub fn b_act_basis(&self, z: Monomial, s: i64, k: u32) -> Option<(Scalar, Monomial)> {
        if z.p != -s || z.q < k {
            return None;
        }
        let mut c = self.x().one();
        for i in 0..k {
            c = &c * self.c_q(z.q - i);
        }
        Some((c, Monomial::new(z.p + self.x().m() as i64 * k as i64, z.q - k)))
    }

    /// The right action z·b.
    pub fn b_act(&self, z: &Element, b: &BElement) -> Element {
        let mut out = Element::zero(self.x());
        for (zm, zc) in z.terms() {
            for ((s, k), c) in b.terms() {
                if let Some((v, m)) = self.b_act_basis(*zm, *s, *k) {
                    out.add_term(m, &(&(zc * c) * &v));
                }
            }
        }
        out
    }

    /// (b·ω)(z) = ω(z·b). z·g_s hᵏ lands on (p,q) only from (p-mk, q+k).
    pub fn b_on_hat(&self, b: &BElement, w: &XDual) -> XDual {
        let (n, m) = (self.x().n(), self.x().m() as i64);
        let cands: Vec<Monomial> = w
            .support()
            .flat_map(|t| (0..n - t.q).map(move |k| Monomial::new(t.p - m * k as i64, t.q + k)))
            .collect();
        FiniteDual::tabulate(self.x(), cands, |z| w.eval(&self.b_act(&self.g.xm(z), b)))
    }

    /// z·[ω,ω′]_B = ω(z₍₀₎) ω′(z₍₁₎^{[1]}) z₍₁₎^{[2]}.
    pub fn bracket_operator(&self, w: &XDual, w2: &XDual, z: Monomial) -> Element {
        let mut out = Element::zero(self.x());
        for (k, c) in self.g.alpha_monomial(z).terms() {
            let l = w.at(k[0]);
            if l.is_zero() {
                continue;
            }
            let cl = c * &l;
            for (t, s) in self.g.beta_monomial(k[1]).terms() {
                let r = w2.at(t[0]);
                if !r.is_zero() {
                    out.add_term(t[1], &(&(&cl * s) * &r));
                }
            }
        }
        out
    }

    /// [ω,ω′]_B written in the g_s hᵏ. The first leg of α(xᵖyʳ) has x-degree
    /// p, so the operator vanishes unless p occurs in ω. On row p the
    /// coefficients are read off x^p y^{n-1} and then checked on every other
    /// yʳ. Errors if the operator is outside the span.
    pub fn bracket_b(&self, w: &XDual, w2: &XDual) -> Result<BElement> {
        let x = self.x();
        let n = x.n();
        let mut ps: Vec<i64> = w.support().map(|m| m.p).collect();
        ps.dedup();
        let mut out = BTreeMap::new();
        for p in ps {
            let top = self.bracket_operator(w, w2, Monomial::new(p, n - 1));
            let mut row = Vec::new();
            for k in 0..n {
                let (v, m) = self.b_act_basis(Monomial::new(p, n - 1), -p, k).expect("k < n");
                let c = &top.coeff(m) * &v.inv()?;
                if !c.is_zero() {
                    row.push((k, c));
                }
            }
            for r in 0..n - 1 {
                let z = Monomial::new(p, r);
                let mut expect = Element::zero(x);
                for (k, c) in &row {
                    if let Some((v, m)) = self.b_act_basis(z, -p, *k) {
                        expect.add_term(m, &(c * &v));
                    }
                }
                if expect != self.bracket_operator(w, w2, z) {
                    return Err(Error::Verification(format!("[{w}, {w2}]_B is not in the span of g_s h^k")));
                }
            }
            out.extend(row.into_iter().map(|(k, c)| ((-p, k), c)));
        }
        Ok(BElement::from_terms(x, out))
    }

    /// A bracket pair for g_s hᵏ: ω = G(-s,j), ω′ = G(s-mk,k-j), together with
    /// c such that [ω,ω′]_B = c·g_s hᵏ.
    pub fn decompose(&self, s: i64, k: u32, j: u32) -> Result<(XDual, XDual, Scalar)> {
        let m = self.x().m() as i64;
        let w = self.hat_basis(Monomial::new(-s, j));
        let w2 = self.hat_basis(Monomial::new(s - m * k as i64, k - j));
        let b = self.bracket_b(&w, &w2)?;
        let c = b.coeff(s, k);
        if c.is_zero() || b != BElement::basis(self.x(), s, k).scale(&c) {
            return Err(Error::Verification(format!("[{w}, {w2}]_B = {b} is not a multiple of g_{s}*h^{k}")));
        }
        Ok((w, w2, c))
    }

    fn linear_on_basis(&self, b: &BElement, f: impl Fn(i64, u32) -> Result<BElement>) -> Result<BElement> {
        let mut out = BElement::zero(self.x());
        for ((s, k), c) in b.terms() {
            out = out.add(&f(*s, *k)?.scale(c));
        }
        Ok(out)
    }

    fn cached(
        &self,
        cache: &std::sync::RwLock<std::collections::HashMap<(i64, u32), BElement>>,
        key: (i64, u32),
        f: impl FnOnce() -> Result<BElement>,
    ) -> Result<BElement> {
        if let Some(v) = cache.read().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return Ok(v.clone());
        }
        let v = f()?;
        cache.write().unwrap_or_else(|e| e.into_inner()).insert(key, v.clone());
        Ok(v)
    }

    /// S_B(g_s hᵏ) through the decomposition with split j:
    /// S_B([ω,ω′]_B) = [θ_X(ω′),ω]_B.
    pub fn s_b_basis_via(&self, s: i64, k: u32, j: u32) -> Result<BElement> {
        let (w, w2, c) = self.decompose(s, k, j)?;
        Ok(self.bracket_b(&self.hat_theta(&w2), &w)?.scale(&c.inv()?))
    }

    pub fn s_b(&self, b: &BElement) -> Result<BElement> {
        self.linear_on_basis(b, |s, k| self.cached(&self.s_b, (s, k), || self.s_b_basis_via(s, k, 0)))
    }

    /// S_B⁻¹([ω,ω′]_B) = [ω′,θ_X⁻¹(ω)]_B.
    pub fn s_b_inv(&self, b: &BElement) -> Result<BElement> {
        self.linear_on_basis(b, |s, k| {
            self.cached(&self.s_b_inv, (s, k), || {
                let (w, w2, c) = self.decompose(s, k, 0)?;
                Ok(self.bracket_b(&w2, &self.hat_theta_inv(&w))?.scale(&c.inv()?))
            })
        })
    }

    /// ε_B([ω,ω′]_B) = ω(1)ω′(1), through the split-j decomposition.
    pub fn eps_b_basis_via(&self, s: i64, k: u32, j: u32) -> Result<Scalar> {
        let (w, w2, c) = self.decompose(s, k, j)?;
        Ok(&(&w.at(Monomial::ONE) * &w2.at(Monomial::ONE)) * &c.inv()?)
    }

    pub fn eps_b(&self, b: &BElement) -> Result<Scalar> {
        let mut acc = self.x().zero();
        for ((s, k), c) in b.terms() {
            acc = &acc + &(c * &self.eps_b_basis_via(*s, *k, 0)?);
        }
        Ok(acc)
    }

    /// φ_B([ω′,ω]_B) = ω′(ω̂) where ω = ψ_X(·ω̂).
    pub fn phi_b_basis_via(&self, s: i64, k: u32, j: u32) -> Result<Scalar> {
        let (w, w2, c) = self.decompose(s, k, j)?;
        let hat = self.hatx_rep(&w2, Form::PsiRight).rep;
        Ok(&w.eval(&hat) * &c.inv()?)
    }

    pub fn phi_b(&self, b: &BElement) -> Result<Scalar> {
        let mut acc = self.x().zero();
        for ((s, k), c) in b.terms() {
            acc = &acc + &(c * &self.phi_b_basis_via(*s, *k, 0)?);
        }
        Ok(acc)
    }

    /// The right action of B on X̂: ω·b = S_B⁻¹(b)·ω.
    pub fn hat_right_b(&self, w: &XDual, b: &BElement) -> Result<XDual> {
        Ok(self.b_on_hat(&self.s_b_inv(b)?, w))
    }

    /// Some b with b·ωⁱ = ωⁱ for all i, by a linear solve over g_s hᵏ.
    pub fn local_unit_b(&self, ws: &[XDual]) -> Result<BElement> {
        let x = self.x();
        let (n, m) = (x.n(), x.m() as i64);
        let mut cols: Vec<(i64, u32)> = ws
            .iter()
            .flat_map(|w| w.support().collect::<Vec<_>>())
            .flat_map(|t| (0..n).map(move |k| (m * k as i64 - t.p, k)))
            .collect();
        cols.sort();
        cols.dedup();
        let mut sys = LinearSystem::new(x.field(), cols.len());
        for w in ws {
            let images: Vec<XDual> = cols.iter().map(|&(s, k)| self.b_on_hat(&BElement::basis(x, s, k), w)).collect();
            let mut zs: Vec<Monomial> = images.iter().flat_map(|i| i.support().collect::<Vec<_>>()).chain(w.support()).collect();
            zs.sort();
            zs.dedup();
            for z in zs {
                let row: Vec<(usize, Scalar)> =
                    images.iter().enumerate().map(|(j, i)| (j, i.at(z))).filter(|(_, v)| !v.is_zero()).collect();
                sys.push(row, w.at(z));
            }
        }
        let sol = sys.solve().ok_or_else(|| Error::Verification("no local unit in B".into()))?;
        Ok(BElement::from_terms(x, cols.into_iter().zip(sol)))
    }
}
