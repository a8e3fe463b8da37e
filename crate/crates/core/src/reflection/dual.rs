//! Finitely supported functionals on a presented algebra, in the basis dual
//! to the PBW monomials. On A this is the dual Â with F_{p,q}(aʳbˢ) =
//! δ_{p,r}δ_{q,s}; on X it is the restricted dual X̂.
//!
//! Products in Â are (ω₁ω₂)(c) = (ω₁⊗ω₂)Δ(c). Multipliers of Â (d, c, δ̂,
//! the counit) have infinite support and stay lazy: they are functionals
//! given by a rule, and a product with a finite element is finite again.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::hopf::HopfStructure;
use crate::qalgebra::{add_into, format_term, join_terms, AlgebraKind, Element, Functional, LinearMap, Monomial, Pres};
use crate::scalar::Scalar;

/// Anything that can be evaluated on basis monomials.
pub trait OnBasis {
    fn at(&self, m: Monomial) -> Scalar;
}

impl OnBasis for Functional {
    fn at(&self, m: Monomial) -> Scalar {
        Functional::at(self, m)
    }
}

impl<F: Fn(Monomial) -> Scalar> OnBasis for F {
    fn at(&self, m: Monomial) -> Scalar {
        self(m)
    }
}

/// Σ c·F_{p,q} over the monomials of one algebra.
#[derive(Clone, PartialEq)]
pub struct FiniteDual {
    pres: Pres,
    terms: BTreeMap<Monomial, Scalar>,
}

/// An element of Â.
pub type DualElement = FiniteDual;

/// An element of X̂, expanded in the basis dual to xᵖyᵠ.
pub type XDual = FiniteDual;

impl fmt::Debug for FiniteDual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FiniteDual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = if self.pres.kind() == AlgebraKind::GaloisObject { "G" } else { "F" };
        join_terms(
            f,
            self.terms.iter().map(|(m, c)| format_term(c, &format!("{letter}({},{})", m.p, m.q))),
        )
    }
}

impl OnBasis for FiniteDual {
    fn at(&self, m: Monomial) -> Scalar {
        FiniteDual::at(self, m)
    }
}

impl FiniteDual {
    pub fn zero(pres: &Pres) -> Self {
        FiniteDual { pres: pres.clone(), terms: BTreeMap::new() }
    }

    pub fn basis(pres: &Pres, m: Monomial) -> Self {
        Self::term(pres, m, pres.one())
    }

    pub fn term(pres: &Pres, m: Monomial, c: Scalar) -> Self {
        Self::from_terms(pres, [(m, c)])
    }

    /// e_p = F_{p,0}.
    pub fn e(pres: &Pres, p: i64) -> Self {
        Self::basis(pres, Monomial::new(p, 0))
    }

    pub fn from_terms(pres: &Pres, it: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut out = Self::zero(pres);
        for (m, c) in it {
            add_into(&mut out.terms, m, &c);
        }
        out
    }

    /// Evaluates `f` on `candidates` and keeps the nonzero values.
    pub fn tabulate(pres: &Pres, candidates: impl IntoIterator<Item = Monomial>, f: impl Fn(Monomial) -> Scalar) -> Self {
        let mut out = Self::zero(pres);
        for m in candidates {
            if !out.terms.contains_key(&m) {
                let v = f(m);
                if !v.is_zero() {
                    out.terms.insert(m, v);
                }
            }
        }
        out
    }

    pub fn pres(&self) -> &Pres {
        &self.pres
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn at(&self, m: Monomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(|| self.pres.zero())
    }

    pub fn eval(&self, e: &Element) -> Scalar {
        let mut acc = self.pres.zero();
        for (m, c) in e.terms() {
            if let Some(v) = self.terms.get(m) {
                acc = &acc + &(c * v);
            }
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            add_into(&mut out.terms, *m, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-&self.pres.one()))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_terms(&self.pres, self.terms.iter().map(|(m, c)| (*m, c * s)))
    }

    /// ω∘L for a map L sending each monomial to a multiple of itself
    /// (σ_X, θ_X and their inverses); the support does not move.
    pub fn pullback_diagonal(&self, map: &LinearMap) -> Self {
        Self::from_terms(
            &self.pres,
            self.terms.iter().map(|(m, c)| {
                let img = map.apply_monomial(*m);
                debug_assert!(img.terms().all(|(k, _)| k == m), "{} is not diagonal at {m:?}", map.name());
                (*m, c * &img.coeff(*m))
            }),
        )
    }
}

/// A multiplier of Â, kept as a lazy functional on A.
#[derive(Clone)]
pub struct DualMultiplier {
    name: String,
    rule: Arc<dyn Fn(Monomial) -> Scalar + Send + Sync>,
}

impl fmt::Debug for DualMultiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DualMultiplier({})", self.name)
    }
}

impl OnBasis for DualMultiplier {
    fn at(&self, m: Monomial) -> Scalar {
        (self.rule)(m)
    }
}

impl DualMultiplier {
    pub fn new(name: &str, rule: impl Fn(Monomial) -> Scalar + Send + Sync + 'static) -> Self {
        DualMultiplier { name: name.to_string(), rule: Arc::new(rule) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn at(&self, m: Monomial) -> Scalar {
        (self.rule)(m)
    }
}

/// Products and the standard multipliers of Â, driven by Δ of A.
#[derive(Clone)]
pub struct Dual {
    hopf: Arc<HopfStructure>,
}

impl Dual {
    pub fn new(hopf: &Arc<HopfStructure>) -> Dual {
        Dual { hopf: hopf.clone() }
    }

    pub fn a(&self) -> &Pres {
        self.hopf.pres()
    }

    pub fn hopf(&self) -> &Arc<HopfStructure> {
        &self.hopf
    }

    /// (f⊗g)Δ(c).
    pub fn pair(&self, f: &dyn OnBasis, g: &dyn OnBasis, c: Monomial) -> Scalar {
        let mut acc = self.a().zero();
        for (k, s) in self.hopf.coproduct_monomial(c).terms() {
            let l = f.at(k[0]);
            if l.is_zero() {
                continue;
            }
            let r = g.at(k[1]);
            if !r.is_zero() {
                acc = &acc + &(&(s * &l) * &r);
            }
        }
        acc
    }

    /// Monomials c with a term aʳbʲ⊗aᵗbᵘ of Δ(c) whose second leg lies in
    /// `right`: Δ(aᵖbᵘ) has terms aᵖbʲ⊗a^{p+mj}b^{u-j}.
    pub fn support_from_right(&self, right: impl IntoIterator<Item = Monomial>) -> Vec<Monomial> {
        let (n, m) = (self.a().n(), self.a().m() as i64);
        let mut out: Vec<Monomial> = right
            .into_iter()
            .flat_map(|r| (0..n - r.q).map(move |j| Monomial::new(r.p - m * j as i64, r.q + j)))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Same, for first legs in `left`.
    pub fn support_from_left(&self, left: impl IntoIterator<Item = Monomial>) -> Vec<Monomial> {
        let n = self.a().n();
        let mut out: Vec<Monomial> = left
            .into_iter()
            .flat_map(|l| (l.q..n).map(move |u| Monomial::new(l.p, u)))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// ω₁ω₂ for finite ω₁, ω₂.
    pub fn multiply(&self, w1: &DualElement, w2: &DualElement) -> DualElement {
        let mut cands = self.support_from_right(w2.support());
        let left = self.support_from_left(w1.support());
        cands.retain(|c| left.binary_search(c).is_ok());
        FiniteDual::tabulate(self.a(), cands, |c| self.pair(w1, w2, c))
    }

    /// f·ω for a multiplier f.
    pub fn left_by(&self, f: &dyn OnBasis, w: &DualElement) -> DualElement {
        FiniteDual::tabulate(self.a(), self.support_from_right(w.support()), |c| self.pair(f, w, c))
    }

    /// ω·f for a multiplier f.
    pub fn right_by(&self, w: &DualElement, f: &dyn OnBasis) -> DualElement {
        FiniteDual::tabulate(self.a(), self.support_from_left(w.support()), |c| self.pair(w, f, c))
    }

    /// The lazy product of two multipliers.
    pub fn compose(&self, f: &DualMultiplier, g: &DualMultiplier) -> DualMultiplier {
        let (me, f2, g2) = (self.clone(), f.clone(), g.clone());
        DualMultiplier::new(&format!("{}{}", f.name, g.name), move |c| me.pair(&f2, &g2, c))
    }

    pub fn power(&self, f: &DualMultiplier, k: u32) -> DualMultiplier {
        let mut acc = self.unit();
        for _ in 0..k {
            acc = self.compose(&acc, f);
        }
        acc
    }

    /// The unit of M(Â), i.e. the counit of A.
    pub fn unit(&self) -> DualMultiplier {
        let h = self.hopf.clone();
        DualMultiplier::new("1", move |c| h.counit_monomial(c))
    }

    /// d(aʳbˢ) = δ_{s,1}.
    pub fn d(&self) -> DualMultiplier {
        let (one, zero) = (self.a().one(), self.a().zero());
        DualMultiplier::new("d", move |c| if c.q == 1 { one.clone() } else { zero.clone() })
    }

    /// c(aʳbˢ) = δ_{s,0}λ⁻ʳ, formally Σ_k λ⁻ᵏe_k.
    pub fn c(&self) -> DualMultiplier {
        let a = self.a().clone();
        DualMultiplier::new("c", move |c| if c.q == 0 { a.lambda(-c.p).clone() } else { a.zero() })
    }

    /// δ̂ = ε∘σ⁻¹.
    pub fn hat_delta(&self) -> DualMultiplier {
        let h = self.hopf.clone();
        DualMultiplier::new("hat_delta", move |c| h.counit(&h.sigma_inv().apply_monomial(c)))
    }

    /// Ŝ(ω) = ω∘S. S sends monomials to multiples of monomials, so the
    /// support of ω∘S is S⁻¹ of the support of ω.
    pub fn antipode(&self, w: &DualElement) -> DualElement {
        let h = &self.hopf;
        let cands = w.support().flat_map(|k| h.antipode_inv().apply_monomial(k).term_map().keys().copied().collect::<Vec<_>>());
        FiniteDual::tabulate(self.a(), cands.collect::<Vec<_>>(), |c| w.eval(&h.antipode().apply_monomial(c)))
    }

    /// Ŝ⁻¹(ω) = ω∘S⁻¹.
    pub fn antipode_inv(&self, w: &DualElement) -> DualElement {
        let h = &self.hopf;
        let cands = w.support().flat_map(|k| h.antipode().apply_monomial(k).term_map().keys().copied().collect::<Vec<_>>());
        FiniteDual::tabulate(self.a(), cands.collect::<Vec<_>>(), |c| w.eval(&h.antipode_inv().apply_monomial(c)))
    }

    /// Ŝ⁻¹(f) for a multiplier.
    pub fn antipode_inv_lazy(&self, f: &DualMultiplier) -> DualMultiplier {
        let (h, f2) = (self.hopf.clone(), f.clone());
        DualMultiplier::new(&format!("S^-1({})", f.name), move |c| {
            let mut acc = h.pres().zero();
            for (k, s) in h.antipode_inv().apply_monomial(c).terms() {
                acc = &acc + &(s * &f2.at(*k));
            }
            acc
        })
    }

    /// φ(·a) as an element of Â: φ(c·a) ≠ 0 only for c = a^{-p}b^{n-1-q}.
    pub fn phi_right(&self, a: &Element) -> DualElement {
        let n = self.a().n();
        let cands: Vec<Monomial> = a.terms().map(|(m, _)| Monomial::new(-m.p, n - 1 - m.q)).collect();
        let phi = self.hopf.left_integral();
        FiniteDual::tabulate(self.a(), cands, |c| phi.eval(&self.hopf.mono(c).mul(a)))
    }
}
