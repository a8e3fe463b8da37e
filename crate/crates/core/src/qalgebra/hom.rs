use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use super::{Element, Monomial, NilpotentReduction, Pres, Tensor};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An algebra map out of a presented algebra, fixed by the images of g1,
/// g1⁻¹ and g2. Target legs flagged `op` are multiplied in reversed order,
/// which turns antihomomorphisms into homomorphisms into the opposite algebra.
pub struct MonomialHom<const N: usize> {
    name: String,
    source: Pres,
    op: [bool; N],
    g1: Tensor<N>,
    g1_inv: Tensor<N>,
    g2: Tensor<N>,
    cache: RwLock<HashMap<Monomial, Arc<Tensor<N>>>>,
}

impl<const N: usize> fmt::Debug for MonomialHom<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialHom({}: g1 -> {}, g2 -> {})", self.name, self.g1, self.g2)
    }
}

impl<const N: usize> MonomialHom<N> {
    /// Builds the map and checks that the images satisfy the source relations.
    pub fn new(
        name: &str,
        source: &Pres,
        op: [bool; N],
        g1: Tensor<N>,
        g1_inv: Tensor<N>,
        g2: Tensor<N>,
    ) -> Result<Self> {
        let hom = MonomialHom {
            name: name.to_string(),
            source: source.clone(),
            op,
            g1,
            g1_inv,
            g2,
            cache: RwLock::new(HashMap::new()),
        };
        hom.check_relations()?;
        Ok(hom)
    }

    fn check_relations(&self) -> Result<()> {
        let legs = self.g1.legs().clone();
        for t in [&self.g1_inv, &self.g2] {
            for (a, b) in legs.iter().zip(t.legs()) {
                a.check_same(b)?;
            }
        }
        let unit = Tensor::unit(&legs);
        let m = |a: &Tensor<N>, b: &Tensor<N>| a.mul_with(b, self.op);
        let fail = |what: &str| {
            Err(Error::Verification(format!(
                "{}: generator images violate {}",
                self.name, what
            )))
        };
        if m(&self.g1, &self.g1_inv) != unit || m(&self.g1_inv, &self.g1) != unit {
            return fail("g1 g1^-1 = 1");
        }
        let s = &self.source;
        if m(&self.g1, &self.g2) != m(&self.g2, &self.g1).scale(s.lambda(1)) {
            return fail("g1 g2 = lambda g2 g1");
        }
        let mut g2n = unit.clone();
        for _ in 0..s.n() {
            g2n = m(&g2n, &self.g2);
        }
        let mut g1mn = unit.clone();
        for _ in 0..s.m() * s.n() {
            g1mn = m(&g1mn, &self.g1);
        }
        let expect = match s.reduction() {
            NilpotentReduction::Zero => Tensor::zero(&legs),
            NilpotentReduction::MuG1Mn(mu) => g1mn.scale(mu),
            NilpotentReduction::MuG1MnMinusOne(mu) => g1mn.sub(&unit).scale(mu),
        };
        if g2n != expect {
            return fail("the g2^n relation");
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Pres {
        &self.source
    }

    pub fn legs(&self) -> &[Pres; N] {
        self.g1.legs()
    }

    pub fn op(&self) -> [bool; N] {
        self.op
    }

    /// Image of g1ᵖ g2ᵠ, memoized.
    pub fn apply_monomial(&self, mono: Monomial) -> Arc<Tensor<N>> {
        if let Some(t) = self.cache.read().unwrap_or_else(|e| e.into_inner()).get(&mono) {
            return t.clone();
        }
        let img = if mono == Monomial::ONE {
            Tensor::unit(self.g1.legs())
        } else if mono.q > 0 {
            let prev = self.apply_monomial(Monomial::new(mono.p, mono.q - 1));
            prev.mul_with(&self.g2, self.op)
        } else if mono.p > 0 {
            let prev = self.apply_monomial(Monomial::new(mono.p - 1, 0));
            prev.mul_with(&self.g1, self.op)
        } else {
            let prev = self.apply_monomial(Monomial::new(mono.p + 1, 0));
            prev.mul_with(&self.g1_inv, self.op)
        };
        let img = Arc::new(img);
        self.cache
            .write()
            .unwrap_or_else(|e| e.into_inner())
            .insert(mono, img.clone());
        img
    }

    pub fn apply(&self, e: &Element) -> Tensor<N> {
        debug_assert!(**e.pres() == *self.source);
        let mut out = Tensor::zero(self.g1.legs());
        for (m, c) in e.terms() {
            for (k, c2) in self.apply_monomial(*m).terms() {
                out.add_term(*k, &(c * c2));
            }
        }
        out
    }

    pub fn try_apply(&self, e: &Element) -> Result<Tensor<N>> {
        self.source.check_same(e.pres())?;
        Ok(self.apply(e))
    }
}

impl MonomialHom<1> {
    pub fn apply_element(&self, e: &Element) -> Element {
        self.apply(e).into_element()
    }

    pub fn apply_monomial_element(&self, m: Monomial) -> Element {
        (*self.apply_monomial(m)).clone().into_element()
    }
}

type Rule = dyn Fn(Monomial) -> Element + Send + Sync;

/// A linear map given monomial-wise, memoized.
#[derive(Clone)]
pub struct LinearMap {
    name: String,
    source: Pres,
    target: Pres,
    rule: Arc<Rule>,
    cache: Arc<RwLock<HashMap<Monomial, Element>>>,
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap({})", self.name)
    }
}

impl LinearMap {
    pub fn new(
        name: &str,
        source: &Pres,
        target: &Pres,
        rule: impl Fn(Monomial) -> Element + Send + Sync + 'static,
    ) -> Self {
        LinearMap {
            name: name.to_string(),
            source: source.clone(),
            target: target.clone(),
            rule: Arc::new(rule),
            cache: Arc::new(RwLock::new(HashMap::new())),
        }
    }

    /// Wraps a one-leg homomorphism (or antihomomorphism).
    pub fn from_hom(hom: Arc<MonomialHom<1>>) -> Self {
        let target = hom.legs()[0].clone();
        let source = hom.source().clone();
        let name = hom.name().to_string();
        LinearMap::new(&name, &source, &target, move |m| hom.apply_monomial_element(m))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Pres {
        &self.source
    }

    pub fn target(&self) -> &Pres {
        &self.target
    }

    pub fn apply_monomial(&self, m: Monomial) -> Element {
        if let Some(e) = self.cache.read().unwrap_or_else(|e| e.into_inner()).get(&m) {
            return e.clone();
        }
        let e = (self.rule)(m);
        self.cache
            .write()
            .unwrap_or_else(|e| e.into_inner())
            .insert(m, e.clone());
        e
    }

    pub fn apply(&self, e: &Element) -> Element {
        e.map_linear(&self.target, |m| self.apply_monomial(m))
    }

    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        let (outer, inner) = (self.clone(), inner.clone());
        let name = format!("{}.{}", outer.name, inner.name);
        let (source, target) = (inner.source.clone(), outer.target.clone());
        LinearMap::new(&name, &source, &target, move |m| outer.apply(&inner.apply_monomial(m)))
    }

    /// Inverse of a map sending each monomial to a nonzero multiple of a
    /// monomial, found by searching preimages g1ᵖ g2ᵠ with |p| ≤ |p'| + reach.
    pub fn monomial_inverse(&self, name: &str, reach: i64) -> LinearMap {
        let fwd = self.clone();
        let n = self.source.n();
        LinearMap::new(name, &self.target, &self.source, move |target: Monomial| {
            let src = fwd.source.clone();
            let bound = reach + target.p.abs();
            let ps = std::iter::once(0).chain((1..=bound).flat_map(|d| [-d, d]));
            for p in ps {
                for q in 0..n {
                    let img = fwd.apply_monomial(Monomial::new(p, q));
                    if let Some((m, c)) = img.as_single_term() {
                        if m == target {
                            let c = c.inv().expect("nonzero coefficient");
                            return Element::term(&src, c, Monomial::new(p, q));
                        }
                    }
                }
            }
            panic!("{}: no monomial preimage of {:?} within reach", fwd.name, target)
        })
    }
}

type FunctionalRule = dyn Fn(Monomial) -> Scalar + Send + Sync;

/// A linear functional given by its values on basis monomials.
#[derive(Clone)]
pub struct Functional {
    name: String,
    pres: Pres,
    rule: Arc<FunctionalRule>,
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Functional({})", self.name)
    }
}

impl Functional {
    pub fn new(name: &str, pres: &Pres, rule: impl Fn(Monomial) -> Scalar + Send + Sync + 'static) -> Self {
        Functional { name: name.to_string(), pres: pres.clone(), rule: Arc::new(rule) }
    }

    /// A functional with finite support.
    pub fn from_values(name: &str, pres: &Pres, values: HashMap<Monomial, Scalar>) -> Self {
        let zero = pres.zero();
        Functional::new(name, pres, move |m| values.get(&m).cloned().unwrap_or_else(|| zero.clone()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pres(&self) -> &Pres {
        &self.pres
    }

    pub fn at(&self, m: Monomial) -> Scalar {
        (self.rule)(m)
    }

    pub fn eval(&self, e: &Element) -> Scalar {
        let mut acc = self.pres.zero();
        for (m, c) in e.terms() {
            let v = self.at(*m);
            if !v.is_zero() {
                acc = &acc + &(c * &v);
            }
        }
        acc
    }

    /// The functional e ↦ self(e·x).
    pub fn right_translate(&self, x: &Element) -> Functional {
        let (f, x) = (self.clone(), x.clone());
        let pres = self.pres.clone();
        Functional::new(&format!("{}(.{})", self.name, x), &self.pres, move |m| {
            f.eval(&Element::monomial(&pres, m).mul(&x))
        })
    }

    /// The functional e ↦ self(x·e).
    pub fn left_translate(&self, x: &Element) -> Functional {
        let (f, x) = (self.clone(), x.clone());
        let pres = self.pres.clone();
        Functional::new(&format!("{}({}.)", self.name, x), &self.pres, move |m| {
            f.eval(&x.mul(&Element::monomial(&pres, m)))
        })
    }

    /// self ∘ map.
    pub fn compose(&self, map: &LinearMap) -> Functional {
        debug_assert!(**map.target() == *self.pres);
        let (f, map) = (self.clone(), map.clone());
        let name = format!("{}.{}", self.name, map.name());
        let src = map.source().clone();
        Functional::new(&name, &src, move |m| f.eval(&map.apply_monomial(m)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::Presentation;

    #[test]
    fn bad_images_are_rejected() {
        let a = Presentation::quantum_group(3, 1, 1).unwrap();
        let g1 = Tensor::from_element(&Element::gens(&a, 1, 0));
        let g1i = Tensor::from_element(&Element::gens(&a, -1, 0));
        // b ↦ b is fine, b ↦ a·b is not (it would need a·ab = λ ab·a).
        let ok = MonomialHom::new("id", &a, [false], g1.clone(), g1i.clone(), Tensor::from_element(&Element::gens(&a, 0, 1)));
        assert!(ok.is_ok());
        let bad = MonomialHom::new("bad", &a, [false], g1.clone(), g1i.clone(), Tensor::from_element(&Element::gens(&a, 0, 0)));
        assert!(matches!(bad, Err(Error::Verification(_))));
        let bad_inv = MonomialHom::new("bad", &a, [false], g1, g1i.scale(&Scalar::from_int(a.field(), 2)), Tensor::from_element(&Element::gens(&a, 0, 1)));
        assert!(bad_inv.is_err());
    }

    #[test]
    fn images_are_multiplicative() {
        let a = Presentation::quantum_group(4, 3, 1).unwrap();
        let hom = MonomialHom::new(
            "sigma",
            &a,
            [false],
            Tensor::from_element(&Element::term(&a, a.lambda(-1).clone(), Monomial::new(1, 0))),
            Tensor::from_element(&Element::term(&a, a.lambda(1).clone(), Monomial::new(-1, 0))),
            Tensor::from_element(&Element::gens(&a, 0, 1)),
        )
        .unwrap();
        for m1 in crate::qalgebra::Window::new(2).monomials(4) {
            for m2 in crate::qalgebra::Window::new(2).monomials(4) {
                let e1 = Element::monomial(&a, m1);
                let e2 = Element::monomial(&a, m2);
                assert_eq!(
                    hom.apply_element(&e1.mul(&e2)),
                    hom.apply_element(&e1).mul(&hom.apply_element(&e2))
                );
            }
        }
        let map = LinearMap::from_hom(Arc::new(hom));
        let inv = map.monomial_inverse("sigma^-1", 2);
        for m in crate::qalgebra::Window::new(3).monomials(4) {
            let e = Element::monomial(&a, m);
            assert_eq!(map.apply(&inv.apply(&e)), e);
        }
    }
}
