//! The reflected quantum group C: uw = λwu, μ + wⁿ = μu^{mn}, with
//! Δ(u) = u⊗u, Δ(w) = w⊗uᵐ + 1⊗w, the left coaction γ(x) = u⊗x,
//! γ(y) = 1⊗y + w⊗xᵐ on X, and the inverse data β_C(u) = x⊗x⁻¹,
//! β_C(w) = y⊗x⁻ᵐ - 1⊗yx⁻ᵐ in X⊗X^op.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{BElement, Reflection};
use crate::error::{Error, Result};
use crate::galois::GaloisObject;
use crate::hopf::HopfStructure;
use crate::linalg::LinearSystem;
use crate::qalgebra::{Element, Functional, Monomial, MonomialHom, Pres, Presentation, Tensor, Window};
use crate::scalar::Scalar;

pub struct ReflectedGroup {
    c: Pres,
    hopf: Arc<HopfStructure>,
    gamma: MonomialHom<2>,
    beta_c: MonomialHom<2>,
    psi_c: Functional,
}

impl ReflectedGroup {
    /// Builds C, its Hopf structure (solved on `solve`), γ and β_C. The
    /// generator images are checked against the relations of X and C.
    pub fn construct(g: &GaloisObject, solve: Window) -> Result<ReflectedGroup> {
        let x = g.x();
        let (n, m) = (x.n(), x.m() as i64);
        let c = Presentation::reflected(n, x.m(), x.lambda_exp(), x.mu())?;
        let hopf = HopfStructure::new(&c, solve)?;
        let gc = |p, q| Element::gens(&c, p, q);
        let gx = |p, q| Element::gens(x, p, q);
        let gamma = MonomialHom::new(
            "gamma",
            x,
            [false, false],
            Tensor::pure([&gc(1, 0), &gx(1, 0)]),
            Tensor::pure([&gc(-1, 0), &gx(-1, 0)]),
            Tensor::pure([&gc(0, 0), &gx(0, 1)]).add(&Tensor::pure([&gc(0, 1), &gx(m, 0)])),
        )?;
        let y_xm = gx(0, 1).mul(&gx(-m, 0));
        let beta_c = MonomialHom::new(
            "beta_C",
            &c,
            [false, true],
            Tensor::pure([&gx(1, 0), &gx(-1, 0)]),
            Tensor::pure([&gx(-1, 0), &gx(1, 0)]),
            Tensor::pure([&gx(0, 1), &gx(-m, 0)]).sub(&Tensor::pure([&gx(0, 0), &y_xm])),
        )?;

        // ψ_C is the right integral of C, scaled so that
        // ψ_C((ι⊗ω)γ(x)) = ω(1)ψ_X(x) at ω = G(0,0), x = x^{m(1-n)}y^{n-1}.
        let top = Monomial::new(m * (1 - n as i64), n - 1);
        let lhs = gamma.apply_monomial(top).contract(1, |k| if k == Monomial::ONE { x.one() } else { x.zero() });
        let raw = hopf.right_integral().eval(&lhs);
        if raw.is_zero() {
            return Err(Error::Verification("right integral of C vanishes on [G(0,0), psi_X support]".into()));
        }
        let kappa = &g.psi_x().at(top) * &raw.inv()?;
        let psi_c = {
            let (r, k) = (hopf.right_integral().clone(), kappa);
            Functional::new("psi_C", &c, move |mono| &r.at(mono) * &k)
        };
        Ok(ReflectedGroup { c, hopf, gamma, beta_c, psi_c })
    }

    pub fn pres(&self) -> &Pres {
        &self.c
    }

    pub fn hopf(&self) -> &Arc<HopfStructure> {
        &self.hopf
    }

    pub fn gamma_hom(&self) -> &MonomialHom<2> {
        &self.gamma
    }

    pub fn gamma(&self, e: &Element) -> Tensor<2> {
        self.gamma.apply(e)
    }

    pub fn gamma_monomial(&self, m: Monomial) -> Arc<Tensor<2>> {
        self.gamma.apply_monomial(m)
    }

    pub fn beta_c_hom(&self) -> &MonomialHom<2> {
        &self.beta_c
    }

    pub fn beta_c(&self, e: &Element) -> Tensor<2> {
        self.beta_c.apply(e)
    }

    pub fn psi_c(&self) -> &Functional {
        &self.psi_c
    }

    /// The left Galois map x⊗y ↦ γ(x)(1⊗y).
    pub fn galois_map(&self, t: &Tensor<2>) -> Tensor<2> {
        let legs = [self.c.clone(), t.legs()[1].clone()];
        let mut acc = Tensor::zero(&legs);
        for (k, c) in t.terms() {
            let right = Tensor::basis(&legs, [Monomial::ONE, k[1]]);
            acc = acc.add(&self.gamma_monomial(k[0]).mul(&right).scale(c));
        }
        acc
    }

    /// Its inverse c⊗y ↦ β_C(c)(1⊗y).
    pub fn galois_map_inv(&self, t: &Tensor<2>) -> Tensor<2> {
        let x = t.legs()[1].clone();
        let legs = [x.clone(), x];
        let mut acc = Tensor::zero(&legs);
        for (k, c) in t.terms() {
            let right = Tensor::basis(&legs, [Monomial::ONE, k[1]]);
            acc = acc.add(&self.beta_c.apply_monomial(k[0]).mul(&right).scale(c));
        }
        acc
    }

    pub fn table(&self) -> BTreeMap<String, String> {
        let mut t = BTreeMap::new();
        t.insert("C presentation".into(), self.c.to_string());
        let [gu, gw] = self.c.names();
        for (name, mono) in [("x", Monomial::new(1, 0)), ("y", Monomial::new(0, 1))] {
            t.insert(format!("gamma({name})"), self.gamma_monomial(mono).to_string());
        }
        for (name, mono) in [(gu, Monomial::new(1, 0)), (gw, Monomial::new(0, 1))] {
            t.insert(format!("beta_C({name})"), self.beta_c.apply_monomial(mono).to_string());
            t.insert(format!("Delta_C({name})"), self.hopf.coproduct_monomial(mono).to_string());
        }
        t
    }
}

impl Reflection {
    pub fn c(&self) -> &Pres {
        self.reflected.pres()
    }

    /// [ω,x]_C = (ι⊗ω)γ(x).
    pub fn bracket_c(&self, w: &super::XDual, x: &Element) -> Element {
        let mut acc = Element::zero(self.c());
        for (m, c) in x.terms() {
            acc = acc.add(&self.reflected.gamma_monomial(*m).contract(1, |k| w.at(k)).scale(c));
        }
        acc
    }

    /// ⟨g_s hᵏ, ·⟩ on monomials uᵖwʲ, solved from z·b = (⟨b,·⟩⊗ι)γ(z) over
    /// z = xᵖyʳ with |p| ≤ P + mn or p = -s. Errors if the system is
    /// inconsistent (B would not act through C) or underdetermined.
    pub fn pairing_basis(&self, s: i64, k: u32) -> Result<BTreeMap<Monomial, Scalar>> {
        if let Some(v) = self.pairing.read().unwrap_or_else(|e| e.into_inner()).get(&(s, k)) {
            return Ok(v.clone());
        }
        let x = self.x();
        let n = x.n();
        let bound = self.solve.p_bound as i64;
        let mut ps: Vec<i64> = (-bound..=bound).chain([-s]).collect();
        ps.sort();
        ps.dedup();
        let cols: Vec<Monomial> = ps.iter().flat_map(|p| (0..n).map(move |j| Monomial::new(*p, j))).collect();
        let index: BTreeMap<Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let b = BElement::basis(x, s, k);
        let mut sys = LinearSystem::new(x.field(), cols.len());
        for &p in &ps {
            for r in 0..n {
                let z = Monomial::new(p, r);
                let lhs = self.b_act(&self.g.xm(z), &b);
                let mut rows: BTreeMap<Monomial, Vec<(usize, Scalar)>> = BTreeMap::new();
                for (key, c) in self.reflected.gamma_monomial(z).terms() {
                    let Some(&j) = index.get(&key[0]) else {
                        return Err(Error::Verification("gamma left the pairing window".into()));
                    };
                    rows.entry(key[1]).or_default().push((j, c.clone()));
                }
                for (m, _) in lhs.terms() {
                    rows.entry(*m).or_default();
                }
                for (m, row) in rows {
                    sys.push(row, lhs.coeff(m));
                }
            }
        }
        if !sys.is_consistent() {
            return Err(Error::Verification(format!("g_{s}*h^{k} does not act through the pairing with C")));
        }
        let sol = sys
            .solve_unique()
            .ok_or_else(|| Error::Verification(format!("pairing of g_{s}*h^{k} with C is underdetermined")))?;
        let v: BTreeMap<Monomial, Scalar> = cols.into_iter().zip(sol).filter(|(_, c)| !c.is_zero()).collect();
        self.pairing.write().unwrap_or_else(|e| e.into_inner()).insert((s, k), v.clone());
        Ok(v)
    }

    /// ⟨b, c⟩.
    pub fn pairing(&self, b: &BElement, c: &Element) -> Result<Scalar> {
        let mut acc = self.x().zero();
        for ((s, k), bc) in b.terms() {
            let table = self.pairing_basis(*s, *k)?;
            for (m, cc) in c.terms() {
                if let Some(v) = table.get(m) {
                    acc = &acc + &(&(bc * cc) * v);
                }
            }
        }
        Ok(acc)
    }
}
