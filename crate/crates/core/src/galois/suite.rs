//! Window checks for the Galois object. Identities are labelled i ... xvi
//! (there is no xii).

use std::sync::Arc;

use super::{Cocycle, GaloisObject, Representation, Vector};
use crate::linalg;
use crate::qalgebra::{Element, Monomial, Pres, Tensor, Window};
use crate::report::{compare, run_check, single_check, CheckResult, Witness};

pub const IDENTITY_LABELS: [&str; 19] = [
    "i",
    "ii",
    "iii",
    "iv",
    "v",
    "vi",
    "vii",
    "viii",
    "ix",
    "x",
    "xi",
    "xiii",
    "xiv",
    "xv",
    "xvi",
    "lemma-psi-flip",
    "lemma-phi-beta-1",
    "lemma-phi-beta-2",
    "kms",
];

fn pairs(a: &[Monomial], b: &[Monomial]) -> Vec<(Monomial, Monomial)> {
    a.iter().flat_map(|x| b.iter().map(move |y| (*x, *y))).collect()
}

impl GaloisObject {
    fn fx(&self, m: Monomial) -> String {
        self.x.format_monomial(m)
    }

    fn fa(&self, m: Monomial) -> String {
        self.a().format_monomial(m)
    }

    fn s_inv2(&self, c: Monomial) -> Element {
        let h = &self.hopf;
        h.antipode_inv().apply(&h.antipode_inv().apply_monomial(c))
    }

    fn s2(&self, c: Monomial) -> Element {
        let h = &self.hopf;
        h.antipode().apply(&h.antipode().apply_monomial(c))
    }

    fn xa_targets(&self) -> [Pres; 2] {
        [self.x.clone(), self.a().clone()]
    }

    /// The nineteen labelled identities on window monomials of A and X.
    pub fn verify_identities(&self, w: Window) -> Vec<CheckResult> {
        let g = "identities";
        let n = self.x.n();
        let mons = w.monomials(n);
        let wide = w.grow(2).monomials(n);
        let xx = pairs(&mons, &mons);
        let h = &self.hopf;
        let xa = self.xa_targets();
        let x = &self.x;
        let mut out = Vec::new();

        out.push(run_check(g, "i", mons.clone(), |&m| {
            let lhs = self.alpha(&self.sigma_x_prime.apply_monomial(m));
            let rhs = self
                .alpha_monomial(m)
                .map_legs(&xa, [&|k| self.sigma_x_prime.apply_monomial(k), &|c| self.s_inv2(c)]);
            compare(self.fx(m), &lhs, &rhs)
        }));
        out.push(run_check(g, "ii", mons.clone(), |&m| {
            let b = h.antipode_inv().apply(&h.sigma().apply_monomial(m));
            let lhs = self.beta(&b);
            let rhs = self.beta_monomial(m).flip().map_leg(0, x, |k| self.sigma_x.apply_monomial(k));
            compare(self.fa(m), &lhs, &rhs)
        }));
        out.push(single_check(g, "iii", {
            let lhs = self.alpha(&self.delta_x);
            let rhs = Tensor::pure([&self.delta_x, h.modular_element()]);
            compare("delta_X", &lhs, &rhs)
        }));
        out.push(single_check(g, "iv", {
            let lhs = self.beta(h.modular_element());
            let rhs = Tensor::pure([&self.delta_x_inv, &self.delta_x]);
            compare("delta", &lhs, &rhs)
        }));
        out.push(single_check(g, "v", {
            let lhs = self.sigma_x.apply(&self.delta_x);
            let rhs = self.delta_x.scale(&h.tau().inv().expect("tau is nonzero"));
            compare("delta_X", &lhs, &rhs)
        }));
        out.push(run_check(g, "vi", mons.clone(), |&m| {
            let lhs = self.alpha(&self.sigma_x.apply_monomial(m));
            let rhs = self
                .alpha_monomial(m)
                .map_legs(&xa, [&|k| self.theta_x.apply_monomial(k), &|c| h.sigma().apply_monomial(c)]);
            compare(self.fx(m), &lhs, &rhs)
        }));
        out.push(run_check(g, "vii", mons.clone(), |&m| {
            let lhs = self.alpha(&self.theta_x.apply_monomial(m));
            let rhs = self
                .alpha_monomial(m)
                .map_legs(&xa, [&|k| self.theta_x.apply_monomial(k), &|c| self.s2(c)]);
            compare(self.fx(m), &lhs, &rhs)
        }));
        out.push(run_check(g, "viii", mons.clone(), |&m| {
            let lhs = self.alpha(&self.theta_x.apply_monomial(m));
            let rhs = self.alpha_monomial(m).map_legs(
                &xa,
                [&|k| self.sigma_x.apply_monomial(k), &|c| self.sigma_prime_inv.apply_monomial(c)],
            );
            compare(self.fx(m), &lhs, &rhs)
        }));
        out.push(run_check(g, "ix", mons.clone(), |&m| {
            let lhs = self.sigma_x.apply(&self.theta_x.apply_monomial(m));
            let rhs = self.theta_x.apply(&self.sigma_x.apply_monomial(m));
            compare(self.fx(m), &lhs, &rhs)
        }));
        out.push(single_check(g, "x", {
            compare("delta_X", &self.theta_x.apply(&self.delta_x), &self.delta_x)
        }));
        out.push(run_check(g, "xi", wide, |&m| {
            let e = self.xm(m);
            let tau_phi = h.tau() * &self.phi_x.at(m);
            let conj = self.delta_x_inv.mul(&e).mul(&self.delta_x);
            compare(self.fx(m), &self.phi_x.eval(&self.theta_x.apply(&e)), &tau_phi)
                .or_else(|| compare(format!("delta_X^-1 {} delta_X", self.fx(m)), &self.phi_x.eval(&conj), &tau_phi))
        }));
        out.push(run_check(g, "xiii", mons.clone(), |&m| {
            let lhs = self.beta(&h.antipode().apply_monomial(m));
            let rhs = self.beta_monomial(m).flip().map_leg(0, x, |k| self.theta_x.apply_monomial(k));
            compare(self.fa(m), &lhs, &rhs)
        }));
        out.push(run_check(g, "xiv", xx.clone(), |&(u, v)| {
            let legs = [x.clone(), x.clone()];
            let mut lhs = Tensor::zero(&legs);
            for (k, c) in self.alpha_monomial(u).terms() {
                let th = self.theta_x.apply_monomial(k[0]).mul(&self.xm(v));
                for (kb, cb) in self.beta_monomial(k[1]).terms() {
                    let left = self.xm(kb[0]).mul(&th);
                    lhs = lhs.add(&Tensor::pure([&left, &self.xm(kb[1])]).scale(&(c * cb)));
                }
            }
            let rhs = Tensor::basis(&legs, [v, u]);
            compare(format!("x={} y={}", self.fx(u), self.fx(v)), &lhs, &rhs)
        }));
        out.push(run_check(g, "xv", pairs(&mons, &mons), |&(am, y)| {
            let mut lhs = Element::zero(x);
            for (k, c) in self.beta_monomial(am).terms() {
                let t = self.theta_x.apply_monomial(k[1]).mul(&self.xm(k[0])).mul(&self.xm(y));
                lhs = lhs.add(&t.scale(c));
            }
            let rhs = self.xm(y).scale(&h.counit_monomial(am));
            compare(format!("a={} y={}", self.fa(am), self.fx(y)), &lhs, &rhs)
        }));
        out.push(run_check(g, "xvi", mons.clone(), |&m| {
            let lhs = self.beta(&self.s2(m));
            let rhs = self.beta_monomial(m).map_legs(
                &[x.clone(), x.clone()],
                [&|k| self.theta_x.apply_monomial(k), &|k| self.theta_x.apply_monomial(k)],
            );
            compare(self.fa(m), &lhs, &rhs)
        }));
        out.push(run_check(g, "lemma-psi-flip", xx.clone(), |&(u, v)| {
            let left = Tensor::basis(&xa, [u, Monomial::ONE]).mul(&self.alpha_monomial(v));
            let lhs = h.antipode().apply(&left.contract(0, |k| self.psi_x.at(k)));
            let right = self.alpha_monomial(u).mul(&Tensor::basis(&xa, [v, Monomial::ONE]));
            let rhs = right.contract(0, |k| self.psi_x.at(k));
            compare(format!("x={} y={}", self.fx(u), self.fx(v)), &lhs, &rhs)
        }));
        let phi = h.left_integral();
        out.push(run_check(g, "lemma-phi-beta-1", pairs(&mons, &mons), |&(am, u)| {
            let ea = self.am(am);
            let lhs = self.alpha_monomial(u).contract(1, |c| phi.eval(&ea.mul(&self.am(c))));
            let mut rhs = Element::zero(x);
            for (k, c) in self.beta_monomial(am).terms() {
                let v = self.phi_x.eval(&self.xm(k[1]).mul(&self.xm(u)));
                rhs = rhs.add(&self.xm(k[0]).scale(&(c * &v)));
            }
            compare(format!("a={} x={}", self.fa(am), self.fx(u)), &lhs, &rhs)
        }));
        out.push(run_check(g, "lemma-phi-beta-2", pairs(&mons, &mons), |&(am, u)| {
            let sa = h.antipode().apply_monomial(am);
            let lhs = self.alpha_monomial(u).contract(1, |c| phi.eval(&self.am(c).mul(&sa)));
            let mut rhs = Element::zero(x);
            for (k, c) in self.beta_monomial(am).terms() {
                let v = self.phi_x.eval(&self.xm(u).mul(&self.xm(k[0])));
                rhs = rhs.add(&self.xm(k[1]).scale(&(c * &v)));
            }
            compare(format!("a={} x={}", self.fa(am), self.fx(u)), &lhs, &rhs)
        }));
        out.push(run_check(g, "kms", xx, |&(u, v)| {
            let lhs = self.phi_x.eval(&self.xm(v).mul(&self.sigma_x.apply_monomial(u)));
            let rhs = self.phi_x.eval(&self.xm(u).mul(&self.xm(v)));
            compare(format!("x={} y={}", self.fx(u), self.fx(v)), &lhs, &rhs)
        }));
        out
    }

    /// Coaction laws, the functionals and automorphisms against their
    /// defining identities and the closed forms, and the no-antipode witness.
    pub fn verify_structure(&self, w: Window) -> Vec<CheckResult> {
        let g = "galois";
        let n = self.x.n();
        let mn = self.x.m() * n;
        let mons = w.monomials(n);
        let wide = w.grow(2).monomials(n);
        let far = w.grow(mn + 2).monomials(n);
        let h = &self.hopf;
        let (x, a) = (&self.x, self.a());
        let one_x = Element::one(x);
        let mut out = Vec::new();

        out.push(run_check(g, "coaction", mons.clone(), |&m| {
            let t = self.alpha_monomial(m);
            let lhs = t.expand(0, |k| (*self.alpha_monomial(k)).clone());
            let rhs = t.expand(1, |c| (*h.coproduct_monomial(c)).clone());
            compare(self.fx(m), &lhs, &rhs)
        }));
        out.push(run_check(g, "coaction-counit", mons.clone(), |&m| {
            let lhs = self.alpha_monomial(m).contract(1, |c| h.counit_monomial(c));
            compare(self.fx(m), &lhs, &self.xm(m))
        }));
        out.push(run_check(g, "beta-homomorphism", pairs(&mons, &mons), |&(p, q)| {
            let lhs = self.beta(&self.am(p).mul(&self.am(q)));
            let rhs = self.beta_monomial(p).mul_with(&self.beta_monomial(q), [true, false]);
            compare(format!("{} (x) {}", self.fa(p), self.fa(q)), &lhs, &rhs)
        }));
        out.push(run_check(g, "beta-inverts-alpha", mons.clone(), |&m| {
            let legs = [x.clone(), x.clone()];
            let mut lhs = Tensor::zero(&legs);
            for (k, c) in self.alpha_monomial(m).terms() {
                let left = Tensor::basis(&legs, [k[0], Monomial::ONE]);
                lhs = lhs.add(&left.mul(&self.beta_monomial(k[1])).scale(c));
            }
            compare(self.fx(m), &lhs, &Tensor::basis(&legs, [Monomial::ONE, m]))
        }));
        out.push(run_check(g, "counit-collapse", pairs(&mons, &mons), |&(u, am)| {
            let mut lhs = Element::zero(x);
            for (k, c) in self.beta_monomial(am).terms() {
                lhs = lhs.add(&self.xm(u).mul(&self.xm(k[0])).mul(&self.xm(k[1])).scale(c));
            }
            let rhs = self.xm(u).scale(&h.counit_monomial(am));
            compare(format!("x={} a={}", self.fx(u), self.fa(am)), &lhs, &rhs)
        }));
        let gens = [Monomial::new(1, 0), Monomial::new(-1, 0), Monomial::new(0, 1)];
        out.push(run_check(g, "miyashita-ulbrich-action", pairs(&mons, &mons), |&(u, am)| {
            let e = self.xm(u);
            let input = format!("x={} a={}", self.fx(u), self.fa(am));
            if let Some(wit) = compare(&input, &self.miyashita_ulbrich(&e, &Element::one(a)), &e) {
                return Some(wit);
            }
            let xa1 = self.miyashita_ulbrich(&e, &self.am(am));
            gens.iter().find_map(|&gm| {
                let lhs = self.miyashita_ulbrich(&xa1, &self.am(gm));
                let rhs = self.miyashita_ulbrich(&e, &self.am(am).mul(&self.am(gm)));
                compare(format!("{input} a'={}", self.fa(gm)), &lhs, &rhs)
            })
        }));
        out.push(run_check(g, "phi_X-defining", wide.clone(), |&m| {
            let lhs = self.alpha_monomial(m).contract(1, |c| h.left_integral().at(c));
            compare(self.fx(m), &lhs, &one_x.scale(&self.phi_x.at(m)))
        }));
        out.push(run_check(g, "phi_X-table", wide.clone(), |&m| {
            compare(self.fx(m), &self.phi_x.at(m), &self.phi_x_table(m))
        }));
        out.push(run_check(g, "phi_X-delta-invariance", wide.clone(), |&m| {
            let lhs = self.alpha_monomial(m).contract(0, |k| self.phi_x.at(k));
            compare(self.fx(m), &lhs, &h.modular_element().scale(&self.phi_x.at(m)))
        }));
        out.push(run_check(g, "phi_X-faithful", vec![()], |_| {
            let cols = w.grow(mn).monomials(n);
            let rows: Vec<Vec<(usize, _)>> = mons
                .iter()
                .map(|u| {
                    cols.iter()
                        .enumerate()
                        .map(|(j, v)| (j, self.phi_x.eval(&self.xm(*u).mul(&self.xm(*v)))))
                        .filter(|(_, c)| !c.is_zero())
                        .collect()
                })
                .collect();
            let r = linalg::rank(x.field(), cols.len(), rows);
            (r != mons.len()).then(|| Witness {
                input: "rank of (x,y) -> phi_X(xy)".into(),
                lhs: r.to_string(),
                rhs: mons.len().to_string(),
            })
        }));
        out.push(single_check(g, "psi_X-unique", {
            let d = self.psi_x_solution_dim();
            (d != 1).then(|| Witness { input: "invariant functionals".into(), lhs: d.to_string(), rhs: "1".into() })
        }));
        out.push(run_check(g, "psi_X-invariance", far.clone(), |&m| {
            let lhs = self.alpha_monomial(m).contract(0, |k| self.psi_x.at(k));
            compare(self.fx(m), &lhs, &Element::scalar(a, self.psi_x.at(m)))
        }));
        out.push(run_check(g, "psi_X-table", far.clone(), |&m| {
            compare(self.fx(m), &self.psi_x.at(m), &self.psi_x_table(m))
        }));
        out.push(run_check(g, "psi_X-is-phi_X-delta_X", far.clone(), |&m| {
            compare(self.fx(m), &self.psi_x.at(m), &self.phi_x.eval(&self.xm(m).mul(&self.delta_x)))
        }));
        out.push(single_check(g, "delta_X-table", {
            let expect = Element::gens(x, ((n - 1) * self.x.m()) as i64, 0);
            compare("delta_X", &self.delta_x, &expect)
        }));
        out.push(run_check(g, "sigma_X-solved", mons.clone(), |&m| {
            compare(self.fx(m), &self.sigma_x_solved.apply_monomial(m), &self.sigma_x.apply_monomial(m))
        }));
        out.push(run_check(g, "sigma_X-inverse", mons.clone(), |&m| {
            let e = self.xm(m);
            compare(self.fx(m), &self.sigma_x_inv.apply(&self.sigma_x.apply_monomial(m)), &e)
                .or_else(|| compare(self.fx(m), &self.theta_x_inv.apply(&self.theta_x.apply_monomial(m)), &e))
        }));
        out.push(run_check(g, "sigma'_X-kms", pairs(&mons, &mons), |&(u, v)| {
            let lhs = self.psi_x.eval(&self.xm(u).mul(&self.xm(v)));
            let rhs = self.psi_x.eval(&self.xm(v).mul(&self.sigma_x_prime.apply_monomial(u)));
            compare(format!("x={} y={}", self.fx(u), self.fx(v)), &lhs, &rhs)
        }));
        out.push(run_check(g, "theta_X-definition", mons.clone(), |&m| {
            compare(self.fx(m), &self.theta_x_definitional(&self.xm(m)), &self.theta_x.apply_monomial(m))
        }));
        out.push(single_check(g, "no-antipode", self.no_antipode_witness()));
        out
    }

    /// (-yx⁻ᵐ)ⁿ against S_X(yⁿ) = μx^{-mn}: they must differ exactly when μ ≠ 0,
    /// and the former must be -μ·1. Returns a witness on violation.
    pub fn no_antipode_witness(&self) -> Option<Witness> {
        let (lhs, rhs) = self.no_antipode_values();
        let mu = self.mu();
        let expect = Element::scalar(&self.x, -&mu);
        if lhs != expect {
            return compare("(-y x^-m)^n", &lhs, &expect);
        }
        if (lhs != rhs) != !mu.is_zero() {
            return Some(Witness {
                input: format!("mu = {mu}"),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
        None
    }

    /// ((-yx⁻ᵐ)ⁿ, μx^{-mn}).
    pub fn no_antipode_values(&self) -> (Element, Element) {
        let x = &self.x;
        let (n, m) = (x.n(), x.m() as i64);
        let s_y = Element::gens(x, 0, 1).mul(&Element::gens(x, -m, 0)).neg();
        let lhs = s_y.pow(n);
        let rhs = Element::gens(x, -m * n as i64, 0).scale(&self.mu());
        (lhs, rhs)
    }

    /// V and W against their inverses on window tensor monomials.
    pub fn verify_galois_maps(&self, w: Window) -> Vec<CheckResult> {
        let g = "galois-maps";
        let mons = w.monomials(self.x.n());
        let xx = [self.x.clone(), self.x.clone()];
        let xa = self.xa_targets();
        let ps = pairs(&mons, &mons);
        let f2 = |u: Monomial, v: String| format!("{} (x) {}", self.fx(u), v);
        vec![
            run_check(g, "V-inverse-V", ps.clone(), |&(u, v)| {
                let t = Tensor::basis(&xx, [u, v]);
                compare(f2(u, self.fx(v)), &self.galois_v_inv(&self.galois_v(&t)), &t)
            }),
            run_check(g, "V-V-inverse", ps.clone(), |&(u, c)| {
                let t = Tensor::basis(&xa, [u, c]);
                compare(f2(u, self.fa(c)), &self.galois_v(&self.galois_v_inv(&t)), &t)
            }),
            run_check(g, "W-inverse-W", ps.clone(), |&(u, v)| {
                let t = Tensor::basis(&xx, [u, v]);
                compare(f2(u, self.fx(v)), &self.galois_w_inv(&self.galois_w(&t)), &t)
            }),
            run_check(g, "W-W-inverse", ps, |&(u, c)| {
                let t = Tensor::basis(&xa, [u, c]);
                compare(f2(u, self.fa(c)), &self.galois_w(&self.galois_w_inv(&t)), &t)
            }),
        ]
    }

    /// The cleft cocycle against its table on |p|,|r| ≤ P, plus the
    /// section's colinearity and two-sided convolution inverse.
    pub fn verify_cocycle(&self, cocycle: &Cocycle, w: Window) -> Vec<CheckResult> {
        let g = "cocycle";
        let mons = w.monomials(self.x.n());
        let h = &self.hopf;
        vec![
            run_check(g, "section-colinear", mons.clone(), |&m| {
                let (lhs, rhs) = cocycle.colinearity(m);
                compare(self.fa(m), &lhs, &rhs)
            }),
            run_check(g, "section-inverse", mons.clone(), |&m| {
                let eps = Element::scalar(&self.x, h.counit_monomial(m));
                let d = h.coproduct_monomial(m);
                let mut right = Element::zero(&self.x);
                for (k, c) in d.terms() {
                    right = right.add(&cocycle.section(k[0]).mul(&cocycle.section_inverse(k[1])).scale(c));
                }
                compare(self.fa(m), &right, &eps).or_else(|| compare(self.fa(m), &cocycle.left_convolution(m), &eps))
            }),
            run_check(g, "cocycle", pairs(&mons, &mons), |&(c, c2)| {
                let input = format!("{} (x) {}", self.fa(c), self.fa(c2));
                let expect = cocycle.eta_table(c, c2);
                match cocycle.eta(c, c2) {
                    Ok(v) => compare(input, &v, &expect),
                    Err(e) => Some(Witness { input, lhs: e.to_string(), rhs: expect.to_string() }),
                }
            }),
        ]
    }

    /// The representation on e_{p,q}: relations, agreement with left
    /// multiplication, and faithfulness on the window.
    pub fn verify_representation(&self, w: Window) -> Vec<CheckResult> {
        let g = "rep";
        let rep = Representation::new(&self.x);
        let x = &self.x;
        let (n, m) = (x.n(), x.m() as i64);
        let mons = w.monomials(n);
        let fv = |k: Monomial| format!("e_{{{},{}}}", k.p, k.q);
        vec![
            run_check(g, "rep-relations", mons.clone(), |&k| {
                let v = rep.basis(k.p, k.q);
                let xy = rep.act_x(&rep.act_y(&v), 1);
                let yx = rep.scale(&rep.act_y(&rep.act_x(&v, 1)), x.lambda(1));
                let yn = (0..n).fold(v.clone(), |acc, _| rep.act_y(&acc));
                let xmn = rep.scale(&rep.act_x(&v, m * n as i64), &x.mu());
                let back = rep.act_x(&rep.act_x(&v, 1), -1);
                let show = |v: &Vector| format!("{v:?}");
                let wit = |what: &str, l: &Vector, r: &Vector| {
                    (l != r).then(|| Witness { input: format!("{what} at {}", fv(k)), lhs: show(l), rhs: show(r) })
                };
                wit("x'y' = z y'x'", &xy, &yx)
                    .or_else(|| wit("y'^n = mu x'^mn", &yn, &xmn))
                    .or_else(|| wit("x'^-1 x'", &back, &v))
            }),
            run_check(g, "rep-left-regular", pairs(&mons, &mons), |&(u, k)| {
                let lhs = rep.act(&self.xm(u), &rep.basis(k.p, k.q));
                let rhs = rep.vector_of(&self.xm(u).mul(&self.xm(k)));
                (lhs != rhs).then(|| Witness {
                    input: format!("{} on {}", self.fx(u), fv(k)),
                    lhs: format!("{lhs:?}"),
                    rhs: format!("{rhs:?}"),
                })
            }),
            single_check(g, "rep-faithful", {
                let r = rep.operator_rank(&mons, &[rep.basis(0, 0)]);
                (r != mons.len()).then(|| Witness {
                    input: "rank of window operators on e_{0,0}".into(),
                    lhs: r.to_string(),
                    rhs: mons.len().to_string(),
                })
            }),
        ]
    }

    /// Everything: identities, structure, maps, cocycle, representation.
    pub fn verify_all(self: &Arc<Self>, w: Window) -> Vec<CheckResult> {
        let cocycle = Cocycle::new(self);
        let mut out = self.verify_identities(w);
        out.extend(self.verify_structure(w));
        out.extend(self.verify_galois_maps(w));
        out.extend(self.verify_cocycle(&cocycle, w));
        out.extend(self.verify_representation(w));
        out
    }
}
