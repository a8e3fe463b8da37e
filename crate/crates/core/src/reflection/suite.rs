//! Window checks for Â, X̂, B and the bi-Galois structure.

use std::sync::Arc;

use super::dual::{FiniteDual, OnBasis};
use super::{BElement, DualElement, Form, HatXElement, Reflection, XDual};
use crate::error::Result;
use crate::linalg::{self, LinearSystem};
use crate::qalgebra::{Element, Monomial, Tensor, Window};
use crate::report::{compare, run_check, single_check, CheckResult, Witness};
use crate::scalar::Scalar;

fn pairs<A: Clone, B: Clone>(a: &[A], b: &[B]) -> Vec<(A, B)> {
    a.iter().flat_map(|x| b.iter().map(move |y| (x.clone(), y.clone()))).collect()
}

fn triples<A: Clone, B: Clone, C: Clone>(a: &[A], b: &[B], c: &[C]) -> Vec<(A, B, C)> {
    pairs(&pairs(a, b), c).into_iter().map(|((x, y), z)| (x, y, z)).collect()
}

fn err_witness(input: impl std::fmt::Display, e: crate::Error) -> Option<Witness> {
    Some(Witness { input: input.to_string(), lhs: e.to_string(), rhs: "ok".into() })
}

/// Runs a fallible comparison, turning errors into witnesses.
fn attempt(input: impl std::fmt::Display + Clone, f: impl FnOnce() -> Result<Option<Witness>>) -> Option<Witness> {
    f().unwrap_or_else(|e| err_witness(input, e))
}

impl Reflection {
    fn fx(&self, m: Monomial) -> String {
        self.x().format_monomial(m)
    }

    fn fa(&self, m: Monomial) -> String {
        self.a().format_monomial(m)
    }

    fn a_basis(&self, w: Window) -> Vec<DualElement> {
        w.monomials(self.a().n()).into_iter().map(|m| FiniteDual::basis(self.a(), m)).collect()
    }

    fn x_basis(&self, w: Window) -> Vec<XDual> {
        w.monomials(self.x().n()).into_iter().map(|m| self.hat_basis(m)).collect()
    }

    /// Â: products, supports, the generators e_p and d, and the action on X.
    pub fn verify_dual(&self, w: Window) -> Vec<CheckResult> {
        let g = "dual";
        let a = self.a().clone();
        let (n, m) = (a.n(), a.m() as i64);
        let dual = &self.dual;
        let hopf = dual.hopf().clone();
        let mons = w.monomials(n);
        let wide = w.grow(a.m() * n).monomials(n);
        let small = self.a_basis(Window::new(w.p_bound.min(1)));
        let basis = self.a_basis(w);
        let d = dual.d();
        let eps = dual.unit();
        let mut out = Vec::new();

        out.push(run_check(g, "F-top-is-phi", wide.clone(), |&c| {
            let top = FiniteDual::basis(&a, Monomial::new(0, n - 1));
            compare(self.fa(c), &top.at(c), &hopf.left_integral().at(c))
        }));
        out.push(run_check(g, "phi-translate", mons.clone(), |&c| {
            // φ(·aᵖbᵠ) = λ^{-(n-1-q)p} F_{-p,n-1-q}
            let lhs = dual.phi_right(&hopf.mono(c));
            let rhs = FiniteDual::term(&a, Monomial::new(-c.p, n - 1 - c.q), a.lambda(-((n - 1 - c.q) as i64) * c.p).clone());
            compare(self.fa(c), &lhs, &rhs)
        }));
        out.push(run_check(g, "product-support", pairs(&basis, &basis), |(w1, w2)| {
            let lhs = dual.multiply(w1, w2);
            let rhs = FiniteDual::tabulate(&a, wide.iter().copied(), |c| dual.pair(w1, w2, c));
            compare(format!("{w1} * {w2}"), &lhs, &rhs)
        }));
        out.push(run_check(g, "e-idempotents", pairs(&mons, &mons), |&(p, r)| {
            let (ep, er) = (FiniteDual::e(&a, p.p), FiniteDual::e(&a, r.p));
            let rhs = if p.p == r.p { ep.clone() } else { FiniteDual::zero(&a) };
            compare(format!("e_{} e_{}", p.p, r.p), &dual.multiply(&ep, &er), &rhs)
        }));
        out.push(run_check(g, "associativity", triples(&small, &small, &small), |(x, y, z)| {
            let lhs = dual.multiply(&dual.multiply(x, y), z);
            let rhs = dual.multiply(x, &dual.multiply(y, z));
            compare(format!("{x}, {y}, {z}"), &lhs, &rhs)
        }));
        out.push(run_check(g, "module-law", pairs(&small, &small), |(w1, w2)| {
            let prod = dual.multiply(w1, w2);
            mons.iter().find_map(|&z| {
                let xz = self.g.xm(z);
                let lhs = self.act(&prod, &xz);
                let rhs = self.act(w1, &self.act(w2, &xz));
                compare(format!("({w1})({w2}) on {}", self.fx(z)), &lhs, &rhs)
            })
        }));
        out.push(single_check(g, "local-units", {
            let sys_cols: Vec<Monomial> = wide.clone();
            let mut sys = LinearSystem::new(a.field(), sys_cols.len());
            for t in &basis {
                let imgs: Vec<DualElement> =
                    sys_cols.iter().map(|c| dual.multiply(&FiniteDual::basis(&a, *c), t)).collect();
                for c in &wide {
                    let row: Vec<(usize, Scalar)> =
                        imgs.iter().enumerate().map(|(j, i)| (j, i.at(*c))).filter(|(_, v)| !v.is_zero()).collect();
                    sys.push(row, t.at(*c));
                }
            }
            match sys.solve() {
                None => Some(Witness { input: "window".into(), lhs: "no solution".into(), rhs: "local unit".into() }),
                Some(sol) => {
                    let u = FiniteDual::from_terms(&a, sys_cols.into_iter().zip(sol));
                    basis.iter().find_map(|t| compare(format!("u * {t}"), &dual.multiply(&u, t), t))
                }
            }
        }));
        out.push(run_check(g, "d-e-commutation", mons.iter().filter(|c| c.q == 0).copied().collect(), |&c| {
            let ep = FiniteDual::e(&a, c.p);
            let lhs = dual.left_by(&d, &ep);
            let rhs = dual.right_by(&FiniteDual::e(&a, c.p - m), &d);
            if lhs.is_zero() {
                return Some(Witness { input: format!("d e_{}", c.p), lhs: "0".into(), rhs: "nonzero".into() });
            }
            compare(format!("d e_{} = e_{} d", c.p, c.p - m), &lhs, &rhs)
        }));
        out.push(single_check(g, "d-nilpotent", {
            let dn = dual.power(&d, n);
            let dn1 = dual.power(&d, n - 1);
            wide.iter()
                .find_map(|&c| compare(format!("d^{n} at {}", self.fa(c)), &dn.at(c), &a.zero()))
                .or_else(|| {
                    wide.iter().all(|&c| dn1.at(c).is_zero()).then(|| Witness {
                        input: format!("d^{}", n - 1),
                        lhs: "0".into(),
                        rhs: "nonzero".into(),
                    })
                })
        }));
        out.push(run_check(g, "coproduct-e", pairs(&mons, &mons), |&(c, c2)| {
            let prod = hopf.mono(c).mul(&hopf.mono(c2));
            let bound = 2 * w.p_bound as i64 + 1;
            (-bound..=bound).find_map(|p| {
                let lhs = FiniteDual::e(&a, p).eval(&prod);
                let mut rhs = a.zero();
                for t in -bound..=bound {
                    rhs = &rhs + &(&FiniteDual::e(&a, t).at(c) * &FiniteDual::e(&a, p - t).at(c2));
                }
                compare(format!("e_{p} on {} {}", self.fa(c), self.fa(c2)), &lhs, &rhs)
            })
        }));
        out.push(run_check(g, "coproduct-d", pairs(&mons, &mons), |&(c, c2)| {
            let prod = hopf.mono(c).mul(&hopf.mono(c2));
            let lhs = {
                let mut acc = a.zero();
                for (k, s) in prod.terms() {
                    acc = &acc + &(s * &d.at(*k));
                }
                acc
            };
            let cc = dual.c();
            let rhs = &(&d.at(c) * &cc.at(c2)) + &(&eps.at(c) * &d.at(c2));
            compare(format!("d on {} {}", self.fa(c), self.fa(c2)), &lhs, &rhs)
        }));
        out.push(run_check(g, "e-action-table", pairs(&mons, &mons), |&(s, z)| {
            let lhs = self.act(&FiniteDual::e(&a, s.p), &self.g.xm(z));
            let rhs = if s.p == z.p + m * z.q as i64 { self.g.xm(z) } else { Element::zero(self.x()) };
            compare(format!("e_{} . {}", s.p, self.fx(z)), &lhs, &rhs)
        }));
        out.push(run_check(g, "d-action-table", mons.clone(), |&z| {
            let lhs = self.act(&d, &self.g.xm(z));
            let rhs = if z.q == 0 {
                Element::zero(self.x())
            } else {
                self.g.xm(Monomial::new(z.p, z.q - 1)).scale(self.c_q(z.q))
            };
            compare(format!("d . {}", self.fx(z)), &lhs, &rhs)
        }));
        out.push(run_check(g, "C_q-gaussian", (1..n).collect(), |&q| {
            compare(format!("C_{q}"), self.c_q(q), &self.c_q_closed(q))
        }));
        out.push(run_check(g, "theta_X-via-hat-delta", wide.clone(), |&z| {
            compare(self.fx(z), &self.theta_x_via_dual(&self.g.xm(z)), &self.g.theta_x().apply_monomial(z))
        }));
        out.push(single_check(g, "hat-delta-unit", {
            let one = Element::one(self.x());
            compare("hat_delta . 1", &self.act(&dual.hat_delta(), &one), &one)
        }));
        out
    }

    /// X̂: forms, actions, and the Â-valued bracket.
    pub fn verify_hatx(&self, w: Window) -> Vec<CheckResult> {
        let g = "hatx";
        let x = self.x().clone();
        let a = self.a().clone();
        let n = x.n();
        let dual = &self.dual;
        let hopf = dual.hopf().clone();
        let mons = w.monomials(n);
        let wide = w.grow(x.m() * n).monomials(n);
        let small_w = Window::new(w.p_bound.min(1));
        let small = self.x_basis(small_w);
        let a_small = self.a_basis(small_w);
        let mut out = Vec::new();

        out.push(run_check(g, "form-round-trip", pairs(&mons, &Form::ALL), |&(z, form)| {
            let w0 = HatXElement::new(self.g.xm(z), form);
            let v0 = self.hatx(&w0);
            Form::ALL.iter().find_map(|&f2| {
                let w1 = self.convert(&w0, f2);
                compare(format!("{w0} as {f2:?}"), &self.hatx(&w1), &v0)
                    .or_else(|| compare(format!("{w0} via {f2:?}"), &self.convert(&w1, form).rep, &w0.rep))
                    .or_else(|| compare(format!("{w0} rep of {f2:?}"), &self.hatx_rep(&v0, f2).rep, &w1.rep))
            })
        }));
        out.push(run_check(g, "form-support", pairs(&mons, &Form::ALL), |&(z, form)| {
            let w0 = HatXElement::new(self.g.xm(z), form);
            let v0 = self.hatx(&w0);
            let direct = FiniteDual::tabulate(&x, wide.iter().copied(), |t| self.hatx_eval(&w0, &self.g.xm(t)));
            compare(format!("{w0}"), &v0, &direct)
        }));
        out.push(run_check(g, "right-action-formula", pairs(&mons, &self.a_basis(small_w)), |(z, f)| {
            // ψ_X(·z)·ω₁ = ω₁(S(z₍₁₎)) ψ_X(·z₍₀₎)
            let lhs = self.hat_right(&self.hatx(&HatXElement::new(self.g.xm(*z), Form::PsiRight)), f);
            let mut rep = Element::zero(&x);
            for (k, c) in self.g.alpha_monomial(*z).terms() {
                let v = f.eval(&hopf.antipode().apply_monomial(k[1]));
                rep = rep.add(&self.g.xm(k[0]).scale(&(c * &v)));
            }
            let rhs = self.hatx(&HatXElement::new(rep, Form::PsiRight));
            compare(format!("psi_X(.{}) . {f}", self.fx(*z)), &lhs, &rhs)
        }));
        out.push(run_check(g, "right-action-support", pairs(&small, &a_small), |(v, f)| {
            let lhs = self.hat_right(v, f);
            let rhs = FiniteDual::tabulate(&x, wide.iter().copied(), |t| v.eval(&self.act(f, &self.g.xm(t))));
            compare(format!("{v} . {f}"), &lhs, &rhs)
        }));
        out.push(run_check(g, "right-module", {
            let v: Vec<_> = small.iter().flat_map(|v| pairs(&a_small, &a_small).into_iter().map(move |(f1, f2)| (v.clone(), f1, f2))).collect();
            v
        }, |(v, f1, f2)| {
            let lhs = self.hat_right(&self.hat_right(v, f1), f2);
            let rhs = self.hat_right(v, &dual.multiply(f1, f2));
            compare(format!("({v} . {f1}) . {f2}"), &lhs, &rhs)
        }));
        out.push(single_check(g, "psi_X-one", {
            let psi1 = self.hatx(&HatXElement::new(Element::one(&x), Form::PsiRight));
            a_small.iter().find_map(|f| {
                compare(format!("psi_X . {f}"), &self.hat_right(&psi1, f), &psi1.scale(&f.at(Monomial::ONE)))
            })
        }));
        out.push(run_check(g, "bracket-support", pairs(&small, &small), |(v, v2)| {
            let lhs = self.bracket_ahat(v, v2);
            let a_wide = w.grow(2 * x.m() * n).monomials(n);
            let rhs = FiniteDual::tabulate(&a, a_wide, |c| self.bracket_ahat_at(v, v2, c));
            compare(format!("[{v}, {v2}]"), &lhs, &rhs)
        }));
        out.push(single_check(g, "bracket-phi-phi", {
            let phi = self.hatx(&HatXElement::new(Element::one(&x), Form::PhiRight));
            compare("[phi_X, phi_X]", &self.bracket_ahat(&phi, &phi), &FiniteDual::zero(&a))
        }));
        let triples: Vec<(XDual, XDual, DualElement)> = pairs(&small, &small)
            .into_iter()
            .flat_map(|(v, v2)| a_small.iter().map(move |f| (v.clone(), v2.clone(), f.clone())))
            .collect();
        out.push(run_check(g, "bracket-right-linear", triples.clone(), |(v, v2, f)| {
            let lhs = self.bracket_ahat(v, &self.hat_right(v2, f));
            let rhs = dual.multiply(&self.bracket_ahat(v, v2), f);
            compare(format!("[{v}, {v2} . {f}]"), &lhs, &rhs)
        }));
        out.push(run_check(g, "bracket-left-linear", triples.clone(), |(v, v2, f)| {
            let lhs = self.bracket_ahat(&self.hat_left(f, v), v2);
            let rhs = dual.multiply(f, &self.bracket_ahat(v, v2));
            compare(format!("[{f} . {v}, {v2}]"), &lhs, &rhs)
        }));
        let xtriples: Vec<(XDual, XDual, XDual)> = pairs(&small, &small)
            .into_iter()
            .flat_map(|(v, v2)| small.iter().map(move |v3| (v.clone(), v2.clone(), v3.clone())))
            .collect();
        out.push(run_check(g, "bracket-flip", xtriples.clone(), |(v, v2, v3)| {
            // [ω,ω′]_Â·ω″ = ω″·[θ_X⁻¹(ω′),ω]_Â
            let lhs = self.hat_left(&self.bracket_ahat(v, v2), v3);
            let rhs = self.hat_right(v3, &self.bracket_ahat(&self.hat_theta_inv(v2), v));
            compare(format!("{v}, {v2}, {v3}"), &lhs, &rhs)
        }));
        out.push(run_check(g, "bracket-closed-form", pairs(&mons, &small), |(z, v2)| {
            // [φ_X(z·),ω′]_Â(c) = φ(z₍₁₎S(c))ω′(z₍₀₎)
            let v = self.hatx(&HatXElement::new(self.g.xm(*z), Form::PhiLeft));
            let lhs = self.bracket_ahat(&v, v2);
            let a_wide = w.grow(2 * x.m() * n).monomials(n);
            let rhs = FiniteDual::tabulate(&a, a_wide, |c| {
                let sc = hopf.antipode().apply_monomial(c);
                let mut acc = x.zero();
                for (k, s) in self.g.alpha_monomial(*z).terms() {
                    let r = v2.at(k[0]);
                    if !r.is_zero() {
                        acc = &acc + &(&(s * &r) * &hopf.left_integral().eval(&hopf.mono(k[1]).mul(&sc)));
                    }
                }
                acc
            });
            compare(format!("[phi_X({}.), {v2}]", self.fx(*z)), &lhs, &rhs)
        }));
        out.push(single_check(g, "local-units", {
            let targets = self.x_basis(w);
            let cols: Vec<Monomial> = wide.iter().copied().filter(|c| c.q == 0).chain(wide.iter().copied().filter(|c| c.q > 0)).collect();
            let mut sys = LinearSystem::new(a.field(), cols.len());
            for t in &targets {
                let imgs: Vec<XDual> = cols.iter().map(|c| self.hat_right(t, &FiniteDual::basis(&a, *c))).collect();
                for z in &wide {
                    let row: Vec<(usize, Scalar)> =
                        imgs.iter().enumerate().map(|(j, i)| (j, i.at(*z))).filter(|(_, v)| !v.is_zero()).collect();
                    sys.push(row, t.at(*z));
                }
            }
            match sys.solve() {
                None => Some(Witness { input: "window".into(), lhs: "no solution".into(), rhs: "local unit".into() }),
                Some(sol) => {
                    let u = FiniteDual::from_terms(&a, cols.into_iter().zip(sol));
                    targets.iter().find_map(|t| compare(format!("{t} . u"), &self.hat_right(t, &u), t))
                }
            }
        }));
        out.push(run_check(g, "V^t-closed-form", pairs(&mons, &mons), |&(z, c)| {
            // V^t(φ_X(·z)⊗φ(c·)) = φ_X(·c^{[1]}z)⊗φ_X(c^{[2]}·), compared on X⊗X window pairs.
            let phi = hopf.left_integral();
            let phix = self.g.phi_x();
            let cm = hopf.mono(c);
            let beta = self.g.beta_monomial(c);
            let near = small_w.monomials(n);
            pairs(&near, &near).into_iter().find_map(|(s, t)| {
                let v = self.g.galois_v(&Tensor::basis(&[x.clone(), x.clone()], [s, t]));
                let mut lhs = x.zero();
                for (k, cc) in v.terms() {
                    let l = phix.eval(&self.g.xm(k[0]).mul(&self.g.xm(z)));
                    if !l.is_zero() {
                        lhs = &lhs + &(&(cc * &l) * &phi.eval(&cm.mul(&hopf.mono(k[1]))));
                    }
                }
                let mut rhs = x.zero();
                for (k, cc) in beta.terms() {
                    let l = phix.eval(&self.g.xm(s).mul(&self.g.xm(k[0])).mul(&self.g.xm(z)));
                    if !l.is_zero() {
                        rhs = &rhs + &(&(cc * &l) * &phix.eval(&self.g.xm(k[1]).mul(&self.g.xm(t))));
                    }
                }
                compare(format!("z={} c={} on {}(x){}", self.fx(z), self.fa(c), self.fx(s), self.fx(t)), &lhs, &rhs)
            })
        }));
        out.push(run_check(g, "delta-bracket", pairs(&wide, &wide), |&(s, t)| {
            // [ω,ω′]_Â(δ) = ω(δ_X⁻¹)ω′(δ_X), i.e. β(δ) = δ_X⁻¹⊗δ_X.
            let (v, v2) = (self.hat_basis(s), self.hat_basis(t));
            let delta = dual.hopf().modular_element();
            let mut lhs = x.zero();
            for (c, k) in delta.terms() {
                lhs = &lhs + &(k * &self.bracket_ahat_at(&v, &v2, *c));
            }
            let rhs = &v.eval(self.g.delta_x_inv()) * &v2.eval(self.g.delta_x());
            compare(format!("{v}, {v2}"), &lhs, &rhs)
        }));
        out
    }

    /// B: span identification, relations, S_B, ε_B, φ_B, Morita laws.
    pub fn verify_b(&self, w: Window) -> Vec<CheckResult> {
        let g = "B";
        let x = self.x().clone();
        let (n, m) = (x.n(), x.m() as i64);
        let mons = w.monomials(n);
        let basis = self.x_basis(w);
        let small = self.x_basis(Window::new(w.p_bound.min(1)));
        let a_small = self.a_basis(Window::new(w.p_bound.min(1)));
        let b_basis: Vec<(i64, u32)> = mons.iter().map(|t| (t.p, t.q)).collect();
        let mut out = Vec::new();

        out.push(run_check(g, "bracket-in-span", pairs(&basis, &basis), |(v, v2)| {
            attempt(format!("[{v}, {v2}]_B"), || {
                let b = self.bracket_b(v, v2)?;
                let wide = w.grow(x.m() * n).monomials(n);
                Ok(wide.iter().find_map(|&z| {
                    compare(format!("{} . [{v}, {v2}]_B", self.fx(z)), &self.b_act(&self.g.xm(z), &b), &self.bracket_operator(v, v2, z))
                }))
            })
        }));
        out.push(single_check(g, "span-from-brackets", {
            let pool_w = w.grow(x.m() * n);
            let left = self.x_basis(w);
            let right = self.x_basis(pool_w);
            let mut cols: Vec<BElement> = Vec::new();
            let mut failure = None;
            for v in &left {
                for v2 in &right {
                    let p = v.support().next().expect("basis").p;
                    if (0..n).all(|r| self.bracket_operator(v, v2, Monomial::new(p, r)).is_zero()) {
                        continue;
                    }
                    match self.bracket_b(v, v2) {
                        Ok(b) => cols.push(b),
                        Err(e) => failure = failure.or_else(|| err_witness(format!("[{v}, {v2}]_B"), e)),
                    }
                }
            }
            failure.or_else(|| {
                b_basis.iter().find_map(|&(s, k)| {
                    let mut keys: Vec<(i64, u32)> = cols.iter().flat_map(|b| b.terms().map(|(k, _)| *k).collect::<Vec<_>>()).collect();
                    keys.push((s, k));
                    keys.sort();
                    keys.dedup();
                    let mut sys = LinearSystem::new(x.field(), cols.len());
                    for key in keys {
                        let row: Vec<(usize, Scalar)> = cols
                            .iter()
                            .enumerate()
                            .map(|(j, b)| (j, b.coeff(key.0, key.1)))
                            .filter(|(_, v)| !v.is_zero())
                            .collect();
                        sys.push(row, if key == (s, k) { x.one() } else { x.zero() });
                    }
                    (!sys.is_consistent()).then(|| Witness {
                        input: format!("g_{s}*h^{k}"),
                        lhs: "not a combination of brackets".into(),
                        rhs: "in span".into(),
                    })
                })
            })
        }));
        out.push(run_check(g, "h-g-commutation", pairs(&mons, &mons), |&(z, s)| {
            // z·(h g_s) = z·(g_{s+m} h), with h acting as Σ_t g_t h.
            let zx = self.g.xm(z);
            let h_on = |e: &Element| self.b_act(e, &BElement::basis(&x, -e.terms().next().map_or(0, |(m, _)| m.p), 1));
            let lhs = self.b_act(&h_on(&zx), &BElement::basis(&x, s.p, 0));
            let rhs = h_on(&self.b_act(&zx, &BElement::basis(&x, s.p + m, 0)));
            compare(format!("{} . h g_{}", self.fx(z), s.p), &lhs, &rhs)
        }));
        out.push(run_check(g, "g-idempotents", pairs(&mons, &mons), |&(s, t)| {
            let gs = BElement::basis(&x, s.p, 0);
            let gt = BElement::basis(&x, t.p, 0);
            mons.iter().find_map(|&z| {
                let zx = self.g.xm(z);
                let lhs = self.b_act(&self.b_act(&zx, &gs), &gt);
                let rhs = if s.p == t.p { self.b_act(&zx, &gs) } else { Element::zero(&x) };
                compare(format!("{} . g_{} g_{}", self.fx(z), s.p, t.p), &lhs, &rhs)
            })
        }));
        out.push(run_check(g, "h-nilpotent", mons.clone(), |&z| {
            let mut e = self.g.xm(z);
            for _ in 0..n {
                let p = e.terms().next().map_or(0, |(m, _)| m.p);
                e = self.b_act(&e, &BElement::basis(&x, -p, 1));
            }
            compare(format!("{} . h^{n}", self.fx(z)), &e, &Element::zero(&x))
        }));
        out.push(run_check(g, "product-is-composition", pairs(&b_basis, &b_basis), |&((s, k), (t, l))| {
            let (b1, b2) = (BElement::basis(&x, s, k), BElement::basis(&x, t, l));
            let prod = b1.mul(&b2);
            w.grow(x.m() * n).monomials(n).into_iter().find_map(|z| {
                let zx = self.g.xm(z);
                compare(format!("{} . ({b1})({b2})", self.fx(z)), &self.b_act(&zx, &prod), &self.b_act(&self.b_act(&zx, &b1), &b2))
            })
        }));
        out.push(run_check(g, "S_B-well-defined", b_basis.clone(), |&(s, k)| {
            attempt(format!("g_{s}*h^{k}"), || {
                let first = self.s_b_basis_via(s, k, 0)?;
                for j in 1..=k {
                    if let Some(wt) = compare(format!("S_B(g_{s}*h^{k}) split {j}"), &self.s_b_basis_via(s, k, j)?, &first) {
                        return Ok(Some(wt));
                    }
                }
                Ok(None)
            })
        }));
        out.push(run_check(g, "S_B-flip", pairs(&small, &basis), |(v, v2)| {
            attempt(format!("[{v}, {v2}]_B"), || {
                let b = self.bracket_b(v, v2)?;
                Ok(compare(format!("S_B([{v}, {v2}]_B)"), &self.s_b(&b)?, &self.bracket_b(&self.hat_theta(v2), v)?))
            })
        }));
        out.push(run_check(g, "S_B-bijective", b_basis.clone(), |&(s, k)| {
            attempt(format!("g_{s}*h^{k}"), || {
                let b = BElement::basis(&x, s, k);
                Ok(compare(format!("S_B^-1 S_B(g_{s}*h^{k})"), &self.s_b_inv(&self.s_b(&b)?)?, &b)
                    .or(compare(format!("S_B S_B^-1(g_{s}*h^{k})"), &self.s_b(&self.s_b_inv(&b)?)?, &b)))
            })
        }));
        out.push(run_check(g, "eps_B", pairs(&small, &basis), |(v, v2)| {
            attempt(format!("[{v}, {v2}]_B"), || {
                let b = self.bracket_b(v, v2)?;
                let rhs = &v.at(Monomial::ONE) * &v2.at(Monomial::ONE);
                Ok(compare(format!("eps_B([{v}, {v2}]_B)"), &self.eps_b(&b)?, &rhs))
            })
        }));
        out.push(run_check(g, "phi_B-well-defined", b_basis.clone(), |&(s, k)| {
            attempt(format!("g_{s}*h^{k}"), || {
                let first = self.phi_b_basis_via(s, k, 0)?;
                let eps = self.eps_b_basis_via(s, k, 0)?;
                for j in 1..=k {
                    if let Some(wt) = compare(format!("phi_B(g_{s}*h^{k}) split {j}"), &self.phi_b_basis_via(s, k, j)?, &first)
                        .or(compare(format!("eps_B(g_{s}*h^{k}) split {j}"), &self.eps_b_basis_via(s, k, j)?, &eps))
                    {
                        return Ok(Some(wt));
                    }
                }
                Ok(None)
            })
        }));
        out.push(run_check(g, "phi_B-definition", mons.clone(), |&z| {
            // φ_B([φ_X, ψ_X(·z)]_B) = φ_X(z)
            attempt(self.fx(z), || {
                let phi = self.hatx(&HatXElement::new(Element::one(&x), Form::PhiRight));
                let psi = self.hatx(&HatXElement::new(self.g.xm(z), Form::PsiRight));
                let b = self.bracket_b(&phi, &psi)?;
                Ok(compare(format!("phi_B([phi_X, psi_X(.{})]_B)", self.fx(z)), &self.phi_b(&b)?, &self.g.phi_x().at(z)))
            })
        }));
        out.push(single_check(g, "phi_B-faithful", {
            let wide: Vec<(i64, u32)> = w.grow(x.m() * n).monomials(n).iter().map(|t| (t.p, t.q)).collect();
            let rows: Result<Vec<Vec<(usize, Scalar)>>> = b_basis
                .iter()
                .map(|&(s, k)| {
                    let b = BElement::basis(&x, s, k);
                    let mut row = Vec::new();
                    for (j, &(t, l)) in wide.iter().enumerate() {
                        let v = self.phi_b(&b.mul(&BElement::basis(&x, t, l)))?;
                        if !v.is_zero() {
                            row.push((j, v));
                        }
                    }
                    Ok(row)
                })
                .collect();
            match rows {
                Err(e) => err_witness("phi_B pairing", e),
                Ok(rows) => {
                    let r = linalg::rank(x.field(), wide.len(), rows);
                    (r != b_basis.len()).then(|| Witness {
                        input: "rank of (b, b') -> phi_B(bb')".into(),
                        lhs: r.to_string(),
                        rhs: b_basis.len().to_string(),
                    })
                }
            }
        }));
        out.push(single_check(g, "local-units", {
            match self.local_unit_b(&basis) {
                Err(e) => err_witness("window", e),
                Ok(u) => basis.iter().find_map(|v| compare(format!("u . {v}"), &self.b_on_hat(&u, v), v)),
            }
        }));
        let xtriples: Vec<(XDual, XDual, XDual)> = pairs(&small, &small)
            .into_iter()
            .flat_map(|(v, v2)| small.iter().map(move |v3| (v.clone(), v2.clone(), v3.clone())))
            .collect();
        out.push(run_check(g, "morita-left", xtriples.clone(), |(v, v2, v3)| {
            attempt(format!("{v}, {v2}, {v3}"), || {
                let lhs = self.b_on_hat(&self.bracket_b(v, v2)?, v3);
                let rhs = self.hat_right(v, &self.bracket_ahat(v2, v3));
                Ok(compare(format!("[{v}, {v2}]_B . {v3}"), &lhs, &rhs))
            })
        }));
        out.push(run_check(g, "morita-right", xtriples.clone(), |(v, v2, v3)| {
            // ω″·[ω,ω′]_B = [ω″,ω]_Â·ω′
            attempt(format!("{v}, {v2}, {v3}"), || {
                let lhs = self.hat_right_b(v3, &self.bracket_b(v, v2)?)?;
                let rhs = self.hat_left(&self.bracket_ahat(v3, v), v2);
                Ok(compare(format!("{v3} . [{v}, {v2}]_B"), &lhs, &rhs))
            })
        }));
        out.push(run_check(g, "balanced", {
            let v: Vec<_> = pairs(&small, &small).into_iter().flat_map(|(v, v2)| a_small.iter().map(move |f| (v.clone(), v2.clone(), f.clone()))).collect();
            v
        }, |(v, v2, f)| {
            // [ω·ω₁,ω′]_B = [ω,ω₁·ω′]_B
            attempt(format!("{v}, {f}, {v2}"), || {
                let lhs = self.bracket_b(&self.hat_right(v, f), v2)?;
                let rhs = self.bracket_b(v, &self.hat_left(f, v2))?;
                Ok(compare(format!("[{v} . {f}, {v2}]_B"), &lhs, &rhs))
            })
        }));
        out
    }

    /// C: relations, γ, the left Galois map, invariance of φ_X and ψ_X, the
    /// B–C pairing and the rules for ε_C, S_C, ψ_C and the product of C.
    pub fn verify_bi_galois(&self, w: Window) -> Vec<CheckResult> {
        let g = "bi-galois";
        let x = self.x().clone();
        let rg = &self.reflected;
        let c = rg.pres().clone();
        let hc = rg.hopf().clone();
        let (n, m) = (x.n(), x.m() as i64);
        let mons = w.monomials(n);
        let far = w.grow(x.m() * n + 2).monomials(n);
        let small = self.x_basis(Window::new(w.p_bound.min(1)));
        let basis = self.x_basis(w);
        let gc = |p, q| Element::gens(&c, p, q);
        let cx = [c.clone(), x.clone()];
        let xx = [x.clone(), x.clone()];
        let mu = x.mu();
        let mut out = Vec::new();

        out.push(single_check(g, "C-relation-uw", compare("u*w", &gc(1, 0).mul(&gc(0, 1)), &gc(0, 1).mul(&gc(1, 0)).scale(x.lambda(1)))));
        out.push(single_check(g, "C-relation-wn", {
            let lhs = Element::scalar(&c, mu.clone()).add(&gc(0, 1).pow(n));
            let rhs = gc(m * n as i64, 0).scale(&mu);
            compare("mu + w^n", &lhs, &rhs)
        }));
        if mu.is_zero() {
            out.push(run_check(g, "mu0-matches-A", pairs(&mons, &mons), |&(s, t)| {
                let terms = |e: Element| e.terms().map(|(m, k)| format!("{k}@({},{})", m.p, m.q)).collect::<Vec<_>>().join(" ");
                let lhs = terms(gc(s.p, s.q).mul(&gc(t.p, t.q)));
                let rhs = terms(Element::gens(self.a(), s.p, s.q).mul(&Element::gens(self.a(), t.p, t.q)));
                compare(format!("{} * {}", c.format_monomial(s), c.format_monomial(t)), &lhs, &rhs)
            }));
        }
        out.extend(hc.verify_axioms(w));
        out.push(run_check(g, "gamma-coassociative", mons.clone(), |&z| {
            let t = rg.gamma_monomial(z);
            let lhs = t.expand(0, |k| (*hc.coproduct_monomial(k)).clone());
            let rhs = t.expand(1, |k| (*rg.gamma_monomial(k)).clone());
            compare(self.fx(z), &lhs, &rhs)
        }));
        out.push(run_check(g, "gamma-counit", mons.clone(), |&z| {
            compare(self.fx(z), &rg.gamma_monomial(z).contract(0, |k| hc.counit_monomial(k)), &self.g.xm(z))
        }));
        out.push(run_check(g, "coactions-commute", mons.clone(), |&z| {
            let lhs = rg.gamma_monomial(z).expand(1, |k| (*self.g.alpha_monomial(k)).clone());
            let rhs = self.g.alpha_monomial(z).expand(0, |k| (*rg.gamma_monomial(k)).clone());
            compare(self.fx(z), &lhs, &rhs)
        }));
        out.push(run_check(g, "galois-inverse-left", pairs(&mons, &mons), |&(s, t)| {
            let e = Tensor::basis(&xx, [s, t]);
            compare(format!("{} (x) {}", self.fx(s), self.fx(t)), &rg.galois_map_inv(&rg.galois_map(&e)), &e)
        }));
        out.push(run_check(g, "galois-inverse-right", pairs(&mons, &mons), |&(s, t)| {
            let e = Tensor::basis(&cx, [s, t]);
            compare(format!("{} (x) {}", c.format_monomial(s), self.fx(t)), &rg.galois_map(&rg.galois_map_inv(&e)), &e)
        }));
        out.push(run_check(g, "phi_X-gamma-invariant", far.clone(), |&z| {
            let lhs = rg.gamma_monomial(z).contract(1, |k| self.g.phi_x().at(k));
            compare(self.fx(z), &lhs, &Element::scalar(&c, self.g.phi_x().at(z)))
        }));
        out.push(run_check(g, "psi_X-from-psi_C", far.clone(), |&z| {
            let lhs = rg.gamma_monomial(z).contract(0, |k| rg.psi_c().at(k));
            compare(self.fx(z), &lhs, &Element::scalar(&x, self.g.psi_x().at(z)))
        }));
        out.push(run_check(g, "psi_C-right-invariant", far.clone(), |&k| {
            let lhs = hc.coproduct_monomial(k).contract(0, |t| rg.psi_c().at(t));
            compare(c.format_monomial(k), &lhs, &Element::scalar(&c, rg.psi_c().at(k)))
        }));
        let xw: Vec<(XDual, Monomial)> = pairs(&basis, &[]).into_iter().map(|(v, _): (XDual, XDual)| (v, Monomial::ONE)).collect();
        let _ = xw;
        let om_z: Vec<(XDual, Monomial)> = basis.iter().flat_map(|v| far.iter().map(move |z| (v.clone(), *z))).collect();
        out.push(run_check(g, "psi_C-rule", om_z.clone(), |(v, z)| {
            let lhs = rg.psi_c().eval(&self.bracket_c(v, &self.g.xm(*z)));
            let rhs = &v.at(Monomial::ONE) * &self.g.psi_x().at(*z);
            compare(format!("psi_C([{v}, {}]_C)", self.fx(*z)), &lhs, &rhs)
        }));
        out.push(run_check(g, "eps_C-rule", om_z.clone(), |(v, z)| {
            let lhs = hc.counit(&self.bracket_c(v, &self.g.xm(*z)));
            compare(format!("eps_C([{v}, {}]_C)", self.fx(*z)), &lhs, &v.at(*z))
        }));
        out.push(run_check(g, "S_C-rule", pairs(&mons, &mons), |&(s, t)| {
            // S_C([φ_X(·s),t]_C) = [φ_X(t·),s]_C
            let v = self.hatx(&HatXElement::new(self.g.xm(s), Form::PhiRight));
            let v2 = self.hatx(&HatXElement::new(self.g.xm(t), Form::PhiLeft));
            let lhs = hc.antipode().apply(&self.bracket_c(&v, &self.g.xm(t)));
            compare(format!("s={} t={}", self.fx(s), self.fx(t)), &lhs, &self.bracket_c(&v2, &self.g.xm(s)))
        }));
        out.push(run_check(g, "C-product-rule", {
            let v: Vec<_> = small.iter().flat_map(|v| pairs(&mons, &mons).into_iter().map(move |(s, t)| (v.clone(), s, t))).collect();
            v
        }, |(v, s, t)| {
            // Σ [G_i,s]_C [G_j,t]_C ω(x_i x_j) = [ω, st]_C
            let (gs, gt) = (rg.gamma_monomial(*s), rg.gamma_monomial(*t));
            let mut lhs = Element::zero(&c);
            for (k1, c1) in gs.terms() {
                for (k2, c2) in gt.terms() {
                    let val = v.eval(&self.g.xm(k1[1]).mul(&self.g.xm(k2[1])));
                    if !val.is_zero() {
                        lhs = lhs.add(&hc.mono(k1[0]).mul(&hc.mono(k2[0])).scale(&(&(c1 * c2) * &val)));
                    }
                }
            }
            let rhs = self.bracket_c(v, &self.g.xm(*s).mul(&self.g.xm(*t)));
            compare(format!("{v} on {} {}", self.fx(*s), self.fx(*t)), &lhs, &rhs)
        }));
        let b_basis: Vec<(i64, u32)> = mons.iter().map(|t| (t.p, t.q)).collect();
        out.push(run_check(g, "pairing-solvable", b_basis.clone(), |&(s, k)| {
            attempt(format!("g_{s}*h^{k}"), || self.pairing_basis(s, k).map(|_| None))
        }));
        out.push(run_check(g, "pairing-action", triples(&b_basis, &small, &mons), |&((s, k), ref v, z)| {
            // (b·ω)(z) = ⟨b,[ω,z]_C⟩
            attempt(format!("g_{s}*h^{k}"), || {
                let b = BElement::basis(&x, s, k);
                let lhs = self.b_on_hat(&b, v).at(z);
                let rhs = self.pairing(&b, &self.bracket_c(v, &self.g.xm(z)))?;
                Ok(compare(format!("(g_{s}*h^{k} . {v})({})", self.fx(z)), &lhs, &rhs))
            })
        }));
        out.push(run_check(g, "pairing-product", {
            let v: Vec<_> = pairs(&b_basis, &b_basis).into_iter().flat_map(|bb| mons.iter().map(move |t| (bb, *t))).collect();
            v
        }, |&(((s, k), (t, l)), cm)| {
            // ⟨bb′,c⟩ = ⟨b,c₁⟩⟨b′,c₂⟩
            attempt(format!("g_{s}*h^{k}, g_{t}*h^{l}"), || {
                let (b1, b2) = (BElement::basis(&x, s, k), BElement::basis(&x, t, l));
                let lhs = self.pairing(&b1.mul(&b2), &hc.mono(cm))?;
                let mut rhs = x.zero();
                for (key, cc) in hc.coproduct_monomial(cm).terms() {
                    let l1 = self.pairing(&b1, &hc.mono(key[0]))?;
                    if !l1.is_zero() {
                        rhs = &rhs + &(&(cc * &l1) * &self.pairing(&b2, &hc.mono(key[1]))?);
                    }
                }
                Ok(compare(format!("<({b1})({b2}), {}>", c.format_monomial(cm)), &lhs, &rhs))
            })
        }));
        out.push(run_check(g, "pairing-counits", b_basis.clone(), |&(s, k)| {
            attempt(format!("g_{s}*h^{k}"), || {
                let b = BElement::basis(&x, s, k);
                let lhs = self.pairing(&b, &Element::one(&c))?;
                if let Some(wt) = compare(format!("<g_{s}*h^{k}, 1>"), &lhs, &self.eps_b(&b)?) {
                    return Ok(Some(wt));
                }
                // ⟨1_B, uᵖwᵏ⟩ with 1_B = Σ_t g_t; only t = -p can contribute.
                let cm = hc.mono(Monomial::new(s, k));
                let bound = self.solve.p_bound as i64;
                let mut one_b = x.zero();
                for t in -bound..=bound {
                    one_b = &one_b + &self.pairing(&BElement::basis(&x, t, 0), &cm)?;
                }
                Ok(compare(format!("<1_B, {}>", c.format_monomial(Monomial::new(s, k))), &one_b, &hc.counit(&cm)))
            })
        }));
        out.push(run_check(g, "phi_X-B-invariant", pairs(&far, &b_basis.iter().map(|&(s, k)| Monomial::new(s, k)).collect::<Vec<_>>()), |&(z, b)| {
            attempt(self.fx(z), || {
                let bb = BElement::basis(&x, b.p, b.q);
                let lhs = self.g.phi_x().eval(&self.b_act(&self.g.xm(z), &bb));
                let rhs = &self.g.phi_x().at(z) * &self.eps_b(&bb)?;
                Ok(compare(format!("phi_X({} . {bb})", self.fx(z)), &lhs, &rhs))
            })
        }));
        out
    }

    /// Every reflection check on window `w`.
    pub fn verify_all(self: &Arc<Self>, w: Window) -> Vec<CheckResult> {
        let mut out = self.verify_dual(w);
        out.extend(self.verify_hatx(w));
        out.extend(self.verify_b(w));
        out.extend(self.verify_bi_galois(w));
        out
    }
}

impl OnBasis for &DualElement {
    fn at(&self, m: Monomial) -> Scalar {
        (*self).at(m)
    }
}
