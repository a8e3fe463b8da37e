//! Normal-form arithmetic for the presented algebras
//! `g1 g2 = λ g2 g1`, `g2ⁿ = R(g1)` with PBW basis g1ᵖ g2ᵠ (p ∈ Z, 0 ≤ q < n).

mod element;
mod hom;
mod parse;
mod tensor;

pub use element::Element;
pub(crate) use element::{add_into, format_term, join_terms};
pub use hom::{Functional, LinearMap, MonomialHom};
pub use parse::{parse_element, parse_scalar};
pub use tensor::Tensor;

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{lambda_pow, CyclotomicField, Scalar};

/// Basis index of g1ᵖ g2ᵠ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Monomial {
    pub p: i64,
    pub q: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { p: 0, q: 0 };

    pub const fn new(p: i64, q: u32) -> Monomial {
        Monomial { p, q }
    }
}

/// The three algebra shapes the engine knows about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AlgebraKind {
    /// A(n,m,λ): ab = λba, bⁿ = 0.
    QuantumGroup,
    /// X(n,m,λ,μ): xy = λyx, yⁿ = μx^{mn}.
    GaloisObject,
    /// C: uw = λwu, wⁿ = μ(u^{mn} - 1).
    Reflected,
}

/// What g2ⁿ rewrites to.
#[derive(Clone, Debug, PartialEq)]
pub enum NilpotentReduction {
    Zero,
    MuG1Mn(Scalar),
    MuG1MnMinusOne(Scalar),
}

#[derive(Debug)]
pub struct Presentation {
    kind: AlgebraKind,
    n: u32,
    m: u32,
    lambda_exp: i64,
    reduction: NilpotentReduction,
    names: [String; 2],
    field: Arc<CyclotomicField>,
    // λᵏ, μλᵏ and -μλᵏ for k in 0..n
    lambda_pows: Vec<Scalar>,
    mu_lambda: Vec<Scalar>,
    neg_mu_lambda: Vec<Scalar>,
}

pub type Pres = Arc<Presentation>;

impl PartialEq for Presentation {
    fn eq(&self, o: &Self) -> bool {
        std::ptr::eq(self, o)
            || (self.kind == o.kind
                && self.n == o.n
                && self.m == o.m
                && self.lambda_exp.rem_euclid(self.n as i64) == o.lambda_exp.rem_euclid(o.n as i64)
                && self.reduction == o.reduction
                && self.names == o.names)
    }
}

/// Up to two terms of a monomial product, coefficients borrowed from the
/// presentation's tables.
pub type MonoProduct<'a> = [Option<(&'a Scalar, Monomial)>; 2];

impl Presentation {
    pub fn new(
        kind: AlgebraKind,
        n: u32,
        m: u32,
        lambda_exp: i64,
        reduction: NilpotentReduction,
        names: [&str; 2],
    ) -> Result<Pres> {
        if n < 2 {
            return Err(Error::Config(format!("n must be at least 2, got {n}")));
        }
        if m < 1 {
            return Err(Error::Config("m must be at least 1".into()));
        }
        if lambda_exp.gcd(&(n as i64)) != 1 {
            return Err(Error::Config(format!(
                "lambda exponent {lambda_exp} is not coprime to n={n}"
            )));
        }
        if kind != AlgebraKind::QuantumGroup && m.gcd(&n) != 1 {
            return Err(Error::Config(format!("m={m} and n={n} must be coprime")));
        }
        let field = CyclotomicField::get(n);
        let mu = match &reduction {
            NilpotentReduction::Zero => None,
            NilpotentReduction::MuG1Mn(mu) | NilpotentReduction::MuG1MnMinusOne(mu) => {
                if mu.order() != n {
                    return Err(Error::Config(format!(
                        "mu lives in Q(z_{}) but n={n}",
                        mu.order()
                    )));
                }
                Some(mu.clone())
            }
        };
        // μ = 0 degenerates to the nilpotent shape of A.
        let (reduction, mu) = match mu {
            Some(mu) if mu.is_zero() => (NilpotentReduction::Zero, None),
            mu => (reduction, mu),
        };
        let lambda_pows: Vec<Scalar> = (0..n as i64).map(|k| lambda_pow(&field, lambda_exp, k)).collect();
        let zero = Scalar::zero(&field);
        let mu_lambda: Vec<Scalar> = lambda_pows
            .iter()
            .map(|l| mu.as_ref().map_or(zero.clone(), |mu| mu * l))
            .collect();
        let neg_mu_lambda = mu_lambda.iter().map(|s| -s).collect();
        Ok(Arc::new(Presentation {
            kind,
            n,
            m,
            lambda_exp,
            reduction,
            names: [names[0].to_string(), names[1].to_string()],
            field,
            lambda_pows,
            mu_lambda,
            neg_mu_lambda,
        }))
    }

    pub fn quantum_group(n: u32, m: u32, lambda_exp: i64) -> Result<Pres> {
        Self::new(AlgebraKind::QuantumGroup, n, m, lambda_exp, NilpotentReduction::Zero, ["a", "b"])
    }

    pub fn galois_object(n: u32, m: u32, lambda_exp: i64, mu: Scalar) -> Result<Pres> {
        Self::new(
            AlgebraKind::GaloisObject,
            n,
            m,
            lambda_exp,
            NilpotentReduction::MuG1Mn(mu),
            ["x", "y"],
        )
    }

    pub fn reflected(n: u32, m: u32, lambda_exp: i64, mu: Scalar) -> Result<Pres> {
        Self::new(
            AlgebraKind::Reflected,
            n,
            m,
            lambda_exp,
            NilpotentReduction::MuG1MnMinusOne(mu),
            ["u", "w"],
        )
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn lambda_exp(&self) -> i64 {
        self.lambda_exp
    }
    pub fn reduction(&self) -> &NilpotentReduction {
        &self.reduction
    }
    pub fn names(&self) -> [&str; 2] {
        [&self.names[0], &self.names[1]]
    }
    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// μ, or 0 for the Zero reduction.
    pub fn mu(&self) -> Scalar {
        self.mu_lambda[0].clone()
    }

    /// λᵉ (any integer e).
    pub fn lambda(&self, e: i64) -> &Scalar {
        &self.lambda_pows[e.rem_euclid(self.n as i64) as usize]
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(&self.field)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(&self.field)
    }

    pub fn check_same(&self, other: &Presentation) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::PresentationMismatch(format!(
                "{}/{} vs {}/{}",
                self.names[0], self.names[1], other.names[0], other.names[1]
            )))
        }
    }

    /// (g1ᵖ g2ᵠ)(g1ʳ g2ˢ) = λ^{-qr} g1^{p+r} g2^{q+s}, then g2ⁿ is reduced.
    pub fn mul_monomials(&self, a: Monomial, b: Monomial) -> MonoProduct<'_> {
        let e = (-(a.q as i64) * b.p).rem_euclid(self.n as i64) as usize;
        let p = a.p + b.p;
        let q = a.q + b.q;
        if q < self.n {
            return [Some((&self.lambda_pows[e], Monomial::new(p, q))), None];
        }
        let q = q - self.n;
        let shift = (self.m * self.n) as i64;
        match self.reduction {
            NilpotentReduction::Zero => [None, None],
            NilpotentReduction::MuG1Mn(_) => {
                [Some((&self.mu_lambda[e], Monomial::new(p + shift, q))), None]
            }
            NilpotentReduction::MuG1MnMinusOne(_) => [
                Some((&self.mu_lambda[e], Monomial::new(p + shift, q))),
                Some((&self.neg_mu_lambda[e], Monomial::new(p, q))),
            ],
        }
    }

    /// Canonical text of the basis monomial, e.g. `1`, `a`, `a^-2*b^3`.
    pub fn format_monomial(&self, mono: Monomial) -> String {
        let mut parts = Vec::new();
        match mono.p {
            0 => {}
            1 => parts.push(self.names[0].clone()),
            p => parts.push(format!("{}^{}", self.names[0], p)),
        }
        match mono.q {
            0 => {}
            1 => parts.push(self.names[1].clone()),
            q => parts.push(format!("{}^{}", self.names[1], q)),
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [g1, g2] = &self.names;
        let rel = match &self.reduction {
            NilpotentReduction::Zero => "0".to_string(),
            NilpotentReduction::MuG1Mn(mu) => format!("{}*{}^{}", mu, g1, self.m * self.n),
            NilpotentReduction::MuG1MnMinusOne(mu) => {
                format!("{}*({}^{} - 1)", mu, g1, self.m * self.n)
            }
        };
        write!(
            f,
            "{g1}*{g2} = z^{}*{g2}*{g1}, {g2}^{} = {rel}",
            self.lambda_exp.rem_euclid(self.n as i64),
            self.n
        )
    }
}

/// The quantification set {(p,q) : |p| ≤ P, 0 ≤ q < n}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub p_bound: u32,
}

impl Window {
    pub fn new(p_bound: u32) -> Window {
        Window { p_bound }
    }

    pub fn grow(self, by: u32) -> Window {
        Window { p_bound: self.p_bound + by }
    }

    pub fn contains(&self, m: Monomial) -> bool {
        m.p.unsigned_abs() <= self.p_bound as u64
    }

    pub fn monomials(&self, n: u32) -> Vec<Monomial> {
        let p = self.p_bound as i64;
        (-p..=p)
            .flat_map(|p| (0..n).map(move |q| Monomial::new(p, q)))
            .collect()
    }
}

/// Gaussian binomial [k choose j]_q by the Pascal recurrence.
pub fn gaussian_binomial(k: i64, j: i64, q: &Scalar) -> Result<Scalar> {
    if j < 0 || j > k {
        return Err(Error::Domain(format!("gaussian_binomial: j={j} outside 0..={k}")));
    }
    let field = q.field();
    // row[j] = [i choose j]_q for the current i.
    let mut row = vec![Scalar::one(field)];
    for i in 1..=k as usize {
        let mut next = vec![Scalar::one(field); i + 1];
        let mut qj = q.clone();
        for jj in 1..i {
            next[jj] = &row[jj - 1] + &(&qj * &row[jj]);
            qj = &qj * q;
        }
        row = next;
    }
    Ok(row[j as usize].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_validation() {
        assert!(Presentation::quantum_group(1, 1, 1).is_err());
        assert!(Presentation::quantum_group(4, 1, 2).is_err());
        let f4 = CyclotomicField::get(4);
        assert!(Presentation::galois_object(4, 2, 1, Scalar::one(&f4)).is_err());
        assert!(Presentation::galois_object(4, 3, 3, Scalar::one(&f4)).is_ok());
        let f3 = CyclotomicField::get(3);
        assert!(matches!(
            Presentation::galois_object(4, 1, 1, Scalar::one(&f3)),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn gaussian_binomial_small_cases() {
        let f = CyclotomicField::get(7);
        let q = Scalar::zeta_pow(&f, 2);
        let one = Scalar::one(&f);
        // Independent oracle: [2,1] = 1+q, [3,1] = 1+q+q^2, [4,2] = 1+q+2q^2+q^3+q^4.
        let q2 = &q * &q;
        let q3 = &q2 * &q;
        let q4 = &q3 * &q;
        assert_eq!(gaussian_binomial(2, 1, &q).unwrap(), &one + &q);
        assert_eq!(gaussian_binomial(3, 1, &q).unwrap(), &(&one + &q) + &q2);
        let two = Scalar::from_int(&f, 2);
        let expect = &(&(&(&one + &q) + &(&two * &q2)) + &q3) + &q4;
        assert_eq!(gaussian_binomial(4, 2, &q).unwrap(), expect);
        for k in 0..6 {
            assert!(gaussian_binomial(k, 0, &q).unwrap().is_one());
            assert!(gaussian_binomial(k, k, &q).unwrap().is_one());
        }
        assert!(gaussian_binomial(3, 4, &q).is_err());
        assert!(gaussian_binomial(3, -1, &q).is_err());
    }

    #[test]
    fn window_enumeration() {
        let w = Window::new(1);
        let ms = w.monomials(2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0], Monomial::new(-1, 0));
        assert!(w.contains(Monomial::new(-1, 5)));
        assert!(!w.contains(Monomial::new(2, 0)));
    }
}
