//! The representation of X on the space with basis e_{p,q} (p ∈ ℤ, 0 ≤ q < n):
//! x′e_{p,q} = e_{p+1,q}, y′e_{p,q} = λ⁻ᵖe_{p,q+1} for q < n-1 and
//! y′e_{p,n-1} = μλ⁻ᵖe_{p+nm,0}.

use std::collections::BTreeMap;

use crate::linalg;
use crate::qalgebra::{add_into, Element, Monomial, Pres};
use crate::scalar::Scalar;

pub type Vector = BTreeMap<(i64, u32), Scalar>;

pub struct Representation {
    x: Pres,
}

impl Representation {
    pub fn new(x: &Pres) -> Representation {
        Representation { x: x.clone() }
    }

    pub fn basis(&self, p: i64, q: u32) -> Vector {
        BTreeMap::from([((p, q), self.x.one())])
    }

    pub fn act_x(&self, v: &Vector, power: i64) -> Vector {
        v.iter().map(|(&(p, q), c)| ((p + power, q), c.clone())).collect()
    }

    pub fn act_y(&self, v: &Vector) -> Vector {
        let (n, m) = (self.x.n(), self.x.m() as i64);
        let mu = self.x.mu();
        let mut out = Vector::new();
        for (&(p, q), c) in v {
            let c = c * self.x.lambda(-p);
            if q + 1 < n {
                add_into(&mut out, (p, q + 1), &c);
            } else {
                add_into(&mut out, (p + n as i64 * m, 0), &(&c * &mu));
            }
        }
        out
    }

    pub fn scale(&self, v: &Vector, c: &Scalar) -> Vector {
        v.iter()
            .map(|(k, s)| (*k, s * c))
            .filter(|(_, s)| !s.is_zero())
            .collect()
    }

    /// xᵖyᵠ acts as x′ᵖ y′ᵠ.
    pub fn act_monomial(&self, mono: Monomial, v: &Vector) -> Vector {
        let mut w = v.clone();
        for _ in 0..mono.q {
            w = self.act_y(&w);
        }
        self.act_x(&w, mono.p)
    }

    pub fn act(&self, e: &Element, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (m, c) in e.terms() {
            for (k, s) in self.act_monomial(*m, v) {
                add_into(&mut out, k, &(c * &s));
            }
        }
        out
    }

    /// The vector of e_{p,q} ↦ xᵖyᵠ identification applied to an element.
    pub fn vector_of(&self, e: &Element) -> Vector {
        e.terms().map(|(m, c)| ((m.p, m.q), c.clone())).collect()
    }

    /// Rank of the operators of `monos`, each recorded by its images of `probes`.
    pub fn operator_rank(&self, monos: &[Monomial], probes: &[Vector]) -> usize {
        let mut index: BTreeMap<(usize, (i64, u32)), usize> = BTreeMap::new();
        let mut rows = Vec::new();
        for mono in monos {
            let mut row = Vec::new();
            for (i, v) in probes.iter().enumerate() {
                for (k, c) in self.act_monomial(*mono, v) {
                    let next = index.len();
                    let col = *index.entry((i, k)).or_insert(next);
                    row.push((col, c));
                }
            }
            rows.push(row);
        }
        linalg::rank(self.x.field(), index.len(), rows)
    }
}
