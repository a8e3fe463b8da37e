//! Exact arithmetic in the cyclotomic field Q(ζₙ) = Q[t]/Φₙ(t).
//!
//! A [`Scalar`] stores integer numerators over one common positive
//! denominator. Fields are interned per order, so scalars of the same order
//! share one reduction table.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// The field Q(ζₙ) together with the data needed to reduce products.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    degree: usize,
    // Φₙ as integer coefficients, lowest degree first, monic.
    phi: Vec<BigInt>,
    // t^k mod Φₙ for 0 <= k < n. Since Φₙ | tⁿ-1 this reduces any power.
    powers: Vec<Vec<BigInt>>,
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic; returns num / den, assuming exact division.
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() < den.len() {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    // tⁿ - 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

impl CyclotomicField {
    /// The interned field of order `n` (n >= 1).
    pub fn get(n: u32) -> Arc<CyclotomicField> {
        static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
        let map = FIELDS.get_or_init(Default::default);
        let mut map = map.lock().unwrap_or_else(|e| e.into_inner());
        map.entry(n)
            .or_insert_with(|| Arc::new(CyclotomicField::build(n)))
            .clone()
    }

    fn build(n: u32) -> CyclotomicField {
        assert!(n >= 1, "cyclotomic order must be positive");
        let phi = cyclotomic_polynomial(n);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by t, then fold t^degree back.
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for i in 0..degree {
                    cur[i] -= &top * &phi[i];
                }
            }
        }
        CyclotomicField { order: n, degree, phi, powers }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Integer coefficients of Φₙ, lowest degree first.
    pub fn modulus(&self) -> &[BigInt] {
        &self.phi
    }
}

/// An element of Q(ζₙ).
#[derive(Clone)]
pub struct Scalar {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.den == other.den && self.num == other.num
    }
}

impl Eq for Scalar {}

impl Scalar {
    pub fn zero(field: &Arc<CyclotomicField>) -> Scalar {
        Scalar {
            field: field.clone(),
            num: vec![BigInt::zero(); field.degree],
            den: BigInt::one(),
        }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Scalar {
        Scalar::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<CyclotomicField>, v: i64) -> Scalar {
        let mut s = Scalar::zero(field);
        s.num[0] = BigInt::from(v);
        s
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, r: &Rational) -> Scalar {
        let mut s = Scalar::zero(field);
        s.num[0] = r.numer().clone();
        s.den = r.denom().clone();
        s.normalize();
        s
    }

    /// Builds a scalar from coefficients of 1, ζ, ζ², ... (any length; reduced mod Φₙ).
    pub fn from_coefficients(field: &Arc<CyclotomicField>, coeffs: &[Rational]) -> Scalar {
        let mut acc = Scalar::zero(field);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(&Scalar::zeta_pow(field, k as i64) * &Scalar::from_rational(field, c));
        }
        acc
    }

    /// ζᵉ, with e reduced mod n.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, e: i64) -> Scalar {
        let k = e.rem_euclid(field.order as i64) as usize;
        Scalar {
            field: field.clone(),
            num: field.powers[k].clone(),
            den: BigInt::one(),
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Coefficients with respect to 1, ζ, ..., ζ^{φ(n)-1}.
    pub fn coefficients(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// The value as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// If the value is ±ζᵏ, returns (sign, k) with the smallest k in [0,n).
    pub fn as_signed_root(&self) -> Option<(i8, u32)> {
        if !self.den.is_one() {
            return None;
        }
        for k in 0..self.field.order {
            let p = &self.field.powers[k as usize];
            if *p == self.num {
                return Some((1, k));
            }
            if p.iter().zip(&self.num).all(|(a, b)| -a == *b) {
                return Some((-1, k));
            }
        }
        None
    }

    fn check_order(&self, other: &Scalar) {
        assert_eq!(
            self.field.order, other.field.order,
            "scalar arithmetic across different cyclotomic fields"
        );
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        if self.den.is_one() {
            return;
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    /// Checked sum; fails when the orders differ.
    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        if self.order() != other.order() {
            return Err(Error::Config(format!(
                "cannot add scalars of orders {} and {}",
                self.order(),
                other.order()
            )));
        }
        Ok(self + other)
    }

    /// Checked product; fails when the orders differ.
    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        if self.order() != other.order() {
            return Err(Error::Config(format!(
                "cannot multiply scalars of orders {} and {}",
                self.order(),
                other.order()
            )));
        }
        Ok(self * other)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm over Q[t].
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        if let Some(r) = self.as_rational() {
            return Ok(Scalar::from_rational(&self.field, &r.recip()));
        }
        let f: Vec<Rational> = self.coefficients();
        let g: Vec<Rational> = self.field.phi.iter().map(|c| Rational::from(c.clone())).collect();
        // Invariant: r0 = s0*f (mod Φ), r1 = s1*f (mod Φ).
        let (mut r0, mut r1) = (trim(g), trim(f));
        let (mut s0, mut s1) = (vec![], vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = qpoly_divmod(&r0, &r1);
            let s2 = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant because Φₙ is irreducible.
        let c = r1[0].recip();
        let coeffs: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
        Ok(Scalar::from_coefficients(&self.field, &coeffs))
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Scalar::one(&self.field);
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    fn is_rational_fast(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    fn scale_int(&self, c: &BigInt, d: &BigInt) -> Scalar {
        let mut s = Scalar {
            field: self.field.clone(),
            num: self.num.iter().map(|x| x * c).collect(),
            den: &self.den * d,
        };
        s.normalize();
        s
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn qpoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn qpoly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn qpoly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let lead = b[db].clone();
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= &c * y;
        }
        quot[i] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.check_order(o);
        let mut s = if self.den == o.den {
            Scalar {
                field: self.field.clone(),
                num: self.num.iter().zip(&o.num).map(|(a, b)| a + b).collect(),
                den: self.den.clone(),
            }
        } else {
            Scalar {
                field: self.field.clone(),
                num: self
                    .num
                    .iter()
                    .zip(&o.num)
                    .map(|(a, b)| a * &o.den + b * &self.den)
                    .collect(),
                den: &self.den * &o.den,
            }
        };
        s.normalize();
        s
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.check_order(o);
        if o.is_rational_fast() {
            return self.scale_int(&o.num[0], &o.den);
        }
        if self.is_rational_fast() {
            return o.scale_int(&self.num[0], &self.den);
        }
        let f = &self.field;
        let d = f.degree;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let n = f.order as usize;
        let mut num = vec![BigInt::zero(); d];
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < d {
                num[k] += c;
            } else {
                for (t, r) in f.powers[k % n].iter().enumerate() {
                    if !r.is_zero() {
                        num[t] += &c * r;
                    }
                }
            }
        }
        let mut s = Scalar { field: f.clone(), num, den: &self.den * &o.den };
        s.normalize();
        s
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn write_rational(f: &mut fmt::Formatter<'_>, num: &BigInt, den: &BigInt) -> fmt::Result {
    if den.is_one() {
        write!(f, "{}", num)
    } else {
        write!(f, "{}/{}", num, den)
    }
}

/// Literal form: rationals as `p/q`, ±ζᵏ as `z^k`, everything else as a
/// parenthesised sum of `c*z^k` terms.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational_fast() {
            return write_rational(f, &self.num[0], &self.den);
        }
        if let Some((sign, k)) = self.as_signed_root() {
            return write!(f, "{}z^{}", if sign < 0 { "-" } else { "" }, k);
        }
        write!(f, "(")?;
        let mut first = true;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = Rational::new(c.clone(), self.den.clone());
            let neg = r.is_negative();
            let abs = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if k == 0 {
                write_rational(f, abs.numer(), abs.denom())?;
            } else {
                if !abs.is_one() {
                    write_rational(f, abs.numer(), abs.denom())?;
                    write!(f, "*")?;
                }
                write!(f, "z^{}", k)?;
            }
        }
        write!(f, ")")
    }
}

/// Free-function forms of the basic operations.
pub fn cyc_add(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    a.try_add(b)
}

pub fn cyc_mul(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    a.try_mul(b)
}

pub fn cyc_inv(a: &Scalar) -> Result<Scalar> {
    a.inv()
}

/// λᵉ for λ = ζ^lambda_exp in Q(ζₙ).
pub fn lambda_pow(field: &Arc<CyclotomicField>, lambda_exp: i64, e: i64) -> Scalar {
    let n = field.order as i64;
    Scalar::zeta_pow(field, (lambda_exp.rem_euclid(n) * e.rem_euclid(n)) % n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        let show = |n| -> Vec<i64> {
            CyclotomicField::get(n)
                .modulus()
                .iter()
                .map(|c| i64::try_from(c).unwrap())
                .collect()
        };
        assert_eq!(show(2), vec![1, 1]);
        assert_eq!(show(3), vec![1, 1, 1]);
        assert_eq!(show(4), vec![1, 0, 1]);
        assert_eq!(show(6), vec![1, -1, 1]);
        assert_eq!(show(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn additions() {
        let f3 = CyclotomicField::get(3);
        let s = cyc_add(&Scalar::zeta_pow(&f3, 1), &Scalar::zeta_pow(&f3, 2)).unwrap();
        assert_eq!(s, Scalar::from_int(&f3, -1));
        let f4 = CyclotomicField::get(4);
        let s = cyc_add(&Scalar::zeta_pow(&f4, 2), &Scalar::one(&f4)).unwrap();
        assert!(s.is_zero());
        let f2 = CyclotomicField::get(2);
        let s = cyc_add(&Scalar::from_rational(&f2, &q(1, 2)), &Scalar::from_rational(&f2, &q(1, 3)));
        assert_eq!(s.unwrap().as_rational(), Some(q(5, 6)));
    }

    #[test]
    fn order_mismatch_is_config_error() {
        let a = Scalar::one(&CyclotomicField::get(3));
        let b = Scalar::one(&CyclotomicField::get(4));
        assert!(matches!(cyc_add(&a, &b), Err(Error::Config(_))));
        assert!(matches!(cyc_mul(&a, &b), Err(Error::Config(_))));
    }

    #[test]
    fn products_and_inverses() {
        let f3 = CyclotomicField::get(3);
        let z = Scalar::zeta_pow(&f3, 1);
        let zz = cyc_mul(&z, &z).unwrap();
        assert_eq!(zz.coefficients(), vec![q(-1, 1), q(-1, 1)]);
        let f4 = CyclotomicField::get(4);
        let z4 = Scalar::zeta_pow(&f4, 1);
        assert_eq!(cyc_inv(&z4).unwrap(), -&z4);
        let f5 = CyclotomicField::get(5);
        let p = cyc_mul(&Scalar::zeta_pow(&f5, 1), &Scalar::zeta_pow(&f5, 4)).unwrap();
        assert!(p.is_one());
        assert!(matches!(cyc_inv(&Scalar::zero(&f5)), Err(Error::Domain(_))));
    }

    #[test]
    fn lambda_powers() {
        let f3 = CyclotomicField::get(3);
        assert_eq!(lambda_pow(&f3, 1, -1), Scalar::zeta_pow(&f3, 2));
        let f2 = CyclotomicField::get(2);
        assert_eq!(lambda_pow(&f2, 1, 7), Scalar::from_int(&f2, -1));
        for n in 2..8 {
            let f = CyclotomicField::get(n);
            assert!(lambda_pow(&f, 1, 0).is_one());
        }
    }

    #[test]
    fn display_forms() {
        let f5 = CyclotomicField::get(5);
        assert_eq!(Scalar::zeta_pow(&f5, 3).to_string(), "z^3");
        assert_eq!((-Scalar::zeta_pow(&f5, 4)).to_string(), "-z^4");
        assert_eq!(Scalar::from_rational(&f5, &q(-3, 4)).to_string(), "-3/4");
        let s = &Scalar::one(&f5) + &Scalar::from_rational(&f5, &q(2, 3));
        assert_eq!(s.to_string(), "5/3");
        let t = &Scalar::zeta_pow(&f5, 1) + &Scalar::from_int(&f5, 2);
        assert_eq!(t.to_string(), "(2 + z^1)");
        // -1 is z^0 with a sign, and in order 2 also ζ itself.
        let f2 = CyclotomicField::get(2);
        assert_eq!(Scalar::zeta_pow(&f2, 1).to_string(), "-1");
    }

    fn arb_scalar(n: u32) -> impl Strategy<Value = Scalar> {
        let f = CyclotomicField::get(n);
        let d = f.degree();
        prop::collection::vec((-6i64..=6, 1i64..=4), d).prop_map(move |cs| {
            let coeffs: Vec<Rational> = cs.iter().map(|&(a, b)| q(a, b)).collect();
            Scalar::from_coefficients(&f, &coeffs)
        })
    }

    fn arb_triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        prop::sample::select(vec![2u32, 3, 4, 5, 6, 7, 8, 12])
            .prop_flat_map(|n| (arb_scalar(n), arb_scalar(n), arb_scalar(n)))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn lambda_pow_is_a_character(n in 2u32..13, e1 in -40i64..40, e2 in -40i64..40) {
            let f = CyclotomicField::get(n);
            for k in (1..n as i64).filter(|k| k.gcd(&(n as i64)) == 1) {
                prop_assert_eq!(
                    &lambda_pow(&f, k, e1) * &lambda_pow(&f, k, e2),
                    lambda_pow(&f, k, e1 + e2)
                );
            }
        }

        #[test]
        fn lambda_is_primitive(n in 2u32..16) {
            let f = CyclotomicField::get(n);
            prop_assert!(lambda_pow(&f, 1, n as i64).is_one());
            for j in 1..n as i64 {
                prop_assert!(!lambda_pow(&f, 1, j).is_one());
            }
        }

        #[test]
        fn coefficient_round_trip(a in prop::sample::select(vec![3u32, 5, 8]).prop_flat_map(arb_scalar)) {
            let back = Scalar::from_coefficients(a.field(), &a.coefficients());
            prop_assert_eq!(back, a);
        }
    }
}
