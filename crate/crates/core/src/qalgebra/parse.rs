//! Element literals.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ['^' exp]
//! exp    := int | '{' int '}' | '(' int ')'
//! atom   := integer | 'z' | generator | '(' expr ')'
//! ```
//! Division is only by nonzero scalars; negative powers need an invertible base.

use super::{Element, Monomial, Pres, Presentation};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    pres: &'a Pres,
    allow_gens: bool,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.pos, format!("expected '{}'", c as char))
        }
    }

    fn expr(&mut self) -> Result<Element> {
        let mut acc = Element::zero(self.pres);
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                let f = self.factor()?;
                acc = acc.mul(&f);
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let f = self.factor()?;
                let inv = match f.as_single_term() {
                    Some((Monomial::ONE, c)) => c.inv()?,
                    _ => return err(at, "can only divide by a nonzero scalar"),
                };
                acc = acc.scale(&inv);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            if self.src.get(self.pos) == Some(&b'+') {
                self.pos += 1;
            }
            false
        };
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits == self.pos {
            return err(start, "expected an integer");
        }
        let text = std::str::from_utf8(&self.src[digits..self.pos]).expect("ascii digits");
        let v: i64 = text
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: "integer out of range".into() })?;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat(b'{') {
            let v = self.integer()?;
            self.expect(b'}')?;
            Ok(v)
        } else if self.eat(b'(') {
            let v = self.integer()?;
            self.expect(b')')?;
            Ok(v)
        } else {
            self.integer()
        }
    }

    fn factor(&mut self) -> Result<Element> {
        let start = self.peek().map(|_| self.pos).unwrap_or(self.pos);
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base.0);
        }
        let at = self.pos;
        let e = self.exponent()?;
        if e.unsigned_abs() > 100_000 {
            return err(at, "exponent too large");
        }
        match base.1 {
            // g1^e needs no repeated multiplication.
            Atom::G1 => Ok(Element::gens(self.pres, e, 0)),
            Atom::Zeta => Ok(Element::scalar(self.pres, Scalar::zeta_pow(self.pres.field(), e))),
            Atom::Other => {
                let b = if e < 0 {
                    match base.0.inverse() {
                        Ok(inv) => inv,
                        Err(_) => {
                            if let Some((Monomial::ONE, c)) = base.0.as_single_term() {
                                Element::scalar(self.pres, c.inv()?)
                            } else {
                                return err(start, "negative power of a non-invertible factor");
                            }
                        }
                    }
                } else {
                    base.0
                };
                Ok(b.pow(e.unsigned_abs() as u32))
            }
        }
    }

    fn atom(&mut self) -> Result<(Element, Atom)> {
        let Some(c) = self.peek() else {
            return err(self.pos, "unexpected end of input");
        };
        let start = self.pos;
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(b')')?;
            return Ok((e, Atom::Other));
        }
        if c.is_ascii_digit() {
            let v = self.integer()?;
            return Ok((Element::scalar(self.pres, Scalar::from_int(self.pres.field(), v)), Atom::Other));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            if name == "z" {
                return Ok((
                    Element::scalar(self.pres, Scalar::zeta_pow(self.pres.field(), 1)),
                    Atom::Zeta,
                ));
            }
            let [g1, g2] = self.pres.names();
            if self.allow_gens && name == g1 {
                return Ok((Element::gens(self.pres, 1, 0), Atom::G1));
            }
            if self.allow_gens && name == g2 {
                return Ok((Element::gens(self.pres, 0, 1), Atom::Other));
            }
            return err(start, format!("unknown generator '{name}'"));
        }
        err(start, format!("unexpected character '{}'", c as char))
    }
}

#[derive(Clone, Copy)]
enum Atom {
    G1,
    Zeta,
    Other,
}

fn run(text: &str, pres: &Pres, allow_gens: bool) -> Result<Element> {
    if !text.is_ascii() {
        let pos = text.char_indices().find(|(_, c)| !c.is_ascii()).map_or(0, |(i, _)| i);
        return err(pos, "non-ASCII character");
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, pres, allow_gens };
    if p.peek().is_none() {
        return err(0, "empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return err(p.pos, "unexpected trailing input");
    }
    Ok(e)
}

/// Parses an element literal into normal form.
pub fn parse_element(text: &str, pres: &Pres) -> Result<Element> {
    run(text, pres, true)
}

/// Parses a scalar literal such as `1/2`, `z^2 - 3` or `(1+z)/5` in Q(ζₙ).
pub fn parse_scalar(text: &str, n: u32) -> Result<Scalar> {
    let pres = Presentation::quantum_group(n, 1, 1)?;
    let e = run(text, &pres, false)?;
    Ok(e.coeff(Monomial::ONE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CyclotomicField;
    use proptest::prelude::*;

    #[test]
    fn reads_terms_directly() {
        let a = Presentation::quantum_group(3, 1, 1).unwrap();
        let e = parse_element("a^-1*b^2 + 3*b", &a).unwrap();
        let expect = Element::from_terms(
            &a,
            [
                (Monomial::new(-1, 2), a.one()),
                (Monomial::new(0, 1), Scalar::from_int(a.field(), 3)),
            ],
        );
        assert_eq!(e, expect);
        for alt in ["a^{-1}*b^2+3*b", "a^(-1) * b*b + b*3", "3*b + a^-1*b^2"] {
            assert_eq!(parse_element(alt, &a).unwrap(), expect, "{alt}");
        }
    }

    #[test]
    fn normal_form_on_parse() {
        let a = Presentation::quantum_group(3, 1, 1).unwrap();
        let e = parse_element("b*a", &a).unwrap();
        assert_eq!(e.to_string(), "z^2*a*b");
        let f2 = CyclotomicField::get(2);
        let x = Presentation::galois_object(2, 1, 1, Scalar::one(&f2)).unwrap();
        assert_eq!(parse_element("y^2", &x).unwrap().to_string(), "x^2");
    }

    #[test]
    fn scalars() {
        let s = parse_scalar("1/2 + 1/3", 2).unwrap();
        assert_eq!(s.to_string(), "5/6");
        let s = parse_scalar("z + z^2", 3).unwrap();
        assert_eq!(s.to_string(), "-1");
        let s = parse_scalar("(1+z)^-1", 5).unwrap();
        let back = &s * &parse_scalar("1+z", 5).unwrap();
        assert!(back.is_one());
        assert_eq!(parse_scalar("z^-1", 3).unwrap(), Scalar::zeta_pow(&CyclotomicField::get(3), 2));
    }

    #[test]
    fn errors_carry_positions() {
        let a = Presentation::quantum_group(3, 1, 1).unwrap();
        assert_eq!(
            parse_element("a + q", &a),
            Err(Error::Parse { pos: 4, msg: "unknown generator 'q'".into() })
        );
        assert!(matches!(parse_element("a +", &a), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_element("(a", &a), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_element("a / b", &a), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_element("b^-1", &a), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_element("", &a), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_element("a a", &a), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_scalar("a", 3), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_element("1/0", &a), Err(Error::Parse { pos: 1, .. })));
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(
            terms in prop::collection::vec((-4i64..=4, 0u32..4, -3i64..=3, 0i64..4, 1i64..4), 0..6),
            n in 2u32..6,
        ) {
            let f = CyclotomicField::get(n);
            let x = Presentation::galois_object(n, 1, 1, Scalar::from_int(&f, 2)).unwrap();
            let e = Element::from_terms(&x, terms.iter().map(|&(p, q, c, k, d)| {
                let coef = &Scalar::from_rational(&f, &crate::scalar::Rational::new(c.into(), d.into()))
                    * &Scalar::zeta_pow(&f, k);
                let coef = &coef + &Scalar::from_int(&f, (k % 2) * c);
                (Monomial::new(p, q % n), coef)
            }));
            let text = e.to_string();
            prop_assert_eq!(parse_element(&text, &x).unwrap(), e, "{}", text);
        }
    }
}
