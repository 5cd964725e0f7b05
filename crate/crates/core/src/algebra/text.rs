//! Polynomial text format.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := coeff ('*'? monomial)? | monomial
//! monomial := var ('^' uint)? ('*'? var ('^' uint)?)*
//! var      := 'x' | 'y' | 'z' | 'w' | 't'        (t is an alias of w)
//! coeff    := int | int '/' uint | '(' int ('+' int '*u')? ')'
//! ```
//!
//! Whitespace is ignored. The printer emits terms in descending monomial
//! order without spaces and is a right inverse of the parser.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::field::{Field, Scalar};
use super::monomial::Monomial;
use super::poly::MultiPoly;
use super::AlgebraError;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: Field,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> AlgebraError {
        AlgebraError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
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

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn uint(&mut self) -> Result<BigInt, AlgebraError> {
        let d = self.digits().ok_or_else(|| self.error("expected digits"))?;
        Ok(d.parse().expect("digits"))
    }

    fn int(&mut self) -> Result<BigInt, AlgebraError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let v = self.uint()?;
        Ok(if neg { -v } else { v })
    }

    fn small_uint(&mut self) -> Result<u32, AlgebraError> {
        let d = self.digits().ok_or_else(|| self.error("expected exponent"))?;
        d.parse().map_err(|_| self.error("exponent too large"))
    }

    fn var(&mut self) -> Option<usize> {
        let i = match self.peek()? {
            b'x' => 0,
            b'y' => 1,
            b'z' => 2,
            b'w' | b't' => 3,
            _ => return None,
        };
        self.pos += 1;
        Some(i)
    }

    fn at_var(&self) -> bool {
        matches!(self.peek(), Some(b'x' | b'y' | b'z' | b'w' | b't'))
    }

    fn monomial(&mut self) -> Result<Monomial, AlgebraError> {
        let mut e = [0u32; 4];
        let mut first = true;
        loop {
            let save = self.pos;
            if !first {
                self.eat(b'*');
            }
            let Some(i) = self.var() else {
                if first {
                    return Err(self.error("expected variable"));
                }
                self.pos = save;
                break;
            };
            first = false;
            let k = if self.eat(b'^') { self.small_uint()? } else { 1 };
            e[i] = e[i]
                .checked_add(k)
                .ok_or_else(|| self.error("exponent overflow"))?;
        }
        Ok(Monomial(e))
    }

    fn coeff(&mut self) -> Result<Scalar, AlgebraError> {
        if self.eat(b'(') {
            let a = self.int()?;
            let mut b = BigInt::from(0);
            if self.eat(b'+') || self.peek() == Some(b'-') {
                b = self.int()?;
                if !(self.eat(b'*') && self.eat(b'u')) {
                    return Err(self.error("expected '*u'"));
                }
            }
            if !self.eat(b')') {
                return Err(self.error("expected ')'"));
            }
            return match self.field {
                Field::Quadratic { p, .. } => {
                    let p = BigInt::from(p);
                    let r = |v: &BigInt| {
                        let m = ((v % &p) + &p) % &p;
                        u32::try_from(&m).expect("residue")
                    };
                    Ok(Scalar::Pair(r(&a), r(&b)))
                }
                _ if b == BigInt::from(0) => Ok(self.field.from_bigint(&a)),
                _ => Err(self.error("'u' is only defined over GF(p^2)")),
            };
        }
        let num = self.uint()?;
        if self.eat(b'/') {
            let den = self.uint()?;
            return self
                .field
                .from_ratio(&num, &den)
                .map_err(|_| self.error("zero denominator"));
        }
        Ok(self.field.from_bigint(&num))
    }

    fn term(&mut self, poly: &mut MultiPoly, negate: bool) -> Result<(), AlgebraError> {
        let c = if self.at_var() {
            self.field.one()
        } else {
            let c = self.coeff()?;
            let save = self.pos;
            if self.eat(b'*') && !self.at_var() {
                self.pos = save;
                return Err(self.error("expected variable after '*'"));
            }
            c
        };
        let m = if self.at_var() {
            self.monomial()?
        } else {
            Monomial::ONE
        };
        let c = if negate { self.field.neg(&c) } else { c };
        poly.add_term(c, m);
        Ok(())
    }
}

/// Parses the polynomial text format over `field`.
pub fn parse_poly(text: &str, field: Field) -> Result<MultiPoly, AlgebraError> {
    let cleaned: Vec<u8> = text.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
    let mut p = Parser {
        src: &cleaned,
        pos: 0,
        field,
    };
    let mut poly = MultiPoly::zero(field);
    if p.peek().is_none() {
        return Err(p.error("empty polynomial"));
    }
    let mut negate = p.eat(b'-');
    if !negate {
        p.eat(b'+');
    }
    p.term(&mut poly, negate)?;
    while let Some(c) = p.peek() {
        negate = match c {
            b'+' => false,
            b'-' => true,
            _ => return Err(p.error(format!("unexpected character {:?}", c as char))),
        };
        p.pos += 1;
        p.term(&mut poly, negate)?;
    }
    Ok(poly)
}

/// Prints a polynomial in the canonical text format.
pub fn format_poly(f: &MultiPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in f.terms().enumerate() {
        let constant = *m == Monomial::ONE;
        let (negative, body) = match c {
            Scalar::Rational(q) => {
                let abs = q.abs();
                let body = if abs.is_one() && !constant {
                    String::new()
                } else if abs.denom().is_one() {
                    abs.numer().to_string()
                } else {
                    format!("{}/{}", abs.numer(), abs.denom())
                };
                (q.is_negative(), body)
            }
            Scalar::Residue(a) | Scalar::Pair(a, 0) => {
                let body = if *a == 1 && !constant {
                    String::new()
                } else {
                    a.to_string()
                };
                (false, body)
            }
            Scalar::Pair(a, b) => (false, format!("({a}+{b}*u)")),
        };
        if negative {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        out.push_str(&body);
        if !constant {
            if !body.is_empty() {
                out.push('*');
            }
            out.push_str(&m.to_string());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_round_trips() {
        let q = Field::Rationals;
        for s in ["x^2-y^2", "3*x^2*y+1/2*z*w", "-x*y*z*w+7", "0", "-1/3", "x"] {
            assert_eq!(parse_poly(s, q).unwrap().to_string(), s);
        }
        let g = Field::quadratic(31).unwrap();
        for s in ["(4+3*u)*x^2+y", "(0+1*u)*w-5"] {
            let printed = parse_poly(s, g).unwrap().to_string();
            assert_eq!(parse_poly(&printed, g).unwrap(), parse_poly(s, g).unwrap());
        }
        assert_eq!(parse_poly("(0+1*u)*w-5", g).unwrap().to_string(), "(0+1*u)*w+26");
    }

    #[test]
    fn lenient_input() {
        let q = Field::Rationals;
        assert_eq!(
            parse_poly("2 x y + 3x^2 - t", q).unwrap(),
            parse_poly("3*x^2+2*x*y-w", q).unwrap()
        );
        assert_eq!(parse_poly("xy", q).unwrap(), parse_poly("x*y", q).unwrap());
        assert_eq!(parse_poly("x^2x", q).unwrap(), parse_poly("x^3", q).unwrap());
        let f = Field::Prime(7);
        assert_eq!(parse_poly("-x", f).unwrap().to_string(), "6*x");
    }

    #[test]
    fn rejects_garbage() {
        let q = Field::Rationals;
        for s in ["", "x^", "x+*y", "2*", "x/2", "(1+2*u)*x", "a", "x++y", "1/0"] {
            assert!(parse_poly(s, q).is_err(), "{s}");
        }
    }

    fn arb_poly(field: Field) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((-20i64..20, 0u32..4, 0u32..4, 0u32..4, 0u32..4), 0..8).prop_map(
            move |ts| {
                MultiPoly::from_int_terms(
                    field,
                    &ts.iter()
                        .map(|(c, a, b, d, e)| (*c, [*a, *b, *d, *e]))
                        .collect::<Vec<_>>(),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn printer_parser_inverse_over_qq(f in arb_poly(Field::Rationals)) {
            let s = f.to_string();
            let g = parse_poly(&s, Field::Rationals).unwrap();
            prop_assert_eq!(&g, &f);
            prop_assert_eq!(g.to_string(), s);
        }

        #[test]
        fn printer_parser_inverse_over_gf31(f in arb_poly(Field::Prime(31))) {
            let s = f.to_string();
            prop_assert_eq!(parse_poly(&s, Field::Prime(31)).unwrap(), f);
        }
    }
}
