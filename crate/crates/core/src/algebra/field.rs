//! Exact coefficient fields: the rationals, prime fields GF(p) and the
//! quadratic extensions GF(p^2) = GF(p)[u]/(u^2 - n).
//!
//! A [`Field`] is a small `Copy` descriptor; elements are stored as
//! [`Scalar`] values whose interpretation depends on the descriptor. All
//! scalar arithmetic goes through the descriptor so that a residue never
//! leaks into the wrong field.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Primes must stay strictly below this bound so that residue products fit in `u64`.
pub const PRIME_LIMIT: u64 = 1 << 31;

/// Descriptor of an exact coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u32),
    /// GF(p^2) with generator `u`, `u^2 = nonresidue`.
    Quadratic { p: u32, nonresidue: u32 },
}

/// A field element without its descriptor.
///
/// Canonical forms: reduced fractions for the rationals, residues in `[0, p)`
/// for GF(p), and pairs `(a, b)` meaning `a + b*u` for GF(p^2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u32),
    Pair(u32, u32),
}

/// Deterministic primality test by trial division (inputs are below 2^31).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Euler criterion; `p` must be an odd prime.
pub fn is_quadratic_nonresidue(n: u64, p: u64) -> bool {
    n % p != 0 && pow_mod(n, (p - 1) / 2, p) == p - 1
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, AlgebraError> {
        if p >= PRIME_LIMIT {
            return Err(AlgebraError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    /// GF(p^2) using the smallest quadratic nonresidue mod `p`.
    pub fn quadratic(p: u64) -> Result<Field, AlgebraError> {
        Field::prime(p)?;
        if p == 2 {
            return Err(AlgebraError::UnsupportedExtension(p));
        }
        let n = (2..p)
            .find(|&n| is_quadratic_nonresidue(n, p))
            .expect("odd primes have nonresidues");
        Ok(Field::Quadratic {
            p: p as u32,
            nonresidue: n as u32,
        })
    }

    pub fn quadratic_with(p: u64, nonresidue: u64) -> Result<Field, AlgebraError> {
        Field::prime(p)?;
        if p == 2 {
            return Err(AlgebraError::UnsupportedExtension(p));
        }
        if !is_quadratic_nonresidue(nonresidue, p) {
            return Err(AlgebraError::NotNonresidue { p, n: nonresidue });
        }
        Ok(Field::Quadratic {
            p: p as u32,
            nonresidue: (nonresidue % p) as u32,
        })
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u32 {
        match *self {
            Field::Rationals => 0,
            Field::Prime(p) | Field::Quadratic { p, .. } => p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match *self {
            Field::Rationals => None,
            Field::Prime(p) => Some(p as u64),
            Field::Quadratic { p, .. } => Some(p as u64 * p as u64),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Field::Rationals)
    }

    /// The field of degree `e` over the prime field of `self`, for `e` in {1, 2}.
    pub fn extension(&self, e: u32) -> Result<Field, AlgebraError> {
        match (*self, e) {
            (Field::Prime(_), 1) | (Field::Quadratic { .. }, 1) => Ok(*self),
            (Field::Prime(p), 2) => Field::quadratic(p as u64),
            _ => Err(AlgebraError::UnsupportedExtension(self.characteristic() as u64)),
        }
    }

    /// Whether elements of `self` can be read as elements of `other` unchanged.
    pub fn embeds_into(&self, other: &Field) -> bool {
        match (*self, *other) {
            (a, b) if a == b => true,
            (Field::Prime(p), Field::Quadratic { p: q, .. }) => p == q,
            _ => false,
        }
    }

    /// Re-express a scalar of a subfield as a scalar of `self`.
    pub fn embed(&self, s: &Scalar) -> Scalar {
        match (*self, s) {
            (Field::Quadratic { .. }, Scalar::Residue(a)) => Scalar::Pair(*a, 0),
            _ => s.clone(),
        }
    }

    pub fn parse_tag(tag: &str) -> Result<Field, AlgebraError> {
        let bad = || AlgebraError::BadFieldTag(tag.to_string());
        let tag = tag.trim();
        if tag == "QQ" {
            return Ok(Field::Rationals);
        }
        let parts: Vec<&str> = tag.split(':').collect();
        match parts.as_slice() {
            ["GF", p] => Field::prime(p.parse().map_err(|_| bad())?),
            ["GF", p, "2"] => Field::quadratic(p.parse().map_err(|_| bad())?),
            _ => Err(bad()),
        }
    }

    pub fn tag(&self) -> String {
        self.to_string()
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue(n.rem_euclid(p as i64) as u32),
            Field::Quadratic { p, .. } => Scalar::Pair(n.rem_euclid(p as i64) as u32, 0),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) | Field::Quadratic { p, .. } => {
                let r = n.mod_floor(&BigInt::from(p)).to_u32().expect("residue fits");
                self.embed(&Scalar::Residue(r))
            }
        }
    }

    /// `num / den`; fails when the denominator vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        match *self {
            Field::Rationals => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            _ => {
                let d = self.from_bigint(den);
                let inv = self.inv(&d)?;
                Ok(self.mul(&self.from_bigint(num), &inv))
            }
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar, AlgebraError> {
        self.from_ratio(q.numer(), q.denom())
    }

    /// `a + b*u`; only meaningful for quadratic extensions.
    pub fn pair(&self, a: i64, b: i64) -> Result<Scalar, AlgebraError> {
        match *self {
            Field::Quadratic { p, .. } => Ok(Scalar::Pair(
                a.rem_euclid(p as i64) as u32,
                b.rem_euclid(p as i64) as u32,
            )),
            _ if b == 0 => Ok(self.from_i64(a)),
            _ => Err(AlgebraError::UnsupportedExtension(self.characteristic() as u64)),
        }
    }

    /// Checks that `s` is a canonical element of this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (*self, s) {
            (Field::Rationals, Scalar::Rational(_)) => true,
            (Field::Prime(p), Scalar::Residue(a)) => *a < p,
            (Field::Quadratic { p, .. }, Scalar::Pair(a, b)) => *a < p && *b < p,
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue(r) => *r == 0,
            Scalar::Pair(x, y) => *x == 0 && *y == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue(r) => *r == 1,
            Scalar::Pair(x, y) => *x == 1 && *y == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        with_arith!(*self, ar => ar.lower(&ar.add(&ar.lift(a), &ar.lift(b))))
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        with_arith!(*self, ar => ar.lower(&ar.sub(&ar.lift(a), &ar.lift(b))))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        with_arith!(*self, ar => ar.lower(&ar.mul(&ar.lift(a), &ar.lift(b))))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        with_arith!(*self, ar => ar.lower(&ar.neg(&ar.lift(a))))
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, AlgebraError> {
        with_arith!(*self, ar => ar
            .inv(&ar.lift(a))
            .map(|e| ar.lower(&e))
            .ok_or(AlgebraError::DivisionByZero))
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, AlgebraError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut exp: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// A square root in this field, if one exists. Finite fields only;
    /// over the rationals only exact squares of fractions are recognised.
    pub fn sqrt(&self, a: &Scalar) -> Option<Scalar> {
        match *self {
            Field::Rationals => {
                let Scalar::Rational(q) = a else { return None };
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                (&n * &n == *q.numer() && &d * &d == *q.denom())
                    .then(|| Scalar::Rational(BigRational::new(n, d)))
            }
            _ => with_arith!(*self, ar => {
                let order = self.order().expect("finite");
                super::arith::tonelli_shanks(&ar, &ar.lift(a), order).map(|e| ar.lower(&e))
            }),
        }
    }

    /// All elements of a finite field in canonical order.
    pub fn elements(&self) -> Vec<Scalar> {
        match *self {
            Field::Rationals => Vec::new(),
            Field::Prime(p) => (0..p).map(Scalar::Residue).collect(),
            Field::Quadratic { p, .. } => (0..p)
                .flat_map(|a| (0..p).map(move |b| Scalar::Pair(a, b)))
                .collect(),
        }
    }

    /// Formats a scalar as used in JSON files: `p/q`, `a`, or `a+b*u`.
    pub fn format(&self, s: &Scalar) -> String {
        match s {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue(a) => a.to_string(),
            Scalar::Pair(a, 0) => a.to_string(),
            Scalar::Pair(a, b) => format!("{a}+{b}*u"),
        }
    }

    /// Inverse of [`Field::format`]; also accepts the parenthesised
    /// polynomial-coefficient form `(a+b*u)`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, AlgebraError> {
        let bad = |m: &str| AlgebraError::Parse {
            position: 0,
            message: format!("bad scalar {text:?}: {m}"),
        };
        let mut t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.starts_with('(') && t.ends_with(')') {
            t = t[1..t.len() - 1].to_string();
        }
        if t.is_empty() {
            return Err(bad("empty"));
        }
        if let Some(body) = t.strip_suffix("*u") {
            // a+b*u or b*u
            let (a, b) = match body.rfind(['+', '-']).filter(|&i| i > 0) {
                Some(i) => (&body[..i], &body[i..]),
                None => ("0", body),
            };
            let a: i64 = a.parse().map_err(|_| bad("integer expected"))?;
            let b: i64 = b
                .trim_start_matches('+')
                .parse()
                .map_err(|_| bad("integer expected"))?;
            return self.pair(a, b);
        }
        if t == "u" {
            return self.pair(0, 1);
        }
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n, d),
            None => (t.as_str(), "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| bad("integer expected"))?;
        let den = BigInt::from_str(den).map_err(|_| bad("integer expected"))?;
        self.from_ratio(&num, &den)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF:{p}"),
            Field::Quadratic { p, .. } => write!(f, "GF:{p}:2"),
        }
    }
}

/// An element together with its field, for callers that want operator syntax.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: Scalar,
}

impl FieldElement {
    pub fn new(field: Field, value: Scalar) -> Result<Self, AlgebraError> {
        if !field.contains(&value) {
            return Err(AlgebraError::NotInField {
                field,
                value: format!("{value:?}"),
            });
        }
        Ok(FieldElement { field, value })
    }

    pub fn from_i64(field: Field, n: i64) -> Self {
        FieldElement {
            field,
            value: field.from_i64(n),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn value(&self) -> &Scalar {
        &self.value
    }

    pub fn into_value(self) -> Scalar {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(self.with(self.field.add(&self.value, &other.value)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(self.with(self.field.sub(&self.value, &other.value)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(self.with(self.field.mul(&self.value, &other.value)))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(self.with(self.field.div(&self.value, &other.value)?))
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        Ok(self.with(self.field.inv(&self.value)?))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(&self.value))
    }

    fn with(&self, value: Scalar) -> Self {
        FieldElement {
            field: self.field,
            value,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(&self.value))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl std::ops::$tr for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).expect("field mismatch")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_and_nonresidues() {
        assert!(is_prime(2) && is_prime(31) && is_prime(2147483647));
        assert!(!is_prime(1) && !is_prime(961) && !is_prime(2147483649));
        assert_eq!(
            Field::quadratic(31).unwrap(),
            Field::Quadratic { p: 31, nonresidue: 3 }
        );
        assert_eq!(
            Field::quadratic(7).unwrap(),
            Field::Quadratic { p: 7, nonresidue: 3 }
        );
        assert!(Field::quadratic_with(31, 2).is_err()); // 2 = 8^2 mod 31
        assert!(matches!(Field::prime(91), Err(AlgebraError::NotPrime(91))));
        assert!(matches!(
            Field::prime(1 << 31),
            Err(AlgebraError::PrimeTooLarge(_))
        ));
    }

    #[test]
    fn tags_round_trip() {
        for tag in ["QQ", "GF:31", "GF:29:2"] {
            assert_eq!(Field::parse_tag(tag).unwrap().tag(), tag);
        }
        assert!(Field::parse_tag("GF:30").is_err());
        assert!(Field::parse_tag("ZZ").is_err());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        for f in [Field::Rationals, Field::Prime(7), Field::quadratic(7).unwrap()] {
            assert!(matches!(f.inv(&f.zero()), Err(AlgebraError::DivisionByZero)));
        }
        let f = Field::Prime(31);
        assert!(f
            .from_ratio(&BigInt::from(1), &BigInt::from(62))
            .is_err());
    }

    #[test]
    fn scalar_text_round_trip() {
        let q = Field::Rationals;
        let s = q.parse_scalar("-3/6").unwrap();
        assert_eq!(q.format(&s), "-1/2");
        let g = Field::quadratic(31).unwrap();
        let s = g.parse_scalar("4+30*u").unwrap();
        assert_eq!(s, Scalar::Pair(4, 30));
        assert_eq!(g.format(&s), "4+30*u");
        assert_eq!(g.parse_scalar("(4-1*u)").unwrap(), s);
        assert_eq!(g.parse_scalar("7").unwrap(), Scalar::Pair(7, 0));
        assert_eq!(Field::Prime(31).parse_scalar("1/2").unwrap(), Scalar::Residue(16));
    }

    #[test]
    fn square_roots() {
        let f = Field::Prime(31);
        for a in f.elements() {
            if let Some(r) = f.sqrt(&a) {
                assert_eq!(f.mul(&r, &r), a);
            }
        }
        let g = Field::quadratic(31).unwrap();
        // every element of GF(31) is a square in GF(31^2)
        for a in Field::Prime(31).elements() {
            let a = g.embed(&a);
            let r = g.sqrt(&a).expect("square in the extension");
            assert_eq!(g.mul(&r, &r), a);
        }
        let q = Field::Rationals;
        assert_eq!(
            q.sqrt(&q.parse_scalar("9/4").unwrap()),
            Some(q.parse_scalar("3/2").unwrap())
        );
        assert_eq!(q.sqrt(&q.from_i64(2)), None);
    }
}
