//! Unboxed arithmetic used by the hot loops (elimination, jets, enumeration).
//!
//! Each field descriptor maps to one implementation of [`Arith`]; the
//! `with_arith!` macro matches on the descriptor once and runs generic code
//! monomorphised for that representation.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::Scalar;

pub trait Arith: Clone + Send + Sync {
    type E: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_i64(&self, n: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// Panics if `s` is not a scalar of this field or of its prime subfield.
    fn lift(&self, s: &Scalar) -> Self::E;
    fn lower(&self, e: &Self::E) -> Scalar;

    /// `a - b*c`
    fn sub_mul(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E {
        self.sub(a, &self.mul(b, c))
    }

    fn pow(&self, a: &Self::E, mut exp: u64) -> Self::E {
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
}

#[derive(Clone, Copy, Debug)]
pub struct PrimeArith {
    pub p: u32,
}

impl Arith for PrimeArith {
    type E = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (if s >= self.p as u64 { s - self.p as u64 } else { s }) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        Some(self.pow(a, self.p as u64 - 2))
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn lift(&self, s: &Scalar) -> u32 {
        match s {
            Scalar::Residue(a) => *a,
            other => panic!("scalar {other:?} is not in GF({})", self.p),
        }
    }
    fn lower(&self, e: &u32) -> Scalar {
        Scalar::Residue(*e)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadArith {
    pub p: u32,
    pub n: u32,
}

impl QuadArith {
    fn base(&self) -> PrimeArith {
        PrimeArith { p: self.p }
    }
}

impl Arith for QuadArith {
    type E = (u32, u32);

    fn zero(&self) -> (u32, u32) {
        (0, 0)
    }
    fn one(&self) -> (u32, u32) {
        (1, 0)
    }
    fn from_i64(&self, n: i64) -> (u32, u32) {
        (self.base().from_i64(n), 0)
    }
    #[inline]
    fn add(&self, a: &(u32, u32), b: &(u32, u32)) -> (u32, u32) {
        let f = self.base();
        (f.add(&a.0, &b.0), f.add(&a.1, &b.1))
    }
    #[inline]
    fn sub(&self, a: &(u32, u32), b: &(u32, u32)) -> (u32, u32) {
        let f = self.base();
        (f.sub(&a.0, &b.0), f.sub(&a.1, &b.1))
    }
    #[inline]
    fn mul(&self, a: &(u32, u32), b: &(u32, u32)) -> (u32, u32) {
        let p = self.p as u64;
        let (a0, a1, b0, b1) = (a.0 as u64, a.1 as u64, b.0 as u64, b.1 as u64);
        let re = (a0 * b0 + (a1 * b1 % p) * self.n as u64) % p;
        let im = (a0 * b1 + a1 * b0) % p;
        (re as u32, im as u32)
    }
    fn neg(&self, a: &(u32, u32)) -> (u32, u32) {
        let f = self.base();
        (f.neg(&a.0), f.neg(&a.1))
    }
    fn inv(&self, a: &(u32, u32)) -> Option<(u32, u32)> {
        let f = self.base();
        // (a0 + a1 u)^{-1} = (a0 - a1 u) / (a0^2 - n a1^2)
        let norm = f.sub(&f.mul(&a.0, &a.0), &f.mul(&self.n, &f.mul(&a.1, &a.1)));
        let ni = f.inv(&norm)?;
        Some((f.mul(&a.0, &ni), f.neg(&f.mul(&a.1, &ni))))
    }
    #[inline]
    fn is_zero(&self, a: &(u32, u32)) -> bool {
        a.0 == 0 && a.1 == 0
    }
    fn lift(&self, s: &Scalar) -> (u32, u32) {
        match s {
            Scalar::Pair(a, b) => (*a, *b),
            Scalar::Residue(a) => (*a, 0),
            other => panic!("scalar {other:?} is not in GF({}^2)", self.p),
        }
    }
    fn lower(&self, e: &(u32, u32)) -> Scalar {
        Scalar::Pair(e.0, e.1)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RatArith;

impl Arith for RatArith {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn lift(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Rational(q) => q.clone(),
            other => panic!("scalar {other:?} is not rational"),
        }
    }
    fn lower(&self, e: &BigRational) -> Scalar {
        Scalar::Rational(e.clone())
    }
}

/// Square root in a finite field of odd order `q` (Tonelli-Shanks).
pub fn tonelli_shanks<A: Arith>(ar: &A, a: &A::E, q: u64) -> Option<A::E> {
    if ar.is_zero(a) {
        return Some(ar.zero());
    }
    if q % 2 == 0 {
        // characteristic 2: squaring is a bijection, a^(q/2) is the root
        return Some(ar.pow(a, q / 2));
    }
    if ar.pow(a, (q - 1) / 2) != ar.one() {
        return None;
    }
    let mut s = 0;
    let mut t = q - 1;
    while t % 2 == 0 {
        t /= 2;
        s += 1;
    }
    // a non-square: scan small integers, then pairs when the prime field is all squares
    let mut z = None;
    for k in 2..q.min(1 << 20) as i64 {
        let c = ar.from_i64(k);
        if ar.is_zero(&c) {
            break;
        }
        if ar.pow(&c, (q - 1) / 2) != ar.one() {
            z = Some(c);
            break;
        }
    }
    let z = match z {
        Some(z) => z,
        None => find_nonsquare_pair(ar, q)?,
    };
    let mut m = s;
    let mut c = ar.pow(&z, t);
    let mut tt = ar.pow(a, t);
    let mut r = ar.pow(a, t.div_ceil(2));
    while tt != ar.one() {
        let mut i = 0;
        let mut t2 = tt.clone();
        while t2 != ar.one() {
            t2 = ar.mul(&t2, &t2);
            i += 1;
            if i == m {
                return None;
            }
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = ar.mul(&b, &b);
        }
        m = i;
        c = ar.mul(&b, &b);
        tt = ar.mul(&tt, &c);
        r = ar.mul(&r, &b);
    }
    Some(r)
}

fn find_nonsquare_pair<A: Arith>(ar: &A, q: u64) -> Option<A::E> {
    // In GF(p^2) every element of GF(p) is a square; try a + u for small a.
    let u = ar.lift(&Scalar::Pair(0, 1));
    for k in 0..1000 {
        let c = ar.add(&ar.from_i64(k), &u);
        if ar.pow(&c, (q - 1) / 2) != ar.one() {
            return Some(c);
        }
    }
    None
}

/// Runs `$body` with `$ar` bound to the [`Arith`] implementation for `$field`.
macro_rules! with_arith {
    ($field:expr, $ar:ident => $body:expr) => {{
        #[allow(unused_imports)]
        use $crate::algebra::arith::Arith as _;
        match $field {
            $crate::algebra::Field::Prime(p) => {
                let $ar = $crate::algebra::arith::PrimeArith { p };
                $body
            }
            $crate::algebra::Field::Quadratic { p, nonresidue } => {
                let $ar = $crate::algebra::arith::QuadArith { p, n: nonresidue };
                $body
            }
            $crate::algebra::Field::Rationals => {
                let $ar = $crate::algebra::arith::RatArith;
                $body
            }
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn quadratic_inverse(a in 0u32..31, b in 0u32..31) {
            let ar = QuadArith { p: 31, n: 3 };
            let x = (a, b);
            match ar.inv(&x) {
                Some(y) => prop_assert_eq!(ar.mul(&x, &y), (1, 0)),
                None => prop_assert_eq!(x, (0, 0)),
            }
        }

        #[test]
        fn prime_field_axioms(a in 0u32..10007, b in 0u32..10007, c in 0u32..10007) {
            let ar = PrimeArith { p: 10007 };
            prop_assert_eq!(ar.mul(&a, &ar.add(&b, &c)), ar.add(&ar.mul(&a, &b), &ar.mul(&a, &c)));
            prop_assert_eq!(ar.add(&ar.sub(&a, &b), &b), a);
            prop_assert_eq!(ar.sub_mul(&a, &b, &c), ar.sub(&a, &ar.mul(&b, &c)));
        }
    }
}
