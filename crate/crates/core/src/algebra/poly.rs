//! Sparse polynomials in x, y, z, w over an exact field.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::arith::Arith;
use super::field::{Field, Scalar};
use super::monomial::{Monomial, NVARS};
use super::AlgebraError;

/// A polynomial stored as monomial -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: Field) -> Self {
        MultiPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, c: Scalar) -> Self {
        MultiPoly::term(field, c, Monomial::ONE)
    }

    pub fn one(field: Field) -> Self {
        MultiPoly::constant(field, field.one())
    }

    pub fn var(field: Field, i: usize) -> Self {
        MultiPoly::term(field, field.one(), Monomial::var(i))
    }

    pub fn term(field: Field, c: Scalar, m: Monomial) -> Self {
        let mut p = MultiPoly::zero(field);
        if !field.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(field: Field, m: Monomial) -> Self {
        MultiPoly::term(field, field.one(), m)
    }

    /// Builds from (coefficient, monomial) pairs, combining repeats.
    pub fn from_terms<I>(field: Field, terms: I) -> Self
    where
        I: IntoIterator<Item = (Scalar, Monomial)>,
    {
        let mut p = MultiPoly::zero(field);
        for (c, m) in terms {
            p.add_term(c, m);
        }
        p
    }

    /// Integer coefficients, convenient for tests and family constructors.
    pub fn from_int_terms(field: Field, terms: &[(i64, [u32; NVARS])]) -> Self {
        MultiPoly::from_terms(
            field,
            terms
                .iter()
                .map(|(c, e)| (field.from_i64(*c), Monomial(*e))),
        )
    }

    pub fn add_term(&mut self, c: Scalar, m: Monomial) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = self.field.add(old, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// The common degree when every term has the same degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    pub fn homogeneous_part(&self, k: u32) -> MultiPoly {
        MultiPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Reinterprets the coefficients in a larger field (e.g. GF(p) in GF(p^2)).
    pub fn embed(&self, field: Field) -> Result<MultiPoly, AlgebraError> {
        if !self.field.embeds_into(&field) {
            return Err(AlgebraError::FieldMismatch {
                left: self.field,
                right: field,
            });
        }
        Ok(MultiPoly {
            field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, field.embed(c)))
                .collect(),
        })
    }

    fn check(&self, other: &MultiPoly) -> Result<(), AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), *m);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(self.field.neg(c), *m);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MultiPoly::zero(self.field));
        }
        Ok(with_arith!(self.field, ar => mul_generic(&ar, self, other)))
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, self.field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if self.field.is_zero(c) {
            return MultiPoly::zero(self.field);
        }
        MultiPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, self.field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            field: self.field,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut q = m.0;
            q[i] -= 1;
            out.add_term(self.field.mul(c, &self.field.from_i64(e as i64)), Monomial(q));
        }
        out
    }

    pub fn gradient(&self) -> [MultiPoly; NVARS] {
        std::array::from_fn(|i| self.derivative(i))
    }

    /// Value at a point whose coordinates lie in `self.field` or an extension of it.
    pub fn evaluate(&self, point: &[Scalar; NVARS]) -> Scalar {
        let field = point_field(self.field, point);
        with_arith!(field, ar => {
            let pt: Vec<_> = point.iter().map(|s| ar.lift(s)).collect();
            let terms: Vec<_> = self.terms.iter().map(|(m, c)| (*m, ar.lift(c))).collect();
            ar.lower(&eval_generic(&ar, &terms, &pt))
        })
    }

    /// Composition `self(images[0], ..., images[3])`.
    pub fn substitute(&self, images: &[MultiPoly; NVARS]) -> Result<MultiPoly, AlgebraError> {
        for g in images {
            self.check(g)?;
        }
        let mut max = [0u32; NVARS];
        for m in self.terms.keys() {
            for i in 0..NVARS {
                max[i] = max[i].max(m.0[i]);
            }
        }
        let powers: Vec<Vec<MultiPoly>> = (0..NVARS)
            .map(|i| {
                let mut v = vec![MultiPoly::one(self.field)];
                for k in 1..=max[i] as usize {
                    let next = &v[k - 1] * &images[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(self.field, c.clone());
            for i in 0..NVARS {
                if m.0[i] > 0 {
                    t = &t * &powers[i][m.0[i] as usize];
                }
            }
            for (k, v) in t.terms {
                match acc.get_mut(&k) {
                    Some(old) => *old = self.field.add(old, &v),
                    None => {
                        acc.insert(k, v);
                    }
                }
            }
        }
        Ok(MultiPoly::from_terms(
            self.field,
            acc.into_iter().map(|(m, c)| (c, m)),
        ))
    }

    /// Exact quotient `self / divisor`; errors with the remainder otherwise.
    pub fn divide_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.check(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        let (lm, lc_inv) = (*lm, self.field.inv(lc)?);
        let mut rest = self.clone();
        let mut quotient = MultiPoly::zero(self.field);
        let mut remainder = MultiPoly::zero(self.field);
        while let Some((m, c)) = rest.leading_term().map(|(m, c)| (*m, c.clone())) {
            match lm.quotient_of(&m) {
                Some(q) => {
                    let coef = self.field.mul(&c, &lc_inv);
                    quotient.add_term(coef.clone(), q);
                    let shifted = divisor.mul_monomial(&q).scale(&coef);
                    rest = &rest - &shifted;
                }
                None => {
                    remainder.add_term(c.clone(), m);
                    rest.terms.remove(&m);
                }
            }
        }
        if !remainder.is_zero() {
            return Err(AlgebraError::InexactDivision {
                remainder: Box::new(remainder),
            });
        }
        Ok(quotient)
    }

    /// Divides by `factor` as often as possible; returns the multiplicity and cofactor.
    pub fn strip_factor(&self, factor: &MultiPoly) -> Result<(u32, MultiPoly), AlgebraError> {
        if factor.degree().unwrap_or(0) == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut k = 0;
        let mut cur = self.clone();
        while !cur.is_zero() {
            match cur.divide_exact(factor) {
                Ok(q) => {
                    cur = q;
                    k += 1;
                }
                Err(AlgebraError::InexactDivision { .. }) => break,
                Err(e) => return Err(e),
            }
        }
        Ok((k, cur))
    }

    /// Dense coefficient vector over a list of monomials.
    pub fn coefficients_on(&self, basis: &[Monomial]) -> Vec<Scalar> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }
}

fn point_field(base: Field, point: &[Scalar; NVARS]) -> Field {
    // a point with quadratic-extension coordinates forces evaluation there
    if let Field::Prime(p) = base {
        if point.iter().any(|s| matches!(s, Scalar::Pair(..))) {
            return Field::quadratic(p as u64).expect("odd prime");
        }
    }
    base
}

pub(crate) fn eval_generic<A: Arith>(ar: &A, terms: &[(Monomial, A::E)], pt: &[A::E]) -> A::E {
    let mut max = [0u32; NVARS];
    for (m, _) in terms {
        for i in 0..NVARS {
            max[i] = max[i].max(m.0[i]);
        }
    }
    let powers: Vec<Vec<A::E>> = (0..NVARS)
        .map(|i| {
            let mut v = vec![ar.one()];
            for k in 1..=max[i] as usize {
                v.push(ar.mul(&v[k - 1], &pt[i]));
            }
            v
        })
        .collect();
    let mut acc = ar.zero();
    for (m, c) in terms {
        let mut t = c.clone();
        for i in 0..NVARS {
            if m.0[i] > 0 {
                t = ar.mul(&t, &powers[i][m.0[i] as usize]);
            }
        }
        acc = ar.add(&acc, &t);
    }
    acc
}

fn mul_generic<A: Arith>(ar: &A, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let bt: Vec<(Monomial, A::E)> = b.terms.iter().map(|(m, c)| (*m, ar.lift(c))).collect();
    let mut acc: HashMap<Monomial, A::E> = HashMap::with_capacity(a.terms.len() * bt.len());
    for (ma, ca) in &a.terms {
        let ca = ar.lift(ca);
        for (mb, cb) in &bt {
            let m = ma.mul(mb);
            let t = ar.mul(&ca, cb);
            acc.entry(m)
                .and_modify(|v| *v = ar.add(v, &t))
                .or_insert(t);
        }
    }
    MultiPoly {
        field: a.field,
        terms: acc
            .into_iter()
            .filter(|(_, c)| !ar.is_zero(c))
            .map(|(m, c)| (m, ar.lower(&c)))
            .collect(),
    }
}

macro_rules! poly_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl std::ops::$tr for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                self.$try(rhs).expect("polynomials over different fields")
            }
        }
        impl std::ops::$tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$try(&rhs).expect("polynomials over different fields")
            }
        }
    };
}
poly_op!(Add, add, try_add);
poly_op!(Sub, sub, try_sub);
poly_op!(Mul, mul, try_mul);

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn p(s: &str) -> MultiPoly {
        super::super::text::parse_poly(s, q()).unwrap()
    }

    #[test]
    fn arithmetic() {
        let a = p("x+y");
        let b = p("x-y");
        assert_eq!(&a * &b, p("x^2-y^2"));
        assert_eq!(a.pow(3), p("x^3+3*x^2*y+3*x*y^2+y^3"));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn derivatives_and_evaluation() {
        let f = p("x^3*w+2*y*z^2");
        assert_eq!(f.derivative(0), p("3*x^2*w"));
        assert_eq!(f.derivative(2), p("4*y*z"));
        let v = f.evaluate(&[q().from_i64(1), q().from_i64(2), q().from_i64(3), q().from_i64(4)]);
        assert_eq!(v, q().from_i64(4 + 36));
    }

    #[test]
    fn exact_division() {
        let f = p("x^2-y^2");
        assert_eq!(f.divide_exact(&p("x+y")).unwrap(), p("x-y"));
        match p("x^2").divide_exact(&p("y")) {
            Err(AlgebraError::InexactDivision { remainder }) => assert_eq!(*remainder, p("x^2")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            f.divide_exact(&MultiPoly::zero(q())),
            Err(AlgebraError::DivisionByZero)
        ));
        let g = p("x+y");
        let (k, rest) = (&(&g * &g) * &p("z")).strip_factor(&g).unwrap();
        assert_eq!((k, rest), (2, p("z")));
    }

    #[test]
    fn field_mismatch() {
        let a = MultiPoly::var(Field::Prime(7), 0);
        let b = MultiPoly::var(Field::Prime(11), 0);
        assert!(matches!(a.try_add(&b), Err(AlgebraError::FieldMismatch { .. })));
    }

    #[test]
    fn substitution() {
        let f = p("x*y-z^2");
        let images = [p("y*z*w"), p("x*z*w"), p("x*y*w"), p("x*y*z")];
        assert_eq!(f.substitute(&images).unwrap(), p("x*y*z^2*w^2-x^2*y^2*w^2"));
    }

    #[test]
    fn homogeneity() {
        assert_eq!(p("x^2+y*w").homogeneous_degree(), Some(2));
        assert_eq!(p("x^2+y").homogeneous_degree(), None);
        assert_eq!(MultiPoly::zero(q()).homogeneous_degree(), None);
    }
}
