//! Exhaustive search for singular points over GF(p) and GF(p^2).
//!
//! P^3 is swept line by line: every point lies on exactly one of the lines
//! (1:b:c:t), (0:1:c:t), (0:0:1:t) parametrised by t, or is (0:0:0:1). On each
//! line the form and its partials restrict to univariate polynomials in t;
//! singular points are the common roots, found from their gcd.

use rayon::prelude::*;

use crate::algebra::arith::Arith;
use crate::algebra::{Monomial, MultiPoly, Scalar};

use super::{AnalysisError, ProjPoint, Surface};

/// Largest field order swept exhaustively.
pub const MAX_ENUMERATION_ORDER: u64 = 4096;

/// Univariate polynomial, coefficients from low to high degree.
type Uni<E> = Vec<E>;

fn trim<A: Arith>(ar: &A, p: &mut Uni<A::E>) {
    while p.last().is_some_and(|c| ar.is_zero(c)) {
        p.pop();
    }
}

fn uni_rem<A: Arith>(ar: &A, mut a: Uni<A::E>, b: &Uni<A::E>) -> Uni<A::E> {
    let lead_inv = ar.inv(b.last().expect("nonzero divisor")).expect("unit");
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let factor = ar.mul(a.last().expect("nonempty"), &lead_inv);
        for (i, c) in b.iter().enumerate() {
            a[shift + i] = ar.sub_mul(&a[shift + i], &factor, c);
        }
        a.pop();
        trim(ar, &mut a);
    }
    a
}

fn uni_gcd<A: Arith>(ar: &A, mut a: Uni<A::E>, mut b: Uni<A::E>) -> Uni<A::E> {
    trim(ar, &mut a);
    trim(ar, &mut b);
    while !b.is_empty() {
        let r = uni_rem(ar, a, &b);
        a = b;
        b = r;
    }
    a
}

fn uni_eval<A: Arith>(ar: &A, p: &Uni<A::E>, t: &A::E) -> A::E {
    p.iter()
        .rev()
        .fold(ar.zero(), |acc, c| ar.add(&ar.mul(&acc, t), c))
}

struct Sweep<A: Arith> {
    ar: A,
    /// The form and its four partials, as lists of terms.
    forms: Vec<Vec<(Monomial, A::E)>>,
    elements: Vec<A::E>,
    degree: usize,
    max_pow: usize,
}

impl<A: Arith> Sweep<A> {
    /// Restriction of each form to the line (a:b:c:t); returns the gcd.
    fn line_gcd(&self, pows: &[Vec<A::E>; 3]) -> Uni<A::E> {
        let ar = &self.ar;
        let mut g: Uni<A::E> = Vec::new();
        for form in &self.forms {
            let mut u = vec![ar.zero(); self.degree + 1];
            for (m, c) in form {
                let mut v = c.clone();
                for j in 0..3 {
                    if m.0[j] > 0 {
                        v = ar.mul(&v, &pows[j][m.0[j] as usize]);
                    }
                }
                let k = m.0[3] as usize;
                u[k] = ar.add(&u[k], &v);
            }
            g = uni_gcd(ar, g, u);
            if g.len() == 1 {
                return g; // nonzero constant: no common root
            }
        }
        g
    }

    fn powers(&self, v: &A::E) -> Vec<A::E> {
        let mut out = vec![self.ar.one()];
        for i in 1..=self.max_pow {
            out.push(self.ar.mul(&out[i - 1], v));
        }
        out
    }

    fn roots_on_line(&self, head: [A::E; 3]) -> Vec<[A::E; 4]> {
        let pows = [self.powers(&head[0]), self.powers(&head[1]), self.powers(&head[2])];
        let g = self.line_gcd(&pows);
        if g.len() == 1 {
            return Vec::new();
        }
        self.elements
            .iter()
            .filter(|t| g.is_empty() || self.ar.is_zero(&uni_eval(&self.ar, &g, t)))
            .map(|t| [head[0].clone(), head[1].clone(), head[2].clone(), t.clone()])
            .collect()
    }
}

/// All points of P^3(GF(p^e)) where the form and its partials vanish, in canonical order.
pub fn enumerate_singular_points(x: &Surface, e: u32) -> Result<Vec<ProjPoint>, AnalysisError> {
    let base = x.field();
    if !base.is_finite() {
        return Err(AnalysisError::NotFinite(base));
    }
    if !(1..=2).contains(&e) {
        return Err(AnalysisError::UnsupportedExtension(e));
    }
    let target = base.extension(e)?;
    let order = target.order().expect("finite");
    if order > MAX_ENUMERATION_ORDER {
        return Err(AnalysisError::EnumerationTooLarge { order });
    }
    let f = x.poly().embed(target)?;
    let mut polys: Vec<MultiPoly> = vec![f.clone()];
    polys.extend(f.gradient());
    let points: Vec<[Scalar; 4]> = with_arith!(target, ar => {
        let sweep = Sweep {
            forms: polys
                .iter()
                .map(|p| p.terms().map(|(m, c)| (*m, ar.lift(c))).collect())
                .collect(),
            elements: target.elements().iter().map(|s| ar.lift(s)).collect(),
            degree: x.degree() as usize,
            max_pow: x.degree() as usize,
            ar,
        };
        let zero = ar.zero();
        let one = ar.one();
        let mut found: Vec<[_; 4]> = sweep
            .elements
            .par_iter()
            .flat_map_iter(|b| {
                let sweep = &sweep;
                let one = one.clone();
                sweep.elements.iter().flat_map(move |c| {
                    sweep.roots_on_line([one.clone(), b.clone(), c.clone()])
                })
            })
            .collect();
        for c in &sweep.elements {
            found.extend(sweep.roots_on_line([zero.clone(), one.clone(), c.clone()]));
        }
        found.extend(sweep.roots_on_line([zero.clone(), zero.clone(), one.clone()]));
        let origin_w = [zero.clone(), zero.clone(), zero.clone(), one.clone()];
        if polys.iter().all(|p| {
            let terms: Vec<_> = p.terms().map(|(m, c)| (*m, ar.lift(c))).collect();
            ar.is_zero(&crate::algebra::poly::eval_generic(&ar, &terms, &origin_w))
        }) {
            found.push(origin_w);
        }
        found
            .into_iter()
            .map(|pt| pt.map(|c| ar.lower(&c)))
            .collect()
    });
    let mut out: Vec<ProjPoint> = points
        .into_iter()
        .map(|c| ProjPoint::new(target, c))
        .collect::<Result<_, _>>()?;
    out.sort();
    Ok(out)
}

/// Whether the form and all partials vanish at `p`.
pub fn is_singular_point(f: &MultiPoly, p: &ProjPoint) -> bool {
    let field = super::jet::common_field(f.field(), p);
    let zero = |g: &MultiPoly| field.is_zero(&g.evaluate(p.coords()));
    zero(f) && f.gradient().iter().all(zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Field};

    fn surface(s: &str, f: Field) -> Surface {
        Surface::new(parse_poly(s, f).unwrap()).unwrap()
    }

    #[test]
    fn cubic_cone_has_one_singular_point() {
        let f = Field::Prime(7);
        let pts = enumerate_singular_points(&surface("x^3+y^3+z^3", f), 1).unwrap();
        assert_eq!(pts, vec![ProjPoint::from_ints(f, [0, 0, 0, 1]).unwrap()]);
    }

    #[test]
    fn smooth_quadric_has_none() {
        let f = Field::Prime(5);
        assert!(enumerate_singular_points(&surface("x*y-z*w", f), 1)
            .unwrap()
            .is_empty());
        assert!(enumerate_singular_points(&surface("x*y-z*w", f), 2)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn brute_force_agreement() {
        // singular along the line x = y = 0
        let f = Field::Prime(5);
        let x = surface("x^2*w+y^2*z+x*y*z", f);
        let swept = enumerate_singular_points(&x, 1).unwrap();
        let mut brute = Vec::new();
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    for d in 0..5 {
                        let Ok(p) = ProjPoint::from_ints(f, [a, b, c, d]) else { continue };
                        if is_singular_point(x.poly(), &p) && !brute.contains(&p) {
                            brute.push(p);
                        }
                    }
                }
            }
        }
        brute.sort();
        assert_eq!(swept, brute);
    }

    #[test]
    fn rationals_are_rejected() {
        let x = surface("x^3+y^3+z^3", Field::Rationals);
        assert!(matches!(
            enumerate_singular_points(&x, 1),
            Err(AnalysisError::NotFinite(_))
        ));
    }
}
