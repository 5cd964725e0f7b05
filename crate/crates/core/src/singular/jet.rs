//! Taylor expansions of homogeneous forms at points of P^3.
//!
//! At a point P with first nonzero coordinate in position `chart` (equal to
//! 1 in canonical form), the form is dehomogenised by setting that
//! coordinate to 1 and translated so that P becomes the origin. The three
//! remaining coordinates, in increasing index order, are the local
//! variables.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::arith::Arith;
use crate::algebra::monomial::binomial;
use crate::algebra::{Field, Monomial, MultiPoly, Scalar};

use super::{ProjPoint, Surface};

/// Local exponent triples of total degree at most `k`, by degree then descending lex.
pub fn local_monomials(k: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for deg in 0..=k {
        for a in (0..=deg).rev() {
            for b in (0..=deg - a).rev() {
                out.push([a, b, deg - a - b]);
            }
        }
    }
    out
}

pub(crate) fn local_vars(chart: usize) -> [usize; 3] {
    let mut v = [0; 3];
    let mut j = 0;
    for i in 0..4 {
        if i != chart {
            v[j] = i;
            j += 1;
        }
    }
    v
}

/// Precomputed expansion data for one point and one truncation order.
pub(crate) struct JetFrame<A: Arith> {
    ar: A,
    vars: [usize; 3],
    order: u32,
    point: [A::E; 4],
    basis: Vec<[u32; 3]>,
    index: HashMap<[u32; 3], usize>,
    binom: Vec<Vec<A::E>>,
}

impl<A: Arith> JetFrame<A> {
    pub fn new(ar: A, point: &ProjPoint, order: u32, max_exp: u32) -> Self {
        let chart = point.chart();
        let basis = local_monomials(order);
        let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let binom = (0..=max_exp as u64)
            .map(|n| (0..=n).map(|k| ar.from_i64(binomial(n, k) as i64)).collect())
            .collect();
        let pt = point.coords().each_ref().map(|c| ar.lift(c));
        JetFrame {
            vars: local_vars(chart),
            order,
            point: pt,
            basis,
            index,
            binom,
            ar,
        }
    }

    pub fn basis(&self) -> &[[u32; 3]] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    /// Adds the jet of `c * m` into `out` (indexed like [`Self::basis`]).
    pub fn accumulate(&self, m: &Monomial, c: &A::E, out: &mut [A::E]) {
        let ar = &self.ar;
        let e = self.vars.map(|v| m.0[v]);
        let p = self.vars.map(|v| &self.point[v]);
        // powers p_j^(e_j - a_j) for a_j = 0..=min(e_j, order)
        let pw: Vec<Vec<A::E>> = (0..3)
            .map(|j| {
                let top = e[j].min(self.order);
                (0..=top)
                    .map(|a| ar.pow(p[j], (e[j] - a) as u64))
                    .collect()
            })
            .collect();
        for a0 in 0..=e[0].min(self.order) {
            let t0 = ar.mul(c, &ar.mul(&self.binom[e[0] as usize][a0 as usize], &pw[0][a0 as usize]));
            if ar.is_zero(&t0) {
                continue;
            }
            for a1 in 0..=e[1].min(self.order - a0) {
                let t1 = ar.mul(&t0, &ar.mul(&self.binom[e[1] as usize][a1 as usize], &pw[1][a1 as usize]));
                if ar.is_zero(&t1) {
                    continue;
                }
                for a2 in 0..=e[2].min(self.order - a0 - a1) {
                    let t2 = ar.mul(&t1, &ar.mul(&self.binom[e[2] as usize][a2 as usize], &pw[2][a2 as usize]));
                    if ar.is_zero(&t2) {
                        continue;
                    }
                    let i = self.index[&[a0, a1, a2]];
                    out[i] = ar.add(&out[i], &t2);
                }
            }
        }
    }

    pub fn jet_of(&self, terms: &[(Monomial, A::E)]) -> Vec<A::E> {
        let mut out = vec![self.ar.zero(); self.basis.len()];
        for (m, c) in terms {
            self.accumulate(m, c, &mut out);
        }
        out
    }

    pub fn jet_of_monomial(&self, m: &Monomial) -> Vec<A::E> {
        let mut out = vec![self.ar.zero(); self.basis.len()];
        self.accumulate(m, &self.ar.one(), &mut out);
        out
    }
}

pub(crate) fn lifted_terms<A: Arith>(ar: &A, f: &MultiPoly) -> Vec<(Monomial, A::E)> {
    f.terms().map(|(m, c)| (*m, ar.lift(c))).collect()
}

pub(crate) fn max_exponent(f: &MultiPoly) -> u32 {
    f.terms()
        .flat_map(|(m, _)| m.0)
        .max()
        .unwrap_or(0)
}

/// Truncated Taylor expansion at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalJet {
    pub chart: usize,
    pub local_vars: [usize; 3],
    pub order: u32,
    field: Field,
    coeffs: BTreeMap<[u32; 3], Scalar>,
}

impl LocalJet {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coefficient(&self, a: [u32; 3]) -> Scalar {
        self.coeffs
            .get(&a)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Nonzero coefficients keyed by local exponent triple.
    pub fn coefficients(&self) -> &BTreeMap<[u32; 3], Scalar> {
        &self.coeffs
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|a| a.iter().sum()).min()
    }

    /// Degree-`j` part as a ternary form, local variables placed in x, y, z.
    pub fn homogeneous_part(&self, j: u32) -> MultiPoly {
        MultiPoly::from_terms(
            self.field,
            self.coeffs
                .iter()
                .filter(|(a, _)| a.iter().sum::<u32>() == j)
                .map(|(a, c)| (c.clone(), Monomial([a[0], a[1], a[2], 0]))),
        )
    }

    /// The whole jet as a polynomial in x, y, z.
    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::from_terms(
            self.field,
            self.coeffs
                .iter()
                .map(|(a, c)| (c.clone(), Monomial([a[0], a[1], a[2], 0]))),
        )
    }
}

/// Arithmetic field for analysing `f` at `p`: the larger of the two.
pub(crate) fn common_field(f: Field, p: &ProjPoint) -> Field {
    if f.embeds_into(&p.field()) {
        p.field()
    } else {
        f
    }
}

/// Order-`k` jet of a form at a point.
pub fn poly_jet(f: &MultiPoly, p: &ProjPoint, k: u32) -> LocalJet {
    let field = common_field(f.field(), p);
    let coeffs = with_arith!(field, ar => {
        let frame = JetFrame::new(ar.clone(), p, k, max_exponent(f));
        let dense = frame.jet_of(&lifted_terms(&ar, f));
        frame
            .basis()
            .iter()
            .zip(dense)
            .filter(|(_, c)| !ar.is_zero(c))
            .map(|(a, c)| (*a, ar.lower(&c)))
            .collect()
    });
    let chart = p.chart();
    LocalJet {
        chart,
        local_vars: local_vars(chart),
        order: k,
        field,
        coeffs,
    }
}

pub fn local_jet(x: &Surface, p: &ProjPoint, k: u32) -> LocalJet {
    poly_jet(x.poly(), p, k)
}

/// Order of vanishing of a form at a point (0 when the form does not vanish there).
pub fn poly_multiplicity(f: &MultiPoly, p: &ProjPoint) -> u32 {
    let d = f.degree().unwrap_or(0);
    poly_jet(f, p, d).lowest_degree().unwrap_or(d + 1)
}

pub fn multiplicity(x: &Surface, p: &ProjPoint) -> u32 {
    poly_multiplicity(x.poly(), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn surface(s: &str, f: Field) -> Surface {
        Surface::new(parse_poly(s, f).unwrap()).unwrap()
    }

    #[test]
    fn centred_cone() {
        let f = Field::Rationals;
        let x = surface("x^3+y^3+z^3", f);
        let p = ProjPoint::from_ints(f, [0, 0, 0, 1]).unwrap();
        let j = local_jet(&x, &p, 3);
        assert_eq!(j.chart, 3);
        assert_eq!(j.to_poly(), parse_poly("x^3+y^3+z^3", f).unwrap());
        assert_eq!(multiplicity(&x, &p), 3);
        assert_eq!(multiplicity(&x, &ProjPoint::from_ints(f, [1, 0, 0, 0]).unwrap()), 0);
    }

    #[test]
    fn quadric_linear_part() {
        let f = Field::Rationals;
        let x = surface("x*y-z*w", f);
        let p = ProjPoint::from_ints(f, [1, 0, 0, 0]).unwrap();
        let j = local_jet(&x, &p, 1);
        // local variables y, z, w sit in slots x, y, z
        assert_eq!(j.local_vars, [1, 2, 3]);
        assert_eq!(j.to_poly(), parse_poly("x", f).unwrap());
        assert_eq!(multiplicity(&x, &p), 1);
    }

    #[test]
    fn constant_term_off_surface() {
        let f = Field::Prime(31);
        let x = surface("x^3+y^3+z^3+w^3", f);
        let p = ProjPoint::from_ints(f, [1, 1, 1, 1]).unwrap();
        let j = local_jet(&x, &p, 0);
        assert_eq!(j.coefficient([0, 0, 0]), Scalar::Residue(4));
    }

    #[test]
    fn re_expansion_matches_translate() {
        // jet of order k equals the translate truncated at degree k
        let f = Field::Rationals;
        let g = parse_poly("x^2*y*w+3*y^3*z-z^2*w^2+7*x*y*z*w", f).unwrap();
        let p = ProjPoint::from_ints(f, [2, -1, 3, 1]).unwrap(); // canonical chart x
        let full = poly_jet(&g, &p, 4).to_poly();
        // translate directly: x=1, y = -1/2 + a, z = 3/2 + b, w = 1/2 + c
        let c = |n: i64, d: i64| {
            MultiPoly::constant(f, f.from_ratio(&n.into(), &d.into()).unwrap())
        };
        let images = [
            MultiPoly::one(f),
            &c(-1, 2) + &MultiPoly::var(f, 0),
            &c(3, 2) + &MultiPoly::var(f, 1),
            &c(1, 2) + &MultiPoly::var(f, 2),
        ];
        let translated = g.substitute(&images).unwrap();
        assert_eq!(full, translated);
        for k in 0..4 {
            let jet = poly_jet(&g, &p, k).to_poly();
            let rest = &translated - &jet;
            assert!(rest.terms().all(|(m, _)| m.degree() > k));
        }
    }
}
