//! Hilbert function of R/J, J the ideal of the four partials of a form.
//!
//! Degree by degree we keep a set S_k of standard monomials spanning
//! (R/J)_k together with normal forms NF_k(M) for every other monomial of
//! degree k. Since J_k = x_0 J_{k-1} + ... + x_3 J_{k-1}, degree k is
//! spanned by T = { x_i s : s in S_{k-1} }, and the relations among T are
//! the vectors x_i m - x_i NF(m) rewritten in T. This keeps every
//! elimination at size |T| <= 4 |S_{k-1}| instead of the full Macaulay
//! matrix, which matters once k reaches 4d.

use std::collections::HashMap;

use crate::algebra::arith::Arith;
use crate::algebra::matrix::Echelon;
use crate::algebra::monomial::count_of_degree;
use crate::algebra::{monomials_of_degree, Monomial, MultiPoly};

use super::{AnalysisError, Surface};

/// Sparse vector over the standard monomials of one degree.
type Sparse<E> = Vec<(usize, E)>;

struct Level<E> {
    standard: Vec<Monomial>,
    /// Normal forms of the nonstandard monomials.
    nf: HashMap<Monomial, Sparse<E>>,
}

impl<E: Clone> Level<E> {
    fn nonstandard(&self) -> impl Iterator<Item = (&Monomial, &Sparse<E>)> {
        self.nf.iter()
    }
}

/// Extracts standard monomials and normal forms from a reduced echelon over `cols`.
fn level_from_echelon<A: Arith>(
    ar: &A,
    ech: &Echelon<A>,
    cols: &[Monomial],
    rho: impl Fn(&Monomial) -> Vec<A::E>,
    all: &[Monomial],
) -> Level<A::E> {
    let mut std_index = vec![usize::MAX; cols.len()];
    let mut standard = Vec::new();
    for (c, m) in cols.iter().enumerate() {
        if !ech.is_pivot(c) {
            std_index[c] = standard.len();
            standard.push(*m);
        }
    }
    let mut nf = HashMap::new();
    let col_of: HashMap<Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    for m in all {
        if col_of.get(m).is_some_and(|&c| !ech.is_pivot(c)) {
            continue; // standard
        }
        let mut v = rho(m);
        ech.reduce(&mut v);
        let sparse: Sparse<A::E> = v
            .into_iter()
            .enumerate()
            .filter(|(_, e)| !ar.is_zero(e))
            .map(|(c, e)| (std_index[c], e))
            .collect();
        nf.insert(*m, sparse);
    }
    Level { standard, nf }
}

fn hilbert_generic<A: Arith>(ar: &A, partials: &[MultiPoly], d: u32, k_max: u32) -> Vec<u64> {
    let mut h = Vec::with_capacity(k_max as usize + 1);
    let base = d - 1;
    for k in 0..base.min(k_max + 1) {
        h.push(count_of_degree(k, 4) as u64);
    }
    if k_max < base {
        return h;
    }
    // degree d-1: the partials themselves
    let cols = monomials_of_degree(base);
    let col_of: HashMap<Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut ech = Echelon::new(ar.clone(), cols.len());
    for g in partials {
        let mut v = vec![ar.zero(); cols.len()];
        for (m, c) in g.terms() {
            v[col_of[m]] = ar.lift(c);
        }
        ech.insert(v);
    }
    ech.make_reduced();
    let unit = |n: usize, i: usize| {
        let mut v = vec![ar.zero(); n];
        v[i] = ar.one();
        v
    };
    let mut level = level_from_echelon(ar, &ech, &cols, |m| unit(cols.len(), col_of[m]), &cols);
    h.push(level.standard.len() as u64);

    for k in base + 1..=k_max {
        if level.standard.is_empty() {
            h.push(0);
            continue;
        }
        let mut cols: Vec<Monomial> = level
            .standard
            .iter()
            .flat_map(|s| (0..4).map(move |i| s.times_var(i)))
            .collect();
        cols.sort_unstable_by(|a, b| b.cmp(a));
        cols.dedup();
        let n = cols.len();
        let col_of: HashMap<Monomial, usize> =
            cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        // x_i * (sparse vector over S_{k-1}) written over T
        let shift = |i: usize, v: &Sparse<A::E>, out: &mut Vec<A::E>, negate: bool| {
            for (s, c) in v {
                let col = col_of[&level.standard[*s].times_var(i)];
                out[col] = if negate {
                    ar.sub(&out[col], c)
                } else {
                    ar.add(&out[col], c)
                };
            }
        };
        let rho = |m: &Monomial| -> Vec<A::E> {
            if let Some(&c) = col_of.get(m) {
                return unit(n, c);
            }
            let i0 = m.first_var().expect("positive degree");
            let q = Monomial::var(i0).quotient_of(m).expect("divisible");
            let mut v = vec![ar.zero(); n];
            shift(i0, &level.nf[&q], &mut v, false);
            v
        };
        let mut ech = Echelon::new(ar.clone(), n);
        'relations: for (m, nf) in level.nonstandard() {
            for i in 0..4 {
                if ech.rank() == n {
                    break 'relations;
                }
                let big = m.times_var(i);
                if !col_of.contains_key(&big) && big.first_var() == Some(i) {
                    continue; // rho(x_i m) is x_i NF(m) by definition
                }
                let mut v = rho(&big);
                shift(i, nf, &mut v, true);
                ech.insert(v);
            }
        }
        ech.make_reduced();
        h.push((n - ech.rank()) as u64);
        let all = monomials_of_degree(k);
        level = level_from_echelon(ar, &ech, &cols, rho, &all);
    }
    h
}

/// h(0..=k_max) for the Jacobian ideal of `x`.
pub fn jacobian_hilbert(x: &Surface, k_max: u32) -> Vec<u64> {
    let partials = x.poly().gradient();
    with_arith!(x.field(), ar => hilbert_generic(&ar, &partials, x.degree(), k_max))
}

/// Outcome of [`singular_scheme_degree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemeDegree {
    Finite(u64),
    PositiveDimensional,
}

/// Reads the stable tail of a Hilbert sequence: constant over the last
/// three values, or strictly increasing.
pub fn classify_tail(h: &[u64]) -> Option<SchemeDegree> {
    let tail = &h[h.len().saturating_sub(3)..];
    if tail.len() < 3 {
        return None;
    }
    if tail.iter().all(|v| *v == tail[0]) {
        return Some(SchemeDegree::Finite(tail[0]));
    }
    if tail.windows(2).all(|w| w[0] < w[1]) {
        return Some(SchemeDegree::PositiveDimensional);
    }
    None
}

pub const DEFAULT_HILBERT_FACTOR: u32 = 4;
pub const RETRY_HILBERT_FACTOR: u32 = 6;

/// Degree of the singular scheme, read off the Jacobian Hilbert function.
pub fn singular_scheme_degree(x: &Surface) -> Result<SchemeDegree, AnalysisError> {
    singular_scheme_degree_with(x, None).map(|(d, _)| d)
}

/// As [`singular_scheme_degree`], also returning the Hilbert sequence used.
pub fn singular_scheme_degree_with(
    x: &Surface,
    k_max: Option<u32>,
) -> Result<(SchemeDegree, Vec<u64>), AnalysisError> {
    let d = x.degree();
    let first = k_max.unwrap_or(DEFAULT_HILBERT_FACTOR * d).max(d + 2);
    let h = jacobian_hilbert(x, first);
    if let Some(v) = classify_tail(&h) {
        return Ok((v, h));
    }
    let second = (RETRY_HILBERT_FACTOR * d).max(first + 2 * d);
    let h = jacobian_hilbert(x, second);
    match classify_tail(&h) {
        Some(v) => Ok((v, h)),
        None => Err(AnalysisError::Inconclusive {
            tail: h[h.len().saturating_sub(3)..].to_vec(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Field, Matrix};

    fn surface(s: &str, f: Field) -> Surface {
        Surface::new(parse_poly(s, f).unwrap()).unwrap()
    }

    /// Plain Macaulay-matrix rank, the definition.
    fn naive_hilbert(x: &Surface, k: u32) -> u64 {
        let cols = monomials_of_degree(k);
        let d = x.degree();
        if k + 1 < d {
            return cols.len() as u64;
        }
        let mut rows = Vec::new();
        for g in x.poly().gradient() {
            for m in monomials_of_degree(k + 1 - d) {
                rows.push(g.mul_monomial(&m).coefficients_on(&cols));
            }
        }
        let m = Matrix::from_rows(x.field(), rows).unwrap();
        (cols.len() - m.rank()) as u64
    }

    #[test]
    fn agrees_with_macaulay_rank() {
        let f = Field::Prime(31);
        for s in [
            "x^3+y^3+z^3",
            "x^2*w+y^2*z",
            "x^4+y^4+z^4+w^4+x*y*z*w",
            "x^3*w+y^3*z+z^2*w^2-x*y*z*w",
            "x^3*y^2+y^3*z^2+z^3*w^2+w^5+x*y*z*w^2",
        ] {
            let x = surface(s, f);
            let h = jacobian_hilbert(&x, 12);
            for k in 0..=12 {
                assert_eq!(h[k as usize], naive_hilbert(&x, k), "{s} at degree {k}");
            }
        }
    }

    #[test]
    fn smooth_fermat_sextic_matches_koszul_series() {
        let f = Field::Prime(7);
        let x = surface("x^6+y^6+z^6+w^6", f);
        let h = jacobian_hilbert(&x, 20);
        // coefficients of (1 + t + ... + t^4)^4
        let mut series = vec![1u64];
        for _ in 0..4 {
            let mut next = vec![0u64; series.len() + 4];
            for (i, c) in series.iter().enumerate() {
                for j in 0..5 {
                    next[i + j] += c;
                }
            }
            series = next;
        }
        series.resize(21, 0);
        assert_eq!(h, series);
    }

    #[test]
    fn cones_and_triple_points() {
        let f = Field::Prime(31);
        // an isolated ordinary triple point contributes 8
        assert_eq!(
            singular_scheme_degree(&surface("x^3+y^3+z^3", f)).unwrap(),
            SchemeDegree::Finite(8)
        );
        assert_eq!(
            singular_scheme_degree(&surface("x^2*w+y^2*z", f)).unwrap(),
            SchemeDegree::PositiveDimensional
        );
        assert_eq!(
            singular_scheme_degree(&surface("x^2+y^2+z^2+w^2", f)).unwrap(),
            SchemeDegree::Finite(0)
        );
    }

    #[test]
    fn hesse_family_local_dimension_is_eight() {
        let f = Field::Prime(31);
        for lambda in [0, 1, 2, 7] {
            let s = format!("x^3+y^3+z^3+{lambda}*x*y*z");
            assert_eq!(
                singular_scheme_degree(&surface(&s, f)).unwrap(),
                SchemeDegree::Finite(8),
                "{s}"
            );
        }
    }
}
