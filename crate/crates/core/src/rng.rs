//! Deterministic pseudorandom fixtures.
//!
//! All "generic" choices in the library and its tests come from a ChaCha8
//! stream with an explicit seed, so fixtures are reproducible. Rational
//! scalars are small integers in `-RATIONAL_RANGE..=RATIONAL_RANGE`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{monomials_of_degree, Field, Matrix, MultiPoly, Scalar};
use crate::singular::{no_four_coplanar, no_three_collinear, ProjPoint};

pub const DEFAULT_SEED: u64 = 0x7269_706c_6570_7431;
pub const RATIONAL_RANGE: i64 = 9;

pub struct Stream {
    rng: ChaCha8Rng,
}

impl Stream {
    pub fn new(seed: u64) -> Stream {
        Stream {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn scalar(&mut self, field: Field) -> Scalar {
        match field {
            Field::Rationals => field.from_i64(self.rng.gen_range(-RATIONAL_RANGE..=RATIONAL_RANGE)),
            Field::Prime(p) => Scalar::Residue(self.rng.gen_range(0..p)),
            Field::Quadratic { p, .. } => {
                Scalar::Pair(self.rng.gen_range(0..p), self.rng.gen_range(0..p))
            }
        }
    }

    pub fn nonzero_scalar(&mut self, field: Field) -> Scalar {
        loop {
            let s = self.scalar(field);
            if !field.is_zero(&s) {
                return s;
            }
        }
    }

    pub fn point(&mut self, field: Field) -> ProjPoint {
        loop {
            let c = [(); 4].map(|_| self.scalar(field));
            if let Ok(p) = ProjPoint::new(field, c) {
                return p;
            }
        }
    }

    /// `n` distinct points off the coordinate planes with no three collinear
    /// and no four coplanar.
    pub fn general_points(&mut self, field: Field, n: usize) -> Vec<ProjPoint> {
        let mut out: Vec<ProjPoint> = Vec::with_capacity(n);
        while out.len() < n {
            let p = self.point(field);
            if !p.off_coordinate_planes() || out.contains(&p) {
                continue;
            }
            out.push(p);
            if !no_three_collinear(&out) || !no_four_coplanar(&out) {
                out.pop();
            }
        }
        out
    }

    /// Random form of degree `d` with every coefficient drawn independently.
    pub fn form(&mut self, field: Field, d: u32) -> MultiPoly {
        MultiPoly::from_terms(
            field,
            monomials_of_degree(d)
                .into_iter()
                .map(|m| (self.scalar(field), m)),
        )
    }

    /// Random linear combination of `basis`.
    pub fn combination(&mut self, field: Field, basis: &[MultiPoly]) -> MultiPoly {
        basis.iter().fold(MultiPoly::zero(field), |acc, b| {
            &acc + &b.scale(&self.scalar(field))
        })
    }

    pub fn invertible_matrix(&mut self, field: Field) -> Matrix {
        loop {
            let rows = (0..4)
                .map(|_| (0..4).map(|_| self.scalar(field)).collect())
                .collect();
            let m = Matrix::from_rows(field, rows).expect("4x4");
            if m.rank() == 4 {
                return m;
            }
        }
    }
}

impl Default for Stream {
    fn default() -> Self {
        Stream::new(DEFAULT_SEED)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let f = Field::Prime(31);
        let a = Stream::new(5).general_points(f, 6);
        let b = Stream::new(5).general_points(f, 6);
        assert_eq!(a, b);
        assert!(no_three_collinear(&a) && no_four_coplanar(&a));
        let q = Stream::new(1).general_points(Field::Rationals, 7);
        assert_eq!(q.len(), 7);
    }
}
