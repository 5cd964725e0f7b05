//! The sextic with ten triple points over GF(31).

use crate::algebra::{Field, Matrix, MultiPoly, Scalar};
use crate::constructions::{condition_matrix, quadrics_through, MultiplicityAssignment};
use crate::rng::Stream;
use crate::singular::ProjPoint;

use super::{
    distinct_roots, finish_surface, symmetric_elliptic_parts, ConstructedSurface, FamilyError,
    FamilyId, Ring,
};

/// The two residues whose common zeros give a tenth triple point at
/// (1:1:1:1) in the symmetric elliptic family.
pub fn ten_point_conditions(field: Field, lambda: &Scalar, a: &Scalar, b: &Scalar) -> Result<(Scalar, Scalar), FamilyError> {
    let f = field;
    let n = |k: i64| f.from_i64(k);
    let r1 = f.sub(
        &f.add(&f.add(&f.mul(a, a), &f.mul(&n(3), &f.mul(a, b))), &f.mul(&n(3), &f.mul(b, b))),
        &f.mul(&n(3), &f.mul(a, lambda)),
    );
    let l2 = f.mul(lambda, lambda);
    let lm1 = f.sub(lambda, &f.one());
    let lp1 = f.add(lambda, &f.one());
    let a_third = f.div(a, &n(3))?;
    let u = f.sub(&f.add(&f.add(b, &a_third), lambda), &f.add(&l2, &f.one()));
    let v = f.add(&f.add(&f.add(b, a), &l2), &f.sub(&f.one(), lambda));
    let r2 = f.add(
        &f.mul(&n(3), &f.mul(&f.mul(&lm1, &lm1), &f.mul(&u, &u))),
        &f.mul(&f.mul(&lp1, &lp1), &f.mul(&v, &v)),
    );
    Ok((r1, r2))
}

/// Parameters of the shipped witness.
const LAMBDA: i64 = 2;
const A: i64 = 9;
const B: i64 = -11;

/// The three generators q^3, xyz*q*w, xyz*g of the symmetric family.
fn generators(field: Field) -> [MultiPoly; 3] {
    let r = Ring { field };
    let (q, g) = symmetric_elliptic_parts(field, &field.from_i64(LAMBDA), &field.from_i64(A), &field.from_i64(B));
    let [x, y, z, w] = r.xyzw();
    let xyz = &(&x * &y) * &z;
    [q.pow(3), &(&xyz * &q) * &w, &xyz * &g]
}

/// Unique member of the symmetric family with a triple point at
/// (1:1:1:1), for lambda = 2, a = 9, b = -11 over GF(31).
pub fn sextic_ten_gf31() -> Result<ConstructedSurface, FamilyError> {
    let field = Field::Prime(31);
    let (r1, r2) = ten_point_conditions(field, &field.from_i64(LAMBDA), &field.from_i64(A), &field.from_i64(B))?;
    if !field.is_zero(&r1) || !field.is_zero(&r2) {
        return Err(FamilyError::Degenerate("parameters do not solve the ten-point equations".into()));
    }
    let gens = generators(field);
    let centre = ProjPoint::from_ints(field, [1, 1, 1, 1])?;
    // 10 jet conditions on the three generators
    let cond = condition_matrix(field, 6, &MultiplicityAssignment::uniform(std::slice::from_ref(&centre), 3)?)?;
    let monos = crate::algebra::monomials_of_degree(6);
    let coeffs: Vec<Vec<Scalar>> = gens.iter().map(|g| g.coefficients_on(&monos)).collect();
    let cols = Matrix::from_rows(field, coeffs)?.transpose();
    let system = cond.mul(&cols)?;
    let kernel = system.kernel_basis();
    if kernel.len() != 1 {
        return Err(FamilyError::KernelDimension {
            expected: 1,
            found: kernel.len(),
        });
    }
    let f = gens
        .iter()
        .zip(&kernel[0])
        .fold(MultiPoly::zero(field), |acc, (g, c)| &acc + &g.scale(c));

    let lambda = field.from_i64(LAMBDA);
    let (a, b) = (field.from_i64(A), field.from_i64(B));
    let mut points = vec![centre];
    // on each coordinate line q restricts to lambda t^2 + b t w + a w^2
    let roots = distinct_roots(field, &lambda, &b, &a)
        .ok_or_else(|| FamilyError::Degenerate("on-line quadratic does not split".into()))?;
    for slot in [2, 1, 0] {
        for t in &roots {
            let mut c: [Scalar; 4] = std::array::from_fn(|_| field.zero());
            c[slot] = t.clone();
            c[3] = field.one();
            points.push(ProjPoint::new(field, c)?);
        }
    }
    let (z, o) = (field.zero(), field.one());
    points.push(ProjPoint::new(field, [z.clone(), o.clone(), lambda.clone(), z.clone()])?);
    points.push(ProjPoint::new(field, [lambda.clone(), z.clone(), o.clone(), z.clone()])?);
    points.push(ProjPoint::new(field, [o, lambda, z.clone(), z])?);
    finish_surface(
        FamilyId::SexticTenGf31,
        f,
        points,
        "unique member of alpha*q^3 + beta*xyz*q*w + gamma*xyz*g (lambda=2, a=9, b=-11) triple at (1:1:1:1)".into(),
        false,
    )
}

/// Attempts at drawing a pencil parameter before giving up.
const PENCIL_DRAWS: usize = 16;

/// Drops one of the plane points P7, P8, P9 (declared indices 7..=9) of the
/// ten-point sextic f and returns the first seeded member of the pencil
/// f + t*q^3 that certifies, q the quadric through the other nine.
pub fn nine_point_pencil(ten: &ConstructedSurface, drop: usize, seed: u64) -> Result<ConstructedSurface, FamilyError> {
    let pts = ten.points();
    if !(7..pts.len().max(7)).contains(&drop) {
        return Err(FamilyError::Degenerate(format!(
            "declared point {} is not one of the plane points",
            drop + 1
        )));
    }
    let field = ten.surface.field();
    let nine: Vec<ProjPoint> = pts
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != drop)
        .map(|(_, p)| p.clone())
        .collect();
    let quads = quadrics_through(field, &nine)?;
    if quads.len() != 1 {
        return Err(FamilyError::KernelDimension {
            expected: 1,
            found: quads.len(),
        });
    }
    let cube = quads[0].pow(3);
    let mut stream = Stream::new(seed);
    let mut last = None;
    for _ in 0..PENCIL_DRAWS {
        let t = stream.nonzero_scalar(field);
        let f = ten.surface.poly() + &cube.scale(&t);
        let provenance = format!(
            "pencil member f + ({})*q^3 of the ten-point sextic without point {}",
            field.format(&t),
            drop + 1
        );
        match finish_surface(FamilyId::K3_228, f, nine.clone(), provenance, false) {
            Ok(x) => return Ok(x),
            Err(e @ FamilyError::NotCertified { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one draw"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::detect_minus_one_conics;
    use crate::invariants::geometric_genus;

    #[test]
    fn witness_residues() {
        let f = Field::Prime(31);
        let (r1, r2) = ten_point_conditions(f, &f.from_i64(2), &f.from_i64(9), &f.from_i64(-11)).unwrap();
        assert!(f.is_zero(&r1) && f.is_zero(&r2));
        let q = Field::Rationals;
        let (r1, r2) = ten_point_conditions(q, &q.one(), &q.zero(), &q.zero()).unwrap();
        assert_eq!((r1, r2), (q.zero(), q.from_i64(4)));
    }

    #[test]
    fn second_residue_nonnegative_on_rational_grid() {
        let q = Field::Rationals;
        for l in -6..=6 {
            for a in -12..=12 {
                for b in -12..=12 {
                    for den in [1, 2, 3] {
                        let s = |n: i64| q.from_ratio(&n.into(), &den.into()).unwrap();
                        let (_, r2) = ten_point_conditions(q, &s(l), &s(a), &s(b)).unwrap();
                        let Scalar::Rational(v) = r2 else { unreachable!() };
                        assert!(!num_traits::Signed::is_negative(&v), "{l} {a} {b} / {den}");
                    }
                }
            }
        }
    }

    #[test]
    fn ten_points() {
        let x = sextic_ten_gf31().unwrap();
        assert_eq!(x.points().len(), 10);
        assert!(x.points().contains(&ProjPoint::from_ints(Field::Prime(31), [0, 0, 20, 1]).unwrap()));
        assert_eq!(geometric_genus(&x.surface, x.points()).unwrap(), 0);
    }

    #[test]
    fn pencil_without_a_plane_point() {
        let ten = sextic_ten_gf31().unwrap();
        // the last three declared points are P7, P8, P9
        for drop in 7..10 {
            let nine = nine_point_pencil(&ten, drop, 17).unwrap();
            assert_eq!(nine.points().len(), 9);
            assert_eq!(detect_minus_one_conics(nine.points()).len(), 2);
            assert_eq!(geometric_genus(&nine.surface, nine.points()).unwrap(), 1);
        }
    }
}
