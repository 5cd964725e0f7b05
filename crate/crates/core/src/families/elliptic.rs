//! Sextics with nine triple points whose resolution is a properly
//! elliptic surface blown up three times.

use crate::algebra::{Field, MultiPoly, Scalar};
use crate::singular::ProjPoint;

use super::{distinct_roots, finish_surface, reciprocal_family, ConstructedSurface, FamilyError, FamilyId, Ring};

/// The three lines of the triangle in w = 0 through P7 = (0:1:l:0),
/// P8 = (m:0:1:0), P9 = (1:n:0:0).
fn triangle(r: Ring, lmn: &[Scalar; 3]) -> [MultiPoly; 3] {
    let f = r.field;
    let [l, m, n] = lmn;
    let [x, y, z, _] = r.xyzw();
    [
        &(&(&r.c(n) * &x) - &y) - &(&r.c(&f.mul(m, n)) * &z),
        &(&(&r.c(l) * &y) - &(&r.c(&f.mul(l, n)) * &x)) - &z,
        &(&(&r.c(m) * &z) - &x) - &(&r.c(&f.mul(m, l)) * &y),
    ]
}

/// Quadric q and nodal cubic g of the (2,2,2) construction.
pub fn elliptic_parts(field: Field, lmn: &[Scalar; 3], b: &[Scalar; 6]) -> (MultiPoly, MultiPoly) {
    let r = Ring { field };
    let f = field;
    let [l, m, n] = lmn;
    let [x, y, z, w] = r.xyzw();
    let [la, lb, lc] = triangle(r, lmn);
    let w2 = &w * &w;
    let q = &(&(&r.c(&f.mul(&b[3], &f.mul(&b[4], &b[5]))) * &w2)
        + &(&w
            * &(&(&(&r.c(&f.mul(&b[0], &b[3])) * &x) + &(&r.c(&f.mul(&b[1], &b[4])) * &y))
                + &(&r.c(&f.mul(&b[2], &b[5])) * &z))))
        + &(&(&(&r.c(&b[3]) * &(&x * &la)) + &(&r.c(&b[4]) * &(&y * &lb))) + &(&r.c(&b[5]) * &(&z * &lc)));
    let g = &(&(&w2
        * &(&(&(&r.c(&f.mul(&f.mul(l, n), &f.mul(&b[4], &b[5]))) * &x)
            + &(&r.c(&f.mul(&f.mul(l, m), &f.mul(&b[3], &b[5]))) * &y))
            + &(&r.c(&f.mul(&f.mul(m, n), &f.mul(&b[3], &b[4]))) * &z)))
        + &(&w
            * &(&(&(&r.c(&f.mul(l, &b[0])) * &(&x * &la)) + &(&r.c(&f.mul(m, &b[1])) * &(&y * &lb)))
                + &(&r.c(&f.mul(n, &b[2])) * &(&z * &lc)))))
        + &(&(&la * &lb) * &lc);
    (q, g)
}

/// The symmetric specialisation lambda = mu = nu, b1 = b2 = b3 = b and
/// b4 = b5 = b6 = sqrt(a), with q divided by sqrt(a).
pub fn symmetric_elliptic_parts(field: Field, lambda: &Scalar, a: &Scalar, b: &Scalar) -> (MultiPoly, MultiPoly) {
    let r = Ring { field };
    let f = field;
    let lmn = [lambda.clone(), lambda.clone(), lambda.clone()];
    let [x, y, z, w] = r.xyzw();
    let [la, lb, lc] = triangle(r, &lmn);
    let e1 = &(&x + &y) + &z;
    let s = &(&(&x * &la) + &(&y * &lb)) + &(&z * &lc);
    let w2 = &w * &w;
    let q = &(&(&r.c(a) * &w2) + &(&(&r.c(b) * &e1) * &w)) + &s;
    let g = &(&(&(&r.c(&f.mul(&f.mul(lambda, lambda), a)) * &e1) * &w2)
        + &(&(&r.c(&f.mul(lambda, b)) * &s) * &w))
        + &(&(&la * &lb) * &lc);
    (q, g)
}

/// Pairs of points where q meets the lines x=y=0, x=z=0 and y=z=0, when
/// the three quadratics split.
fn on_line_points(field: Field, lmn: &[Scalar; 3], b: &[Scalar; 6]) -> Result<Option<Vec<ProjPoint>>, FamilyError> {
    let f = field;
    let [l, m, n] = lmn;
    // (coordinate index, leading coeff, middle, constant) of c t^2 + d t w + e w^2
    let lines = [
        (2, m.clone(), b[2].clone(), f.mul(&b[3], &b[4])),
        (1, l.clone(), b[1].clone(), f.mul(&b[3], &b[5])),
        (0, n.clone(), b[0].clone(), f.mul(&b[4], &b[5])),
    ];
    let mut out = Vec::new();
    for (slot, lead, mid, con) in lines {
        let Some(roots) = distinct_roots(f, &lead, &mid, &con) else { return Ok(None) };
        for t in roots {
            let mut c: [Scalar; 4] = std::array::from_fn(|_| f.zero());
            c[slot] = t;
            c[3] = f.one();
            out.push(ProjPoint::new(f, c)?);
        }
    }
    Ok(Some(out))
}

/// alpha*q^3 + beta*xyz*q*w + gamma*xyz*g.
pub fn sextic_elliptic_222(
    field: Field,
    lmn: &[Scalar; 3],
    b: &[Scalar; 6],
    coeffs: &[Scalar; 3],
    unchecked: bool,
) -> Result<ConstructedSurface, FamilyError> {
    let f = field;
    if lmn.iter().any(|v| f.is_zero(v)) {
        return Err(FamilyError::Degenerate("lambda, mu and nu must be nonzero".into()));
    }
    if b[3..].iter().any(|v| f.is_zero(v)) {
        return Err(FamilyError::Degenerate("b4, b5 and b6 must be nonzero".into()));
    }
    let [alpha, beta, gamma] = coeffs;
    if f.is_zero(alpha) || f.is_zero(gamma) {
        return Err(FamilyError::Degenerate("alpha and gamma must be nonzero".into()));
    }
    let r = Ring { field };
    let (q, g) = elliptic_parts(field, lmn, b);
    let [x, y, z, w] = r.xyzw();
    let xyz = &(&x * &y) * &z;
    let poly = &(&(&r.c(alpha) * &q.pow(3)) + &(&r.c(beta) * &(&(&xyz * &q) * &w)))
        + &(&r.c(gamma) * &(&xyz * &g));
    let [l, m, n] = lmn;
    let mut points = Vec::new();
    let mut provenance = String::from("alpha*q^3 + beta*xyz*q*w + gamma*xyz*g");
    match on_line_points(field, lmn, b)? {
        Some(online) => {
            points.extend(online);
            provenance.push_str(" with the six points on the coordinate lines");
        }
        None => provenance.push_str("; points on the coordinate lines are not rational and not declared"),
    }
    points.push(ProjPoint::new(f, [f.zero(), f.one(), l.clone(), f.zero()])?);
    points.push(ProjPoint::new(f, [m.clone(), f.zero(), f.one(), f.zero()])?);
    points.push(ProjPoint::new(f, [f.one(), n.clone(), f.zero(), f.zero()])?);
    finish_surface(FamilyId::Ell222, poly, points, provenance, unchecked)
}

/// Reciprocal image of a (2,2,2) member, giving type (2,2,4).
pub fn sextic_elliptic_224(
    base: &ConstructedSurface,
    fundamental: [usize; 4],
    unchecked: bool,
) -> Result<ConstructedSurface, FamilyError> {
    reciprocal_family(base, fundamental, FamilyId::Ell224, unchecked)
}
