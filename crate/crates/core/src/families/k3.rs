//! Sextics with nine triple points whose resolution is a K3 surface blown
//! up three times.

use crate::algebra::{Field, MultiPoly, Scalar};
use crate::singular::ProjPoint;

use super::{
    common_zeros, distinct_roots, finish_surface, reciprocal_family, ConstructedSurface,
    FamilyError, FamilyId, Params, Ring,
};

/// Parameters of the (4,4,4) family: the three cones and the pencil coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Params {
    pub a: [Scalar; 3],
    pub b: [Scalar; 3],
    pub alpha: Scalar,
    pub beta: Scalar,
}

impl K3Params {
    /// The particular example a_i = -1, b_i = 0 with alpha = beta = 1.
    pub fn particular(field: Field) -> K3Params {
        K3Params {
            a: std::array::from_fn(|_| field.from_i64(-1)),
            b: std::array::from_fn(|_| field.zero()),
            alpha: field.one(),
            beta: field.one(),
        }
    }

    pub(crate) fn read(p: &mut Params<'_>) -> Result<K3Params, FamilyError> {
        Ok(K3Params {
            a: [p.scalar("a1", -1)?, p.scalar("a2", -1)?, p.scalar("a3", -1)?],
            b: [p.scalar("b1", 0)?, p.scalar("b2", 0)?, p.scalar("b3", 0)?],
            alpha: p.scalar("alpha", 1)?,
            beta: p.scalar("beta", 1)?,
        })
    }
}

/// The cones q1, q2, q3 and the canonical quadric q, homogenised with w.
pub fn k3_444_parts(field: Field, k: &K3Params) -> Result<([MultiPoly; 3], MultiPoly), FamilyError> {
    let r = Ring { field };
    let [x, y, z, w] = r.xyzw();
    let (a, b) = (&k.a, &k.b);
    let s = |i: usize| r.c(&field.add(&field.add(&a[i], &b[i]), &field.one()));
    let q1 = &(&(&z * &z) + &(&(&r.c(&a[0]) * &y) * &w)) + &(&(&(&r.c(&b[0]) * &z) * &w) - &(&(&s(0) * &y) * &z));
    let q2 = &(&(&x * &x) + &(&(&r.c(&a[1]) * &z) * &w)) + &(&(&(&r.c(&b[1]) * &x) * &w) - &(&(&s(1) * &x) * &z));
    let q3 = &(&(&y * &y) + &(&(&r.c(&a[2]) * &x) * &w)) + &(&(&(&r.c(&b[2]) * &y) * &w) - &(&(&s(2) * &y) * &x));
    let lin = |c: &Scalar, v: &MultiPoly, sign: i64| &(&r.c(c) * &w) + &(&r.n(sign) * v);
    let cubic = &(&(&lin(&a[0], &z, -1) * &lin(&a[1], &x, -1)) * &lin(&a[2], &y, -1))
        + &(&(&lin(&b[0], &z, 1) * &lin(&b[1], &x, 1)) * &lin(&b[2], &y, 1));
    let q = cubic.divide_exact(&w)?;
    Ok(([q1, q2, q3], q))
}

pub fn sextic_k3_444(field: Field, k: &K3Params, unchecked: bool) -> Result<ConstructedSurface, FamilyError> {
    if field.is_zero(&k.alpha) {
        return Err(FamilyError::Degenerate("alpha = 0 leaves the cube of a quadric".into()));
    }
    if field.is_zero(&k.beta) {
        return Err(FamilyError::Degenerate("beta = 0 gives a reducible surface".into()));
    }
    let ([q1, q2, q3], q) = k3_444_parts(field, k)?;
    let base = [
        ProjPoint::from_ints(field, [0, 0, 0, 1])?,
        ProjPoint::from_ints(field, [1, 1, 1, 1])?,
    ];
    for p in &base {
        if field.is_zero(&q.evaluate(p.coords())) {
            return Err(FamilyError::Degenerate(format!("the canonical quadric passes through {p}")));
        }
    }
    let r = Ring { field };
    let f = &(&r.c(&k.alpha) * &(&(&q1 * &q2) * &q3)) + &(&r.c(&k.beta) * &q.pow(3));
    let mut points: Vec<ProjPoint> = (0..3)
        .map(|i| {
            let mut c = [0; 4];
            c[i] = 1;
            ProjPoint::from_ints(field, c)
        })
        .collect::<Result<_, _>>()?;
    let mut provenance = String::from("alpha*q1*q2*q3 + beta*q^3 with the vertices of the cones declared");
    if field.order().is_some_and(|o| o <= 64) {
        let rest: Vec<ProjPoint> = common_zeros(field, &[q1, q2, q3])?
            .into_iter()
            .filter(|p| !base.contains(p))
            .collect();
        points.extend(order_by_orbit(field, rest));
        provenance.push_str(", remaining base points of the cones found by search");
    }
    finish_surface(FamilyId::K3_444, f, points, provenance, unchecked)
}

/// Sorts the off-vertex points as (e^4i : e^2i : e^i : 1), i = 1..6, where
/// e = g^((p-1)/7) for the smallest primitive root g mod p. Other
/// configurations keep the canonical order.
fn order_by_orbit(field: Field, mut pts: Vec<ProjPoint>) -> Vec<ProjPoint> {
    let Field::Prime(p) = field else { return pts };
    let p = p as u64;
    if (p - 1) % 7 != 0 {
        return pts;
    }
    let Some(g) = smallest_primitive_root(field, p) else { return pts };
    let eta = field.pow(&g, (p - 1) / 7);
    let key = |q: &ProjPoint| {
        (1..=6u64).find(|&i| {
            let e = |k: u64| field.pow(&eta, k * i);
            ProjPoint::new(field, [e(4), e(2), e(1), field.one()]).is_ok_and(|o| &o == q)
        })
    };
    if pts.iter().all(|q| key(q).is_some()) {
        pts.sort_by_key(|q| key(q));
    }
    pts
}

fn smallest_primitive_root(field: Field, p: u64) -> Option<Scalar> {
    let n = p - 1;
    let mut primes = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            primes.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    (2..p).map(|g| field.from_i64(g as i64)).find(|g| {
        primes.iter().all(|r| !field.is_one(&field.pow(g, n / r)))
    })
}

/// Reciprocal image of a (4,4,4) member, giving type (2,4,6).
pub fn sextic_k3_246(
    base: &ConstructedSurface,
    fundamental: [usize; 4],
    unchecked: bool,
) -> Result<ConstructedSurface, FamilyError> {
    reciprocal_family(base, fundamental, FamilyId::K3_246, unchecked)
}

/// The (2,2,8) member alpha*q^3 + beta*h1*h2*g4 through the coordinate
/// vertices and (lambda:1:1:1) with its permutations.
pub fn sextic_k3_228(
    field: Field,
    lambda: &Scalar,
    alpha: &Scalar,
    beta: &Scalar,
    unchecked: bool,
) -> Result<ConstructedSurface, FamilyError> {
    let l = lambda;
    for bad in [0, -1, -2] {
        if *l == field.from_i64(bad) {
            return Err(FamilyError::Degenerate(format!("lambda = {bad}")));
        }
    }
    let two_l_plus_one = field.add(&field.mul(&field.from_i64(2), l), &field.one());
    if field.is_zero(&two_l_plus_one) {
        return Err(FamilyError::Degenerate("lambda = -1/2".into()));
    }
    if field.is_zero(alpha) || field.is_zero(beta) {
        return Err(FamilyError::Degenerate("alpha and beta must be nonzero".into()));
    }
    let r = Ring { field };
    let [x, y, z, t] = r.xyzw();
    let lp1 = field.add(l, &field.one());
    let lp2 = field.add(l, &field.from_i64(2));
    let e1 = &(&x + &y) + &z;
    let e2 = &(&(&x * &y) + &(&x * &z)) + &(&y * &z);
    let e3 = &(&x * &y) * &z;
    let h1 = t.clone();
    let h2 = &e1 - &(&r.c(&lp2) * &t);
    let c2 = field.mul(&two_l_plus_one, &two_l_plus_one);
    let g4 = &(&(&r.c(&field.mul(l, &field.mul(&lp1, &lp2))) * &e2.pow(2))
        - &(&(&r.c(&field.mul(&c2, &lp1)) * &e3) * &e1))
        + &(&(&(&r.c(&field.mul(&c2, &lp2)) * &e3) * &t)
            - &(&(&(&r.c(&field.mul(l, &two_l_plus_one)) * &e2) * &e1) * &t));
    let q = &(&r.c(&lp2) * &e2) - &(&(&r.c(&two_l_plus_one) * &e1) * &t);
    let f = &(&r.c(alpha) * &q.pow(3)) + &(&r.c(beta) * &(&(&h1 * &h2) * &g4));

    let mut points = Vec::new();
    for i in 0..4 {
        let mut c = [0; 4];
        c[i] = 1;
        points.push(ProjPoint::from_ints(field, c)?);
    }
    for i in 0..3 {
        let mut c: [Scalar; 4] = std::array::from_fn(|_| field.one());
        c[i] = l.clone();
        points.push(ProjPoint::new(field, c)?);
    }
    // tangency points on t = 0, x + y + z = 0 where xy + xz + yz = 0,
    // that is x^2 + xy + y^2 = 0 with z = -x - y
    let mut provenance = String::from("alpha*q^3 + beta*h1*h2*g4 with seven rational points");
    match distinct_roots(field, &field.one(), &field.one(), &field.one()) {
        Some(roots) => {
            for s in roots {
                let zc = field.neg(&field.add(&field.one(), &s));
                points.push(ProjPoint::new(field, [field.one(), s, zc, field.zero()])?);
            }
            provenance.push_str(" and the two tangency points on h1 = h2 = 0");
        }
        None => provenance.push_str("; tangency points need a cube root of unity and are not declared"),
    }
    finish_surface(FamilyId::K3_228, f, points, provenance, unchecked)
}
