//! S4-symmetric septics with sixteen triple points.

use serde::Serialize;

use crate::algebra::{poly_determinant, Field, MultiPoly, Scalar};
use crate::singular::ProjPoint;

use super::{finish_surface, ConstructedSurface, FamilyError, FamilyId, Ring};

/// Elementary symmetric forms sigma_1..sigma_4 in x, y, z, w.
fn sigmas(r: Ring) -> [MultiPoly; 4] {
    let [x, y, z, w] = r.xyzw();
    let s1 = &(&(&x + &y) + &z) + &w;
    let s2 = &(&(&(&(&(&x * &y) + &(&x * &z)) + &(&x * &w)) + &(&y * &z)) + &(&y * &w)) + &(&z * &w);
    let xy = &x * &y;
    let zw = &z * &w;
    let s3 = &(&xy * &(&z + &w)) + &(&zw * &(&x + &y));
    let s4 = &xy * &zw;
    [s1, s2, s3, s4]
}

/// The seven S4-invariant septics
/// s1^3 s4, s1^2 s2 s3, s1 s2^3, s1 s2 s4, s1 s3^2, s2^2 s3, s3 s4.
pub fn septic_s4_basis(field: Field) -> [MultiPoly; 7] {
    let [s1, s2, s3, s4] = sigmas(Ring { field });
    [
        &s1.pow(3) * &s4,
        &(&s1.pow(2) * &s2) * &s3,
        &s1 * &s2.pow(3),
        &(&s1 * &s2) * &s4,
        &s1 * &s3.pow(2),
        &s2.pow(2) * &s3,
        &s3 * &s4,
    ]
}

/// The member of the S4-invariant septics with triple points along the
/// orbit of (-nu:mu:nu:nu) and at the coordinate vertices.
pub fn septic_s4(field: Field, mu: &Scalar, nu: &Scalar, unchecked: bool) -> Result<ConstructedSurface, FamilyError> {
    let f = field;
    if f.is_zero(mu) || f.is_zero(nu) {
        return Err(FamilyError::Degenerate("mu and nu must be nonzero".into()));
    }
    if f.is_zero(&f.sub(mu, nu)) || f.is_zero(&f.add(mu, nu)) {
        return Err(FamilyError::Degenerate("mu = +-nu collapses the orbit".into()));
    }
    if f.characteristic() == 2 || f.characteristic() == 3 {
        return Err(FamilyError::WrongField {
            family: FamilyId::SepticS4,
            required: "characteristic other than 2 and 3".into(),
            field: f,
        });
    }
    let [b1, b2, b3, b4, b5, b6, b7] = septic_s4_basis(f);
    let mmn = f.sub(mu, nu);
    let mpn = f.add(mu, nu);
    let cube = |s: &Scalar| f.pow(s, 3);
    let c_a = f.mul(&cube(&mmn), nu);
    let c_b = f.neg(&f.mul(&mpn, &cube(nu)));
    let c_c = f.neg(&f.mul(&mpn, &f.sub(&cube(mu), &cube(nu))));
    let c_d = f.mul(&f.mul(&mpn, &f.mul(&mmn, &mmn)), &f.add(mu, &f.add(nu, nu)));
    let c_e = f.mul(&mpn, &cube(&mmn));
    let poly = &(&(&(&(&b2 - &b5) - &b1).scale(&c_a) + &b3.scale(&c_b)) + &b6.scale(&c_c))
        + &(&b4.scale(&c_d) + &b7.scale(&c_e));

    let mut points = Vec::with_capacity(16);
    for i in 0..4 {
        let mut c = [0; 4];
        c[i] = 1;
        points.push(ProjPoint::from_ints(f, c)?);
    }
    let neg_nu = f.neg(nu);
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            let mut c: [Scalar; 4] = std::array::from_fn(|_| nu.clone());
            c[i] = neg_nu.clone();
            c[j] = mu.clone();
            points.push(ProjPoint::new(f, c)?);
        }
    }
    let provenance = format!(
        "S4-invariant septic at (mu:nu) = ({}:{})",
        f.format(mu),
        f.format(nu)
    );
    finish_surface(FamilyId::SepticS4, poly, points, provenance, unchecked)
}

/// One factor of the determinant with its expected and observed multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorCheck {
    pub factor: String,
    pub expected: u32,
    pub found: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SepticDeterminantReport {
    /// Total degree of the determinant in lambda, mu, nu.
    pub degree: u32,
    pub factors: Vec<FactorCheck>,
    /// Cofactor left after removing every factor.
    pub constant: String,
    /// Whether the determinant vanishes identically on lambda = -nu.
    pub vanishes_at_lambda_minus_nu: bool,
}

/// Rows: the second partials xx, xy, xz, yy, yz, zz, zw at (lambda:mu:nu:nu).
const ROWS: [(usize, usize); 7] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2), (2, 3)];

/// The 7x7 matrix of second partials of the basis septics at
/// (lambda:mu:nu:nu), with lambda, mu, nu carried by x, y, z.
pub fn septic_hessian_matrix() -> Result<Vec<Vec<MultiPoly>>, FamilyError> {
    let field = Field::Rationals;
    let r = Ring { field };
    let [x, y, z, _] = r.xyzw();
    let at = [x, y, z.clone(), z];
    let basis = septic_s4_basis(field);
    ROWS.iter()
        .map(|&(i, j)| {
            basis
                .iter()
                .map(|b| Ok(b.derivative(i).derivative(j).substitute(&at)?))
                .collect()
        })
        .collect()
}

/// Factors the determinant of [`septic_hessian_matrix`] by repeated exact
/// division and checks that only a nonzero constant remains.
pub fn septic_determinant_factorization() -> Result<SepticDeterminantReport, FamilyError> {
    let field = Field::Rationals;
    let r = Ring { field };
    let [l, m, n, _] = r.xyzw();
    let det = poly_determinant(&septic_hessian_matrix()?)?;
    let degree = det.homogeneous_degree().unwrap_or(0);

    let minus_nu = [n.neg(), m.clone(), n.clone(), r.n(0)];
    let vanishes = det.substitute(&minus_nu)?.is_zero();

    let lm = &l * &m;
    let expected: Vec<(&str, MultiPoly, u32)> = vec![
        ("nu", n.clone(), 5),
        ("lambda - mu", &l - &m, 4),
        ("lambda - nu", &l - &n, 5),
        ("mu - nu", &m - &n, 5),
        ("lambda + nu", &l + &n, 1),
        ("mu + nu", &m + &n, 1),
        ("lambda + mu + 2nu", &(&l + &m) + &(&r.n(2) * &n), 4),
        ("lambda mu - nu^2", &lm - &(&n * &n), 1),
        ("2 lambda mu + lambda nu + mu nu", &(&(&r.n(2) * &lm) + &(&l * &n)) + &(&m * &n), 1),
        (
            "lambda mu + 2 lambda nu + 2 mu nu + nu^2",
            &(&(&lm + &(&r.n(2) * &(&l * &n))) + &(&r.n(2) * &(&m * &n))) + &(&n * &n),
            3,
        ),
    ];
    let mut rest = det;
    let mut factors = Vec::with_capacity(expected.len());
    for (name, g, e) in expected {
        let (found, q) = rest.strip_factor(&g)?;
        rest = q;
        if found != e {
            return Err(FamilyError::FactorMismatch {
                factor: name.to_string(),
                expected: e,
                found,
            });
        }
        factors.push(FactorCheck {
            factor: name.to_string(),
            expected: e,
            found,
        });
    }
    if rest.is_zero() || rest.degree() != Some(0) {
        return Err(FamilyError::Degenerate(format!("cofactor {rest} is not a nonzero constant")));
    }
    let constant = field.format(&rest.coefficient(&crate::algebra::Monomial::new([0; 4])));
    Ok(SepticDeterminantReport {
        degree,
        factors,
        constant,
        vanishes_at_lambda_minus_nu: vanishes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::resolved_invariants;

    fn permutations() -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        if (0..4).all(|i| p.contains(&i)) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn basis_is_symmetric() {
        let f = Field::Prime(31);
        let perms = permutations();
        assert_eq!(perms.len(), 24);
        for b in septic_s4_basis(f) {
            assert_eq!(b.homogeneous_degree(), Some(7));
            for p in &perms {
                let img: [MultiPoly; 4] = std::array::from_fn(|i| MultiPoly::var(f, p[i]));
                assert_eq!(b.substitute(&img).unwrap(), b);
            }
        }
    }

    #[test]
    fn sixteen_points_over_gf31() {
        let f = Field::Prime(31);
        let x = septic_s4(f, &f.from_i64(1), &f.from_i64(2), false).unwrap();
        assert_eq!(x.points().len(), 16);
        let t = resolved_invariants(7, 16, 0).unwrap();
        assert_eq!((t.c1_squared, t.c2, t.chi), (15, 45, 5));
    }

    #[test]
    fn guards() {
        let q = Field::Rationals;
        for (m, n) in [(1, 1), (1, -1), (0, 2), (3, 0)] {
            assert!(septic_s4(q, &q.from_i64(m), &q.from_i64(n), true).is_err());
        }
    }

    #[test]
    fn determinant_row_entries_have_degree_five() {
        let m = septic_hessian_matrix().unwrap();
        for row in &m {
            for e in row {
                assert!(e.is_zero() || e.homogeneous_degree() == Some(5));
            }
        }
    }
}
