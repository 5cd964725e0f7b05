use std::fmt;

use crate::algebra::monomial::ternary_monomials_of_degree;
use crate::algebra::{Matrix, MultiPoly};

use super::jet::local_jet;
use super::{ProjPoint, Surface};

/// Evidence that a point is an ordinary triple point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePointCertificate {
    pub point: ProjPoint,
    pub multiplicity: u32,
    /// Degree-3 part of the local expansion, local variables in x, y, z.
    pub tangent_cone: MultiPoly,
    /// Rank of the degree-4 multiplication matrix of the cone's partials (15 when smooth).
    pub smooth_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    Multiplicity { found: u32 },
    SingularTangentCone { rank: usize },
    UnsupportedCharacteristic(u32),
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Multiplicity { found } => write!(f, "multiplicity {found}, expected 3"),
            Rejection::SingularTangentCone { rank } => {
                write!(f, "tangent cone is singular (rank {rank} < 15)")
            }
            Rejection::UnsupportedCharacteristic(p) => {
                write!(f, "triple point certification unsupported in characteristic {p}")
            }
        }
    }
}

/// Rank of the 18x15 matrix spanned by degree-2 multiples of the partials of a ternary cubic.
pub fn tangent_cone_rank(cone: &MultiPoly) -> usize {
    let field = cone.field();
    let quads = ternary_monomials_of_degree(2);
    let quartics = ternary_monomials_of_degree(4);
    let mut rows = Vec::with_capacity(18);
    for i in 0..3 {
        let partial = cone.derivative(i);
        for m in &quads {
            rows.push(partial.mul_monomial(m).coefficients_on(&quartics));
        }
    }
    Matrix::from_rows(field, rows).expect("rectangular").rank()
}

pub fn certify_ordinary_triple_point(
    x: &Surface,
    p: &ProjPoint,
) -> Result<TriplePointCertificate, Rejection> {
    let ch = x.field().characteristic();
    if ch == 2 || ch == 3 {
        return Err(Rejection::UnsupportedCharacteristic(ch));
    }
    let jet = local_jet(x, p, 3);
    match jet.lowest_degree() {
        Some(3) => {}
        Some(m) => return Err(Rejection::Multiplicity { found: m }),
        None => {
            return Err(Rejection::Multiplicity {
                found: super::jet::multiplicity(x, p),
            })
        }
    }
    let cone = jet.homogeneous_part(3);
    let rank = tangent_cone_rank(&cone);
    if rank < 15 {
        return Err(Rejection::SingularTangentCone { rank });
    }
    Ok(TriplePointCertificate {
        point: p.clone(),
        multiplicity: 3,
        tangent_cone: cone,
        smooth_rank: rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Field};

    fn check(s: &str, f: Field) -> Result<TriplePointCertificate, Rejection> {
        let x = Surface::new(parse_poly(s, f).unwrap()).unwrap();
        certify_ordinary_triple_point(&x, &ProjPoint::from_ints(f, [0, 0, 0, 1]).unwrap())
    }

    #[test]
    fn examples() {
        let q = Field::Rationals;
        let c = check("x^3+y^3+z^3", q).unwrap();
        assert_eq!(c.smooth_rank, 15);
        assert!(matches!(
            check("x^3+y^3+z^3-3*x*y*z", q),
            Err(Rejection::SingularTangentCone { .. })
        ));
        assert_eq!(
            check("x^2*w+y^3+z^3", q),
            Err(Rejection::Multiplicity { found: 2 })
        );
        assert_eq!(
            check("x^4+y^4+z^4", q),
            Err(Rejection::Multiplicity { found: 4 })
        );
        assert_eq!(
            check("x^3+y^3+z^3", Field::Prime(3)),
            Err(Rejection::UnsupportedCharacteristic(3))
        );
    }
}
