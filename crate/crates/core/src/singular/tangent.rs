//! First-order equisingular deformations.
//!
//! A degree-d form g is tangent to the equisingular stratum at f when, at
//! every triple point P, the 2-jet of g at P lies in the span of the 2-jets
//! of the four partials of f at P.

use crate::algebra::matrix::{kernel_from_rref, rref_in_place, Echelon};
use crate::algebra::{monomials_of_degree, Field};

use super::certify::certify_ordinary_triple_point;
use super::jet::{lifted_terms, JetFrame};
use super::{AnalysisError, ProjPoint, Surface};

fn working_field(x: &Surface, points: &[ProjPoint]) -> Result<Field, AnalysisError> {
    let mut field = x.field();
    for p in points {
        if field.embeds_into(&p.field()) {
            field = p.field();
        } else if !p.field().embeds_into(&field) {
            return Err(AnalysisError::PointOutsideField {
                field,
                value: p.to_string(),
            });
        }
    }
    Ok(field)
}

/// Projective dimension of the equisingular tangent space at `x` for the given triple points.
pub fn equisingular_tangent_dimension(
    x: &Surface,
    points: &[ProjPoint],
) -> Result<usize, AnalysisError> {
    for p in points {
        certify_ordinary_triple_point(x, p).map_err(|rejection| AnalysisError::NotTriplePoint {
            point: p.to_string(),
            rejection,
        })?;
    }
    let field = working_field(x, points)?;
    let monos = monomials_of_degree(x.degree());
    let partials = x.poly().embed(field)?.gradient();
    let rank = with_arith!(field, ar => {
        let mut ech = Echelon::new(ar.clone(), monos.len());
        for p in points {
            let frame = JetFrame::new(ar.clone(), p, 2, x.degree());
            let mut jets: Vec<Vec<_>> = partials
                .iter()
                .map(|g| frame.jet_of(&lifted_terms(&ar, g)))
                .collect();
            let width = frame.len();
            let pivots = rref_in_place(&ar, &mut jets, width);
            // functionals vanishing on the span of the partials' jets
            let annihilator = kernel_from_rref(&ar, &jets[..pivots.len()], &pivots, width);
            let monomial_jets: Vec<Vec<_>> =
                monos.iter().map(|m| frame.jet_of_monomial(m)).collect();
            for ell in &annihilator {
                let row = monomial_jets
                    .iter()
                    .map(|j| {
                        j.iter()
                            .zip(ell)
                            .fold(ar.zero(), |acc, (a, b)| ar.add(&acc, &ar.mul(a, b)))
                    })
                    .collect();
                ech.insert(row);
            }
        }
        ech.rank()
    });
    let dim = monos.len() - rank;
    Ok(dim.saturating_sub(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn single_triple_point_cone() {
        // x^3+y^3+z^3 + w * (generic cubic terms) keeps one triple point at (0:0:0:1);
        // the quartic space has dimension 35 and a triple point imposes 7 conditions.
        let f = Field::Prime(31);
        let x = Surface::new(parse_poly("x^3*w+y^3*w+z^3*w+x^4+2*y^4+3*z^4+x*y*z^2", f).unwrap())
            .unwrap();
        let p = ProjPoint::from_ints(f, [0, 0, 0, 1]).unwrap();
        assert_eq!(equisingular_tangent_dimension(&x, &[p]).unwrap(), 35 - 7 - 1);
    }

    #[test]
    fn rejects_non_triple_points() {
        let f = Field::Prime(31);
        let x = Surface::new(parse_poly("x^2*w+y^3+z^3", f).unwrap()).unwrap();
        let p = ProjPoint::from_ints(f, [0, 0, 0, 1]).unwrap();
        assert!(matches!(
            equisingular_tangent_dimension(&x, &[p]),
            Err(AnalysisError::NotTriplePoint { .. })
        ));
    }
}
