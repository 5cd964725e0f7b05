use crate::constructions::{forms_with_multiplicity, MultiplicityAssignment};
use crate::rng::Stream;
use crate::singular::{no_three_collinear, ProjPoint};

use super::{finish_surface, ConstructedSurface, FamilyError, FamilyId};

/// A quintic with triple points at the given points: a seeded random
/// member of the linear system of quintics triple at every point.
pub fn quintic_with_triple_points(
    points: &[ProjPoint],
    seed: u64,
    unchecked: bool,
) -> Result<ConstructedSurface, FamilyError> {
    if points.len() > 5 {
        return Err(FamilyError::Degenerate(format!(
            "a quintic has at most 5 triple points, got {}",
            points.len()
        )));
    }
    if !no_three_collinear(points) {
        return Err(FamilyError::Degenerate("three of the points are collinear".into()));
    }
    let field = match points.first() {
        Some(p) => p.field(),
        None => crate::algebra::Field::Prime(31),
    };
    let basis = forms_with_multiplicity(field, 5, &MultiplicityAssignment::uniform(points, 3)?)?;
    if basis.is_empty() {
        return Err(FamilyError::KernelDimension { expected: 1, found: 0 });
    }
    let f = Stream::new(seed).combination(field, &basis);
    if f.is_zero() {
        return Err(FamilyError::Degenerate("the random combination vanished".into()));
    }
    let provenance = format!(
        "random member (seed {seed}) of the {}-dimensional system of quintics triple at {} points",
        basis.len(),
        points.len()
    );
    finish_surface(FamilyId::QuinticNu, f, points.to_vec(), provenance, unchecked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::invariants::geometric_genus;
    use crate::singular::{singular_scheme_degree, SchemeDegree};

    #[test]
    fn genus_drops_by_one_per_point() {
        let f = Field::Prime(31);
        for nu in 0..=5usize {
            let pts = Stream::new(40 + nu as u64).general_points(f, nu);
            let x = quintic_with_triple_points(&pts, 1, false).unwrap();
            assert_eq!(geometric_genus(&x.surface, &pts).unwrap(), 4usize.saturating_sub(nu));
        }
    }

    #[test]
    fn single_point_scheme_degree() {
        let f = Field::Prime(31);
        let pts = Stream::new(2).general_points(f, 1);
        let x = quintic_with_triple_points(&pts, 3, false).unwrap();
        assert_eq!(singular_scheme_degree(&x.surface).unwrap(), SchemeDegree::Finite(8));
    }

    #[test]
    fn vertex_point() {
        let f = Field::Rationals;
        let p = ProjPoint::from_ints(f, [0, 0, 0, 1]).unwrap();
        let x = quintic_with_triple_points(&[p], 5, false).unwrap();
        // every term has degree at least 3 in x, y, z
        assert!(x.surface.poly().terms().all(|(m, _)| m.0[3] <= 2));
    }

    #[test]
    fn collinear_rejected() {
        let f = Field::Rationals;
        let pts = [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0]]
            .map(|c| ProjPoint::from_ints(f, c).unwrap());
        assert!(quintic_with_triple_points(&pts, 1, false).is_err());
    }
}
