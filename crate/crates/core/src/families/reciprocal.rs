use crate::algebra::{Matrix, MultiPoly, Scalar};
use crate::constructions::reciprocal_transform;
use crate::singular::{multiplicity, span_rank, ProjPoint};

use super::{finish_surface, ConstructedSurface, FamilyError, FamilyId};

/// Moves four declared triple points of `base` to the coordinate vertices
/// and applies the reciprocal transformation. The remaining declared points
/// are carried along; the vertices join them when they are triple points of
/// the image.
pub fn reciprocal_family(
    base: &ConstructedSurface,
    fundamental: [usize; 4],
    target: FamilyId,
    unchecked: bool,
) -> Result<ConstructedSurface, FamilyError> {
    let pts = base.points();
    if let Some(&i) = fundamental.iter().find(|&&i| i >= pts.len()) {
        return Err(FamilyError::BadFundamental(format!(
            "index {} exceeds the {} declared points",
            i + 1,
            pts.len()
        )));
    }
    let mut sorted = fundamental;
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(FamilyError::BadFundamental("indices repeat".into()));
    }
    let chosen: Vec<&ProjPoint> = fundamental.iter().map(|&i| &pts[i]).collect();
    for skip in 0..4 {
        let three: Vec<&ProjPoint> = (0..4).filter(|&j| j != skip).map(|j| chosen[j]).collect();
        if span_rank(&three) < 3 {
            return Err(FamilyError::BadFundamental("three of them are collinear".into()));
        }
    }
    if span_rank(&chosen) < 4 {
        return Err(FamilyError::BadFundamental("the four points are coplanar".into()));
    }
    let x = &base.surface;
    for p in &chosen {
        let m = multiplicity(x, p);
        if m != 3 {
            return Err(FamilyError::BadFundamental(format!(
                "{p} has multiplicity {m}, not a triple point"
            )));
        }
    }

    let field = chosen[0].field();
    let f = x.poly().embed(field)?;
    // columns are the fundamental points: M e_i = P_i
    let cols: Vec<Vec<Scalar>> = (0..4)
        .map(|r| (0..4).map(|c| chosen[c].coords()[r].clone()).collect())
        .collect();
    let m = Matrix::from_rows(field, cols)?;
    let images: [MultiPoly; 4] = std::array::from_fn(|r| {
        MultiPoly::from_terms(
            field,
            (0..4).map(|c| (m.get(r, c).clone(), crate::algebra::Monomial::var(c))),
        )
    });
    let moved = crate::singular::Surface::new(f.substitute(&images)?)?;
    let (image, _) = reciprocal_transform(&moved)?;
    let inverse = m.inverse()?;

    let mut points = Vec::new();
    for i in 0..4 {
        let mut c = [0; 4];
        c[i] = 1;
        let v = ProjPoint::from_ints(field, c)?;
        if multiplicity(&image, &v) == 3 {
            points.push(v);
        }
    }
    for (i, p) in pts.iter().enumerate() {
        if fundamental.contains(&i) {
            continue;
        }
        let y = inverse.mul_vec(p.embed(field)?.coords())?;
        if y.iter().any(|c| field.is_zero(c)) {
            return Err(FamilyError::BadFundamental(format!(
                "{p} lies on a plane through three fundamental points"
            )));
        }
        let inv: Vec<Scalar> = y.iter().map(|c| field.inv(c)).collect::<Result<_, _>>()?;
        points.push(ProjPoint::new(field, inv.try_into().expect("four"))?);
    }
    let provenance = format!(
        "reciprocal transform of {} with fundamental points {}",
        base.surface.meta.family.as_deref().unwrap_or("surface"),
        fundamental.map(|i| (i + 1).to_string()).join(",")
    );
    finish_surface(target, image.poly().clone(), points, provenance, unchecked)
}
