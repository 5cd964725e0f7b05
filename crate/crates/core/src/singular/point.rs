use std::fmt;

use crate::algebra::{Field, Matrix, Scalar};

use super::AnalysisError;

/// A point of P^3 in canonical form: the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    field: Field,
    coords: [Scalar; 4],
}

impl ProjPoint {
    /// Normalises `coords`; coordinates from a subfield are embedded into `field`.
    pub fn new(field: Field, coords: [Scalar; 4]) -> Result<ProjPoint, AnalysisError> {
        let coords = coords.map(|c| field.embed(&c));
        if let Some(bad) = coords.iter().find(|c| !field.contains(c)) {
            return Err(AnalysisError::PointOutsideField {
                field,
                value: format!("{bad:?}"),
            });
        }
        let lead = coords
            .iter()
            .find(|c| !field.is_zero(c))
            .ok_or(AnalysisError::ZeroPoint)?;
        let inv = field.inv(lead)?;
        Ok(ProjPoint {
            field,
            coords: coords.map(|c| field.mul(&c, &inv)),
        })
    }

    pub fn from_ints(field: Field, coords: [i64; 4]) -> Result<ProjPoint, AnalysisError> {
        ProjPoint::new(field, coords.map(|c| field.from_i64(c)))
    }

    pub fn parse(field: Field, coords: &[String]) -> Result<ProjPoint, AnalysisError> {
        if coords.len() != 4 {
            return Err(AnalysisError::BadPoint(format!(
                "expected 4 coordinates, got {}",
                coords.len()
            )));
        }
        let mut out = Vec::with_capacity(4);
        for c in coords {
            out.push(field.parse_scalar(c)?);
        }
        ProjPoint::new(field, out.try_into().expect("length checked"))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coords(&self) -> &[Scalar; 4] {
        &self.coords
    }

    /// Index of the coordinate normalised to 1.
    pub fn chart(&self) -> usize {
        self.coords
            .iter()
            .position(|c| !self.field.is_zero(c))
            .expect("canonical point has a nonzero coordinate")
    }

    /// Coordinates as JSON-ready strings.
    pub fn to_strings(&self) -> [String; 4] {
        std::array::from_fn(|i| self.field.format(&self.coords[i]))
    }

    /// The same point over an extension field.
    pub fn embed(&self, field: Field) -> Result<ProjPoint, AnalysisError> {
        if !self.field.embeds_into(&field) {
            return Err(AnalysisError::PointOutsideField {
                field,
                value: self.to_string(),
            });
        }
        ProjPoint::new(field, self.coords.clone())
    }

    /// Image under the linear map `m` acting on column vectors.
    pub fn transform(&self, m: &Matrix) -> Result<ProjPoint, AnalysisError> {
        let v = m.mul_vec(&self.coords)?;
        ProjPoint::new(m.field(), v.try_into().expect("4x4 matrix"))
    }

    /// Whether all coordinates are nonzero.
    pub fn off_coordinate_planes(&self) -> bool {
        self.coords.iter().all(|c| !self.field.is_zero(c))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(":"))
    }
}

/// Rank of the matrix whose rows are the given points' coordinates.
pub fn span_rank(points: &[&ProjPoint]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let rows = points.iter().map(|p| p.coords.to_vec()).collect();
    Matrix::from_rows(first.field, rows)
        .expect("points share a field")
        .rank()
}

/// True when no three points are collinear.
pub fn no_three_collinear(points: &[ProjPoint]) -> bool {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if span_rank(&[&points[i], &points[j], &points[k]]) < 3 {
                    return false;
                }
            }
        }
    }
    true
}

/// True when no four points are coplanar.
pub fn no_four_coplanar(points: &[ProjPoint]) -> bool {
    let n = points.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if span_rank(&[&points[a], &points[b], &points[c], &points[d]]) < 4 {
                        return false;
                    }
                }
            }
        }
    }
    true
}
