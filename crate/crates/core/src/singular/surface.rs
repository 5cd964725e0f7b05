use std::collections::BTreeMap;

use crate::algebra::{Field, MultiPoly};

use super::{AnalysisError, ProjPoint};

/// Descriptive data carried alongside a surface equation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurfaceMeta {
    pub family: Option<String>,
    pub params: BTreeMap<String, String>,
    /// Points claimed to be ordinary triple points.
    pub points: Vec<ProjPoint>,
    /// Degrees of the plane (-1)-curves, when known.
    pub exc_degrees: Option<Vec<u32>>,
}

/// A surface in P^3 given by a nonzero homogeneous form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surface {
    poly: MultiPoly,
    degree: u32,
    pub meta: SurfaceMeta,
}

impl Surface {
    pub fn new(poly: MultiPoly) -> Result<Surface, AnalysisError> {
        if poly.is_zero() {
            return Err(AnalysisError::ZeroPolynomial);
        }
        let degree = poly.homogeneous_degree().ok_or(AnalysisError::NotHomogeneous)?;
        if degree == 0 {
            return Err(AnalysisError::NotHomogeneous);
        }
        Ok(Surface {
            poly,
            degree,
            meta: SurfaceMeta::default(),
        })
    }

    pub fn with_meta(mut self, meta: SurfaceMeta) -> Surface {
        self.meta = meta;
        self
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.poly.field()
    }

    /// Declared triple points.
    pub fn points(&self) -> &[ProjPoint] {
        &self.meta.points
    }
}
