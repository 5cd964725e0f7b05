//! Local analysis of surfaces at points: jets, multiplicities, ordinary
//! triple point certification, singular point enumeration, the Jacobian
//! Hilbert function and equisingular tangent dimensions.

pub mod certify;
pub mod enumerate;
pub mod hilbert;
pub mod jet;
pub mod point;
pub mod report;
pub mod surface;
pub mod tangent;

pub use certify::{certify_ordinary_triple_point, tangent_cone_rank, Rejection, TriplePointCertificate};
pub use enumerate::{enumerate_singular_points, is_singular_point};
pub use hilbert::{jacobian_hilbert, singular_scheme_degree, SchemeDegree};
pub use jet::{local_jet, multiplicity, poly_multiplicity, LocalJet};
pub use point::{no_four_coplanar, no_three_collinear, span_rank, ProjPoint};
pub use report::{certify_surface, CertificationReport, CertifyOptions, Verdict};
pub use surface::{Surface, SurfaceMeta};
pub use tangent::equisingular_tangent_dimension;

use crate::algebra::{AlgebraError, Field};

#[derive(Debug, Clone, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("the zero polynomial does not define a surface")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous of positive degree")]
    NotHomogeneous,
    #[error("(0:0:0:0) is not a projective point")]
    ZeroPoint,
    #[error("bad point: {0}")]
    BadPoint(String),
    #[error("coordinate {value} does not lie in {field}")]
    PointOutsideField { field: Field, value: String },
    #[error("enumeration needs a finite field, got {0}")]
    NotFinite(Field),
    #[error("extension degree {0} is not supported (use 1 or 2)")]
    UnsupportedExtension(u32),
    #[error("field of order {order} is too large to enumerate")]
    EnumerationTooLarge { order: u64 },
    #[error("{point} is not an ordinary triple point: {rejection}")]
    NotTriplePoint { point: String, rejection: Rejection },
    #[error("Hilbert function did not stabilise; last values {tail:?}")]
    Inconclusive { tail: Vec<u64> },
}
