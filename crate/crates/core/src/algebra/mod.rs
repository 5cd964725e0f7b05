//! Exact fields, sparse polynomials in x, y, z, w, and exact linear algebra.

#[macro_use]
pub(crate) mod arith;
pub mod field;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod text;

pub use field::{Field, FieldElement, Scalar};
pub use matrix::{poly_determinant, Matrix};
pub use monomial::{monomials_of_degree, Monomial, NVARS};
pub use poly::MultiPoly;
pub use text::{format_poly, parse_poly};

#[derive(Debug, Clone, thiserror::Error)]
pub enum AlgebraError {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound 2^31")]
    PrimeTooLarge(u64),
    #[error("{n} is not a quadratic nonresidue mod {p}")]
    NotNonresidue { p: u64, n: u64 },
    #[error("quadratic extension over characteristic {0} is not supported")]
    UnsupportedExtension(u64),
    #[error("unknown field tag {0:?} (expected QQ, GF:p or GF:p:2)")]
    BadFieldTag(String),
    #[error("value {value} is not an element of {field}")]
    NotInField { field: Field, value: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact; remainder {remainder}")]
    InexactDivision { remainder: Box<MultiPoly> },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}
