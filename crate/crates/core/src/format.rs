//! JSON file formats: surface.json and points.json.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{format_poly, parse_poly, AlgebraError, Field};
use crate::singular::{AnalysisError, ProjPoint, Surface, SurfaceMeta};

/// Version of every JSON document written by this crate.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("unsupported schema_version {found}, expected {SCHEMA_VERSION}")]
    SchemaVersion { found: u32 },
    #[error("declared degree {declared} but the polynomial has degree {actual}")]
    DegreeMismatch { declared: u32, actual: u32 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    #[serde(default)]
    pub exc_degrees: Option<Vec<u32>>,
}

/// On-disk form of a [`Surface`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub field: String,
    pub degree: u32,
    pub polynomial: String,
    #[serde(default)]
    pub points: Vec<[String; 4]>,
    #[serde(default)]
    pub metadata: Metadata,
    #[serde(default = "current_version")]
    pub schema_version: u32,
}

fn current_version() -> u32 {
    SCHEMA_VERSION
}

impl SurfaceFile {
    pub fn from_surface(x: &Surface) -> SurfaceFile {
        SurfaceFile {
            field: x.field().tag(),
            degree: x.degree(),
            polynomial: format_poly(x.poly()),
            points: x.points().iter().map(ProjPoint::to_strings).collect(),
            metadata: Metadata {
                family: x.meta.family.clone(),
                params: x.meta.params.clone(),
                exc_degrees: x.meta.exc_degrees.clone(),
            },
            schema_version: SCHEMA_VERSION,
        }
    }

    pub fn to_surface(&self) -> Result<Surface, FormatError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(FormatError::SchemaVersion {
                found: self.schema_version,
            });
        }
        let field = Field::parse_tag(&self.field)?;
        let x = Surface::new(parse_poly(&self.polynomial, field)?)?;
        if x.degree() != self.degree {
            return Err(FormatError::DegreeMismatch {
                declared: self.degree,
                actual: x.degree(),
            });
        }
        let points = parse_points(field, &self.points)?;
        Ok(x.with_meta(SurfaceMeta {
            family: self.metadata.family.clone(),
            params: self.metadata.params.clone(),
            points,
            exc_degrees: self.metadata.exc_degrees.clone(),
        }))
    }
}

pub fn surface_to_json(x: &Surface) -> String {
    serde_json::to_string_pretty(&SurfaceFile::from_surface(x)).expect("plain data")
}

pub fn surface_from_json(text: &str) -> Result<Surface, FormatError> {
    serde_json::from_str::<SurfaceFile>(text)?.to_surface()
}

/// points.json is either a bare list of 4-tuples or `{"points": [...]}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum PointsDoc {
    Bare(Vec<[String; 4]>),
    Wrapped {
        points: Vec<[String; 4]>,
        #[serde(default = "current_version")]
        schema_version: u32,
    },
}

pub fn points_from_json(field: Field, text: &str) -> Result<Vec<ProjPoint>, FormatError> {
    let raw = match serde_json::from_str::<PointsDoc>(text)? {
        PointsDoc::Bare(p) => p,
        PointsDoc::Wrapped { points, schema_version } => {
            if schema_version != SCHEMA_VERSION {
                return Err(FormatError::SchemaVersion { found: schema_version });
            }
            points
        }
    };
    parse_points(field, &raw)
}

fn parse_points(field: Field, raw: &[[String; 4]]) -> Result<Vec<ProjPoint>, FormatError> {
    Ok(raw
        .iter()
        .map(|c| ProjPoint::parse(field, c))
        .collect::<Result<_, _>>()?)
}
