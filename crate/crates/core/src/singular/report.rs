use serde::Serialize;

use super::certify::{certify_ordinary_triple_point, TriplePointCertificate};
use super::enumerate::enumerate_singular_points;
use super::hilbert::{singular_scheme_degree_with, SchemeDegree};
use super::{AnalysisError, ProjPoint, Surface};

use crate::format::SCHEMA_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Hilbert function stabilised at exactly 8 per certified triple point.
    CertifiedExact,
    /// Points certified, singular scheme not (or not fully) accounted for.
    CertifiedRationalOnly,
    PositiveDimensionalSingularLocus,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointEntry {
    pub coords: [String; 4],
    pub multiplicity: u32,
    pub tangent_cone: String,
    pub smooth_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RejectedEntry {
    pub coords: [String; 4],
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Scope {
    pub field: String,
    /// Extension degrees swept; empty when declared points were used instead.
    pub extension_degrees: Vec<u32>,
    pub source: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificationReport {
    pub surface: String,
    pub field: String,
    pub scope: Scope,
    pub points: Vec<PointEntry>,
    pub rejected: Vec<RejectedEntry>,
    pub hilbert: Vec<u64>,
    pub scheme_degree: Option<u64>,
    pub expected_degree: u64,
    pub verdict: Verdict,
    pub schema_version: u32,
}

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    /// Extension degree for enumeration over finite fields.
    pub extension: u32,
    pub hilbert: bool,
    pub k_max: Option<u32>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            extension: 1,
            hilbert: true,
            k_max: None,
        }
    }
}

fn entry(c: &TriplePointCertificate) -> PointEntry {
    PointEntry {
        coords: c.point.to_strings(),
        multiplicity: c.multiplicity,
        tangent_cone: c.tangent_cone.to_string(),
        smooth_rank: c.smooth_rank,
    }
}

/// Certifies the singular locus of `x`.
///
/// Over finite fields the singular points are enumerated; over the
/// rationals the declared points are checked instead.
pub fn certify_surface(
    x: &Surface,
    options: &CertifyOptions,
) -> Result<CertificationReport, AnalysisError> {
    let field = x.field();
    let (candidates, scope): (Vec<ProjPoint>, Scope) = if field.is_finite() {
        let mut pts = enumerate_singular_points(x, 1)?;
        let mut degrees = vec![1];
        if options.extension == 2 {
            pts = enumerate_singular_points(x, 2)?;
            degrees.push(2);
        }
        (
            pts,
            Scope {
                field: field.tag(),
                extension_degrees: degrees,
                source: "enumeration",
            },
        )
    } else {
        (
            x.points().to_vec(),
            Scope {
                field: field.tag(),
                extension_degrees: Vec::new(),
                source: "declared",
            },
        )
    };
    let mut points = Vec::new();
    let mut rejected = Vec::new();
    for p in &candidates {
        match certify_ordinary_triple_point(x, p) {
            Ok(c) => points.push(entry(&c)),
            Err(r) => rejected.push(RejectedEntry {
                coords: p.to_strings(),
                reason: r.to_string(),
            }),
        }
    }
    let expected = 8 * points.len() as u64;
    let (hilbert, scheme) = if options.hilbert {
        match singular_scheme_degree_with(x, options.k_max) {
            Ok((s, h)) => (h, Some(s)),
            Err(AnalysisError::Inconclusive { .. }) => (Vec::new(), None),
            Err(e) => return Err(e),
        }
    } else {
        (Vec::new(), None)
    };
    let verdict = if !rejected.is_empty() {
        Verdict::Failed
    } else {
        match &scheme {
            Some(SchemeDegree::PositiveDimensional) => Verdict::PositiveDimensionalSingularLocus,
            Some(SchemeDegree::Finite(n)) if *n == expected => Verdict::CertifiedExact,
            Some(SchemeDegree::Finite(n)) if *n < expected => Verdict::Failed,
            _ if options.hilbert && scheme.is_none() => Verdict::Failed,
            _ => Verdict::CertifiedRationalOnly,
        }
    };
    Ok(CertificationReport {
        surface: x
            .meta
            .family
            .clone()
            .unwrap_or_else(|| x.poly().to_string()),
        field: field.tag(),
        scope,
        points,
        rejected,
        scheme_degree: match scheme {
            Some(SchemeDegree::Finite(n)) => Some(n),
            _ => None,
        },
        hilbert,
        expected_degree: expected,
        verdict,
        schema_version: SCHEMA_VERSION,
    })
}
