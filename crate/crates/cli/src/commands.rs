//! One function per subcommand; each returns a serialisable document.

use std::collections::BTreeMap;

use serde::Serialize;

use triplepoint::algebra::{format_poly, parse_poly, AlgebraError, Field, MultiPoly};
use triplepoint::bounds::{bounds_row, brieskorn_spectrum, BoundsError, BoundsRow};
use triplepoint::constructions::{
    dianode_surface, forms_with_multiplicity, reciprocal_transform, steiner_curve, ConstructionError,
    MultiplicityAssignment,
};
use triplepoint::families::{construct as build, FamilyError, FamilyId, FamilySpec};
use triplepoint::format::{points_from_json, surface_from_json, FormatError, SurfaceFile, SCHEMA_VERSION};
use triplepoint::invariants::{resolved_invariants, sextic_classify, InvariantError, InvariantTable, SexticClass};
use triplepoint::singular::{
    certify_ordinary_triple_point, certify_surface, equisingular_tangent_dimension, multiplicity,
    AnalysisError, CertificationReport, CertifyOptions, ProjPoint, Surface, SurfaceMeta,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Input(_) => "input",
            CliError::Format(_) => "format",
            CliError::Algebra(_) => "algebra",
            CliError::Analysis(_) => "analysis",
            CliError::Bounds(_) => "bounds",
            CliError::Invariant(_) => "invariants",
            CliError::Construction(_) => "construction",
            CliError::Family(_) => "family",
        }
    }
}

/// Adds `schema_version` next to the fields of `T`.
#[derive(Serialize)]
pub struct Versioned<T: Serialize> {
    #[serde(flatten)]
    body: T,
    schema_version: u32,
}

fn versioned<T: Serialize>(body: T) -> Versioned<T> {
    Versioned {
        body,
        schema_version: SCHEMA_VERSION,
    }
}

pub fn bounds_single(d: u32) -> Result<Versioned<BoundsRow>, CliError> {
    Ok(versioned(bounds_row(d)?))
}

#[derive(Serialize)]
pub struct BoundsTable {
    rows: Vec<BoundsRow>,
    combined: Vec<u64>,
}

fn parse_range(text: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Input(format!("expected a degree range like 3..12, got `{text}`"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn bounds_table(range: &str) -> Result<Versioned<BoundsTable>, CliError> {
    let (a, b) = parse_range(range)?;
    let rows = (a..=b).map(bounds_row).collect::<Result<Vec<_>, _>>()?;
    let combined = rows.iter().map(|r| r.combined).collect();
    Ok(versioned(BoundsTable { rows, combined }))
}

#[derive(Serialize)]
pub struct SpectrumEntry {
    value: String,
    multiplicity: u64,
}

#[derive(Serialize)]
pub struct SpectrumDoc {
    exponents: Vec<u32>,
    milnor_number: u64,
    spectrum: Vec<SpectrumEntry>,
    text: String,
}

pub fn spectrum(exponents: &[u32]) -> Result<Versioned<SpectrumDoc>, CliError> {
    let sp = brieskorn_spectrum(exponents)?;
    Ok(versioned(SpectrumDoc {
        exponents: exponents.to_vec(),
        milnor_number: sp.total(),
        spectrum: sp
            .entries()
            .iter()
            .map(|(v, m)| SpectrumEntry {
                value: v.to_string(),
                multiplicity: *m,
            })
            .collect(),
        text: sp.to_string(),
    }))
}

#[derive(Serialize)]
pub struct InvariantsDoc {
    #[serde(flatten)]
    table: InvariantTable,
    noether: bool,
}

pub fn invariants(d: u32, nu: u32, alpha: u32) -> Result<Versioned<InvariantsDoc>, CliError> {
    let table = resolved_invariants(d, nu, alpha)?;
    Ok(versioned(InvariantsDoc {
        noether: table.satisfies_noether(),
        table,
    }))
}

pub fn classify_sextic(
    nu: u32,
    p_g: i64,
    q: i64,
    exc: Option<&[u32]>,
) -> Result<Versioned<SexticClass>, CliError> {
    Ok(versioned(*sextic_classify(nu, p_g, q, exc)?))
}

fn parse_params(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for pair in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("parameter `{pair}` is not name=value")))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(CliError::Input(format!("parameter `{}` given twice", k.trim())));
        }
    }
    Ok(out)
}

pub fn construct(
    family: &str,
    params: &str,
    field: Option<&str>,
    unchecked: bool,
) -> Result<SurfaceFile, CliError> {
    let id: FamilyId = family.parse()?;
    let field = match field {
        Some(tag) => Field::parse_tag(tag)?,
        None => id.default_field(),
    };
    let spec = FamilySpec {
        id,
        params: parse_params(params)?,
        field,
    };
    Ok(SurfaceFile::from_surface(&build(&spec, unchecked)?.surface))
}

pub fn certify(
    text: &str,
    hilbert: bool,
    extension: u32,
    k_max: Option<u32>,
) -> Result<CertificationReport, CliError> {
    let x = surface_from_json(text)?;
    let options = CertifyOptions {
        extension,
        hilbert,
        k_max,
    };
    Ok(certify_surface(&x, &options)?)
}

/// Image under the reciprocal transformation. Declared points off the
/// coordinate planes are carried along, and coordinate vertices that are
/// triple points of the image are declared too.
pub fn cremona(text: &str) -> Result<SurfaceFile, CliError> {
    let x = surface_from_json(text)?;
    let (image, mults) = reciprocal_transform(&x)?;
    let field = image.field();
    let mut points = Vec::new();
    for i in 0..4 {
        let mut c = [0; 4];
        c[i] = 1;
        let v = ProjPoint::from_ints(field, c)?;
        if multiplicity(&image, &v) == 3 {
            points.push(v);
        }
    }
    for p in x.points() {
        if p.coords().iter().any(|c| p.field().is_zero(c)) {
            continue;
        }
        let inv = p.coords().iter().map(|c| p.field().inv(c)).collect::<Result<Vec<_>, _>>()?;
        points.push(ProjPoint::new(p.field(), inv.try_into().expect("four"))?);
    }
    let mut params = BTreeMap::new();
    params.insert(
        "vertex_multiplicities".to_string(),
        mults.map(|m| m.to_string()).join(","),
    );
    if let Some(f) = &x.meta.family {
        params.insert("reciprocal_of".to_string(), f.clone());
    }
    let out = Surface::new(image.poly().clone())?.with_meta(SurfaceMeta {
        family: None,
        params,
        points,
        exc_degrees: None,
    });
    Ok(SurfaceFile::from_surface(&out))
}

#[derive(Serialize)]
pub struct TangentDoc {
    degree: u32,
    points: usize,
    dimension: usize,
}

pub fn tangent_dim(text: &str) -> Result<Versioned<TangentDoc>, CliError> {
    let x = surface_from_json(text)?;
    let dimension = equisingular_tangent_dimension(&x, x.points())?;
    Ok(versioned(TangentDoc {
        degree: x.degree(),
        points: x.points().len(),
        dimension,
    }))
}

fn parse_polys(field: &str, lines: &[String], expected: usize, what: &str) -> Result<Vec<MultiPoly>, CliError> {
    if lines.len() != expected {
        return Err(CliError::Input(format!(
            "{what} needs {expected} polynomials, got {}",
            lines.len()
        )));
    }
    let field = Field::parse_tag(field)?;
    Ok(lines
        .iter()
        .map(|l| parse_poly(l, field))
        .collect::<Result<_, _>>()?)
}

#[derive(Serialize)]
pub struct PointCheck {
    coords: [String; 4],
    ordinary_triple_point: bool,
    detail: String,
}

#[derive(Serialize)]
pub struct DianodeDoc {
    polynomial: String,
    degree: Option<u32>,
    points: Vec<PointCheck>,
}

pub fn dianode(field: &str, lines: &[String], points: Option<&str>) -> Result<Versioned<DianodeDoc>, CliError> {
    let p = parse_polys(field, lines, 4, "dianode (g, q1, q2, q3)")?;
    let delta = dianode_surface(&p[0], &p[1], &p[2], &p[3])?;
    let mut checks = Vec::new();
    if let Some(text) = points {
        let x = Surface::new(delta.clone())?;
        for pt in points_from_json(delta.field(), text)? {
            let (ok, detail) = match certify_ordinary_triple_point(&x, &pt) {
                Ok(c) => (true, format!("tangent cone {}", c.tangent_cone)),
                Err(r) => (false, r.to_string()),
            };
            checks.push(PointCheck {
                coords: pt.to_strings(),
                ordinary_triple_point: ok,
                detail,
            });
        }
    }
    Ok(versioned(DianodeDoc {
        degree: delta.homogeneous_degree(),
        polynomial: format_poly(&delta),
        points: checks,
    }))
}

#[derive(Serialize)]
pub struct SteinerDoc {
    /// Column triples of the 3x4 matrix of partials, one per minor.
    columns: [&'static str; 4],
    minors: Vec<String>,
}

pub fn steiner(field: &str, lines: &[String]) -> Result<Versioned<SteinerDoc>, CliError> {
    let q = parse_polys(field, lines, 3, "steiner (q1, q2, q3)")?;
    let minors = steiner_curve(&q[0], &q[1], &q[2])?;
    Ok(versioned(SteinerDoc {
        columns: ["xyz", "xyw", "xzw", "yzw"],
        minors: minors.iter().map(format_poly).collect(),
    }))
}

#[derive(Serialize)]
pub struct LinearSystemDoc {
    degree: u32,
    multiplicity: u32,
    points: usize,
    conditions: usize,
    dimension: usize,
    basis: Vec<String>,
}

pub fn linear_system(
    field: &str,
    degree: u32,
    multiplicity: u32,
    points: &str,
) -> Result<Versioned<LinearSystemDoc>, CliError> {
    let field = Field::parse_tag(field)?;
    let pts = points_from_json(field, points)?;
    let a = MultiplicityAssignment::uniform(&pts, multiplicity)?;
    let basis = forms_with_multiplicity(field, degree, &a)?;
    Ok(versioned(LinearSystemDoc {
        degree,
        multiplicity,
        points: pts.len(),
        conditions: a.condition_count(),
        dimension: basis.len(),
        basis: basis.iter().map(format_poly).collect(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..12").unwrap(), (3, 12));
        assert_eq!(parse_range("5..=5").unwrap(), (5, 5));
        assert!(parse_range("12..3").is_err());
        assert!(parse_range("7").is_err());
    }

    #[test]
    fn params() {
        let p = parse_params("mu=1, nu=2").unwrap();
        assert_eq!(p["nu"], "2");
        assert!(parse_params("mu").is_err());
        assert!(parse_params("mu=1,mu=2").is_err());
        assert!(parse_params("").unwrap().is_empty());
    }
}
