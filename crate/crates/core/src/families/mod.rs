//! Explicit surfaces: quintics with imposed triple points, the nine-point
//! sextic families, the ten-point sextic over GF(31) and the S4-symmetric
//! septics.

mod elliptic;
mod k3;
mod quintic;
mod reciprocal;
mod septic;
mod ten;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

pub use elliptic::{elliptic_parts, sextic_elliptic_222, sextic_elliptic_224, symmetric_elliptic_parts};
pub use k3::{sextic_k3_228, sextic_k3_246, sextic_k3_444, K3Params};
pub use quintic::quintic_with_triple_points;
pub use reciprocal::reciprocal_family;
pub use septic::{septic_determinant_factorization, septic_s4, septic_s4_basis, FactorCheck, SepticDeterminantReport};
pub use ten::{nine_point_pencil, sextic_ten_gf31, ten_point_conditions};

use crate::algebra::{AlgebraError, Field, Matrix, MultiPoly, Scalar};
use crate::constructions::ConstructionError;
use crate::singular::{
    certify_ordinary_triple_point, span_rank, AnalysisError, ProjPoint, Rejection, Surface,
    SurfaceMeta,
};

#[derive(Debug, Clone, thiserror::Error)]
pub enum FamilyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown parameter `{name}` for family {family}")]
    UnknownParameter { family: FamilyId, name: String },
    #[error("bad value `{value}` for parameter `{name}`: {reason}")]
    BadParameter { name: String, value: String, reason: String },
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("{family} requires {required}, got {field}")]
    WrongField { family: FamilyId, required: String, field: Field },
    #[error("expected a {expected}-dimensional solution space, found {found}")]
    KernelDimension { expected: usize, found: usize },
    #[error("declared point {point} failed certification: {rejection}")]
    NotCertified { point: String, rejection: Rejection },
    #[error("fundamental points: {0}")]
    BadFundamental(String),
    #[error("factor {factor} divides {found} times, expected {expected}")]
    FactorMismatch { factor: String, expected: u32, found: u32 },
}

/// Family identifiers accepted by the constructors and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    QuinticNu,
    K3_444,
    K3_246,
    K3_228,
    Ell222,
    Ell224,
    SexticTenGf31,
    SepticS4,
}

impl FamilyId {
    pub const ALL: [FamilyId; 8] = [
        FamilyId::QuinticNu,
        FamilyId::K3_444,
        FamilyId::K3_246,
        FamilyId::K3_228,
        FamilyId::Ell222,
        FamilyId::Ell224,
        FamilyId::SexticTenGf31,
        FamilyId::SepticS4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::QuinticNu => "quintic-nu",
            FamilyId::K3_444 => "k3-444",
            FamilyId::K3_246 => "k3-246",
            FamilyId::K3_228 => "k3-228",
            FamilyId::Ell222 => "ell-222",
            FamilyId::Ell224 => "ell-224",
            FamilyId::SexticTenGf31 => "sextic-ten-gf31",
            FamilyId::SepticS4 => "septic-s4",
        }
    }

    /// Field used when none is requested.
    pub fn default_field(self) -> Field {
        match self {
            FamilyId::QuinticNu
            | FamilyId::K3_228
            | FamilyId::Ell222
            | FamilyId::Ell224
            | FamilyId::SexticTenGf31 => Field::Prime(31),
            FamilyId::K3_444 | FamilyId::K3_246 => Field::Prime(29),
            FamilyId::SepticS4 => Field::Rationals,
        }
    }

    /// Exceptional curve degrees of the family, when it has nine triple points.
    pub fn exc_degrees(self) -> Option<Vec<u32>> {
        match self {
            FamilyId::K3_444 => Some(vec![4, 4, 4]),
            FamilyId::K3_246 => Some(vec![2, 4, 6]),
            FamilyId::K3_228 => Some(vec![2, 2, 8]),
            FamilyId::Ell222 => Some(vec![2, 2, 2]),
            FamilyId::Ell224 => Some(vec![2, 2, 4]),
            _ => None,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

/// A family id with textual parameters, interpreted over `field`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub id: FamilyId,
    pub params: BTreeMap<String, String>,
    pub field: Field,
}

impl FamilySpec {
    pub fn new(id: FamilyId, field: Field) -> FamilySpec {
        FamilySpec {
            id,
            params: BTreeMap::new(),
            field,
        }
    }

    pub fn with(mut self, name: &str, value: &str) -> FamilySpec {
        self.params.insert(name.to_string(), value.to_string());
        self
    }
}

/// Parameter lookup that remembers which names were consumed.
pub(crate) struct Params<'a> {
    spec: &'a FamilySpec,
    used: BTreeSet<&'static str>,
}

impl<'a> Params<'a> {
    pub fn new(spec: &'a FamilySpec) -> Self {
        Params {
            spec,
            used: BTreeSet::new(),
        }
    }

    fn raw(&mut self, name: &'static str) -> Option<&'a str> {
        self.used.insert(name);
        self.spec.params.get(name).map(String::as_str)
    }

    fn bad(name: &str, value: &str, reason: impl fmt::Display) -> FamilyError {
        FamilyError::BadParameter {
            name: name.to_string(),
            value: value.to_string(),
            reason: reason.to_string(),
        }
    }

    pub fn scalar(&mut self, name: &'static str, default: i64) -> Result<Scalar, FamilyError> {
        let field = self.spec.field;
        match self.raw(name) {
            None => Ok(field.from_i64(default)),
            Some(v) => field.parse_scalar(v).map_err(|e| Self::bad(name, v, e)),
        }
    }

    pub fn integer(&mut self, name: &'static str, default: u64) -> Result<u64, FamilyError> {
        match self.raw(name) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|e| Self::bad(name, v, e)),
        }
    }

    /// Colon-separated 1-based indices, e.g. `1:2:4:9`.
    pub fn indices(&mut self, name: &'static str, default: [usize; 4]) -> Result<[usize; 4], FamilyError> {
        let Some(v) = self.raw(name) else { return Ok(default) };
        let parsed: Vec<usize> = v
            .split(':')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| Self::bad(name, v, e))?;
        let arr: [usize; 4] = parsed
            .try_into()
            .map_err(|_| Self::bad(name, v, "expected four indices"))?;
        if arr.contains(&0) {
            return Err(Self::bad(name, v, "indices are 1-based"));
        }
        Ok(arr.map(|i| i - 1))
    }

    pub fn finish(self) -> Result<(), FamilyError> {
        match self.spec.params.keys().find(|k| !self.used.contains(k.as_str())) {
            Some(k) => Err(FamilyError::UnknownParameter {
                family: self.spec.id,
                name: k.clone(),
            }),
            None => Ok(()),
        }
    }
}

/// A family member with its declared triple points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructedSurface {
    pub surface: Surface,
    pub provenance: String,
    /// True when the declared points were not certified at construction.
    pub unchecked: bool,
}

impl ConstructedSurface {
    pub fn points(&self) -> &[ProjPoint] {
        self.surface.points()
    }

    pub fn exc_degrees(&self) -> Option<&[u32]> {
        self.surface.meta.exc_degrees.as_deref()
    }
}

/// lambda, mu, nu, b1..b6, alpha, beta, gamma of the symmetric example
/// xyz*g + q^3.
const ELL222_DEFAULTS: [i64; 12] = [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1];

/// A (2,2,2) member over GF(31) whose on-line points avoid the faces of the
/// tetrahedron P6, P7, P8, P9; the symmetric example does not.
const ELL224_DEFAULTS: [i64; 12] = [29, 29, 8, 1, 10, 3, 16, 8, 26, 18, 10, 4];

/// Builds the family member described by `spec`; declared points are
/// certified unless `unchecked` is set.
pub fn construct(spec: &FamilySpec, unchecked: bool) -> Result<ConstructedSurface, FamilyError> {
    let mut p = Params::new(spec);
    let f = spec.field;
    let built = match spec.id {
        FamilyId::QuinticNu => {
            let nu = p.integer("nu", 5)? as usize;
            let seed = p.integer("seed", crate::rng::DEFAULT_SEED)?;
            if nu > 5 {
                return Err(Params::bad("nu", &nu.to_string(), "at most 5"));
            }
            let points = crate::rng::Stream::new(seed).general_points(f, nu);
            quintic_with_triple_points(&points, seed, unchecked)?
        }
        FamilyId::K3_444 | FamilyId::K3_246 => {
            let k = K3Params::read(&mut p)?;
            let base = sextic_k3_444(f, &k, unchecked)?;
            if spec.id == FamilyId::K3_444 {
                base
            } else {
                let fund = p.indices("fundamental", [0, 1, 3, 8])?;
                sextic_k3_246(&base, fund, unchecked)?
            }
        }
        FamilyId::K3_228 => {
            let lambda = p.scalar("lambda", 3)?;
            let alpha = p.scalar("alpha", 1)?;
            let beta = p.scalar("beta", 1)?;
            sextic_k3_228(f, &lambda, &alpha, &beta, unchecked)?
        }
        FamilyId::Ell222 | FamilyId::Ell224 => {
            let d = if spec.id == FamilyId::Ell222 { ELL222_DEFAULTS } else { ELL224_DEFAULTS };
            let lmn = [p.scalar("lambda", d[0])?, p.scalar("mu", d[1])?, p.scalar("nu", d[2])?];
            let b = [
                p.scalar("b1", d[3])?,
                p.scalar("b2", d[4])?,
                p.scalar("b3", d[5])?,
                p.scalar("b4", d[6])?,
                p.scalar("b5", d[7])?,
                p.scalar("b6", d[8])?,
            ];
            let coeffs = [p.scalar("alpha", d[9])?, p.scalar("beta", d[10])?, p.scalar("gamma", d[11])?];
            let base = sextic_elliptic_222(f, &lmn, &b, &coeffs, unchecked)?;
            if spec.id == FamilyId::Ell222 {
                base
            } else {
                let fund = p.indices("fundamental", [5, 6, 7, 8])?;
                sextic_elliptic_224(&base, fund, unchecked)?
            }
        }
        FamilyId::SexticTenGf31 => {
            if f != Field::Prime(31) {
                return Err(FamilyError::WrongField {
                    family: spec.id,
                    required: "GF(31)".into(),
                    field: f,
                });
            }
            sextic_ten_gf31()?
        }
        FamilyId::SepticS4 => {
            let mu = p.scalar("mu", 1)?;
            let nu = p.scalar("nu", 2)?;
            septic_s4(f, &mu, &nu, unchecked)?
        }
    };
    p.finish()?;
    let mut built = built;
    built.surface.meta.params = spec.params.clone();
    Ok(built)
}

/// Assembles a constructed surface and certifies its declared points.
pub(crate) fn finish_surface(
    id: FamilyId,
    poly: MultiPoly,
    points: Vec<ProjPoint>,
    provenance: String,
    unchecked: bool,
) -> Result<ConstructedSurface, FamilyError> {
    let surface = Surface::new(poly)?.with_meta(SurfaceMeta {
        family: Some(id.name().to_string()),
        params: BTreeMap::new(),
        points,
        exc_degrees: id.exc_degrees(),
    });
    if !unchecked {
        certify_all(&surface, surface.points())?;
    }
    Ok(ConstructedSurface {
        surface,
        provenance,
        unchecked,
    })
}

pub fn certify_all(x: &Surface, points: &[ProjPoint]) -> Result<(), FamilyError> {
    for p in points {
        certify_ordinary_triple_point(x, p).map_err(|rejection| FamilyError::NotCertified {
            point: p.to_string(),
            rejection,
        })?;
    }
    Ok(())
}

/// Five-point subsets lying in a plane, with the plane's linear form.
pub fn detect_minus_one_conics(points: &[ProjPoint]) -> Vec<([usize; 5], MultiPoly)> {
    let n = points.len();
    let mut out = Vec::new();
    if n < 5 {
        return out;
    }
    let field = points[0].field();
    let mut idx = [0usize; 5];
    fn rec(
        start: usize,
        depth: usize,
        idx: &mut [usize; 5],
        points: &[ProjPoint],
        field: Field,
        out: &mut Vec<([usize; 5], MultiPoly)>,
    ) {
        if depth == 5 {
            let chosen: Vec<&ProjPoint> = idx.iter().map(|&i| &points[i]).collect();
            if span_rank(&chosen) == 3 {
                let rows = chosen.iter().map(|p| p.coords().to_vec()).collect();
                let kernel = Matrix::from_rows(field, rows).expect("5x4").kernel_basis();
                let plane = MultiPoly::from_terms(
                    field,
                    kernel[0]
                        .iter()
                        .enumerate()
                        .map(|(i, c)| (c.clone(), crate::algebra::Monomial::var(i))),
                );
                out.push((*idx, plane));
            }
            return;
        }
        for i in start..points.len() {
            idx[depth] = i;
            rec(i + 1, depth + 1, idx, points, field, out);
        }
    }
    rec(0, 0, &mut idx, points, field, &mut out);
    out
}

/// Points of P^3 over a small finite field where all the forms vanish.
pub(crate) fn common_zeros(field: Field, forms: &[MultiPoly]) -> Result<Vec<ProjPoint>, FamilyError> {
    const LIMIT: u64 = 64;
    match field.order() {
        Some(q) if q <= LIMIT => {}
        _ => {
            return Err(FamilyError::Degenerate(format!(
                "common zeros are searched only over finite fields of order <= {LIMIT}"
            )))
        }
    }
    let elems = field.elements();
    let mut out = Vec::new();
    for lead in 0..4 {
        let free = 3 - lead;
        let total = elems.len().pow(free as u32);
        for code in 0..total {
            let mut c = code;
            let mut coords: [Scalar; 4] = std::array::from_fn(|_| field.zero());
            coords[lead] = field.one();
            for slot in coords.iter_mut().skip(lead + 1) {
                *slot = elems[c % elems.len()].clone();
                c /= elems.len();
            }
            if forms.iter().all(|g| field.is_zero(&g.evaluate(&coords))) {
                out.push(ProjPoint::new(field, coords)?);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Roots of a t^2 + b t + c in the field, when it has two distinct ones.
pub(crate) fn distinct_roots(field: Field, a: &Scalar, b: &Scalar, c: &Scalar) -> Option<[Scalar; 2]> {
    if field.characteristic() == 2 || field.is_zero(a) {
        return None;
    }
    let four = field.from_i64(4);
    let disc = field.sub(&field.mul(b, b), &field.mul(&four, &field.mul(a, c)));
    if field.is_zero(&disc) {
        return None;
    }
    let s = field.sqrt(&disc)?;
    let two_a = field.mul(&field.from_i64(2), a);
    let nb = field.neg(b);
    let r1 = field.div(&field.add(&nb, &s), &two_a).ok()?;
    let r2 = field.div(&field.sub(&nb, &s), &two_a).ok()?;
    Some([r1, r2])
}

/// Small helper for writing forms with field-element coefficients.
#[derive(Clone, Copy)]
pub(crate) struct Ring {
    pub field: Field,
}

impl Ring {
    pub fn var(&self, i: usize) -> MultiPoly {
        MultiPoly::var(self.field, i)
    }

    pub fn c(&self, s: &Scalar) -> MultiPoly {
        MultiPoly::constant(self.field, s.clone())
    }

    pub fn n(&self, k: i64) -> MultiPoly {
        MultiPoly::constant(self.field, self.field.from_i64(k))
    }

    pub fn xyzw(&self) -> [MultiPoly; 4] {
        std::array::from_fn(|i| self.var(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in FamilyId::ALL {
            assert_eq!(id.name().parse::<FamilyId>().unwrap(), id);
        }
        assert!("k3-999".parse::<FamilyId>().is_err());
    }

    #[test]
    fn unknown_parameter_rejected() {
        let spec = FamilySpec::new(FamilyId::SepticS4, Field::Rationals).with("mux", "3");
        assert!(matches!(
            construct(&spec, true),
            Err(FamilyError::UnknownParameter { .. })
        ));
    }

    #[test]
    fn generic_points_have_no_coplanar_five() {
        let pts = crate::rng::Stream::new(9).general_points(Field::Prime(31), 9);
        assert!(detect_minus_one_conics(&pts).is_empty());
    }

    #[test]
    fn roots() {
        let f = Field::Prime(31);
        let [r1, r2] = distinct_roots(f, &f.from_i64(2), &f.from_i64(-11), &f.from_i64(9)).unwrap();
        let mut r = [r1, r2];
        r.sort();
        assert_eq!(r, [Scalar::Residue(1), Scalar::Residue(20)]);
        // x^2 + 1 has no roots since 31 = 3 mod 4
        assert!(distinct_roots(f, &f.one(), &f.zero(), &f.one()).is_none());
    }
}
