//! Linear systems with assigned base points, the reciprocal transformation,
//! the dianode determinant, the Steiner curve of a net and mixed-power
//! systems of quadrics.

use crate::algebra::{
    monomials_of_degree, poly_determinant, AlgebraError, Field, Matrix, Monomial, MultiPoly,
};
use crate::singular::jet::{common_field, poly_jet};
use crate::singular::{AnalysisError, ProjPoint, Surface};

#[derive(Debug, Clone, thiserror::Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("point {0} is assigned twice")]
    DuplicatePoint(String),
    #[error("multiplicities must be at least 1")]
    ZeroMultiplicity,
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("the coordinate plane x{0} = 0 is a component")]
    CoordinatePlaneComponent(usize),
    #[error("{0}")]
    DegreeMismatch(String),
    #[error("the quadrics are linearly dependent")]
    DependentQuadrics,
    #[error("no polynomials given")]
    Empty,
}

/// Points with prescribed multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityAssignment {
    entries: Vec<(ProjPoint, u32)>,
    field: Option<Field>,
}

impl MultiplicityAssignment {
    pub fn new(entries: Vec<(ProjPoint, u32)>) -> Result<Self, ConstructionError> {
        let mut field: Option<Field> = None;
        for (p, m) in &entries {
            if *m == 0 {
                return Err(ConstructionError::ZeroMultiplicity);
            }
            field = Some(match field {
                None => p.field(),
                Some(f) if f.embeds_into(&p.field()) => p.field(),
                Some(f) if p.field().embeds_into(&f) => f,
                Some(f) => {
                    return Err(AnalysisError::PointOutsideField {
                        field: f,
                        value: p.to_string(),
                    }
                    .into())
                }
            });
        }
        if let Some(f) = field {
            let embedded: Vec<ProjPoint> = entries
                .iter()
                .map(|(p, _)| p.embed(f))
                .collect::<Result<_, _>>()?;
            for (i, p) in embedded.iter().enumerate() {
                if embedded[..i].contains(p) {
                    return Err(ConstructionError::DuplicatePoint(p.to_string()));
                }
            }
        }
        Ok(MultiplicityAssignment { entries, field })
    }

    /// Every point with the same multiplicity.
    pub fn uniform(points: &[ProjPoint], m: u32) -> Result<Self, ConstructionError> {
        Self::new(points.iter().map(|p| (p.clone(), m)).collect())
    }

    pub fn entries(&self) -> &[(ProjPoint, u32)] {
        &self.entries
    }

    /// Number of linear conditions imposed, C(m+2, 3) per point.
    pub fn condition_count(&self) -> usize {
        self.entries
            .iter()
            .map(|(_, m)| {
                let m = *m as usize;
                m * (m + 1) * (m + 2) / 6
            })
            .sum()
    }

    fn working_field(&self, base: Field) -> Field {
        match self.field {
            Some(f) if base.embeds_into(&f) => f,
            _ => base,
        }
    }
}

/// Condition matrix: one row per jet coefficient of order below m at each
/// point, one column per degree-k monomial (descending order).
pub fn condition_matrix(
    field: Field,
    k: u32,
    a: &MultiplicityAssignment,
) -> Result<Matrix, ConstructionError> {
    let field = a.working_field(field);
    let monos = monomials_of_degree(k);
    let mut rows: Vec<Vec<_>> = Vec::with_capacity(a.condition_count());
    for (p, m) in &a.entries {
        let p = p.embed(field)?;
        let order = m - 1;
        let jets: Vec<_> = monos
            .iter()
            .map(|mono| poly_jet(&MultiPoly::monomial(field, *mono), &p, order))
            .collect();
        for deg in 0..=order {
            for e in crate::singular::jet::local_monomials(deg)
                .into_iter()
                .filter(|e| e.iter().sum::<u32>() == deg)
            {
                rows.push(jets.iter().map(|j| j.coefficient(e)).collect());
            }
        }
    }
    if rows.is_empty() {
        return Ok(Matrix::zeros(field, 0, monos.len()));
    }
    Ok(Matrix::from_rows(field, rows)?)
}

/// Basis of the degree-k forms with multiplicity at least m at each assigned point.
pub fn forms_with_multiplicity(
    field: Field,
    k: u32,
    a: &MultiplicityAssignment,
) -> Result<Vec<MultiPoly>, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::ZeroDegree);
    }
    let m = condition_matrix(field, k, a)?;
    let field = m.field();
    let monos = monomials_of_degree(k);
    if m.nrows() == 0 {
        return Ok(monos.into_iter().map(|x| MultiPoly::monomial(field, x)).collect());
    }
    Ok(m.kernel_basis()
        .into_iter()
        .map(|v| MultiPoly::from_terms(field, v.into_iter().zip(monos.iter().copied())))
        .collect())
}

/// Quadrics through the given points.
pub fn quadrics_through(field: Field, points: &[ProjPoint]) -> Result<Vec<MultiPoly>, ConstructionError> {
    forms_with_multiplicity(field, 2, &MultiplicityAssignment::uniform(points, 1)?)
}

/// Image under (x,y,z,w) -> (yzw, xzw, xyw, xyz) with the coordinate
/// planes divided out, together with the multiplicities at the four
/// coordinate vertices.
pub fn reciprocal_transform(x: &Surface) -> Result<(Surface, [u32; 4]), ConstructionError> {
    let f = x.poly();
    let d = x.degree();
    let mut top = [0u32; 4];
    let mut bottom = [u32::MAX; 4];
    for (m, _) in f.terms() {
        for i in 0..4 {
            top[i] = top[i].max(m.0[i]);
            bottom[i] = bottom[i].min(m.0[i]);
        }
    }
    if let Some(i) = (0..4).find(|&i| bottom[i] > 0) {
        return Err(ConstructionError::CoordinatePlaneComponent(i));
    }
    // a monomial with exponents a maps to prod x_i^(d - a_i); the vertex
    // multiplicity d - max a_i is divided out, leaving max a_i - a_i
    let mults = top.map(|t| d - t);
    let image = MultiPoly::from_terms(
        f.field(),
        f.terms()
            .map(|(m, c)| (c.clone(), Monomial(std::array::from_fn(|i| top[i] - m.0[i])))),
    );
    Ok((Surface::new(image)?, mults))
}

fn check_degree(p: &MultiPoly, d: u32, what: &str) -> Result<(), ConstructionError> {
    match p.homogeneous_degree() {
        Some(k) if k == d => Ok(()),
        _ => Err(ConstructionError::DegreeMismatch(format!(
            "{what} must be homogeneous of degree {d}"
        ))),
    }
}

fn common_poly_field(polys: &[&MultiPoly]) -> Result<Field, ConstructionError> {
    let first = polys.first().ok_or(ConstructionError::Empty)?.field();
    for p in polys {
        if p.field() != first {
            return Err(AlgebraError::FieldMismatch {
                left: first,
                right: p.field(),
            }
            .into());
        }
    }
    Ok(first)
}

/// Determinant of the 4x4 matrix whose columns are the gradients of g, q1, q2, q3.
pub fn dianode_surface(
    g: &MultiPoly,
    q1: &MultiPoly,
    q2: &MultiPoly,
    q3: &MultiPoly,
) -> Result<MultiPoly, ConstructionError> {
    common_poly_field(&[g, q1, q2, q3])?;
    check_degree(g, 4, "g")?;
    for q in [q1, q2, q3] {
        check_degree(q, 2, "each q")?;
    }
    let grads = [g, q1, q2, q3].map(|p| p.gradient());
    let m: Vec<Vec<MultiPoly>> = (0..4)
        .map(|r| (0..4).map(|c| grads[c][r].clone()).collect())
        .collect();
    Ok(poly_determinant(&m)?)
}

/// The four maximal minors of the 3x4 Jacobian of a net of quadrics,
/// omitting columns w, z, y, x in turn.
pub fn steiner_curve(
    q1: &MultiPoly,
    q2: &MultiPoly,
    q3: &MultiPoly,
) -> Result<[MultiPoly; 4], ConstructionError> {
    common_poly_field(&[q1, q2, q3])?;
    for q in [q1, q2, q3] {
        check_degree(q, 2, "each quadric")?;
    }
    let grads = [q1, q2, q3].map(|p| p.gradient());
    let minor = |cols: [usize; 3]| {
        let m: Vec<Vec<MultiPoly>> = grads
            .iter()
            .map(|g| cols.iter().map(|&c| g[c].clone()).collect())
            .collect();
        poly_determinant(&m)
    };
    Ok([
        minor([0, 1, 2])?,
        minor([0, 1, 3])?,
        minor([0, 2, 3])?,
        minor([1, 2, 3])?,
    ])
}

/// Echelon basis of the span of the given forms of a common degree.
pub fn span_basis(forms: &[MultiPoly]) -> Result<Vec<MultiPoly>, ConstructionError> {
    let field = common_poly_field(&forms.iter().collect::<Vec<_>>())?;
    let d = forms
        .iter()
        .find(|f| !f.is_zero())
        .and_then(MultiPoly::homogeneous_degree);
    let Some(d) = d else { return Ok(Vec::new()) };
    for f in forms.iter().filter(|f| !f.is_zero()) {
        check_degree(f, d, "every spanning form")?;
    }
    let monos = monomials_of_degree(d);
    let rows = forms.iter().map(|f| f.coefficients_on(&monos)).collect();
    let (red, pivots) = Matrix::from_rows(field, rows)?.rref();
    Ok((0..pivots.len())
        .map(|r| MultiPoly::from_terms(field, red.row(r).iter().cloned().zip(monos.iter().copied())))
        .collect())
}

fn multisets(n: usize, k: u32) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for tail in multisets(n, k - 1) {
        let start = tail.last().copied().unwrap_or(0);
        for i in start..n {
            let mut t = tail.clone();
            t.push(i);
            out.push(t);
        }
    }
    out
}

/// Echelon basis of the span of all degree-k products of the quadrics.
pub fn mixed_power_system(quadrics: &[MultiPoly], k: u32) -> Result<Vec<MultiPoly>, ConstructionError> {
    let field = common_poly_field(&quadrics.iter().collect::<Vec<_>>())?;
    for q in quadrics {
        check_degree(q, 2, "each quadric")?;
    }
    if span_basis(quadrics)?.len() != quadrics.len() {
        return Err(ConstructionError::DependentQuadrics);
    }
    let products: Vec<MultiPoly> = multisets(quadrics.len(), k)
        .into_iter()
        .map(|idx| {
            idx.iter()
                .fold(MultiPoly::one(field), |acc, &i| &acc * &quadrics[i])
        })
        .collect();
    span_basis(&products)
}

/// Field in which a form and a point can be compared.
pub fn shared_field(f: &MultiPoly, p: &ProjPoint) -> Field {
    common_field(f.field(), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::rng::Stream;
    use crate::singular::{certify_ordinary_triple_point, poly_multiplicity};

    fn qq() -> Field {
        Field::Rationals
    }

    #[test]
    fn one_point_planes() {
        let f = qq();
        let p = ProjPoint::from_ints(f, [1, 2, 3, 4]).unwrap();
        let a = MultiplicityAssignment::uniform(&[p.clone()], 1).unwrap();
        let basis = forms_with_multiplicity(f, 1, &a).unwrap();
        assert_eq!(basis.len(), 3);
        for b in &basis {
            assert!(f.is_zero(&b.evaluate(p.coords())));
        }
    }

    #[test]
    fn quintic_and_sextic_dimensions() {
        let f = Field::Prime(31);
        let mut s = Stream::new(11);
        for nu in 0..=5usize {
            let pts = s.general_points(f, nu);
            let a = MultiplicityAssignment::uniform(&pts, 3).unwrap();
            assert_eq!(a.condition_count(), 10 * nu);
            let basis = forms_with_multiplicity(f, 5, &a).unwrap();
            assert_eq!(basis.len(), 56 - 10 * nu);
            for b in &basis {
                for p in &pts {
                    assert!(poly_multiplicity(b, p) >= 3);
                }
            }
        }
        let pts = s.general_points(f, 7);
        let a = MultiplicityAssignment::uniform(&pts, 3).unwrap();
        assert_eq!(forms_with_multiplicity(f, 6, &a).unwrap().len(), 14);
    }

    #[test]
    fn quadric_counts() {
        let f = qq();
        let mut s = Stream::new(3);
        for (n, dim) in [(5, 5), (7, 3), (9, 1)] {
            let pts = s.general_points(f, n);
            assert_eq!(quadrics_through(f, &pts).unwrap().len(), dim);
        }
    }

    #[test]
    fn duplicate_points_rejected() {
        let f = qq();
        let p = ProjPoint::from_ints(f, [1, 1, 0, 0]).unwrap();
        let q = ProjPoint::from_ints(f, [2, 2, 0, 0]).unwrap();
        assert!(matches!(
            MultiplicityAssignment::uniform(&[p, q], 1),
            Err(ConstructionError::DuplicatePoint(_))
        ));
    }

    #[test]
    fn reciprocal_examples() {
        let f = qq();
        let quadric = Surface::new(parse_poly("x*y+z*w", f).unwrap()).unwrap();
        let (img, m) = reciprocal_transform(&quadric).unwrap();
        assert_eq!(img.poly(), quadric.poly());
        assert_eq!(m, [1, 1, 1, 1]);
        let plane = Surface::new(parse_poly("x+y+z+w", f).unwrap()).unwrap();
        let (img, m) = reciprocal_transform(&plane).unwrap();
        assert_eq!(img.poly(), &parse_poly("y*z*w+x*z*w+x*y*w+x*y*z", f).unwrap());
        assert_eq!(m, [0; 4]);
        let bad = Surface::new(parse_poly("x*y+x*z", f).unwrap()).unwrap();
        assert!(matches!(
            reciprocal_transform(&bad),
            Err(ConstructionError::CoordinatePlaneComponent(0))
        ));
    }

    #[test]
    fn reciprocal_matches_substitution() {
        let f = Field::Prime(31);
        let mut s = Stream::new(8);
        for _ in 0..10 {
            let x = Surface::new(s.form(f, 4)).unwrap();
            let (img, m) = reciprocal_transform(&x).unwrap();
            let v = |i| MultiPoly::var(f, i);
            let images = [
                &(&v(1) * &v(2)) * &v(3),
                &(&v(0) * &v(2)) * &v(3),
                &(&v(0) * &v(1)) * &v(3),
                &(&v(0) * &v(1)) * &v(2),
            ];
            let sub = x.poly().substitute(&images).unwrap();
            let div = MultiPoly::monomial(f, Monomial(m));
            assert_eq!(&sub.divide_exact(&div).unwrap(), img.poly());
            assert_eq!(img.degree(), 12 - m.iter().sum::<u32>());
        }
    }

    #[test]
    fn quintic_with_vertex_triple_points_maps_to_cubic() {
        let f = Field::Prime(31);
        let vertices: Vec<ProjPoint> = (0..4)
            .map(|i| {
                let mut c = [0; 4];
                c[i] = 1;
                ProjPoint::from_ints(f, c).unwrap()
            })
            .collect();
        let a = MultiplicityAssignment::uniform(&vertices, 3).unwrap();
        let basis = forms_with_multiplicity(f, 5, &a).unwrap();
        let g = Stream::new(2).combination(f, &basis);
        let (img, m) = reciprocal_transform(&Surface::new(g).unwrap()).unwrap();
        assert_eq!(m, [3; 4]);
        assert_eq!(img.degree(), 3);
    }

    #[test]
    fn steiner_diagonal() {
        let f = qq();
        let q = |s: &str| parse_poly(s, f).unwrap();
        let minors = steiner_curve(&q("x^2"), &q("y^2"), &q("z^2")).unwrap();
        assert_eq!(minors[0], q("8*x*y*z"));
        assert!(minors[1..].iter().all(MultiPoly::is_zero));
        let same = steiner_curve(&q("x*y+z^2"), &q("x*y+z^2"), &q("w^2")).unwrap();
        assert!(same.iter().all(MultiPoly::is_zero));
    }

    #[test]
    fn steiner_contains_singular_quadric_vertices() {
        let f = Field::Prime(31);
        let pts = Stream::new(21).general_points(f, 7);
        let net = quadrics_through(f, &pts).unwrap();
        let minors = steiner_curve(&net[0], &net[1], &net[2]).unwrap();
        assert!(minors.iter().all(|m| !m.is_zero()));
        // brute-force: singular members s*q0 + t*q1 + q2 and their vertices
        let mut checked = 0;
        for s in 0..31 {
            for t in 0..31 {
                let q = &(&net[0].scale(&Scalar::Residue(s)) + &net[1].scale(&Scalar::Residue(t)))
                    + &net[2];
                let grad = q.gradient();
                let rows = grad.iter().map(|g| g.coefficients_on(&monomials_of_degree(1))).collect();
                let m = Matrix::from_rows(f, rows).unwrap();
                for v in m.kernel_basis() {
                    let c: [Scalar; 4] = v.try_into().unwrap();
                    for minor in &minors {
                        assert!(f.is_zero(&minor.evaluate(&c)));
                    }
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }

    use crate::algebra::Scalar;

    #[test]
    fn mixed_powers() {
        let f = Field::Prime(31);
        let mut s = Stream::new(4);
        let two = [s.form(f, 2), s.form(f, 2)];
        assert_eq!(mixed_power_system(&two, 3).unwrap().len(), 4);
        assert_eq!(mixed_power_system(&two[..1], 3).unwrap().len(), 1);
        let pts = s.general_points(f, 6);
        let quads = quadrics_through(f, &pts).unwrap();
        assert_eq!(quads.len(), 4);
        assert_eq!(mixed_power_system(&quads, 3).unwrap().len(), 20);
        let dep = [two[0].clone(), two[0].scale(&Scalar::Residue(2))];
        assert!(matches!(
            mixed_power_system(&dep, 3),
            Err(ConstructionError::DependentQuadrics)
        ));
    }

    #[test]
    fn dianode_examples() {
        let f = qq();
        let q = |s: &str| parse_poly(s, f).unwrap();
        let (q1, q2, q3) = (q("x^2+y*z"), q("y^2-x*w"), q("z^2+x*y+w^2"));
        assert!(dianode_surface(&(&q1 * &q2), &q1, &q2, &q3).unwrap().is_zero());
        assert!(dianode_surface(&q1, &q1, &q2, &q3).is_err());
    }

    #[test]
    fn dianode_seven_points() {
        let f = qq();
        let pts = Stream::new(7).general_points(f, 7);
        let net = quadrics_through(f, &pts).unwrap();
        assert_eq!(net.len(), 3);
        let quartics = forms_with_multiplicity(f, 4, &MultiplicityAssignment::uniform(&pts, 2).unwrap())
            .unwrap();
        // the quartics double at the seven points beyond products of the net
        let products = span_basis(
            &[
                &net[0] * &net[0],
                &net[0] * &net[1],
                &net[0] * &net[2],
                &net[1] * &net[1],
                &net[1] * &net[2],
                &net[2] * &net[2],
            ],
        )
        .unwrap();
        assert_eq!(products.len(), 6);
        let g = quartics
            .iter()
            .find(|g| {
                let mut all = products.clone();
                all.push((*g).clone());
                span_basis(&all).unwrap().len() == 7
            })
            .unwrap();
        let delta = dianode_surface(g, &net[0], &net[1], &net[2]).unwrap();
        assert_eq!(delta.homogeneous_degree(), Some(6));
        let x = Surface::new(delta).unwrap();
        for p in &pts {
            assert!(f.is_zero(&x.poly().evaluate(p.coords())));
            certify_ordinary_triple_point(&x, p).unwrap();
        }
    }

    #[test]
    fn dianode_coplanar_four() {
        let f = qq();
        let mut s = Stream::new(12);
        // four points on w = x + y + z, three more in general position
        let mut pts = Vec::new();
        while pts.len() < 4 {
            let p = s.point(f);
            let c = p.coords();
            let w = f.add(&f.add(&c[0], &c[1]), &c[2]);
            let q = ProjPoint::new(f, [c[0].clone(), c[1].clone(), c[2].clone(), w]).unwrap();
            pts.push(q);
            if !crate::singular::no_three_collinear(&pts) {
                pts.pop();
            }
        }
        pts.extend(s.general_points(f, 3));
        let net = quadrics_through(f, &pts).unwrap();
        let quartics =
            forms_with_multiplicity(f, 4, &MultiplicityAssignment::uniform(&pts, 2).unwrap()).unwrap();
        let g = s.combination(f, &quartics);
        let delta = dianode_surface(&g, &net[0], &net[1], &net[2]).unwrap();
        assert!(!delta.is_zero());
        let h = parse_poly("x+y+z-w", f).unwrap();
        delta.divide_exact(&h).unwrap();
    }
}
