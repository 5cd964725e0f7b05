//! Dense matrices over an exact field and the elimination kernels shared by
//! the rest of the crate.

use std::collections::HashMap;
use std::fmt;

use super::arith::Arith;
use super::field::{Field, Scalar};
use super::poly::MultiPoly;
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix over {} ({}x{})", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| self.field.format(s)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AlgebraError::Shape("rows of unequal length".into()));
        }
        let entries: Vec<Scalar> = rows.into_iter().flatten().collect();
        if let Some(bad) = entries.iter().find(|s| !field.contains(s)) {
            return Err(AlgebraError::NotInField {
                field,
                value: format!("{bad:?}"),
            });
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn from_i64_rows(field: Field, rows: &[Vec<i64>]) -> Result<Matrix, AlgebraError> {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(self.field.contains(&v), "entry outside the matrix field");
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        if self.cols != other.rows {
            return Err(AlgebraError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.get(r, k), other.get(k, c)));
                }
                out.entries[r * other.cols + c] = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::Shape("vector length mismatch".into()));
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        with_arith!(self.field, ar => {
            let mut rows = lift_rows(&ar, self);
            let pivots = rref_in_place(&ar, &mut rows, self.cols);
            let entries = rows.iter().flatten().map(|e| ar.lower(e)).collect();
            (
                Matrix { field: self.field, rows: self.rows, cols: self.cols, entries },
                pivots,
            )
        })
    }

    pub fn rank(&self) -> usize {
        with_arith!(self.field, ar => {
            let mut rows = lift_rows(&ar, self);
            rref_in_place(&ar, &mut rows, self.cols).len()
        })
    }

    /// Basis of the right null space. Vector `i` has a 1 in the `i`-th free
    /// column and zeros in the other free columns (reduced column echelon form).
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        with_arith!(self.field, ar => {
            let mut rows = lift_rows(&ar, self);
            let pivots = rref_in_place(&ar, &mut rows, self.cols);
            kernel_from_rref(&ar, &rows, &pivots, self.cols)
                .into_iter()
                .map(|v| v.iter().map(|e| ar.lower(e)).collect())
                .collect()
        })
    }

    pub fn inverse(&self) -> Result<Matrix, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let f = self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.entries[r * 2 * n + c] = self.get(r, c).clone();
            }
            aug.entries[r * 2 * n + n + r] = f.one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(AlgebraError::Singular);
        }
        let mut out = Matrix::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                out.entries[r * n + c] = red.get(r, n + c).clone();
            }
        }
        Ok(out)
    }
}

pub(crate) fn lift_rows<A: Arith>(ar: &A, m: &Matrix) -> Vec<Vec<A::E>> {
    (0..m.rows)
        .map(|r| m.row(r).iter().map(|s| ar.lift(s)).collect())
        .collect()
}

/// In-place Gauss-Jordan elimination; returns the pivot columns.
pub(crate) fn rref_in_place<A: Arith>(ar: &A, rows: &mut [Vec<A::E>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !ar.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = ar.inv(&rows[r][c]).expect("nonzero pivot");
        for e in rows[r][c..].iter_mut() {
            *e = ar.mul(e, &inv);
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().expect("row r exists");
        for other in head.iter_mut().chain(rest.iter_mut()) {
            if ar.is_zero(&other[c]) {
                continue;
            }
            let factor = other[c].clone();
            for (e, pe) in other[c..].iter_mut().zip(&pivot_row[c..]) {
                if !ar.is_zero(pe) {
                    *e = ar.sub_mul(e, &factor, pe);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn kernel_from_rref<A: Arith>(
    ar: &A,
    rows: &[Vec<A::E>],
    pivots: &[usize],
    ncols: usize,
) -> Vec<Vec<A::E>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![ar.zero(); ncols];
            v[free] = ar.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = ar.neg(&rows[i][free]);
            }
            v
        })
        .collect()
}

/// Row echelon form grown one vector at a time.
///
/// Every stored row has leading entry 1 in its pivot column and zeros in the
/// pivot columns of rows stored before it, so a single left-to-right sweep
/// reduces any vector.
pub(crate) struct Echelon<A: Arith> {
    ar: A,
    ncols: usize,
    rows: Vec<Vec<A::E>>,
    row_of_col: Vec<Option<usize>>,
}

impl<A: Arith> Echelon<A> {
    pub fn new(ar: A, ncols: usize) -> Self {
        Echelon {
            ar,
            ncols,
            rows: Vec::new(),
            row_of_col: vec![None; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows in place; returns its first nonzero column.
    pub fn reduce(&self, v: &mut [A::E]) -> Option<usize> {
        let ar = &self.ar;
        let mut lead = None;
        for c in 0..self.ncols {
            if ar.is_zero(&v[c]) {
                continue;
            }
            match self.row_of_col[c] {
                Some(r) => {
                    let factor = v[c].clone();
                    let row = &self.rows[r];
                    for j in c..self.ncols {
                        if !ar.is_zero(&row[j]) {
                            v[j] = ar.sub_mul(&v[j], &factor, &row[j]);
                        }
                    }
                }
                None => {
                    if lead.is_none() {
                        lead = Some(c);
                    }
                }
            }
        }
        lead
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<A::E>) -> bool {
        let Some(c) = self.reduce(&mut v) else {
            return false;
        };
        let inv = self.ar.inv(&v[c]).expect("nonzero lead");
        for e in v[c..].iter_mut() {
            *e = self.ar.mul(e, &inv);
        }
        self.row_of_col[c] = Some(self.rows.len());
        self.rows.push(v);
        true
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.row_of_col[c].is_some()
    }

    /// Fully reduces the stored rows so every pivot column is a unit column.
    pub fn make_reduced(&mut self) {
        let ar = self.ar.clone();
        let mut pivots: Vec<(usize, usize)> = (0..self.ncols)
            .filter_map(|c| self.row_of_col[c].map(|r| (c, r)))
            .collect();
        pivots.sort_unstable();
        for &(c, r) in pivots.iter().rev() {
            let pivot_row = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i == r || ar.is_zero(&row[c]) {
                    continue;
                }
                let factor = row[c].clone();
                for j in c..self.ncols {
                    if !ar.is_zero(&pivot_row[j]) {
                        row[j] = ar.sub_mul(&row[j], &factor, &pivot_row[j]);
                    }
                }
            }
        }
    }
}

/// Determinant of a square matrix of polynomials by memoised expansion
/// along rows over column subsets (division free, so exact over any field).
pub fn poly_determinant(m: &[Vec<MultiPoly>]) -> Result<MultiPoly, AlgebraError> {
    let n = m.len();
    if let Some(bad) = m.iter().find(|r| r.len() != n) {
        return Err(AlgebraError::NotSquare {
            rows: n,
            cols: bad.len(),
        });
    }
    if n > 8 {
        return Err(AlgebraError::Shape(format!("determinant of size {n} exceeds 8")));
    }
    let Some(field) = m.first().and_then(|r| r.first()).map(MultiPoly::field) else {
        return Err(AlgebraError::Shape("empty matrix".into()));
    };
    if let Some(bad) = m.iter().flatten().find(|p| p.field() != field) {
        return Err(AlgebraError::FieldMismatch {
            left: field,
            right: bad.field(),
        });
    }
    // minors[mask] = det of rows 0..|mask| restricted to the columns in mask
    let mut minors: HashMap<u32, MultiPoly> = HashMap::new();
    minors.insert(0, MultiPoly::one(field));
    for k in 1..=n {
        let row = &m[k - 1];
        let mut next = HashMap::new();
        for mask in (0u32..(1 << n)).filter(|s| s.count_ones() as usize == k) {
            let mut acc = MultiPoly::zero(field);
            let mut pos = 0;
            for j in 0..n {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let entry = &row[j];
                let sub = &minors[&(mask & !(1 << j))];
                if !entry.is_zero() && !sub.is_zero() {
                    let t = entry * sub;
                    // expanding along the last row: sign (-1)^((k-1) + pos)
                    acc = if (k - 1 + pos) % 2 == 0 { &acc + &t } else { &acc - &t };
                }
                pos += 1;
            }
            next.insert(mask, acc);
        }
        minors = next;
    }
    Ok(minors.remove(&((1u32 << n) - 1)).expect("full minor"))
}
