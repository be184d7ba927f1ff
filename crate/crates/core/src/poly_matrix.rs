//! Matrices over F_p[x] and Smith normal form with transform certificates.

use std::fmt;

use crate::error::{Error, Result};
use crate::fp_poly::{FieldSpec, FpPoly};

/// A dense row-major matrix over F_p[x].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FpPoly>,
}

impl PolyMatrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            field,
            rows,
            cols,
            entries: vec![FpPoly::zero(field); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, FpPoly::one(field));
        }
        m
    }

    /// Builds a `rows x cols` matrix from row vectors. `cols` is needed to
    /// describe matrices with no rows.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<FpPoly>>) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch(field.p(), e.field().p()));
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix { field, rows: nrows, cols, entries })
    }

    /// Builds a matrix from column vectors of length `rows`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: Vec<Vec<FpPoly>>) -> Result<Self> {
        let cols = columns.len();
        Ok(Self::from_rows(field, rows, columns)?.transpose_with_rows(rows, cols))
    }

    fn transpose_with_rows(&self, rows: usize, cols: usize) -> Self {
        let mut out = Self::zero(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(j, i).clone());
            }
        }
        out
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FpPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FpPoly) {
        assert_eq!(v.field(), self.field, "entry over a different field");
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FpPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FpPoly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FpPoly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        self.transpose_with_rows(self.cols, self.rows)
    }

    /// The submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zero(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &PolyMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot concatenate {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let mut out = Self::zero(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FpPoly) -> Self {
        PolyMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FpPoly::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<FpPoly> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn matrix_mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field.p(), rhs.field.p()));
        }
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zero(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = FpPoly::zero(self.field);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * rhs.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<FpPoly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let f = self.field;
        if n == 0 {
            return Ok(FpPoly::one(f));
        }
        let mut a = self.to_rows();
        let mut negate = false;
        let mut prev = FpPoly::one(f);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        negate = !negate;
                    }
                    None => return Ok(FpPoly::zero(f)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -&det } else { det })
    }

    /// Square with a nonzero constant determinant.
    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.determinant()?.is_unit())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row_i <- a*row_i + b*row_j`, `row_j <- c*row_i + d*row_j`.
    fn combine_rows(&mut self, i: usize, j: usize, t: &Transform2) {
        for k in 0..self.cols {
            let (x, y) = (self.get(i, k).clone(), self.get(j, k).clone());
            let (nx, ny) = t.apply(&x, &y);
            self.set(i, k, nx);
            self.set(j, k, ny);
        }
    }

    /// `col_i <- a*col_i + b*col_j`, `col_j <- c*col_i + d*col_j`.
    fn combine_cols(&mut self, i: usize, j: usize, t: &Transform2) {
        for k in 0..self.rows {
            let (x, y) = (self.get(k, i).clone(), self.get(k, j).clone());
            let (nx, ny) = t.apply(&x, &y);
            self.set(k, i, nx);
            self.set(k, j, ny);
        }
    }

    fn scale_row(&mut self, i: usize, c: u64) {
        for k in 0..self.cols {
            let v = self.get(i, k).scale(c);
            self.set(i, k, v);
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A 2x2 block `[[a, b], [c, d]]` acting on a pair of rows or columns.
struct Transform2 {
    a: FpPoly,
    b: FpPoly,
    c: FpPoly,
    d: FpPoly,
}

impl Transform2 {
    fn apply(&self, x: &FpPoly, y: &FpPoly) -> (FpPoly, FpPoly) {
        (
            &(&self.a * x) + &(&self.b * y),
            &(&self.c * x) + &(&self.d * y),
        )
    }

    /// Elimination of `b` against the pivot `a`: either a division step or
    /// the extended-gcd block `[[s, u], [-b/g, a/g]]`, determinant 1.
    fn eliminate(pivot: &FpPoly, other: &FpPoly) -> Transform2 {
        let field = pivot.field();
        let one = FpPoly::one(field);
        let zero = FpPoly::zero(field);
        let (q, r) = other.divmod(pivot).expect("nonzero pivot");
        if r.is_zero() {
            return Transform2 { a: one.clone(), b: zero, c: -&q, d: one };
        }
        let e = pivot.gcd_ext(other).expect("nonzero pivot");
        Transform2 {
            a: e.u,
            b: e.v,
            c: -&other.div_exact(&e.g).expect("g | b"),
            d: pivot.div_exact(&e.g).expect("g | a"),
        }
    }
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal with a monic
/// divisibility chain, zeros last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    u: PolyMatrix,
    d: PolyMatrix,
    v: PolyMatrix,
    diag: Vec<FpPoly>,
}

impl SmithDecomposition {
    pub fn u(&self) -> &PolyMatrix {
        &self.u
    }

    pub fn d(&self) -> &PolyMatrix {
        &self.d
    }

    pub fn v(&self) -> &PolyMatrix {
        &self.v
    }

    /// Invariant factors, length `min(rows, cols)`, zeros last.
    pub fn diag(&self) -> &[FpPoly] {
        &self.diag
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|d| !d.is_zero()).count()
    }

    /// Checks every structural invariant against the source matrix.
    pub fn verify(&self, source: &PolyMatrix) -> Result<bool> {
        let umv = self.u.matrix_mul(source)?.matrix_mul(&self.v)?;
        Ok(umv == self.d
            && self.d.is_diagonal()
            && self.d.diagonal() == self.diag
            && is_divisibility_chain(&self.diag)
            && self.diag.iter().all(|d| d.is_zero() || d.is_monic())
            && self.u.is_unimodular()?
            && self.v.is_unimodular()?)
    }
}

/// `d_i | d_{i+1}` with all zero entries at the end.
pub fn is_divisibility_chain(diag: &[FpPoly]) -> bool {
    diag.windows(2).all(|w| w[0].divides(&w[1]))
}

pub fn smith_normal_form(m: &PolyMatrix) -> SmithDecomposition {
    let field = m.field();
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = PolyMatrix::identity(field, rows);
    let mut v = PolyMatrix::identity(field, cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // Minimal-degree nonzero pivot, lowest row then lowest column.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let e = a.get(i, j);
                if e.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| e.degree() < a.get(bi, bj).degree()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let tr = Transform2::eliminate(a.get(t, t), a.get(i, t));
                a.combine_rows(t, i, &tr);
                u.combine_rows(t, i, &tr);
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let tr = Transform2::eliminate(a.get(t, t), a.get(t, j));
                a.combine_cols(t, j, &tr);
                v.combine_cols(t, j, &tr);
            }
            if (t + 1..rows).all(|i| a.get(i, t).is_zero()) {
                break;
            }
        }
        t += 1;
    }
    let rank = t;

    // Repair the divisibility chain: diag(a, b) -> diag(gcd, ab/gcd).
    for i in 0..rank {
        for j in i + 1..rank {
            let (x, y) = (a.get(i, i).clone(), a.get(j, j).clone());
            if x.divides(&y) {
                continue;
            }
            let e = x.gcd_ext(&y).expect("nonzero diagonal");
            let x_g = x.div_exact(&e.g).expect("g | a");
            let y_g = y.div_exact(&e.g).expect("g | b");
            let left = Transform2 { a: e.u.clone(), b: e.v.clone(), c: -&y_g, d: x_g.clone() };
            let right = Transform2 {
                a: FpPoly::one(field),
                b: FpPoly::one(field),
                c: -&(&e.v * &y_g),
                d: &e.u * &x_g,
            };
            a.combine_rows(i, j, &left);
            u.combine_rows(i, j, &left);
            a.combine_cols(i, j, &right);
            v.combine_cols(i, j, &right);
        }
    }

    for i in 0..rank {
        let inv = field.inv(a.get(i, i).lead()).expect("nonzero diagonal");
        if inv != 1 {
            a.scale_row(i, inv);
            u.scale_row(i, inv);
        }
    }

    let diag = a.diagonal();
    let out = SmithDecomposition { u, d: a, v, diag };
    let umv = out.u.matrix_mul(m).and_then(|x| x.matrix_mul(&out.v)).expect("shapes agree");
    assert_eq!(umv, out.d, "Smith certificate U*M*V = D failed");
    assert!(out.d.is_diagonal(), "Smith form is not diagonal");
    assert!(is_divisibility_chain(&out.diag), "Smith diagonal is not a divisibility chain");
    out
}
