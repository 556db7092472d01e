//! Dense matrices over a finite field and the elimination kernels built on them.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use thiserror::Error;

use crate::field::{Fe, Field};
use crate::poly::Poly;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("linear system has no solution")]
    Inconsistent,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("block grid is not an equal partition")]
    RaggedBlocks,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Fe::ONE;
        }
        m
    }

    pub fn scalar(field: &Field, n: usize, c: Fe) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Fe>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Row-major integer entries, reduced into the prime field.
    pub fn from_ints(field: &Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        Matrix::from_vec(field, rows, cols, entries.iter().map(|&v| field.from_int(v)).collect())
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Fe>]) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        let data: Vec<Fe> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Matrix::from_vec(field, rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Fe>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    pub fn diagonal(field: &Field, diag: &[Fe]) -> Matrix {
        let mut m = Matrix::zeros(field, diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = d;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Fe>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { Fe::ONE } else { Fe::ZERO }))
    }

    fn check_field(&self, other: &Matrix) -> Result<(), MatrixError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(MatrixError::FieldMismatch)
        }
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch { op: "mul", left: self.shape(), right: other.shape() });
        }
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if !a.is_zero() {
                    self.field.axpy(dst, a, other.row(k));
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(MatrixError::DimensionMismatch { op: "add", left: self.shape(), right: other.shape() });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.field.add(a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.checked_add(&other.scale(self.field.neg(Fe::ONE)))
    }

    pub fn scale(&self, c: Fe) -> Matrix {
        let data = self.data.iter().map(|&a| self.field.mul(c, a)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.field.neg(Fe::ONE))
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.field.dot(self.row(i), v)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    /// Assembles a matrix from a grid of blocks; every block row must share a
    /// height and every block column a width.
    pub fn block(grid: &[Vec<Matrix>]) -> Result<Matrix, MatrixError> {
        let first = grid.first().and_then(|r| r.first()).ok_or(MatrixError::RaggedBlocks)?;
        let field = first.field.clone();
        let ncols = grid[0].len();
        if grid.iter().any(|r| r.len() != ncols) {
            return Err(MatrixError::RaggedBlocks);
        }
        let heights: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
        let widths: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        for (bi, r) in grid.iter().enumerate() {
            for (bj, b) in r.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(MatrixError::RaggedBlocks);
                }
                if b.field != field {
                    return Err(MatrixError::FieldMismatch);
                }
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut out = Matrix::zeros(&field, rows, cols);
        let mut r0 = 0;
        for (bi, r) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in r.iter().enumerate() {
                out.set_block(r0, c0, b);
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j);
            }
        }
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let field = blocks[0].field.clone();
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(&field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * out.cols + j * other.cols + l] = f.mul(a, other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.data[i * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// Entrywise image under a field embedding.
    pub fn map_field(&self, emb: &crate::field::Embedding) -> Matrix {
        Matrix {
            field: emb.target().clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| emb.apply(x)).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut result = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, r);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            let cols = m.cols;
            f.scale(&mut m.data[r * cols..(r + 1) * cols], inv);
            let pivot_row: Vec<Fe> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i != r {
                    let x = m.get(i, c);
                    if !x.is_zero() {
                        f.axpy(&mut m.data[i * cols..(i + 1) * cols], f.neg(x), &pivot_row);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column (ascending),
    /// each with a 1 in its free coordinate.
    pub fn kernel_basis(&self) -> Vec<Vec<Fe>> {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Fe::ZERO; self.cols];
                v[free] = Fe::ONE;
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.get(row, free));
                }
                v
            })
            .collect()
    }

    /// Echelonized basis of the column space, as column vectors.
    pub fn column_space(&self) -> Vec<Vec<Fe>> {
        let (r, pivots) = self.transpose().rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    pub fn inverse(&self) -> Result<Matrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let id = Matrix::identity(&self.field, n);
        let aug = Matrix::block(&[vec![self.clone(), id]])?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(MatrixError::Singular);
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(r.submatrix(&rows, &cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn det(&self) -> Result<Fe, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let f = &self.field;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Fe::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Fe::ZERO);
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("nonzero pivot");
            let pivot_row: Vec<Fe> = m.row(c).to_vec();
            for i in c + 1..n {
                let x = m.get(i, c);
                if !x.is_zero() {
                    let k = f.neg(f.mul(x, inv));
                    f.axpy(&mut m.data[i * n..(i + 1) * n], k, &pivot_row);
                }
            }
        }
        Ok(det)
    }

    /// Some solution of `self * x = b`.
    pub fn solve(&self, b: &[Fe]) -> Result<Vec<Fe>, MatrixError> {
        if b.len() != self.rows {
            return Err(MatrixError::DimensionMismatch { op: "solve", left: self.shape(), right: (b.len(), 1) });
        }
        let aug = Matrix::block(&[vec![self.clone(), Matrix::from_columns(&self.field, self.rows, &[b.to_vec()])]])?;
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(MatrixError::Inconsistent);
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols);
        }
        Ok(x)
    }

    /// Characteristic polynomial `det(X I - M)` via reduction to Hessenberg form.
    pub fn char_poly(&self) -> Result<Poly, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else {
                continue;
            };
            if i != j + 1 {
                h.swap_rows(i, j + 1);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + j + 1);
                }
            }
            let inv = f.inv(h.get(j + 1, j)).expect("nonzero pivot");
            for k in j + 2..n {
                let c = f.mul(h.get(k, j), inv);
                if c.is_zero() {
                    continue;
                }
                // row_k -= c row_{j+1}; col_{j+1} += c col_k
                let pivot_row: Vec<Fe> = h.row(j + 1).to_vec();
                f.axpy(&mut h.data[k * n..(k + 1) * n], f.neg(c), &pivot_row);
                for r in 0..n {
                    let v = f.add(h.get(r, j + 1), f.mul(c, h.get(r, k)));
                    h.set(r, j + 1, v);
                }
            }
        }
        // p_m = (X - h_mm) p_{m-1} - sum_i h_{m-i,m} (prod h_{j,j-1}) p_{m-i-1}
        let mut polys: Vec<Poly> = vec![Poly::one()];
        for m in 0..n {
            let mut pm = Poly::linear(f, h.get(m, m)).mul(&polys[m], f);
            let mut t = Fe::ONE;
            for i in 1..=m {
                t = f.mul(t, h.get(m - i + 1, m - i));
                let c = f.mul(t, h.get(m - i, m));
                if !c.is_zero() {
                    pm = pm.sub(&polys[m - i].scale(c, f), f);
                }
            }
            polys.push(pm);
        }
        Ok(polys.pop().expect("at least the constant polynomial"))
    }

    /// `g(M)` for a square matrix.
    pub fn eval_poly(&self, g: &Poly) -> Matrix {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Matrix::zeros(&self.field, n, n);
        for &c in g.coeffs().iter().rev() {
            acc = &acc * self;
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows as u64).is_zero()
    }

    /// Fitting decomposition `V = ker u^d ⊕ im u^d`, returned as column bases,
    /// or `None` when `u` is nilpotent or invertible.
    pub fn fitting_split(&self) -> Option<(Matrix, Matrix)> {
        assert!(self.is_square());
        let d = self.rows;
        let ud = self.pow(d as u64);
        let ker = ud.kernel_basis();
        let im = ud.column_space();
        if ker.is_empty() || im.is_empty() {
            return None;
        }
        Some((Matrix::from_columns(&self.field, d, &ker), Matrix::from_columns(&self.field, d, &im)))
    }

    /// Coordinates of the columns of `vectors` in the basis given by the
    /// (linearly independent) columns of `self`.
    pub fn coordinates(&self, vectors: &Matrix) -> Result<Matrix, MatrixError> {
        let k = self.cols;
        let aug = Matrix::block(&[vec![self.clone(), vectors.clone()]])?;
        let (r, pivots) = aug.rref();
        if pivots.len() != k || pivots.iter().any(|&p| p >= k) {
            return Err(MatrixError::Inconsistent);
        }
        let rows: Vec<usize> = (0..k).collect();
        let cols: Vec<usize> = (k..k + vectors.cols).collect();
        Ok(r.submatrix(&rows, &cols))
    }

    /// Vectorizes row-major.
    pub fn to_vector(&self) -> Vec<Fe> {
        self.data.clone()
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("conformable matrices")
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("conformable matrices")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("conformable matrices")
    }
}

/// Incrementally maintained echelon basis of a row space.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    width: usize,
    rows: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: &Field, width: usize) -> Echelon {
        Echelon { field: field.clone(), width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    pub fn reduce(&self, v: &mut [Fe]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                self.field.axpy(v, self.field.neg(c), row);
            }
        }
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Fe]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = self.field.inv(w[p]).expect("nonzero");
        self.field.scale(&mut w, inv);
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    /// Fully reduced basis, sorted by pivot.
    pub fn reduced_basis(&self) -> Vec<Vec<Fe>> {
        if self.rows.is_empty() {
            return Vec::new();
        }
        let m = Matrix::from_rows(&self.field, &self.rows);
        let (r, pivots) = m.rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    /// Basis of the solutions `x` of `row · x = 0` for every stored row.
    pub fn null_space(&self) -> Vec<Vec<Fe>> {
        if self.rows.is_empty() {
            return (0..self.width)
                .map(|i| {
                    let mut v = vec![Fe::ZERO; self.width];
                    v[i] = Fe::ONE;
                    v
                })
                .collect();
        }
        Matrix::from_rows(&self.field, &self.rows).kernel_basis()
    }
}

enum Derivation {
    Seed(usize),
    Apply(usize, usize),
}

/// Basis of `{S : Q_g S = S P_g for all g}` for pairs `(P_g, Q_g)`.
///
/// The source space is spun up from seed vectors under the `P_g`; a solution
/// is determined by the images of the seeds, which keeps the linear system at
/// `#seeds * dim(target)` unknowns. The result is echelonized (row-major
/// vectorization), so the basis does not depend on how it was found.
pub fn commutant_solve(pairs: &[(Matrix, Matrix)], field: &Field, src_dim: usize, dst_dim: usize) -> Vec<Matrix> {
    for (p, q) in pairs {
        assert_eq!(p.shape(), (src_dim, src_dim), "source matrices must be square of one size");
        assert_eq!(q.shape(), (dst_dim, dst_dim), "target matrices must be square of one size");
    }
    if src_dim == 0 || dst_dim == 0 {
        return Vec::new();
    }
    let f = field;

    // spin a basis of the source
    let mut span = Echelon::new(f, src_dim);
    let mut basis: Vec<Vec<Fe>> = Vec::new();
    let mut derivation: Vec<Derivation> = Vec::new();
    let mut seeds = 0;
    let mut next = 0;
    for e in 0..src_dim {
        let mut v = vec![Fe::ZERO; src_dim];
        v[e] = Fe::ONE;
        if !span.insert(&v) {
            continue;
        }
        basis.push(v);
        derivation.push(Derivation::Seed(seeds));
        seeds += 1;
        while next < basis.len() {
            for (g, (p, _)) in pairs.iter().enumerate() {
                let w = p.mul_vec(&basis[next]);
                if span.insert(&w) {
                    basis.push(w);
                    derivation.push(Derivation::Apply(g, next));
                }
            }
            next += 1;
        }
        if span.is_full() {
            break;
        }
    }

    // images of basis vectors as linear functions of the unknown seed images
    let unknowns = seeds * dst_dim;
    let mut images: Vec<Matrix> = Vec::with_capacity(src_dim);
    for d in &derivation {
        let l = match *d {
            Derivation::Seed(s) => {
                let mut l = Matrix::zeros(f, dst_dim, unknowns);
                for i in 0..dst_dim {
                    l.set(i, s * dst_dim + i, Fe::ONE);
                }
                l
            }
            Derivation::Apply(g, k) => &pairs[g].1 * &images[k],
        };
        images.push(l);
    }

    let bmat = Matrix::from_columns(f, src_dim, &basis);
    let binv = bmat.inverse().expect("spun vectors form a basis");
    let mut constraints = Echelon::new(f, unknowns);
    'outer: for (g, (p, q)) in pairs.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            if derivation.iter().any(|d| matches!(*d, Derivation::Apply(gg, k) if gg == g && k == i)) {
                continue;
            }
            let coords = binv.mul_vec(&p.mul_vec(b));
            let mut lhs = q * &images[i];
            for (j, &c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    lhs = &lhs - &images[j].scale(c);
                }
            }
            for r in 0..dst_dim {
                constraints.insert(lhs.row(r));
                if constraints.is_full() {
                    break 'outer;
                }
            }
        }
    }

    let mut result = Echelon::new(f, src_dim * dst_dim);
    for y in constraints.null_space() {
        let cols: Vec<Vec<Fe>> = images.iter().map(|l| l.mul_vec(&y)).collect();
        let s_on_basis = Matrix::from_columns(f, dst_dim, &cols);
        let s = &s_on_basis * &binv;
        result.insert(s.data());
    }
    result.reduced_basis().into_iter().map(|v| Matrix::from_vec(f, dst_dim, src_dim, v)).collect()
}
