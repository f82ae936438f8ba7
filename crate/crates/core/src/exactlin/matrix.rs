use std::fmt;

use super::scalar::Scalar;

/// Dense column vector.
pub type Vector = Vec<Scalar>;

pub fn zeros(len: usize) -> Vector {
    vec![Scalar::zero(); len]
}

pub fn unit_vector(len: usize, idx: usize) -> Vector {
    let mut v = zeros(len);
    v[idx] = Scalar::one();
    v
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn nonzeros(v: &[Scalar]) -> impl Iterator<Item = (usize, &Scalar)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero())
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// `acc += c * v`.
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        a.add_product(c, x);
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        acc.add_product(x, y);
    }
    acc
}

/// Kronecker product of two vectors, row-major (`a` is the slow index).
pub fn kron(a: &[Scalar], b: &[Scalar]) -> Vector {
    let mut out = zeros(a.len() * b.len());
    for (i, x) in nonzeros(a) {
        for (j, y) in nonzeros(b) {
            out[i * b.len() + j] = x * y;
        }
    }
    out
}

/// Linear combination `Σ coeffs[i] * vectors[i]`.
pub fn combine(coeffs: &[Scalar], vectors: &[Vector], len: usize) -> Vector {
    let mut out = zeros(len);
    for (c, v) in coeffs.iter().zip(vectors) {
        axpy(&mut out, c, v);
    }
    out
}

/// Incrementally maintained reduced row echelon form.
///
/// Rows are kept fully reduced: every pivot column is zero outside its pivot
/// row and every pivot is 1. Zero entries are skipped in the inner loops,
/// which matters because almost every system built in this crate is sparse.
#[derive(Clone, Debug)]
pub struct RowReducer {
    ncols: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(ncols: usize) -> Self {
        RowReducer { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the current rows; the result is zero iff `v` is in
    /// the row span.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (j, x) in nonzeros(row) {
                let delta = &factor * x;
                v[j] -= &delta;
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero(&self.reduce(v))
    }

    /// Add a row. Returns `true` if it increased the rank.
    pub fn push(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ncols, "row length mismatch");
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (j, x) in v.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    let delta = &factor * x;
                    row[j] -= &delta;
                }
            }
        }
        // keep rows ordered by pivot column
        let pos = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(pos, v);
        self.pivots.insert(pos, p);
        true
    }

    /// Basis of `{x : row·x = 0 for every row}`.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = unit_vector(self.ncols, f);
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[f].is_zero() {
                        x[p] = -&row[f];
                    }
                }
                x
            })
            .collect()
    }
}

/// Row-reduced basis of the span of `vectors` (each of length `len`).
pub fn span_basis(vectors: &[Vector], len: usize) -> Vec<Vector> {
    let mut rr = RowReducer::new(len);
    for v in vectors {
        rr.push(v);
    }
    rr.rows
}

pub fn span_reducer(vectors: &[Vector], len: usize) -> RowReducer {
    let mut rr = RowReducer::new(len);
    for v in vectors {
        rr.push(v);
    }
    rr
}

pub fn span_dim(vectors: &[Vector], len: usize) -> usize {
    span_reducer(vectors, len).rank()
}

/// Exact subspace equality of two spans.
pub fn same_span(a: &[Vector], b: &[Vector], len: usize) -> bool {
    let ra = span_reducer(a, len);
    let rb = span_reducer(b, len);
    ra.rank() == rb.rank() && b.iter().all(|v| ra.contains(v))
}

pub fn span_contains(a: &[Vector], b: &[Vector], len: usize) -> bool {
    let ra = span_reducer(a, len);
    b.iter().all(|v| ra.contains(v))
}

/// Coordinates of `v` in terms of `basis` (assumed independent), if `v` lies
/// in their span.
pub fn coordinates(basis: &[Vector], v: &[Scalar]) -> Option<Vector> {
    let m = Matrix::from_columns(v.len(), basis);
    m.solve(v)
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: zeros(rows * cols) }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(ncols: usize, rows: &[Vector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "row length mismatch");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols: ncols, data }
    }

    pub fn from_columns(nrows: usize, cols: &[Vector]) -> Self {
        let mut m = Matrix::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows, "column length mismatch");
            for (i, x) in nonzeros(c) {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let mut out = zeros(self.rows);
        for (j, x) in nonzeros(v) {
            for (i, o) in out.iter_mut().enumerate() {
                o.add_product(self.get(i, j), x);
            }
        }
        out
    }

    /// Row vector times matrix: `vᵀ M`.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.rows, "vector-matrix shape mismatch");
        let mut out = zeros(self.cols);
        for (i, x) in nonzeros(v) {
            axpy(&mut out, x, self.row(i));
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, x) in nonzeros(self.row(i)) {
                let src = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                axpy(dst, x, src);
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: sub(&self.data, &other.data),
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.data)
    }

    fn row_reducer(&self) -> RowReducer {
        let mut rr = RowReducer::new(self.cols);
        for i in 0..self.rows {
            rr.push(self.row(i));
        }
        rr
    }

    pub fn rank(&self) -> usize {
        self.row_reducer().rank()
    }

    /// Basis of the null space `{v : Mv = 0}`; empty iff `M` is injective.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        self.row_reducer().kernel_basis()
    }

    /// Basis of the column space.
    pub fn image_basis(&self) -> Vec<Vector> {
        span_basis(&self.columns(), self.rows)
    }

    /// Some `x` with `Mx = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut rr = RowReducer::new(self.cols + 1);
        for i in 0..self.rows {
            let mut row = self.row(i).to_vec();
            row.push(b[i].clone());
            rr.push(&row);
        }
        if rr.pivots().last() == Some(&self.cols) {
            return None;
        }
        let mut x = zeros(self.cols);
        for (row, &p) in rr.rows().iter().zip(rr.pivots()) {
            x[p] = row[self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut rr = RowReducer::new(2 * n);
        for i in 0..n {
            let mut row = self.row(i).to_vec();
            row.extend(unit_vector(n, i));
            rr.push(&row);
        }
        if rr.rank() < n || rr.pivots().iter().any(|&p| p >= n) {
            return None;
        }
        let rows: Vec<Vector> = rr.rows().iter().map(|r| r[n..].to_vec()).collect();
        Some(Matrix::from_rows(n, &rows))
    }

    /// Stack matrices with equal column counts.
    pub fn vstack(blocks: &[Matrix]) -> Matrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Matrix { rows, cols, data }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        let ncols = rows[0].len();
        let rows: Vec<Vector> =
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from(x)).collect()).collect();
        Matrix::from_rows(ncols, &rows)
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert!(Matrix::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        assert_eq!(Matrix::zeros(2, 2).kernel_basis().len(), 2);
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = m(&[&[1, 1], &[2, 2]]).kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (1, -1)
        assert_eq!(&k[0][0] + &k[0][1], Scalar::zero());
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn gaussian_rank() {
        let i = Scalar::i();
        let mat = Matrix::from_rows(
            2,
            &[vec![Scalar::one(), i.clone()], vec![i.clone(), Scalar::from(-1)]],
        );
        assert_eq!(mat.rank(), 1);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let b = vec![Scalar::from(3), Scalar::ratio(1, 2)];
        assert_eq!(Matrix::identity(2).solve(&b), Some(b.clone()));
        assert_eq!(m(&[&[1, 1], &[1, 1]]).solve(&[Scalar::one(), Scalar::zero()]), None);
    }

    #[test]
    fn image_of_zero_is_empty() {
        assert!(Matrix::zeros(3, 2).image_basis().is_empty());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
