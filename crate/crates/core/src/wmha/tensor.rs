//! Leg operations on `A⊗A` and `A⊗A⊗A` with row-major bases.

use crate::exactlin::{nonzeros, zeros, Matrix, Scalar, Vector};

/// `eᵢ⊗eⱼ ↦ eⱼ⊗eᵢ`.
pub fn flip(n: usize, x: &[Scalar]) -> Vector {
    let mut out = zeros(n * n);
    for (idx, c) in nonzeros(x) {
        out[(idx % n) * n + idx / n] = c.clone();
    }
    out
}

/// `(f⊗g)x` for linear maps given by matrices; `None` is the identity.
pub fn map_legs(n: usize, f: Option<&Matrix>, g: Option<&Matrix>, x: &[Scalar]) -> Vector {
    let leg = |m: Option<&Matrix>, i: usize| match m {
        Some(m) => m.column(i),
        None => crate::exactlin::unit_vector(n, i),
    };
    let mut out = zeros(n * n);
    for (idx, c) in nonzeros(x) {
        let (u, v) = (leg(f, idx / n), leg(g, idx % n));
        for (i, a) in nonzeros(&u) {
            let ca = c * a;
            for (j, b) in nonzeros(&v) {
                out[i * n + j].add_product(&ca, b);
            }
        }
    }
    out
}

/// `(id⊗f)x` for a functional `f`.
pub fn contract_right(n: usize, x: &[Scalar], f: &[Scalar]) -> Vector {
    let mut out = zeros(n);
    for (idx, c) in nonzeros(x) {
        out[idx / n].add_product(c, &f[idx % n]);
    }
    out
}

/// `(f⊗id)x` for a functional `f`.
pub fn contract_left(n: usize, x: &[Scalar], f: &[Scalar]) -> Vector {
    let mut out = zeros(n);
    for (idx, c) in nonzeros(x) {
        out[idx % n].add_product(c, &f[idx / n]);
    }
    out
}

/// `x` as an `n×n` matrix, rows indexed by the first leg.
pub fn as_matrix(n: usize, x: &[Scalar]) -> Matrix {
    Matrix::from_fn(n, n, |i, j| x[i * n + j].clone())
}

/// Spanning vectors of the first leg (columns) of a tensor.
pub fn first_leg(n: usize, x: &[Scalar]) -> Vec<Vector> {
    as_matrix(n, x).columns().into_iter().filter(|v| !crate::exactlin::is_zero(v)).collect()
}

/// Spanning vectors of the second leg (rows) of a tensor.
pub fn second_leg(n: usize, x: &[Scalar]) -> Vec<Vector> {
    as_matrix(n, x).row_vectors().into_iter().filter(|v| !crate::exactlin::is_zero(v)).collect()
}

pub fn one_tensor(one: &[Scalar], x: &[Scalar]) -> Vector {
    crate::exactlin::kron(one, x)
}

pub fn tensor_one(x: &[Scalar], one: &[Scalar]) -> Vector {
    crate::exactlin::kron(x, one)
}
