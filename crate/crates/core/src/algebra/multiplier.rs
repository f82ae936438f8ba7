//! The multiplier algebra `M(A)` as compatible pairs of left and right
//! actions, solved as one linear system in the matrix entries.

use super::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{self, same_span, zeros, Matrix, RowReducer, Scalar, Vector};

/// A two-sided multiplier `m`: `left` is `b ↦ mb`, `right` is `a ↦ am`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierPair {
    pub left: Matrix,
    pub right: Matrix,
}

impl MultiplierPair {
    /// The multiplier of an element `a ∈ A`.
    pub fn of_element(alg: &Algebra, a: &[Scalar]) -> MultiplierPair {
        MultiplierPair { left: alg.left_mul_matrix(a), right: alg.right_mul_matrix(a) }
    }

    /// `L(ab) = L(a)b`, `R(ab) = aR(b)` and `a L(b) = R(a) b` on basis pairs.
    pub fn is_compatible(&self, alg: &Algebra) -> bool {
        let n = alg.dim();
        for a in 0..n {
            let ea = alg.basis(a);
            for b in 0..n {
                let eb = alg.basis(b);
                let ab = alg.mul(&ea, &eb);
                if self.left.mul_vec(&ab) != alg.mul(&self.left.mul_vec(&ea), &eb) {
                    return false;
                }
                if self.right.mul_vec(&ab) != alg.mul(&ea, &self.right.mul_vec(&eb)) {
                    return false;
                }
                if alg.mul(&ea, &self.left.mul_vec(&eb)) != alg.mul(&self.right.mul_vec(&ea), &eb) {
                    return false;
                }
            }
        }
        true
    }

    fn to_vector(&self) -> Vector {
        let mut v: Vector = (0..self.left.rows()).flat_map(|i| self.left.row(i).to_vec()).collect();
        v.extend((0..self.right.rows()).flat_map(|i| self.right.row(i).to_vec()));
        v
    }

    fn from_vector(n: usize, v: &[Scalar]) -> MultiplierPair {
        let left = Matrix::from_fn(n, n, |i, j| v[i * n + j].clone());
        let right = Matrix::from_fn(n, n, |i, j| v[n * n + i * n + j].clone());
        MultiplierPair { left, right }
    }
}

#[derive(Clone, Debug)]
pub struct MultiplierAlgebra {
    pub basis: Vec<MultiplierPair>,
    /// Images of the basis of `A` under `a ↦ (L_a, R_a)`.
    pub embedding: Vec<MultiplierPair>,
}

impl MultiplierAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn vectors(pairs: &[MultiplierPair]) -> Vec<Vector> {
        pairs.iter().map(MultiplierPair::to_vector).collect()
    }

    pub fn embedding_is_injective(&self, n: usize) -> bool {
        exactlin::span_dim(&Self::vectors(&self.embedding), 2 * n * n) == self.embedding.len()
    }

    /// Whether the image of `A` is all of `M(A)`.
    pub fn embedding_is_surjective(&self, n: usize) -> bool {
        same_span(&Self::vectors(&self.embedding), &Self::vectors(&self.basis), 2 * n * n)
    }
}

/// Basis of `M(A)`. Rejects algebras with a degenerate product, where the
/// compatible pairs no longer form the multiplier algebra.
pub fn multiplier_algebra(alg: &Algebra) -> Result<MultiplierAlgebra> {
    if alg.degeneracy_witness().is_some() {
        return Err(Error::Precondition("multiplier algebra needs a non-degenerate product".into()));
    }
    let n = alg.dim();
    let nn = n * n;
    let l = |i: usize, j: usize| i * n + j;
    let r = |i: usize, j: usize| nn + i * n + j;
    let c = |i: usize, j: usize| alg.basis_product(i, j);

    let mut rr = RowReducer::new(2 * nn);
    for a in 0..n {
        for b in 0..n {
            // component k of L(e_a e_b) - L(e_a) e_b, R(e_a e_b) - e_a R(e_b), e_a L(e_b) - R(e_a) e_b
            let mut eq_l = vec![zeros(2 * nn); n];
            let mut eq_r = vec![zeros(2 * nn); n];
            let mut eq_c = vec![zeros(2 * nn); n];
            for (m, coef) in c(a, b) {
                for k in 0..n {
                    eq_l[k][l(k, *m)] += coef;
                    eq_r[k][r(k, *m)] += coef;
                }
            }
            for i in 0..n {
                for (k, coef) in c(i, b) {
                    eq_l[*k][l(i, a)] -= coef;
                    eq_c[*k][r(i, a)] -= coef;
                }
                for (k, coef) in c(a, i) {
                    eq_r[*k][r(i, b)] -= coef;
                    eq_c[*k][l(i, b)] += coef;
                }
            }
            for row in eq_l.iter().chain(&eq_r).chain(&eq_c) {
                rr.push(row);
            }
        }
    }
    let basis = rr.kernel_basis().iter().map(|v| MultiplierPair::from_vector(n, v)).collect();
    let embedding = (0..n).map(|i| MultiplierPair::of_element(alg, &alg.basis(i))).collect();
    Ok(MultiplierAlgebra { basis, embedding })
}
