//! Finite-dimensional algebras given by structure constants.
//!
//! Elements are coefficient vectors in the fixed basis, functionals are
//! dual coefficient vectors (`f(eᵢ) = f[i]`), and tensor powers use
//! row-major bases: `eᵢ ⊗ eⱼ` sits at index `i·n + j`.

mod groupoid_algebras;
mod multiplier;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{self, nonzeros, zeros, Matrix, RowReducer, Scalar, Vector};

pub use groupoid_algebras::{function_algebra, groupoid_algebra};
pub use multiplier::{multiplier_algebra, MultiplierAlgebra, MultiplierPair};

/// Sparse product of two basis vectors: `eᵢ eⱼ = Σ c·e_k`.
type Product = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    labels: Vec<String>,
    table: Vec<Product>,
    unit: Option<Vector>,
}

impl Algebra {
    /// Build from sparse structure constants `(i, j, k, c)` meaning
    /// `eᵢ eⱼ ∋ c·e_k`. Repeated triples accumulate. Associativity and the
    /// unit (when given) are verified; non-degeneracy and idempotency are
    /// left to [`Algebra::axiom_report`] since some fixtures violate them on
    /// purpose.
    pub fn new(
        labels: Vec<String>,
        consts: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        unit: Option<Vector>,
    ) -> Result<Algebra> {
        let alg = Algebra::from_consts(labels, consts, unit)?;
        if let Some((i, j, k)) = alg.associativity_witness() {
            return Err(Error::Algebra(format!(
                "not associative on ({}, {}, {})",
                alg.labels[i], alg.labels[j], alg.labels[k]
            )));
        }
        if let Some(u) = &alg.unit {
            if !alg.is_unit(u) {
                return Err(Error::Algebra("declared unit is not a two-sided identity".into()));
            }
        }
        Ok(alg)
    }

    /// Same as [`Algebra::new`] without the associativity scan.
    pub fn from_consts(
        labels: Vec<String>,
        consts: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        unit: Option<Vector>,
    ) -> Result<Algebra> {
        let n = labels.len();
        let mut dense: Vec<Vector> = vec![Vec::new(); n * n];
        for (i, j, k, c) in consts {
            if i >= n || j >= n || k >= n {
                return Err(Error::Algebra(format!("structure constant index ({i}, {j}, {k}) out of range")));
            }
            let slot = &mut dense[i * n + j];
            if slot.is_empty() {
                *slot = zeros(n);
            }
            slot[k] += &c;
        }
        let table = dense
            .into_iter()
            .map(|v| nonzeros(&v).map(|(k, c)| (k, c.clone())).collect())
            .collect();
        if let Some(u) = &unit {
            if u.len() != n {
                return Err(Error::Algebra("unit vector has wrong length".into()));
            }
        }
        Ok(Algebra { labels, table, unit })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }

    /// The unit; panics for non-unital algebras.
    pub fn one(&self) -> &Vector {
        self.unit.as_ref().expect("algebra has no unit")
    }

    pub fn basis(&self, i: usize) -> Vector {
        exactlin::unit_vector(self.dim(), i)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    /// Structure constants as `(i, j, k, c)` in lexicographic order.
    pub fn consts(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.basis_product(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zeros(n);
        for (i, x) in nonzeros(a) {
            for (j, y) in nonzeros(b) {
                let xy = x * y;
                for (k, c) in self.basis_product(i, j) {
                    out[*k].add_product(&xy, c);
                }
            }
        }
        out
    }

    /// Matrix of `b ↦ a b`.
    pub fn left_mul_matrix(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_columns(n, &cols)
    }

    /// Matrix of `b ↦ b a`.
    pub fn right_mul_matrix(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(&self.basis(j), a)).collect();
        Matrix::from_columns(n, &cols)
    }

    pub fn is_unit(&self, u: &[Scalar]) -> bool {
        (0..self.dim()).all(|j| {
            let e = self.basis(j);
            self.mul(u, &e) == e && self.mul(&e, u) == e
        })
    }

    /// Solve for a two-sided identity.
    pub fn find_unit(&self) -> Option<Vector> {
        let n = self.dim();
        // u·e_j = e_j and e_j·u = e_j, linear in u
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for j in 0..n {
            let left = self.right_mul_matrix(&self.basis(j));
            let right = self.left_mul_matrix(&self.basis(j));
            for k in 0..n {
                let target = if k == j { Scalar::one() } else { Scalar::zero() };
                rows.push(left.row(k).to_vec());
                rhs.push(target.clone());
                rows.push(right.row(k).to_vec());
                rhs.push(target);
            }
        }
        let u = Matrix::from_rows(n, &rows).solve(&rhs)?;
        self.is_unit(&u).then_some(u)
    }

    pub fn with_unit(mut self, unit: Option<Vector>) -> Algebra {
        self.unit = unit;
        self
    }

    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            let ei = self.basis(i);
            for j in 0..n {
                let eij = self.mul(&ei, &self.basis(j));
                for k in 0..n {
                    let ek = self.basis(k);
                    let left = self.mul(&eij, &ek);
                    let right = self.mul(&ei, &self.mul(&self.basis(j), &ek));
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// A nonzero `a` with `aA = 0` or `Aa = 0`, if one exists.
    pub fn degeneracy_witness(&self) -> Option<Vector> {
        let n = self.dim();
        // aA = 0: a ↦ (a e_j)_j stacked
        let mut left = RowReducer::new(n);
        let mut right = RowReducer::new(n);
        for j in 0..n {
            let rm = self.right_mul_matrix(&self.basis(j));
            let lm = self.left_mul_matrix(&self.basis(j));
            for k in 0..n {
                left.push(rm.row(k));
                right.push(lm.row(k));
            }
        }
        left.kernel_basis().into_iter().next().or_else(|| right.kernel_basis().into_iter().next())
    }

    /// `A² = A`.
    pub fn is_idempotent(&self) -> bool {
        let n = self.dim();
        let mut rr = RowReducer::new(n);
        for i in 0..n {
            for j in 0..n {
                if rr.rank() == n {
                    return true;
                }
                rr.push(&self.mul(&self.basis(i), &self.basis(j)));
            }
        }
        rr.rank() == n
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Tensor product with basis `eᵢ ⊗ fⱼ` in row-major order.
    pub fn tensor(&self, other: &Algebra) -> Algebra {
        let (n, m) = (self.dim(), other.dim());
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}⊗{b}")))
            .collect();
        let mut consts = Vec::new();
        for i in 0..n {
            for p in 0..n {
                let left = self.basis_product(i, p);
                if left.is_empty() {
                    continue;
                }
                for j in 0..m {
                    for q in 0..m {
                        for (k, c) in left {
                            for (l, d) in other.basis_product(j, q) {
                                consts.push((i * m + j, p * m + q, k * m + l, c * d));
                            }
                        }
                    }
                }
            }
        }
        let unit = match (&self.unit, &other.unit) {
            (Some(u), Some(v)) => Some(exactlin::kron(u, v)),
            _ => None,
        };
        Algebra::from_consts(labels, consts, unit).expect("tensor indices in range")
    }

    /// Product of basis tensors in the `k`-fold tensor power.
    fn tensor_basis_product(&self, k: usize, ix: usize, iy: usize) -> Vec<(usize, Scalar)> {
        let n = self.dim();
        let mut acc = vec![(0usize, Scalar::one())];
        let mut pow = n.pow(k as u32);
        for _ in 0..k {
            pow /= n;
            let a = (ix / pow) % n;
            let b = (iy / pow) % n;
            let prod = self.basis_product(a, b);
            if prod.is_empty() {
                return Vec::new();
            }
            let mut next = Vec::with_capacity(acc.len() * prod.len());
            for (idx, c) in &acc {
                for (r, s) in prod {
                    next.push((idx * n + r, c * s));
                }
            }
            acc = next;
        }
        acc
    }

    /// Product in `A^{⊗k}` without materialising its structure constants.
    pub fn mul_tensor(&self, k: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
        let len = self.dim().pow(k as u32);
        assert_eq!(x.len(), len);
        assert_eq!(y.len(), len);
        let mut out = zeros(len);
        for (ix, a) in nonzeros(x) {
            for (iy, b) in nonzeros(y) {
                let ab = a * b;
                for (idx, c) in self.tensor_basis_product(k, ix, iy) {
                    out[idx].add_product(&ab, &c);
                }
            }
        }
        out
    }

    /// Multiply out all legs of a `k`-fold tensor: `a⊗b⊗c ↦ abc`.
    pub fn multiply_legs(&self, k: usize, x: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zeros(n);
        for (ix, c) in nonzeros(x) {
            let mut digits = vec![0; k];
            let mut rest = ix;
            for d in digits.iter_mut().rev() {
                *d = rest % n;
                rest /= n;
            }
            let mut acc = self.basis(digits[0]);
            for &d in &digits[1..] {
                acc = self.mul(&acc, &self.basis(d));
            }
            exactlin::axpy(&mut out, c, &acc);
        }
        out
    }

    /// Associativity, non-degeneracy and idempotency, plus the unit law
    /// when a unit is present.
    pub fn axiom_report(&self) -> crate::report::Report {
        use crate::report::{Check, Report};
        let mut r = Report::new("algebra");
        let witness = self.associativity_witness();
        r.push(Check::new(
            "associativity",
            "(eᵢeⱼ)e_k = eᵢ(eⱼe_k)",
            witness.is_none(),
            witness.map(|(i, j, k)| {
                serde_json::json!([self.labels[i], self.labels[j], self.labels[k]])
            }),
        ));
        let degenerate = self.degeneracy_witness();
        r.push(Check::new(
            "non_degenerate_product",
            "aA = 0 or Aa = 0 implies a = 0",
            degenerate.is_none(),
            degenerate.map(|v| crate::report::element_json(&v)),
        ));
        r.push(Check::new("idempotent", "A² = A", self.is_idempotent(), None));
        if let Some(u) = &self.unit {
            r.push(Check::new("unit", "1a = a = a1", self.is_unit(u), None));
        }
        r
    }

    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile {
            kind: Some("algebra".into()),
            basis: self.labels.clone(),
            consts: self.consts(),
            unit: self.unit.clone(),
        }
    }

    pub fn from_file(file: &AlgebraFile) -> Result<Algebra> {
        Algebra::new(file.basis.clone(), file.consts.iter().cloned(), file.unit.clone())
    }
}

/// Structure-constant file: `consts` holds sparse `[i, j, k, scalar]`
/// entries, scalars written as `"a/b"` or `"a/b+c/d i"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub basis: Vec<String>,
    pub consts: Vec<(usize, usize, usize, Scalar)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vector>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{cyclic_group, pair_groupoid};

    fn one_dim() -> Algebra {
        Algebra::new(vec!["1".into()], [(0, 0, 0, Scalar::one())], Some(vec![Scalar::one()])).unwrap()
    }

    #[test]
    fn tensor_dimensions() {
        let k = function_algebra(&cyclic_group(2));
        let c = groupoid_algebra(&pair_groupoid(2));
        assert_eq!(k.alg().tensor(c.alg()).dim(), 8);
        assert_eq!(one_dim().tensor(&one_dim()).dim(), 1);
    }

    #[test]
    fn tensor_square_of_function_algebra_is_associative() {
        let k = function_algebra(&cyclic_group(2));
        let t = k.alg().tensor(k.alg());
        assert!(t.associativity_witness().is_none());
        assert!(t.is_unit(t.unit().unwrap()));
        // brute force: (x y) z = x (y z) for every basis triple through mul_tensor
        let n = t.dim();
        for i in 0..n {
            for j in 0..n {
                let a = k.alg().mul_tensor(2, &t.basis(i), &t.basis(j));
                assert_eq!(a, t.mul(&t.basis(i), &t.basis(j)));
            }
        }
    }

    #[test]
    fn non_associative_table_rejected() {
        // e0 e0 = e1, everything else zero except e1 e0 = e0: (e0 e0) e0 = e0 but e0 (e0 e0) = 0
        let consts = [(0, 0, 1, Scalar::one()), (1, 0, 0, Scalar::one())];
        let err = Algebra::new(vec!["a".into(), "b".into()], consts, None).unwrap_err();
        assert!(err.to_string().contains("associative"));
    }

    #[test]
    fn unit_is_found() {
        let c = groupoid_algebra(&pair_groupoid(2));
        let stripped = c.alg().clone().with_unit(None);
        assert_eq!(stripped.find_unit().as_ref(), c.alg().unit());
    }

    #[test]
    fn degenerate_fixture_detected() {
        // e² = e, e x = x, everything else zero: x A = 0
        let consts = [(0, 0, 0, Scalar::one()), (0, 1, 1, Scalar::one())];
        let alg = Algebra::new(vec!["e".into(), "x".into()], consts, None).unwrap();
        assert!(alg.degeneracy_witness().is_some());
        assert!(alg.is_idempotent());
        assert!(alg.find_unit().is_none());
    }
}
