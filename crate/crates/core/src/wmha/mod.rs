//! Weak Hopf structure on a finite-dimensional unital algebra.
//!
//! Δ is stored as the `n²×n` matrix of `a ↦ Δ(a)`, so Sweedler sums are
//! contractions of that matrix. In finite dimension every multiplier
//! expression such as `Δ(a)(1⊗b)` is an honest element of `A⊗A`.

pub mod tensor;
mod verify;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{self, dot, nonzeros, zeros, Matrix, Scalar, Vector};

pub use verify::{canonical_map, distinguished_functionals, g_maps, verify_axioms, CanonicalMap, DistinguishedFunctional, GMap};

#[derive(Clone, Debug)]
pub struct WeakHopf {
    name: String,
    alg: Algebra,
    delta: Matrix,
    delta_sparse: Vec<Vec<(usize, Scalar)>>,
    counit: Vector,
    antipode: Matrix,
    antipode_inv: Option<Matrix>,
    e: Vector,
    a_s: Vec<Vector>,
    a_t: Vec<Vector>,
}

impl WeakHopf {
    /// Assemble a structure from its parts. Only shapes and the unit are
    /// checked here; the axioms are the business of [`verify_axioms`].
    /// `e` defaults to `Δ(1)`.
    pub fn new(
        name: impl Into<String>,
        alg: Algebra,
        delta: Matrix,
        counit: Vector,
        antipode: Matrix,
        e: Option<Vector>,
    ) -> Result<WeakHopf> {
        let n = alg.dim();
        let Some(one) = alg.unit().cloned() else {
            return Err(Error::Structure("weak Hopf structures here require a unital algebra".into()));
        };
        if delta.rows() != n * n || delta.cols() != n {
            return Err(Error::Structure(format!("coproduct must be {}×{n}", n * n)));
        }
        if counit.len() != n {
            return Err(Error::Structure("counit has wrong length".into()));
        }
        if antipode.rows() != n || antipode.cols() != n {
            return Err(Error::Structure("antipode must be square of algebra dimension".into()));
        }
        let e = e.unwrap_or_else(|| delta.mul_vec(&one));
        if e.len() != n * n {
            return Err(Error::Structure("E has wrong length".into()));
        }
        let delta_sparse = (0..n)
            .map(|j| nonzeros(&delta.column(j)).map(|(i, c)| (i, c.clone())).collect())
            .collect();
        let antipode_inv = antipode.inverse();
        let mut w = WeakHopf {
            name: name.into(),
            alg,
            delta,
            delta_sparse,
            counit,
            antipode,
            antipode_inv,
            e,
            a_s: Vec::new(),
            a_t: Vec::new(),
        };
        w.a_s = w.compute_as();
        w.a_t = w.compute_at();
        Ok(w)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> WeakHopf {
        self.name = name.into();
        self
    }

    pub fn alg(&self) -> &Algebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn one(&self) -> &Vector {
        self.alg.one()
    }

    pub fn delta_matrix(&self) -> &Matrix {
        &self.delta
    }

    pub fn antipode_matrix(&self) -> &Matrix {
        &self.antipode
    }

    pub fn antipode_inverse_matrix(&self) -> Option<&Matrix> {
        self.antipode_inv.as_ref()
    }

    pub fn is_regular(&self) -> bool {
        self.antipode_inv.is_some()
    }

    pub fn counit_vector(&self) -> &Vector {
        &self.counit
    }

    pub fn e(&self) -> &Vector {
        &self.e
    }

    /// Basis of `A_s = {y : Δ(y) = E(1⊗y)}`.
    pub fn as_basis(&self) -> &[Vector] {
        &self.a_s
    }

    /// Basis of `A_t = {x : Δ(x) = (x⊗1)E}`.
    pub fn at_basis(&self) -> &[Vector] {
        &self.a_t
    }

    pub fn delta(&self, a: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zeros(n * n);
        for (j, c) in nonzeros(a) {
            for (idx, d) in &self.delta_sparse[j] {
                out[*idx].add_product(c, d);
            }
        }
        out
    }

    /// Sparse `Δ(eᵢ)` as `(i·n + j, coefficient)`.
    pub fn delta_of_basis(&self, i: usize) -> &[(usize, Scalar)] {
        &self.delta_sparse[i]
    }

    pub fn counit(&self, a: &[Scalar]) -> Scalar {
        dot(&self.counit, a)
    }

    pub fn s(&self, a: &[Scalar]) -> Vector {
        self.antipode.mul_vec(a)
    }

    /// Panics on a non-regular structure.
    pub fn s_inv(&self, a: &[Scalar]) -> Vector {
        self.antipode_inv.as_ref().expect("antipode is not invertible").mul_vec(a)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        self.alg.mul(a, b)
    }

    pub fn mul2(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.alg.mul_tensor(2, x, y)
    }

    /// `Σ x_{ij} eᵢ eⱼ`.
    pub fn multiply_out(&self, x: &[Scalar]) -> Vector {
        self.alg.multiply_legs(2, x)
    }

    pub fn one_tensor(&self, x: &[Scalar]) -> Vector {
        tensor::one_tensor(self.one(), x)
    }

    pub fn tensor_one(&self, x: &[Scalar]) -> Vector {
        tensor::tensor_one(x, self.one())
    }

    /// `(Δ⊗id)x` for `x ∈ A⊗A`.
    pub fn delta_left(&self, x: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zeros(n * n * n);
        for (idx, c) in nonzeros(x) {
            let (i, k) = (idx / n, idx % n);
            for (d_idx, d) in &self.delta_sparse[i] {
                out[d_idx * n + k].add_product(c, d);
            }
        }
        out
    }

    /// `(id⊗Δ)x` for `x ∈ A⊗A`.
    pub fn delta_right(&self, x: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zeros(n * n * n);
        for (idx, c) in nonzeros(x) {
            let (i, k) = (idx / n, idx % n);
            for (d_idx, d) in &self.delta_sparse[k] {
                out[i * n * n + d_idx].add_product(c, d);
            }
        }
        out
    }

    /// `Σ f(a₍₁₎, a₍₂₎)` summed over the Sweedler expansion of `Δ(a)`.
    pub fn sweedler<F>(&self, a: &[Scalar], mut f: F) -> Vector
    where
        F: FnMut(&Vector, &Vector) -> Vector,
    {
        let n = self.dim();
        let mut out = zeros(n);
        for (idx, c) in nonzeros(&self.delta(a)) {
            let v = f(&self.alg.basis(idx / n), &self.alg.basis(idx % n));
            exactlin::axpy(&mut out, c, &v);
        }
        out
    }

    /// `ε_t(a) = Σ a₍₁₎S(a₍₂₎)`.
    pub fn eps_t(&self, a: &[Scalar]) -> Vector {
        self.sweedler(a, |x, y| self.mul(x, &self.s(y)))
    }

    /// `ε_s(a) = Σ S(a₍₁₎)a₍₂₎`.
    pub fn eps_s(&self, a: &[Scalar]) -> Vector {
        self.sweedler(a, |x, y| self.mul(&self.s(x), y))
    }

    /// `ε′_s(a) = Σ a₍₂₎S⁻¹(a₍₁₎)`.
    pub fn eps_s_prime(&self, a: &[Scalar]) -> Vector {
        self.sweedler(a, |x, y| self.mul(y, &self.s_inv(x)))
    }

    /// `ε′_t(a) = Σ S⁻¹(a₍₂₎)a₍₁₎`.
    pub fn eps_t_prime(&self, a: &[Scalar]) -> Vector {
        self.sweedler(a, |x, y| self.mul(&self.s_inv(y), x))
    }

    pub fn eps_t_matrix(&self) -> Matrix {
        let n = self.dim();
        Matrix::from_columns(n, &(0..n).map(|i| self.eps_t(&self.alg.basis(i))).collect::<Vec<_>>())
    }

    pub fn eps_s_matrix(&self) -> Matrix {
        let n = self.dim();
        Matrix::from_columns(n, &(0..n).map(|i| self.eps_s(&self.alg.basis(i))).collect::<Vec<_>>())
    }

    /// Kernel of `y ↦ Δ(y) − E(1⊗y)`.
    pub fn compute_as(&self) -> Vec<Vector> {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n)
            .map(|j| {
                let y = self.alg.basis(j);
                exactlin::sub(&self.delta(&y), &self.mul2(&self.e, &self.one_tensor(&y)))
            })
            .collect();
        Matrix::from_columns(n * n, &cols).kernel_basis()
    }

    /// Kernel of `x ↦ Δ(x) − (x⊗1)E`.
    pub fn compute_at(&self) -> Vec<Vector> {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n)
            .map(|j| {
                let x = self.alg.basis(j);
                exactlin::sub(&self.delta(&x), &self.mul2(&self.tensor_one(&x), &self.e))
            })
            .collect();
        Matrix::from_columns(n * n, &cols).kernel_basis()
    }

    /// Replace one entry of Δ; used to build broken fixtures.
    pub fn perturb_delta(&self, row: usize, col: usize, value: Scalar) -> Result<WeakHopf> {
        let mut delta = self.delta.clone();
        delta.set(row, col, value);
        WeakHopf::new(
            self.name.clone(),
            self.alg.clone(),
            delta,
            self.counit.clone(),
            self.antipode.clone(),
            Some(self.e.clone()),
        )
    }

    pub fn to_file(&self) -> WmhaFile {
        let n = self.dim();
        let mut delta = Vec::new();
        for a in 0..n {
            for (idx, c) in &self.delta_sparse[a] {
                delta.push((a, idx / n, idx % n, c.clone()));
            }
        }
        let mut antipode = Vec::new();
        for src in 0..n {
            for dst in 0..n {
                let c = self.antipode.get(dst, src);
                if !c.is_zero() {
                    antipode.push((src, dst, c.clone()));
                }
            }
        }
        let alg = self.alg.to_file();
        WmhaFile {
            kind: Some("wmha".into()),
            name: Some(self.name.clone()),
            basis: alg.basis,
            consts: alg.consts,
            unit: alg.unit,
            delta,
            counit: nonzeros(&self.counit).map(|(i, c)| (i, c.clone())).collect(),
            antipode,
            e: nonzeros(&self.e).map(|(idx, c)| (idx / n, idx % n, c.clone())).collect(),
        }
    }

    pub fn from_file(file: &WmhaFile) -> Result<WeakHopf> {
        let alg = Algebra::new(file.basis.clone(), file.consts.iter().cloned(), file.unit.clone())?;
        let alg = if alg.unit().is_some() {
            alg
        } else {
            let unit = alg.find_unit();
            alg.with_unit(unit)
        };
        let n = alg.dim();
        let range = |what: &str, idx: &[usize]| -> Result<()> {
            if idx.iter().any(|&i| i >= n) {
                return Err(Error::Structure(format!("{what} index out of range in {idx:?}")));
            }
            Ok(())
        };
        let mut delta = Matrix::zeros(n * n, n);
        for (a, i, j, c) in &file.delta {
            range("delta", &[*a, *i, *j])?;
            *delta.get_mut(i * n + j, *a) += c;
        }
        let mut counit = zeros(n);
        for (i, c) in &file.counit {
            range("counit", &[*i])?;
            counit[*i] += c;
        }
        let mut antipode = Matrix::zeros(n, n);
        for (src, dst, c) in &file.antipode {
            range("antipode", &[*src, *dst])?;
            *antipode.get_mut(*dst, *src) += c;
        }
        let e = if file.e.is_empty() {
            None
        } else {
            let mut e = zeros(n * n);
            for (i, j, c) in &file.e {
                range("E", &[*i, *j])?;
                e[i * n + j] += c;
            }
            Some(e)
        };
        WeakHopf::new(file.name.clone().unwrap_or_else(|| "wmha".into()), alg, delta, counit, antipode, e)
    }
}

/// JSON bundle: the algebra file plus sparse `delta` entries `[a, i, j, s]`
/// (`Δ(e_a) ∋ s·eᵢ⊗eⱼ`), `counit` entries `[i, s]`, `antipode` entries
/// `[src, dst, s]` (`S(e_src) ∋ s·e_dst`) and `E` entries `[i, j, s]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WmhaFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub basis: Vec<String>,
    pub consts: Vec<(usize, usize, usize, Scalar)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vector>,
    pub delta: Vec<(usize, usize, usize, Scalar)>,
    pub counit: Vec<(usize, Scalar)>,
    pub antipode: Vec<(usize, usize, Scalar)>,
    #[serde(rename = "E", default)]
    pub e: Vec<(usize, usize, Scalar)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{function_algebra, groupoid_algebra};
    use crate::exactlin::{same_span, span_contains};
    use crate::groupoid::{cyclic_group, pair_groupoid};

    #[test]
    fn eps_t_on_convolution_algebra_is_target_unit() {
        for g in [pair_groupoid(2), pair_groupoid(3), cyclic_group(3)] {
            let w = groupoid_algebra(&g);
            for p in 0..g.num_arrows() {
                let t = g.unit_arrow(g.tgt(p));
                assert_eq!(w.eps_t(&w.alg().basis(p)), w.alg().basis(t));
                let s = g.unit_arrow(g.src(p));
                assert_eq!(w.eps_s(&w.alg().basis(p)), w.alg().basis(s));
            }
        }
    }

    #[test]
    fn eps_t_on_function_algebra_evaluates_at_target() {
        // ε_t(f)(p) = f(pp⁻¹)
        for g in [cyclic_group(2), pair_groupoid(2)] {
            let w = function_algebra(&g);
            for r in 0..g.num_arrows() {
                let f = w.alg().basis(r);
                let image = w.eps_t(&f);
                for p in 0..g.num_arrows() {
                    let pp = g.compose(p, g.inv(p)).unwrap();
                    assert_eq!(image[p], f[pp]);
                }
            }
        }
    }

    #[test]
    fn eps_s_is_idempotent_on_pair_groupoid() {
        let w = groupoid_algebra(&pair_groupoid(2));
        for i in 0..w.dim() {
            let a = w.alg().basis(i);
            assert_eq!(w.eps_s(&w.eps_s(&a)), w.eps_s(&a));
        }
    }

    #[test]
    fn base_algebra_dimensions() {
        let k = function_algebra(&pair_groupoid(2));
        assert_eq!(k.as_basis().len(), 2);
        assert_eq!(k.at_basis().len(), 2);
        let c = groupoid_algebra(&cyclic_group(2));
        assert_eq!(c.at_basis().len(), 1);
    }

    #[test]
    fn base_algebras_commute_and_contain_source_target_images() {
        for w in [function_algebra(&pair_groupoid(2)), groupoid_algebra(&pair_groupoid(3))] {
            let n = w.dim();
            for y in w.as_basis() {
                for x in w.at_basis() {
                    assert_eq!(w.mul(x, y), w.mul(y, x));
                }
            }
            let eps_s: Vec<Vector> = (0..n).map(|i| w.eps_s(&w.alg().basis(i))).collect();
            let eps_t: Vec<Vector> = (0..n).map(|i| w.eps_t(&w.alg().basis(i))).collect();
            assert!(span_contains(w.as_basis(), &eps_s, n));
            assert!(span_contains(w.at_basis(), &eps_t, n));
            let s_as: Vec<Vector> = w.as_basis().iter().map(|y| w.s(y)).collect();
            assert!(same_span(&s_as, w.at_basis(), n));
        }
    }

    #[test]
    fn bundle_round_trip() {
        let w = function_algebra(&pair_groupoid(2));
        let text = serde_json::to_string(&w.to_file()).unwrap();
        let back = WeakHopf::from_file(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.delta_matrix(), w.delta_matrix());
        assert_eq!(back.antipode_matrix(), w.antipode_matrix());
        assert_eq!(back.e(), w.e());
        assert_eq!(back.counit_vector(), w.counit_vector());
        assert_eq!(back.alg(), w.alg());
    }
}
