//! Exhaustive check of the weak multiplier Hopf axioms, plus the canonical
//! maps, the maps `G₁`, `G₂` and the distinguished functionals.

use serde_json::{json, Value};

use super::{tensor, WeakHopf};
use crate::exactlin::{self, nonzeros, same_span, zeros, Matrix, RowReducer, Scalar, Vector};
use crate::report::{element_json, first_mismatch, Check, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalMap {
    T1,
    T2,
    T3,
    T4,
}

impl std::str::FromStr for CanonicalMap {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "T1" => Ok(CanonicalMap::T1),
            "T2" => Ok(CanonicalMap::T2),
            "T3" => Ok(CanonicalMap::T3),
            "T4" => Ok(CanonicalMap::T4),
            _ => Err(crate::error::Error::Parse(format!("unknown canonical map {s:?}"))),
        }
    }
}

/// `n²×n²` matrix of `T₁(a⊗b)=Δ(a)(1⊗b)`, `T₂(a⊗b)=(a⊗1)Δ(b)`,
/// `T₃(a⊗b)=(1⊗b)Δ(a)` or `T₄(a⊗b)=Δ(b)(a⊗1)`.
pub fn canonical_map(w: &WeakHopf, which: CanonicalMap) -> Matrix {
    let n = w.dim();
    let mut cols = Vec::with_capacity(n * n);
    for a in 0..n {
        let ea = w.alg().basis(a);
        for b in 0..n {
            let eb = w.alg().basis(b);
            cols.push(match which {
                CanonicalMap::T1 => w.mul2(&w.delta(&ea), &w.one_tensor(&eb)),
                CanonicalMap::T2 => w.mul2(&w.tensor_one(&ea), &w.delta(&eb)),
                CanonicalMap::T3 => w.mul2(&w.one_tensor(&eb), &w.delta(&ea)),
                CanonicalMap::T4 => w.mul2(&w.delta(&eb), &w.tensor_one(&ea)),
            });
        }
    }
    Matrix::from_columns(n * n, &cols)
}

/// Left and right multiplication by `E` on `A⊗A`, as `n²×n²` matrices.
fn e_multiplication(w: &WeakHopf) -> (Matrix, Matrix) {
    let nn = w.dim() * w.dim();
    let left: Vec<Vector> = (0..nn).map(|i| w.mul2(w.e(), &exactlin::unit_vector(nn, i))).collect();
    let right: Vec<Vector> = (0..nn).map(|i| w.mul2(&exactlin::unit_vector(nn, i), w.e())).collect();
    (Matrix::from_columns(nn, &left), Matrix::from_columns(nn, &right))
}

/// A linear map on `A⊗A` recovered from the pairs it is required to send
/// to each other.
#[derive(Clone, Debug)]
pub struct GMap {
    /// `None` when the prescribed inputs do not span `A⊗A`.
    pub matrix: Option<Matrix>,
    /// Every prescribed pair is respected by `matrix`.
    pub consistent: bool,
    pub witness: Option<Value>,
}

/// Slices of `Δ₁₃(a)(1⊗b⊗c)` and `Δ₁₃(a)(1⊗E)(1⊗b⊗c)` over the third leg.
fn g1_slices(w: &WeakHopf, a: usize, b: usize, c: usize) -> Vec<(Vector, Vector)> {
    let n = w.dim();
    let nn = n * n;
    let bp = |i: usize, j: usize| w.alg().basis_product(i, j);
    let mut x = zeros(nn * n);
    let mut y = zeros(nn * n);
    for (idx, d) in w.delta_of_basis(a) {
        let (i, j) = (idx / n, idx % n);
        for (k, c1) in bp(j, c) {
            x[(i * n + b) * n + k].add_product(d, c1);
        }
        for (pq, e) in nonzeros(w.e()) {
            let (p, q) = (pq / n, pq % n);
            let de = d * e;
            for (m, c1) in bp(p, b) {
                let dec1 = &de * c1;
                for (r, c2) in bp(j, q) {
                    let f = &dec1 * c2;
                    for (k, c3) in bp(*r, c) {
                        y[(i * n + m) * n + k].add_product(&f, c3);
                    }
                }
            }
        }
    }
    (0..n)
        .map(|k| {
            let xs = (0..nn).map(|u| x[u * n + k].clone()).collect();
            let ys = (0..nn).map(|u| y[u * n + k].clone()).collect();
            (xs, ys)
        })
        .collect()
}

/// Slices of `(a⊗b⊗1)Δ₁₃(c)` and `(a⊗b⊗1)(E⊗1)Δ₁₃(c)` over the first leg.
fn g2_slices(w: &WeakHopf, a: usize, b: usize, c: usize) -> Vec<(Vector, Vector)> {
    let n = w.dim();
    let nn = n * n;
    let bp = |i: usize, j: usize| w.alg().basis_product(i, j);
    let mut z = zeros(nn * n);
    let mut v = zeros(nn * n);
    for (idx, d) in w.delta_of_basis(c) {
        let (i, j) = (idx / n, idx % n);
        for (m, c1) in bp(a, i) {
            z[m * nn + b * n + j].add_product(d, c1);
        }
        for (pq, e) in nonzeros(w.e()) {
            let (p, q) = (pq / n, pq % n);
            let de = d * e;
            for (r, c1) in bp(a, p) {
                let dec1 = &de * c1;
                for (m, c2) in bp(*r, i) {
                    let f = &dec1 * c2;
                    for (l, c3) in bp(b, q) {
                        v[m * nn + l * n + j].add_product(&f, c3);
                    }
                }
            }
        }
    }
    (0..n)
        .map(|m| (z[m * nn..(m + 1) * nn].to_vec(), v[m * nn..(m + 1) * nn].to_vec()))
        .collect()
}

fn fit_map<F>(w: &WeakHopf, slices: F) -> GMap
where
    F: Fn(&WeakHopf, usize, usize, usize) -> Vec<(Vector, Vector)>,
{
    let n = w.dim();
    let nn = n * n;
    let mut rr = RowReducer::new(nn);
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    'outer: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for (x, y) in slices(w, a, b, c) {
                    if rr.push(&x) {
                        xs.push(x);
                        ys.push(y);
                        if rr.rank() == nn {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    if rr.rank() < nn {
        return GMap {
            matrix: None,
            consistent: false,
            witness: Some(json!({ "spanned_dimension": rr.rank(), "required": nn })),
        };
    }
    let x_inv = Matrix::from_columns(nn, &xs).inverse().expect("independent columns");
    let g = Matrix::from_columns(nn, &ys).mul(&x_inv);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for (x, y) in slices(w, a, b, c) {
                    if g.mul_vec(&x) != y {
                        return GMap {
                            matrix: Some(g),
                            consistent: false,
                            witness: Some(json!({ "a": a, "b": b, "c": c })),
                        };
                    }
                }
            }
        }
    }
    GMap { matrix: Some(g), consistent: true, witness: None }
}

/// `G₁` and `G₂`, each fitted to its defining identity and then checked on
/// every basis triple.
pub fn g_maps(w: &WeakHopf) -> (GMap, GMap) {
    (fit_map(w, g1_slices), fit_map(w, g2_slices))
}

/// Every identity required of a regular weak multiplier Hopf algebra,
/// evaluated on basis elements.
pub fn verify_axioms(w: &WeakHopf) -> Report {
    let n = w.dim();
    let nn = n * n;
    let alg = w.alg();
    let basis: Vec<Vector> = (0..n).map(|i| alg.basis(i)).collect();
    let mut r = Report::new(format!("axioms of {}", w.name()));
    r.set("dimension", n);
    r.absorb("algebra", alg.axiom_report());

    let pair = |k: usize| (k / n, k % n);
    let hom = first_mismatch(nn, |k| {
        let (i, j) = pair(k);
        (w.delta(&alg.mul(&basis[i], &basis[j])), w.mul2(&w.delta(&basis[i]), &w.delta(&basis[j])))
    });
    r.push(Check::new("delta_homomorphism", "Δ(ab) = Δ(a)Δ(b)", hom.is_none(), hom));

    let coassoc = first_mismatch(n, |i| {
        let d = w.delta(&basis[i]);
        (w.delta_left(&d), w.delta_right(&d))
    });
    r.push(Check::new("coassociativity", "(Δ⊗id)Δ = (id⊗Δ)Δ", coassoc.is_none(), coassoc));

    let counit_left = first_mismatch(nn, |k| {
        let (i, j) = pair(k);
        let t = w.mul2(&w.delta(&basis[i]), &w.one_tensor(&basis[j]));
        (tensor::contract_left(n, &t, w.counit_vector()), alg.mul(&basis[i], &basis[j]))
    });
    r.push(Check::new("counit_left", "(ε⊗id)(Δ(a)(1⊗b)) = ab", counit_left.is_none(), counit_left));
    let counit_right = first_mismatch(nn, |k| {
        let (i, j) = pair(k);
        let t = w.mul2(&w.tensor_one(&basis[j]), &w.delta(&basis[i]));
        (tensor::contract_right(n, &t, w.counit_vector()), alg.mul(&basis[j], &basis[i]))
    });
    r.push(Check::new("counit_right", "(id⊗ε)((c⊗1)Δ(a)) = ca", counit_right.is_none(), counit_right));

    let t1 = canonical_map(w, CanonicalMap::T1);
    let t2 = canonical_map(w, CanonicalMap::T2);
    let left_leg: Vec<Vector> = t1.columns().iter().flat_map(|x| tensor::first_leg(n, x)).collect();
    let right_leg: Vec<Vector> = t2.columns().iter().flat_map(|x| tensor::second_leg(n, x)).collect();
    let (dl, dr) = (exactlin::span_dim(&left_leg, n), exactlin::span_dim(&right_leg, n));
    r.push(Check::new(
        "full_left_leg",
        "smallest V with Δ(A)(1⊗A) ⊂ V⊗A is A",
        dl == n,
        Some(json!({ "leg_dimension": dl })),
    ));
    r.push(Check::new(
        "full_right_leg",
        "smallest W with (A⊗1)Δ(A) ⊂ A⊗W is A",
        dr == n,
        Some(json!({ "leg_dimension": dr })),
    ));

    let e = w.e();
    let e2 = w.mul2(e, e);
    r.push(Check::new(
        "E_idempotent",
        "E² = E",
        &e2 == e,
        Some(element_json(&exactlin::sub(&e2, e))),
    ));
    let d1 = w.delta(w.one());
    r.push(Check::new(
        "E_equals_delta_one",
        "E = Δ(1)",
        &d1 == e,
        Some(element_json(&exactlin::sub(&d1, e))),
    ));

    let (el, er) = e_multiplication(w);
    r.push(Check::new(
        "range_T1",
        "T₁(A⊗A) = E(A⊗A)",
        same_span(&t1.columns(), &el.columns(), nn),
        Some(json!({ "rank_T1": t1.rank(), "rank_E_left": el.rank() })),
    ));
    r.push(Check::new(
        "range_T2",
        "T₂(A⊗A) = (A⊗A)E",
        same_span(&t2.columns(), &er.columns(), nn),
        Some(json!({ "rank_T2": t2.rank(), "rank_E_right": er.rank() })),
    ));

    let one = w.one();
    let e12 = tensor::tensor_one(e, one);
    let e23 = tensor::one_tensor(one, e);
    let lhs = w.delta_right(e);
    let p = alg.mul_tensor(3, &e12, &e23);
    let q = alg.mul_tensor(3, &e23, &e12);
    r.push(Check::new(
        "E_coproduct",
        "(id⊗Δ)E = (E⊗1)(1⊗E)",
        lhs == p,
        Some(element_json(&exactlin::sub(&lhs, &p))),
    ));
    r.push(Check::new(
        "E_legs_commute",
        "(E⊗1)(1⊗E) = (1⊗E)(E⊗1)",
        p == q,
        Some(element_json(&exactlin::sub(&p, &q))),
    ));

    let (g1, g2) = g_maps(w);
    for (name, g, t, formula, kernel_formula) in [
        ("G1", &g1, &t1, "(G₁⊗id)(Δ₁₃(a)(1⊗b⊗c)) = Δ₁₃(a)(1⊗E)(1⊗b⊗c)", "Ker(T₁) = (1−G₁)(A⊗A)"),
        ("G2", &g2, &t2, "(id⊗G₂)((a⊗b⊗1)Δ₁₃(c)) = (a⊗b⊗1)(E⊗1)Δ₁₃(c)", "Ker(T₂) = (1−G₂)(A⊗A)"),
    ] {
        r.push(Check::new(format!("{name}_well_defined"), formula, g.consistent, g.witness.clone()));
        let kernel_ok = match &g.matrix {
            Some(m) => {
                let one_minus = Matrix::identity(nn).sub(m);
                same_span(&t.kernel_basis(), &one_minus.columns(), nn)
            }
            None => false,
        };
        let kernel_name = if name == "G1" { "kernel_T1" } else { "kernel_T2" };
        r.push(Check::new(kernel_name, kernel_formula, kernel_ok, Some(json!({ "kernel_dimension": nn - t.rank() }))));
    }

    let s_images: Vec<Vector> = basis.iter().map(|b| w.s(b)).collect();
    let antipode_left = first_mismatch(n, |i| {
        let d3 = w.delta_left(&w.delta(&basis[i]));
        let mut out = zeros(n);
        for (idx, c) in nonzeros(&d3) {
            let (x, y, z) = (idx / nn, (idx / n) % n, idx % n);
            let v = alg.mul(&alg.mul(&basis[x], &s_images[y]), &basis[z]);
            exactlin::axpy(&mut out, c, &v);
        }
        (out, basis[i].clone())
    });
    r.push(Check::new(
        "antipode_identity_a",
        "Σ a₍₁₎S(a₍₂₎)a₍₃₎ = a",
        antipode_left.is_none(),
        antipode_left,
    ));
    let antipode_right = first_mismatch(n, |i| {
        let d3 = w.delta_left(&w.delta(&basis[i]));
        let mut out = zeros(n);
        for (idx, c) in nonzeros(&d3) {
            let (x, y, z) = (idx / nn, (idx / n) % n, idx % n);
            let v = alg.mul(&alg.mul(&s_images[x], &basis[y]), &s_images[z]);
            exactlin::axpy(&mut out, c, &v);
        }
        (out, s_images[i].clone())
    });
    r.push(Check::new(
        "antipode_identity_S",
        "Σ S(a₍₁₎)a₍₂₎S(a₍₃₎) = S(a)",
        antipode_right.is_none(),
        antipode_right,
    ));
    let anti_hom = first_mismatch(nn, |k| {
        let (i, j) = pair(k);
        (w.s(&alg.mul(&basis[i], &basis[j])), alg.mul(&s_images[j], &s_images[i]))
    });
    r.push(Check::new("antipode_anti_homomorphism", "S(ab) = S(b)S(a)", anti_hom.is_none(), anti_hom));
    r.push(Check::new("regularity", "S is bijective", w.is_regular(), None));
    let s = w.antipode_matrix();
    let anti_co = first_mismatch(n, |i| {
        let d = w.delta(&basis[i]);
        (w.delta(&s_images[i]), tensor::flip(n, &tensor::map_legs(n, Some(s), Some(s), &d)))
    });
    r.push(Check::new(
        "antipode_anti_coalgebra",
        "Δ(S(a)) = τ(S⊗S)Δ(a)",
        anti_co.is_none(),
        anti_co,
    ));
    r
}

/// A functional on a subalgebra, given by its values on a basis of it.
#[derive(Clone, Debug)]
pub struct DistinguishedFunctional {
    pub domain: Vec<Vector>,
    pub values: Vector,
    /// The defining equation has a single solution on `domain`.
    pub unique: bool,
}

impl DistinguishedFunctional {
    /// Value at an element of the domain; `None` outside it.
    pub fn eval(&self, x: &[Scalar]) -> Option<Scalar> {
        if self.domain.is_empty() {
            return exactlin::is_zero(x).then(Scalar::zero);
        }
        let coords = exactlin::coordinates(&self.domain, x)?;
        Some(exactlin::dot(&coords, &self.values))
    }
}

/// `φ_B` on `ε_s(A)` with `(φ_B⊗id)E = 1` and `φ_C` on `ε_t(A)` with
/// `(id⊗φ_C)E = 1`. `None` when the equation has no solution.
pub fn distinguished_functionals(w: &WeakHopf) -> (Option<DistinguishedFunctional>, Option<DistinguishedFunctional>) {
    let n = w.dim();
    let images = |m: Matrix| exactlin::span_basis(&m.columns(), n);
    let e = tensor::as_matrix(n, w.e());
    let solve = |domain: Vec<Vector>, legs: Vec<Vector>| -> Option<DistinguishedFunctional> {
        // legs[j] is the slice of E paired against φ; its coordinates give row j
        let rows = legs
            .iter()
            .map(|v| if domain.is_empty() { exactlin::is_zero(v).then(Vec::new) } else { exactlin::coordinates(&domain, v) })
            .collect::<Option<Vec<_>>>()?;
        let system = Matrix::from_rows(domain.len(), &rows);
        let values = system.solve(w.one())?;
        let unique = system.rank() == domain.len();
        Some(DistinguishedFunctional { domain, values, unique })
    };
    let phi_b = solve(images(w.eps_s_matrix()), e.columns());
    let phi_c = solve(images(w.eps_t_matrix()), e.row_vectors());
    (phi_b, phi_c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{function_algebra, groupoid_algebra};
    use crate::groupoid::{cyclic_group, pair_groupoid};

    #[test]
    fn corpus_samples_pass() {
        for w in [function_algebra(&cyclic_group(2)), groupoid_algebra(&pair_groupoid(3))] {
            verify_axioms(&w).assert_pass();
        }
    }

    #[test]
    fn perturbed_coproduct_fails_coassociativity() {
        let w = function_algebra(&cyclic_group(2));
        let bad = w.perturb_delta(0, 0, Scalar::from(5)).unwrap();
        let report = verify_axioms(&bad);
        assert!(!report.get("coassociativity").unwrap().pass);
    }

    #[test]
    fn t1_on_trivial_algebra_is_identity() {
        let w = function_algebra(&pair_groupoid(1));
        assert_eq!(canonical_map(&w, CanonicalMap::T1), Matrix::identity(1));
    }

    #[test]
    fn rank_t1_matches_left_multiplication_by_e() {
        let w = function_algebra(&pair_groupoid(2));
        let (el, _) = e_multiplication(&w);
        assert_eq!(canonical_map(&w, CanonicalMap::T1).rank(), el.rank());
    }

    #[test]
    fn t4_matches_direct_evaluation() {
        // ℂ(ℤ/2): T₄(λ_p⊗λ_q) = λ_q λ_p ⊗ λ_q
        let w = groupoid_algebra(&cyclic_group(2));
        let t4 = canonical_map(&w, CanonicalMap::T4);
        for p in 0..2 {
            for q in 0..2 {
                let (lp, lq) = (w.alg().basis(p), w.alg().basis(q));
                let direct = exactlin::kron(&w.mul(&lq, &lp), &lq);
                assert_eq!(t4.column(p * 2 + q), direct);
            }
        }
    }

    #[test]
    fn distinguished_functionals_exist() {
        let k = function_algebra(&cyclic_group(2));
        let (phi_b, _) = distinguished_functionals(&k);
        assert!(phi_b.is_some());
        let c = groupoid_algebra(&pair_groupoid(2));
        let (_, phi_c) = distinguished_functionals(&c);
        assert!(phi_c.unwrap().unique);
        let t = function_algebra(&pair_groupoid(1));
        let (phi_b, _) = distinguished_functionals(&t);
        assert_eq!(phi_b.unwrap().eval(t.one()), Some(Scalar::one()));
    }
}
