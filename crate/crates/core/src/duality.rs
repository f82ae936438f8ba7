//! Finite-dimensional dual weak Hopf algebras on the dual basis.
//!
//! The dual of `A` has basis `e^k` with `⟨e_i, e^k⟩ = [i = k]`, product
//! dual to `Δ`, coproduct dual to the product, unit `ε` and counit
//! evaluation at `1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{self, kron, Matrix, Scalar, Vector};
use crate::integrals::{
    classify, cointegral_space, existence_of_integrals, integral_set_faithfulness, integral_space, is_faithful_cointegral,
    is_left_cointegral, is_left_integral, legs_of, Side,
};
use crate::report::{element_json, first_mismatch, Report};
use crate::wmha::{tensor, verify_axioms, WeakHopf};

#[derive(Clone, Debug)]
pub struct DualPair {
    pub primal: WeakHopf,
    pub dual: WeakHopf,
    /// `pairing[(i, k)] = ⟨e_i, e^k⟩`.
    pub pairing: Matrix,
}

/// Dual on the dual basis without precondition checks.
pub fn dualize(w: &WeakHopf) -> Result<WeakHopf> {
    let n = w.dim();
    let labels = w.alg().labels().iter().map(|l| format!("{l}^")).collect();
    let mut consts = Vec::new();
    for k in 0..n {
        for (idx, c) in w.delta_of_basis(k) {
            consts.push((idx / n, idx % n, k, c.clone()));
        }
    }
    let alg = Algebra::from_consts(labels, consts, Some(w.counit_vector().clone()))?;
    let mut delta = Matrix::zeros(n * n, n);
    for i in 0..n {
        for j in 0..n {
            for (k, c) in w.alg().basis_product(i, j) {
                delta.set(i * n + j, *k, c.clone());
            }
        }
    }
    let name = format!("dual({})", w.name());
    WeakHopf::new(name, alg, delta, w.one().clone(), w.antipode_matrix().transpose(), None)
}

/// Dual of a weak Hopf algebra that passes the axiom suite and carries a
/// faithful set of left integrals.
pub fn dual_weak_hopf(w: &WeakHopf) -> Result<DualPair> {
    let axioms = verify_axioms(w);
    if let Some(c) = axioms.first_failure() {
        return Err(Error::Precondition(format!("{} fails {}", w.name(), c.name)));
    }
    let ints = integral_space(w, Side::Left).basis;
    if integral_set_faithfulness(w, &ints) != (true, true) {
        return Err(Error::Precondition(format!("{} has no faithful set of left integrals", w.name())));
    }
    let dual = dualize(w)?;
    let n = w.dim();
    let pairing = Matrix::from_fn(n, n, |i, k| exactlin::dot(&w.alg().basis(i), &dual.alg().basis(k)));
    Ok(DualPair { primal: w.clone(), dual, pairing })
}

/// `⟨a, ω⟩` for `a ∈ A`, `ω ∈ Â`.
pub fn pair(p: &DualPair, a: &[Scalar], omega: &[Scalar]) -> Scalar {
    exactlin::dot(a, &p.pairing.mul_vec(omega))
}

fn pair2(p: &DualPair, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let n = p.primal.dim();
    exactlin::dot(x, &tensor::map_legs(n, Some(&p.pairing), Some(&p.pairing), y))
}

pub fn dual_report(p: &DualPair) -> Report {
    let (w, d) = (&p.primal, &p.dual);
    let n = w.dim();
    let mut r = Report::new(format!("dual of {}", w.name()));
    r.set("dimension", n);
    r.check("pairing_nondegenerate", "⟨·,·⟩ non-degenerate", p.pairing.rank() == n, None);
    let bw: Vec<Vector> = (0..n).map(|i| w.alg().basis(i)).collect();
    let bd: Vec<Vector> = (0..n).map(|i| d.alg().basis(i)).collect();
    let wit = first_mismatch(n * n * n, |t| {
        let (a, i, j) = (t / (n * n), (t / n) % n, t % n);
        (
            vec![pair(p, &bw[a], &d.mul(&bd[i], &bd[j]))],
            vec![pair2(p, &w.delta(&bw[a]), &kron(&bd[i], &bd[j]))],
        )
    });
    r.check("product_adjoint_to_coproduct", "⟨a, ωω′⟩ = ⟨Δ(a), ω⊗ω′⟩", wit.is_none(), wit);
    let wit = first_mismatch(n * n * n, |t| {
        let (i, j, k) = (t / (n * n), (t / n) % n, t % n);
        (
            vec![pair(p, &w.mul(&bw[i], &bw[j]), &bd[k])],
            vec![pair2(p, &kron(&bw[i], &bw[j]), &d.delta(&bd[k]))],
        )
    });
    r.check("coproduct_adjoint_to_product", "⟨ab, ω⟩ = ⟨a⊗b, Δ̂(ω)⟩", wit.is_none(), wit);
    let wit = first_mismatch(n, |a| (vec![pair(p, &bw[a], d.one())], vec![w.counit(&bw[a])]));
    r.check("unit_adjoint_to_counit", "⟨a, 1̂⟩ = ε(a)", wit.is_none(), wit);
    let wit = first_mismatch(n, |k| (vec![pair(p, w.one(), &bd[k])], vec![d.counit(&bd[k])]));
    r.check("counit_adjoint_to_unit", "ε̂(ω) = ⟨1, ω⟩", wit.is_none(), wit);
    let wit = first_mismatch(n * n, |t| {
        let (a, k) = (t / n, t % n);
        (vec![pair(p, &w.s(&bw[a]), &bd[k])], vec![pair(p, &bw[a], &d.s(&bd[k]))])
    });
    r.check("antipode_adjoint", "⟨S(a), ω⟩ = ⟨a, Ŝ(ω)⟩", wit.is_none(), wit);

    let ints = integral_space(w, Side::Left).basis;
    let generators: Vec<Vector> = ints
        .iter()
        .flat_map(|phi| bw.iter().map(move |a| w.alg().right_mul_matrix(a).vec_mul(phi)))
        .collect();
    r.check(
        "dual_generated_by_integrals",
        "Â = span{φ(·a) : φ left integral, a ∈ A}",
        exactlin::span_dim(&generators, n) == n,
        Some(json!({ "span_dimension": exactlin::span_dim(&generators, n) })),
    );
    r.absorb("dual_axioms", verify_axioms(d));
    r
}

/// Structure-preservation checks for a linear map `m: A → B` given on bases.
pub fn check_isomorphism(a: &WeakHopf, b: &WeakHopf, m: &Matrix) -> Report {
    let n = a.dim();
    let mut r = Report::new(format!("{} ≅ {}", a.name(), b.name()));
    r.check(
        "bijective",
        "linear bijection",
        b.dim() == n && m.rows() == n && m.cols() == n && m.rank() == n,
        None,
    );
    if b.dim() != n {
        return r;
    }
    let ba: Vec<Vector> = (0..n).map(|i| a.alg().basis(i)).collect();
    let wit = first_mismatch(n * n, |t| {
        let (x, y) = (&ba[t / n], &ba[t % n]);
        (m.mul_vec(&a.mul(x, y)), b.mul(&m.mul_vec(x), &m.mul_vec(y)))
    });
    r.check("multiplicative", "m(xy) = m(x)m(y)", wit.is_none(), wit);
    r.check("unital", "m(1) = 1", m.mul_vec(a.one()) == *b.one(), None);
    let wit = first_mismatch(n, |i| {
        (tensor::map_legs(n, Some(m), Some(m), &a.delta(&ba[i])), b.delta(&m.mul_vec(&ba[i])))
    });
    r.check("comultiplicative", "(m⊗m)Δ = Δm", wit.is_none(), wit);
    let wit = first_mismatch(n, |i| (vec![a.counit(&ba[i])], vec![b.counit(&m.mul_vec(&ba[i]))]));
    r.check("counital", "ε_B∘m = ε_A", wit.is_none(), wit);
    let wit = first_mismatch(n, |i| (m.mul_vec(&a.s(&ba[i])), b.s(&m.mul_vec(&ba[i]))));
    r.check("antipode", "mS = Sm", wit.is_none(), wit);
    r
}

/// `a ↦ (ω ↦ ω(a))` from `A` to the dual of `Â`, in dual-dual coordinates.
pub fn canonical_evaluation(p: &DualPair, pp: &DualPair) -> Matrix {
    let n = p.primal.dim();
    let ddual: Vec<Vector> = (0..n).map(|k| pp.dual.alg().basis(k)).collect();
    let columns: Vec<Vector> = (0..n)
        .map(|a| {
            let a_vec = p.primal.alg().basis(a);
            let values: Vector = (0..n).map(|k| pair(p, &a_vec, &p.dual.alg().basis(k))).collect();
            let coords = pp.pairing.transpose().solve(&values).expect("pairing is non-degenerate");
            exactlin::combine(&coords, &ddual, n)
        })
        .collect();
    Matrix::from_columns(n, &columns)
}

pub fn double_dual_report(w: &WeakHopf) -> Result<Report> {
    let p = dual_weak_hopf(w)?;
    let pp = dual_weak_hopf(&p.dual)?;
    let ev = canonical_evaluation(&p, &pp);
    let mut r = check_isomorphism(w, &pp.dual, &ev);
    r.title = format!("{} ≅ double dual via evaluation", w.name());
    Ok(r)
}

/// A left cointegral `h` viewed as the functional `ω ↦ ω(h)` on `Â`,
/// together with whether it is a left integral there.
pub fn transfer_cointegral(p: &DualPair, h: &[Scalar]) -> Result<(Vector, bool)> {
    if exactlin::is_zero(h) || !is_left_cointegral(&p.primal, h) {
        return Err(Error::Precondition("not a non-zero left cointegral".into()));
    }
    let functional = p.pairing.vec_mul(h);
    let ok = is_left_integral(&p.dual, &functional);
    Ok((functional, ok))
}

pub fn transfer_report(p: &DualPair) -> Report {
    let hs = cointegral_space(&p.primal, Side::Left).basis;
    let dual_ints = integral_space(&p.dual, Side::Left);
    let mut r = Report::new(format!("cointegrals of {} as integrals on the dual", p.primal.name()));
    let mut images = Vec::new();
    let mut witness = None;
    for (i, h) in hs.iter().enumerate() {
        match transfer_cointegral(p, h) {
            Ok((f, true)) => images.push(f),
            Ok((f, false)) => {
                witness.get_or_insert(json!({ "basis_index": i, "functional": element_json(&f) }));
            }
            Err(e) => {
                witness.get_or_insert(json!({ "basis_index": i, "error": e.to_string() }));
            }
        }
    }
    r.check("left_integrals_on_dual", "h left cointegral ⇒ ⟨·, h⟩ left integral on Â", witness.is_none(), witness);
    r.set("cointegral_dimension", hs.len());
    r.set("dual_left_integral_dimension", dual_ints.dim());
    r.check(
        "dimensions_match",
        "dim H = dim ∫_L(Â)",
        hs.len() == dual_ints.dim() && exactlin::span_contains(&dual_ints.basis, &images, p.primal.dim()),
        Some(json!({ "cointegrals": hs.len(), "dual_integrals": dual_ints.dim() })),
    );
    r
}

/// Left integrals of a compact `A`, read in `Â`, form a faithful set of
/// left cointegrals there.
pub fn compact_implies_dual_discrete(w: &WeakHopf) -> Result<Report> {
    let c = classify(w);
    let mut r = Report::new(format!("{} compact ⇒ dual discrete", w.name()));
    r.check("precondition_compact", "A compact", c.compact, None);
    if !c.compact {
        return Ok(r);
    }
    let p = dual_weak_hopf(w)?;
    let n = w.dim();
    let ints: Vec<Vector> = integral_space(w, Side::Left)
        .basis
        .iter()
        .map(|phi| p.pairing.solve(phi).expect("pairing is non-degenerate"))
        .collect();
    let bad = ints.iter().position(|x| !is_left_cointegral(&p.dual, x));
    r.check(
        "integrals_are_dual_cointegrals",
        "∫_L ⊂ Â consists of left cointegrals",
        bad.is_none(),
        bad.map(|i| json!({ "basis_index": i })),
    );
    let legs = legs_of(&p.dual, &ints);
    r.check(
        "legs_span_dual",
        "both legs of Δ̂(∫_L) are Â",
        legs.left.len() == n && legs.right.len() == n,
        Some(json!({ "left": legs.left.len(), "right": legs.right.len() })),
    );
    r.set("dual_discrete", crate::integrals::is_discrete(&p.dual));
    Ok(r)
}

/// Single faithful integral in a fixed search order: basis sum, basis
/// members, then seeded random combinations.
pub fn find_faithful_integral(w: &WeakHopf) -> Option<Vector> {
    let basis = integral_space(w, Side::Left).basis;
    if basis.is_empty() {
        return None;
    }
    let n = w.dim();
    let mut candidates = vec![basis.iter().fold(exactlin::zeros(n), |acc, v| exactlin::add(&acc, v))];
    candidates.extend(basis.iter().cloned());
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..20 {
        let coeffs: Vec<Scalar> = basis.iter().map(|_| Scalar::from(rng.gen_range(-3i64..=3))).collect();
        candidates.push(exactlin::combine(&coeffs, &basis, n));
    }
    candidates
        .into_iter()
        .find(|phi| integral_set_faithfulness(w, std::slice::from_ref(phi)) == (true, true))
}

/// `ε = φ_h(·h)` lies in `Â` and is its unit; with a single faithful
/// integral `φ`, locates `y ∈ A_s` with `φ_h = φ(·y)`.
pub fn single_faithful_implies_dual_compact(w: &WeakHopf, h: &[Scalar]) -> Result<Report> {
    if !is_faithful_cointegral(w, h) {
        return Err(Error::Precondition("h is not a faithful left cointegral".into()));
    }
    let p = dual_weak_hopf(w)?;
    let (phi_h, _) = existence_of_integrals(w, h)?;
    let n = w.dim();
    let mut r = Report::new(format!("{} single faithful cointegral ⇒ dual compact", w.name()));
    let eps_via = w.alg().right_mul_matrix(h).vec_mul(&phi_h);
    r.check(
        "counit_is_phi_h_dot_h",
        "ε = φ_h(·h) ∈ Â",
        &eps_via == w.counit_vector(),
        Some(json!({ "phi_h(.h)": element_json(&eps_via) })),
    );
    let eps_in_dual = p.pairing.solve(w.counit_vector()).expect("pairing is non-degenerate");
    r.check("dual_unit_is_counit", "1_Â = ε", eps_in_dual == *p.dual.one(), None);
    let dc = classify(&p.dual);
    r.check("dual_compact", "Â compact", dc.compact, Some(json!(dc)));
    match find_faithful_integral(w) {
        Some(phi) => {
            r.set("faithful_integral", element_json(&phi));
            let cols: Vec<Vector> = w
                .as_basis()
                .iter()
                .map(|y| w.alg().right_mul_matrix(y).vec_mul(&phi))
                .collect();
            let m = Matrix::from_columns(n, &cols);
            let y = m.solve(&phi_h).map(|c| exactlin::combine(&c, w.as_basis(), n));
            r.check(
                "phi_h_is_phi_times_y",
                "φ_h(a) = φ(ay) for some y ∈ A_s",
                y.is_some(),
                None,
            );
            if let Some(y) = y {
                r.set("y", element_json(&y));
            }
        }
        None => r.set("faithful_integral", serde_json::Value::Null),
    }
    Ok(r)
}
