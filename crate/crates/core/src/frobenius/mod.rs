//! Frobenius and quasi-Frobenius properties, annihilators, and
//! separability idempotents.

mod separability;

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{self, same_span, Matrix, Scalar, Vector};
use crate::integrals::{f1, is_faithful_cointegral, is_left_cointegral};
use crate::report::{element_json, Report};
use crate::wmha::WeakHopf;

pub use separability::{
    check_separability, delta_h_separability, diagonal_separability, separability_dual_claim, separability_report,
    wmha_from_separability, SeparabilityFile, SeparabilityIdempotent,
};

pub const DEFAULT_SEED: u64 = 20240601;
pub const DEFAULT_RANDOM_IDEALS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnnSide {
    /// `r(I) = {x : Ix = 0}`.
    Right,
    /// `l(J) = {x : xJ = 0}`.
    Left,
}

impl FromStr for AnnSide {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(AnnSide::Left),
            "right" => Ok(AnnSide::Right),
            _ => Err(Error::Parse(format!("annihilator side must be left or right, got {s:?}"))),
        }
    }
}

/// `F(f) = (id⊗S(f))Δ(h)` with `S(f) = f∘S`.
pub fn frobenius_map(w: &WeakHopf, h: &[Scalar]) -> Result<Matrix> {
    if !is_faithful_cointegral(w, h) {
        return Err(Error::Precondition("h is not a faithful left cointegral".into()));
    }
    Ok(f1(w, h).mul(&w.antipode_matrix().transpose()))
}

/// Whether `aF = F∘(f ↦ f(·a))` for every basis `a`.
fn is_module_map(alg: &Algebra, f: &Matrix) -> Option<usize> {
    (0..alg.dim()).find(|&a| {
        let e = alg.basis(a);
        alg.left_mul_matrix(&e).mul(f) != f.mul(&alg.right_mul_matrix(&e).transpose())
    })
}

pub fn frobenius_report(w: &WeakHopf, h: &[Scalar]) -> Result<Report> {
    let f = frobenius_map(w, h)?;
    let n = w.dim();
    let mut r = Report::new(format!("{} is Frobenius", w.name()));
    r.set("rank", f.rank());
    r.check("bijective", "F: A′ → A bijective", f.rank() == n, None);
    let bad = is_module_map(w.alg(), &f);
    r.check(
        "module_map",
        "aF(f) = F(af), (af)(x) = f(xa)",
        bad.is_none(),
        bad.map(|a| json!({ "basis_index": a })),
    );
    Ok(r)
}

/// `r(I)` or `l(J)` for a subspace given by spanning vectors.
pub fn annihilator(alg: &Algebra, sub: &[Vector], side: AnnSide) -> Vec<Vector> {
    let n = alg.dim();
    let blocks: Vec<Matrix> = sub
        .iter()
        .filter(|v| !exactlin::is_zero(v))
        .map(|v| match side {
            AnnSide::Right => alg.left_mul_matrix(v),
            AnnSide::Left => alg.right_mul_matrix(v),
        })
        .collect();
    if blocks.is_empty() {
        return (0..n).map(|i| alg.basis(i)).collect();
    }
    Matrix::vstack(&blocks).kernel_basis()
}

/// `Aa` (left) or `aA` (right), as a basis.
pub fn principal_ideal(alg: &Algebra, a: &[Scalar], left: bool) -> Vec<Vector> {
    let mut gens: Vec<Vector> = (0..alg.dim())
        .map(|b| {
            let e = alg.basis(b);
            if left {
                alg.mul(&e, a)
            } else {
                alg.mul(a, &e)
            }
        })
        .collect();
    if alg.unit().is_some() {
        gens.push(a.to_vec());
    }
    exactlin::span_basis(&gens, alg.dim())
}

/// Basis elements followed by `count` seeded random integer combinations.
pub fn test_elements(n: usize, seed: u64, count: usize) -> Vec<Vector> {
    let mut out: Vec<Vector> = (0..n).map(|i| exactlin::unit_vector(n, i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        out.push((0..n).map(|_| Scalar::from(rng.gen_range(-3i64..=3))).collect());
    }
    out
}

/// `lr(I) = I` for `I = Aa` and `rl(J) = J` for `J = aA` over the basis and
/// seeded random elements; also `r(I) ≠ 0` for proper `I`.
pub fn is_quasi_frobenius(alg: &Algebra, seed: u64, random: usize) -> Report {
    let n = alg.dim();
    let mut r = Report::new("quasi-Frobenius on principal ideals");
    r.set("tested_family", json!({ "basis_elements": n, "random_elements": random, "seed": seed }));
    let elements = test_elements(n, seed, random);
    let mut left_wit = None;
    let mut right_wit = None;
    let mut proper_wit = None;
    for (k, a) in elements.iter().enumerate() {
        let i = principal_ideal(alg, a, true);
        let ri = annihilator(alg, &i, AnnSide::Right);
        if left_wit.is_none() && !same_span(&annihilator(alg, &ri, AnnSide::Left), &i, n) {
            left_wit = Some(json!({ "element_index": k, "element": element_json(a), "ideal_dimension": i.len() }));
        }
        if proper_wit.is_none() && i.len() < n && ri.is_empty() {
            proper_wit = Some(json!({ "element_index": k, "element": element_json(a) }));
        }
        let j = principal_ideal(alg, a, false);
        let lj = annihilator(alg, &j, AnnSide::Left);
        if right_wit.is_none() && !same_span(&annihilator(alg, &lj, AnnSide::Right), &j, n) {
            right_wit = Some(json!({ "element_index": k, "element": element_json(a), "ideal_dimension": j.len() }));
        }
    }
    r.check("lr_I_eq_I", "lr(I) = I for principal left ideals", left_wit.is_none(), left_wit);
    r.check("rl_J_eq_J", "rl(J) = J for principal right ideals", right_wit.is_none(), right_wit);
    r.check(
        "proper_left_ideals_have_right_annihilator",
        "proper left ideal I ⇒ r(I) ≠ 0",
        proper_wit.is_none(),
        proper_wit,
    );
    r
}

/// `F(I^⊥) = r(I)` for a left ideal `I`.
pub fn iperp_equals_r_i(alg: &Algebra, f: &Matrix, ideal: &[Vector]) -> bool {
    let n = alg.dim();
    let perp = if ideal.is_empty() {
        (0..n).map(|i| exactlin::unit_vector(n, i)).collect()
    } else {
        Matrix::from_rows(n, ideal).kernel_basis()
    };
    let image: Vec<Vector> = perp.iter().map(|v| f.mul_vec(v)).collect();
    same_span(&image, &annihilator(alg, ideal, AnnSide::Right), n)
}

/// Basis of `Ker ε`.
pub fn counit_kernel(w: &WeakHopf) -> Vec<Vector> {
    Matrix::from_rows(w.dim(), &[w.counit_vector().clone()]).kernel_basis()
}

fn is_left_ideal(alg: &Algebra, sub: &[Vector]) -> bool {
    let n = alg.dim();
    let products: Vec<Vector> = (0..n)
        .flat_map(|a| sub.iter().map(move |v| alg.mul(&alg.basis(a), v)))
        .collect();
    exactlin::span_contains(sub, &products, n)
}

pub fn lemma_bot_report(w: &WeakHopf, h: &[Scalar], seed: u64, random: usize) -> Result<Report> {
    let f = frobenius_map(w, h)?;
    let alg = w.alg();
    let n = w.dim();
    let mut r = Report::new("F(I^⊥) = r(I)");
    let mut ideals: Vec<(String, Vec<Vector>)> = vec![("zero".into(), Vec::new())];
    let ker = counit_kernel(w);
    if is_left_ideal(alg, &ker) {
        ideals.push(("ker_counit".into(), ker));
    }
    for (k, a) in test_elements(n, seed, random).iter().enumerate() {
        ideals.push((format!("A·element[{k}]"), principal_ideal(alg, a, true)));
    }
    r.set("ideals_tested", ideals.len());
    let bad = ideals.iter().find(|(_, i)| !iperp_equals_r_i(alg, &f, i));
    r.check(
        "iperp_equals_r_i",
        "F(I^⊥) = r(I)",
        bad.is_none(),
        bad.map(|(name, i)| json!({ "ideal": name, "dimension": i.len() })),
    );
    Ok(r)
}

/// A non-zero element of `r(Ker ε)`, when there is one.
pub fn counit_kernel_cointegral(w: &WeakHopf) -> Option<Vector> {
    annihilator(w.alg(), &counit_kernel(w), AnnSide::Right).into_iter().next()
}

pub fn counit_kernel_report(w: &WeakHopf) -> Report {
    let mut r = Report::new("r(Ker ε) and cointegrals");
    let ann = annihilator(w.alg(), &counit_kernel(w), AnnSide::Right);
    r.set("annihilator_dimension", ann.len());
    let bad = ann.iter().position(|h| !is_left_cointegral(w, h));
    r.check(
        "annihilator_is_cointegral",
        "ah = 0 ∀a ∈ Ker ε ⇒ h left cointegral",
        bad.is_none(),
        bad.map(|i| json!({ "basis_index": i, "element": element_json(&ann[i]) })),
    );
    r
}

/// Module isomorphisms `A′ → A`, searched in the solution space of the
/// linear constraints `aF = F(·a)`; returns `F(ε)` from the first invertible
/// candidate.
pub fn frobenius_converse(w: &WeakHopf, seed: u64) -> (Option<Vector>, Report) {
    let alg = w.alg();
    let n = w.dim();
    let nn = n * n;
    let mut rows = Vec::new();
    for a in 0..n {
        let e = alg.basis(a);
        let la = alg.left_mul_matrix(&e);
        let ra = alg.right_mul_matrix(&e);
        for i in 0..n {
            for j in 0..n {
                let mut row = exactlin::zeros(nn);
                for k in 0..n {
                    row[k * n + j] += la.get(i, k);
                    row[i * n + k] -= ra.get(j, k);
                }
                if !exactlin::is_zero(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let solutions = if rows.is_empty() {
        (0..nn).map(|i| exactlin::unit_vector(nn, i)).collect()
    } else {
        Matrix::from_rows(nn, &rows).kernel_basis()
    };
    let mut r = Report::new("Frobenius with ε ∈ Ã ⇒ cointegral");
    r.set("solution_dimension", solutions.len());
    r.set("seed", seed);
    let to_matrix = |v: &Vector| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone());
    let mut candidates = Vec::new();
    if !solutions.is_empty() {
        candidates.push(solutions.iter().fold(exactlin::zeros(nn), |acc, s| exactlin::add(&acc, s)));
        candidates.extend(solutions.iter().cloned());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let c: Vec<Scalar> = solutions.iter().map(|_| Scalar::from(rng.gen_range(-3i64..=3))).collect();
            candidates.push(exactlin::combine(&c, &solutions, nn));
        }
    }
    let found = candidates.iter().map(to_matrix).find(|m| m.rank() == n);
    r.set("isomorphism_found", found.is_some());
    let Some(f) = found else {
        return (None, r);
    };
    let h = f.mul_vec(w.counit_vector());
    r.set("F(eps)", element_json(&h));
    r.check(
        "F_eps_is_cointegral",
        "aF(ε) = ε_t(a)F(ε)",
        !exactlin::is_zero(&h) && is_left_cointegral(w, &h),
        None,
    );
    (Some(h), r)
}
