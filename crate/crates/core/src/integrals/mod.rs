//! Cointegrals and integrals, solved as kernels of explicit linear systems.
//!
//! The solution spaces include 0; a space of dimension ≥ 1 means the
//! corresponding (co)integrals exist.

mod single;

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::exactlin::{self, same_span, span_contains, Matrix, Scalar, Vector};
use crate::report::{element_json, Report};
use crate::wmha::{tensor, WeakHopf};

pub use single::{check_collection, existence_of_integrals, integrals_from_cointegral_report, single_h_maps, single_h_report, SingleH};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::Parse(format!("side must be left or right, got {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    LeftCointegral,
    RightCointegral,
    LeftIntegral,
    RightIntegral,
}

/// Basis of a solution space: elements for cointegrals, functionals for
/// integrals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    pub kind: SpaceKind,
    pub basis: Vec<Vector>,
}

impl SolutionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        span_contains(&self.basis, &[v.to_vec()], v.len())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "kind": self.kind,
            "dimension": self.dim(),
            "basis": self.basis.iter().map(|v| element_json(v)).collect::<Vec<_>>(),
        })
    }
}

fn side_word(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
    }
}

fn basis(w: &WeakHopf) -> Vec<Vector> {
    (0..w.dim()).map(|i| w.alg().basis(i)).collect()
}

/// `ah = ε_t(a)h` for every basis element `a`.
pub fn is_left_cointegral(w: &WeakHopf, h: &[Scalar]) -> bool {
    basis(w).iter().all(|a| w.mul(a, h) == w.mul(&w.eps_t(a), h))
}

/// `ka = kε_s(a)` for every basis element `a`.
pub fn is_right_cointegral(w: &WeakHopf, k: &[Scalar]) -> bool {
    basis(w).iter().all(|a| w.mul(k, a) == w.mul(k, &w.eps_s(a)))
}

pub fn cointegral_space(w: &WeakHopf, side: Side) -> SolutionSpace {
    let alg = w.alg();
    let blocks: Vec<Matrix> = basis(w)
        .iter()
        .map(|a| match side {
            Side::Left => alg.left_mul_matrix(a).sub(&alg.left_mul_matrix(&w.eps_t(a))),
            Side::Right => alg.right_mul_matrix(a).sub(&alg.right_mul_matrix(&w.eps_s(a))),
        })
        .collect();
    let kind = match side {
        Side::Left => SpaceKind::LeftCointegral,
        Side::Right => SpaceKind::RightCointegral,
    };
    SolutionSpace { kind, basis: Matrix::vstack(&blocks).kernel_basis() }
}

/// Truth values of the six equivalent characterisations of a left
/// cointegral, each quantified over the basis:
/// (1) `ah = ε_t(a)h`, (2) `(1⊗a)Δ(h) = (S(a)⊗1)Δ(h)`, (3) `S(h)a = S(h)ε_s(a)`,
/// (4) `Δ(a)(h⊗1) = E(h⊗a)`, (5) `Δ(a)(1⊗h) = E(a⊗h)`, (6) `S(a)h = ε_s(a)h`.
pub fn six_statements(w: &WeakHopf, h: &[Scalar]) -> [bool; 6] {
    let b = basis(w);
    let dh = w.delta(h);
    let sh = w.s(h);
    let e = w.e();
    [
        is_left_cointegral(w, h),
        b.iter().all(|a| w.mul2(&w.one_tensor(a), &dh) == w.mul2(&w.tensor_one(&w.s(a)), &dh)),
        b.iter().all(|a| w.mul(&sh, a) == w.mul(&sh, &w.eps_s(a))),
        b.iter().all(|a| w.mul2(&w.delta(a), &w.tensor_one(h)) == w.mul2(e, &exactlin::kron(h, a))),
        b.iter().all(|a| w.mul2(&w.delta(a), &w.one_tensor(h)) == w.mul2(e, &exactlin::kron(a, h))),
        b.iter().all(|a| w.mul(&w.s(a), h) == w.mul(&w.eps_s(a), h)),
    ]
}

pub fn check_equivalences(w: &WeakHopf, h: &[Scalar]) -> Report {
    let values = six_statements(w, h);
    let mut r = Report::new("six characterisations of a left cointegral");
    r.set("element", element_json(h));
    r.set("statements", values);
    let agree = values.iter().all(|&v| v == values[0]);
    r.check(
        "statements_agree",
        "ah=ε_t(a)h ⇔ (1⊗a)Δ(h)=(S(a)⊗1)Δ(h) ⇔ S(h)a=S(h)ε_s(a) ⇔ Δ(a)(h⊗1)=E(h⊗a) ⇔ Δ(a)(1⊗h)=E(a⊗h) ⇔ S(a)h=ε_s(a)h",
        agree,
        Some(json!(values)),
    );
    r
}

/// `yh = S(y)h` for all `y ∈ A_s`.
pub fn corollary_ys(w: &WeakHopf, h: &[Scalar]) -> bool {
    w.as_basis().iter().all(|y| w.mul(y, h) == w.mul(&w.s(y), h))
}

/// `A_s h = A_t h` as subspaces.
pub fn as_h_equals_at_h(w: &WeakHopf, h: &[Scalar]) -> bool {
    let left: Vec<Vector> = w.as_basis().iter().map(|y| w.mul(y, h)).collect();
    let right: Vec<Vector> = w.at_basis().iter().map(|x| w.mul(x, h)).collect();
    same_span(&left, &right, w.dim())
}

/// `kx = kS(x)` for all `x ∈ A_t`, for a right cointegral `k`.
pub fn corollary_right(w: &WeakHopf, k: &[Scalar]) -> bool {
    w.at_basis().iter().all(|x| w.mul(k, x) == w.mul(k, &w.s(x)))
}

/// `γ(h) = Σ h₍₁₎S(ε_s(h₍₂₎))`.
pub fn gamma(w: &WeakHopf, h: &[Scalar]) -> Vector {
    w.sweedler(h, |x, y| w.mul(x, &w.s(&w.eps_s(y))))
}

/// Bases of the left and right legs of `Δ(H)` for a set `H`.
#[derive(Clone, Debug)]
pub struct Legs {
    pub left: Vec<Vector>,
    pub right: Vec<Vector>,
}

pub fn legs_of(w: &WeakHopf, hs: &[Vector]) -> Legs {
    let n = w.dim();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for h in hs {
        let dh = w.delta(h);
        for a in basis(w) {
            left.extend(tensor::first_leg(n, &w.mul2(&dh, &w.one_tensor(&a))));
            right.extend(tensor::second_leg(n, &w.mul2(&w.tensor_one(&a), &dh)));
        }
    }
    Legs { left: exactlin::span_basis(&left, n), right: exactlin::span_basis(&right, n) }
}

pub fn legs_of_cointegrals(w: &WeakHopf) -> Legs {
    legs_of(w, &cointegral_space(w, Side::Left).basis)
}

/// Both legs of `Δ(H)` are all of `A`.
pub fn is_discrete(w: &WeakHopf) -> bool {
    let legs = legs_of_cointegrals(w);
    legs.left.len() == w.dim() && legs.right.len() == w.dim()
}

/// Whether `Σ cᵢ bᵢ` with `h·(Σ cᵢ bᵢ) = 0` for every `h` forces `c = 0`.
fn annihilation_is_trivial(w: &WeakHopf, hs: &[Vector], sub: &[Vector]) -> bool {
    if sub.is_empty() {
        return true;
    }
    let blocks: Vec<Matrix> = hs
        .iter()
        .map(|h| Matrix::from_columns(w.dim(), &sub.iter().map(|b| w.mul(h, b)).collect::<Vec<_>>()))
        .collect();
    if blocks.is_empty() {
        return false;
    }
    Matrix::vstack(&blocks).kernel_basis().is_empty()
}

/// Annihilator form of the leg criteria: `(right, left)` where `right` says
/// `y ∈ A_s, hy = 0 ∀h ⇒ y = 0` and `left` says the same for `x ∈ A_t`.
pub fn annihilator_criterion(w: &WeakHopf, hs: &[Vector]) -> (bool, bool) {
    (annihilation_is_trivial(w, hs, w.as_basis()), annihilation_is_trivial(w, hs, w.at_basis()))
}

pub fn legs_report(w: &WeakHopf) -> Report {
    let n = w.dim();
    let hs = cointegral_space(w, Side::Left).basis;
    let legs = legs_of(w, &hs);
    let (right_ann, left_ann) = annihilator_criterion(w, &hs);
    let mut r = Report::new("legs of Δ(H)");
    r.set("left_leg_dimension", legs.left.len());
    r.set("right_leg_dimension", legs.right.len());
    r.set("discrete", legs.left.len() == n && legs.right.len() == n);
    r.check(
        "right_leg_matches_annihilator",
        "right leg of Δ(H) is A ⇔ (y∈A_s, hy=0 ∀h∈H ⇒ y=0)",
        (legs.right.len() == n) == right_ann,
        Some(json!({ "right_leg_dimension": legs.right.len(), "annihilator_trivial": right_ann })),
    );
    r.check(
        "left_leg_matches_annihilator",
        "left leg of Δ(H) is A ⇔ (x∈A_t, hx=0 ∀h∈H ⇒ x=0)",
        (legs.left.len() == n) == left_ann,
        Some(json!({ "left_leg_dimension": legs.left.len(), "annihilator_trivial": left_ann })),
    );
    r
}

/// `f ↦ (id⊗f)Δ(h)` as a matrix on functional coefficients.
pub fn f1(w: &WeakHopf, h: &[Scalar]) -> Matrix {
    tensor::as_matrix(w.dim(), &w.delta(h))
}

/// `f ↦ (f⊗id)Δ(h)`.
pub fn f2(w: &WeakHopf, h: &[Scalar]) -> Matrix {
    f1(w, h).transpose()
}

/// A left cointegral whose maps `F₁`, `F₂` are both injective.
pub fn is_faithful_cointegral(w: &WeakHopf, h: &[Scalar]) -> bool {
    let n = w.dim();
    !exactlin::is_zero(h) && is_left_cointegral(w, h) && f1(w, h).rank() == n && f2(w, h).rank() == n
}

/// First faithful left cointegral in a fixed search order: the sum of the
/// basis of `H`, then each basis member, then seeded random combinations.
pub fn find_faithful_cointegral(w: &WeakHopf) -> Option<Vector> {
    let hs = cointegral_space(w, Side::Left).basis;
    if hs.is_empty() {
        return None;
    }
    let n = w.dim();
    let sum = hs.iter().fold(exactlin::zeros(n), |acc, h| exactlin::add(&acc, h));
    let mut candidates = vec![sum];
    candidates.extend(hs.iter().cloned());
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..20 {
        let coeffs: Vec<Scalar> = hs.iter().map(|_| Scalar::from(rng.gen_range(-3i64..=3))).collect();
        candidates.push(exactlin::combine(&coeffs, &hs, n));
    }
    candidates.into_iter().find(|h| is_faithful_cointegral(w, h))
}

/// Checks that `ω⊗h ↦ (ω⊗id)Δ(h)` is well defined and injective on the
/// quotient of `A′⊗H` by `ω(·S(y))⊗h − ω⊗hS(y)`, `y ∈ A_s`.
pub fn balanced_injectivity_check(w: &WeakHopf) -> Report {
    let n = w.dim();
    let hs = cointegral_space(w, Side::Left).basis;
    let k = hs.len();
    let mut r = Report::new("balanced tensor product A′⊗_{A_s}H");
    r.set("cointegral_dimension", k);
    let width = n * k;
    let mut relations = Vec::new();
    let mut closed = true;
    for y in w.as_basis() {
        let sy = w.s(y);
        let right_sy = w.alg().right_mul_matrix(&sy);
        for (l, h) in hs.iter().enumerate() {
            let Some(coords) = exactlin::coordinates(&hs, &w.mul(h, &sy)) else {
                closed = false;
                continue;
            };
            for i in 0..n {
                let mut rel = exactlin::zeros(width);
                for j in 0..n {
                    rel[j * k + l] += right_sy.get(i, j);
                }
                for (m, c) in coords.iter().enumerate() {
                    rel[i * k + m] -= c;
                }
                relations.push(rel);
            }
        }
    }
    r.check("H_stable_under_S(A_s)", "hS(y) ∈ H for h ∈ H, y ∈ A_s", closed, None);
    let columns: Vec<Vector> = (0..n)
        .flat_map(|j| hs.iter().map(move |h| (j, h)))
        .map(|(j, h)| f1(w, h).row(j).to_vec())
        .collect();
    let phi = Matrix::from_columns(n, &columns);
    let relation_span = exactlin::span_basis(&relations, width);
    let kernel = phi.kernel_basis();
    let quotient_dim = width - relation_span.len();
    r.set("quotient_dimension", quotient_dim);
    r.set("image_rank", phi.rank());
    r.check(
        "well_defined",
        "(ω(·S(y))⊗id)Δ(h) = (ω⊗id)Δ(hS(y))",
        relations.iter().all(|v| exactlin::is_zero(&phi.mul_vec(v))),
        None,
    );
    r.check(
        "injective_on_quotient",
        "ω⊗h ↦ (ω⊗id)Δ(h) injective on A′⊗_{A_s}H",
        span_contains(&relation_span, &kernel, width),
        Some(json!({ "kernel_dimension": kernel.len(), "relation_dimension": relation_span.len() })),
    );
    r
}

/// Rows spanning the annihilator of a subspace.
fn annihilator_rows(sub: &[Vector], n: usize) -> Matrix {
    let anns = Matrix::from_rows(n, sub).kernel_basis();
    Matrix::from_rows(n, &anns)
}

fn contraction(w: &WeakHopf, a: usize, side: Side) -> Matrix {
    let m = tensor::as_matrix(w.dim(), &w.delta(&w.alg().basis(a)));
    match side {
        Side::Left => m,
        Side::Right => m.transpose(),
    }
}

/// Left: `(id⊗φ)Δ(a) ∈ A_t` for all `a`. Right: `(ψ⊗id)Δ(a) ∈ A_s`.
pub fn integral_space(w: &WeakHopf, side: Side) -> SolutionSpace {
    let n = w.dim();
    let target = match side {
        Side::Left => w.at_basis(),
        Side::Right => w.as_basis(),
    };
    let p = annihilator_rows(target, n);
    let blocks: Vec<Matrix> = (0..n).map(|a| p.mul(&contraction(w, a, side))).collect();
    let kind = match side {
        Side::Left => SpaceKind::LeftIntegral,
        Side::Right => SpaceKind::RightIntegral,
    };
    SolutionSpace { kind, basis: Matrix::vstack(&blocks).kernel_basis() }
}

pub fn is_left_integral(w: &WeakHopf, phi: &[Scalar]) -> bool {
    (0..w.dim()).all(|a| span_contains(w.at_basis(), &[contraction(w, a, Side::Left).mul_vec(phi)], w.dim()))
}

pub fn is_right_integral(w: &WeakHopf, psi: &[Scalar]) -> bool {
    (0..w.dim()).all(|a| span_contains(w.as_basis(), &[contraction(w, a, Side::Right).mul_vec(psi)], w.dim()))
}

/// `(direct, via_cointegrals)`: left-integral membership checked on all of
/// `A` and through `(id⊗φ)Δ(h) ∈ A_t` for `h` in the cointegral basis.
pub fn integral_char_via_cointegrals(w: &WeakHopf, phi: &[Scalar]) -> (bool, bool) {
    let hs = cointegral_space(w, Side::Left).basis;
    let via = hs
        .iter()
        .all(|h| span_contains(w.at_basis(), &[f1(w, h).mul_vec(phi)], w.dim()));
    (is_left_integral(w, phi), via)
}

/// `(left_faithful, right_faithful)` for a set of functionals: left means
/// `φ(xa) = 0 ∀φ, a ⇒ x = 0`, right means `φ(ax) = 0 ∀φ, a ⇒ x = 0`.
pub fn integral_set_faithfulness(w: &WeakHopf, functionals: &[Vector]) -> (bool, bool) {
    let n = w.dim();
    if functionals.is_empty() {
        return (n == 0, n == 0);
    }
    let mut left_rows = Vec::new();
    let mut right_rows = Vec::new();
    for a in basis(w) {
        let ra = w.alg().right_mul_matrix(&a);
        let la = w.alg().left_mul_matrix(&a);
        for phi in functionals {
            left_rows.push(ra.vec_mul(phi));
            right_rows.push(la.vec_mul(phi));
        }
    }
    (
        Matrix::from_rows(n, &left_rows).rank() == n,
        Matrix::from_rows(n, &right_rows).rank() == n,
    )
}

/// Membership `h′ ∈ span(H·A_t) ∩ span(H·A_s)` and the identity
/// `(h′⊗1)Δ(h) = (γ(h)⊗S⁻¹(h′))E` over pairs of basis cointegrals.
pub fn uniqueness_props(w: &WeakHopf) -> Report {
    let n = w.dim();
    let hs = cointegral_space(w, Side::Left).basis;
    let mut r = Report::new("uniqueness of cointegrals");
    let legs = legs_of(w, &hs);
    r.check(
        "precondition_right_leg_full",
        "right leg of Δ(H) is A",
        legs.right.len() == n,
        Some(json!({ "right_leg_dimension": legs.right.len() })),
    );
    let h_at: Vec<Vector> = hs.iter().flat_map(|h| w.at_basis().iter().map(|x| w.mul(h, x))).collect();
    let h_as: Vec<Vector> = hs.iter().flat_map(|h| w.as_basis().iter().map(|y| w.mul(h, y))).collect();
    r.check("in_H_At", "h′ ∈ HA_t", span_contains(&h_at, &hs, n), None);
    r.check("in_H_As", "h′ ∈ HA_s", span_contains(&h_as, &hs, n), None);
    let mut witness = None;
    'pairs: for (i, h) in hs.iter().enumerate() {
        let dh = w.delta(h);
        let g = gamma(w, h);
        for (j, hp) in hs.iter().enumerate() {
            let lhs = w.mul2(&w.tensor_one(hp), &dh);
            let rhs = w.mul2(&exactlin::kron(&g, &w.s_inv(hp)), w.e());
            if lhs != rhs {
                witness = Some(json!({ "h": i, "h_prime": j }));
                break 'pairs;
            }
        }
    }
    r.check("h_prime_formula", "(h′⊗1)Δ(h) = (γ(h)⊗S⁻¹(h′))E", witness.is_none(), witness);
    r
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub unital: bool,
    pub faithful_integrals: bool,
    pub compact: bool,
    pub discrete: bool,
    pub note: Option<String>,
}

pub fn classify(w: &WeakHopf) -> Classification {
    let unital = w.alg().unit().is_some();
    let integrals = integral_space(w, Side::Left).basis;
    let (lf, rf) = integral_set_faithfulness(w, &integrals);
    let faithful_integrals = lf && rf;
    let compact = unital && faithful_integrals;
    let discrete = is_discrete(w);
    let note = (compact && discrete).then(|| {
        format!("compact and discrete: a finite-dimensional weak Hopf algebra (dimension {})", w.dim())
    });
    Classification { unital, faithful_integrals, compact, discrete, note }
}

pub fn classify_report(w: &WeakHopf) -> Report {
    let c = classify(w);
    let mut r = Report::new(format!("classification of {}", w.name()));
    r.set("compact", c.compact);
    r.set("discrete", c.discrete);
    r.set("unital", c.unital);
    r.set("faithful_integrals", c.faithful_integrals);
    if let Some(note) = &c.note {
        r.set("note", note);
    }
    r.check(
        "compact_and_discrete_is_finite",
        "compact and discrete ⇒ finite-dimensional",
        !(c.compact && c.discrete) || w.dim() > 0,
        None,
    );
    r
}

/// Cointegral spaces, the six-way equivalence on their basis, the corollary
/// `yh = S(y)h`, and `γ`.
pub fn cointegral_report(w: &WeakHopf, side: Side) -> Report {
    let space = cointegral_space(w, side);
    let mut r = Report::new(format!("{} cointegrals of {}", side_word(side), w.name()));
    r.set("dimension", space.dim());
    r.set("space", space.to_json());
    match side {
        Side::Left => {
            for (i, h) in space.basis.iter().enumerate() {
                let values = six_statements(w, h);
                r.check(
                    &format!("basis[{i}].six_statements"),
                    "all six characterisations hold for a left cointegral",
                    values.iter().all(|&v| v),
                    Some(json!(values)),
                );
                r.check(&format!("basis[{i}].yh_eq_Syh"), "yh = S(y)h for y ∈ A_s", corollary_ys(w, h), None);
                r.check(&format!("basis[{i}].AsH_eq_AtH"), "A_s h = A_t h", as_h_equals_at_h(w, h), None);
                let g = gamma(w, h);
                r.check(
                    &format!("basis[{i}].gamma_is_cointegral"),
                    "γ(h) = Σ h₍₁₎S(ε_s(h₍₂₎)) is a left cointegral",
                    is_left_cointegral(w, &g),
                    Some(element_json(&g)),
                );
                let sh = w.s(h);
                r.check(
                    &format!("basis[{i}].S(h)_right_cointegral"),
                    "h left cointegral ⇔ S(h) right cointegral",
                    is_right_cointegral(w, &sh),
                    None,
                );
            }
        }
        Side::Right => {
            for (i, k) in space.basis.iter().enumerate() {
                r.check(&format!("basis[{i}].kx_eq_kSx"), "kx = kS(x) for x ∈ A_t", corollary_right(w, k), None);
                let shinv = w.s_inv(k);
                r.check(
                    &format!("basis[{i}].Sinv(k)_left_cointegral"),
                    "k right cointegral ⇔ S⁻¹(k) left cointegral",
                    is_left_cointegral(w, &shinv),
                    None,
                );
            }
        }
    }
    r
}

/// Integral spaces with faithfulness and the cointegral criterion.
pub fn integral_report(w: &WeakHopf, side: Side) -> Report {
    let n = w.dim();
    let space = integral_space(w, side);
    let mut r = Report::new(format!("{} integrals of {}", side_word(side), w.name()));
    r.set("dimension", space.dim());
    r.set("space", space.to_json());
    let (lf, rf) = integral_set_faithfulness(w, &space.basis);
    r.set("left_faithful", lf);
    r.set("right_faithful", rf);
    if side == Side::Left && is_discrete(w) {
        let mut witness = None;
        for i in 0..n {
            let phi = exactlin::unit_vector(n, i);
            let (direct, via) = integral_char_via_cointegrals(w, &phi);
            if direct != via {
                witness = Some(json!({ "dual_basis_index": i, "direct": direct, "via_cointegrals": via }));
                break;
            }
        }
        r.check(
            "integral_via_cointegrals",
            "φ left integral ⇔ (id⊗φ)Δ(h) ∈ A_t ∀h ∈ H",
            witness.is_none(),
            witness,
        );
        let spanning_ok = space
            .basis
            .iter()
            .all(|phi| integral_char_via_cointegrals(w, phi) == (true, true));
        r.check(
            "integral_basis_via_cointegrals",
            "integral basis satisfies (id⊗φ)Δ(h) ∈ A_t",
            spanning_ok,
            None,
        );
    }
    r
}

#[cfg(test)]
mod tests;
