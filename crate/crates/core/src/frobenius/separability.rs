//! Separability idempotents `E ∈ B⊗C` and the weak Hopf algebra `C⊗B`
//! built from one.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::{Algebra, AlgebraFile};
use crate::duality::dualize;
use crate::error::{Error, Result};
use crate::exactlin::{self, kron, Matrix, Scalar, Vector};
use crate::integrals::{cointegral_space, f1, f2, is_faithful_cointegral, Side};
use crate::report::{element_json, first_mismatch, Check, Report};
use crate::wmha::{verify_axioms, WeakHopf};

#[derive(Clone, Debug)]
pub struct SeparabilityIdempotent {
    pub b: Algebra,
    pub c: Algebra,
    /// Element of `B⊗C`, index `i·dim C + j`.
    pub e: Vector,
    /// `B → C`.
    pub s_b: Matrix,
    /// `C → B`.
    pub s_c: Matrix,
    pub phi_b: Vector,
    pub phi_c: Vector,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeparabilityFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(rename = "B")]
    pub b: AlgebraFile,
    #[serde(rename = "C")]
    pub c: AlgebraFile,
    #[serde(rename = "E")]
    pub e: Vec<(usize, usize, Scalar)>,
    #[serde(rename = "S_B")]
    pub s_b: Vec<(usize, usize, Scalar)>,
    #[serde(rename = "S_C")]
    pub s_c: Vec<(usize, usize, Scalar)>,
    #[serde(rename = "phi_B")]
    pub phi_b: Vec<(usize, Scalar)>,
    #[serde(rename = "phi_C")]
    pub phi_c: Vec<(usize, Scalar)>,
}

fn sparse_matrix(rows: usize, cols: usize, entries: &[(usize, usize, Scalar)]) -> Result<Matrix> {
    let mut m = Matrix::zeros(rows, cols);
    for (src, dst, s) in entries {
        if *src >= cols || *dst >= rows {
            return Err(Error::Parse(format!("map entry ({src}, {dst}) out of range")));
        }
        *m.get_mut(*dst, *src) += s;
    }
    Ok(m)
}

fn sparse_vector(len: usize, entries: &[(usize, Scalar)]) -> Result<Vector> {
    let mut v = exactlin::zeros(len);
    for (i, s) in entries {
        *v.get_mut(*i).ok_or_else(|| Error::Parse(format!("functional index {i} out of range")))? += s;
    }
    Ok(v)
}

fn map_entries(m: &Matrix) -> Vec<(usize, usize, Scalar)> {
    let mut out = Vec::new();
    for src in 0..m.cols() {
        for dst in 0..m.rows() {
            let s = m.get(dst, src);
            if !s.is_zero() {
                out.push((src, dst, s.clone()));
            }
        }
    }
    out
}

impl SeparabilityIdempotent {
    pub fn from_file(file: &SeparabilityFile) -> Result<SeparabilityIdempotent> {
        let b = Algebra::from_file(&file.b)?;
        let c = Algebra::from_file(&file.c)?;
        let (db, dc) = (b.dim(), c.dim());
        let mut e = exactlin::zeros(db * dc);
        for (i, j, s) in &file.e {
            if *i >= db || *j >= dc {
                return Err(Error::Parse(format!("E entry ({i}, {j}) out of range")));
            }
            e[i * dc + j] += s;
        }
        Ok(SeparabilityIdempotent {
            s_b: sparse_matrix(dc, db, &file.s_b)?,
            s_c: sparse_matrix(db, dc, &file.s_c)?,
            phi_b: sparse_vector(db, &file.phi_b)?,
            phi_c: sparse_vector(dc, &file.phi_c)?,
            b,
            c,
            e,
        })
    }

    pub fn to_file(&self) -> SeparabilityFile {
        let dc = self.c.dim();
        SeparabilityFile {
            kind: Some("separability".into()),
            b: self.b.to_file(),
            c: self.c.to_file(),
            e: exactlin::nonzeros(&self.e).map(|(idx, s)| (idx / dc, idx % dc, s.clone())).collect(),
            s_b: map_entries(&self.s_b),
            s_c: map_entries(&self.s_c),
            phi_b: exactlin::nonzeros(&self.phi_b).map(|(i, s)| (i, s.clone())).collect(),
            phi_c: exactlin::nonzeros(&self.phi_c).map(|(i, s)| (i, s.clone())).collect(),
        }
    }
}

fn diagonal_algebra(m: usize, prefix: &str) -> Algebra {
    let labels = (0..m).map(|i| format!("{prefix}{}", i + 1)).collect();
    let consts = (0..m).map(|i| (i, i, i, Scalar::one()));
    Algebra::from_consts(labels, consts, Some(vec![Scalar::one(); m])).expect("indices in range")
}

/// `B = C = ℂ^m`, `E = Σ eᵢ⊗eᵢ`, `S_B = S_C = id`, coordinate-sum functionals.
pub fn diagonal_separability(m: usize) -> SeparabilityIdempotent {
    let mut e = exactlin::zeros(m * m);
    for i in 0..m {
        e[i * m + i] = Scalar::one();
    }
    SeparabilityIdempotent {
        b: diagonal_algebra(m, "b"),
        c: diagonal_algebra(m, "c"),
        e,
        s_b: Matrix::identity(m),
        s_c: Matrix::identity(m),
        phi_b: vec![Scalar::one(); m],
        phi_c: vec![Scalar::one(); m],
    }
}

fn legs(x: &[Scalar], db: usize, dc: usize) -> (Vec<Vector>, Vec<Vector>) {
    let m = Matrix::from_fn(db, dc, |i, j| x[i * dc + j].clone());
    (
        m.columns().into_iter().filter(|v| !exactlin::is_zero(v)).collect(),
        m.row_vectors().into_iter().filter(|v| !exactlin::is_zero(v)).collect(),
    )
}

pub fn check_separability(s: &SeparabilityIdempotent) -> Report {
    let (db, dc) = (s.b.dim(), s.c.dim());
    let mut r = Report::new("separability idempotent");
    let shapes = s.e.len() == db * dc
        && (s.s_b.rows(), s.s_b.cols()) == (dc, db)
        && (s.s_c.rows(), s.s_c.cols()) == (db, dc)
        && s.phi_b.len() == db
        && s.phi_c.len() == dc;
    r.check("shapes", "E ∈ B⊗C, S_B: B→C, S_C: C→B", shapes, None);
    let units = s.b.unit().is_some() && s.c.unit().is_some();
    r.check("unital", "B and C unital", units, None);
    if !shapes || !units {
        return r;
    }
    let bc = s.b.tensor(&s.c);
    let (one_b, one_c) = (s.b.one(), s.c.one());
    let e = &s.e;
    r.check("idempotent", "E² = E", bc.mul(e, e) == *e, None);

    let mut left = Vec::new();
    let mut right = Vec::new();
    for j in 0..dc {
        left.extend(legs(&bc.mul(e, &kron(one_b, &s.c.basis(j))), db, dc).0);
    }
    for i in 0..db {
        right.extend(legs(&bc.mul(&kron(&s.b.basis(i), one_c), e), db, dc).1);
    }
    let (ld, rd) = (exactlin::span_dim(&left, db), exactlin::span_dim(&right, dc));
    r.check("full", "left leg = B, right leg = C", ld == db && rd == dc, Some(json!({ "left": ld, "right": rd })));

    let wit = first_mismatch(db, |i| {
        let b = s.b.basis(i);
        (bc.mul(e, &kron(&b, one_c)), bc.mul(e, &kron(one_b, &s.s_b.mul_vec(&b))))
    });
    r.check("S_B_exchange", "E(b⊗1) = E(1⊗S_B(b))", wit.is_none(), wit);
    let wit = first_mismatch(dc, |j| {
        let c = s.c.basis(j);
        (bc.mul(&kron(one_b, &c), e), bc.mul(&kron(&s.s_c.mul_vec(&c), one_c), e))
    });
    r.check("S_C_exchange", "(1⊗c)E = (S_C(c)⊗1)E", wit.is_none(), wit);

    let anti = |alg: &Algebra, target: &Algebra, m: &Matrix| {
        let d = alg.dim();
        first_mismatch(d * d, |t| {
            let (x, y) = (alg.basis(t / d), alg.basis(t % d));
            (m.mul_vec(&alg.mul(&x, &y)), target.mul(&m.mul_vec(&y), &m.mul_vec(&x)))
        })
    };
    let wit = anti(&s.b, &s.c, &s.s_b);
    r.check("S_B_anti_homomorphism", "S_B(bb′) = S_B(b′)S_B(b)", wit.is_none(), wit);
    let wit = anti(&s.c, &s.b, &s.s_c);
    r.check("S_C_anti_homomorphism", "S_C(cc′) = S_C(c′)S_C(c)", wit.is_none(), wit);
    r.check(
        "S_nondegenerate",
        "S_B, S_C injective",
        s.s_b.rank() == db && s.s_c.rank() == dc,
        None,
    );

    let mut via_b = exactlin::zeros(dc);
    let mut via_c = exactlin::zeros(db);
    for (idx, x) in exactlin::nonzeros(e) {
        let (i, j) = (idx / dc, idx % dc);
        via_b[j].add_product(x, &s.phi_b[i]);
        via_c[i].add_product(x, &s.phi_c[j]);
    }
    r.check("phi_B", "(φ_B⊗id)E = 1", via_b == *one_c, Some(element_json(&via_b)));
    r.check("phi_C", "(id⊗φ_C)E = 1", via_c == *one_b, Some(element_json(&via_c)));
    r.push(
        Check::new("regular", "(1⊗c)E, E(b⊗1) ∈ B⊗C", true, None)
            .with_note("automatic for finite-dimensional B and C"),
    );
    r
}

/// `Δ(h)` as a separability idempotent in `A⊗A` with `S_B = S_C = S`.
pub fn delta_h_separability(w: &WeakHopf, h: &[Scalar]) -> Result<SeparabilityIdempotent> {
    if !is_faithful_cointegral(w, h) {
        return Err(Error::Precondition("h is not a faithful left cointegral".into()));
    }
    if w.mul(h, h) != h {
        return Err(Error::Precondition("h² ≠ h".into()));
    }
    if w.eps_t(h) != *w.one() {
        return Err(Error::Precondition("ε_t(h) ≠ 1".into()));
    }
    if w.eps_s(h) != *w.one() {
        return Err(Error::Precondition("ε_s(h) ≠ 1".into()));
    }
    let phi_b = f2(w, h)
        .solve(w.one())
        .ok_or_else(|| Error::Inconsistent("(φ⊗id)Δ(h) = 1 has no solution".into()))?;
    let phi_c = f1(w, h)
        .solve(w.one())
        .ok_or_else(|| Error::Inconsistent("(id⊗φ)Δ(h) = 1 has no solution".into()))?;
    Ok(SeparabilityIdempotent {
        b: w.alg().clone(),
        c: w.alg().clone(),
        e: w.delta(h),
        s_b: w.antipode_matrix().clone(),
        s_c: w.antipode_matrix().clone(),
        phi_b,
        phi_c,
    })
}

/// `A = C⊗B` with `Δ(c⊗b) = c⊗E⊗b`, `ε(c⊗b) = φ_B(S_C(c)b)` and
/// `S(c⊗b) = S_B(b)⊗S_C(c)`.
pub fn wmha_from_separability(s: &SeparabilityIdempotent) -> Result<WeakHopf> {
    let check = check_separability(s);
    if let Some(c) = check.first_failure() {
        return Err(Error::Precondition(format!("separability idempotent fails {}", c.name)));
    }
    let (db, dc) = (s.b.dim(), s.c.dim());
    let n = db * dc;
    let alg = s.c.tensor(&s.b);
    let mut delta = Matrix::zeros(n * n, n);
    for c in 0..dc {
        for b in 0..db {
            for (idx, x) in exactlin::nonzeros(&s.e) {
                let (i, j) = (idx / dc, idx % dc);
                *delta.get_mut((c * db + i) * n + j * db + b, c * db + b) += x;
            }
        }
    }
    let mut counit = exactlin::zeros(n);
    let mut antipode = Matrix::zeros(n, n);
    for c in 0..dc {
        for b in 0..db {
            let sc = s.s_c.column(c);
            counit[c * db + b] = exactlin::dot(&s.phi_b, &s.b.mul(&sc, &s.b.basis(b)));
            let image = kron(&s.s_b.column(b), &sc);
            for (k, x) in exactlin::nonzeros(&image) {
                antipode.set(k, c * db + b, x.clone());
            }
        }
    }
    WeakHopf::new("C⊗B", alg, delta, counit, antipode, None)
}

/// Separability axioms, the `C⊗B` construction with its source/target maps
/// and the cointegral criterion for that algebra.
pub fn separability_report(s: &SeparabilityIdempotent) -> Report {
    let mut r = check_separability(s);
    r.title = "separability idempotent and C⊗B".into();
    let w = match wmha_from_separability(s) {
        Ok(w) => w,
        Err(e) => {
            r.check("construction", "C⊗B weak Hopf algebra", false, Some(json!(e.to_string())));
            return r;
        }
    };
    r.absorb("C⊗B", verify_axioms(&w));
    let (db, dc) = (s.b.dim(), s.c.dim());
    let n = w.dim();
    let wit = first_mismatch(n, |k| {
        let (c, b) = (k / db, k % db);
        let x = w.alg().basis(k);
        let expected = kron(&s.c.mul(&s.c.basis(c), &s.s_b.column(b)), s.b.one());
        (w.eps_t(&x), expected)
    });
    r.check("eps_t_formula", "ε_t(c⊗b) = cS_B(b)⊗1", wit.is_none(), wit);
    let wit = first_mismatch(n, |k| {
        let (c, b) = (k / db, k % db);
        let x = w.alg().basis(k);
        let expected = kron(s.c.one(), &s.b.mul(&s.s_c.column(c), &s.b.basis(b)));
        (w.eps_s(&x), expected)
    });
    r.check("eps_s_formula", "ε_s(c⊗b) = 1⊗S_C(c)b", wit.is_none(), wit);

    let blocks: Vec<Matrix> = (0..dc)
        .flat_map(|c| (0..db).map(move |b| (c, b)))
        .map(|(c, b)| {
            let lhs = w.alg().left_mul_matrix(&kron(&s.c.basis(c), &s.b.basis(b)));
            let shifted = kron(&s.c.mul(&s.c.basis(c), &s.s_b.column(b)), s.b.one());
            lhs.sub(&w.alg().left_mul_matrix(&shifted))
        })
        .collect();
    let criterion = Matrix::vstack(&blocks).kernel_basis();
    let space = cointegral_space(&w, Side::Left).basis;
    r.set("cointegral_dimension", space.len());
    r.check(
        "cointegral_criterion",
        "x cointegral ⇔ (c′⊗b′)x = (c′S_B(b′)⊗1)x",
        exactlin::same_span(&criterion, &space, n),
        Some(json!({ "criterion_dimension": criterion.len(), "cointegral_dimension": space.len() })),
    );
    r
}

/// The claim that the dual of `C⊗B` has no non-zero left cointegral.
pub fn separability_dual_claim(w: &WeakHopf) -> Result<Report> {
    let dual = dualize(w)?;
    let space = cointegral_space(&dual, Side::Left);
    let mut r = Report::new("dual of C⊗B has no cointegral");
    r.set("dual_cointegral_dimension", space.dim());
    let witness = space.basis.first().map(|h| json!({ "dual_cointegral": element_json(h), "dimension": space.dim() }));
    r.push(
        Check::new("dual_has_no_cointegral", "cointegral space of Â is {0}", space.dim() == 0, witness).with_note(
            "finite-dimensional weak Hopf algebras always carry non-zero cointegrals; the witness is one",
        ),
    );
    Ok(r)
}
