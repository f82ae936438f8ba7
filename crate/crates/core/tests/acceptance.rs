//! Acceptance criteria, one line per criterion.
//!
//! Criterion 11 asks that the dual of the `C⊗B` construction carry no
//! cointegral. At finite dimension that dual is a weak Hopf algebra and has
//! a non-zero cointegral, so the criterion is reported as FAIL. The run
//! succeeds only if every other criterion passes and criterion 11 fails in
//! exactly that way.

use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use whkit::algebra::{function_algebra, groupoid_algebra, Algebra, AlgebraFile};
use whkit::duality::{
    check_isomorphism, compact_implies_dual_discrete, dual_weak_hopf, dualize, single_faithful_implies_dual_compact,
    transfer_report,
};
use whkit::exactlin::{same_span, unit_vector, zeros, Matrix, Scalar, Vector};
use whkit::frobenius::{
    check_separability, delta_h_separability, diagonal_separability, frobenius_report, is_quasi_frobenius,
    lemma_bot_report, separability_dual_claim, wmha_from_separability, DEFAULT_RANDOM_IDEALS, DEFAULT_SEED,
};
use whkit::groupoid::{cyclic_group, disjoint_union, pair_groupoid, product, Groupoid};
use whkit::integrals::{
    balanced_injectivity_check, check_collection, cointegral_space, f1, f2, find_faithful_cointegral, gamma,
    integrals_from_cointegral_report, is_discrete, is_left_cointegral, legs_report, single_h_maps, single_h_report,
    six_statements, Side,
};
use whkit::report::Report;
use whkit::wmha::{verify_axioms, WeakHopf};

type Outcome = Result<(), String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn corpus() -> Vec<(&'static str, Groupoid)> {
    let z2 = cyclic_group(2);
    vec![
        ("trivial", pair_groupoid(1)),
        ("Z/2", z2.clone()),
        ("Z/3", cyclic_group(3)),
        ("Z/2+trivial", disjoint_union(&z2, &pair_groupoid(1))),
        ("pair(2)", pair_groupoid(2)),
        ("pair(3)", pair_groupoid(3)),
        ("pair(2)xZ/2", product(&pair_groupoid(2), &z2)),
    ]
}

fn algebras() -> Vec<(String, WeakHopf)> {
    corpus()
        .into_iter()
        .flat_map(|(name, g)| {
            [
                (format!("K({name})"), function_algebra(&g)),
                (format!("C({name})"), groupoid_algebra(&g)),
            ]
        })
        .collect()
}

fn unit_indicator(g: &Groupoid) -> Vector {
    let mut v = zeros(g.num_arrows());
    for u in 0..g.num_units() {
        v[g.unit_arrow(u)] = Scalar::one();
    }
    v
}

fn require(report: Report, context: &str) -> Outcome {
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(format!("{context}: {} ({}) failed", c.name, c.paper_ref)),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    for (name, w) in algebras() {
        require(verify_axioms(&w), &name)?;
    }
    Ok(())
}

/// Cointegral condition for `K(G)` written directly from the groupoid:
/// `δ_a h = ε_t(δ_a) h` with `ε_t(δ_a) = [a unit] Σ_{t(p) = a} δ_p`.
fn function_algebra_cointegral_oracle(g: &Groupoid) -> Vec<Vector> {
    let n = g.num_arrows();
    let mut rows = Vec::new();
    for a in 0..n {
        for j in 0..n {
            let mut row = zeros(n);
            if a == j {
                row[j] += &Scalar::one();
            }
            if g.is_unit_arrow(a) && g.tgt(j) == g.src(a) {
                row[j] -= &Scalar::one();
            }
            rows.push(row);
        }
    }
    // rows are diagonal, so the kernel is spanned by unit vectors of zero rows
    (0..n)
        .filter(|&j| rows.iter().all(|r| r[j].is_zero()))
        .map(|j| unit_vector(n, j))
        .collect()
}

fn criterion_2() -> Outcome {
    for (name, g) in corpus() {
        let w = function_algebra(&g);
        let n = g.num_arrows();
        let space = cointegral_space(&w, Side::Left);
        let indicators: Vec<Vector> = (0..g.num_units()).map(|u| unit_vector(n, g.unit_arrow(u))).collect();
        let oracle = function_algebra_cointegral_oracle(&g);
        ensure(space.dim() == g.num_units(), || format!("K({name}): dimension {} ≠ #units", space.dim()))?;
        ensure(same_span(&space.basis, &indicators, n), || format!("K({name}): not the unit indicators"))?;
        ensure(same_span(&space.basis, &oracle, n), || format!("K({name}): disagrees with oracle"))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for (name, w) in algebras() {
        let n = w.dim();
        let space = cointegral_space(&w, Side::Left);
        for h in &space.basis {
            ensure(six_statements(&w, h) == [true; 6], || format!("{name}: cointegral basis element fails"))?;
        }
        let mut tested = 0;
        let mut attempts = 0;
        while tested < 10 && attempts < 1000 {
            attempts += 1;
            let x: Vector = (0..n).map(|_| Scalar::from(rng.gen_range(-4i64..=4))).collect();
            if space.contains(&x) {
                continue;
            }
            let values = six_statements(&w, &x);
            ensure(values == [false; 6], || format!("{name}: non-cointegral gives {values:?}"))?;
            tested += 1;
        }
        ensure(tested == 10 || n <= 1, || format!("{name}: only {tested} non-cointegrals drawn"))?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for (name, w) in algebras() {
        for h in cointegral_space(&w, Side::Left).basis {
            let g = gamma(&w, &h);
            ensure(is_left_cointegral(&w, &g), || format!("{name}: γ(h) not a cointegral"))?;
            if name.starts_with('K') {
                ensure(g == h, || format!("{name}: γ ≠ id"))?;
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    for (name, w) in algebras() {
        require(balanced_injectivity_check(&w), &name)?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for (name, w) in algebras() {
        ensure(is_discrete(&w), || format!("{name}: not discrete"))?;
        require(legs_report(&w), &name)?;
    }
    Ok(())
}

fn single_h_instance(name: &str, w: &WeakHopf, h: &Vector) -> Outcome {
    let n = w.dim();
    ensure(f1(w, h).rank() == n && f2(w, h).rank() == n, || format!("{name}: F ranks below {n}"))?;
    let s = single_h_maps(w, h).map_err(|e| format!("{name}: {e}"))?;
    require(single_h_report(w, &s), name)?;
    require(check_collection(w, &s), name)
}

fn criterion_7() -> Outcome {
    for k in 1..=3 {
        let g = pair_groupoid(k);
        single_h_instance(&format!("K(pair({k}))"), &function_algebra(&g), &unit_indicator(&g))?;
    }
    for m in 2..=4 {
        let w = groupoid_algebra(&cyclic_group(m));
        let h = vec![Scalar::one(); m];
        single_h_instance(&format!("C(Z/{m})"), &w, &h)?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    for (name, w) in algebras() {
        let h = find_faithful_cointegral(&w).ok_or_else(|| format!("{name}: no faithful cointegral"))?;
        let r = integrals_from_cointegral_report(&w, &h).map_err(|e| format!("{name}: {e}"))?;
        require(r, &name)?;
    }
    Ok(())
}

fn non_qf_fixture() -> Algebra {
    let file: AlgebraFile = serde_json::from_str(include_str!("../fixtures/non_qf_algebra.json")).unwrap();
    Algebra::from_file(&file).unwrap()
}

fn criterion_9() -> Outcome {
    for (name, w) in algebras() {
        let Some(h) = find_faithful_cointegral(&w) else { continue };
        let r = frobenius_report(&w, &h).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.data["rank"] == w.dim(), || format!("{name}: Frobenius map rank"))?;
        require(r, &name)?;
        require(lemma_bot_report(&w, &h, DEFAULT_SEED, DEFAULT_RANDOM_IDEALS).map_err(|e| e.to_string())?, &name)?;
        require(is_quasi_frobenius(w.alg(), DEFAULT_SEED, DEFAULT_RANDOM_IDEALS), &name)?;
    }
    let r = is_quasi_frobenius(&non_qf_fixture(), DEFAULT_SEED, DEFAULT_RANDOM_IDEALS);
    let c = r.first_failure().ok_or("non-QF fixture passed")?;
    ensure(c.witness.is_some(), || "non-QF failure has no witness".into())
}

fn criterion_10() -> Outcome {
    for (name, g) in corpus() {
        let k = function_algebra(&g);
        let p = dual_weak_hopf(&k).map_err(|e| format!("K({name}): {e}"))?;
        let n = g.num_arrows();
        require(check_isomorphism(&p.dual, &groupoid_algebra(&g), &Matrix::identity(n)), name)?;
    }
    for (name, w) in algebras() {
        let p = dual_weak_hopf(&w).map_err(|e| format!("{name}: {e}"))?;
        require(transfer_report(&p), &name)?;
        require(compact_implies_dual_discrete(&w).map_err(|e| e.to_string())?, &name)?;
        let h = find_faithful_cointegral(&w).ok_or_else(|| format!("{name}: no faithful cointegral"))?;
        require(single_faithful_implies_dual_compact(&w, &h).map_err(|e| e.to_string())?, &name)?;
    }
    Ok(())
}

/// Returns the dimension of the dual cointegral space of `C⊗B` after
/// checking the parts that do hold.
fn criterion_11_parts() -> Result<usize, String> {
    for (name, g) in corpus() {
        let w = function_algebra(&g);
        let s = delta_h_separability(&w, &unit_indicator(&g)).map_err(|e| format!("K({name}): {e}"))?;
        require(check_separability(&s), name)?;
    }
    let s = diagonal_separability(2);
    require(check_separability(&s), "C⊗B idempotent")?;
    let w = wmha_from_separability(&s).map_err(|e| e.to_string())?;
    require(verify_axioms(&w), "C⊗B")?;
    let dual = dualize(&w).map_err(|e| e.to_string())?;
    let dim = cointegral_space(&dual, Side::Left).dim();
    let claim = separability_dual_claim(&w).map_err(|e| e.to_string())?;
    ensure(claim.all_pass() == (dim == 0), || "dual claim report inconsistent".into())?;
    Ok(dim)
}

fn criterion_11() -> Outcome {
    let dim = criterion_11_parts()?;
    ensure(dim == 0, || format!("dual of C⊗B has a cointegral space of dimension {dim}"))
}

fn criterion_12() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_whkit");
    let input = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/pair_groupoid_2.json");
    let run = || {
        Command::new(bin)
            .args(["--format", "json", "check-all", "--seed", "7", input])
            .env_remove("WHKIT_SEED")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || "check-all failed".into())?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || "JSON reports differ".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "axiom suite on all corpus algebras", criterion_1),
        (2, "cointegrals of K(G) are the unit indicators", criterion_2),
        (3, "six-way equivalence on cointegrals and seeded non-cointegrals", criterion_3),
        (4, "γ preserves cointegrals, γ = id on K(G)", criterion_4),
        (5, "balanced tensor product injectivity", criterion_5),
        (6, "discreteness, leg and annihilator criteria agree", criterion_6),
        (7, "single faithful cointegral apparatus", criterion_7),
        (8, "existence of integrals and faithfulness of ∫_L, ∫_R", criterion_8),
        (9, "Frobenius, F(I^⊥) = r(I), quasi-Frobenius, non-QF fixture", criterion_9),
        (10, "duality K(G)^ ≅ CG, transfer, compact/discrete", criterion_10),
        (11, "separability idempotents and the C⊗B dual", criterion_11),
        (12, "check-all --seed 7 is byte-identical across runs", criterion_12),
    ];
    let mut unexpected = Vec::new();
    for (id, title, f) in criteria {
        let start = std::time::Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(()) => println!("PASS criterion {id:>2}: {title} ({secs:.2}s)"),
            Err(msg) => println!("FAIL criterion {id:>2}: {title} ({secs:.2}s): {msg}"),
        }
        let expected_failure = id == 11;
        match (outcome, expected_failure) {
            (Ok(()), false) => {}
            (Err(msg), false) => unexpected.push(format!("criterion {id}: {msg}")),
            (Ok(()), true) => unexpected.push("criterion 11 passed; revisit the known failure".into()),
            (Err(_), true) => match criterion_11_parts() {
                Ok(dim) if dim > 0 => println!(
                    "       criterion 11 is unattainable: the C⊗B algebra is finite-dimensional, so its dual has non-zero cointegrals (dimension {dim}); every other part holds"
                ),
                Ok(_) => unexpected.push("criterion 11 failed for an unexpected reason".into()),
                Err(msg) => unexpected.push(format!("criterion 11 part failed: {msg}")),
            },
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected acceptance results:\n  {}", unexpected.join("\n  "));
        std::process::exit(1);
    }
}
