//! Input loading and the report suites behind each subcommand.

use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

use crate::algebra::{function_algebra, groupoid_algebra, Algebra, AlgebraFile};
use crate::duality::{
    compact_implies_dual_discrete, double_dual_report, dual_report, dual_weak_hopf, single_faithful_implies_dual_compact,
    transfer_report,
};
use crate::error::{Error, Result};
use crate::frobenius::{
    check_separability, counit_kernel_report, delta_h_separability, frobenius_converse, frobenius_report,
    is_quasi_frobenius, lemma_bot_report, separability_dual_claim, separability_report, wmha_from_separability,
    SeparabilityFile, SeparabilityIdempotent,
};
use crate::groupoid::{Groupoid, GroupoidFile};
use crate::integrals::{
    balanced_injectivity_check, check_collection, classify_report, cointegral_report, find_faithful_cointegral,
    integral_report, integrals_from_cointegral_report, legs_report, single_h_maps, single_h_report, uniqueness_props,
    Side,
};
use crate::report::{element_json, Report};
use crate::wmha::{verify_axioms, WeakHopf, WmhaFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    Groupoid,
    Algebra,
    Wmha,
    Separability,
}

/// Which algebra a groupoid input is turned into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraChoice {
    /// `K(G)`, functions with pointwise product.
    Function,
    /// `ℂG`, convolution.
    Convolution,
}

#[derive(Clone, Debug)]
pub enum Input {
    Groupoid(Groupoid),
    Algebra(Algebra),
    Wmha(WeakHopf),
    Separability(SeparabilityIdempotent),
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub random_ideals: usize,
}

/// Kind from the `kind` field, falling back to the fields present.
pub fn detect_kind(v: &Value) -> Result<InputKind> {
    if let Some(kind) = v.get("kind").and_then(Value::as_str) {
        return match kind {
            "groupoid" => Ok(InputKind::Groupoid),
            "algebra" => Ok(InputKind::Algebra),
            "wmha" => Ok(InputKind::Wmha),
            "separability" => Ok(InputKind::Separability),
            other => Err(Error::Parse(format!("unknown kind {other:?}"))),
        };
    }
    let has = |k: &str| v.get(k).is_some();
    if has("arrows") {
        Ok(InputKind::Groupoid)
    } else if has("delta") {
        Ok(InputKind::Wmha)
    } else if has("B") && has("E") {
        Ok(InputKind::Separability)
    } else if has("consts") {
        Ok(InputKind::Algebra)
    } else {
        Err(Error::Parse("cannot determine input kind; add a \"kind\" field".into()))
    }
}

fn parse_as<T: serde::de::DeserializeOwned>(v: Value) -> Result<T> {
    Ok(serde_json::from_value(v)?)
}

pub fn parse_input(text: &str, kind: Option<InputKind>) -> Result<Input> {
    let v: Value = serde_json::from_str(text)?;
    let kind = match kind {
        Some(k) => k,
        None => detect_kind(&v)?,
    };
    Ok(match kind {
        InputKind::Groupoid => Input::Groupoid(Groupoid::from_file(&parse_as::<GroupoidFile>(v)?)?),
        InputKind::Algebra => Input::Algebra(Algebra::from_file(&parse_as::<AlgebraFile>(v)?)?),
        InputKind::Wmha => Input::Wmha(WeakHopf::from_file(&parse_as::<WmhaFile>(v)?)?),
        InputKind::Separability => {
            Input::Separability(SeparabilityIdempotent::from_file(&parse_as::<SeparabilityFile>(v)?)?)
        }
    })
}

pub fn load(path: &Path, kind: Option<InputKind>) -> Result<Input> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    parse_input(&text, kind).map_err(|e| match e {
        Error::Io { .. } => e,
        other => Error::Parse(format!("{}: {other}", path.display())),
    })
}

pub fn weak_hopf(input: &Input, choice: AlgebraChoice) -> Result<WeakHopf> {
    match input {
        Input::Groupoid(g) => Ok(match choice {
            AlgebraChoice::Function => function_algebra(g),
            AlgebraChoice::Convolution => groupoid_algebra(g),
        }),
        Input::Wmha(w) => Ok(w.clone()),
        Input::Separability(s) => wmha_from_separability(s),
        Input::Algebra(_) => Err(Error::Precondition(
            "a bare algebra has no coalgebra structure; supply a groupoid, wmha or separability input".into(),
        )),
    }
}

fn absorb_result(r: &mut Report, prefix: &str, result: Result<Report>) {
    match result {
        Ok(sub) => r.absorb(prefix, sub),
        Err(e) => r.check(&format!("{prefix}.precondition"), "suite preconditions", false, Some(Value::String(e.to_string()))),
    }
}

pub fn build(input: &Input, choice: AlgebraChoice) -> Result<Value> {
    match input {
        Input::Algebra(a) => Ok(serde_json::to_value(a.to_file())?),
        _ => Ok(serde_json::to_value(weak_hopf(input, choice)?.to_file())?),
    }
}

pub fn verify(input: &Input, choice: AlgebraChoice) -> Result<Report> {
    match input {
        Input::Algebra(a) => Ok(a.axiom_report()),
        _ => Ok(verify_axioms(&weak_hopf(input, choice)?)),
    }
}

pub fn cointegrals(w: &WeakHopf, side: Side) -> Report {
    let mut r = cointegral_report(w, side);
    if side == Side::Left {
        r.absorb("legs", legs_report(w));
        r.absorb("balanced", balanced_injectivity_check(w));
        r.absorb("uniqueness", uniqueness_props(w));
    }
    r
}

pub fn integrals(w: &WeakHopf, side: Side) -> Report {
    let mut r = integral_report(w, side);
    match find_faithful_cointegral(w) {
        Some(h) => {
            r.set("faithful_cointegral", element_json(&h));
            absorb_result(&mut r, "from_cointegral", integrals_from_cointegral_report(w, &h));
        }
        None => r.set("faithful_cointegral", Value::Null),
    }
    r
}

/// Single-cointegral maps and the collection of leg-exchange formulas.
pub fn single_cointegral(w: &WeakHopf) -> Report {
    let mut r = Report::new(format!("faithful cointegral of {}", w.name()));
    let Some(h) = find_faithful_cointegral(w) else {
        r.set("faithful_cointegral", Value::Null);
        return r;
    };
    r.set("faithful_cointegral", element_json(&h));
    match single_h_maps(w, &h) {
        Ok(s) => {
            r.absorb("maps", single_h_report(w, &s));
            r.absorb("collection", check_collection(w, &s));
        }
        Err(e) => r.check("maps.precondition", "h faithful", false, Some(Value::String(e.to_string()))),
    }
    r
}

pub fn dual(input: &Input, choice: AlgebraChoice) -> Result<Report> {
    let w = weak_hopf(input, choice)?;
    let p = dual_weak_hopf(&w)?;
    let mut r = Report::new(format!("dual of {}", w.name()));
    r.set("bundle", p.dual.to_file());
    r.absorb("structure", dual_report(&p));
    r.absorb("transfer", transfer_report(&p));
    absorb_result(&mut r, "double_dual", double_dual_report(&w));
    absorb_result(&mut r, "compact", compact_implies_dual_discrete(&w));
    if let Some(h) = find_faithful_cointegral(&w) {
        absorb_result(&mut r, "single_faithful", single_faithful_implies_dual_compact(&w, &h));
    }
    if matches!(input, Input::Separability(_)) {
        absorb_result(&mut r, "separability_dual", separability_dual_claim(&w));
    }
    Ok(r)
}

fn frobenius_for(w: &WeakHopf, opts: SuiteOptions) -> Report {
    let mut r = Report::new(format!("Frobenius properties of {}", w.name()));
    r.absorb("quasi_frobenius", is_quasi_frobenius(w.alg(), opts.seed, opts.random_ideals));
    r.absorb("counit_kernel", counit_kernel_report(w));
    let (_, conv) = frobenius_converse(w, opts.seed);
    r.absorb("converse", conv);
    let Some(h) = find_faithful_cointegral(w) else {
        r.set("faithful_cointegral", Value::Null);
        return r;
    };
    r.set("faithful_cointegral", element_json(&h));
    absorb_result(&mut r, "frobenius_map", frobenius_report(w, &h));
    absorb_result(&mut r, "lemma_bot", lemma_bot_report(w, &h, opts.seed, opts.random_ideals));
    match delta_h_separability(w, &h) {
        Ok(s) => r.absorb("delta_h_separability", check_separability(&s)),
        Err(e) => r.set("delta_h_separability", format!("not applicable: {e}")),
    }
    r
}

pub fn frobenius(input: &Input, choice: AlgebraChoice, opts: SuiteOptions) -> Result<Report> {
    match input {
        Input::Algebra(a) => {
            let mut r = Report::new("Frobenius properties of an algebra");
            r.absorb("quasi_frobenius", is_quasi_frobenius(a, opts.seed, opts.random_ideals));
            Ok(r)
        }
        Input::Separability(s) => {
            let mut r = Report::new("separability idempotent");
            r.absorb("separability", separability_report(s));
            if let Ok(w) = wmha_from_separability(s) {
                r.absorb("C⊗B", frobenius_for(&w, opts));
            }
            Ok(r)
        }
        _ => Ok(frobenius_for(&weak_hopf(input, choice)?, opts)),
    }
}

/// Axioms, then cointegrals, integrals, duality and Frobenius suites; stops
/// after the axioms if they fail.
pub fn check_all(input: &Input, choice: AlgebraChoice, opts: SuiteOptions) -> Result<Report> {
    if let Input::Algebra(a) = input {
        let mut r = Report::new("check-all (algebra)");
        r.absorb("algebra", a.axiom_report());
        if r.all_pass() {
            r.absorb("quasi_frobenius", is_quasi_frobenius(a, opts.seed, opts.random_ideals));
        }
        return Ok(r);
    }
    let w = weak_hopf(input, choice)?;
    let mut r = Report::new(format!("check-all: {}", w.name()));
    r.set("dimension", w.dim());
    r.set("seed", opts.seed);
    r.absorb("axioms", verify_axioms(&w));
    if !r.all_pass() {
        r.set("short_circuit", "axiom failure; later suites skipped");
        return Ok(r);
    }
    r.absorb("cointegrals_left", cointegrals(&w, Side::Left));
    r.absorb("cointegrals_right", cointegrals(&w, Side::Right));
    r.absorb("integrals_left", integrals(&w, Side::Left));
    r.absorb("integrals_right", integral_report(&w, Side::Right));
    r.absorb("single_cointegral", single_cointegral(&w));
    r.absorb("classify", classify_report(&w));
    absorb_result(&mut r, "dual", dual(input, choice));
    absorb_result(&mut r, "frobenius", frobenius(input, choice, opts));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{cyclic_group, pair_groupoid};

    fn groupoid_input(g: &Groupoid) -> Input {
        let text = serde_json::to_string(&g.to_file()).unwrap();
        parse_input(&text, None).unwrap()
    }

    const OPTS: SuiteOptions = SuiteOptions { seed: 7, random_ideals: 4 };

    #[test]
    fn detects_kinds() {
        let g = serde_json::to_value(pair_groupoid(2).to_file()).unwrap();
        assert_eq!(detect_kind(&g).unwrap(), InputKind::Groupoid);
        let w = serde_json::to_value(function_algebra(&pair_groupoid(2)).to_file()).unwrap();
        assert_eq!(detect_kind(&w).unwrap(), InputKind::Wmha);
        let a = serde_json::json!({ "basis": ["e"], "consts": [[0, 0, 0, 1]] });
        assert_eq!(detect_kind(&a).unwrap(), InputKind::Algebra);
        assert!(detect_kind(&serde_json::json!({ "kind": "monoid" })).is_err());
    }

    #[test]
    fn build_round_trips() {
        let input = groupoid_input(&cyclic_group(2));
        let bundle = build(&input, AlgebraChoice::Convolution).unwrap();
        let back = parse_input(&bundle.to_string(), None).unwrap();
        verify(&back, AlgebraChoice::Function).unwrap().assert_pass();
    }

    #[test]
    fn check_all_on_pair_groupoid_function_algebra() {
        let input = groupoid_input(&pair_groupoid(2));
        check_all(&input, AlgebraChoice::Function, OPTS).unwrap().assert_pass();
    }

    #[test]
    fn check_all_short_circuits_on_axiom_failure() {
        let w = function_algebra(&pair_groupoid(2)).perturb_delta(0, 0, crate::exactlin::Scalar::from(5)).unwrap();
        let r = check_all(&Input::Wmha(w), AlgebraChoice::Function, OPTS).unwrap();
        assert!(!r.all_pass());
        assert!(r.data.contains_key("short_circuit"));
    }

    #[test]
    fn bare_algebra_has_no_dual() {
        let a = Algebra::from_consts(vec!["e".into()], [(0, 0, 0, crate::exactlin::Scalar::one())], None).unwrap();
        assert!(dual(&Input::Algebra(a), AlgebraChoice::Function).is_err());
    }
}
