use super::*;
use crate::algebra::{function_algebra, groupoid_algebra};
use crate::exactlin::unit_vector;
use crate::groupoid::{cyclic_group, disjoint_union, pair_groupoid, product, Groupoid};

fn corpus() -> Vec<Groupoid> {
    let z2 = cyclic_group(2);
    vec![
        pair_groupoid(1),
        z2.clone(),
        cyclic_group(3),
        disjoint_union(&z2, &pair_groupoid(1)),
        pair_groupoid(2),
        pair_groupoid(3),
        product(&pair_groupoid(2), &z2),
    ]
}

fn unit_indicator(g: &Groupoid) -> Vector {
    let mut v = exactlin::zeros(g.num_arrows());
    for u in 0..g.num_units() {
        v[g.unit_arrow(u)] = Scalar::one();
    }
    v
}

fn v(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| Scalar::from(x)).collect()
}

#[test]
fn function_algebra_cointegrals_are_unit_supported() {
    for g in corpus() {
        let w = function_algebra(&g);
        let space = cointegral_space(&w, Side::Left);
        assert_eq!(space.dim(), g.num_units());
        let expected: Vec<Vector> = (0..g.num_units()).map(|u| unit_vector(g.num_arrows(), g.unit_arrow(u))).collect();
        assert!(same_span(&space.basis, &expected, g.num_arrows()));
    }
}

#[test]
fn group_algebra_cointegral() {
    let w = groupoid_algebra(&cyclic_group(2));
    let space = cointegral_space(&w, Side::Left);
    assert_eq!(space.dim(), 1);
    assert!(space.contains(&v(&[1, 1])));
}

#[test]
fn pair_groupoid_convolution_cointegrals() {
    for n in [2, 3] {
        let w = groupoid_algebra(&pair_groupoid(n));
        assert_eq!(cointegral_space(&w, Side::Left).dim(), n);
        assert_eq!(cointegral_space(&w, Side::Right).dim(), n);
    }
}

#[test]
fn six_statements_examples() {
    let g = cyclic_group(2);
    let k = function_algebra(&g);
    assert_eq!(six_statements(&k, &unit_indicator(&g)), [true; 6]);
    let c = groupoid_algebra(&g);
    assert_eq!(six_statements(&c, &v(&[1, 1])), [true; 6]);
    assert_eq!(six_statements(&c, &v(&[0, 1])), [false; 6]);
    assert!(check_equivalences(&c, &v(&[0, 1])).all_pass());
}

#[test]
fn six_statements_on_corpus() {
    for g in corpus() {
        for w in [function_algebra(&g), groupoid_algebra(&g)] {
            for h in cointegral_space(&w, Side::Left).basis {
                assert_eq!(six_statements(&w, &h), [true; 6]);
                assert!(corollary_ys(&w, &h));
                assert!(as_h_equals_at_h(&w, &h));
                assert!(is_left_cointegral(&w, &gamma(&w, &h)));
            }
            for k in cointegral_space(&w, Side::Right).basis {
                assert!(corollary_right(&w, &k));
            }
            cointegral_report(&w, Side::Left).assert_pass();
            cointegral_report(&w, Side::Right).assert_pass();
        }
    }
}

#[test]
fn gamma_is_identity_on_function_algebra_cointegrals() {
    for g in corpus() {
        let w = function_algebra(&g);
        for h in cointegral_space(&w, Side::Left).basis {
            assert_eq!(gamma(&w, &h), h);
        }
    }
}

#[test]
fn gamma_is_linear() {
    let w = groupoid_algebra(&pair_groupoid(2));
    let hs = cointegral_space(&w, Side::Left).basis;
    let sum = exactlin::add(&hs[0], &hs[1]);
    assert_eq!(gamma(&w, &sum), exactlin::add(&gamma(&w, &hs[0]), &gamma(&w, &hs[1])));
}

#[test]
fn corpus_is_discrete_and_leg_criteria_agree() {
    for g in corpus() {
        for w in [function_algebra(&g), groupoid_algebra(&g)] {
            assert!(is_discrete(&w), "{}", w.name());
            legs_report(&w).assert_pass();
        }
    }
}

#[test]
fn leg_criteria_agree_for_partial_sets() {
    // a single unit indicator has deficient legs; both criteria must say so
    let g = pair_groupoid(2);
    let w = function_algebra(&g);
    let hs = vec![unit_vector(4, g.unit_arrow(0))];
    let legs = legs_of(&w, &hs);
    let (right, left) = annihilator_criterion(&w, &hs);
    assert!(legs.left.len() < 4 && legs.right.len() < 4);
    assert_eq!(legs.right.len() == 4, right);
    assert_eq!(legs.left.len() == 4, left);
}

#[test]
fn faithfulness_examples() {
    let g = pair_groupoid(2);
    let k = function_algebra(&g);
    let chi = unit_indicator(&g);
    assert_eq!(f1(&k, &chi).rank(), 4);
    assert_eq!(f2(&k, &chi).rank(), 4);
    assert!(is_faithful_cointegral(&k, &chi));
    assert!(!is_faithful_cointegral(&k, &unit_vector(4, g.unit_arrow(0))));
    let c = groupoid_algebra(&cyclic_group(2));
    assert!(is_faithful_cointegral(&c, &v(&[1, 1])));
    assert!(!is_faithful_cointegral(&c, &v(&[0, 0])));
}

#[test]
fn f_ranks_agree_on_cointegrals() {
    for g in corpus() {
        for w in [function_algebra(&g), groupoid_algebra(&g)] {
            for h in cointegral_space(&w, Side::Left).basis {
                assert_eq!(f1(&w, &h).rank(), f2(&w, &h).rank());
            }
            assert!(find_faithful_cointegral(&w).is_some());
        }
    }
}

#[test]
fn balanced_injectivity() {
    for w in [
        function_algebra(&cyclic_group(2)),
        groupoid_algebra(&pair_groupoid(2)),
        function_algebra(&pair_groupoid(3)),
    ] {
        balanced_injectivity_check(&w).assert_pass();
    }
    let r = balanced_injectivity_check(&function_algebra(&pair_groupoid(1)));
    r.assert_pass();
    assert_eq!(r.data["quotient_dimension"], 1);
    assert_eq!(r.data["image_rank"], 1);
}

#[test]
fn group_algebra_left_integrals_vanish_off_units() {
    for g in corpus() {
        let w = groupoid_algebra(&g);
        let space = integral_space(&w, Side::Left);
        let expected: Vec<Vector> = (0..g.num_units()).map(|u| unit_vector(g.num_arrows(), g.unit_arrow(u))).collect();
        assert_eq!(space.dim(), g.num_units());
        assert!(same_span(&space.basis, &expected, g.num_arrows()));
    }
}

#[test]
fn uniform_functional_on_function_algebra() {
    for g in corpus() {
        let w = function_algebra(&g);
        let uniform = vec![Scalar::one(); g.num_arrows()];
        assert!(is_left_integral(&w, &uniform));
        assert!(is_right_integral(&w, &uniform));
        assert_eq!(integral_set_faithfulness(&w, &[uniform]), (true, true));
    }
}

#[test]
fn trivial_algebra_integrals() {
    let w = function_algebra(&pair_groupoid(1));
    let space = integral_space(&w, Side::Left);
    assert_eq!(space.dim(), 1);
    assert!(space.contains(w.counit_vector()));
}

#[test]
fn integral_criterion_via_cointegrals_on_dual_basis() {
    for w in [
        function_algebra(&cyclic_group(2)),
        groupoid_algebra(&cyclic_group(2)),
        groupoid_algebra(&pair_groupoid(2)),
    ] {
        let n = w.dim();
        for i in 0..n {
            let (direct, via) = integral_char_via_cointegrals(&w, &unit_vector(n, i));
            assert_eq!(direct, via);
        }
        integral_report(&w, Side::Left).assert_pass();
    }
    let c = groupoid_algebra(&cyclic_group(2));
    assert_eq!(integral_char_via_cointegrals(&c, c.counit_vector()), (false, false));
}

#[test]
fn group_algebra_integral_sets_faithful() {
    for g in corpus() {
        let w = groupoid_algebra(&g);
        let space = integral_space(&w, Side::Left);
        assert_eq!(integral_set_faithfulness(&w, &space.basis), (true, true));
    }
}

#[test]
fn uniqueness() {
    for w in [
        function_algebra(&pair_groupoid(2)),
        groupoid_algebra(&cyclic_group(2)),
        groupoid_algebra(&pair_groupoid(2)),
    ] {
        uniqueness_props(&w).assert_pass();
    }
}

#[test]
fn single_h_on_function_algebra() {
    let g = pair_groupoid(2);
    let w = function_algebra(&g);
    let s = single_h_maps(&w, &unit_indicator(&g)).unwrap();
    single_h_report(&w, &s).assert_pass();
    check_collection(&w, &s).assert_pass();
}

#[test]
fn single_h_rejects_non_faithful() {
    let g = pair_groupoid(2);
    let w = function_algebra(&g);
    let h = unit_vector(4, g.unit_arrow(0));
    assert!(matches!(single_h_maps(&w, &h), Err(Error::Precondition(_))));
    assert!(existence_of_integrals(&w, &h).is_err());
}

#[test]
fn delta_functional_on_group_algebra() {
    // S(h) = h for h = λ_e + λ_g and Δ(h) = λ_e⊗λ_e + λ_g⊗λ_g, so δ = ε
    let w = groupoid_algebra(&cyclic_group(2));
    let s = single_h_maps(&w, &v(&[1, 1])).unwrap();
    assert_eq!(s.delta, v(&[1, 1]));
    check_collection(&w, &s).assert_pass();
}

#[test]
fn single_h_reports_over_corpus() {
    for g in corpus() {
        for w in [function_algebra(&g), groupoid_algebra(&g)] {
            let h = find_faithful_cointegral(&w).unwrap();
            let s = single_h_maps(&w, &h).unwrap();
            single_h_report(&w, &s).assert_pass();
            check_collection(&w, &s).assert_pass();
            integrals_from_cointegral_report(&w, &h).unwrap().assert_pass();
        }
    }
}

#[test]
fn counit_identity_oracle() {
    // φ_h(ah) = ε(a) evaluated by hand for λ_e + λ_g
    let w = groupoid_algebra(&cyclic_group(2));
    let (phi, psi) = existence_of_integrals(&w, &v(&[1, 1])).unwrap();
    assert_eq!(phi, v(&[1, 0]));
    assert_eq!(psi, v(&[1, 0]));
}

#[test]
fn classification() {
    for w in [groupoid_algebra(&pair_groupoid(2)), function_algebra(&cyclic_group(2))] {
        let c = classify(&w);
        assert!(c.compact && c.discrete);
        assert!(c.note.is_some());
    }
}

#[test]
fn h_s2_prime_variants() {
    // hε_s(a) and hε_t(a) agree on K(G) but not on C(pair groupoid)
    let g = pair_groupoid(2);
    let k = function_algebra(&g);
    let s = single_h_maps(&k, &unit_indicator(&g)).unwrap();
    assert_eq!(single_h_report(&k, &s).data["hS2prime_eq_h_eps_s"], true);
    let c = groupoid_algebra(&pair_groupoid(2));
    let s = single_h_maps(&c, &find_faithful_cointegral(&c).unwrap()).unwrap();
    let r = single_h_report(&c, &s);
    r.assert_pass();
    assert_eq!(r.data["hS2prime_eq_h_eps_s"], false);
}


#[test]
fn counit_identity_depends_on_h() {
    // unequal weights on the two cointegral basis vectors of C(pair groupoid)
    let c = groupoid_algebra(&pair_groupoid(2));
    let space = cointegral_space(&c, Side::Left);
    let h = exactlin::combine(&[Scalar::from(1), Scalar::from(2)], &space.basis, 4);
    assert!(is_faithful_cointegral(&c, &h));
    let r = integrals_from_cointegral_report(&c, &h).unwrap();
    assert!(!r.get("counit_identity").unwrap().pass);
    assert!(r.get("phi_h_left_integral").unwrap().pass);
    assert!(r.get("psi_h_right_integral").unwrap().pass);
    let r = single_h_report(&c, &single_h_maps(&c, &h).unwrap());
    assert!(!r.get("E_t_defining").unwrap().pass);
    assert!(r.get("gamma_t_defining").unwrap().pass);
    let balanced = find_faithful_cointegral(&c).unwrap();
    integrals_from_cointegral_report(&c, &balanced).unwrap().assert_pass();
}
