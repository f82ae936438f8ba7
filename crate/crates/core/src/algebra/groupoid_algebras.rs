//! `K(G)` (functions, pointwise product) and `ℂG` (convolution) of a finite
//! groupoid, both with basis indexed by the arrows in their fixed order.

use super::Algebra;
use crate::exactlin::{Matrix, Scalar};
use crate::groupoid::Groupoid;
use crate::wmha::WeakHopf;

/// `K(G)`: `δ_pδ_q = [p=q]δ_p`, `Δ(δ_r) = Σ_{pq=r} δ_p⊗δ_q`,
/// `ε(f) = Σ_u f(u)`, `S(δ_p) = δ_{p⁻¹}`.
pub fn function_algebra(g: &Groupoid) -> WeakHopf {
    let n = g.num_arrows();
    let consts = (0..n).map(|p| (p, p, p, Scalar::one()));
    let unit = vec![Scalar::one(); n];
    let alg = Algebra::from_consts(g.arrow_ids(), consts, Some(unit)).expect("indices in range");
    let mut delta = Matrix::zeros(n * n, n);
    for p in 0..n {
        for q in 0..n {
            if let Some(r) = g.compose(p, q) {
                delta.set(p * n + q, r, Scalar::one());
            }
        }
    }
    let counit = (0..n).map(|p| if g.is_unit_arrow(p) { Scalar::one() } else { Scalar::zero() }).collect();
    let antipode = Matrix::from_fn(n, n, |i, j| if g.inv(j) == i { Scalar::one() } else { Scalar::zero() });
    WeakHopf::new("K(G)", alg, delta, counit, antipode, None).expect("K(G) is well formed")
}

/// `ℂG`: `λ_pλ_q = λ_{pq}` when defined, `Δ(λ_p) = λ_p⊗λ_p`, `ε(λ_p) = 1`,
/// `S(λ_p) = λ_{p⁻¹}`, unit `Σ_u λ_u`.
pub fn groupoid_algebra(g: &Groupoid) -> WeakHopf {
    let n = g.num_arrows();
    let mut consts = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if let Some(r) = g.compose(p, q) {
                consts.push((p, q, r, Scalar::one()));
            }
        }
    }
    let mut unit = vec![Scalar::zero(); n];
    for u in 0..g.num_units() {
        unit[g.unit_arrow(u)] = Scalar::one();
    }
    let alg = Algebra::from_consts(g.arrow_ids(), consts, Some(unit)).expect("indices in range");
    let delta = Matrix::from_fn(n * n, n, |row, p| if row == p * n + p { Scalar::one() } else { Scalar::zero() });
    let counit = vec![Scalar::one(); n];
    let antipode = Matrix::from_fn(n, n, |i, j| if g.inv(j) == i { Scalar::one() } else { Scalar::zero() });
    WeakHopf::new("CG", alg, delta, counit, antipode, None).expect("CG is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::nonzeros;
    use crate::groupoid::{cyclic_group, disjoint_union, pair_groupoid, product};

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

    #[test]
    fn trivial_function_algebra() {
        let w = function_algebra(&pair_groupoid(1));
        assert_eq!(w.dim(), 1);
        assert_eq!(w.delta(w.one()), vec![Scalar::one()]);
        assert_eq!(w.counit(w.one()), Scalar::one());
    }

    #[test]
    fn e_of_pair_groupoid_function_algebra() {
        // brute force: E(p, q) = 1 iff src(p) = tgt(q)
        let g = pair_groupoid(2);
        let w = function_algebra(&g);
        let n = g.num_arrows();
        assert_eq!(nonzeros(w.e()).count(), 8);
        for p in 0..n {
            for q in 0..n {
                let expected = if g.src(p) == g.tgt(q) { Scalar::one() } else { Scalar::zero() };
                assert_eq!(w.e()[p * n + q], expected);
            }
        }
    }

    #[test]
    fn convolution_of_pair_groupoid_gives_matrix_units() {
        // (i,j)(k,l) = [j=k](i,l)
        let g = pair_groupoid(2);
        let w = groupoid_algebra(&g);
        let idx = |i: usize, j: usize| g.arrow_index(&format!("({i},{j})")).unwrap();
        for i in 1..=2 {
            for j in 1..=2 {
                for k in 1..=2 {
                    for l in 1..=2 {
                        let prod = w.mul(&w.alg().basis(idx(i, j)), &w.alg().basis(idx(k, l)));
                        let expected = if j == k { w.alg().basis(idx(i, l)) } else { vec![Scalar::zero(); 4] };
                        assert_eq!(prod, expected);
                    }
                }
            }
        }
    }

    #[test]
    fn group_algebra_of_z2() {
        let g = cyclic_group(2);
        let w = groupoid_algebra(&g);
        let (e, x) = (g.arrow_index("e").unwrap(), g.arrow_index("g").unwrap());
        assert_eq!(w.mul(&w.alg().basis(x), &w.alg().basis(x)), w.alg().basis(e));
    }

    #[test]
    fn structural_invariants_over_corpus() {
        for g in corpus() {
            let k = function_algebra(&g);
            let c = groupoid_algebra(&g);
            assert_eq!(k.dim(), g.num_arrows());
            assert_eq!(c.dim(), g.num_arrows());
            assert!(k.alg().is_commutative());
            assert_eq!(c.alg().is_commutative(), g.composable_pairs_commute());
            for w in [&k, &c] {
                w.alg().axiom_report().assert_pass();
                let m = crate::algebra::multiplier_algebra(w.alg()).unwrap();
                assert!(m.embedding_is_surjective(w.dim()));
            }
        }
    }
}
