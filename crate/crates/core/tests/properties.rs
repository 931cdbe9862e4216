use amlab_core::derivations::{
    classify_maps, in_span, inner_derivation, jordan_decompose, lie_decompose, psi_map, rank_one_map, MapKind,
};
use amlab_core::diagonals::{
    defects, direct_sum_defect_bound, direct_sum_diagonal, group_diagonal, matrix_diagonal, projection_map,
    tensor_image, truncated_mn_diagonal,
};
use amlab_core::witness::{trace_feasibility, witness_from_diagonal, Feasibility, Functional};
use amlab_core::{AlgebraPresentation, BimodulePresentation, DirectSum, Element, GroupTable, Rational, Scalar, Tensor2};
use proptest::prelude::*;

type Q = Rational;

fn q(n: i64) -> Q {
    Q::from_int(n)
}

fn small() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, d)| Q::from_ratio(p, d))
}

fn dense(dim: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec(small(), dim)
}

fn sparse_tensor(dim: usize) -> impl Strategy<Value = Vec<(usize, usize, Q)>> {
    proptest::collection::vec((0..dim, 0..dim, small()), 0..12)
}

fn zoo() -> Vec<AlgebraPresentation<Q>> {
    vec![
        AlgebraPresentation::matrix(2),
        AlgebraPresentation::upper_triangular(3),
        GroupTable::symmetric(3).algebra(),
        GroupTable::cyclic(4).algebra(),
        AlgebraPresentation::matrix(2).unitize(),
    ]
}

/// Exact rank by textbook elimination, independent of the library's kernel.
fn rank(mut m: Vec<Vec<Q>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_negligible(0.0)) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_negligible(0.0) {
                let f = m[i][c].clone() / m[r][c].clone();
                for k in 0..cols {
                    let v = m[r][k].clone() * f.clone();
                    m[i][k] = m[i][k].clone() - v;
                }
            }
        }
        r += 1;
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative_and_submultiplicative(pick in 0usize..5, seed in dense(7 * 3)) {
        let alg = &zoo()[pick];
        let n = alg.dim();
        let a = alg.from_dense(&seed[..n]).unwrap();
        let b = alg.from_dense(&seed[7..7 + n]).unwrap();
        let c = alg.from_dense(&seed[14..14 + n]).unwrap();
        let ab = alg.multiply(&a, &b).unwrap();
        prop_assert_eq!(alg.multiply(&ab, &c).unwrap(), alg.multiply(&a, &alg.multiply(&b, &c).unwrap()).unwrap());
        prop_assert!(alg.norm(&ab) <= alg.norm(&a) * alg.norm(&b));
    }

    #[test]
    fn center_commutes(pick in 0usize..5, seed in dense(7)) {
        let alg = &zoo()[pick];
        let a = alg.from_dense(&seed[..alg.dim()]).unwrap();
        for z in alg.center() {
            prop_assert!(alg.commutator(&z, &a).unwrap().is_zero());
        }
    }

    #[test]
    fn flip_and_contraction_laws(pick in 0usize..5, terms in sparse_tensor(6), seed in dense(7)) {
        let alg = &zoo()[pick];
        let n = alg.dim();
        let t = alg.tensor(terms.into_iter().filter(|(i, j, _)| *i < n && *j < n)).unwrap();
        let a = alg.from_dense(&seed[..n]).unwrap();
        prop_assert_eq!(alg.circ_left(&a, &t.flip()).unwrap(), alg.left_action(&a, &t).unwrap().flip());
        prop_assert_eq!(alg.circ_right(&t.flip(), &a).unwrap(), alg.right_action(&t, &a).unwrap().flip());
        prop_assert_eq!(alg.pi_op(&t).unwrap(), alg.pi(&t.flip()).unwrap());
        prop_assert_eq!(alg.pi(&alg.left_action(&a, &t).unwrap()).unwrap(), alg.multiply(&a, &alg.pi(&t).unwrap()).unwrap());
        prop_assert_eq!(alg.pi(&alg.right_action(&t, &a).unwrap()).unwrap(), alg.multiply(&alg.pi(&t).unwrap(), &a).unwrap());
        let bound = alg.norm(&a) * alg.proj_norm(&t);
        for s in [
            alg.left_action(&a, &t).unwrap(),
            alg.right_action(&t, &a).unwrap(),
            alg.circ_left(&a, &t).unwrap(),
            alg.circ_right(&t, &a).unwrap(),
        ] {
            prop_assert!(alg.proj_norm(&s) <= bound);
        }
        prop_assert!(alg.norm(&alg.pi(&t).unwrap()) <= alg.proj_norm(&t));
    }

    #[test]
    fn module_action_bound(seed in dense(4 + 8)) {
        let alg = AlgebraPresentation::<Q>::matrix(2);
        let r = BimodulePresentation::regular(&alg);
        let x = BimodulePresentation::direct_sum(&alg, &[&r, &BimodulePresentation::trivial(&alg, 1), &r]).unwrap();
        let mx = x.action_constant(&alg).unwrap();
        let a = alg.from_dense(&seed[..4]).unwrap();
        let v = x.element(seed[4..].iter().cloned().enumerate().collect::<Vec<_>>()).unwrap();
        let bound = mx * alg.norm(&a) * x.norm(&v);
        prop_assert!(x.norm(&x.left_act(&a, &v).unwrap()) <= bound.clone());
        prop_assert!(x.norm(&x.right_act(&v, &a).unwrap()) <= bound);
    }

    #[test]
    fn commutative_defects_coincide(n in 2usize..6, terms in sparse_tensor(6), seed in dense(6)) {
        let alg: AlgebraPresentation<Q> = GroupTable::cyclic(n).algebra();
        let t = alg.tensor(terms.into_iter().filter(|(i, j, _)| *i < n && *j < n)).unwrap();
        let a = alg.from_dense(&seed[..n]).unwrap();
        let d = defects(&alg, &a, &t).unwrap();
        prop_assert_eq!(d.d1, d.d3);
        prop_assert_eq!(d.d2, d.d4);
    }

    #[test]
    fn pushforward_contracts_defects(terms in sparse_tensor(8), seed in dense(8)) {
        let m2 = AlgebraPresentation::<Q>::matrix(2);
        let sum = DirectSum::new(&[&m2, &m2]);
        let src = sum.algebra();
        let theta = projection_map(&sum, &m2, 1).unwrap();
        let norm = theta.op_norm(src.weights(), m2.weights());
        let s = src.tensor(terms).unwrap();
        let a = src.from_dense(&seed).unwrap();
        let before = defects(src, &a, &s).unwrap();
        let after = defects(&m2, &theta.apply(&a).unwrap(), &tensor_image(&theta, &s).unwrap()).unwrap();
        let sq = norm.clone() * norm.clone();
        prop_assert!(after.d1 <= sq.clone() * before.d1);
        prop_assert!(after.d3 <= sq * before.d3);
        prop_assert!(after.d2 <= norm.clone() * before.d2);
        prop_assert!(after.d4 <= norm * before.d4);
    }

    #[test]
    fn direct_sum_defects_are_blockwise(t1 in sparse_tensor(4), t2 in sparse_tensor(1), seed in dense(5)) {
        let m2 = AlgebraPresentation::<Q>::matrix(2);
        let c = AlgebraPresentation::<Q>::scalars();
        let sum = DirectSum::new(&[&m2, &c]);
        let parts = vec![m2.tensor(t1).unwrap(), c.tensor(t2.into_iter().map(|(_, _, v)| (0, 0, v))).unwrap()];
        let t = direct_sum_diagonal(&sum, &parts).unwrap();
        let a = sum.algebra().from_dense(&seed).unwrap();
        let d = defects(sum.algebra(), &a, &t).unwrap();
        let bound = direct_sum_defect_bound(&sum, &[&m2, &c], &parts, &a).unwrap();
        prop_assert!(d.dominated_by(&bound, 0.0));
    }

    #[test]
    fn witness_is_a_normalized_trace(cz in dense(3), g in dense(6)) {
        let group = GroupTable::symmetric(3);
        let alg: AlgebraPresentation<Q> = group.algebra();
        let t = group_diagonal::<Q>(&group).unwrap();
        let center = alg.center();
        let z = center.iter().zip(&cz).fold(alg.zero(), |acc, (b, c)| acc.combine(b, c));
        let g = Functional::new(&alg, g).unwrap();
        prop_assume!(!g.eval(&z).unwrap().is_negligible(0.0));
        let r = witness_from_diagonal(&alg, &t, &z, &g).unwrap();
        prop_assert!(r.commutator_defect.is_negligible(0.0));
        prop_assert!(r.normalization_defect.is_negligible(0.0));
    }

    #[test]
    fn feasibility_matches_rank_oracle(pick in 0usize..5, seed in dense(7)) {
        let alg = &zoo()[pick];
        let n = alg.dim();
        let z = alg.from_dense(&seed[..n]).unwrap();
        prop_assume!(!z.is_zero());
        let comms: Vec<Vec<Q>> = alg.basis_commutators().into_iter().map(|(_, c)| c.to_dense(n)).collect();
        let mut with_z = comms.clone();
        with_z.push(z.to_dense(n));
        let expected = rank(with_z) > rank(comms);
        match trace_feasibility(alg, &z).unwrap() {
            Feasibility::Feasible { functional, .. } => {
                prop_assert!(expected);
                prop_assert_eq!(functional.eval(&z).unwrap(), q(1));
                for (_, c) in alg.basis_commutators() {
                    prop_assert!(functional.eval(&c).unwrap().is_negligible(0.0));
                }
            }
            Feasibility::Infeasible { certificate } => {
                prop_assert!(!expected);
                prop_assert_eq!(certificate.evaluate(alg), z);
            }
        }
    }

    #[test]
    fn psi_of_central_element_is_unit_action(terms in sparse_tensor(4), c in dense(2)) {
        let alg = AlgebraPresentation::<Q>::matrix(2);
        let r = BimodulePresentation::regular(&alg);
        let x = BimodulePresentation::direct_sum(&alg, &[&r, &r]).unwrap();
        let center = x.center();
        prop_assert_eq!(center.len(), 2);
        let z = center.iter().zip(&c).fold(x.zero(), |acc, (b, c)| acc.combine(b, c));
        let t = alg.tensor(terms).unwrap();
        let pt = alg.pi(&t).unwrap();
        prop_assert_eq!(psi_map(&x, &z, &t).unwrap(), x.left_act(&pt, &z).unwrap());
    }

    #[test]
    fn decompositions_agree_with_oracles(w in dense(4), f in dense(4)) {
        let alg = AlgebraPresentation::<Q>::matrix(2);
        let x = BimodulePresentation::regular(&alg);
        let t = matrix_diagonal::<Q>(2).unwrap();
        let derivations = classify_maps(MapKind::Derivation, &alg, &x).unwrap();
        let traces = classify_maps(MapKind::CentralTrace, &alg, &x).unwrap();
        let w = x.element(w.into_iter().enumerate().collect::<Vec<_>>()).unwrap();
        let d = inner_derivation(&alg, &x, &w).unwrap();
        let r = jordan_decompose(&alg, &x, &d, &t, &q(0)).unwrap();
        let inner = inner_derivation(&alg, &x, &r.omega).unwrap();
        prop_assert!(in_span(&derivations, &inner, 0.0));
        prop_assert_eq!(inner, d.clone());

        // A central trace on M2 is a multiple of tr(.) I.
        let scale = f[0].clone();
        let id = x.element(vec![(0, q(1)), (3, q(1))]).unwrap();
        let tau = rank_one_map(&alg, &x, &[scale.clone(), q(0), q(0), scale], &id).unwrap();
        let lie = d.combine(&tau, &q(1)).unwrap();
        let r = lie_decompose(&alg, &x, &lie, &t, &q(0), None).unwrap();
        prop_assert!(in_span(&traces, &lie.combine(&r.d, &q(-1)).unwrap(), 0.0));
        prop_assert_eq!(r.d, d);
    }

    #[test]
    fn truncated_defects_below_tail(entries in proptest::collection::vec((0usize..4, 0usize..4, small()), 1..6), n in 1usize..=4) {
        let big = AlgebraPresentation::<Q>::matrix(4);
        let a = big.element(entries.into_iter().map(|(i, j, c)| (AlgebraPresentation::<Q>::matrix_unit_index(4, i, j), c))).unwrap();
        let t = truncated_mn_diagonal::<Q>(n, 4).unwrap();
        let d = defects(&big, &a, &t).unwrap();
        let tail = amlab_core::diagonals::tail_bound(&a, n, 4);
        prop_assert!(d.max() <= tail);
    }
}

#[test]
fn tensor_zero_space_is_respected() {
    let m2 = AlgebraPresentation::<Q>::matrix(2);
    let other = AlgebraPresentation::<Q>::matrix(3);
    let t: Tensor2<Q> = other.basis_tensor(0, 0);
    assert!(m2.left_action(&Element::basis(m2.id(), 0), &t).is_err());
}
