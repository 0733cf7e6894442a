//! Structural properties of the coset action and the isogeny step.

mod common;

use superspecial::classify::{kind_of, VarietyKind};
use superspecial::enumerate::{enumerate_dim2, initial_seeds, SeedOrder};
use superspecial::seeds::{elliptic_theta, product_theta, supersingular_lambdas};
use superspecial::symplectic::{
    act, coset_count, coset_reps, normalize_vanishing_to_61, p_matrix, SymplecticRep,
};
use superspecial::theta::{
    even_indices, index_decode, index_encode, is_even, isogeny_step_with, recover_fundamental,
    SignPolicy,
};
use superspecial::{isogeny_step, SquaredThetaNullPoint};

#[test]
fn coset_counts_and_pairwise_inequivalence() {
    for (g, n) in [(2, 15), (3, 135)] {
        let table = coset_reps(g).unwrap();
        assert_eq!(table.len(), n);
        assert_eq!(coset_count(g), n);
        assert_eq!(table.reps()[0], SymplecticRep::identity(g));
        for (i, a) in table.reps().iter().enumerate() {
            assert!(a.is_symplectic());
            let ai = a.inverse();
            assert_eq!(ai.mul(a), SymplecticRep::identity(g));
            for b in &table.reps()[i + 1..] {
                assert!(!b.mul(&ai).in_gamma0_2(), "same right coset");
            }
        }
    }
}

#[test]
fn theta_indices() {
    assert_eq!(even_indices(2).len(), 10);
    assert_eq!(even_indices(3).len(), 36);
    assert_eq!(index_decode(5, 2).unwrap(), (1, 1));
    assert_eq!(index_encode(1, 1, 2), 5);
    assert!(!is_even(5, 2));
    assert!(index_decode(64, 3).is_err());
}

#[test]
fn act_then_inverse_is_identity() {
    let table = coset_reps(3).unwrap();
    for (k, th) in common::random_nodes(11, 100, 1).iter().enumerate() {
        let m = &table.reps()[(k * 37) % table.len()];
        let back = act(&m.inverse(), &act(m, th).unwrap()).unwrap();
        assert!(back.projectively_eq(th), "node {k}");
    }
}

#[test]
fn plan_matches_matrix_composition() {
    let table = coset_reps(3).unwrap();
    let nodes = common::random_nodes(13, 10, 2);
    for th in &nodes {
        for (i, j) in [(3, 7), (100, 20), (134, 134)] {
            let (a, b) = (&table.reps()[i], &table.reps()[j]);
            let lhs = act(a, &act(b, th).unwrap()).unwrap();
            let rhs = act(&a.mul(b), th).unwrap();
            assert!(lhs.projectively_eq(&rhs));
        }
    }
}

#[test]
fn vanishing_count_is_invariant_under_cosets() {
    let table = coset_reps(3).unwrap();
    for th in common::random_nodes(17, 30, 3) {
        for plan in table.plans() {
            assert_eq!(plan.apply(&th).n_van(), th.n_van());
        }
    }
}

#[test]
fn visited_nodes_satisfy_theta_identities() {
    for th in common::random_nodes(19, 100, 4) {
        for (i, v) in th.values().iter().enumerate() {
            if !is_even(i, 3) {
                assert!(v.is_zero(), "odd index {i}");
            }
        }
        assert_ne!(th.product_relation_holds(), Some(false));
        assert!(kind_of(3, th.n_van()).is_ok());
    }
}

#[test]
fn product_vanishing_counts() {
    let f = common::field(17);
    let seeds = supersingular_lambdas(f).unwrap();
    let e1 = &seeds[0].theta;
    let ee = product_theta(e1, e1).unwrap();
    assert_eq!(kind_of(2, ee.n_van()).unwrap(), VarietyKind::EE);
    let eee = product_theta(e1, &ee).unwrap();
    assert_eq!(eee.n_van(), 9);
}

#[test]
fn elliptic_null_point_requires_squares() {
    let f = common::field(11);
    let nonsquare = f.t();
    assert!(elliptic_theta(nonsquare + f.one()).is_err() || elliptic_theta(nonsquare).is_err());
}

#[test]
fn rejects_odd_nonzero_entries() {
    let f = common::field(11);
    let mut v = vec![f.one(); 16];
    v[5] = f.one();
    assert!(SquaredThetaNullPoint::new(2, v).is_err());
}

#[test]
fn vanishing_index_normalizes_to_61() {
    for i in 0..64 {
        if let Ok(m) = p_matrix(i) {
            assert!(m.is_symplectic(), "P_{i}");
        }
    }
    let table = coset_reps(3).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    for th in common::random_nodes(19, 200, 6) {
        for plan in table.plans().iter().step_by(11) {
            let t = isogeny_step(&plan.apply(&th)).unwrap();
            if t.n_van() != 1 {
                continue;
            }
            let z = t
                .values()
                .iter()
                .enumerate()
                .position(|(i, v)| is_even(i, 3) && v.is_zero())
                .unwrap();
            seen.insert(z);
            let n = normalize_vanishing_to_61(&t).unwrap();
            assert!(n.get(61).is_zero(), "from {z}");
            assert_eq!(n.n_van(), 1);
        }
    }
    assert!(!seen.is_empty());
}

#[test]
fn sign_flips_are_accepted() {
    let table = coset_reps(3).unwrap();
    let th = common::random_nodes(11, 20, 5).pop().unwrap();
    let n = table.plans()[9].apply(&th);
    for mask in [0u8, 1, 0x7e, 0xff] {
        let out = isogeny_step_with(&n, SignPolicy::Flip(mask)).unwrap();
        assert!(kind_of(3, out.n_van()).is_ok());
    }
    assert_eq!(
        isogeny_step(&n).unwrap(),
        isogeny_step_with(&n, SignPolicy::Flip(0)).unwrap()
    );
}

#[test]
fn index_examples() {
    assert_eq!(index_decode(61, 3).unwrap(), (0b111, 0b101));
    assert!(is_even(61, 3));
    assert_eq!(index_decode(0, 3).unwrap(), (0, 0));
    assert_eq!(index_decode(7, 3).unwrap(), (0, 0b111));
    assert!(is_even(7, 3));
}

#[test]
fn identity_action_is_trivial() {
    let id = SymplecticRep::identity(3);
    for th in common::random_nodes(11, 10, 7) {
        assert!(act(&id, &th).unwrap().projectively_eq(&th));
    }
}

#[test]
fn vanishing_branch_recovers_roots_even_when_theta0_vanishes() {
    let table = coset_reps(3).unwrap();
    let f = common::field(11);
    let seeds = supersingular_lambdas(f).unwrap();
    let g2 = enumerate_dim2(&seeds, &coset_reps(2).unwrap()).unwrap();
    let (nodes, _, _) = initial_seeds(&seeds, &g2, SeedOrder::Natural).unwrap();
    let (mut vanishing, mut theta0) = (0, 0);
    for th in nodes.iter().map(|n| &n.theta) {
        for plan in table.plans() {
            let n = plan.apply(th);
            let v = n.values();
            if v[..8].iter().all(|x| !x.is_zero()) {
                continue;
            }
            let ft = recover_fundamental(&n, SignPolicy::Canonical).unwrap();
            let pivot = v.iter().position(|x| !x.is_zero()).unwrap();
            assert!(ft.theta[pivot].is_one());
            for (j, t) in ft.theta.iter().enumerate() {
                assert_eq!(*t * *t * v[pivot], v[j]);
            }
            assert!(kind_of(3, isogeny_step(&n).unwrap().n_van()).is_ok());
            vanishing += 1;
            theta0 += v[0].is_zero() as usize;
        }
    }
    assert!(vanishing > 0 && theta0 > 0);
}

/// Duplication on one elliptic factor with a chosen sign of `θ_0 θ_1`.
fn elliptic_step(th: &SquaredThetaNullPoint, flip: bool) -> SquaredThetaNullPoint {
    let f = th.field();
    let (s0, s1) = (th.get(0), th.get(1));
    let r = (s0 * s1).sqrt().unwrap();
    let r = if flip { -r } else { r };
    SquaredThetaNullPoint::new(1, vec![s0 + s1, r + r, s0 - s1, f.zero()]).unwrap()
}

#[test]
fn step_on_products_factors() {
    let f = common::field(19);
    let seeds = supersingular_lambdas(f).unwrap();
    let (e1, e2) = (&seeds[0].theta, &seeds[1].theta);
    let th = product_theta(e1, &product_theta(e2, e1).unwrap()).unwrap();
    let expected: Vec<SquaredThetaNullPoint> = (0..8u8)
        .map(|m| {
            let a = elliptic_step(e1, m & 1 == 1);
            let b = elliptic_step(e2, m & 2 == 2);
            let c = elliptic_step(e1, m & 4 == 4);
            product_theta(&a, &product_theta(&b, &c).unwrap()).unwrap()
        })
        .collect();
    // only sign choices consistent with the product structure factor
    let factoring = (0..=255u8)
        .filter(|&m| m & 0x81 == 0)
        .filter(|&m| {
            let out = isogeny_step_with(&th, SignPolicy::Flip(m)).unwrap();
            expected.iter().any(|e| e.projectively_eq(&out))
        })
        .count();
    assert!(factoring > 0);
}

#[test]
fn product_is_associative() {
    let f = common::field(17);
    let s = supersingular_lambdas(f).unwrap();
    let (a, b) = (&s[0].theta, &s[1].theta);
    let left = product_theta(&product_theta(a, b).unwrap(), a).unwrap();
    let right = product_theta(a, &product_theta(b, a).unwrap()).unwrap();
    assert!(left.projectively_eq(&right));
    assert_eq!(
        isogeny_step(&product_theta(a, b).unwrap()).unwrap().genus(),
        2
    );
}

#[test]
fn p_matrices_move_vanishing_from_zero() {
    let table = coset_reps(3).unwrap();
    let hyp = common::random_nodes(11, 200, 9)
        .into_iter()
        .flat_map(|th| {
            table
                .plans()
                .iter()
                .map(move |p| isogeny_step(&p.apply(&th)).unwrap())
                .collect::<Vec<_>>()
        })
        .find(|t| t.n_van() == 1)
        .expect("hyperelliptic node");
    let at61 = normalize_vanishing_to_61(&hyp).unwrap();
    let at0 = act(&p_matrix(61).unwrap().inverse(), &at61).unwrap();
    assert!(at0.get(0).is_zero());
    for i in even_indices(3) {
        let t = act(&p_matrix(i).unwrap(), &at0).unwrap();
        assert!(t.get(i).is_zero(), "P_{i}");
    }
    assert!(act(&SymplecticRep::identity(3), &at61)
        .unwrap()
        .projectively_eq(&normalize_vanishing_to_61(&at61).unwrap()));
}

#[test]
fn p_matrix_blocks() {
    let p27 = p_matrix(27).unwrap();
    let top_right: Vec<Vec<i64>> = (0..3)
        .map(|r| (3..6).map(|c| p27.at(r, c)).collect())
        .collect();
    assert_eq!(top_right, vec![vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, 0]]);
    let p12 = p_matrix(12).unwrap();
    let (a, b) = index_decode(12, 3).unwrap();
    for k in 0..3 {
        assert_eq!(p12.at(k, 3 + k), (b >> k & 1) as i64);
        assert_eq!(p12.at(3 + k, k), (a >> k & 1) as i64);
    }
}
