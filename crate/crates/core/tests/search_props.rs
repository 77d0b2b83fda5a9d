mod common;

use common::*;
use hopfweave::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every (left move, right move) pair at depth one whose results agree under
/// the permutation-enumeration canonical form.
fn depth_one_matches(a: &PlumbingTree, b: &PlumbingTree, bound: i64) -> Vec<(Move, Move)> {
    let moves = |t: &PlumbingTree| -> Vec<Move> {
        let mut xs: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..t.mu() {
            xs = xs
                .into_iter()
                .flat_map(|x| (-bound..=bound).map(move |c| [x.clone(), vec![c]].concat()))
                .collect();
        }
        [BandSign::Positive, BandSign::Negative]
            .into_iter()
            .flat_map(|sign| xs.iter().map(move |x| Move { sign, x: x.clone() }))
            .collect()
    };
    let mut out = Vec::new();
    for l in moves(a) {
        let fa = canonical_by_enumeration(&a.hopf_plumb(l.sign, &l.x).unwrap());
        for r in moves(b) {
            let fb = canonical_by_enumeration(&b.hopf_plumb(r.sign, &r.x).unwrap());
            if fa == fb {
                out.push((l.clone(), r));
            }
        }
    }
    out
}

#[test]
fn trefoil_figure_eight_depth_one_oracle() {
    let (t, e) = (PlumbingTree::trefoil(), PlumbingTree::figure_eight());
    let matches = depth_one_matches(&t, &e, 1);
    assert_eq!(
        matches,
        vec![(
            Move {
                sign: BandSign::Negative,
                x: vec![1, 0]
            },
            Move {
                sign: BandSign::Positive,
                x: vec![1, 0]
            }
        )]
    );
    let cert = common_stabilization(&t, &e, &SearchConfig::with_depth(1)).unwrap();
    let cert = cert.certificate().unwrap();
    assert_eq!(
        (cert.moves_left[0].clone(), cert.moves_right[0].clone()),
        matches[0]
    );
}

#[test]
fn pruning_never_loses_a_certificate() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut found = 0;
    for round in 0..24 {
        let depth = if round % 2 == 0 { 2 } else { 1 };
        let max_mu = if round % 6 == 0 { 4 } else { 3 };
        let a = random_tree(&mut rng, max_mu, 1);
        let b = random_tree(&mut rng, max_mu, 1);
        let pruned = SearchConfig::with_depth(depth);
        let full = SearchConfig {
            prune: false,
            ..pruned.clone()
        };
        let p = common_stabilization(&a, &b, &pruned).unwrap();
        let f = common_stabilization(&a, &b, &full).unwrap();
        assert_eq!(p.certificate(), f.certificate(), "{a} vs {b}");
        if let Some(c) = p.certificate() {
            found += 1;
            assert!(verify_certificate(&a, &b, c));
        }
    }
    assert!(found > 0);
}

#[test]
fn search_is_deterministic_and_certificates_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(67);
    for _ in 0..20 {
        let a = random_tree(&mut rng, 3, 1);
        // a second presentation of the same book, so a certificate exists
        let b = match a.mu() {
            0 => a.clone(),
            n => {
                let sign = if rng.gen_bool(0.5) {
                    BandSign::Negative
                } else {
                    BandSign::Positive
                };
                a.hopf_plumb(sign, &vec![0; n]).unwrap()
            }
        };
        let cfg = SearchConfig::with_depth(1);
        let first = common_stabilization(&a, &b, &cfg).unwrap();
        let second = common_stabilization(&a, &b, &cfg).unwrap();
        assert_eq!(first, second);
        let any = common_stabilization(
            &a,
            &b,
            &SearchConfig {
                deterministic_order: false,
                ..cfg
            },
        )
        .unwrap();
        for out in [&first, &any] {
            let c = out.certificate().expect("one move on the left balances");
            assert!(verify_certificate(&a, &b, c));
        }
    }
}

#[test]
fn budget_stays_within_the_plane_field_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let mut checked = 0;
    for _ in 0..40 {
        let a = random_tree(&mut rng, 3, 1);
        let b = random_tree(&mut rng, 3, 1);
        let out = common_stabilization(&a, &b, &SearchConfig::with_depth(2)).unwrap();
        if let Some(c) = out.certificate() {
            let verdict = stable_equivalence(
                &OpenBookClass::on_sphere(a.clone()),
                &OpenBookClass::on_sphere(b.clone()),
            )
            .unwrap();
            let (l, r) = c.budget_used();
            assert!(l.min(r) as u64 <= verdict.hminus_budget.unwrap());
            assert!(
                c.budget() as u64 <= verdict.hminus_budget.unwrap(),
                "{a} vs {b}: {}",
                c.to_json()
            );
            checked += 1;
        }
    }
    assert!(checked > 0);
}
