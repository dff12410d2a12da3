//! The QUBO minimum of every encoding, found exhaustively, must decode to a
//! feasible optimum of the source problem.

mod common;

use qbench_core::encodings::*;
use qbench_core::instances::{gen_maxcut, gen_udmis, TspInstance};
use qbench_core::rng;
use qbench_core::solvers::brute_force;

fn assert_sound(rec: &EncodingRecord, optimum: f64, label: &str) {
    let bf = brute_force(&rec.qubo).unwrap();
    assert!(!bf.argmin.is_empty());
    for bits in bf.bitstrings() {
        let d = decode(rec, &bits).unwrap();
        assert!(d.feasible, "{label}: infeasible minimizer {bits:?}");
        let f = d.original_objective.unwrap();
        assert!(
            (f - optimum).abs() <= 1e-9 * optimum.abs().max(1.0),
            "{label}: {f} vs {optimum}"
        );
    }
}

#[test]
fn mis_on_unit_disk_graphs() {
    for seed in 0..30 {
        let n = 6 + (seed as usize % 9);
        let inst = gen_udmis(n, 1.5, seed).unwrap();
        let rec = encode_mis(inst.graph(), None).unwrap();
        assert_sound(
            &rec,
            common::mis_size(inst.graph()) as f64,
            &format!("udmis seed {seed}"),
        );
    }
}

#[test]
fn mis_on_dense_random_graphs() {
    let mut r = rng::seeded(77);
    for k in 0..20 {
        let g = common::random_graph(&mut r, 4 + k % 10, 0.6);
        let rec = encode_mis(&g, None).unwrap();
        assert_sound(&rec, common::mis_size(&g) as f64, &format!("graph {k}"));
    }
}

#[test]
fn maxcut_on_weighted_graphs() {
    for seed in 0..30 {
        let g = gen_maxcut(4 + seed as usize % 11, 0.5, seed).unwrap();
        let rec = encode_maxcut(&g);
        assert_sound(&rec, common::max_cut(&g), &format!("maxcut seed {seed}"));
    }
}

#[test]
fn qap_on_small_tours() {
    let mut r = rng::seeded(3);
    for n in [3, 4, 5, 6] {
        for k in 0..if n == 6 { 2 } else { 8 } {
            let t = common::random_int_tsp(&mut r, n);
            let rec = encode_tsp_qap(&t, None).unwrap();
            assert_sound(&rec, common::shortest_tour(&t), &format!("qap n={n} #{k}"));
        }
    }
}

#[test]
fn qap_with_real_valued_distances() {
    let t = TspInstance::euclidean(&[(0.0, 0.0), (1.3, 0.2), (2.1, 1.7), (0.4, 2.2), (1.1, 0.9)])
        .unwrap();
    let rec = encode_tsp_qap(&t, None).unwrap();
    assert_sound(&rec, common::shortest_tour(&t), "qap euclidean");
}

#[test]
fn dfj_on_small_tours() {
    let mut r = rng::seeded(4);
    for n in [4, 5] {
        for k in 0..10 {
            let t = common::random_int_tsp(&mut r, n);
            let rec = encode_tsp_dfj(&t, None).unwrap();
            assert_sound(&rec, common::shortest_tour(&t), &format!("dfj n={n} #{k}"));
        }
    }
}

fn is_tour(n: usize, arcs: &[bool]) -> bool {
    let lay = MtzLayout { n };
    let next: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && arcs[lay.arc(i, j)]).collect())
        .collect();
    if next.iter().any(|s| s.len() != 1) {
        return false;
    }
    let (mut at, mut seen) = (0, 0);
    loop {
        at = next[at][0];
        seen += 1;
        if at == 0 {
            return seen == n;
        }
        if seen > n {
            return false;
        }
    }
}

#[test]
fn mtz_minimizers_are_optimal_tours() {
    let mut r = rng::seeded(5);
    for n in [4, 5] {
        for k in 0..5 {
            let t = common::random_int_tsp(&mut r, n);
            let (m1, m2) = default_mtz_penalties(&t);
            let best_tour = common::shortest_tour(&t);
            let (best, patterns) = common::mtz_exact_minimum(&t, m1, m2);
            assert_eq!(best, best_tour, "mtz n={n} #{k}");
            assert!(!patterns.is_empty());
            for arcs in &patterns {
                assert!(is_tour(n, arcs), "mtz n={n} #{k}: {arcs:?}");
            }
            // the encoder's offset puts tours at their length
            let rec = encode_tsp_mtz(&t, None, None).unwrap();
            let lay = MtzLayout { n };
            let mut bits = vec![false; rec.n()];
            bits[..lay.arc_count()].copy_from_slice(&patterns[0]);
            let tour = match decode(&rec, &bits).unwrap().payload {
                Payload::Tour { tour } => tour,
                other => panic!("{other:?}"),
            };
            assert_eq!(t.tour_length(&tour), best_tour);
        }
    }
}

fn clustered_six() -> TspInstance {
    // two unit triangles 100 apart
    let pts = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (100.0, 0.0), (101.0, 0.0), (100.0, 1.0)];
    let mut rows = vec![vec![0.0; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            if i != j {
                rows[i][j] = qbench_core::instances::euc_2d(pts[i], pts[j]);
            }
        }
    }
    TspInstance::from_rows(rows).unwrap()
}

#[test]
fn dfj_oracle_matches_encoder() {
    use rand::Rng;
    let mut r = rng::seeded(12);
    for n in [6, 7] {
        let t = common::random_int_tsp(&mut r, n);
        let rec = encode_tsp_dfj(&t, None).unwrap();
        let subsets = dfj_subsets(n);
        for _ in 0..200 {
            let bits: Vec<bool> = (0..rec.n()).map(|_| r.gen()).collect();
            let want = common::dfj_objective(&t, rec.penalty, &subsets, dfj_slack_bits, &bits);
            assert!((rec.qubo.energy(&bits) + rec.offset - want).abs() < 1e-9 * want.max(1.0));
        }
    }
}

#[test]
fn dfj_default_penalty_admits_two_triangles_at_six_nodes() {
    let t = clustered_six();
    let subsets = dfj_subsets(6);
    let tour = common::shortest_tour(&t);
    let (best, sets) = common::dfj_exact_minimum(&t, default_dfj_penalty(&t), &subsets, dfj_slack_bits);
    assert!(best < tour, "{best} vs {tour}");
    assert!(sets.iter().all(|e| !common::is_hamiltonian_cycle(6, e)));

    let (best, sets) = common::dfj_exact_minimum(&t, conservative_dfj_penalty(&t), &subsets, dfj_slack_bits);
    assert_eq!(best, tour);
    assert!(sets.iter().all(|e| common::is_hamiltonian_cycle(6, e)));
}

#[test]
fn dfj_conservative_penalty_at_six_nodes() {
    let mut r = rng::seeded(21);
    let subsets = dfj_subsets(6);
    for _ in 0..10 {
        let t = common::random_int_tsp(&mut r, 6);
        let (best, sets) = common::dfj_exact_minimum(&t, conservative_dfj_penalty(&t), &subsets, dfj_slack_bits);
        assert_eq!(best, common::shortest_tour(&t));
        assert!(sets.iter().all(|e| common::is_hamiltonian_cycle(6, e)));
    }
}

#[test]
fn dfj_warns_about_weak_default_from_six_nodes() {
    let t = clustered_six();
    assert_eq!(encode_tsp_dfj(&t, None).unwrap().warnings.len(), 1);
    assert!(encode_tsp_dfj(&t, Some(conservative_dfj_penalty(&t))).unwrap().warnings.is_empty());
    let mut r = rng::seeded(1);
    assert!(encode_tsp_dfj(&common::random_int_tsp(&mut r, 5), None).unwrap().warnings.is_empty());
}
