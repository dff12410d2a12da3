mod common;

use std::path::{Path, PathBuf};

use proptest::prelude::*;
use qbench_core::harness::*;
use qbench_core::instances::{gen_maxcut, gen_udmis, Instance, InstanceFile, TspInstance};
use qbench_core::rng;

fn record(class: &str, approach: &str, f_q: f64, f_c: Option<f64>, maximizes: bool) -> RunRecord {
    RunRecord {
        instance_id: format!("{class}-{f_q}"),
        problem_class: class.into(),
        approach: approach.into(),
        outcome: Outcome::Success,
        best_objective: Some(f_q),
        maximizes,
        runtime: 1.0,
        encode_seconds: 0.1,
        embed_seconds: 0.25,
        solve_seconds: 0.75,
        n_vars: Some(10),
        physical_qubits: None,
        feasible_share: Some(1.0),
        chain_break_fraction: None,
        baseline_objective: f_c,
        baseline_tag: f_c.map(|_| "brute_force".into()),
        baseline_seconds: f_c.map(|_| 0.5),
        reason: None,
    }
}

#[test]
fn deviation_examples() {
    let (r_f, r_t) = rel_deviations(93.0, 100.0, 3.0, 2.0).unwrap();
    assert!((r_f + 0.07).abs() < 1e-15);
    assert_eq!(r_t, 0.5);
    assert_eq!(rel_deviations(8.0, 4.0, 1.0, 4.0).unwrap(), (1.0, -0.75));
    assert!(rel_deviations(1.0, -2.0, 1.0, 1.0).is_err());
    assert!(rel_deviations(1.0, 2.0, 1.0, 0.0).is_err());
}

#[test]
fn seven_percent_short_maxcut_lands_in_two_buckets() {
    let s = bucket_summary(&[record("maxcut", "maxcut+sa", 93.0, Some(100.0), true)]);
    let row = &s.rows[0];
    assert_eq!(
        (
            row.total,
            row.within_25,
            row.within_10,
            row.within_5,
            row.no_worse
        ),
        (1, 1, 1, 0, 0)
    );
    assert_eq!(
        row.shares(),
        [
            NO_SHARE.to_string(),
            NO_SHARE.into(),
            NO_SHARE.into(),
            NO_SHARE.into()
        ]
    );
}

#[test]
fn no_worse_follows_direction() {
    let recs = [
        record("tsp", "tsp_qap+sa", 90.0, Some(100.0), false),
        record("tsp", "tsp_qap+sa", 110.0, Some(100.0), false),
        record("udmis", "udmis+sa", 5.0, Some(5.0), true),
        record("udmis", "udmis+sa", 4.0, Some(5.0), true),
    ];
    let s = bucket_summary(&recs);
    let tsp = s.rows.iter().find(|r| r.class == "tsp").unwrap();
    assert_eq!(tsp.no_worse, 1);
    assert_eq!(tsp.within_10, 2);
    assert_eq!(tsp.shares()[3], "50.0%");
    let mis = s.rows.iter().find(|r| r.class == "udmis").unwrap();
    assert_eq!((mis.within_25, mis.within_10, mis.no_worse), (2, 1, 1));
}

#[test]
fn unusable_baselines_are_listed() {
    let mut failed = record("maxcut", "maxcut+qaoa", 1.0, Some(1.0), true);
    failed.outcome = Outcome::Fail;
    let recs = [
        record("maxcut", "maxcut+sa", 3.0, None, true),
        record("maxcut", "maxcut+sa", 3.0, Some(0.0), true),
        failed,
    ];
    let s = bucket_summary(&recs);
    assert!(s.rows.is_empty());
    assert_eq!(s.excluded.len(), 2);
    assert!(s.excluded[0].reason.contains("missing baseline"));
    assert!(s.excluded[1].reason.contains("f_c"));
}

proptest! {
    #[test]
    fn bucket_counts_are_nested(
        rows in proptest::collection::vec((0.1f64..200.0, 0.1f64..200.0, any::<bool>(), 0usize..3), 1..60)
    ) {
        let recs: Vec<RunRecord> = rows
            .iter()
            .map(|&(q, c, max, a)| record("maxcut", ["a", "b", "c"][a], q, Some(c), max))
            .collect();
        let s = bucket_summary(&recs);
        let total: usize = s.rows.iter().map(|r| r.total).sum();
        prop_assert_eq!(total, recs.len());
        for r in &s.rows {
            prop_assert!(r.within_5 <= r.within_10);
            prop_assert!(r.within_10 <= r.within_25);
            prop_assert!(r.within_25 <= r.total);
            prop_assert!(r.no_worse <= r.total);
        }
    }

    #[test]
    fn embedding_share_is_a_fraction(e in 0.0f64..1e3, s in 0.0f64..1e3) {
        let x = embedding_share(e, s);
        prop_assert!((0.0..=1.0).contains(&x));
        if e + s > 0.0 {
            prop_assert!((x - e / (e + s)).abs() < 1e-12);
        }
    }
}

fn planted() -> Vec<(f64, f64)> {
    [4.0, 6.0, 9.0, 12.0, 20.0, 33.0]
        .iter()
        .map(|&n: &f64| (n, 7.0 * n.powf(1.8)))
        .collect()
}

#[test]
fn planted_power_law_is_recovered() {
    let fit = fit_embedding_regression(&planted()).unwrap();
    assert!((fit.beta - 1.8).abs() < 1e-9);
    assert!((fit.beta0 - 7f64.ln()).abs() < 1e-9);
    assert_eq!(fit.r_squared, 1.0);
    assert!((fit.predict(10.0) - 7.0 * 10f64.powf(1.8)).abs() < 1e-6);
}

#[test]
fn least_squares_is_a_minimum() {
    let mut r = rng::seeded(8);
    use rand::Rng;
    let pairs: Vec<(f64, f64)> = planted()
        .into_iter()
        .map(|(n, ne)| (n, ne * (1.0 + 0.3 * r.gen::<f64>())))
        .collect();
    let fit = fit_embedding_regression(&pairs).unwrap();
    assert!(fit.r_squared < 1.0 && fit.r_squared > 0.9);
    let best = RegressionFit::residual_sum(fit.beta0, fit.beta, &pairs);
    for (d0, d1) in [
        (1e-3, 0.0),
        (-1e-3, 0.0),
        (0.0, 1e-3),
        (0.0, -1e-3),
        (1e-3, -1e-3),
    ] {
        assert!(RegressionFit::residual_sum(fit.beta0 + d0, fit.beta + d1, &pairs) > best);
    }
}

#[test]
fn regression_input_checks() {
    assert!(fit_embedding_regression(&planted()[..2]).is_err());
    assert!(fit_embedding_regression(&[(5.0, 10.0), (5.0, 11.0), (5.0, 12.0)]).is_err());
    // two distinct sizes are enough
    let fit = fit_embedding_regression(&[(5.0, 10.0), (5.0, 12.0), (10.0, 40.0)]).unwrap();
    assert!(fit.beta > 0.0);
    assert!(fit_embedding_regression(&[(5.0, 0.0), (6.0, 1.0), (7.0, 2.0)]).is_err());
}

#[test]
fn time_report_skips_failures() {
    let mut failed = record("maxcut", "maxcut+sa", 1.0, None, true);
    failed.outcome = Outcome::Fail;
    let mut idle = record("maxcut", "maxcut+sa", 2.0, None, true);
    idle.embed_seconds = 0.0;
    idle.solve_seconds = 0.0;
    let rows =
        embedding_time_report(&[record("maxcut", "maxcut+sa", 3.0, None, true), failed, idle]);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].embed_share, 0.25);
    assert_eq!(rows[1].embed_share, 0.0);
    let csv = embedding_time_csv(&rows).unwrap();
    assert!(csv.starts_with("instance_id,approach,embed_seconds,solve_seconds,embed_share\n"));
}

#[test]
fn bucket_csv_header() {
    let s = bucket_summary(&[]);
    let csv = buckets_csv(&s).unwrap();
    assert_eq!(
        csv.trim_end(),
        "class,approach,total,within_25,share_25,within_10,share_10,within_5,share_5,no_worse,share_no_worse"
    );
}

fn write_instance(dir: &Path, name: &str, f: &InstanceFile) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, f.to_json().unwrap()).unwrap();
    p
}

#[test]
fn brute_force_pipeline_matches_oracle() {
    let tmp = tempfile::tempdir().unwrap();
    let mut paths = Vec::new();
    let mut optima = Vec::new();
    for seed in 0..10u64 {
        let u = gen_udmis(9 + seed as usize % 4, 1.5, seed).unwrap();
        optima.push((format!("mis_{seed}"), common::mis_size(u.graph()) as f64));
        let f = InstanceFile::new(Instance::Udmis(u), Some(seed), Default::default());
        paths.push(write_instance(tmp.path(), &format!("mis_{seed}.json"), &f));
    }
    let out = tmp.path().join("run");
    let cfg = PipelineConfig::new(paths, SolverConfig::BruteForce, &out);
    let recs = run_pipeline(&cfg).unwrap();
    assert_eq!(recs.len(), 10);
    for r in &recs {
        let want = optima
            .iter()
            .find(|(id, _)| *id == r.instance_id)
            .unwrap()
            .1;
        assert_eq!(r.outcome, Outcome::Success, "{r:?}");
        assert_eq!(r.best_objective, Some(want));
        assert_eq!(r.baseline_objective, Some(want));
        assert_eq!(r.baseline_tag.as_deref(), Some("brute_force"));
        assert_eq!(r.approach, "udmis+brute_force");
    }
    assert_eq!(read_records(&out.join("records.json")).unwrap(), recs);
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["instances"].as_array().unwrap().len(), 10);
    for f in [
        "encoding.json",
        "samples.json",
        "histogram.csv",
        "decoded.json",
    ] {
        assert!(out.join("runs/mis_3").join(f).exists(), "{f}");
    }
    let s = bucket_summary(&recs);
    assert_eq!(s.rows[0].no_worse, 10);
    assert_eq!(s.rows[0].shares()[3], "100.0%");
}

#[test]
fn oversized_dfj_fails_with_size_guard() {
    let tmp = tempfile::tempdir().unwrap();
    let mut r = rng::seeded(1);
    let t = common::random_int_tsp(&mut r, 15);
    let f = InstanceFile::new(Instance::Tsp(t), None, Default::default());
    let p = write_instance(tmp.path(), "big.json", &f);
    let small = write_instance(
        tmp.path(),
        "small.json",
        &InstanceFile::new(
            Instance::Tsp(
                TspInstance::euclidean(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap(),
            ),
            None,
            Default::default(),
        ),
    );
    let mut cfg = PipelineConfig::new(
        vec![p, small],
        SolverConfig::BruteForce,
        tmp.path().join("run"),
    );
    cfg.tsp_encoding = qbench_core::encodings::EncodingKind::TspDfj;
    let recs = run_pipeline(&cfg).unwrap();
    assert_eq!(recs[0].instance_id, "big");
    assert_eq!(recs[0].outcome, Outcome::Fail);
    assert!(recs[0].reason.as_deref().unwrap().contains("size guard"));
    assert_eq!(recs[1].outcome, Outcome::Success);
    assert_eq!(recs[1].best_objective, Some(4.0));
}

#[test]
fn anneal_pipeline_is_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    let paths: Vec<PathBuf> = (0..4u64)
        .map(|s| {
            let f = InstanceFile::new(
                Instance::MaxCut(gen_maxcut(10, 0.5, s).unwrap()),
                Some(s),
                Default::default(),
            );
            write_instance(tmp.path(), &format!("cut{s}.json"), &f)
        })
        .collect();
    let solver = SolverConfig::Anneal {
        shots: 50,
        sweeps: 200,
        seed: 3,
    };
    let a = run_pipeline(&PipelineConfig::new(
        paths.clone(),
        solver.clone(),
        tmp.path().join("a"),
    ))
    .unwrap();
    let b = run_pipeline(&PipelineConfig::new(paths, solver, tmp.path().join("b"))).unwrap();
    let strip = |v: &[RunRecord]| v.iter().map(RunRecord::without_timings).collect::<Vec<_>>();
    assert_eq!(strip(&a), strip(&b));
    assert!(a.iter().all(|r| r.outcome == Outcome::Success));
}

#[test]
fn embedded_run_reports_chains() {
    let tmp = tempfile::tempdir().unwrap();
    let f = InstanceFile::new(
        Instance::MaxCut(gen_maxcut(8, 0.5, 5).unwrap()),
        Some(5),
        Default::default(),
    );
    let p = write_instance(tmp.path(), "cut.json", &f);
    let mut cfg = PipelineConfig::new(
        vec![p],
        SolverConfig::Anneal {
            shots: 100,
            sweeps: 500,
            seed: 1,
        },
        tmp.path().join("run"),
    );
    cfg.embed = Some(EmbedTarget::Pegasus);
    let recs = run_pipeline(&cfg).unwrap();
    let r = &recs[0];
    assert_eq!(r.approach, "maxcut+sa@pegasus");
    assert!(r.physical_qubits.unwrap() >= 8);
    assert!(r.chain_break_fraction.is_some());
    assert!(tmp.path().join("run/runs/cut/embedding.json").exists());

    cfg.solver = SolverConfig::BruteForce;
    let recs = run_pipeline(&cfg).unwrap();
    assert_eq!(recs[0].outcome, Outcome::Fail);
}
