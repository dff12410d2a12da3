use std::path::Path;
use std::process::{Command, Output};

fn qbench(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbench"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("spawn qbench")
}

fn ok(args: &[&str], out: &Path) -> String {
    let o = qbench(args, out);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout).unwrap()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn gen_encode_solve_chain() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["gen", "maxcut", "--n", "8", "--seed", "3"], d);
    let inst = d.join("maxcut_n8_s3.json");
    let v = json(&inst);
    assert_eq!(v["class"], "maxcut");
    assert_eq!(v["seed"], 3);
    assert!(v["edges"].is_array());

    ok(&["encode", inst.to_str().unwrap()], d);
    let qubo = d.join("maxcut_n8_s3.maxcut.qubo.json");
    let q = json(&qubo);
    assert_eq!(q["n"], 8);
    assert!(q["entries"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e.as_array().unwrap().len() == 3));

    let brute = ok(&["solve", qubo.to_str().unwrap(), "--solver", "brute"], d);
    let sa = ok(
        &[
            "solve",
            qubo.to_str().unwrap(),
            "--solver",
            "sa",
            "--shots",
            "50",
            "--sweeps",
            "300",
        ],
        d,
    );
    let energy = |s: &str| s.split_whitespace().nth(2).unwrap().parse::<f64>().unwrap();
    assert!(
        (energy(&brute) - energy(&sa)).abs() < 1e-9,
        "{brute} vs {sa}"
    );
    let hist = std::fs::read_to_string(d.join("maxcut_n8_s3.maxcut.qubo.histogram.csv")).unwrap();
    assert!(hist.starts_with("bitstring,count,energy,feasible\n"));
    let samples = json(&d.join("maxcut_n8_s3.maxcut.qubo.samples.json"));
    assert_eq!(samples["shots"], 50);
}

#[test]
fn qaoa_writes_trace() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["gen", "udmis", "--n", "5", "--seed", "1"], d);
    ok(&["encode", d.join("udmis_n5_s1.json").to_str().unwrap()], d);
    let qubo = d.join("udmis_n5_s1.udmis.qubo.json");
    ok(
        &[
            "solve",
            qubo.to_str().unwrap(),
            "--solver",
            "qaoa",
            "--depth",
            "2",
            "--budget",
            "21",
            "--shots",
            "64",
        ],
        d,
    );
    let trace = json(&d.join("udmis_n5_s1.udmis.qubo.qaoa_trace.json"));
    assert_eq!(trace["depth"], 2);
    assert_eq!(trace["evaluations"], 21);
}

#[test]
fn seeds_reproduce_files() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [a.path(), b.path()] {
        ok(
            &["gen", "udmis", "--n", "12", "--seed", "9", "--count", "3"],
            d,
        );
    }
    for s in 9..12 {
        let name = format!("udmis_n12_s{s}.json");
        assert_eq!(
            std::fs::read(a.path().join(&name)).unwrap(),
            std::fs::read(b.path().join(&name)).unwrap()
        );
    }
}

#[test]
fn estimate_table() {
    let dir = tempfile::tempdir().unwrap();
    let csv = ok(
        &[
            "estimate",
            "--class",
            "udmis,maxcut,tsp_qap",
            "--n",
            "10",
            "--format",
            "csv",
        ],
        dir.path(),
    );
    let mut lines = csv.lines();
    let header = lines.next().unwrap();
    assert!(
        header.contains("neutral_atom")
            && header.contains("annealer_pegasus")
            && header.contains("gate_based")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].contains(",48,"), "{}", rows[0]);
    assert!(rows[1].contains(",400,"), "{}", rows[1]);
    assert!(rows[2].contains(",1344,"), "{}", rows[2]);
}

#[test]
fn embed_clique_and_reject_unsupported() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = ok(&["embed", "--topology", "chimera", "--clique", "20"], d);
    assert!(out.contains("valid true"), "{out}");
    let v = json(&d.join("k20.chimera.validation.json"));
    assert_eq!(v["valid"], true);
    let e = json(&d.join("k20.chimera.embedding.json"));
    assert_eq!(e["topology"]["family"], "chimera");
    assert_eq!(e["chains"].as_object().unwrap().len(), 20);

    let fail = qbench(&["embed", "--topology", "pegasus", "--clique", "14"], d);
    assert!(!fail.status.success());
    assert!(String::from_utf8_lossy(&fail.stderr).contains("unsupported size"));
}

#[test]
fn bench_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["gen", "maxcut", "--n", "8", "--count", "4"], d);
    let base = d.join("base.tsp");
    std::fs::write(
        &base,
        "NAME: base\nTYPE: TSP\nDIMENSION: 7\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n\
         1 0 0\n2 40 5\n3 80 0\n4 70 60\n5 30 70\n6 5 40\n7 50 35\nEOF\n",
    )
    .unwrap();
    ok(
        &[
            "gen",
            "tsp",
            "--n",
            "4",
            "--count",
            "2",
            "--tsplib",
            base.to_str().unwrap(),
        ],
        d,
    );
    let mut args: Vec<String> = [
        "bench", "--solver", "sa", "--shots", "100", "--sweeps", "300", "--embed", "pegasus",
    ]
    .map(String::from)
    .to_vec();
    for s in 0..4 {
        args.push(d.join(format!("maxcut_n8_s{s}.json")).display().to_string());
    }
    let run = d.join("run");
    let a: Vec<&str> = args.iter().map(String::as_str).collect();
    ok(&a, &run);
    let manifest = json(&run.join("manifest.json"));
    assert_eq!(manifest["instances"].as_array().unwrap().len(), 4);
    let records = json(&run.join("records.json"));
    assert!(records
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["outcome"] == "success"));

    let tables = d.join("tables");
    std::fs::create_dir_all(&tables).unwrap();
    let o = qbench(
        &["report", run.to_str().unwrap(), "--format", "csv"],
        &tables,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let buckets = std::fs::read_to_string(tables.join("buckets.csv")).unwrap();
    assert!(buckets.starts_with("class,approach,total,"));
    assert!(buckets.contains("maxcut,maxcut+sa@pegasus,4,"));
    assert!(tables.join("embedding_time.csv").exists());

    ok(&["report", run.to_str().unwrap()], &tables);
    let report = json(&tables.join("report.json"));
    assert!(report["buckets"]["rows"].is_array());

    let tsp_run = d.join("tsp_run");
    let p0 = d.join("tsp_n4_s0.json").display().to_string();
    let p1 = d.join("tsp_n4_s1.json").display().to_string();
    ok(
        &[
            "bench",
            "--solver",
            "brute",
            "--tsp-encoding",
            "tsp_dfj",
            &p0,
            &p1,
        ],
        &tsp_run,
    );
    let records = json(&tsp_run.join("records.json"));
    for r in records.as_array().unwrap() {
        assert_eq!(r["approach"], "tsp_dfj+brute_force");
        assert_eq!(r["best_objective"], r["baseline_objective"]);
    }
}

#[test]
fn bad_input_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("broken.json"), "{\"class\": \"tsp\"}").unwrap();
    let o = qbench(&["encode", d.join("broken.json").to_str().unwrap()], d);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    let o = qbench(&["estimate", "--class", "vrp"], d);
    assert!(!o.status.success());
}
