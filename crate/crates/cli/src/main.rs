use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use qbench_core::encodings::{count_vars, EncodingKind, EncodingRecord, Qubo};
use qbench_core::hardware::{embedding_to_json, n_qa, qubit_cost, validate_embedding, Backend};
use qbench_core::harness::{
    bucket_summary, buckets_csv, clique_embedding, embedding_time_csv, embedding_time_report,
    encode_instance, encoding_kind_for, fit_embedding_regression, interaction_graph, read_records,
    regression_csv, run_pipeline, EmbedTarget, PipelineConfig, SolverConfig,
};
use qbench_core::instances::{
    gen_maxcut, gen_udmis, parse_tsplib, subsample_tsp_indexed, Instance, InstanceFile, TspInstance,
};
use qbench_core::solvers::{
    brute_force, histogram, qaoa_simulate, simulated_anneal, AnnealParams, QaoaParams, SampleSet,
};

#[derive(Parser)]
#[command(name = "qbench", version, about = "QUBO benchmarking pipeline")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    shots: usize,
    #[arg(long, default_value_t = 1000)]
    sweeps: usize,
    /// QAOA layers.
    #[arg(long, default_value_t = 1)]
    depth: usize,
    /// QAOA expectation evaluations.
    #[arg(long, default_value_t = 200)]
    budget: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverArg {
    Brute,
    Sa,
    Qaoa,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenClass {
    Udmis,
    Maxcut,
    Tsp,
}

#[derive(Subcommand)]
enum Command {
    /// Generate instance files.
    Gen {
        #[arg(value_enum)]
        class: GenClass,
        /// Nodes per instance.
        #[arg(long)]
        n: usize,
        /// Unit disk radius (udmis).
        #[arg(long, default_value_t = std::f64::consts::SQRT_2)]
        radius: f64,
        /// Edge probability (maxcut).
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Base TSPLIB file to subsample (tsp).
        #[arg(long)]
        tsplib: Option<PathBuf>,
        /// Instances to generate, with seeds `seed, seed+1, ..`.
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Encode an instance file as a QUBO.
    Encode {
        instance: PathBuf,
        /// udmis, maxcut, tsp_qap, tsp_mtz or tsp_dfj; defaults by class.
        #[arg(long)]
        encoding: Option<String>,
        #[arg(long)]
        penalty: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Variable counts and physical-qubit costs per backend.
    Estimate {
        /// Encoding tags; all when omitted.
        #[arg(long = "class", value_delimiter = ',')]
        classes: Vec<String>,
        /// Node counts.
        #[arg(long, value_delimiter = ',', default_value = "10")]
        n: Vec<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Clique-embed a QUBO (or `K_k`) and validate the embedding.
    Embed {
        #[arg(long, default_value = "pegasus")]
        topology: String,
        /// QUBO file whose interaction graph is embedded.
        #[arg(long, conflicts_with = "clique")]
        qubo: Option<PathBuf>,
        #[arg(long)]
        clique: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Sample a QUBO file.
    Solve {
        qubo: PathBuf,
        #[arg(long, value_enum, default_value = "sa")]
        solver: SolverArg,
        #[command(flatten)]
        common: Common,
    },
    /// Run the pipeline over instance files into a run directory.
    Bench {
        instances: Vec<PathBuf>,
        /// Pipeline config JSON; replaces the other options.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "sa")]
        solver: SolverArg,
        #[arg(long, default_value = "tsp_qap")]
        tsp_encoding: String,
        #[arg(long)]
        penalty: Option<f64>,
        /// chimera or pegasus.
        #[arg(long)]
        embed: Option<String>,
        #[arg(long)]
        chain_strength: Option<f64>,
        #[arg(long)]
        no_baseline: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Summary tables for a run directory.
    Report {
        run_dir: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen {
            class,
            n,
            radius,
            p,
            tsplib,
            count,
            common,
        } => gen(class, n, radius, p, tsplib.as_deref(), count, &common),
        Command::Encode {
            instance,
            encoding,
            penalty,
            common,
        } => encode(&instance, encoding.as_deref(), penalty, &common),
        Command::Estimate { classes, n, common } => estimate(&classes, &n, &common),
        Command::Embed {
            topology,
            qubo,
            clique,
            common,
        } => embed(&topology, qubo.as_deref(), clique, &common),
        Command::Solve {
            qubo,
            solver,
            common,
        } => solve(&qubo, solver, &common),
        Command::Bench {
            instances,
            config,
            solver,
            tsp_encoding,
            penalty,
            embed,
            chain_strength,
            no_baseline,
            common,
        } => {
            let cfg = match config {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    serde_json::from_str(&text)?
                }
                None => {
                    let mut cfg =
                        PipelineConfig::new(instances, solver_config(solver, &common), &common.out);
                    cfg.tsp_encoding = tsp_encoding.parse()?;
                    cfg.penalty = penalty;
                    cfg.embed = embed.map(|e| e.parse()).transpose()?;
                    cfg.chain_strength = chain_strength;
                    cfg.baseline = !no_baseline;
                    cfg
                }
            };
            bench(&cfg)
        }
        Command::Report { run_dir, common } => report(&run_dir, &common),
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn solver_config(s: SolverArg, c: &Common) -> SolverConfig {
    match s {
        SolverArg::Brute => SolverConfig::BruteForce,
        SolverArg::Sa => SolverConfig::Anneal {
            shots: c.shots,
            sweeps: c.sweeps,
            seed: c.seed,
        },
        SolverArg::Qaoa => SolverConfig::Qaoa {
            depth: c.depth,
            budget: c.budget,
            shots: c.shots,
            seed: c.seed,
        },
    }
}

fn gen(
    class: GenClass,
    n: usize,
    radius: f64,
    p: f64,
    tsplib: Option<&Path>,
    count: u64,
    c: &Common,
) -> Result<()> {
    let base: Option<TspInstance> = match (class, tsplib) {
        (GenClass::Tsp, Some(path)) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Some(parse_tsplib(&text)?)
        }
        (GenClass::Tsp, None) => bail!("gen tsp needs --tsplib"),
        _ => None,
    };
    for seed in c.seed..c.seed + count {
        let mut params = Map::new();
        let (name, inst) = match class {
            GenClass::Udmis => ("udmis", Instance::Udmis(gen_udmis(n, radius, seed)?)),
            GenClass::Maxcut => {
                params.insert("p".into(), p.into());
                ("maxcut", Instance::MaxCut(gen_maxcut(n, p, seed)?))
            }
            GenClass::Tsp => {
                let base = base.as_ref().expect("checked above");
                let (t, picked) = subsample_tsp_indexed(base, n, seed)?;
                params.insert("n".into(), n.into());
                params.insert("base_nodes".into(), json!(picked));
                if let Some(path) = tsplib {
                    params.insert("tsplib".into(), path.display().to_string().into());
                }
                ("tsp", Instance::Tsp(t))
            }
        };
        let file = InstanceFile::new(inst, Some(seed), params);
        write(
            &c.out.join(format!("{name}_n{n}_s{seed}.json")),
            &file.to_json()?,
        )?;
    }
    Ok(())
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into())
}

fn encode(path: &Path, encoding: Option<&str>, penalty: Option<f64>, c: &Common) -> Result<()> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = InstanceFile::from_json(&text)?;
    let kind = match encoding {
        Some(tag) => tag.parse()?,
        None => encoding_kind_for(file.instance.class(), EncodingKind::TspQap)?,
    };
    let rec = encode_instance(&file.instance, kind, penalty)?;
    for w in &rec.warnings {
        eprintln!("warning: {w}");
    }
    write(
        &c.out.join(format!("{}.{}.qubo.json", stem(path), kind)),
        &rec.to_json()?,
    )?;
    println!(
        "{} variables, {} nonzero entries",
        rec.n(),
        rec.qubo.nonzero_count()
    );
    Ok(())
}

fn estimate(classes: &[String], ns: &[usize], c: &Common) -> Result<()> {
    let kinds: Vec<EncodingKind> = if classes.is_empty() {
        EncodingKind::ALL.to_vec()
    } else {
        classes
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?
    };
    let mut rows = Vec::new();
    for &kind in &kinds {
        for &n in ns {
            let vars = count_vars(kind, n)?.total();
            let mut row = Map::new();
            row.insert("encoding".into(), kind.as_str().into());
            row.insert("nodes".into(), n.into());
            row.insert("vars".into(), vars.into());
            for b in Backend::ALL {
                row.insert(b.as_str().into(), qubit_cost(kind, b, n)?.into());
            }
            rows.push(Value::Object(row));
        }
    }
    let header = [
        "encoding",
        "nodes",
        "vars",
        "neutral_atom",
        "annealer_pegasus",
        "gate_based",
    ];
    emit_rows(&rows, &header, c, "estimate")
}

fn emit_rows(rows: &[Value], header: &[&str], c: &Common, name: &str) -> Result<()> {
    let text = match c.format {
        Format::Json => serde_json::to_string_pretty(rows)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header)?;
            for r in rows {
                let rec: Vec<String> = header
                    .iter()
                    .map(|h| match &r[*h] {
                        Value::String(s) => s.clone(),
                        v => v.to_string(),
                    })
                    .collect();
                w.write_record(&rec)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    };
    print!("{text}");
    if c.out != Path::new(".") {
        let ext = if c.format == Format::Csv {
            "csv"
        } else {
            "json"
        };
        write(&c.out.join(format!("{name}.{ext}")), &text)?;
    }
    Ok(())
}

fn embed(topology: &str, qubo: Option<&Path>, clique: Option<usize>, c: &Common) -> Result<()> {
    let target: EmbedTarget = topology.parse()?;
    let (problem, name) = match (qubo, clique) {
        (Some(path), _) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let rec = EncodingRecord::from_json(&text)?;
            (interaction_graph(&rec), stem(path))
        }
        (None, Some(k)) => (qbench_core::instances::Graph::complete(k), format!("k{k}")),
        (None, None) => bail!("embed needs --qubo or --clique"),
    };
    let (topo, emb) = clique_embedding(target, problem.node_count())?;
    let report = validate_embedding(&problem, &topo, &emb);
    write(
        &c.out
            .join(format!("{name}.{}.embedding.json", target.as_str())),
        &embedding_to_json(&topo, &emb)?,
    )?;
    write(
        &c.out
            .join(format!("{name}.{}.validation.json", target.as_str())),
        &serde_json::to_string_pretty(&report)?,
    )?;
    println!(
        "{}: {} logical -> {} physical qubits, max chain {}, valid {}, N_QA {}",
        target.as_str(),
        problem.node_count(),
        report.physical_qubits,
        report.max_chain,
        report.valid,
        n_qa(problem.node_count())
    );
    if !report.valid {
        bail!("embedding has {} violations", report.violations.len());
    }
    Ok(())
}

fn solve(path: &Path, solver: SolverArg, c: &Common) -> Result<()> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let rec = EncodingRecord::from_json(&text).ok();
    let q = match &rec {
        Some(r) => r.qubo.clone(),
        None => Qubo::from_json(&text)?,
    };
    let mut samples: SampleSet = match solver_config(solver, c) {
        SolverConfig::BruteForce => {
            let t0 = std::time::Instant::now();
            let bf = brute_force(&q)?;
            SampleSet::from_samples(
                &q,
                bf.bitstrings(),
                "brute_force",
                t0.elapsed().as_secs_f64(),
            )
        }
        SolverConfig::Anneal {
            shots,
            sweeps,
            seed,
        } => simulated_anneal(
            &q,
            &AnnealParams {
                shots,
                sweeps,
                schedule: None,
                seed,
            },
        )?,
        SolverConfig::Qaoa {
            depth,
            budget,
            shots,
            seed,
        } => {
            let (s, trace) = qaoa_simulate(&q, &QaoaParams::new(depth, budget, shots, seed))?;
            write(
                &c.out.join(format!("{}.qaoa_trace.json", stem(path))),
                &serde_json::to_string_pretty(&trace)?,
            )?;
            s
        }
    };
    if let Some(r) = &rec {
        samples.classify(r)?;
    }
    let name = stem(path);
    write(
        &c.out.join(format!("{name}.samples.json")),
        &samples.to_json()?,
    )?;
    write(
        &c.out.join(format!("{name}.histogram.csv")),
        &histogram(&samples).to_csv()?,
    )?;
    if let Some(best) = samples.best() {
        println!(
            "best energy {} ({} of {} shots), feasible share {:.3}",
            best.energy,
            best.count,
            samples.shots,
            samples.feasible_share()
        );
    }
    Ok(())
}

fn bench(cfg: &PipelineConfig) -> Result<()> {
    if cfg.instances.is_empty() {
        bail!("bench needs at least one instance file");
    }
    let records = run_pipeline(cfg)?;
    for r in &records {
        println!(
            "{} {} {} {}",
            r.instance_id,
            r.approach,
            r.outcome.as_str(),
            r.reason.as_deref().unwrap_or("")
        );
    }
    eprintln!("run directory {}", cfg.out.display());
    Ok(())
}

fn report(run_dir: &Path, c: &Common) -> Result<()> {
    let records = read_records(&run_dir.join("records.json"))?;
    let summary = bucket_summary(&records);
    let times = embedding_time_report(&records);
    let pairs: Vec<(f64, f64)> = records
        .iter()
        .filter_map(|r| Some((r.n_vars? as f64, r.physical_qubits? as f64)))
        .collect();
    let fit = fit_embedding_regression(&pairs);
    let out = if c.out == Path::new(".") {
        run_dir.to_path_buf()
    } else {
        c.out.clone()
    };
    match c.format {
        Format::Csv => {
            write(&out.join("buckets.csv"), &buckets_csv(&summary)?)?;
            write(
                &out.join("embedding_time.csv"),
                &embedding_time_csv(&times)?,
            )?;
            match &fit {
                Ok(f) => write(&out.join("regression.csv"), &regression_csv(f)?)?,
                Err(e) => eprintln!("regression skipped: {e}"),
            }
        }
        Format::Json => {
            let doc = json!({
                "buckets": summary,
                "embedding_time": times,
                "regression": fit.as_ref().ok(),
                "regression_error": fit.as_ref().err().map(|e| e.to_string()),
            });
            write(
                &out.join("report.json"),
                &serde_json::to_string_pretty(&doc)?,
            )?;
        }
    }
    for row in &summary.rows {
        let [s25, s10, s5, snw] = row.shares();
        println!(
            "{} {}: {} runs, within 25% {s25}, 10% {s10}, 5% {s5}, no worse {snw}",
            row.class, row.approach, row.total
        );
    }
    for x in &summary.excluded {
        println!("excluded {} {}: {}", x.instance_id, x.approach, x.reason);
    }
    Ok(())
}
