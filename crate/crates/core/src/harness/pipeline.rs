use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::record::{Outcome, RunRecord};
use crate::clock::Stopwatch;
use crate::encodings::{
    decode, encode_maxcut, encode_mis, encode_tsp_dfj, encode_tsp_mtz, encode_tsp_qap,
    EncodingKind, EncodingRecord,
};
use crate::error::{invalid, Error, Result};
use crate::hardware::{
    default_chain_strength, embed_clique_chimera, embed_clique_pegasus, embed_qubo,
    embedding_to_json, validate_embedding, MinorEmbedding, TopologyGraph,
};
use crate::instances::{Graph, Instance, InstanceFile, ProblemClass};
use crate::solvers::{
    brute_force, histogram, qaoa_simulate, simulated_anneal, AnnealParams, QaoaParams, SampleSet,
    BRUTE_FORCE_MAX_VARS,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolverConfig {
    BruteForce,
    Anneal {
        shots: usize,
        sweeps: usize,
        seed: u64,
    },
    Qaoa {
        depth: usize,
        budget: usize,
        shots: usize,
        seed: u64,
    },
}

impl SolverConfig {
    pub fn tag(&self) -> &'static str {
        match self {
            SolverConfig::BruteForce => "brute_force",
            SolverConfig::Anneal { .. } => "sa",
            SolverConfig::Qaoa { .. } => "qaoa",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbedTarget {
    Chimera,
    Pegasus,
}

impl EmbedTarget {
    pub fn as_str(self) -> &'static str {
        match self {
            EmbedTarget::Chimera => "chimera",
            EmbedTarget::Pegasus => "pegasus",
        }
    }
}

impl std::str::FromStr for EmbedTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chimera" => Ok(EmbedTarget::Chimera),
            "pegasus" => Ok(EmbedTarget::Pegasus),
            other => Err(Error::UnknownTag(other.to_string())),
        }
    }
}

/// Clique embedding of `n` variables into the smallest topology of the
/// family that holds it.
pub fn clique_embedding(target: EmbedTarget, n: usize) -> Result<(TopologyGraph, MinorEmbedding)> {
    match target {
        EmbedTarget::Chimera => embed_clique_chimera(n),
        EmbedTarget::Pegasus => embed_clique_pegasus(n),
    }
}

/// Annealing budget for the baseline when brute force is out of reach.
pub const LARGE_ANNEAL_SHOTS: usize = 1000;
pub const LARGE_ANNEAL_SWEEPS: usize = 2000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub instances: Vec<PathBuf>,
    /// Encoding for TSP instances; graphs use MIS (UD-MIS files) or
    /// MaxCut.
    #[serde(default = "default_tsp_encoding")]
    pub tsp_encoding: EncodingKind,
    /// Overrides the encoding's default penalty.
    #[serde(default)]
    pub penalty: Option<f64>,
    pub solver: SolverConfig,
    #[serde(default)]
    pub embed: Option<EmbedTarget>,
    /// `None` uses twice the largest QUBO coefficient.
    #[serde(default)]
    pub chain_strength: Option<f64>,
    #[serde(default = "yes")]
    pub baseline: bool,
    pub out: PathBuf,
}

fn default_tsp_encoding() -> EncodingKind {
    EncodingKind::TspQap
}

fn yes() -> bool {
    true
}

impl PipelineConfig {
    pub fn new(instances: Vec<PathBuf>, solver: SolverConfig, out: impl Into<PathBuf>) -> Self {
        PipelineConfig {
            instances,
            tsp_encoding: default_tsp_encoding(),
            penalty: None,
            solver,
            embed: None,
            chain_strength: None,
            baseline: true,
            out: out.into(),
        }
    }
}

pub fn encoding_kind_for(class: ProblemClass, tsp_encoding: EncodingKind) -> Result<EncodingKind> {
    match class {
        ProblemClass::Udmis => Ok(EncodingKind::Udmis),
        ProblemClass::Maxcut => Ok(EncodingKind::Maxcut),
        ProblemClass::Tsp if tsp_encoding.is_tsp() => Ok(tsp_encoding),
        ProblemClass::Tsp => Err(invalid(format!("`{tsp_encoding}` is not a TSP encoding"))),
    }
}

/// Encodes an instance. MIS can also be requested for a MaxCut graph.
pub fn encode_instance(
    inst: &Instance,
    kind: EncodingKind,
    penalty: Option<f64>,
) -> Result<EncodingRecord> {
    let mismatch = || {
        invalid(format!(
            "cannot encode a {} instance as {kind}",
            inst.class().as_str()
        ))
    };
    match (inst, kind) {
        (Instance::Udmis(u), EncodingKind::Udmis) => encode_mis(u.graph(), penalty),
        (Instance::MaxCut(g), EncodingKind::Udmis) => encode_mis(g, penalty),
        (Instance::MaxCut(g), EncodingKind::Maxcut) => Ok(encode_maxcut(g)),
        (Instance::Udmis(u), EncodingKind::Maxcut) => Ok(encode_maxcut(u.graph())),
        (Instance::Tsp(t), EncodingKind::TspQap) => encode_tsp_qap(t, penalty),
        (Instance::Tsp(t), EncodingKind::TspMtz) => encode_tsp_mtz(t, penalty, None),
        (Instance::Tsp(t), EncodingKind::TspDfj) => encode_tsp_dfj(t, penalty),
        _ => Err(mismatch()),
    }
}

/// Interaction graph of a QUBO: one edge per nonzero off-diagonal entry.
pub fn interaction_graph(rec: &EncodingRecord) -> Graph {
    let edges = rec
        .qubo
        .entries()
        .filter(|&(i, j, _)| i != j)
        .map(|(i, j, _)| (i, j, 1.0));
    Graph::from_edges(rec.n(), edges).expect("QUBO entries are distinct pairs")
}

fn better(maximizes: bool, a: f64, b: f64) -> bool {
    if maximizes {
        a > b
    } else {
        a < b
    }
}

/// Best original objective over the feasible records.
pub fn best_original_objective(rec: &EncodingRecord, samples: &SampleSet) -> Result<Option<f64>> {
    let maximizes = !rec.kind.is_tsp();
    let mut best: Option<f64> = None;
    for r in samples.records.iter().filter(|r| r.feasible) {
        if let Some(v) = decode(rec, &r.bits)?.original_objective {
            if best.is_none_or(|b| better(maximizes, v, b)) {
                best = Some(v);
            }
        }
    }
    Ok(best)
}

/// Reference objective: the decoded QUBO optimum when brute force is
/// within reach, otherwise the best feasible sample of a long anneal.
pub fn baseline(rec: &EncodingRecord, seed: u64) -> Result<(Option<f64>, &'static str, f64)> {
    let t0 = Stopwatch::start();
    if rec.n() <= BRUTE_FORCE_MAX_VARS {
        let bf = brute_force(&rec.qubo)?;
        let bits = crate::solvers::mask_to_bits(bf.argmin[0], bf.n);
        let value = decode(rec, &bits)?.original_objective;
        return Ok((value, "brute_force", t0.seconds()));
    }
    let mut s = simulated_anneal(
        &rec.qubo,
        &AnnealParams {
            shots: LARGE_ANNEAL_SHOTS,
            sweeps: LARGE_ANNEAL_SWEEPS,
            schedule: None,
            seed,
        },
    )?;
    s.classify(rec)?;
    let value = best_original_objective(rec, &s)?;
    Ok((value, "sa_large_budget", t0.seconds()))
}

struct Solved {
    samples: SampleSet,
    embed_seconds: f64,
    solve_seconds: f64,
    physical_qubits: Option<usize>,
    chain_break_fraction: Option<f64>,
    embedding_json: Option<String>,
}

fn solve(cfg: &PipelineConfig, rec: &EncodingRecord) -> Result<Solved> {
    let q = &rec.qubo;
    if let Some(target) = cfg.embed {
        let SolverConfig::Anneal {
            shots,
            sweeps,
            seed,
        } = cfg.solver
        else {
            return Err(invalid("embedded runs need the annealing solver"));
        };
        let t0 = Stopwatch::start();
        let (topo, emb) = clique_embedding(target, rec.n())?;
        let report = validate_embedding(&interaction_graph(rec), &topo, &emb);
        if !report.valid {
            return Err(invalid(format!(
                "embedding failed validation with {} violations",
                report.violations.len()
            )));
        }
        let strength = cfg
            .chain_strength
            .unwrap_or_else(|| default_chain_strength(q));
        let phys = embed_qubo(q, &topo, &emb, strength)?;
        let embed_seconds = t0.seconds();

        let t1 = Stopwatch::start();
        let raw = simulated_anneal(
            &phys.qubo,
            &AnnealParams {
                shots,
                sweeps,
                schedule: None,
                seed,
            },
        )?;
        let mut logical = Vec::with_capacity(raw.shots as usize);
        let mut broken = 0.0;
        for r in &raw.records {
            let res = phys.resolve(&emb, &r.bits)?;
            broken += res.break_fraction * r.count as f64;
            for _ in 0..r.count {
                logical.push(res.logical.clone());
            }
        }
        let solve_seconds = t1.seconds();
        let tag = format!("{}@{}", raw.solver, target.as_str());
        let samples = SampleSet::from_samples(q, logical, &tag, solve_seconds);
        return Ok(Solved {
            samples,
            embed_seconds,
            solve_seconds,
            physical_qubits: Some(emb.physical_qubits()),
            chain_break_fraction: Some(broken / raw.shots.max(1) as f64),
            embedding_json: Some(embedding_to_json(&topo, &emb)?),
        });
    }
    let t1 = Stopwatch::start();
    let samples = match &cfg.solver {
        SolverConfig::BruteForce => {
            let bf = brute_force(q)?;
            SampleSet::from_samples(q, bf.bitstrings(), "brute_force", 0.0)
        }
        SolverConfig::Anneal {
            shots,
            sweeps,
            seed,
        } => simulated_anneal(
            q,
            &AnnealParams {
                shots: *shots,
                sweeps: *sweeps,
                schedule: None,
                seed: *seed,
            },
        )?,
        SolverConfig::Qaoa {
            depth,
            budget,
            shots,
            seed,
        } => qaoa_simulate(q, &QaoaParams::new(*depth, *budget, *shots, *seed))?.0,
    };
    Ok(Solved {
        samples,
        embed_seconds: 0.0,
        solve_seconds: t1.seconds(),
        physical_qubits: None,
        chain_break_fraction: None,
        embedding_json: None,
    })
}

/// Instance ids are file stems, suffixed `-2`, `-3`, .. on collision.
pub fn instance_ids(paths: &[PathBuf]) -> Vec<String> {
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    paths
        .iter()
        .map(|p| {
            let stem = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "instance".into());
            let k = seen.entry(stem.clone()).or_insert(0);
            *k += 1;
            if *k == 1 {
                stem
            } else {
                format!("{stem}-{k}")
            }
        })
        .collect()
}

fn approach_tag(cfg: &PipelineConfig, kind: Option<EncodingKind>) -> String {
    let enc = kind.map_or("unknown", |k| k.as_str());
    match cfg.embed {
        Some(t) => format!("{enc}+{}@{}", cfg.solver.tag(), t.as_str()),
        None => format!("{enc}+{}", cfg.solver.tag()),
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Format(format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn seed_of(solver: &SolverConfig) -> u64 {
    match solver {
        SolverConfig::BruteForce => 0,
        SolverConfig::Anneal { seed, .. } | SolverConfig::Qaoa { seed, .. } => *seed,
    }
}

fn run_one(cfg: &PipelineConfig, id: &str, path: &Path, dir: &Path) -> RunRecord {
    let mut r = RunRecord {
        instance_id: id.to_string(),
        problem_class: "unknown".into(),
        approach: approach_tag(cfg, None),
        outcome: Outcome::Fail,
        best_objective: None,
        maximizes: true,
        runtime: 0.0,
        encode_seconds: 0.0,
        embed_seconds: 0.0,
        solve_seconds: 0.0,
        n_vars: None,
        physical_qubits: None,
        feasible_share: None,
        chain_break_fraction: None,
        baseline_objective: None,
        baseline_tag: None,
        baseline_seconds: None,
        reason: None,
    };
    if let Err(e) = run_into(cfg, path, dir, &mut r) {
        r.outcome = Outcome::Fail;
        r.best_objective = None;
        r.reason = Some(e.to_string());
    }
    r
}

fn run_into(cfg: &PipelineConfig, path: &Path, dir: &Path, r: &mut RunRecord) -> Result<()> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let file = InstanceFile::from_json(&text)?;
    let class = file.instance.class();
    r.problem_class = class.as_str().into();
    let kind = encoding_kind_for(class, cfg.tsp_encoding)?;
    r.approach = approach_tag(cfg, Some(kind));
    r.maximizes = !kind.is_tsp();

    let t0 = Stopwatch::start();
    let rec = encode_instance(&file.instance, kind, cfg.penalty)?;
    r.encode_seconds = t0.seconds();
    r.n_vars = Some(rec.n());
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    write(&dir.join("encoding.json"), &rec.to_json()?)?;

    if cfg.baseline {
        let (value, tag, secs) = baseline(&rec, seed_of(&cfg.solver))?;
        r.baseline_objective = value;
        r.baseline_tag = Some(tag.into());
        r.baseline_seconds = Some(secs);
    }

    let mut solved = solve(cfg, &rec)?;
    solved.samples.classify(&rec)?;
    r.embed_seconds = solved.embed_seconds;
    r.solve_seconds = solved.solve_seconds;
    r.runtime = solved.embed_seconds + solved.solve_seconds;
    r.physical_qubits = solved.physical_qubits;
    r.chain_break_fraction = solved.chain_break_fraction;
    r.feasible_share = Some(solved.samples.feasible_share());
    r.best_objective = best_original_objective(&rec, &solved.samples)?;
    r.outcome = if r.best_objective.is_some() {
        Outcome::Success
    } else {
        Outcome::Infeasible
    };

    write(&dir.join("samples.json"), &solved.samples.to_json()?)?;
    write(
        &dir.join("histogram.csv"),
        &histogram(&solved.samples).to_csv()?,
    )?;
    if let Some(best) = solved.samples.best_feasible().or(solved.samples.best()) {
        let d = decode(&rec, &best.bits)?;
        write(
            &dir.join("decoded.json"),
            &serde_json::to_string_pretty(&d)?,
        )?;
    }
    if let Some(json) = solved.embedding_json {
        write(&dir.join("embedding.json"), &json)?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub instance_id: String,
    pub path: PathBuf,
    pub artifacts: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub rng: String,
    pub config: PipelineConfig,
    pub records: Vec<String>,
    pub instances: Vec<ManifestEntry>,
}

/// Runs every configured instance and writes the run directory:
///
/// ```text
/// <out>/manifest.json
/// <out>/records.json, records.csv
/// <out>/runs/<instance_id>/{encoding.json, samples.json, histogram.csv, decoded.json, embedding.json}
/// ```
///
/// A failing instance becomes a `fail` record and never stops the batch.
/// Records are sorted by instance id.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<Vec<RunRecord>> {
    fs::create_dir_all(&cfg.out).map_err(|e| io_err(&cfg.out, e))?;
    let ids = instance_ids(&cfg.instances);
    let mut records = Vec::with_capacity(ids.len());
    let mut entries = Vec::with_capacity(ids.len());
    for (id, path) in ids.iter().zip(&cfg.instances) {
        let dir = cfg.out.join("runs").join(id);
        records.push(run_one(cfg, id, path, &dir));
        let mut artifacts: Vec<String> = match fs::read_dir(&dir) {
            Ok(rd) => rd
                .filter_map(|e| e.ok())
                .map(|e| format!("runs/{id}/{}", e.file_name().to_string_lossy()))
                .collect(),
            Err(_) => Vec::new(),
        };
        artifacts.sort();
        entries.push(ManifestEntry {
            instance_id: id.clone(),
            path: path.clone(),
            artifacts,
        });
    }
    records.sort_by(|a, b| a.instance_id.cmp(&b.instance_id));
    entries.sort_by(|a, b| a.instance_id.cmp(&b.instance_id));

    write(
        &cfg.out.join("records.json"),
        &serde_json::to_string_pretty(&records)?,
    )?;
    write(
        &cfg.out.join("records.csv"),
        &super::tables::records_csv(&records)?,
    )?;
    let manifest = Manifest {
        tool: "qbench".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        rng: crate::rng::ALGORITHM.into(),
        config: cfg.clone(),
        records: vec!["records.json".into(), "records.csv".into()],
        instances: entries,
    };
    write(
        &cfg.out.join("manifest.json"),
        &serde_json::to_string_pretty(&manifest)?,
    )?;
    Ok(records)
}

pub fn read_records(path: &Path) -> Result<Vec<RunRecord>> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    Ok(serde_json::from_str(&text)?)
}
