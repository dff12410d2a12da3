//! Batch runner and evaluation: run directories, deviation metrics, bucket
//! tables, the embedding-size regression and runtime splits.

mod metrics;
mod pipeline;
mod record;
mod tables;

pub use metrics::{
    bucket_summary, embedding_share, embedding_time_report, fit_embedding_regression,
    rel_deviations, BucketRow, BucketSummary, EmbeddingTimeRow, Excluded, RegressionFit,
    BUCKET_THRESHOLDS, NO_SHARE,
};
pub use pipeline::{
    baseline, best_original_objective, clique_embedding, encode_instance, encoding_kind_for,
    instance_ids, interaction_graph, read_records, run_pipeline, EmbedTarget, Manifest,
    ManifestEntry, PipelineConfig, SolverConfig, LARGE_ANNEAL_SHOTS, LARGE_ANNEAL_SWEEPS,
};
pub use record::{Outcome, RunRecord};
pub use tables::{buckets_csv, embedding_time_csv, records_csv, regression_csv, to_csv};
