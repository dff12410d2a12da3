//! CSV renderings. Column order is fixed by the row structs.

use serde::Serialize;

use super::metrics::{BucketSummary, EmbeddingTimeRow, RegressionFit};
use super::record::RunRecord;
use crate::error::{Error, Result};

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Error::Serde(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Serde(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// `instance_id,problem_class,approach,outcome,best_objective,maximizes,runtime,
/// encode_seconds,embed_seconds,solve_seconds,n_vars,physical_qubits,
/// feasible_share,chain_break_fraction,baseline_objective,baseline_tag,
/// baseline_seconds,reason`
pub fn records_csv(records: &[RunRecord]) -> Result<String> {
    to_csv(records)
}

#[derive(Serialize)]
struct BucketCsvRow<'a> {
    class: &'a str,
    approach: &'a str,
    total: usize,
    within_25: usize,
    share_25: String,
    within_10: usize,
    share_10: String,
    within_5: usize,
    share_5: String,
    no_worse: usize,
    share_no_worse: String,
}

/// `class,approach,total,within_25,share_25,within_10,share_10,within_5,
/// share_5,no_worse,share_no_worse`
pub fn buckets_csv(summary: &BucketSummary) -> Result<String> {
    let rows: Vec<BucketCsvRow> = summary
        .rows
        .iter()
        .map(|r| {
            let [s25, s10, s5, snw] = r.shares();
            BucketCsvRow {
                class: &r.class,
                approach: &r.approach,
                total: r.total,
                within_25: r.within_25,
                share_25: s25,
                within_10: r.within_10,
                share_10: s10,
                within_5: r.within_5,
                share_5: s5,
                no_worse: r.no_worse,
                share_no_worse: snw,
            }
        })
        .collect();
    if rows.is_empty() {
        return Ok("class,approach,total,within_25,share_25,within_10,share_10,within_5,share_5,no_worse,share_no_worse\n".into());
    }
    to_csv(&rows)
}

/// `instance_id,approach,embed_seconds,solve_seconds,embed_share`
pub fn embedding_time_csv(rows: &[EmbeddingTimeRow]) -> Result<String> {
    if rows.is_empty() {
        return Ok("instance_id,approach,embed_seconds,solve_seconds,embed_share\n".into());
    }
    to_csv(rows)
}

/// `beta0,beta,r_squared,n_points`
pub fn regression_csv(fit: &RegressionFit) -> Result<String> {
    to_csv(std::slice::from_ref(fit))
}
