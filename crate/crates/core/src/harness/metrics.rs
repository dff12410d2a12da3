use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::record::{Outcome, RunRecord};
use crate::error::{invalid, Error, Result};

/// Relative objective and runtime deviations from a classical baseline,
/// `R_f = (f_q - f_c) / f_c` and `R_t = (t_q - t_c) / t_c`.
pub fn rel_deviations(f_q: f64, f_c: f64, t_q: f64, t_c: f64) -> Result<(f64, f64)> {
    if !(f_c > 0.0) {
        return Err(invalid(format!(
            "baseline objective f_c must be > 0, got {f_c}"
        )));
    }
    if !(t_c > 0.0) {
        return Err(invalid(format!(
            "baseline runtime t_c must be > 0, got {t_c}"
        )));
    }
    Ok(((f_q - f_c) / f_c, (t_q - t_c) / t_c))
}

pub const BUCKET_THRESHOLDS: [f64; 3] = [0.25, 0.10, 0.05];

/// Shares are rendered as this dash when a group has fewer than two runs.
pub const NO_SHARE: &str = "—";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BucketRow {
    pub class: String,
    pub approach: String,
    /// Successful (feasible) runs with a usable baseline.
    pub total: usize,
    pub within_25: usize,
    pub within_10: usize,
    pub within_5: usize,
    pub no_worse: usize,
}

impl BucketRow {
    fn share(&self, count: usize) -> String {
        if self.total < 2 {
            NO_SHARE.to_string()
        } else {
            format!("{:.1}%", 100.0 * count as f64 / self.total as f64)
        }
    }

    /// `[within 25%, within 10%, within 5%, no worse]` as percentages.
    pub fn shares(&self) -> [String; 4] {
        [
            self.share(self.within_25),
            self.share(self.within_10),
            self.share(self.within_5),
            self.share(self.no_worse),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Excluded {
    pub instance_id: String,
    pub approach: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BucketSummary {
    pub rows: Vec<BucketRow>,
    pub excluded: Vec<Excluded>,
}

/// Groups successful runs by `(class, approach)` and counts how many land
/// within 25%, 10% and 5% of their baseline, and how many are no worse
/// than it (`R_f >= 0` when maximizing, `R_f <= 0` when minimizing).
///
/// Runs without a baseline, or with a baseline objective that is not
/// positive, are left out and listed in `excluded`.
pub fn bucket_summary(records: &[RunRecord]) -> BucketSummary {
    let mut groups: BTreeMap<(String, String), BucketRow> = BTreeMap::new();
    let mut excluded = Vec::new();
    for r in records.iter().filter(|r| r.outcome == Outcome::Success) {
        let exclude = |reason: String| Excluded {
            instance_id: r.instance_id.clone(),
            approach: r.approach.clone(),
            reason,
        };
        let Some(f_c) = r.baseline_objective else {
            excluded.push(exclude("missing baseline".into()));
            continue;
        };
        let f_q = r.best_objective.expect("success carries an objective");
        let r_f = match rel_deviations(f_q, f_c, 1.0, 1.0) {
            Ok((r_f, _)) => r_f,
            Err(e) => {
                excluded.push(exclude(e.to_string()));
                continue;
            }
        };
        let row = groups
            .entry((r.problem_class.clone(), r.approach.clone()))
            .or_insert_with(|| BucketRow {
                class: r.problem_class.clone(),
                approach: r.approach.clone(),
                total: 0,
                within_25: 0,
                within_10: 0,
                within_5: 0,
                no_worse: 0,
            });
        row.total += 1;
        let a = r_f.abs();
        row.within_25 += (a <= BUCKET_THRESHOLDS[0]) as usize;
        row.within_10 += (a <= BUCKET_THRESHOLDS[1]) as usize;
        row.within_5 += (a <= BUCKET_THRESHOLDS[2]) as usize;
        let no_worse = if r.maximizes { r_f >= 0.0 } else { r_f <= 0.0 };
        row.no_worse += no_worse as usize;
    }
    BucketSummary {
        rows: groups.into_values().collect(),
        excluded,
    }
}

/// OLS fit of `log N_e = beta0 + beta log N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub beta0: f64,
    pub beta: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

impl RegressionFit {
    /// Sum of squared residuals of `(beta0, beta)` on log-transformed pairs.
    pub fn residual_sum(beta0: f64, beta: f64, pairs: &[(f64, f64)]) -> f64 {
        pairs
            .iter()
            .map(|&(n, ne)| {
                let r = ne.ln() - beta0 - beta * n.ln();
                r * r
            })
            .sum()
    }

    pub fn predict(&self, n: f64) -> f64 {
        (self.beta0 + self.beta * n.ln()).exp()
    }
}

pub fn fit_embedding_regression(pairs: &[(f64, f64)]) -> Result<RegressionFit> {
    if pairs.len() < 3 {
        return Err(invalid(format!(
            "regression needs at least 3 pairs, got {}",
            pairs.len()
        )));
    }
    if let Some(p) = pairs
        .iter()
        .find(|(n, ne)| !(*n > 0.0 && *ne > 0.0) || !n.is_finite() || !ne.is_finite())
    {
        return Err(invalid(format!(
            "pairs must be positive and finite, got {p:?}"
        )));
    }
    let k = pairs.len() as f64;
    let xs: Vec<f64> = pairs.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    if sxx <= 1e-12 * k * (1.0 + mx * mx) {
        return Err(Error::DegenerateFit("all N values are equal".into()));
    }
    let beta = sxy / sxx;
    let beta0 = my - beta * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - beta0 - beta * x;
            r * r
        })
        .sum();
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Ok(RegressionFit {
        beta0,
        beta,
        r_squared,
        n_points: pairs.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingTimeRow {
    pub instance_id: String,
    pub approach: String,
    pub embed_seconds: f64,
    pub solve_seconds: f64,
    /// `embed / (embed + solve)`, 0 when both phases took no time.
    pub embed_share: f64,
}

pub fn embedding_share(embed: f64, solve: f64) -> f64 {
    let total = embed + solve;
    if total > 0.0 {
        (embed / total).clamp(0.0, 1.0)
    } else {
        0.0
    }
}

/// Per-run split of the configured runtime into embedding and solving.
pub fn embedding_time_report(records: &[RunRecord]) -> Vec<EmbeddingTimeRow> {
    records
        .iter()
        .filter(|r| r.outcome != Outcome::Fail)
        .map(|r| EmbeddingTimeRow {
            instance_id: r.instance_id.clone(),
            approach: r.approach.clone(),
            embed_seconds: r.embed_seconds,
            solve_seconds: r.solve_seconds,
            embed_share: embedding_share(r.embed_seconds, r.solve_seconds),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deviations_by_hand() {
        assert_eq!(rel_deviations(5.0, 5.0, 2.0, 4.0).unwrap(), (0.0, -0.5));
        let (r_f, _) = rel_deviations(11.0, 10.0, 1.0, 1.0).unwrap();
        assert!((r_f - 0.1).abs() < 1e-15);
        assert!(rel_deviations(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(rel_deviations(1.0, 1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn equal_n_is_degenerate() {
        let pairs = [(4.0, 10.0), (4.0, 12.0), (4.0, 13.0)];
        assert!(matches!(
            fit_embedding_regression(&pairs),
            Err(Error::DegenerateFit(_))
        ));
    }

    #[test]
    fn share_edges() {
        assert_eq!(embedding_share(9.0, 1.0), 0.9);
        assert_eq!(embedding_share(0.0, 0.0), 0.0);
        assert_eq!(embedding_share(0.0, 3.0), 0.0);
    }
}
