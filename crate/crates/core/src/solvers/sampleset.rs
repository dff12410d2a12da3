use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::encodings::{decode, EncodingRecord, Qubo};
use crate::error::{invalid, Result};

/// Renders bits as a `0`/`1` string, variable 0 first.
pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn bits_from_str(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(invalid(format!("bitstring contains `{other}`"))),
        })
        .collect()
}

mod bitstring {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(bits: &[bool], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::bits_to_string(bits))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<bool>, D::Error> {
        let s = String::deserialize(d)?;
        super::bits_from_str(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    #[serde(with = "bitstring")]
    pub bits: Vec<bool>,
    pub energy: f64,
    pub count: u64,
    /// Feasibility against the source problem; `true` until
    /// [`SampleSet::classify`] is applied, since a bare QUBO has no
    /// constraints.
    pub feasible: bool,
}

/// Distinct measured bitstrings with multiplicities, sorted by energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub records: Vec<SampleRecord>,
    pub shots: u64,
    /// Seconds spent producing the samples.
    pub wallclock: f64,
    pub solver: String,
}

impl SampleSet {
    /// Aggregates raw samples; energies are evaluated as `x^T Q x`.
    pub fn from_samples<I>(q: &Qubo, samples: I, solver: &str, wallclock: f64) -> Self
    where
        I: IntoIterator<Item = Vec<bool>>,
    {
        let mut counts: BTreeMap<Vec<bool>, u64> = BTreeMap::new();
        let mut shots = 0;
        for s in samples {
            *counts.entry(s).or_insert(0) += 1;
            shots += 1;
        }
        let mut records: Vec<SampleRecord> = counts
            .into_iter()
            .map(|(bits, count)| SampleRecord {
                energy: q.energy(&bits),
                bits,
                count,
                feasible: true,
            })
            .collect();
        records.sort_by(|a, b| {
            a.energy
                .total_cmp(&b.energy)
                .then_with(|| a.bits.cmp(&b.bits))
        });
        SampleSet {
            records,
            shots,
            wallclock,
            solver: solver.to_string(),
        }
    }

    /// Marks each record feasible or not by decoding it.
    pub fn classify(&mut self, rec: &EncodingRecord) -> Result<()> {
        for r in &mut self.records {
            r.feasible = decode(rec, &r.bits)?.feasible;
        }
        Ok(())
    }

    /// Lowest-energy record.
    pub fn best(&self) -> Option<&SampleRecord> {
        self.records.first()
    }

    /// Lowest-energy feasible record.
    pub fn best_feasible(&self) -> Option<&SampleRecord> {
        self.records.iter().find(|r| r.feasible)
    }

    /// Most frequent record; ties go to the lower energy.
    pub fn modal(&self) -> Option<&SampleRecord> {
        self.records
            .iter()
            .min_by(|a, b| b.count.cmp(&a.count).then(a.energy.total_cmp(&b.energy)))
    }

    pub fn feasible_share(&self) -> f64 {
        if self.shots == 0 {
            return 0.0;
        }
        let f: u64 = self
            .records
            .iter()
            .filter(|r| r.feasible)
            .map(|r| r.count)
            .sum();
        f as f64 / self.shots as f64
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramRow {
    pub bitstring: String,
    pub count: u64,
    pub energy: f64,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub rows: Vec<HistogramRow>,
    pub shots: u64,
    pub feasible_share: f64,
}

/// Frequency table sorted by count (descending), then energy.
pub fn histogram(s: &SampleSet) -> Histogram {
    let mut rows: Vec<HistogramRow> = s
        .records
        .iter()
        .map(|r| HistogramRow {
            bitstring: bits_to_string(&r.bits),
            count: r.count,
            energy: r.energy,
            feasible: r.feasible,
        })
        .collect();
    rows.sort_by(|a, b| {
        b.count
            .cmp(&a.count)
            .then(a.energy.total_cmp(&b.energy))
            .then_with(|| a.bitstring.cmp(&b.bitstring))
    });
    Histogram {
        rows,
        shots: s.shots,
        feasible_share: s.feasible_share(),
    }
}

impl Histogram {
    /// CSV with header `bitstring,count,energy,feasible`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row)
                .map_err(|e| crate::Error::Serde(e.to_string()))?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| crate::Error::Serde(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}
