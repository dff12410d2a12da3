use serde::Serialize;

use super::record::EncodingKind;
use super::tsp_dfj::dfj_slack_bits;
use super::tsp_mtz::{mtz_order_bits, mtz_slack_bits};
use crate::error::{invalid, Error, Result};

/// Variable count of an encoding, split by purpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VarCount {
    pub kind: EncodingKind,
    pub nodes: usize,
    /// Decision variables of the model: node indicators, edges, arcs or
    /// assignments.
    pub core: usize,
    /// MTZ position bits.
    pub order_bits: usize,
    /// Slack bits of inequality constraints.
    pub slack_bits: usize,
}

impl VarCount {
    /// Size of the constructed QUBO.
    pub fn total(&self) -> usize {
        self.core + self.order_bits + self.slack_bits
    }

    /// The published closed-form count. For MTZ this is the auxiliary
    /// count `(N-1)((N-1) floor(log2(N-2)) + 2N - 3)`, which leaves out the
    /// `N(N-1)` arc variables; for every other encoding it equals
    /// [`total`](Self::total).
    pub fn formula(&self) -> usize {
        match self.kind {
            EncodingKind::TspMtz => self.order_bits + self.slack_bits,
            _ => self.total(),
        }
    }
}

fn binomial(n: usize, k: usize) -> Option<usize> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i + 1) as u128;
    }
    usize::try_from(acc).ok()
}

/// Slack bits over all DFJ subtour constraints.
pub(crate) fn dfj_slack_total(n: usize) -> Option<usize> {
    let mut total = 0usize;
    let mut add = |count: usize, bits: u32| -> Option<()> {
        total = total.checked_add(count.checked_mul(bits as usize)?)?;
        Some(())
    };
    for k in 3..n.div_ceil(2) {
        add(binomial(n, k)?, dfj_slack_bits(k))?;
    }
    if n % 2 == 0 && n / 2 >= 3 {
        add(binomial(n, n / 2)? / 2, dfj_slack_bits(n / 2))?;
    }
    Some(total)
}

pub(crate) fn dfj_count(n: usize) -> Result<usize> {
    dfj_slack_total(n)
        .and_then(|s| s.checked_add(n * (n - 1) / 2))
        .ok_or_else(|| invalid(format!("DFJ variable count for N = {n} overflows")))
}

/// Closed-form variable count of `kind` on `nodes` nodes.
pub fn count_vars(kind: EncodingKind, nodes: usize) -> Result<VarCount> {
    let mut c = VarCount {
        kind,
        nodes,
        core: 0,
        order_bits: 0,
        slack_bits: 0,
    };
    let n = nodes;
    match kind {
        EncodingKind::Udmis | EncodingKind::Maxcut => c.core = n,
        EncodingKind::TspQap => {
            if n < 2 {
                return Err(invalid(format!("QAP count needs N >= 2, got {n}")));
            }
            c.core = (n - 1) * (n - 1);
        }
        EncodingKind::TspMtz => {
            if n < 4 {
                return Err(invalid(format!("MTZ count needs N >= 4, got {n}")));
            }
            c.core = n * (n - 1);
            c.order_bits = (n - 1) * mtz_order_bits(n) as usize;
            c.slack_bits = (n - 1) * (n - 2) * mtz_slack_bits(n) as usize;
        }
        EncodingKind::TspDfj => {
            if n < 4 {
                return Err(invalid(format!("DFJ count needs N >= 4, got {n}")));
            }
            c.core = n * (n - 1) / 2;
            c.slack_bits = dfj_slack_total(n).ok_or_else(|| {
                Error::InvalidArgument(format!("DFJ variable count for N = {n} overflows"))
            })?;
        }
    }
    Ok(c)
}

/// Parses a formulation tag and counts its variables.
pub fn count_vars_by_tag(tag: &str, nodes: usize) -> Result<VarCount> {
    count_vars(tag.parse()?, nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mtz_breakdown_matches_closed_form() {
        for n in 4..200usize {
            let c = count_vars(EncodingKind::TspMtz, n).unwrap();
            let fl = (n - 2).ilog2() as usize;
            assert_eq!(c.formula(), (n - 1) * ((n - 1) * fl + 2 * n - 3), "N={n}");
        }
    }

    #[test]
    fn unknown_tag() {
        assert!(matches!(
            count_vars_by_tag("gtsp", 5),
            Err(Error::UnknownTag(_))
        ));
        assert_eq!(count_vars_by_tag("qap", 10).unwrap().total(), 81);
    }
}
