use rand::Rng as _;

use super::Graph;
use crate::error::{invalid, Result};
use crate::rng;

/// Parameters drawn for a weighted Erdős–Rényi instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxCutDraw {
    /// Per-instance maximum weight, uniform on `[1, 10]` (continuous).
    pub c_max: f64,
}

/// Erdős–Rényi `G(n, p)` with weights uniform on `(0, c_max]`.
pub fn gen_maxcut(n: usize, p: f64, seed: u64) -> Result<Graph> {
    gen_maxcut_with_draw(n, p, seed).map(|(g, _)| g)
}

pub fn gen_maxcut_with_draw(n: usize, p: f64, seed: u64) -> Result<(Graph, MaxCutDraw)> {
    if n < 2 {
        return Err(invalid("maxcut instances need at least 2 nodes"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = rng::seeded(seed);
    let c_max: f64 = rng.gen_range(1.0..=10.0);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                // 1 - U is uniform on (0, 1]
                let w = c_max * (1.0 - rng.gen::<f64>());
                edges.push((i, j, w));
            }
        }
    }
    let g = Graph::from_edges(n, edges)?;
    Ok((g, MaxCutDraw { c_max }))
}

/// Total weight of edges crossing the partition.
pub fn cut_weight(g: &Graph, side: &[bool]) -> f64 {
    g.edges()
        .iter()
        .filter(|e| side[e.i] != side[e.j])
        .map(|e| e.weight)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_probabilities() {
        assert_eq!(gen_maxcut(6, 0.0, 3).unwrap().edge_count(), 0);
        let g = gen_maxcut(5, 1.0, 3).unwrap();
        assert_eq!(g.edge_count(), 10);
    }

    #[test]
    fn weights_within_drawn_range() {
        for seed in 0..20 {
            let (g, draw) = gen_maxcut_with_draw(12, 0.5, seed).unwrap();
            assert!((1.0..=10.0).contains(&draw.c_max));
            assert!(g
                .edges()
                .iter()
                .all(|e| e.weight > 0.0 && e.weight <= draw.c_max));
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(gen_maxcut(1, 0.5, 0).is_err());
        assert!(gen_maxcut(4, 1.5, 0).is_err());
        assert!(gen_maxcut(4, -0.1, 0).is_err());
    }

    #[test]
    fn cut_of_triangle() {
        let g = Graph::complete(3);
        assert_eq!(cut_weight(&g, &[true, false, false]), 2.0);
        assert_eq!(cut_weight(&g, &[true, true, true]), 0.0);
    }
}
