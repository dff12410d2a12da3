use rand::Rng as _;
use serde::Serialize;

use super::Graph;
use crate::error::{invalid, Error, Result};
use crate::rng;

/// Points on the integer grid together with the unit disk graph they induce
/// at `radius`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitDiskInstance {
    pub points: Vec<(i64, i64)>,
    pub radius: f64,
    /// Coordinate window `[0, width] x [0, height]`.
    pub width: i64,
    pub height: i64,
    #[serde(skip)]
    graph: Graph,
}

impl UnitDiskInstance {
    pub fn new(points: Vec<(i64, i64)>, radius: f64, width: i64, height: i64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(invalid(format!("radius must be positive, got {radius}")));
        }
        let mut sorted = points.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("duplicate points"));
        }
        if let Some(p) = points
            .iter()
            .find(|(x, y)| *x < 0 || *y < 0 || *x > width || *y > height)
        {
            return Err(invalid(format!(
                "point {p:?} outside window [0, {width}] x [0, {height}]"
            )));
        }
        let graph = unit_disk_graph(&points, radius);
        Ok(UnitDiskInstance {
            points,
            radius,
            width,
            height,
            graph,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn node_count(&self) -> usize {
        self.points.len()
    }
}

/// Exact test of `sqrt(d2) <= r` for an integer squared distance and the
/// exact binary value of `r`.
pub fn within_radius(d2: u64, r: f64) -> bool {
    debug_assert!(r > 0.0 && r.is_finite());
    let bits = r.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mut m, mut e) = if raw_exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), raw_exp - 1075)
    };
    let tz = m.trailing_zeros();
    m >>= tz;
    e += tz as i64;
    if e >= 0 {
        if e >= 64 {
            return true;
        }
        let r_int = (m as u128) << e;
        if r_int >= 1u128 << 32 {
            return true;
        }
        (d2 as u128) <= r_int * r_int
    } else {
        let shift = (-2 * e) as u32;
        let m2 = (m as u128) * (m as u128);
        if d2 == 0 {
            return true;
        }
        if shift >= 128 || (d2 as u128).leading_zeros() < shift {
            return false;
        }
        ((d2 as u128) << shift) <= m2
    }
}

pub fn unit_disk_graph(points: &[(i64, i64)], radius: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            let dx = points[a].0.abs_diff(points[b].0);
            let dy = points[a].1.abs_diff(points[b].1);
            if within_radius(dx * dx + dy * dy, radius) {
                edges.push((a, b, 1.0));
            }
        }
    }
    Graph::from_edges(points.len(), edges).expect("pairs are distinct and in range")
}

fn ceil_sqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}

/// Window side used for `n` points: `ceil(sqrt(n)) + 1`.
pub fn window_side(n: usize) -> usize {
    ceil_sqrt(n) + 1
}

/// Starts from every integer point of the `(ceil(sqrt n)+1)`-square window
/// and deletes uniformly random points, one at a time, until `n` remain.
pub fn gen_udmis(n: usize, radius: f64, seed: u64) -> Result<UnitDiskInstance> {
    if n < 1 {
        return Err(invalid("n must be at least 1"));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(invalid(format!("radius must be positive, got {radius}")));
    }
    let side = window_side(n);
    let capacity = (side + 1) * (side + 1);
    if n > capacity {
        return Err(Error::Capacity {
            requested: n,
            capacity,
        });
    }
    let mut points: Vec<(i64, i64)> = (0..=side as i64)
        .flat_map(|x| (0..=side as i64).map(move |y| (x, y)))
        .collect();
    let mut rng = rng::seeded(seed);
    while points.len() > n {
        let k = rng.gen_range(0..points.len());
        points.remove(k);
    }
    UnitDiskInstance::new(points, radius, side as i64, side as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_radius_boundaries() {
        assert!(within_radius(1, 1.0));
        assert!(!within_radius(2, 1.0));
        assert!(within_radius(2, 1.42));
        assert!(!within_radius(2, 1.41));
        // sqrt(2) rounded to f64 lies above the true root
        assert!(within_radius(2, std::f64::consts::SQRT_2));
        assert!(within_radius(4, 2.0));
        assert!(!within_radius(5, 2.0));
        assert!(within_radius(0, 1e-300));
        assert!(!within_radius(1, 1e-300));
        assert!(within_radius(u64::MAX, 1e30));
    }

    #[test]
    fn unit_square_connects_sides_only() {
        let inst = UnitDiskInstance::new(vec![(0, 0), (0, 1), (1, 0), (1, 1)], 1.0, 3, 3).unwrap();
        let g = inst.graph();
        assert_eq!(g.edge_count(), 4);
        assert!(!g.has_edge(0, 3));
        assert!(!g.has_edge(1, 2));
    }

    #[test]
    fn generator_window_and_count() {
        let inst = gen_udmis(10, 1.25, 1).unwrap();
        assert_eq!(inst.width, 5);
        assert_eq!(inst.node_count(), 10);
        assert!(inst
            .points
            .iter()
            .all(|&(x, y)| (0..=5).contains(&x) && (0..=5).contains(&y)));
        assert_eq!(gen_udmis(10, 1.25, 1).unwrap(), inst);
        assert_ne!(gen_udmis(10, 1.25, 2).unwrap().points, inst.points);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(gen_udmis(0, 1.0, 0).is_err());
        assert!(gen_udmis(4, 0.0, 0).is_err());
        assert!(gen_udmis(4, f64::NAN, 0).is_err());
        assert!(UnitDiskInstance::new(vec![(0, 0), (0, 0)], 1.0, 2, 2).is_err());
        assert!(UnitDiskInstance::new(vec![(0, 3)], 1.0, 2, 2).is_err());
    }

    #[test]
    fn ceil_sqrt_matches_definition() {
        for n in 1..500usize {
            let r = ceil_sqrt(n);
            assert!(r * r >= n && (r - 1) * (r - 1) < n, "n={n}");
        }
    }
}
