//! Minimum and maximum cycle mean (Karp).

use std::cmp::Ordering;

use crate::graph::WeightedGraph;

use super::{MpError, Rational};

/// Minimum mean of a cycle reachable from the root, in coordinate `coord`.
pub fn min_mean_cycle(graph: &WeightedGraph, coord: usize) -> Result<Rational, MpError> {
    karp(graph, coord, 1)
}

/// Maximum mean of a cycle reachable from the root, in coordinate `coord`.
pub fn max_mean_cycle(graph: &WeightedGraph, coord: usize) -> Result<Rational, MpError> {
    karp(graph, coord, -1).map(|r| -r)
}

/// `a/b` vs `c/d` for positive denominators.
fn cmp_frac(a: i64, b: i64, c: i64, d: i64) -> Ordering {
    (a as i128 * d as i128).cmp(&(c as i128 * b as i128))
}

fn karp(graph: &WeightedGraph, coord: usize, sign: i64) -> Result<Rational, MpError> {
    let reach = graph.reachable_from_root();
    let (sub, _) = graph.induced(&reach);
    let n = sub.node_count();
    // d[k][v]: minimum weight of a walk of exactly k edges from the root.
    let mut d: Vec<Vec<Option<i64>>> = vec![vec![None; n]; n + 1];
    d[0][sub.root()] = Some(0);
    for k in 1..=n {
        for e in sub.edges() {
            if let Some(prev) = d[k - 1][e.from] {
                let cand = prev + sign * e.weight[coord];
                let slot = &mut d[k][e.to];
                if slot.map_or(true, |cur| cand < cur) {
                    *slot = Some(cand);
                }
            }
        }
    }
    // min over v of max over k of (d_n(v) - d_k(v)) / (n - k)
    let mut best: Option<(i64, i64)> = None;
    for v in 0..n {
        let Some(dn) = d[n][v] else { continue };
        let mut worst: Option<(i64, i64)> = None;
        for k in 0..n {
            if let Some(dk) = d[k][v] {
                let cand = (dn - dk, (n - k) as i64);
                if worst.map_or(true, |(a, b)| cmp_frac(cand.0, cand.1, a, b) == Ordering::Greater) {
                    worst = Some(cand);
                }
            }
        }
        if let Some(w) = worst {
            if best.map_or(true, |(a, b)| cmp_frac(w.0, w.1, a, b) == Ordering::Less) {
                best = Some(w);
            }
        }
    }
    best.map(|(a, b)| Rational::new(a, b)).ok_or(MpError::NoCycle)
}
