//! Simple cycle enumeration (Johnson).

use std::collections::BTreeSet;

use crate::graph::WeightedGraph;

use super::Rational;

/// Every simple cycle once, as a node sequence starting at its least node.
pub fn enumerate_simple_cycles(graph: &WeightedGraph) -> Vec<Vec<usize>> {
    let n = graph.node_count();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut s: Vec<usize> = graph.successors(v).collect();
            s.sort_unstable();
            s
        })
        .collect();
    let mut cycles = Vec::new();
    for start in 0..n {
        // Restrict to nodes >= start, then to the SCC containing start.
        let keep: Vec<bool> = (0..n).map(|v| v >= start).collect();
        let (sub, old) = graph.induced(&keep);
        let Some(comp) = sub.sccs().into_iter().find(|c| c.contains(&0)) else {
            continue;
        };
        let in_comp: BTreeSet<usize> = comp.iter().map(|&v| old[v]).collect();
        if in_comp.len() == 1 && !adj[start].contains(&start) {
            continue;
        }
        let mut j = Johnson {
            adj: &adj,
            allowed: &in_comp,
            blocked: vec![false; n],
            blocks: vec![BTreeSet::new(); n],
            stack: Vec::new(),
            start,
            out: &mut cycles,
        };
        j.circuit(start);
    }
    cycles
}

struct Johnson<'a> {
    adj: &'a [Vec<usize>],
    allowed: &'a BTreeSet<usize>,
    blocked: Vec<bool>,
    blocks: Vec<BTreeSet<usize>>,
    stack: Vec<usize>,
    start: usize,
    out: &'a mut Vec<Vec<usize>>,
}

impl Johnson<'_> {
    fn unblock(&mut self, u: usize) {
        let mut work = vec![u];
        while let Some(x) = work.pop() {
            if !self.blocked[x] {
                continue;
            }
            self.blocked[x] = false;
            let bs = std::mem::take(&mut self.blocks[x]);
            work.extend(bs);
        }
    }

    fn circuit(&mut self, v: usize) -> bool {
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        let succ: Vec<usize> = self.adj[v].iter().copied().filter(|w| self.allowed.contains(w)).collect();
        for &w in &succ {
            if w == self.start {
                self.out.push(self.stack.clone());
                found = true;
            } else if !self.blocked[w] && self.circuit(w) {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &w in &succ {
                self.blocks[w].insert(v);
            }
        }
        self.stack.pop();
        found
    }
}

/// Mean weight vector of a cycle given as a node sequence.
pub fn cycle_mean(graph: &WeightedGraph, cycle: &[usize]) -> Vec<Rational> {
    let dim = graph.dimension();
    let mut sum = vec![0i64; dim];
    for (i, &u) in cycle.iter().enumerate() {
        let v = cycle[(i + 1) % cycle.len()];
        let e = graph.out_edges(u).find(|e| e.to == v).expect("cycle edge");
        for (s, w) in sum.iter_mut().zip(&e.weight) {
            *s += w;
        }
    }
    sum.into_iter()
        .map(|s| Rational::new(s, cycle.len() as i64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_loop_is_one_cycle() {
        let mut g = WeightedGraph::new(1, 0);
        g.add_edge(0, 0, vec![1]);
        assert_eq!(enumerate_simple_cycles(&g), vec![vec![0]]);
    }

    #[test]
    fn complete_digraph_on_three_nodes() {
        let mut g = WeightedGraph::new(3, 0);
        for a in 0..3 {
            for b in 0..3 {
                if a != b {
                    g.add_edge(a, b, vec![0]);
                }
            }
        }
        // three 2-cycles and two 3-cycles
        assert_eq!(enumerate_simple_cycles(&g).len(), 5);
    }

    #[test]
    fn dag_has_none() {
        let mut g = WeightedGraph::new(3, 0);
        g.add_edge(0, 1, vec![0]);
        g.add_edge(1, 2, vec![0]);
        g.add_edge(0, 2, vec![0]);
        assert!(enumerate_simple_cycles(&g).is_empty());
    }
}
