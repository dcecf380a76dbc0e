//! Edge-weighted directed graphs with a distinguished root.

/// An edge carrying a weight vector (one coordinate per agent or objective).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedEdge {
    pub from: usize,
    pub to: usize,
    pub weight: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    nodes: usize,
    root: usize,
    edges: Vec<WeightedEdge>,
    out: Vec<Vec<usize>>,
}

impl WeightedGraph {
    pub fn new(nodes: usize, root: usize) -> Self {
        WeightedGraph {
            nodes,
            root,
            edges: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    /// Adds `from -> to`; a repeated pair keeps the first weight.
    pub fn add_edge(&mut self, from: usize, to: usize, weight: Vec<i64>) {
        if self.out[from].iter().any(|&e| self.edges[e].to == to) {
            return;
        }
        self.out[from].push(self.edges.len());
        self.edges.push(WeightedEdge { from, to, weight });
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn out_edges(&self, node: usize) -> impl Iterator<Item = &WeightedEdge> {
        self.out[node].iter().map(|&e| &self.edges[e])
    }

    pub fn successors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[node].iter().map(|&e| self.edges[e].to)
    }

    pub fn dimension(&self) -> usize {
        self.edges.first().map_or(0, |e| e.weight.len())
    }

    pub fn reachable_from_root(&self) -> Vec<bool> {
        let mut seen = vec![false; self.nodes];
        if self.nodes == 0 {
            return seen;
        }
        seen[self.root] = true;
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            for w in self.successors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Strongly connected components (Tarjan), as node lists.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        struct Tarjan<'a> {
            g: &'a WeightedGraph,
            index: Vec<Option<usize>>,
            low: Vec<usize>,
            on_stack: Vec<bool>,
            stack: Vec<usize>,
            next: usize,
            out: Vec<Vec<usize>>,
        }
        impl Tarjan<'_> {
            fn visit(&mut self, root: usize) {
                // Explicit stack of (node, next successor position).
                let mut work = vec![(root, 0usize)];
                self.enter(root);
                while let Some(&mut (v, ref mut pos)) = work.last_mut() {
                    let succ: Vec<usize> = self.g.successors(v).collect();
                    if *pos < succ.len() {
                        let w = succ[*pos];
                        *pos += 1;
                        match self.index[w] {
                            None => {
                                self.enter(w);
                                work.push((w, 0));
                            }
                            Some(iw) if self.on_stack[w] => {
                                self.low[v] = self.low[v].min(iw);
                            }
                            _ => {}
                        }
                    } else {
                        work.pop();
                        if let Some(&(parent, _)) = work.last() {
                            self.low[parent] = self.low[parent].min(self.low[v]);
                        }
                        if Some(self.low[v]) == self.index[v] {
                            let mut comp = Vec::new();
                            loop {
                                let w = self.stack.pop().unwrap();
                                self.on_stack[w] = false;
                                comp.push(w);
                                if w == v {
                                    break;
                                }
                            }
                            comp.sort_unstable();
                            self.out.push(comp);
                        }
                    }
                }
            }
            fn enter(&mut self, v: usize) {
                self.index[v] = Some(self.next);
                self.low[v] = self.next;
                self.next += 1;
                self.stack.push(v);
                self.on_stack[v] = true;
            }
        }
        let mut t = Tarjan {
            g: self,
            index: vec![None; self.nodes],
            low: vec![0; self.nodes],
            on_stack: vec![false; self.nodes],
            stack: Vec::new(),
            next: 0,
            out: Vec::new(),
        };
        for v in 0..self.nodes {
            if t.index[v].is_none() {
                t.visit(v);
            }
        }
        t.out
    }

    /// The subgraph induced by `keep`, with nodes renumbered densely; returns
    /// the subgraph and the new-to-old node map. The root maps to the first
    /// kept node if the old root is dropped.
    pub fn induced(&self, keep: &[bool]) -> (WeightedGraph, Vec<usize>) {
        let old_of: Vec<usize> = (0..self.nodes).filter(|&v| keep[v]).collect();
        let mut new_of = vec![usize::MAX; self.nodes];
        for (i, &v) in old_of.iter().enumerate() {
            new_of[v] = i;
        }
        let root = if keep.get(self.root).copied().unwrap_or(false) {
            new_of[self.root]
        } else {
            0
        };
        let mut g = WeightedGraph::new(old_of.len(), root);
        for e in &self.edges {
            if keep[e.from] && keep[e.to] {
                g.add_edge(new_of[e.from], new_of[e.to], e.weight.clone());
            }
        }
        (g, old_of)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sccs_of_two_cycles_joined_by_a_bridge() {
        let mut g = WeightedGraph::new(5, 0);
        for (a, b) in [(0, 1), (1, 0), (1, 2), (2, 3), (3, 2), (4, 4)] {
            g.add_edge(a, b, vec![0]);
        }
        let mut sccs = g.sccs();
        sccs.sort();
        assert_eq!(sccs, vec![vec![0, 1], vec![2, 3], vec![4]]);
        let reach = g.reachable_from_root();
        assert_eq!(reach, vec![true, true, true, true, false]);
    }
}
