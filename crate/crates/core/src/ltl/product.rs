//! Existential LTL checking: nested depth-first emptiness search on the
//! product of an arena with a Büchi automaton.

use std::collections::HashMap;

use crate::game::{ConcurrentGameStructure, Labelling, StateId};
use crate::lasso::Lasso;

use super::buchi::{to_buchi, BoundLiterals, BuchiAutomaton};
use super::Ltl;

/// A rooted, finitely branching transition system whose nodes project onto
/// game states (which carry the labels).
pub trait Kripke {
    fn initial_node(&self) -> usize;
    /// Appends the successors of `node` to `out` in a deterministic order.
    fn successors(&self, node: usize, out: &mut Vec<usize>);
    fn game_state(&self, node: usize) -> StateId;
}

impl Kripke for ConcurrentGameStructure {
    fn initial_node(&self) -> usize {
        self.initial().0
    }

    fn successors(&self, node: usize, out: &mut Vec<usize>) {
        let mut succ = self.successor_indices(node).to_vec();
        succ.sort_unstable();
        out.extend(succ);
    }

    fn game_state(&self, node: usize) -> StateId {
        StateId(node)
    }
}

/// The positions of a lasso as a deterministic transition system.
pub struct LassoGraph<'a> {
    lasso: &'a Lasso,
}

impl<'a> LassoGraph<'a> {
    pub fn new(lasso: &'a Lasso) -> Self {
        LassoGraph { lasso }
    }
}

impl Kripke for LassoGraph<'_> {
    fn initial_node(&self) -> usize {
        0
    }

    fn successors(&self, node: usize, out: &mut Vec<usize>) {
        out.push(self.lasso.next_position(node));
    }

    fn game_state(&self, node: usize) -> StateId {
        self.lasso.at(node)
    }
}

/// Some run of `arena` from its initial node satisfying `formula`, as a
/// lasso over game states; `None` if no run does.
pub fn exists_path<K: Kripke + ?Sized>(arena: &K, formula: &Ltl, labelling: &Labelling) -> Option<Lasso> {
    exists_path_with(arena, &to_buchi(formula), labelling)
}

/// As [`exists_path`], with a precomputed automaton.
pub fn exists_path_with<K: Kripke + ?Sized>(
    arena: &K,
    automaton: &BuchiAutomaton,
    labelling: &Labelling,
) -> Option<Lasso> {
    let literals = automaton.bind(labelling);
    let mut search = Search {
        arena,
        automaton,
        literals: &literals,
        labelling,
        ids: HashMap::new(),
        nodes: Vec::new(),
        outer: Vec::new(),
        inner: Vec::new(),
        on_stack: Vec::new(),
        buf: Vec::new(),
    };
    let (stem, cycle) = search.run()?;
    let to_states = |v: Vec<usize>| -> Vec<StateId> {
        v.into_iter()
            .map(|p| arena.game_state(search.nodes[p].0))
            .collect()
    };
    Some(Lasso {
        stem: to_states(stem),
        cycle: to_states(cycle),
    }
    .normalized())
}

struct Search<'a, K: ?Sized> {
    arena: &'a K,
    automaton: &'a BuchiAutomaton,
    literals: &'a BoundLiterals,
    labelling: &'a Labelling,
    ids: HashMap<(usize, usize), usize>,
    /// Product nodes `(arena node, automaton state)`.
    nodes: Vec<(usize, usize)>,
    outer: Vec<bool>,
    inner: Vec<bool>,
    on_stack: Vec<bool>,
    buf: Vec<usize>,
}

impl<K: Kripke + ?Sized> Search<'_, K> {
    fn compatible(&self, v: usize, q: usize) -> bool {
        match self.literals[q] {
            None => false,
            Some((pos, neg)) => {
                let m = self.labelling.mask(self.arena.game_state(v));
                m & pos == pos && m & neg == 0
            }
        }
    }

    fn intern(&mut self, key: (usize, usize)) -> usize {
        if let Some(&id) = self.ids.get(&key) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(key);
        self.ids.insert(key, id);
        self.outer.push(false);
        self.inner.push(false);
        self.on_stack.push(false);
        id
    }

    fn successors(&mut self, p: usize) -> Vec<usize> {
        let (v, q) = self.nodes[p];
        self.buf.clear();
        let mut arena_succ = std::mem::take(&mut self.buf);
        self.arena.successors(v, &mut arena_succ);
        let mut out = Vec::new();
        for &w in &arena_succ {
            for &r in self.automaton.successors(q) {
                if self.compatible(w, r) {
                    out.push(self.intern((w, r)));
                }
            }
        }
        self.buf = arena_succ;
        out
    }

    /// Returns `(stem, loop)` over product node ids.
    fn run(&mut self) -> Option<(Vec<usize>, Vec<usize>)> {
        let v0 = self.arena.initial_node();
        let roots: Vec<usize> = self
            .automaton
            .initial()
            .iter()
            .copied()
            .filter(|&q| self.compatible(v0, q))
            .collect();
        for q in roots {
            let root = self.intern((v0, q));
            if self.outer[root] {
                continue;
            }
            if let Some(found) = self.outer_dfs(root) {
                return Some(found);
            }
        }
        None
    }

    fn outer_dfs(&mut self, root: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut stack: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        self.outer[root] = true;
        self.on_stack[root] = true;
        let succ = self.successors(root);
        stack.push((root, succ, 0));
        while let Some(top) = stack.last_mut() {
            if top.2 < top.1.len() {
                let w = top.1[top.2];
                top.2 += 1;
                if !self.outer[w] {
                    self.outer[w] = true;
                    self.on_stack[w] = true;
                    let succ = self.successors(w);
                    stack.push((w, succ, 0));
                }
                continue;
            }
            let seed = top.0;
            if self.automaton.is_accepting(self.nodes[seed].1) {
                if let Some((target, path)) = self.inner_dfs(seed) {
                    let path_nodes: Vec<usize> = stack.iter().map(|e| e.0).collect();
                    let t = path_nodes.iter().position(|&n| n == target).unwrap();
                    let stem = path_nodes[..t].to_vec();
                    let mut cycle = path_nodes[t..].to_vec();
                    // `path` runs from the seed to just before the target.
                    cycle.extend(path.into_iter().skip(1));
                    return Some((stem, cycle));
                }
            }
            self.on_stack[seed] = false;
            stack.pop();
        }
        None
    }

    /// Searches from `seed` for a node on the outer stack. Returns that node
    /// and the path from the seed up to (excluding) it.
    fn inner_dfs(&mut self, seed: usize) -> Option<(usize, Vec<usize>)> {
        let mut stack: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        let succ = self.successors(seed);
        stack.push((seed, succ, 0));
        while let Some(top) = stack.last_mut() {
            if top.2 < top.1.len() {
                let w = top.1[top.2];
                top.2 += 1;
                if self.on_stack[w] {
                    return Some((w, stack.iter().map(|e| e.0).collect()));
                }
                if !self.inner[w] {
                    self.inner[w] = true;
                    let succ = self.successors(w);
                    stack.push((w, succ, 0));
                }
                continue;
            }
            stack.pop();
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{AgentId, CgsBuilder};
    use crate::ltl::{eval_on_lasso, parse_ltl};

    /// s0 -> {s0, s1}, s1 -> {s2}, s2 -> {s1, s0}
    fn arena() -> (ConcurrentGameStructure, Labelling) {
        let mut b = CgsBuilder::new(1);
        let s: Vec<StateId> = ["s0", "s1", "s2"].iter().map(|n| b.state(n)).collect();
        let x = b.action(AgentId(0), "x");
        let y = b.action(AgentId(0), "y");
        b.uniform(AgentId(0), &[x, y]).initial(s[0]);
        b.transition(s[0], vec![x], s[0]);
        b.transition(s[0], vec![y], s[1]);
        b.transition(s[1], vec![x], s[2]);
        b.transition(s[1], vec![y], s[2]);
        b.transition(s[2], vec![x], s[1]);
        b.transition(s[2], vec![y], s[0]);
        let lab = Labelling::from_sets(&[vec!["a"], vec!["b"], vec!["c"]]).unwrap();
        (b.build().unwrap(), lab)
    }

    #[test]
    fn finds_witnesses_that_satisfy_the_formula() {
        let (m, lab) = arena();
        for text in ["G a", "F G (b | c)", "G F b & G F a", "X X c", "a U b", "G (a -> X a)"] {
            let f = parse_ltl(text).unwrap();
            let w = exists_path(&m, &f, &lab).unwrap_or_else(|| panic!("{text}"));
            assert_eq!(w.first(), StateId(0));
            w.check_consistent(&m).unwrap();
            assert!(eval_on_lasso(&f, &w, &lab), "{text}: {w:?}");
        }
    }

    #[test]
    fn reports_emptiness() {
        let (m, lab) = arena();
        for text in ["false", "G b", "F (b & X b)", "F G c", "X (b & c)"] {
            let f = parse_ltl(text).unwrap();
            assert_eq!(exists_path(&m, &f, &lab), None, "{text}");
        }
    }

    #[test]
    fn shortest_self_loop_witness() {
        let (m, lab) = arena();
        let w = exists_path(&m, &parse_ltl("G a").unwrap(), &lab).unwrap();
        assert_eq!(w, Lasso::new(vec![], vec![StateId(0)]).unwrap());
    }
}
