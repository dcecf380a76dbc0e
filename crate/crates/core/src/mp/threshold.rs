//! Two-player multi-mean-payoff threshold games.

use std::collections::HashMap;

use crate::graph::WeightedGraph;

use super::cycles::{cycle_mean, enumerate_simple_cycles};
use super::lp::hull_feasible;
use super::{MpError, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    One,
    Two,
}

/// `(V1, V2, v0, E, w, z)`: player 1 wants the liminf mean of every weight
/// coordinate to reach the threshold. The graph's root is `v0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiMpGame {
    pub graph: WeightedGraph,
    pub owner: Vec<Player>,
    pub threshold: Vec<Rational>,
}

impl MultiMpGame {
    pub fn new(graph: WeightedGraph, owner: Vec<Player>, threshold: Vec<Rational>) -> Result<Self, MpError> {
        if owner.len() != graph.node_count() {
            return Err(MpError::Dimension {
                expected: graph.node_count(),
                found: owner.len(),
            });
        }
        if let Some(v) = (0..graph.node_count()).find(|&v| graph.successors(v).next().is_none()) {
            return Err(MpError::DeadEnd(v));
        }
        if graph.edges().iter().any(|e| e.weight.len() != threshold.len()) {
            return Err(MpError::Dimension {
                expected: graph.dimension(),
                found: threshold.len(),
            });
        }
        Ok(MultiMpGame {
            graph,
            owner,
            threshold,
        })
    }

    pub fn dimension(&self) -> usize {
        self.threshold.len()
    }

    fn sorted_successors(&self, v: usize) -> Vec<usize> {
        let mut s: Vec<usize> = self.graph.successors(v).collect();
        s.sort_unstable();
        s
    }
}

/// Whether player 1 wins (liminf means `>= z` in every coordinate).
///
/// Enumerates player 2's memoryless choices at reachable nodes. Against a
/// fixed choice player 1 wins iff some reachable non-trivial SCC of the
/// residual graph has a simple-cycle hull meeting the threshold.
pub fn solve_threshold(g: &MultiMpGame) -> bool {
    Solver::new(g, false).solve()
}

/// As [`solve_threshold`] with every coordinate strictly above `z`.
pub fn solve_threshold_strict(g: &MultiMpGame) -> bool {
    Solver::new(g, true).solve()
}

struct Solver<'a> {
    g: &'a MultiMpGame,
    strict: bool,
    succ: Vec<Vec<usize>>,
    /// SCC edge sets already decided.
    memo: HashMap<Vec<(usize, usize)>, bool>,
}

impl<'a> Solver<'a> {
    fn new(g: &'a MultiMpGame, strict: bool) -> Self {
        Solver {
            g,
            strict,
            succ: (0..g.graph.node_count()).map(|v| g.sorted_successors(v)).collect(),
            memo: HashMap::new(),
        }
    }

    fn solve(&mut self) -> bool {
        let mut choice = vec![None; self.g.graph.node_count()];
        self.all_choices_lose(&mut choice)
    }

    /// Player 1 wins against every completion of the partial choice.
    fn all_choices_lose(&mut self, choice: &mut Vec<Option<usize>>) -> bool {
        match frontier(self.g, &self.succ, choice, |p| p == Player::Two) {
            None => self.player_one_wins(choice),
            Some(v) => {
                for k in 0..self.succ[v].len() {
                    choice[v] = Some(self.succ[v][k]);
                    if !self.all_choices_lose(choice) {
                        choice[v] = None;
                        return false;
                    }
                }
                choice[v] = None;
                true
            }
        }
    }

    fn player_one_wins(&mut self, choice: &[Option<usize>]) -> bool {
        let n = self.g.graph.node_count();
        let mut residual = WeightedGraph::new(n, self.g.graph.root());
        for e in self.g.graph.edges() {
            let keep = match self.g.owner[e.from] {
                Player::One => true,
                Player::Two => choice[e.from].map_or(true, |t| t == e.to),
            };
            if keep {
                residual.add_edge(e.from, e.to, e.weight.clone());
            }
        }
        let reach = residual.reachable_from_root();
        let (sub, old) = residual.induced(&reach);
        for comp in sub.sccs() {
            let keep: Vec<bool> = {
                let mut k = vec![false; sub.node_count()];
                for &v in &comp {
                    k[v] = true;
                }
                k
            };
            let (scc, _) = sub.induced(&keep);
            if scc.edge_count() == 0 {
                continue;
            }
            let mut key: Vec<(usize, usize)> = scc
                .edges()
                .iter()
                .map(|e| (old[comp[e.from]], old[comp[e.to]]))
                .collect();
            key.sort_unstable();
            if let Some(&r) = self.memo.get(&key) {
                if r {
                    return true;
                }
                continue;
            }
            let points: Vec<Vec<Rational>> = enumerate_simple_cycles(&scc)
                .iter()
                .map(|c| cycle_mean(&scc, c))
                .collect();
            let r = hull_feasible(&points, &self.g.threshold, self.strict);
            self.memo.insert(key, r);
            if r {
                return true;
            }
        }
        false
    }
}

/// First node (breadth-first from the root, successors in index order) that
/// `pick` selects and that has no choice yet. Nodes with a choice follow it;
/// unselected nodes expand to all successors.
fn frontier(
    g: &MultiMpGame,
    succ: &[Vec<usize>],
    choice: &[Option<usize>],
    pick: impl Fn(Player) -> bool,
) -> Option<usize> {
    let n = g.graph.node_count();
    let mut seen = vec![false; n];
    let root = g.graph.root();
    let mut queue = std::collections::VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        let next: &[usize] = if pick(g.owner[v]) {
            match choice[v] {
                Some(ref t) => std::slice::from_ref(t),
                None => return Some(v),
            }
        } else {
            &succ[v]
        };
        for &w in next {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Brute force over memoryless strategies of both players: player 1 has a
/// positional strategy whose play meets the threshold against every
/// positional strategy of player 2.
pub fn solve_threshold_memoryless(g: &MultiMpGame, strict: bool) -> bool {
    let n = g.graph.node_count();
    let succ: Vec<Vec<usize>> = (0..n).map(|v| g.sorted_successors(v)).collect();
    let mut choice = vec![None; n];
    exists_p1(g, &succ, &mut choice, strict)
}

fn exists_p1(g: &MultiMpGame, succ: &[Vec<usize>], choice: &mut Vec<Option<usize>>, strict: bool) -> bool {
    match frontier(g, succ, choice, |p| p == Player::One) {
        None => forall_p2(g, succ, choice, strict),
        Some(v) => {
            for &t in &succ[v] {
                choice[v] = Some(t);
                if exists_p1(g, succ, choice, strict) {
                    choice[v] = None;
                    return true;
                }
            }
            choice[v] = None;
            false
        }
    }
}

fn forall_p2(g: &MultiMpGame, succ: &[Vec<usize>], choice: &mut Vec<Option<usize>>, strict: bool) -> bool {
    match frontier(g, succ, choice, |_| true) {
        None => play_meets(g, choice, strict),
        Some(v) => {
            for &t in &succ[v] {
                choice[v] = Some(t);
                if !forall_p2(g, succ, choice, strict) {
                    choice[v] = None;
                    return false;
                }
            }
            choice[v] = None;
            true
        }
    }
}

/// Mean of the unique play's loop against the threshold.
fn play_meets(g: &MultiMpGame, choice: &[Option<usize>], strict: bool) -> bool {
    let mut pos = vec![usize::MAX; g.graph.node_count()];
    let mut path = Vec::new();
    let mut v = g.graph.root();
    while pos[v] == usize::MAX {
        pos[v] = path.len();
        path.push(v);
        v = choice[v].expect("complete choice");
    }
    let cycle = &path[pos[v]..];
    let mean = cycle_mean(&g.graph, cycle);
    mean.iter()
        .zip(&g.threshold)
        .all(|(m, z)| if strict { m > z } else { m >= z })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn no_opponent_single_cycle() {
        let mut g = WeightedGraph::new(2, 0);
        g.add_edge(0, 1, vec![3]);
        g.add_edge(1, 0, vec![1]);
        let game = MultiMpGame::new(g, vec![Player::One; 2], vec![ri(2)]).unwrap();
        assert!(solve_threshold(&game));
        assert!(!solve_threshold_strict(&game));
        assert!(solve_threshold_memoryless(&game, false));
    }

    #[test]
    fn spoiler_picks_the_bad_sink() {
        let mut g = WeightedGraph::new(3, 0);
        g.add_edge(0, 1, vec![0]);
        g.add_edge(0, 2, vec![0]);
        g.add_edge(1, 1, vec![5]);
        g.add_edge(2, 2, vec![-5]);
        let owner = vec![Player::Two, Player::One, Player::One];
        let game = MultiMpGame::new(g.clone(), owner, vec![ri(0)]).unwrap();
        assert!(!solve_threshold(&game));
        let game = MultiMpGame::new(g, vec![Player::One; 3], vec![ri(0)]).unwrap();
        assert!(solve_threshold(&game));
    }

    #[test]
    fn alternation_needs_memory() {
        // A hub with two self-looping satellites: positional play is stuck on
        // one coordinate, while alternating reaches (1/2, 1/2) up to the hub
        // visits, whose weight here is (1, 1).
        let mut g = WeightedGraph::new(3, 0);
        g.add_edge(0, 1, vec![1, 1]);
        g.add_edge(0, 2, vec![1, 1]);
        g.add_edge(1, 0, vec![1, 0]);
        g.add_edge(2, 0, vec![0, 1]);
        let z = vec![Rational::new(2, 3), Rational::new(2, 3)];
        let game = MultiMpGame::new(g, vec![Player::One; 3], z).unwrap();
        assert!(solve_threshold(&game));
        // cycles 0-1 and 0-2 have means (1, 1/2) and (1/2, 1)
        assert!(!solve_threshold_memoryless(&game, false));
    }

    #[test]
    fn dead_end_rejected() {
        let g = WeightedGraph::new(1, 0);
        assert_eq!(
            MultiMpGame::new(g, vec![Player::One], vec![]).unwrap_err(),
            MpError::DeadEnd(0)
        );
    }
}
