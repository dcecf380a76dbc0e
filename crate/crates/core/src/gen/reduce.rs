//! Multi-mean-payoff threshold game to concurrent mean-payoff game.

use crate::game::{ActionId, AgentId, CgsBuilder, Coalition, MpGame, StateId, WeightAssignment};
use crate::mp::{MultiMpGame, Player, Rational};

use super::GenError;

/// Builds a `(k+1)`-agent game whose coalition `{1..k}` can guarantee `z`
/// iff player 1 wins the threshold game.
///
/// Every node becomes a state and every edge an intermediate state. Agent 1
/// picks the edge at player-1 nodes, agent `k+1` at player-2 nodes; all
/// other agents have the single action `c0`. Agent `i <= k` earns twice the
/// `i`-th edge weight on the edge's state and 0 elsewhere, so each edge
/// contributes its weight per step on average.
pub fn threshold_to_mp_game(g: &MultiMpGame) -> Result<(MpGame, Coalition, Vec<Rational>), GenError> {
    let k = g.dimension();
    if k == 0 {
        return Err(GenError::Params("threshold game needs at least one coordinate".into()));
    }
    let agents = k + 1;
    let graph = &g.graph;
    let nodes = graph.node_count();
    let mut b = CgsBuilder::new(agents);
    let node_states: Vec<StateId> = (0..nodes).map(|v| b.state(&format!("v{v}"))).collect();
    let edge_states: Vec<StateId> = (0..graph.edge_count()).map(|e| b.state(&format!("e{e}"))).collect();
    let out: Vec<Vec<usize>> = (0..nodes)
        .map(|v| {
            let mut es: Vec<usize> = (0..graph.edge_count()).filter(|&e| graph.edges()[e].from == v).collect();
            es.sort_by_key(|&e| graph.edges()[e].to);
            es
        })
        .collect();
    let max_deg = out.iter().map(Vec::len).max().unwrap_or(1);
    let names: Vec<String> = (0..max_deg).map(|i| format!("c{i}")).collect();
    let mut acts: Vec<Vec<ActionId>> = Vec::new();
    for a in 0..agents {
        acts.push(names.iter().map(|nm| b.action(AgentId(a), nm)).collect());
        b.uniform(AgentId(a), &acts[a][..1]);
    }
    for v in 0..nodes {
        let chooser = match g.owner[v] {
            Player::One => 0,
            Player::Two => k,
        };
        b.available(AgentId(chooser), node_states[v], &acts[chooser][..out[v].len()]);
    }
    b.initial(node_states[graph.root()]);
    for v in 0..nodes {
        let chooser = match g.owner[v] {
            Player::One => 0,
            Player::Two => k,
        };
        b.transitions_from(node_states[v], |p| edge_states[out[v][p[chooser].0]]);
    }
    for (e, edge) in graph.edges().iter().enumerate() {
        b.transitions_from(edge_states[e], |_| node_states[edge.to]);
    }
    let structure = b.build()?;
    let mut weights = WeightAssignment::zeros(agents, structure.state_count());
    for (e, edge) in graph.edges().iter().enumerate() {
        for i in 0..k {
            weights.set(AgentId(i), edge_states[e], 2 * edge.weight[i]);
        }
    }
    let game = MpGame::new(structure, weights)?;
    let coalition = Coalition::from_agents((0..k).map(AgentId));
    Ok((game, coalition, g.threshold.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::mp::{is_lower_bound, solve_threshold};

    #[test]
    fn one_node_loop_round_trips() {
        let mut gr = WeightedGraph::new(1, 0);
        gr.add_edge(0, 0, vec![2]);
        for z in [1, 2, 3] {
            let g = MultiMpGame::new(gr.clone(), vec![Player::One], vec![Rational::from_integer(z)]).unwrap();
            let (game, c, zz) = threshold_to_mp_game(&g).unwrap();
            assert_eq!(game.structure.state_count(), 2);
            assert_eq!(is_lower_bound(&game, c, &zz).unwrap(), solve_threshold(&g));
            assert_eq!(solve_threshold(&g), z <= 2);
        }
    }
}
