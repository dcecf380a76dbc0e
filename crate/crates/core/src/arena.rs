//! The arena left to the other agents once a coalition's strategies are
//! fixed, and the coalition's strategically distinct memoryless choices.

use std::collections::HashMap;

use crate::error::GameError;
use crate::game::{cartesian, ActionId, AgentId, Coalition, ConcurrentGameStructure, StateId, WeightAssignment};
use crate::graph::WeightedGraph;
use crate::ltl::Kripke;
use crate::strategy::{JointStrategy, MachineSpace, MachineStrategy};

/// Product of a structure with fixed machines for a coalition. Only
/// configurations reachable from the initial one are materialised.
#[derive(Debug, Clone)]
pub struct OnePlayerArena {
    coalition: Coalition,
    /// `(game state, machine states of the coalition members)`
    nodes: Vec<(StateId, Vec<usize>)>,
    succ: Vec<Vec<usize>>,
}

impl OnePlayerArena {
    pub fn coalition(&self) -> Coalition {
        self.coalition
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, i: usize) -> (StateId, &[usize]) {
        (self.nodes[i].0, &self.nodes[i].1)
    }

    pub fn node_successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    /// The arena as an edge-weighted graph; every edge leaving a node over
    /// game state `s` carries `(w_1(s), ..., w_n(s))`.
    pub fn weighted_graph(&self, weights: &WeightAssignment) -> WeightedGraph {
        let mut g = WeightedGraph::new(self.nodes.len(), 0);
        for (i, succ) in self.succ.iter().enumerate() {
            let w = weights.vector(self.nodes[i].0);
            for &j in succ {
                g.add_edge(i, j, w.clone());
            }
        }
        g
    }
}

impl Kripke for OnePlayerArena {
    fn initial_node(&self) -> usize {
        0
    }

    fn successors(&self, node: usize, out: &mut Vec<usize>) {
        out.extend_from_slice(&self.succ[node]);
    }

    fn game_state(&self, node: usize) -> StateId {
        self.nodes[node].0
    }
}

/// Builds the full action profile from the coalition's and the others'
/// actions (both in agent order).
pub(crate) fn merge_profile(n: usize, coalition: Coalition, fixed: &[ActionId], free: &[ActionId]) -> Vec<ActionId> {
    let (mut i, mut j) = (0, 0);
    (0..n)
        .map(|a| {
            if coalition.contains(AgentId(a)) {
                i += 1;
                fixed[i - 1]
            } else {
                j += 1;
                free[j - 1]
            }
        })
        .collect()
}

/// All action combinations of `agents` at `s`, first agent most significant.
pub(crate) fn joint_actions(structure: &ConcurrentGameStructure, agents: Coalition, s: StateId) -> Vec<Vec<ActionId>> {
    let lists: Vec<Vec<ActionId>> = agents.members().map(|a| structure.available(a, s).to_vec()).collect();
    cartesian(&lists)
}

/// Fixes the strategies of `fixed.coalition`; the arena's paths are exactly
/// the runs obtainable by the remaining agents.
pub fn restrict(structure: &ConcurrentGameStructure, fixed: &JointStrategy) -> Result<OnePlayerArena, GameError> {
    let c = fixed.coalition;
    let n = structure.agent_count();
    let free = c.complement(n);
    let free_profiles: Vec<Vec<Vec<ActionId>>> = structure.states().map(|s| joint_actions(structure, free, s)).collect();
    let members: Vec<(AgentId, &MachineStrategy)> = fixed.members().collect();
    for (a, m) in &members {
        m.check_outputs(structure, *a)?;
    }

    let start = (structure.initial(), members.iter().map(|(_, m)| m.initial()).collect::<Vec<_>>());
    let mut ids: HashMap<(StateId, Vec<usize>), usize> = HashMap::new();
    ids.insert(start.clone(), 0);
    let mut nodes = vec![start];
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let (s, qs) = nodes[i].clone();
        let mut actions = Vec::with_capacity(members.len());
        for ((a, m), &q) in members.iter().zip(&qs) {
            let act = m.output(q, s);
            if !structure.is_available(*a, s, act) {
                return Err(GameError::MachineOutputUnavailable {
                    agent: a.to_string(),
                    action: structure
                        .action_names(*a)
                        .get(act.0)
                        .cloned()
                        .unwrap_or_else(|| format!("#{}", act.0)),
                    configuration: format!("{} {:?}", structure.state_name(s), qs),
                });
            }
            actions.push(act);
        }
        let next_qs: Vec<usize> = members.iter().zip(&qs).map(|((_, m), &q)| m.step(q, s)).collect();
        let mut out = Vec::new();
        for free_actions in &free_profiles[s.0] {
            let profile = merge_profile(n, c, &actions, free_actions);
            let t = structure.successor(s, &profile)?;
            let key = (t, next_qs.clone());
            let id = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    let id = nodes.len();
                    ids.insert(key.clone(), id);
                    nodes.push(key);
                    id
                }
            };
            if !out.contains(&id) {
                out.push(id);
            }
        }
        succ.push(out);
        i += 1;
    }
    Ok(OnePlayerArena {
        coalition: c,
        nodes,
        succ,
    })
}

/// Representatives of the coalition's joint actions at `s`, one per class
/// of joint actions that lead to the same successor against every joint
/// action of the others. Classes appear in order of their first member.
pub fn outcome_classes(structure: &ConcurrentGameStructure, c: Coalition, s: StateId) -> Vec<Vec<ActionId>> {
    let n = structure.agent_count();
    let free = joint_actions(structure, c.complement(n), s);
    let mut seen: Vec<Vec<StateId>> = Vec::new();
    let mut reps = Vec::new();
    for fixed in joint_actions(structure, c, s) {
        let outcome: Vec<StateId> = free
            .iter()
            .map(|f| structure.successor_by_index(s, structure.profile_index(s, &merge_profile(n, c, &fixed, f)).unwrap()))
            .collect();
        if !seen.contains(&outcome) {
            seen.push(outcome);
            reps.push(fixed);
        }
    }
    reps
}

/// The coalition's strategically distinct joint memoryless strategies.
///
/// Actions are chosen only at states reachable under the choices made so
/// far (other states get each member's first available action), and only
/// one joint action per outcome class is tried. Every joint memoryless
/// strategy yields the same arena as one of the results.
pub fn effective_memoryless(structure: &ConcurrentGameStructure, c: Coalition) -> Vec<JointStrategy> {
    let n = structure.agent_count();
    let free = c.complement(n);
    let classes: Vec<Vec<Vec<ActionId>>> = structure.states().map(|s| outcome_classes(structure, c, s)).collect();
    let free_profiles: Vec<Vec<Vec<ActionId>>> = structure.states().map(|s| joint_actions(structure, free, s)).collect();
    let mut out = Vec::new();
    let mut assign: Vec<Option<usize>> = vec![None; structure.state_count()];
    let ctx = Ctx {
        structure,
        c,
        classes: &classes,
        free_profiles: &free_profiles,
    };
    ctx.search(&mut assign, &mut out);
    out
}

struct Ctx<'a> {
    structure: &'a ConcurrentGameStructure,
    c: Coalition,
    classes: &'a [Vec<Vec<ActionId>>],
    free_profiles: &'a [Vec<Vec<ActionId>>],
}

impl Ctx<'_> {
    /// First reachable state without an assigned class, breadth-first.
    fn frontier(&self, assign: &[Option<usize>]) -> Option<StateId> {
        let st = self.structure;
        let n = st.agent_count();
        let mut seen = vec![false; st.state_count()];
        let mut queue = std::collections::VecDeque::from([st.initial()]);
        seen[st.initial().0] = true;
        while let Some(s) = queue.pop_front() {
            let Some(k) = assign[s.0] else {
                return Some(s);
            };
            let fixed = &self.classes[s.0][k];
            for f in &self.free_profiles[s.0] {
                let t = st.successor(s, &merge_profile(n, self.c, fixed, f)).unwrap();
                if !seen[t.0] {
                    seen[t.0] = true;
                    queue.push_back(t);
                }
            }
        }
        None
    }

    fn search(&self, assign: &mut Vec<Option<usize>>, out: &mut Vec<JointStrategy>) {
        match self.frontier(assign) {
            None => out.push(self.complete(assign)),
            Some(s) => {
                for k in 0..self.classes[s.0].len() {
                    assign[s.0] = Some(k);
                    self.search(assign, out);
                }
                assign[s.0] = None;
            }
        }
    }

    fn complete(&self, assign: &[Option<usize>]) -> JointStrategy {
        let st = self.structure;
        let machines = self
            .c
            .members()
            .enumerate()
            .map(|(pos, a)| {
                MachineStrategy::memoryless(
                    st.states()
                        .map(|s| match assign[s.0] {
                            Some(k) => self.classes[s.0][k][pos],
                            None => st.available(a, s)[0],
                        })
                        .collect(),
                )
            })
            .collect();
        JointStrategy {
            coalition: self.c,
            machines,
        }
    }
}

/// Candidate deviations for a coalition: the strategically distinct
/// memoryless ones at bound 1, all canonical machines otherwise.
#[derive(Debug, Clone)]
pub enum DeviationSpace {
    Listed(Vec<JointStrategy>),
    Machines(MachineSpace),
}

impl DeviationSpace {
    pub fn new(structure: &ConcurrentGameStructure, c: Coalition, k: usize) -> Self {
        if k <= 1 {
            DeviationSpace::Listed(effective_memoryless(structure, c))
        } else {
            DeviationSpace::Machines(MachineSpace::new(structure, c, k))
        }
    }

    pub fn len(&self) -> usize {
        match self {
            DeviationSpace::Listed(v) => v.len(),
            DeviationSpace::Machines(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, index: usize) -> JointStrategy {
        match self {
            DeviationSpace::Listed(v) => v[index].clone(),
            DeviationSpace::Machines(m) => m.get(index),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::CgsBuilder;
    use crate::strategy::{enumerate_memoryless, StrategyProfile};

    /// Two agents, actions {a, b}; s0 -> s1 on (a,a), s2 on (a,b), s3 on
    /// (b,b), s1 on (b,a); sinks s1..s3.
    fn two_agent() -> ConcurrentGameStructure {
        let mut b = CgsBuilder::new(2);
        let s: Vec<StateId> = ["s0", "s1", "s2", "s3"].iter().map(|n| b.state(n)).collect();
        for agent in [AgentId(0), AgentId(1)] {
            let x = b.action(agent, "a");
            let y = b.action(agent, "b");
            b.uniform(agent, &[x, y]);
        }
        b.initial(s[0]);
        b.transitions_from(s[0], |p| match (p[0].0, p[1].0) {
            (0, 0) => s[1],
            (0, 1) => s[2],
            (1, 1) => s[3],
            _ => s[1],
        });
        for &t in &s[1..] {
            b.sink(t);
        }
        b.build().unwrap()
    }

    #[test]
    fn empty_coalition_gives_the_structure() {
        let m = two_agent();
        let arena = restrict(&m, &JointStrategy::empty()).unwrap();
        assert_eq!(arena.node_count(), 4);
        let mut succ: Vec<StateId> = arena.node_successors(0).iter().map(|&i| arena.node(i).0).collect();
        succ.sort();
        assert_eq!(succ, vec![StateId(1), StateId(2), StateId(3)]);
    }

    #[test]
    fn fixing_player_two_to_b() {
        let m = two_agent();
        let dev = JointStrategy::new(
            Coalition::from_mask(0b10),
            vec![MachineStrategy::memoryless(vec![ActionId(1); 4])],
        )
        .unwrap();
        let arena = restrict(&m, &dev).unwrap();
        let succ: Vec<StateId> = arena.node_successors(0).iter().map(|&i| arena.node(i).0).collect();
        assert_eq!(succ, vec![StateId(2), StateId(3)]);
    }

    #[test]
    fn grand_coalition_has_one_path() {
        let m = two_agent();
        let p = StrategyProfile::memoryless(&m, vec![vec![ActionId(0); 4], vec![ActionId(1); 4]]).unwrap();
        let arena = restrict(&m, &p.restricted_to(m.grand_coalition())).unwrap();
        for i in 0..arena.node_count() {
            assert_eq!(arena.node_successors(i).len(), 1);
        }
        assert_eq!(arena.node(arena.node_successors(0)[0]).0, StateId(2));
    }

    #[test]
    fn effective_choices_cover_every_arena() {
        let m = two_agent();
        for mask in 1..4 {
            let c = Coalition::from_mask(mask);
            let eff = effective_memoryless(&m, c);
            let signature = |j: &JointStrategy| {
                let a = restrict(&m, j).unwrap();
                let mut edges: Vec<(StateId, StateId)> = (0..a.node_count())
                    .flat_map(|i| a.node_successors(i).iter().map(move |&k| (i, k)))
                    .map(|(i, k)| (a.node(i).0, a.node(k).0))
                    .collect();
                edges.sort();
                edges
            };
            let eff_sigs: Vec<_> = eff.iter().map(signature).collect();
            for j in enumerate_memoryless(&m, c).iter() {
                assert!(eff_sigs.contains(&signature(&j)));
            }
            // Player 1 alone: a -> {s1, s2}, b -> {s1, s3}.
            if mask == 1 {
                assert_eq!(eff.len(), 2);
            }
        }
    }
}
