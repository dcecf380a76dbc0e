//! Finite-memory strategies, profiles, induced runs and strategy spaces.
//!
//! Machines are Mealy-style: the action played depends on the machine state
//! and the current game state, and the memory update reads the current game
//! state. A one-state machine is therefore exactly a memoryless strategy.

use std::collections::HashMap;

use crate::error::GameError;
use crate::game::{ActionId, AgentId, Coalition, ConcurrentGameStructure, LtlGame, StateId};
use crate::lasso::Lasso;
use crate::ltl::eval_on_lasso;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MachineStrategy {
    initial: usize,
    /// `next[q][s]`
    next: Vec<Vec<usize>>,
    /// `out[q][s]`
    out: Vec<Vec<ActionId>>,
}

impl MachineStrategy {
    /// A machine with `next.len()` states over `next[0].len()` game states.
    pub fn new(initial: usize, next: Vec<Vec<usize>>, out: Vec<Vec<ActionId>>) -> Result<Self, GameError> {
        let bad = |reason: String| GameError::InvalidMachine {
            agent: "?".into(),
            reason,
        };
        let n = next.len();
        if n == 0 {
            return Err(bad("machine has no states".into()));
        }
        if initial >= n {
            return Err(bad(format!("initial state {initial} out of range")));
        }
        if out.len() != n {
            return Err(bad("output table size differs from state count".into()));
        }
        let width = next[0].len();
        for q in 0..n {
            if next[q].len() != width || out[q].len() != width {
                return Err(bad(format!("row {q} does not cover every game state")));
            }
            if let Some(t) = next[q].iter().find(|&&t| t >= n) {
                return Err(bad(format!("transition to undefined state {t}")));
            }
        }
        Ok(MachineStrategy { initial, next, out })
    }

    pub fn memoryless(actions: Vec<ActionId>) -> Self {
        let width = actions.len();
        MachineStrategy {
            initial: 0,
            next: vec![vec![0; width]],
            out: vec![actions],
        }
    }

    pub fn state_count(&self) -> usize {
        self.next.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn game_state_count(&self) -> usize {
        self.next[0].len()
    }

    pub fn output(&self, q: usize, s: StateId) -> ActionId {
        self.out[q][s.0]
    }

    pub fn step(&self, q: usize, s: StateId) -> usize {
        self.next[q][s.0]
    }

    /// The state-to-action map if the machine has a single state.
    pub fn as_memoryless(&self) -> Option<&[ActionId]> {
        (self.state_count() == 1).then(|| self.out[0].as_slice())
    }

    /// Machine states reachable from the initial one (over all game states).
    pub fn reachable_states(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        seen[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for &r in &self.next[q] {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        seen
    }

    /// Whether every machine state is reachable and numbered in breadth-first
    /// discovery order (game states scanned in declaration order).
    pub fn is_canonical(&self) -> bool {
        if self.initial != 0 {
            return false;
        }
        let mut order = vec![0];
        let mut i = 0;
        while i < order.len() {
            for &r in &self.next[order[i]] {
                if !order.contains(&r) {
                    if r != order.len() {
                        return false;
                    }
                    order.push(r);
                }
            }
            i += 1;
        }
        order.len() == self.state_count()
    }

    /// Whether no two machine states are behaviourally equivalent.
    pub fn is_minimal(&self) -> bool {
        let n = self.state_count();
        let mut block: Vec<usize> = vec![0; n];
        let mut blocks = 0;
        loop {
            let mut sig_ids: HashMap<(usize, Vec<ActionId>, Vec<usize>), usize> = HashMap::new();
            let mut fresh = vec![0; n];
            for q in 0..n {
                let sig = (
                    block[q],
                    self.out[q].clone(),
                    self.next[q].iter().map(|&r| block[r]).collect(),
                );
                let len = sig_ids.len();
                fresh[q] = *sig_ids.entry(sig).or_insert(len);
            }
            let count = sig_ids.len();
            block = fresh;
            if count == blocks {
                return count == n;
            }
            blocks = count;
        }
    }

    /// Checks outputs against availability at every game state the machine
    /// could face (all states, all machine states).
    pub fn check_outputs(&self, structure: &ConcurrentGameStructure, agent: AgentId) -> Result<(), GameError> {
        if self.game_state_count() != structure.state_count() {
            return Err(GameError::InvalidMachine {
                agent: agent.to_string(),
                reason: format!(
                    "machine covers {} game states, game has {}",
                    self.game_state_count(),
                    structure.state_count()
                ),
            });
        }
        Ok(())
    }
}

/// A state-to-action map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MemorylessStrategy(pub Vec<ActionId>);

impl MemorylessStrategy {
    pub fn action(&self, s: StateId) -> ActionId {
        self.0[s.0]
    }

    pub fn to_machine(&self) -> MachineStrategy {
        MachineStrategy::memoryless(self.0.clone())
    }
}

/// Strategies for the members of a coalition, in member order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JointStrategy {
    pub coalition: Coalition,
    pub machines: Vec<MachineStrategy>,
}

impl JointStrategy {
    pub fn new(coalition: Coalition, machines: Vec<MachineStrategy>) -> Result<Self, GameError> {
        if machines.len() != coalition.len() {
            return Err(GameError::StrategyCount {
                expected: coalition.len(),
                found: machines.len(),
            });
        }
        Ok(JointStrategy { coalition, machines })
    }

    pub fn empty() -> Self {
        JointStrategy {
            coalition: Coalition::empty(),
            machines: Vec::new(),
        }
    }

    pub fn get(&self, agent: AgentId) -> Option<&MachineStrategy> {
        self.coalition
            .members()
            .position(|a| a == agent)
            .map(|i| &self.machines[i])
    }

    pub fn members(&self) -> impl Iterator<Item = (AgentId, &MachineStrategy)> {
        self.coalition.members().zip(self.machines.iter())
    }

    pub fn is_memoryless(&self) -> bool {
        self.machines.iter().all(|m| m.state_count() == 1)
    }
}

/// One strategy per agent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrategyProfile {
    strategies: Vec<MachineStrategy>,
}

impl StrategyProfile {
    pub fn new(structure: &ConcurrentGameStructure, strategies: Vec<MachineStrategy>) -> Result<Self, GameError> {
        if strategies.len() != structure.agent_count() {
            return Err(GameError::StrategyCount {
                expected: structure.agent_count(),
                found: strategies.len(),
            });
        }
        for (i, m) in strategies.iter().enumerate() {
            m.check_outputs(structure, AgentId(i))?;
        }
        Ok(StrategyProfile { strategies })
    }

    /// Lifts per-agent state-to-action maps.
    pub fn memoryless(structure: &ConcurrentGameStructure, maps: Vec<Vec<ActionId>>) -> Result<Self, GameError> {
        Self::new(structure, maps.into_iter().map(MachineStrategy::memoryless).collect())
    }

    pub fn agent_count(&self) -> usize {
        self.strategies.len()
    }

    pub fn get(&self, agent: AgentId) -> &MachineStrategy {
        &self.strategies[agent.0]
    }

    pub fn strategies(&self) -> &[MachineStrategy] {
        &self.strategies
    }

    pub fn is_memoryless(&self) -> bool {
        self.strategies.iter().all(|m| m.state_count() == 1)
    }

    /// `(sigma_{-C}, sigma'_C)`: replaces the strategies of the deviators.
    pub fn with_deviation(&self, deviation: &JointStrategy) -> StrategyProfile {
        let mut strategies = self.strategies.clone();
        for (a, m) in deviation.members() {
            strategies[a.0] = m.clone();
        }
        StrategyProfile { strategies }
    }

    /// The strategies of the members of `c`.
    pub fn restricted_to(&self, c: Coalition) -> JointStrategy {
        JointStrategy {
            coalition: c,
            machines: c.members().map(|a| self.strategies[a.0].clone()).collect(),
        }
    }

    /// Memoryless action of each agent at each state, if every strategy is
    /// memoryless.
    pub fn memoryless_maps(&self) -> Option<Vec<Vec<ActionId>>> {
        self.strategies
            .iter()
            .map(|m| m.as_memoryless().map(<[ActionId]>::to_vec))
            .collect()
    }
}

/// The unique run induced by `profile` from the initial state, cut at the
/// first repeated joint configuration (game state, machine states).
pub fn run_of(structure: &ConcurrentGameStructure, profile: &StrategyProfile) -> Result<Lasso, GameError> {
    let n = structure.agent_count();
    if profile.agent_count() != n {
        return Err(GameError::StrategyCount {
            expected: n,
            found: profile.agent_count(),
        });
    }
    let mut seen: HashMap<(StateId, Vec<usize>), usize> = HashMap::new();
    let mut states = Vec::new();
    let mut s = structure.initial();
    let mut qs: Vec<usize> = profile.strategies.iter().map(|m| m.initial()).collect();
    let mut actions = vec![ActionId(0); n];
    loop {
        if let Some(&start) = seen.get(&(s, qs.clone())) {
            let cycle = states.split_off(start);
            return Lasso::new(states, cycle);
        }
        seen.insert((s, qs.clone()), states.len());
        states.push(s);
        for (i, m) in profile.strategies.iter().enumerate() {
            let a = m.output(qs[i], s);
            if !structure.is_available(AgentId(i), s, a) {
                return Err(GameError::MachineOutputUnavailable {
                    agent: AgentId(i).to_string(),
                    action: structure
                        .action_names(AgentId(i))
                        .get(a.0)
                        .cloned()
                        .unwrap_or_else(|| format!("#{}", a.0)),
                    configuration: format!("{} {:?}", structure.state_name(s), qs),
                });
            }
            actions[i] = a;
        }
        let next = structure.successor(s, &actions)?;
        for (i, m) in profile.strategies.iter().enumerate() {
            qs[i] = m.step(qs[i], s);
        }
        s = next;
    }
}

/// Agents whose goal holds on `lasso`.
pub fn winners(game: &LtlGame, lasso: &Lasso) -> Coalition {
    Coalition::from_agents(
        game.structure
            .agents()
            .filter(|&a| eval_on_lasso(game.goal(a), lasso, &game.labelling)),
    )
}

/// Every availability-respecting joint memoryless strategy for a coalition,
/// indexable in lexicographic order: state-major, then member order, with
/// the first slot most significant.
#[derive(Debug, Clone)]
pub struct MemorylessSpace {
    coalition: Coalition,
    states: usize,
    /// `(member position, state, options)` in significance order.
    slots: Vec<(usize, StateId, Vec<ActionId>)>,
}

impl MemorylessSpace {
    pub fn new(structure: &ConcurrentGameStructure, coalition: Coalition) -> Self {
        let mut slots = Vec::new();
        for s in structure.states() {
            for (pos, a) in coalition.members().enumerate() {
                slots.push((pos, s, structure.available(a, s).to_vec()));
            }
        }
        MemorylessSpace {
            coalition,
            states: structure.state_count(),
            slots,
        }
    }

    /// Number of joint strategies (saturating).
    pub fn len(&self) -> usize {
        self.slots
            .iter()
            .fold(1usize, |acc, (_, _, o)| acc.saturating_mul(o.len()))
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, mut index: usize) -> JointStrategy {
        let mut maps = vec![vec![ActionId(0); self.states]; self.coalition.len()];
        for (pos, s, options) in self.slots.iter().rev() {
            maps[*pos][s.0] = options[index % options.len()];
            index /= options.len();
        }
        JointStrategy {
            coalition: self.coalition,
            machines: maps.into_iter().map(MachineStrategy::memoryless).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = JointStrategy> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }
}

/// Joint memoryless strategies for `coalition` in lexicographic order.
pub fn enumerate_memoryless(structure: &ConcurrentGameStructure, coalition: Coalition) -> MemorylessSpace {
    MemorylessSpace::new(structure, coalition)
}

/// Canonical minimal machines with at most `k` states for one agent: every
/// state reachable, states numbered in breadth-first order, and no two
/// states equivalent. Ordered by size, then lexicographically by tables.
pub fn canonical_machines(structure: &ConcurrentGameStructure, agent: AgentId, k: usize) -> Vec<MachineStrategy> {
    let width = structure.state_count();
    let mut out = Vec::new();
    for n in 1..=k.max(1) {
        // next-table digits, then output digits; most significant first.
        let mut radices: Vec<usize> = vec![n; n * width];
        let mut options: Vec<&[ActionId]> = Vec::new();
        for _q in 0..n {
            for s in structure.states() {
                let avail = structure.available(agent, s);
                radices.push(avail.len());
                options.push(avail);
            }
        }
        let mut digits = vec![0usize; radices.len()];
        loop {
            let next: Vec<Vec<usize>> = (0..n)
                .map(|q| digits[q * width..(q + 1) * width].to_vec())
                .collect();
            let base = n * width;
            let outs: Vec<Vec<ActionId>> = (0..n)
                .map(|q| {
                    (0..width)
                        .map(|s| options[q * width + s][digits[base + q * width + s]])
                        .collect()
                })
                .collect();
            let m = MachineStrategy {
                initial: 0,
                next,
                out: outs,
            };
            if m.is_canonical() && m.is_minimal() {
                out.push(m);
            }
            if !advance(&mut digits, &radices) {
                break;
            }
        }
    }
    out
}

/// Odometer increment, last digit least significant. False on wrap-around.
pub(crate) fn advance(digits: &mut [usize], radices: &[usize]) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < radices[i] {
            return true;
        }
        digits[i] = 0;
    }
    false
}

/// Joint machine strategies for a coalition: the product of each member's
/// canonical machines, first member most significant.
#[derive(Debug, Clone)]
pub struct MachineSpace {
    coalition: Coalition,
    per_member: Vec<Vec<MachineStrategy>>,
}

impl MachineSpace {
    pub fn new(structure: &ConcurrentGameStructure, coalition: Coalition, k: usize) -> Self {
        MachineSpace {
            coalition,
            per_member: coalition
                .members()
                .map(|a| canonical_machines(structure, a, k))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.per_member
            .iter()
            .fold(1usize, |acc, ms| acc.saturating_mul(ms.len()))
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, mut index: usize) -> JointStrategy {
        let mut machines = Vec::with_capacity(self.per_member.len());
        for ms in self.per_member.iter().rev() {
            machines.push(ms[index % ms.len()].clone());
            index /= ms.len();
        }
        machines.reverse();
        JointStrategy {
            coalition: self.coalition,
            machines,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = JointStrategy> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }
}

/// Joint strategies for `coalition` with at most `k` machine states each.
pub fn enumerate_machines(structure: &ConcurrentGameStructure, coalition: Coalition, k: usize) -> MachineSpace {
    MachineSpace::new(structure, coalition, k)
}

/// Whole strategy profiles with at most `k` memory states per agent,
/// indexable in enumeration order.
#[derive(Debug, Clone)]
pub enum ProfileSpace {
    Memoryless(MemorylessSpace),
    Machines(MachineSpace),
}

impl ProfileSpace {
    pub fn new(structure: &ConcurrentGameStructure, k: usize) -> Self {
        let all = structure.grand_coalition();
        if k <= 1 {
            ProfileSpace::Memoryless(MemorylessSpace::new(structure, all))
        } else {
            ProfileSpace::Machines(MachineSpace::new(structure, all, k))
        }
    }

    pub fn len(&self) -> usize {
        match self {
            ProfileSpace::Memoryless(s) => s.len(),
            ProfileSpace::Machines(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, index: usize) -> StrategyProfile {
        let joint = match self {
            ProfileSpace::Memoryless(s) => s.get(index),
            ProfileSpace::Machines(s) => s.get(index),
        };
        StrategyProfile {
            strategies: joint.machines,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = StrategyProfile> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::CgsBuilder;

    fn one_state(actions: usize) -> ConcurrentGameStructure {
        let mut b = CgsBuilder::new(1);
        let s = b.state("s");
        let acts: Vec<ActionId> = (0..actions)
            .map(|i| b.action(AgentId(0), &format!("a{i}")))
            .collect();
        b.uniform(AgentId(0), &acts).initial(s);
        b.transitions_from(s, |_| s);
        b.build().unwrap()
    }

    fn two_state() -> ConcurrentGameStructure {
        let mut b = CgsBuilder::new(1);
        let s0 = b.state("s0");
        let s1 = b.state("s1");
        let x = b.action(AgentId(0), "x");
        let y = b.action(AgentId(0), "y");
        b.uniform(AgentId(0), &[x, y]).initial(s0);
        b.transitions_from(s0, |p| if p[0] == x { s0 } else { s1 });
        b.transitions_from(s1, |p| if p[0] == x { s1 } else { s0 });
        b.build().unwrap()
    }

    #[test]
    fn memoryless_count_and_order() {
        let m = two_state();
        let space = enumerate_memoryless(&m, Coalition::full(1));
        assert_eq!(space.len(), 4);
        let maps: Vec<Vec<usize>> = space
            .iter()
            .map(|j| j.machines[0].as_memoryless().unwrap().iter().map(|a| a.0).collect())
            .collect();
        assert_eq!(maps, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let empty = enumerate_memoryless(&m, Coalition::empty());
        assert_eq!(empty.len(), 1);
        assert!(empty.get(0).machines.is_empty());
    }

    #[test]
    fn six_canonical_two_state_machines() {
        let m = one_state(2);
        assert_eq!(canonical_machines(&m, AgentId(0), 1).len(), 2);
        assert_eq!(canonical_machines(&m, AgentId(0), 2).len(), 6);
    }

    #[test]
    fn run_cuts_at_first_repeated_configuration() {
        let m = two_state();
        let (x, y) = (ActionId(0), ActionId(1));
        let p = StrategyProfile::memoryless(&m, vec![vec![y, x]]).unwrap();
        let run = run_of(&m, &p).unwrap();
        assert_eq!(run, Lasso::new(vec![StateId(0)], vec![StateId(1)]).unwrap());
        // Alternating machine: y then x then y ... from s0.
        let alt = MachineStrategy::new(0, vec![vec![1, 1], vec![0, 0]], vec![vec![y, y], vec![x, x]]).unwrap();
        let p = StrategyProfile::new(&m, vec![alt]).unwrap();
        let run = run_of(&m, &p).unwrap();
        for i in 0..20 {
            let expected = if matches!(i % 4, 1 | 2) { 1 } else { 0 };
            assert_eq!(run.at(i), StateId(expected), "{i}");
        }
    }

    #[test]
    fn unavailable_output_is_reported() {
        let m = two_state();
        let p = StrategyProfile::memoryless(&m, vec![vec![ActionId(5), ActionId(0)]]).unwrap();
        assert!(matches!(run_of(&m, &p), Err(GameError::MachineOutputUnavailable { .. })));
    }
}
