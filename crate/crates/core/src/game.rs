//! Concurrent game structures, labellings, weights and games.
//!
//! A structure is built through [`CgsBuilder`] and is immutable afterwards.
//! The transition function is stored densely: for every state there is one
//! slot per action profile drawn from the available actions at that state.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::GameError;
use crate::ltl::Ltl;

/// Index of a state in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub usize);

/// Zero-based agent index. Displayed 1-based, as in every file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AgentId(pub usize);

/// Index into an agent's action alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionId(pub usize);

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 + 1)
    }
}

/// A set of agents, stored as a bit mask. Games are desk-scale, so 32 agents
/// is plenty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(u32);

impl Coalition {
    pub const MAX_AGENTS: usize = 32;

    pub fn empty() -> Self {
        Coalition(0)
    }

    pub fn full(agents: usize) -> Self {
        assert!(agents <= Self::MAX_AGENTS);
        if agents == 32 {
            Coalition(u32::MAX)
        } else {
            Coalition((1u32 << agents) - 1)
        }
    }

    pub fn singleton(agent: AgentId) -> Self {
        Coalition(1 << agent.0)
    }

    pub fn from_mask(mask: u32) -> Self {
        Coalition(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn from_agents(agents: impl IntoIterator<Item = AgentId>) -> Self {
        agents
            .into_iter()
            .fold(Coalition(0), |c, a| c.with(a))
    }

    pub fn with(self, agent: AgentId) -> Self {
        Coalition(self.0 | (1 << agent.0))
    }

    pub fn contains(self, agent: AgentId) -> bool {
        self.0 & (1 << agent.0) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Coalition) -> Self {
        Coalition(self.0 | other.0)
    }

    pub fn intersection(self, other: Coalition) -> Self {
        Coalition(self.0 & other.0)
    }

    /// Agents of `0..agents` not in `self`.
    pub fn complement(self, agents: usize) -> Self {
        Coalition(!self.0 & Coalition::full(agents).0)
    }

    pub fn members(self) -> impl Iterator<Item = AgentId> {
        let mask = self.0;
        (0..32).filter(move |i| mask & (1 << i) != 0).map(AgentId)
    }

    /// Non-empty subsets of `self`, ordered by increasing size and then by
    /// mask value.
    pub fn nonempty_subsets(self) -> Vec<Coalition> {
        let mut subsets = Vec::new();
        let mut sub = self.0;
        while sub != 0 {
            subsets.push(Coalition(sub));
            sub = (sub - 1) & self.0;
        }
        subsets.sort_by_key(|c| (c.len(), c.0));
        subsets
    }

    /// All subsets of `self` including the empty one, ordered by increasing
    /// size and then by mask value.
    pub fn subsets(self) -> Vec<Coalition> {
        let mut subsets = self.nonempty_subsets();
        subsets.insert(0, Coalition(0));
        subsets
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.members().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// A concurrent game structure `(Ag, St, {Ac_i}, s0, tau)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcurrentGameStructure {
    agents: usize,
    state_names: Vec<String>,
    action_names: Vec<Vec<String>>,
    /// `available[state][agent]`, sorted by action id.
    available: Vec<Vec<Vec<ActionId>>>,
    initial: StateId,
    /// `table[state][profile_index]`.
    table: Vec<Vec<StateId>>,
    /// Distinct successors per state in order of first appearance.
    successors: Vec<Vec<usize>>,
}

impl ConcurrentGameStructure {
    pub fn agent_count(&self) -> usize {
        self.agents
    }

    pub fn agents(&self) -> impl Iterator<Item = AgentId> {
        (0..self.agents).map(AgentId)
    }

    pub fn grand_coalition(&self) -> Coalition {
        Coalition::full(self.agents)
    }

    pub fn state_count(&self) -> usize {
        self.state_names.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.state_names.len()).map(StateId)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.state_names[s.0]
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.state_names.iter().position(|n| n == name).map(StateId)
    }

    pub fn action_names(&self, agent: AgentId) -> &[String] {
        &self.action_names[agent.0]
    }

    pub fn action_name(&self, agent: AgentId, action: ActionId) -> &str {
        &self.action_names[agent.0][action.0]
    }

    pub fn action_by_name(&self, agent: AgentId, name: &str) -> Option<ActionId> {
        self.action_names[agent.0]
            .iter()
            .position(|n| n == name)
            .map(ActionId)
    }

    /// `Ac_i(s)`, sorted by action id.
    pub fn available(&self, agent: AgentId, state: StateId) -> &[ActionId] {
        &self.available[state.0][agent.0]
    }

    pub fn is_available(&self, agent: AgentId, state: StateId, action: ActionId) -> bool {
        self.available(agent, state).binary_search(&action).is_ok()
    }

    /// Number of action profiles available at `state`.
    pub fn profile_count(&self, state: StateId) -> usize {
        self.table[state.0].len()
    }

    /// The `index`-th available profile at `state` in lexicographic order
    /// (agent 1 most significant).
    pub fn profile_at(&self, state: StateId, mut index: usize) -> Vec<ActionId> {
        let avail = &self.available[state.0];
        let mut profile = vec![ActionId(0); self.agents];
        for agent in (0..self.agents).rev() {
            let options = &avail[agent];
            profile[agent] = options[index % options.len()];
            index /= options.len();
        }
        profile
    }

    /// All available profiles at `state` in lexicographic order.
    pub fn profiles(&self, state: StateId) -> impl Iterator<Item = Vec<ActionId>> + '_ {
        (0..self.profile_count(state)).map(move |i| self.profile_at(state, i))
    }

    /// Position of `profile` in the dense transition table of `state`.
    pub fn profile_index(&self, state: StateId, profile: &[ActionId]) -> Result<usize, GameError> {
        if profile.len() != self.agents {
            return Err(GameError::ProfileArity {
                expected: self.agents,
                found: profile.len(),
            });
        }
        let mut index = 0;
        for (agent, action) in profile.iter().enumerate() {
            let options = &self.available[state.0][agent];
            let pos = options
                .binary_search(action)
                .map_err(|_| GameError::UnavailableAction {
                    agent: AgentId(agent).to_string(),
                    state: self.state_names[state.0].clone(),
                    action: self
                        .action_names
                        .get(agent)
                        .and_then(|names| names.get(action.0))
                        .cloned()
                        .unwrap_or_else(|| format!("#{}", action.0)),
                })?;
            index = index * options.len() + pos;
        }
        Ok(index)
    }

    /// `tau(state, profile)`.
    pub fn successor(&self, state: StateId, profile: &[ActionId]) -> Result<StateId, GameError> {
        let index = self.profile_index(state, profile)?;
        Ok(self.table[state.0][index])
    }

    pub(crate) fn successor_by_index(&self, state: StateId, index: usize) -> StateId {
        self.table[state.0][index]
    }

    /// Distinct successors of `state` over all available profiles.
    pub fn successor_states(&self, state: StateId) -> impl Iterator<Item = StateId> + '_ {
        self.successors[state.0].iter().map(|&s| StateId(s))
    }

    pub(crate) fn successor_indices(&self, state: usize) -> &[usize] {
        &self.successors[state]
    }

    /// Actions worth enumerating: all available ones, or just the first when
    /// every profile at `state` has the same successor.
    pub fn relevant_actions(&self, agent: AgentId, state: StateId) -> &[ActionId] {
        let avail = self.available(agent, state);
        if self.successors[state.0].len() == 1 {
            &avail[..1]
        } else {
            avail
        }
    }

    /// A state every profile maps back to itself.
    pub fn is_absorbing(&self, state: StateId) -> bool {
        self.table[state.0].iter().all(|&t| t == state)
    }

    /// Renders an action profile like `(a,b)`.
    pub fn format_profile(&self, profile: &[ActionId]) -> String {
        let names: Vec<&str> = profile
            .iter()
            .enumerate()
            .map(|(i, a)| self.action_name(AgentId(i), *a))
            .collect();
        format!("({})", names.join(","))
    }

    /// States reachable from the initial state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut stack = vec![self.initial.0];
        seen[self.initial.0] = true;
        while let Some(s) = stack.pop() {
            for &t in &self.successors[s] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Re-checks every structural invariant.
    pub fn validate(&self) -> Result<(), GameError> {
        if self.agents == 0 {
            return Err(GameError::NoAgents);
        }
        if self.initial.0 >= self.state_count() {
            return Err(GameError::MissingInitial);
        }
        for s in self.states() {
            for a in self.agents() {
                if self.available(a, s).is_empty() {
                    return Err(GameError::EmptyAvailability {
                        agent: a.to_string(),
                        state: self.state_name(s).to_string(),
                    });
                }
            }
            let expected: usize = self.available[s.0].iter().map(Vec::len).product();
            if self.table[s.0].len() != expected {
                return Err(GameError::MissingTransition {
                    state: self.state_name(s).to_string(),
                    profile: "<table size>".into(),
                });
            }
            if let Some(t) = self.table[s.0].iter().find(|t| t.0 >= self.state_count()) {
                return Err(GameError::UnknownState(format!("#{}", t.0)));
            }
        }
        Ok(())
    }
}

/// Incremental construction of a [`ConcurrentGameStructure`]. Totality and
/// availability are checked by [`CgsBuilder::build`].
#[derive(Debug, Clone)]
pub struct CgsBuilder {
    agents: usize,
    state_names: Vec<String>,
    action_names: Vec<Vec<String>>,
    available: BTreeMap<(usize, usize), BTreeSet<ActionId>>,
    uniform: Vec<Option<BTreeSet<ActionId>>>,
    initial: Option<StateId>,
    transitions: Vec<(StateId, Vec<ActionId>, StateId)>,
}

impl CgsBuilder {
    pub fn new(agents: usize) -> Self {
        CgsBuilder {
            agents,
            state_names: Vec::new(),
            action_names: vec![Vec::new(); agents],
            available: BTreeMap::new(),
            uniform: vec![None; agents],
            initial: None,
            transitions: Vec::new(),
        }
    }

    pub fn agent_count(&self) -> usize {
        self.agents
    }

    /// Declares a state (or returns the existing id).
    pub fn state(&mut self, name: &str) -> StateId {
        if let Some(i) = self.state_names.iter().position(|n| n == name) {
            return StateId(i);
        }
        self.state_names.push(name.to_string());
        StateId(self.state_names.len() - 1)
    }

    pub fn find_state(&self, name: &str) -> Option<StateId> {
        self.state_names.iter().position(|n| n == name).map(StateId)
    }

    /// Declares an action in the agent's alphabet (or returns the existing id).
    pub fn action(&mut self, agent: AgentId, name: &str) -> ActionId {
        let names = &mut self.action_names[agent.0];
        if let Some(i) = names.iter().position(|n| n == name) {
            return ActionId(i);
        }
        names.push(name.to_string());
        ActionId(names.len() - 1)
    }

    pub fn find_action(&self, agent: AgentId, name: &str) -> Option<ActionId> {
        self.action_names[agent.0]
            .iter()
            .position(|n| n == name)
            .map(ActionId)
    }

    /// Sets `Ac_i(s)` for one state, overriding any uniform declaration.
    pub fn available(&mut self, agent: AgentId, state: StateId, actions: &[ActionId]) -> &mut Self {
        self.available
            .insert((state.0, agent.0), actions.iter().copied().collect());
        self
    }

    /// Sets `Ac_i(s)` for every state without an explicit declaration.
    pub fn uniform(&mut self, agent: AgentId, actions: &[ActionId]) -> &mut Self {
        self.uniform[agent.0] = Some(actions.iter().copied().collect());
        self
    }

    pub fn initial(&mut self, state: StateId) -> &mut Self {
        self.initial = Some(state);
        self
    }

    pub fn transition(&mut self, from: StateId, profile: Vec<ActionId>, to: StateId) -> &mut Self {
        self.transitions.push((from, profile, to));
        self
    }

    /// Maps every available profile at `from` through `f`.
    pub fn transitions_from(
        &mut self,
        from: StateId,
        mut f: impl FnMut(&[ActionId]) -> StateId,
    ) -> &mut Self {
        let avail: Vec<Vec<ActionId>> = (0..self.agents)
            .map(|a| self.available_at(AgentId(a), from))
            .collect();
        for profile in cartesian(&avail) {
            let to = f(&profile);
            self.transitions.push((from, profile, to));
        }
        self
    }

    /// Makes `state` absorbing.
    pub fn sink(&mut self, state: StateId) -> &mut Self {
        self.transitions_from(state, |_| state)
    }

    /// Makes `state` absorbing with a single available action per agent
    /// (the first one currently available there).
    pub fn terminal(&mut self, state: StateId) -> &mut Self {
        for a in 0..self.agents {
            if let Some(&first) = self.available_at(AgentId(a), state).first() {
                self.available(AgentId(a), state, &[first]);
            }
        }
        self.sink(state)
    }

    pub fn available_at(&self, agent: AgentId, state: StateId) -> Vec<ActionId> {
        self.available
            .get(&(state.0, agent.0))
            .or(self.uniform[agent.0].as_ref())
            .map(|set| set.iter().copied().collect())
            .unwrap_or_default()
    }

    pub fn build(&self) -> Result<ConcurrentGameStructure, GameError> {
        if self.agents == 0 {
            return Err(GameError::NoAgents);
        }
        if self.agents > Coalition::MAX_AGENTS {
            return Err(GameError::TooManyAgents(self.agents));
        }
        if self.state_names.is_empty() {
            return Err(GameError::NoStates);
        }
        let initial = self.initial.ok_or(GameError::MissingInitial)?;
        let n_states = self.state_names.len();
        let mut available = Vec::with_capacity(n_states);
        for s in 0..n_states {
            let mut per_agent = Vec::with_capacity(self.agents);
            for a in 0..self.agents {
                let acts = self.available_at(AgentId(a), StateId(s));
                if acts.is_empty() {
                    return Err(GameError::EmptyAvailability {
                        agent: AgentId(a).to_string(),
                        state: self.state_names[s].clone(),
                    });
                }
                per_agent.push(acts);
            }
            available.push(per_agent);
        }
        let mut structure = ConcurrentGameStructure {
            agents: self.agents,
            state_names: self.state_names.clone(),
            action_names: self.action_names.clone(),
            available,
            initial,
            table: Vec::new(),
            successors: Vec::new(),
        };
        let mut table: Vec<Vec<Option<StateId>>> = (0..n_states)
            .map(|s| {
                let size: usize = structure.available[s].iter().map(Vec::len).product();
                vec![None; size]
            })
            .collect();
        for (from, profile, to) in &self.transitions {
            if from.0 >= n_states || to.0 >= n_states {
                return Err(GameError::UnknownState(format!("#{}", from.0.max(to.0))));
            }
            let index = structure.profile_index(*from, profile)?;
            let slot = &mut table[from.0][index];
            match slot {
                Some(existing) if existing != to => {
                    return Err(GameError::ConflictingTransition {
                        state: self.state_names[from.0].clone(),
                        profile: self.format_profile(profile),
                    })
                }
                _ => *slot = Some(*to),
            }
        }
        let mut dense = Vec::with_capacity(n_states);
        for (s, row) in table.into_iter().enumerate() {
            let mut filled = Vec::with_capacity(row.len());
            for (i, slot) in row.into_iter().enumerate() {
                match slot {
                    Some(t) => filled.push(t),
                    None => {
                        let profile = structure.profile_at(StateId(s), i);
                        return Err(GameError::MissingTransition {
                            state: self.state_names[s].clone(),
                            profile: self.format_profile(&profile),
                        });
                    }
                }
            }
            dense.push(filled);
        }
        structure.successors = dense
            .iter()
            .map(|row| {
                let mut seen = Vec::new();
                for t in row {
                    if !seen.contains(&t.0) {
                        seen.push(t.0);
                    }
                }
                seen
            })
            .collect();
        structure.table = dense;
        Ok(structure)
    }

    fn format_profile(&self, profile: &[ActionId]) -> String {
        let names: Vec<String> = profile
            .iter()
            .enumerate()
            .map(|(i, a)| {
                self.action_names
                    .get(i)
                    .and_then(|n| n.get(a.0))
                    .cloned()
                    .unwrap_or_else(|| format!("#{}", a.0))
            })
            .collect();
        format!("({})", names.join(","))
    }
}

/// Cartesian product of option lists, last list varying fastest.
pub(crate) fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::with_capacity(lists.len())];
    for list in lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for prefix in &out {
            for item in list {
                let mut p = prefix.clone();
                p.push(item.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// State labelling `lambda : St -> 2^AP` over a declared alphabet (at most 64
/// propositions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labelling {
    props: Vec<String>,
    by_state: Vec<u64>,
}

impl Labelling {
    pub const MAX_PROPS: usize = 64;

    pub fn new(props: Vec<String>, states: usize) -> Result<Self, GameError> {
        if props.len() > Self::MAX_PROPS {
            return Err(GameError::TooManyPropositions(props.len()));
        }
        Ok(Labelling {
            props,
            by_state: vec![0; states],
        })
    }

    /// Builds a labelling from per-state proposition names; the alphabet is
    /// the union, in order of first appearance.
    pub fn from_sets<S: AsRef<str>>(sets: &[Vec<S>]) -> Result<Self, GameError> {
        let mut props: Vec<String> = Vec::new();
        for set in sets {
            for p in set {
                if !props.iter().any(|q| q == p.as_ref()) {
                    props.push(p.as_ref().to_string());
                }
            }
        }
        let mut labelling = Labelling::new(props, sets.len())?;
        for (s, set) in sets.iter().enumerate() {
            for p in set {
                labelling.add(StateId(s), p.as_ref())?;
            }
        }
        Ok(labelling)
    }

    pub fn props(&self) -> &[String] {
        &self.props
    }

    pub fn prop_index(&self, name: &str) -> Option<usize> {
        self.props.iter().position(|p| p == name)
    }

    pub fn declare(&mut self, name: &str) -> Result<usize, GameError> {
        if let Some(i) = self.prop_index(name) {
            return Ok(i);
        }
        if self.props.len() == Self::MAX_PROPS {
            return Err(GameError::TooManyPropositions(self.props.len() + 1));
        }
        self.props.push(name.to_string());
        Ok(self.props.len() - 1)
    }

    pub fn add(&mut self, state: StateId, prop: &str) -> Result<(), GameError> {
        let i = self
            .prop_index(prop)
            .ok_or_else(|| GameError::UndeclaredProposition {
                prop: prop.to_string(),
                context: "labelling".into(),
            })?;
        self.by_state[state.0] |= 1 << i;
        Ok(())
    }

    pub fn state_count(&self) -> usize {
        self.by_state.len()
    }

    pub fn mask(&self, state: StateId) -> u64 {
        self.by_state[state.0]
    }

    pub fn holds(&self, state: StateId, prop: usize) -> bool {
        self.by_state[state.0] & (1 << prop) != 0
    }

    pub fn names_at(&self, state: StateId) -> Vec<&str> {
        (0..self.props.len())
            .filter(|&i| self.holds(state, i))
            .map(|i| self.props[i].as_str())
            .collect()
    }

    /// Appends a state carrying the same label as `like`.
    pub(crate) fn push_copy(&mut self, like: StateId) {
        let mask = self.by_state[like.0];
        self.by_state.push(mask);
    }
}

/// Per-agent integer state weights `w_i : St -> Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightAssignment {
    /// `weights[agent][state]`
    weights: Vec<Vec<i64>>,
}

impl WeightAssignment {
    pub fn new(weights: Vec<Vec<i64>>) -> Self {
        WeightAssignment { weights }
    }

    pub fn zeros(agents: usize, states: usize) -> Self {
        WeightAssignment {
            weights: vec![vec![0; states]; agents],
        }
    }

    pub fn agent_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, agent: AgentId, state: StateId) -> i64 {
        self.weights[agent.0][state.0]
    }

    pub fn set(&mut self, agent: AgentId, state: StateId, w: i64) {
        self.weights[agent.0][state.0] = w;
    }

    pub fn of_agent(&self, agent: AgentId) -> &[i64] {
        &self.weights[agent.0]
    }

    /// Weight vector `(w_1(s), ..., w_n(s))`.
    pub fn vector(&self, state: StateId) -> Vec<i64> {
        self.weights.iter().map(|w| w[state.0]).collect()
    }

    pub fn max_weight(&self, agent: AgentId) -> i64 {
        self.weights[agent.0].iter().copied().max().unwrap_or(0)
    }

    pub(crate) fn push_copy(&mut self, like: StateId) {
        for w in &mut self.weights {
            let v = w[like.0];
            w.push(v);
        }
    }
}

/// An LTL game `(M, AP, lambda, (gamma_i))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LtlGame {
    pub structure: ConcurrentGameStructure,
    pub labelling: Labelling,
    pub goals: Vec<Ltl>,
}

impl LtlGame {
    pub fn new(
        structure: ConcurrentGameStructure,
        labelling: Labelling,
        goals: Vec<Ltl>,
    ) -> Result<Self, GameError> {
        let game = LtlGame {
            structure,
            labelling,
            goals,
        };
        game.validate()?;
        Ok(game)
    }

    pub fn goal(&self, agent: AgentId) -> &Ltl {
        &self.goals[agent.0]
    }

    pub fn validate(&self) -> Result<(), GameError> {
        self.structure.validate()?;
        if self.goals.len() != self.structure.agent_count() {
            return Err(GameError::GoalCount {
                expected: self.structure.agent_count(),
                found: self.goals.len(),
            });
        }
        if self.labelling.state_count() != self.structure.state_count() {
            return Err(GameError::LabellingSize {
                expected: self.structure.state_count(),
                found: self.labelling.state_count(),
            });
        }
        for (i, goal) in self.goals.iter().enumerate() {
            for atom in goal.atoms() {
                if self.labelling.prop_index(&atom).is_none() {
                    return Err(GameError::UndeclaredProposition {
                        prop: atom,
                        context: format!("goal of agent {}", i + 1),
                    });
                }
            }
        }
        Ok(())
    }
}

/// A mean-payoff game `(M, {w_i})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MpGame {
    pub structure: ConcurrentGameStructure,
    pub weights: WeightAssignment,
}

impl MpGame {
    pub fn new(structure: ConcurrentGameStructure, weights: WeightAssignment) -> Result<Self, GameError> {
        let game = MpGame { structure, weights };
        game.validate()?;
        Ok(game)
    }

    pub fn validate(&self) -> Result<(), GameError> {
        self.structure.validate()?;
        if self.weights.agent_count() != self.structure.agent_count() {
            return Err(GameError::WeightCount {
                expected: self.structure.agent_count(),
                found: self.weights.agent_count(),
            });
        }
        for a in self.structure.agents() {
            if self.weights.of_agent(a).len() != self.structure.state_count() {
                return Err(GameError::MissingWeight {
                    agent: a.to_string(),
                });
            }
        }
        Ok(())
    }
}

/// A game of either flavour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Game {
    Ltl(LtlGame),
    MeanPayoff(MpGame),
}

impl Game {
    pub fn structure(&self) -> &ConcurrentGameStructure {
        match self {
            Game::Ltl(g) => &g.structure,
            Game::MeanPayoff(g) => &g.structure,
        }
    }

    pub fn as_ltl(&self) -> Result<&LtlGame, GameError> {
        match self {
            Game::Ltl(g) => Ok(g),
            Game::MeanPayoff(_) => Err(GameError::Flavour { expected: "ltl" }),
        }
    }

    pub fn as_mp(&self) -> Result<&MpGame, GameError> {
        match self {
            Game::MeanPayoff(g) => Ok(g),
            Game::Ltl(_) => Err(GameError::Flavour { expected: "mp" }),
        }
    }
}

/// Checks every game invariant; reports the first violation.
pub fn validate_game(game: &Game) -> Result<(), GameError> {
    match game {
        Game::Ltl(g) => g.validate(),
        Game::MeanPayoff(g) => g.validate(),
    }
}

/// A one-shot structure: every play leaves the initial state in one step and
/// never returns, and from then on each state has a single successor. The
/// run is fixed by the first joint move, so memoryless strategies are fully
/// general. Plain sink games are the common case.
pub fn is_one_shot(structure: &ConcurrentGameStructure) -> bool {
    let init = structure.initial();
    if structure.is_absorbing(init) {
        return true;
    }
    let mut seen = vec![false; structure.state_count()];
    let mut stack: Vec<StateId> = structure.successor_states(init).collect();
    while let Some(s) = stack.pop() {
        if s == init {
            return false;
        }
        if std::mem::replace(&mut seen[s.0], true) {
            continue;
        }
        if structure.successor_indices(s.0).len() != 1 {
            return false;
        }
        stack.extend(structure.successor_states(s));
    }
    true
}

/// Pushes state weights onto outgoing edges: one edge per realisable state
/// pair, carrying `(w_1(s), ..., w_n(s))`.
pub fn weights_to_edges(game: &MpGame) -> crate::graph::WeightedGraph {
    let structure = &game.structure;
    let mut graph = crate::graph::WeightedGraph::new(structure.state_count(), structure.initial().0);
    for s in structure.states() {
        for t in structure.successor_states(s) {
            graph.add_edge(s.0, t.0, game.weights.vector(s));
        }
    }
    graph
}
