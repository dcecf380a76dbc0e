use thiserror::Error;

/// Invariant violations for games, strategies and runs. Agents are reported
/// 1-based and states by name.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("game has no agents")]
    NoAgents,
    #[error("at most 32 agents are supported, got {0}")]
    TooManyAgents(usize),
    #[error("game has no states")]
    NoStates,
    #[error("no initial state declared")]
    MissingInitial,
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("agent {agent} has no available action at state {state}")]
    EmptyAvailability { agent: String, state: String },
    #[error("action {action} of agent {agent} is not available at state {state}")]
    UnavailableAction {
        agent: String,
        state: String,
        action: String,
    },
    #[error("missing transition from state {state} on profile {profile}")]
    MissingTransition { state: String, profile: String },
    #[error("conflicting transitions from state {state} on profile {profile}")]
    ConflictingTransition { state: String, profile: String },
    #[error("action profile has {found} entries, expected {expected}")]
    ProfileArity { expected: usize, found: usize },
    #[error("at most 64 propositions are supported, got {0}")]
    TooManyPropositions(usize),
    #[error("undeclared proposition {prop} in {context}")]
    UndeclaredProposition { prop: String, context: String },
    #[error("expected {expected} goals, found {found}")]
    GoalCount { expected: usize, found: usize },
    #[error("labelling covers {found} states, expected {expected}")]
    LabellingSize { expected: usize, found: usize },
    #[error("expected {expected} weight functions, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("weight function of agent {agent} is not total on states")]
    MissingWeight { agent: String },
    #[error("operation requires a game of flavour {expected}")]
    Flavour { expected: &'static str },
    #[error("expected {expected} strategies, found {found}")]
    StrategyCount { expected: usize, found: usize },
    #[error("invalid machine for agent {agent}: {reason}")]
    InvalidMachine { agent: String, reason: String },
    #[error("machine of agent {agent} outputs unavailable action {action} at reachable configuration {configuration}")]
    MachineOutputUnavailable {
        agent: String,
        action: String,
        configuration: String,
    },
    #[error("lasso is not a run: no transition from {from} to {to}")]
    InconsistentLasso { from: String, to: String },
    #[error("lasso loop is empty")]
    EmptyLoop,
    #[error("lasso does not start at the initial state")]
    LassoStart,
}
