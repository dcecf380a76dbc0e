//! Game builders: the worked examples, the 3-CNF gadget, the threshold-game
//! reduction, random families and state duplication.

pub mod cnf;
pub mod examples;
pub mod random;
pub mod reduce;

use thiserror::Error;

use crate::error::GameError;
use crate::game::{CgsBuilder, ConcurrentGameStructure, Game, LtlGame, MpGame, StateId};
use crate::mp::MpError;

pub use cnf::{cnf_to_mp_game, random_cnf, Cnf};
pub use examples::{empty_strong_core_rows, build_example, StrongCoreTableRow, Example, EXAMPLE_NAMES};
pub use random::{random_game, random_ltl, random_multi_mp, Family, RandomParams};
pub use reduce::threshold_to_mp_game;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown example {0}")]
    UnknownExample(String),
    #[error("formula has no clauses")]
    EmptyCnf,
    #[error("bad clause {0}")]
    BadClause(String),
    #[error("{0}")]
    Params(String),
    #[error("{0}")]
    Internal(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Mp(#[from] MpError),
}

/// Adds a copy of `state` wired like the original.
///
/// The copy gets the original's label, weights, availability and moves,
/// with its self-loops kept on the copy. Transitions into `state` on
/// odd-numbered profiles are redirected to the copy. The result is bisimilar
/// to the input.
pub fn duplicate_state(game: &Game, state: StateId) -> Result<Game, GenError> {
    let m = game.structure();
    if state.0 >= m.state_count() {
        return Err(GameError::UnknownState(format!("#{}", state.0)).into());
    }
    let mut b = CgsBuilder::new(m.agent_count());
    for s in m.states() {
        b.state(m.state_name(s));
    }
    let mut name = format!("{}_dup", m.state_name(state));
    while m.state_by_name(&name).is_some() {
        name.push('_');
    }
    let copy = b.state(&name);
    for a in m.agents() {
        for act in m.action_names(a) {
            b.action(a, act);
        }
        for s in m.states() {
            b.available(a, s, m.available(a, s));
        }
        b.available(a, copy, m.available(a, state));
    }
    b.initial(m.initial());
    for s in m.states() {
        for (i, p) in m.profiles(s).enumerate() {
            let t = m.successor(s, &p)?;
            let t = if t == state && (s == state || i % 2 == 1) { copy } else { t };
            b.transition(s, p, t);
        }
    }
    for p in m.profiles(state) {
        let t = m.successor(state, &p)?;
        b.transition(copy, p, if t == state { copy } else { t });
    }
    let structure: ConcurrentGameStructure = b.build()?;
    Ok(match game {
        Game::Ltl(g) => {
            let mut labelling = g.labelling.clone();
            labelling.push_copy(state);
            Game::Ltl(LtlGame::new(structure, labelling, g.goals.clone())?)
        }
        Game::MeanPayoff(g) => {
            let mut weights = g.weights.clone();
            weights.push_copy(state);
            Game::MeanPayoff(MpGame::new(structure, weights)?)
        }
    })
}
