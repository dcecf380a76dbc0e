//! Mean-payoff games: payoffs, cycle means, cycle-hull feasibility,
//! multi-mean-payoff threshold games and the mean-payoff core.

pub mod coop;
pub mod cycles;
pub mod karp;
pub mod lp;
pub mod threshold;

use thiserror::Error;

use crate::error::GameError;
use crate::game::WeightAssignment;
use crate::lasso::Lasso;

pub use coop::{
    deviation_beats_responses, is_lower_bound, is_lower_bound_strict, lower_bound_characterisation,
    lower_bound_game, mp_core_membership, mp_e_core, mp_is_beneficial_deviation, profile_payoffs,
};
pub use cycles::{cycle_mean, enumerate_simple_cycles};
pub use karp::{max_mean_cycle, min_mean_cycle};
pub use lp::hull_feasible;
pub use threshold::{solve_threshold, solve_threshold_memoryless, solve_threshold_strict, MultiMpGame, Player};

/// Exact rational with positive, normalised denominator.
pub type Rational = num_rational::Ratio<i64>;

/// One payoff per agent (or per coordinate of a threshold game).
pub type PayoffVector = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MpError {
    #[error("no cycle is reachable from the root, so there is no infinite play")]
    NoCycle,
    #[error("threshold has {found} coordinates, expected {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("node {0} has no outgoing edge")]
    DeadEnd(usize),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Per-agent mean payoff of a lasso: the average weight over its loop.
pub fn mp_of_lasso(weights: &WeightAssignment, lasso: &Lasso) -> PayoffVector {
    let cycle = &lasso.cycle;
    (0..weights.agent_count())
        .map(|i| {
            let w = weights.of_agent(crate::game::AgentId(i));
            let sum: i64 = cycle.iter().map(|s| w[s.0]).sum();
            Rational::new(sum, cycle.len() as i64)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::StateId;

    #[test]
    fn loop_mean_ignores_stem() {
        let w = WeightAssignment::new(vec![vec![-1, 2, 0], vec![5, 1, 3]]);
        let l = Lasso::new(vec![StateId(0)], vec![StateId(1), StateId(2)]).unwrap();
        assert_eq!(mp_of_lasso(&w, &l), vec![Rational::new(1, 1), Rational::new(2, 1)]);
    }
}
