//! Beneficial deviations, lower bounds and the core of mean-payoff games.

use rayon::prelude::*;

use crate::arena::{effective_memoryless, joint_actions, merge_profile, outcome_classes, restrict};
use crate::coop::{Verdict, Witness};
use crate::game::{weights_to_edges, AgentId, Coalition, MpGame};
use crate::graph::WeightedGraph;
use crate::strategy::{run_of, JointStrategy, MachineSpace, MemorylessSpace, ProfileSpace, StrategyProfile};

use super::karp::{max_mean_cycle, min_mean_cycle};
use super::threshold::{solve_threshold, solve_threshold_strict, MultiMpGame, Player};
use super::{mp_of_lasso, MpError, PayoffVector, Rational};

/// Payoffs of the run induced by `profile`.
pub fn profile_payoffs(game: &MpGame, profile: &StrategyProfile) -> Result<PayoffVector, MpError> {
    let run = run_of(&game.structure, profile)?;
    Ok(mp_of_lasso(&game.weights, &run))
}

/// Whether `dev` makes every deviator strictly better off than under
/// `profile`, whatever the other agents do.
pub fn mp_is_beneficial_deviation(game: &MpGame, profile: &StrategyProfile, dev: &JointStrategy) -> Result<bool, MpError> {
    if dev.coalition.is_empty() {
        return Ok(false);
    }
    let z = profile_payoffs(game, profile)?;
    beats(game, &z, dev)
}

fn beats(game: &MpGame, z: &[Rational], dev: &JointStrategy) -> Result<bool, MpError> {
    let arena = restrict(&game.structure, dev)?;
    let graph = arena.weighted_graph(&game.weights);
    for j in dev.coalition.members() {
        if min_mean_cycle(&graph, j.0)? <= z[j.0] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Core membership against memoryless deviations. `FAILS` carries the first
/// beneficial deviation found (coalitions by increasing size).
pub fn mp_core_membership(game: &MpGame, profile: &StrategyProfile) -> Result<Verdict, MpError> {
    let z = profile_payoffs(game, profile)?;
    let full = weights_to_edges(game);
    let best: Vec<Rational> = game
        .structure
        .agents()
        .map(|a| max_mean_cycle(&full, a.0))
        .collect::<Result<_, _>>()?;
    for c in game.structure.grand_coalition().nonempty_subsets() {
        if c.members().any(|j| best[j.0] <= z[j.0]) {
            continue;
        }
        let devs = effective_memoryless(&game.structure, c);
        let found = devs
            .par_iter()
            .map(|d| beats(game, &z, d).map(|ok| ok.then(|| d.clone())))
            .find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            });
        match found {
            Some(Ok(Some(d))) => return Ok(Verdict::fails(Some(Witness::Deviation(d)), Some(1))),
            Some(Err(e)) => return Err(e),
            _ => {}
        }
    }
    Ok(Verdict::holds(None, Some(1)))
}

/// First memoryless profile in enumeration order that is in the core, with
/// its payoffs.
pub fn mp_e_core(game: &MpGame) -> Result<Option<(StrategyProfile, PayoffVector)>, MpError> {
    let space = ProfileSpace::new(&game.structure, 1);
    let found = (0..space.len()).into_par_iter().find_map_first(|i| {
        let p = space.get(i);
        match mp_core_membership(game, &p) {
            Ok(v) if v.status == crate::coop::Status::Holds => Some(profile_payoffs(game, &p).map(|z| Some((p, z)))),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        }
    });
    found.unwrap_or(Ok(None))
}

/// Two-player game in which player 1 (the coalition) picks a joint action
/// at each state and player 2 (everyone else) then completes the profile.
/// Both edges of a round carry `w_C(s)`.
pub fn lower_bound_game(game: &MpGame, c: Coalition, z: &[Rational]) -> Result<MultiMpGame, MpError> {
    if z.len() != c.len() {
        return Err(MpError::Dimension {
            expected: c.len(),
            found: z.len(),
        });
    }
    let st = &game.structure;
    let n = st.agent_count();
    let others = c.complement(n);
    let mut owner = vec![Player::One; st.state_count()];
    let mut edges = Vec::new();
    for s in st.states() {
        let w: Vec<i64> = c.members().map(|j| game.weights.weight(j, s)).collect();
        for a in outcome_classes(st, c, s) {
            let node = owner.len();
            owner.push(Player::Two);
            edges.push((s.0, node, w.clone()));
            for f in joint_actions(st, others, s) {
                let t = st.successor(s, &merge_profile(n, c, &a, &f))?;
                edges.push((node, t.0, w.clone()));
            }
        }
    }
    let mut graph = WeightedGraph::new(owner.len(), st.initial().0);
    for (u, v, w) in edges {
        graph.add_edge(u, v, w);
    }
    MultiMpGame::new(graph, owner, z.to_vec())
}

/// Whether `c` can guarantee at least `z` (indexed by members of `c`).
pub fn is_lower_bound(game: &MpGame, c: Coalition, z: &[Rational]) -> Result<bool, MpError> {
    Ok(solve_threshold(&lower_bound_game(game, c, z)?))
}

/// Whether `c` can guarantee strictly more than `z` for every member.
pub fn is_lower_bound_strict(game: &MpGame, c: Coalition, z: &[Rational]) -> Result<bool, MpError> {
    Ok(solve_threshold_strict(&lower_bound_game(game, c, z)?))
}

/// True iff no coalition can guarantee all its members strictly more than
/// they get on `lasso`.
pub fn lower_bound_characterisation(game: &MpGame, lasso: &crate::lasso::Lasso) -> Result<bool, MpError> {
    let pay = mp_of_lasso(&game.weights, lasso);
    let full = weights_to_edges(game);
    for c in game.structure.grand_coalition().nonempty_subsets() {
        let mut hopeless = false;
        for j in c.members() {
            if max_mean_cycle(&full, j.0)? <= pay[j.0] {
                hopeless = true;
                break;
            }
        }
        if hopeless {
            continue;
        }
        let z: Vec<Rational> = c.members().map(|j| pay[j.0]).collect();
        if is_lower_bound_strict(game, c, &z)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Brute-force deviation check: `dev` is beneficial against every response
/// of the others with at most `k` memory states (memoryless when `k <= 1`).
pub fn deviation_beats_responses(
    game: &MpGame,
    profile: &StrategyProfile,
    dev: &JointStrategy,
    k: usize,
) -> Result<bool, MpError> {
    let c = dev.coalition;
    if c.is_empty() {
        return Ok(false);
    }
    let z = profile_payoffs(game, profile)?;
    let st = &game.structure;
    let others = c.complement(st.agent_count());
    let deviated = profile.with_deviation(dev);
    let check = |resp: JointStrategy| -> Result<bool, MpError> {
        let pay = profile_payoffs(game, &deviated.with_deviation(&resp))?;
        Ok(c.members().all(|j: AgentId| pay[j.0] > z[j.0]))
    };
    if k <= 1 {
        let space = MemorylessSpace::new(st, others);
        for resp in space.iter() {
            if !check(resp)? {
                return Ok(false);
            }
        }
    } else {
        let space = MachineSpace::new(st, others, k);
        for resp in space.iter() {
            if !check(resp)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
