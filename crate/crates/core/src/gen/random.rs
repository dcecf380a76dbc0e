//! Seeded random games, formulas and threshold games.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::game::{
    AgentId, CgsBuilder, ConcurrentGameStructure, Game, Labelling, LtlGame, MpGame, StateId, WeightAssignment,
};
use crate::graph::WeightedGraph;
use crate::ltl::Ltl;
use crate::mp::{MultiMpGame, Player, Rational};

use super::GenError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// One round from `s0` into absorbing sinks with one action each; goals
    /// are `X` over sink labels.
    SinkLtl,
    /// Arbitrary transitions, labels over `p`, `q` and random goals.
    GeneralLtl,
    /// Arbitrary transitions and weights in `-3..=3`.
    Mp,
}

impl std::str::FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        match s {
            "sink-ltl" => Ok(Family::SinkLtl),
            "general-ltl" => Ok(Family::GeneralLtl),
            "mp" => Ok(Family::Mp),
            other => Err(GenError::Params(format!("unknown family {other}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomParams {
    pub agents: usize,
    pub states: usize,
    pub actions: usize,
}

impl RandomParams {
    pub fn new(agents: usize, states: usize, actions: usize) -> Result<Self, GenError> {
        if !(1..=4).contains(&agents) || !(1..=6).contains(&states) || !(1..=3).contains(&actions) {
            return Err(GenError::Params(format!(
                "need 1..=4 agents, 1..=6 states, 1..=3 actions; got {agents}, {states}, {actions}"
            )));
        }
        Ok(RandomParams { agents, states, actions })
    }
}

pub fn random_game(family: Family, params: RandomParams, seed: u64) -> Result<Game, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match family {
        Family::SinkLtl => sink_ltl(params, &mut rng),
        Family::GeneralLtl => general_ltl(params, &mut rng),
        Family::Mp => mp(params, &mut rng),
    }
}

fn builder(params: RandomParams) -> (CgsBuilder, Vec<StateId>) {
    let mut b = CgsBuilder::new(params.agents);
    let states = (0..params.states).map(|i| b.state(&format!("s{i}"))).collect();
    for a in 0..params.agents {
        let acts: Vec<_> = (0..params.actions)
            .map(|i| b.action(AgentId(a), &format!("a{i}")))
            .collect();
        b.uniform(AgentId(a), &acts);
    }
    (b, states)
}

fn random_structure(params: RandomParams, rng: &mut ChaCha8Rng) -> Result<ConcurrentGameStructure, GenError> {
    let (mut b, states) = builder(params);
    b.initial(states[0]);
    for &s in &states {
        b.transitions_from(s, |_| *states.choose(rng).unwrap());
    }
    Ok(b.build()?)
}

fn sink_ltl(params: RandomParams, rng: &mut ChaCha8Rng) -> Result<Game, GenError> {
    let params = RandomParams {
        states: params.states.max(2),
        ..params
    };
    let (mut b, states) = builder(params);
    b.initial(states[0]);
    let sinks = &states[1..];
    b.transitions_from(states[0], |_| *sinks.choose(rng).unwrap());
    for &s in sinks {
        b.terminal(s);
    }
    let structure = b.build()?;
    let mut sets: Vec<Vec<String>> = vec![vec![]];
    sets.extend((1..params.states).map(|i| vec![format!("t{i}")]));
    let labelling = Labelling::from_sets(&sets)?;
    let goals = (0..params.agents)
        .map(|_| {
            let mut chosen: Vec<usize> = (1..params.states).filter(|_| rng.gen_bool(0.5)).collect();
            if chosen.is_empty() {
                chosen.push(rng.gen_range(1..params.states));
            }
            Ltl::next(Ltl::or_all(chosen.into_iter().map(|i| Ltl::atom(&format!("t{i}")))))
        })
        .collect();
    Ok(Game::Ltl(LtlGame::new(structure, labelling, goals)?))
}

fn general_ltl(params: RandomParams, rng: &mut ChaCha8Rng) -> Result<Game, GenError> {
    let structure = random_structure(params, rng)?;
    let atoms = ["p", "q"];
    let mut labelling = Labelling::new(atoms.iter().map(|s| s.to_string()).collect(), params.states)?;
    for s in structure.states() {
        for a in atoms {
            if rng.gen_bool(0.5) {
                labelling.add(s, a)?;
            }
        }
    }
    let goals = (0..params.agents).map(|_| random_ltl(rng, &atoms, 4)).collect();
    Ok(Game::Ltl(LtlGame::new(structure, labelling, goals)?))
}

fn mp(params: RandomParams, rng: &mut ChaCha8Rng) -> Result<Game, GenError> {
    let structure = random_structure(params, rng)?;
    let weights = WeightAssignment::new(
        (0..params.agents)
            .map(|_| (0..params.states).map(|_| rng.gen_range(-3..=3)).collect())
            .collect(),
    );
    Ok(Game::MeanPayoff(MpGame::new(structure, weights)?))
}

/// Random formula with at most `size` connectives over `atoms`.
pub fn random_ltl<R: Rng>(rng: &mut R, atoms: &[&str], size: usize) -> Ltl {
    if size == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0 => Ltl::True,
            1 => Ltl::False,
            _ => Ltl::atom(atoms.choose(rng).unwrap()),
        };
    }
    let rest = size - 1;
    match rng.gen_range(0..7) {
        0 => Ltl::not(random_ltl(rng, atoms, rest)),
        1 => Ltl::next(random_ltl(rng, atoms, rest)),
        2 => Ltl::eventually(random_ltl(rng, atoms, rest)),
        3 => Ltl::always(random_ltl(rng, atoms, rest)),
        k => {
            let left = rng.gen_range(0..=rest);
            let a = random_ltl(rng, atoms, left);
            let b = random_ltl(rng, atoms, rest - left);
            match k {
                4 => Ltl::and(a, b),
                5 => Ltl::or(a, b),
                _ => Ltl::until(a, b),
            }
        }
    }
}

/// Random threshold game: `nodes` nodes with 1-2 successors each, weights in
/// `-2..=2` over `k` coordinates, thresholds in halves within `-1..=1`.
pub fn random_multi_mp(nodes: usize, k: usize, seed: u64) -> Result<MultiMpGame, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes = nodes.max(1);
    let mut g = WeightedGraph::new(nodes, 0);
    for v in 0..nodes {
        let deg = rng.gen_range(1..=2);
        for _ in 0..deg {
            let t = rng.gen_range(0..nodes);
            let w = (0..k).map(|_| rng.gen_range(-2..=2)).collect();
            g.add_edge(v, t, w);
        }
    }
    let owner = (0..nodes)
        .map(|_| if rng.gen_bool(0.5) { Player::One } else { Player::Two })
        .collect();
    let threshold = (0..k).map(|_| Rational::new(rng.gen_range(-2..=2), 2)).collect();
    Ok(MultiMpGame::new(g, owner, threshold)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::is_one_shot;

    #[test]
    fn seeds_are_deterministic() {
        let p = RandomParams::new(3, 4, 2).unwrap();
        for fam in [Family::SinkLtl, Family::GeneralLtl, Family::Mp] {
            assert_eq!(random_game(fam, p, 7).unwrap(), random_game(fam, p, 7).unwrap());
        }
        assert_eq!(random_multi_mp(4, 2, 3).unwrap(), random_multi_mp(4, 2, 3).unwrap());
    }

    #[test]
    fn sink_family_is_one_shot() {
        let p = RandomParams::new(2, 5, 2).unwrap();
        for seed in 0..20 {
            let g = random_game(Family::SinkLtl, p, seed).unwrap();
            assert!(is_one_shot(g.structure()));
            assert_eq!(g.structure().profile_count(StateId(0)), 4);
        }
    }

    #[test]
    fn params_are_bounded() {
        assert!(RandomParams::new(5, 2, 2).is_err());
        assert!(RandomParams::new(2, 7, 2).is_err());
        assert!(RandomParams::new(2, 2, 4).is_err());
    }
}
