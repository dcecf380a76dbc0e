//! The worked example games, with named reference profiles.

use crate::game::{
    ActionId, AgentId, CgsBuilder, Coalition, Game, Labelling, LtlGame, MpGame, StateId, WeightAssignment,
};
use crate::ltl::parse_ltl;
use crate::strategy::StrategyProfile;

use super::GenError;

pub const EXAMPLE_NAMES: [&str; 5] = [
    "coordination",
    "heads-tails",
    "non-credible",
    "empty-strong-core-4p",
    "mp-empty-core-3p",
];

/// A built example and its reference profiles.
#[derive(Debug, Clone)]
pub struct Example {
    pub name: &'static str,
    pub game: Game,
    pub profiles: Vec<(String, StrategyProfile)>,
}

impl Example {
    pub fn profile(&self, name: &str) -> Option<&StrategyProfile> {
        self.profiles.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }
}

pub fn build_example(name: &str) -> Result<Example, GenError> {
    match name {
        "coordination" => coordination(),
        "heads-tails" => heads_tails(),
        "non-credible" => non_credible(),
        "empty-strong-core-4p" => empty_strong_core(),
        "mp-empty-core-3p" => mp_empty_core(),
        other => Err(GenError::UnknownExample(other.to_string())),
    }
}

fn goals(texts: &[&str]) -> Result<Vec<crate::ltl::Ltl>, GenError> {
    texts
        .iter()
        .map(|t| parse_ltl(t).map_err(|e| GenError::Internal(e.to_string())))
        .collect()
}

/// Same action at every state where it is available (the first available
/// action elsewhere), for every agent.
fn constant_profile(
    structure: &crate::game::ConcurrentGameStructure,
    actions: &[ActionId],
) -> Result<StrategyProfile, GenError> {
    let maps = actions
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            structure
                .states()
                .map(|s| {
                    let avail = structure.available(AgentId(i), s);
                    if avail.contains(&a) {
                        a
                    } else {
                        avail[0]
                    }
                })
                .collect()
        })
        .collect();
    Ok(StrategyProfile::memoryless(structure, maps)?)
}

/// Player 1 sets `p`, player 2 sets `q`; the next state is the chosen
/// valuation. Both want `G (p & q)`.
fn coordination() -> Result<Example, GenError> {
    let mut b = CgsBuilder::new(2);
    let names = ["s_pq", "s_p", "s_q", "s_none"];
    let states: Vec<StateId> = names.iter().map(|n| b.state(n)).collect();
    let pt = b.action(AgentId(0), "pt");
    let pf = b.action(AgentId(0), "pf");
    let qt = b.action(AgentId(1), "qt");
    let qf = b.action(AgentId(1), "qf");
    b.uniform(AgentId(0), &[pt, pf]).uniform(AgentId(1), &[qt, qf]);
    b.initial(states[0]);
    for &s in &states {
        b.transitions_from(s, |p| match (p[0] == pt, p[1] == qt) {
            (true, true) => states[0],
            (true, false) => states[1],
            (false, true) => states[2],
            (false, false) => states[3],
        });
    }
    let structure = b.build()?;
    let labelling = Labelling::from_sets(&[vec!["p", "q"], vec!["p"], vec!["q"], vec![]])?;
    let game = LtlGame::new(structure, labelling, goals(&["G (p & q)", "G (p & q)"])?)?;
    let profiles = vec![
        ("all-false".to_string(), constant_profile(&game.structure, &[pf, qf])?),
        ("all-true".to_string(), constant_profile(&game.structure, &[pt, qt])?),
    ];
    Ok(Example {
        name: "coordination",
        game: Game::Ltl(game),
        profiles,
    })
}

/// Only player 1 moves: heads to `up`, tails to `down`, both sinks.
fn heads_tails() -> Result<Example, GenError> {
    let mut b = CgsBuilder::new(3);
    let start = b.state("start");
    let up = b.state("up");
    let down = b.state("down");
    let heads = b.action(AgentId(0), "heads");
    let tails = b.action(AgentId(0), "tails");
    b.uniform(AgentId(0), &[heads, tails]);
    for a in [AgentId(1), AgentId(2)] {
        let w = b.action(a, "wait");
        b.uniform(a, &[w]);
    }
    b.initial(start);
    b.transitions_from(start, |p| if p[0] == heads { up } else { down });
    b.terminal(up).terminal(down);
    let structure = b.build()?;
    let labelling = Labelling::from_sets(&[vec![], vec!["p"], vec!["q"]])?;
    let game = LtlGame::new(structure, labelling, goals(&["true", "X G p", "X G q"])?)?;
    let w = ActionId(0);
    let profiles = vec![
        ("heads".to_string(), constant_profile(&game.structure, &[heads, w, w])?),
        ("tails".to_string(), constant_profile(&game.structure, &[tails, w, w])?),
    ];
    Ok(Example {
        name: "heads-tails",
        game: Game::Ltl(game),
        profiles,
    })
}

/// One round into three sinks; player 1 wants `s1`, player 2 wants `s2`.
fn non_credible() -> Result<Example, GenError> {
    let mut b = CgsBuilder::new(2);
    let s: Vec<StateId> = (0..4).map(|i| b.state(&format!("s{i}"))).collect();
    let mut acts = Vec::new();
    for a in [AgentId(0), AgentId(1)] {
        let x = b.action(a, "a");
        let y = b.action(a, "b");
        b.uniform(a, &[x, y]);
        acts.push((x, y));
    }
    let (a1, _) = acts[0];
    let (a2, _) = acts[1];
    b.initial(s[0]);
    b.transitions_from(s[0], |p| match (p[0] == a1, p[1] == a2) {
        (true, true) => s[1],
        (true, false) => s[2],
        (false, _) => s[3],
    });
    for &t in &s[1..] {
        b.terminal(t);
    }
    let structure = b.build()?;
    let labelling = Labelling::from_sets(&[vec![], vec!["s1"], vec!["s2"], vec!["s3"]])?;
    let game = LtlGame::new(structure, labelling, goals(&["X G s1", "X G s2"])?)?;
    let profiles = vec![("aa".to_string(), constant_profile(&game.structure, &[a1, a2])?)];
    Ok(Example {
        name: "non-credible",
        game: Game::Ltl(game),
        profiles,
    })
}

/// `tau(s0, profile)` for the four-player game, profiles written as bit
/// strings with player 1 first.
pub const EMPTY_STRONG_CORE_TABLE: [(&str, usize); 16] = [
    ("0000", 1),
    ("0001", 1),
    ("0010", 2),
    ("0011", 2),
    ("0100", 1),
    ("0101", 3),
    ("0110", 2),
    ("0111", 5),
    ("1000", 6),
    ("1001", 4),
    ("1010", 4),
    ("1011", 4),
    ("1100", 1),
    ("1101", 3),
    ("1110", 4),
    ("1111", 3),
];

/// One expected row of the strong-core emptiness table: the profile, its
/// winners and a strong beneficial deviation `(agent, action bit)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongCoreTableRow {
    pub profile: &'static str,
    pub winners: Coalition,
    pub deviation: Vec<(AgentId, usize)>,
}

fn row(profile: &'static str, winners: &[usize], deviation: &[(usize, usize)]) -> StrongCoreTableRow {
    StrongCoreTableRow {
        profile,
        winners: Coalition::from_agents(winners.iter().map(|&i| AgentId(i - 1))),
        deviation: deviation.iter().map(|&(i, a)| (AgentId(i - 1), a)).collect(),
    }
}

pub fn empty_strong_core_rows() -> Vec<StrongCoreTableRow> {
    vec![
        row("0000", &[1, 2], &[(3, 1)]),
        row("0001", &[1, 2], &[(3, 1)]),
        row("0010", &[1, 3], &[(2, 1), (4, 1)]),
        row("0011", &[1, 3], &[(2, 1), (4, 1)]),
        row("0100", &[1, 2], &[(3, 1)]),
        row("0101", &[1, 4], &[(2, 0)]),
        row("0110", &[1, 3], &[(2, 1), (4, 1)]),
        row("0111", &[2, 4], &[(1, 1)]),
        row("1000", &[3, 4], &[(1, 0)]),
        row("1001", &[2, 3], &[(1, 0)]),
        row("1010", &[2, 3], &[(1, 0)]),
        row("1011", &[2, 3], &[(1, 0)]),
        row("1100", &[1, 2], &[(3, 1)]),
        row("1101", &[1, 4], &[(2, 0)]),
        row("1110", &[2, 3], &[(1, 0)]),
        row("1111", &[1, 4], &[(2, 0)]),
    ]
}

fn empty_strong_core() -> Result<Example, GenError> {
    let mut b = CgsBuilder::new(4);
    let s: Vec<StateId> = (0..7).map(|i| b.state(&format!("s{i}"))).collect();
    for i in 0..4 {
        let zero = b.action(AgentId(i), "0");
        let one = b.action(AgentId(i), "1");
        b.uniform(AgentId(i), &[zero, one]);
    }
    b.initial(s[0]);
    b.transitions_from(s[0], |p| {
        let bits: String = p.iter().map(|a| if a.0 == 0 { '0' } else { '1' }).collect();
        let (_, t) = EMPTY_STRONG_CORE_TABLE
            .iter()
            .find(|(k, _)| *k == bits)
            .expect("complete table");
        s[*t]
    });
    for &t in &s[1..] {
        b.terminal(t);
    }
    let structure = b.build()?;
    let mut sets: Vec<Vec<String>> = vec![vec![]];
    sets.extend((1..7).map(|i| vec![format!("s{i}")]));
    let labelling = Labelling::from_sets(&sets)?;
    let game = LtlGame::new(
        structure,
        labelling,
        goals(&["X (s1 | s2 | s3)", "X (s1 | s4 | s5)", "X (s2 | s4 | s6)", "X (s3 | s5 | s6)"])?,
    )?;
    let profiles = EMPTY_STRONG_CORE_TABLE
        .iter()
        .map(|(bits, _)| {
            let acts: Vec<ActionId> = bits.chars().map(|c| ActionId((c == '1') as usize)).collect();
            Ok((bits.to_string(), constant_profile(&game.structure, &acts)?))
        })
        .collect::<Result<_, GenError>>()?;
    Ok(Example {
        name: "empty-strong-core-4p",
        game: Game::Ltl(game),
        profiles,
    })
}

/// Three players leave `P` for one of the sinks `R`, `B`, `Y`.
fn mp_empty_core() -> Result<Example, GenError> {
    let mut b = CgsBuilder::new(3);
    let p = b.state("P");
    let r = b.state("R");
    let bl = b.state("B");
    let y = b.state("Y");
    for i in 0..3 {
        let h = b.action(AgentId(i), "heads");
        let t = b.action(AgentId(i), "tails");
        b.uniform(AgentId(i), &[h, t]);
    }
    b.initial(p);
    b.transitions_from(p, |a| {
        let h: Vec<bool> = a.iter().map(|x| x.0 == 0).collect();
        match (h[0], h[1], h[2]) {
            (true, true, _) => r,
            (true, false, true) => bl,
            (true, false, false) => p,
            (false, true, true) => p,
            (false, true, false) => y,
            (false, false, true) => bl,
            (false, false, false) => y,
        }
    });
    b.terminal(r).terminal(bl).terminal(y);
    let structure = b.build()?;
    let weights = WeightAssignment::new(vec![vec![-1, 2, 0, 1], vec![-1, 1, 2, 0], vec![-1, 0, 1, 2]]);
    let game = MpGame::new(structure, weights)?;
    let heads = ActionId(0);
    let tails = ActionId(1);
    let profiles = vec![
        ("stay-R".to_string(), constant_profile(&game.structure, &[heads, heads, heads])?),
        ("stay-B".to_string(), constant_profile(&game.structure, &[heads, tails, heads])?),
        ("stay-Y".to_string(), constant_profile(&game.structure, &[tails, heads, tails])?),
        ("stay-P".to_string(), constant_profile(&game.structure, &[heads, tails, tails])?),
    ];
    Ok(Example {
        name: "mp-empty-core-3p",
        game: Game::MeanPayoff(game),
        profiles,
    })
}
