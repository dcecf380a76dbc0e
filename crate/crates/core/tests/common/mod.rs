//! Brute-force oracles shared by the integration tests. Each one is a
//! direct transcription of a definition, kept independent of the solvers.

#![allow(dead_code)]

use std::collections::HashMap;

use coopverif_core::game::{ActionId, AgentId, Coalition, ConcurrentGameStructure, Labelling, LtlGame, MpGame, StateId};
use coopverif_core::lasso::Lasso;
use coopverif_core::ltl::Ltl;
use coopverif_core::mp::{MultiMpGame, Player, Rational};
use coopverif_core::strategy::{JointStrategy, MemorylessSpace, StrategyProfile};

/// LTL on a lasso by explicit unrolling: `X` steps one position, `U`
/// searches forward far enough to cover one full loop past the stem.
pub fn oracle_eval(f: &Ltl, lasso: &Lasso, lab: &Labelling) -> bool {
    let mut memo = HashMap::new();
    holds(f, 0, lasso, lab, &mut memo)
}

fn norm(i: usize, l: &Lasso) -> usize {
    let (s, c) = (l.stem.len(), l.cycle.len());
    if i < s {
        i
    } else {
        s + (i - s) % c
    }
}

fn holds(f: &Ltl, i: usize, l: &Lasso, lab: &Labelling, memo: &mut HashMap<(*const Ltl, usize), bool>) -> bool {
    let i = norm(i, l);
    let key = (f as *const Ltl, i);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let v = match f {
        Ltl::True => true,
        Ltl::False => false,
        Ltl::Atom(p) => lab.names_at(l.at(i)).contains(&p.as_str()),
        Ltl::Not(a) => !holds(a, i, l, lab, memo),
        Ltl::And(a, b) => holds(a, i, l, lab, memo) && holds(b, i, l, lab, memo),
        Ltl::Or(a, b) => holds(a, i, l, lab, memo) || holds(b, i, l, lab, memo),
        Ltl::Next(a) => holds(a, i + 1, l, lab, memo),
        Ltl::Until(a, b) => {
            let horizon = i.max(l.stem.len()) + l.cycle.len();
            let mut result = false;
            for j in i..=horizon {
                if holds(b, j, l, lab, memo) {
                    result = true;
                    break;
                }
                if !holds(a, j, l, lab, memo) {
                    break;
                }
            }
            result
        }
    };
    memo.insert(key, v);
    v
}

/// Winners on the one-round run `s0 (t)^w`.
pub fn sink_winners(game: &LtlGame, t: StateId) -> Coalition {
    let m = &game.structure;
    let lasso = Lasso::new(vec![m.initial()], vec![t]).unwrap();
    Coalition::from_agents(m.agents().filter(|&a| oracle_eval(game.goal(a), &lasso, &game.labelling)))
}

/// All action profiles at `s`.
pub fn profiles_at(m: &ConcurrentGameStructure, s: StateId) -> Vec<Vec<ActionId>> {
    m.profiles(s).collect()
}

/// `a_C` merged with `a_{-C}` into a full profile.
pub fn merge(c: Coalition, ac: &[ActionId], rest: &[ActionId]) -> Vec<ActionId> {
    let mut p = rest.to_vec();
    for (k, a) in c.members().enumerate() {
        p[a.0] = ac[k];
    }
    p
}

/// Joint actions of `c` at `s`.
pub fn coalition_actions(m: &ConcurrentGameStructure, c: Coalition, s: StateId) -> Vec<Vec<ActionId>> {
    let mut out = vec![vec![]];
    for a in c.members() {
        out = out
            .into_iter()
            .flat_map(|v| {
                m.available(a, s).iter().map(move |&x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn initial_profile(m: &ConcurrentGameStructure, p: &StrategyProfile) -> Vec<ActionId> {
    m.agents().map(|a| p.get(a).output(p.get(a).initial(), m.initial())).collect()
}

/// One-shot fulfilment: some joint first move of `c` makes all of `c` win
/// whatever the others do.
pub fn one_shot_fulfilled(game: &LtlGame, c: Coalition) -> bool {
    let m = &game.structure;
    let s0 = m.initial();
    coalition_actions(m, c, s0).iter().any(|ac| {
        profiles_at(m, s0).iter().all(|rest| {
            let t = m.successor(s0, &merge(c, ac, rest)).unwrap();
            c.is_subset_of(sink_winners(game, t))
        })
    })
}

/// One-shot core: no nonempty coalition of losers is fulfilled.
pub fn one_shot_in_core(game: &LtlGame, p: &StrategyProfile) -> bool {
    let m = &game.structure;
    let t = m.successor(m.initial(), &initial_profile(m, p)).unwrap();
    let losers = sink_winners(game, t).complement(m.agent_count());
    !losers.nonempty_subsets().into_iter().any(|c| one_shot_fulfilled(game, c))
}

/// One-shot strong deviation of `c` to first move `ac`: all of `c` lose now,
/// all of `c` win after the move, and no response keeps every current
/// winner winning while some member of `c` loses.
pub fn one_shot_strong_deviation(game: &LtlGame, p: &StrategyProfile, c: Coalition, ac: &[ActionId]) -> bool {
    let m = &game.structure;
    let s0 = m.initial();
    let a0 = initial_profile(m, p);
    let w0 = sink_winners(game, m.successor(s0, &a0).unwrap());
    if c.is_empty() || !c.intersection(w0).is_empty() {
        return false;
    }
    let after = sink_winners(game, m.successor(s0, &merge(c, ac, &a0)).unwrap());
    if !c.is_subset_of(after) {
        return false;
    }
    !profiles_at(m, s0).iter().any(|rest| {
        let w = sink_winners(game, m.successor(s0, &merge(c, ac, rest)).unwrap());
        w0.is_subset_of(w) && !c.is_subset_of(w)
    })
}

pub fn one_shot_in_strong_core(game: &LtlGame, p: &StrategyProfile) -> bool {
    let m = &game.structure;
    let all = m.grand_coalition();
    !all.nonempty_subsets().into_iter().any(|c| {
        coalition_actions(m, c, m.initial())
            .iter()
            .any(|ac| one_shot_strong_deviation(game, p, c, ac))
    })
}

/// Mean of weights around the loop of a lasso, computed from scratch.
pub fn loop_mean(game: &MpGame, l: &Lasso) -> Vec<Rational> {
    let n = l.cycle.len() as i64;
    game.structure
        .agents()
        .map(|a| {
            let sum: i64 = l.cycle.iter().map(|&s| game.weights.weight(a, s)).sum();
            Rational::new(sum, n)
        })
        .collect()
}

/// Memoryless profile simulated step by step until a state repeats.
pub fn simulate_memoryless(m: &ConcurrentGameStructure, maps: &[Vec<ActionId>]) -> Lasso {
    let mut seen: HashMap<StateId, usize> = HashMap::new();
    let mut path = Vec::new();
    let mut s = m.initial();
    while !seen.contains_key(&s) {
        seen.insert(s, path.len());
        path.push(s);
        let p: Vec<ActionId> = maps.iter().map(|mp| mp[s.0]).collect();
        s = m.successor(s, &p).unwrap();
    }
    let k = seen[&s];
    Lasso::new(path[..k].to_vec(), path[k..].to_vec()).unwrap()
}

pub fn memoryless_maps(p: &StrategyProfile) -> Vec<Vec<ActionId>> {
    p.memoryless_maps().expect("memoryless profile")
}

/// Memoryless deviation of `dev.coalition` beats the profile against every
/// memoryless response of the others.
pub fn mp_dev_beats_memoryless(game: &MpGame, p: &StrategyProfile, dev: &JointStrategy) -> bool {
    let m = &game.structure;
    let base = loop_mean(game, &simulate_memoryless(m, &memoryless_maps(p)));
    let c = dev.coalition;
    let others = c.complement(m.agent_count());
    let devd = p.with_deviation(dev);
    MemorylessSpace::new(m, others).iter().all(|resp| {
        let maps = memoryless_maps(&devd.with_deviation(&resp));
        let pay = loop_mean(game, &simulate_memoryless(m, &maps));
        c.members().all(|a| pay[a.0] > base[a.0])
    })
}

/// Memoryless core by brute force over coalitions, deviations and responses.
pub fn mp_in_core_memoryless(game: &MpGame, p: &StrategyProfile) -> bool {
    let m = &game.structure;
    !m.grand_coalition()
        .nonempty_subsets()
        .into_iter()
        .any(|c| MemorylessSpace::new(m, c).iter().any(|dev| mp_dev_beats_memoryless(game, p, &dev)))
}

/// Threshold game by enumerating both players' memoryless maps: player 1
/// wins iff some map of theirs beats every map of player 2.
pub fn threshold_double_memoryless(g: &MultiMpGame, strict: bool) -> bool {
    let n = g.graph.node_count();
    let out: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..g.graph.edge_count()).filter(|&e| g.graph.edges()[e].from == v).collect())
        .collect();
    let maps = |who: Player| -> Vec<Vec<usize>> {
        let mut all = vec![vec![0usize; n]];
        for v in 0..n {
            if g.owner[v] != who {
                continue;
            }
            all = all
                .into_iter()
                .flat_map(|m| {
                    (0..out[v].len()).map(move |i| {
                        let mut m2 = m.clone();
                        m2[v] = i;
                        m2
                    })
                })
                .collect();
        }
        all
    };
    let p1 = maps(Player::One);
    let p2 = maps(Player::Two);
    p1.iter().any(|m1| {
        p2.iter().all(|m2| {
            let pick = |v: usize| match g.owner[v] {
                Player::One => out[v][m1[v]],
                Player::Two => out[v][m2[v]],
            };
            let mut seen = vec![usize::MAX; n];
            let mut edges = Vec::new();
            let mut v = g.graph.root();
            while seen[v] == usize::MAX {
                seen[v] = edges.len();
                let e = pick(v);
                edges.push(e);
                v = g.graph.edges()[e].to;
            }
            let cyc = &edges[seen[v]..];
            (0..g.threshold.len()).all(|i| {
                let sum: i64 = cyc.iter().map(|&e| g.graph.edges()[e].weight[i]).sum();
                let mean = Rational::new(sum, cyc.len() as i64);
                if strict {
                    mean > g.threshold[i]
                } else {
                    mean >= g.threshold[i]
                }
            })
        })
    })
}

/// Truth-table satisfiability.
pub fn brute_sat(vars: usize, clauses: &[Vec<i32>]) -> bool {
    (0..1u32 << vars).any(|bits| {
        clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let v = l.unsigned_abs() as usize - 1;
                let val = bits >> v & 1 == 1;
                if l > 0 {
                    val
                } else {
                    !val
                }
            })
        })
    })
}

pub fn agent(i: usize) -> AgentId {
    AgentId(i - 1)
}
