//! Strategy files.
//!
//! ```text
//! strategy <agent>
//! memoryless
//! map <state>|* : <action>
//!
//! strategy <agent>
//! machine
//! mstates <n>
//! minit <q>
//! out <q> : <action>            # every game state
//! out <q> <state> : <action>    # one game state
//! next <q> <state>|* -> <q'>
//! ```
//!
//! Blocks concatenate. Unmapped states play the first available action;
//! `*` assigns only where the action is available; missing `next` entries
//! keep the machine state.

use std::fmt::Write as _;

use crate::game::{ActionId, AgentId, Coalition, ConcurrentGameStructure, StateId};
use crate::strategy::{JointStrategy, MachineStrategy, StrategyProfile};

use super::game::agent_index;
use super::{FormatError, Lines};

enum Body {
    Unset,
    Memoryless(Vec<Option<ActionId>>),
    Machine {
        states: Option<usize>,
        init: usize,
        out: Vec<(usize, Option<StateId>, ActionId)>,
        next: Vec<(usize, Option<StateId>, usize)>,
    },
}

struct Block {
    line: usize,
    agent: AgentId,
    body: Body,
}

fn finish(m: &ConcurrentGameStructure, b: Block) -> Result<(AgentId, MachineStrategy), FormatError> {
    let n = m.state_count();
    let default = |s: usize| m.available(b.agent, StateId(s))[0];
    let err = |msg: String| FormatError::syntax(b.line, msg);
    let machine = match b.body {
        Body::Unset => return Err(err("strategy block without `memoryless` or `machine`".into())),
        Body::Memoryless(map) => {
            MachineStrategy::memoryless((0..n).map(|s| map[s].unwrap_or_else(|| default(s))).collect())
        }
        Body::Machine { states, init, out, next } => {
            let q = states.ok_or_else(|| err("machine without `mstates`".into()))?;
            let mut outs: Vec<Vec<ActionId>> = (0..q).map(|_| (0..n).map(default).collect()).collect();
            let mut nexts: Vec<Vec<usize>> = (0..q).map(|i| vec![i; n]).collect();
            // Wildcards first so per-state lines override them.
            for pass_specific in [false, true] {
                for &(i, s, a) in &out {
                    if i >= q {
                        return Err(err(format!("machine state {i} out of range")));
                    }
                    match s {
                        None if !pass_specific => {
                            for st in m.states() {
                                if m.is_available(b.agent, st, a) {
                                    outs[i][st.0] = a;
                                }
                            }
                        }
                        Some(s) if pass_specific => outs[i][s.0] = a,
                        _ => {}
                    }
                }
                for &(i, s, t) in &next {
                    if i >= q || t >= q {
                        return Err(err(format!("machine state {} out of range", i.max(t))));
                    }
                    match s {
                        None if !pass_specific => nexts[i].iter_mut().for_each(|x| *x = t),
                        Some(s) if pass_specific => nexts[i][s.0] = t,
                        _ => {}
                    }
                }
            }
            MachineStrategy::new(init, nexts, outs).map_err(|e| match e {
                crate::error::GameError::InvalidMachine { reason, .. } => crate::error::GameError::InvalidMachine {
                    agent: b.agent.to_string(),
                    reason,
                },
                e => e,
            })?
        }
    };
    for q in 0..machine.state_count() {
        for s in m.states() {
            let a = machine.output(q, s);
            if !m.is_available(b.agent, s, a) {
                return Err(FormatError::Invalid(crate::error::GameError::UnavailableAction {
                    agent: b.agent.to_string(),
                    state: m.state_name(s).to_string(),
                    action: m.action_names(b.agent).get(a.0).cloned().unwrap_or_default(),
                }));
            }
        }
    }
    Ok((b.agent, machine))
}

fn state_or_star(m: &ConcurrentGameStructure, tok: &str) -> Result<Option<StateId>, String> {
    if tok == "*" {
        return Ok(None);
    }
    m.state_by_name(tok).map(Some).ok_or_else(|| format!("unknown state `{tok}`"))
}

/// Parses every strategy block in file order.
pub fn parse_strategies(
    text: &str,
    m: &ConcurrentGameStructure,
) -> Result<Vec<(AgentId, MachineStrategy)>, FormatError> {
    let mut done = Vec::new();
    let mut cur: Option<Block> = None;
    for (line_no, line) in Lines::new(text) {
        let err = |msg: String| FormatError::syntax(line_no, msg);
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        if head == "strategy" {
            if let Some(b) = cur.take() {
                done.push(finish(m, b)?);
            }
            let agent = agent_index(rest, m.agent_count()).map_err(&err)?;
            cur = Some(Block {
                line: line_no,
                agent,
                body: Body::Unset,
            });
            continue;
        }
        let b = cur.as_mut().ok_or_else(|| err(format!("`{head}` outside a strategy block")))?;
        let agent = b.agent;
        let action = |name: &str| {
            m.action_by_name(agent, name.trim())
                .ok_or_else(|| err(format!("unknown action `{}` of agent {}", name.trim(), agent.0 + 1)))
        };
        let number = |tok: &str| tok.trim().parse::<usize>().map_err(|_| err(format!("bad number `{tok}`")));
        match (head, &mut b.body) {
            ("memoryless", Body::Unset) => b.body = Body::Memoryless(vec![None; m.state_count()]),
            ("machine", Body::Unset) => {
                b.body = Body::Machine {
                    states: None,
                    init: 0,
                    out: Vec::new(),
                    next: Vec::new(),
                }
            }
            ("map", Body::Memoryless(map)) => {
                let (s, a) = rest.split_once(':').ok_or_else(|| err("expected `:`".into()))?;
                let a = action(a)?;
                match state_or_star(m, s.trim()).map_err(&err)? {
                    Some(s) => map[s.0] = Some(a),
                    None => {
                        for st in m.states() {
                            if map[st.0].is_none() && m.is_available(agent, st, a) {
                                map[st.0] = Some(a);
                            }
                        }
                    }
                }
            }
            ("mstates", Body::Machine { states, .. }) => *states = Some(number(rest)?),
            ("minit", Body::Machine { init, .. }) => *init = number(rest)?,
            ("out", Body::Machine { out, .. }) => {
                let (lhs, a) = rest.split_once(':').ok_or_else(|| err("expected `:`".into()))?;
                let parts: Vec<&str> = lhs.split_whitespace().collect();
                let (q, s) = match parts.as_slice() {
                    [q] => (number(q)?, None),
                    [q, s] => (number(q)?, state_or_star(m, s).map_err(&err)?),
                    _ => return Err(err("expected `out <q> [<state>] : <action>`".into())),
                };
                out.push((q, s, action(a)?));
            }
            ("next", Body::Machine { next, .. }) => {
                let (lhs, t) = rest.split_once("->").ok_or_else(|| err("expected `->`".into()))?;
                let parts: Vec<&str> = lhs.split_whitespace().collect();
                let [q, s] = parts.as_slice() else {
                    return Err(err("expected `next <q> <state> -> <q'>`".into()));
                };
                next.push((number(q)?, state_or_star(m, s).map_err(&err)?, number(t)?));
            }
            (other, _) => return Err(err(format!("unexpected `{other}` here"))),
        }
    }
    if let Some(b) = cur.take() {
        done.push(finish(m, b)?);
    }
    Ok(done)
}

/// A full profile: exactly one block per agent, in any order.
pub fn parse_profile(text: &str, m: &ConcurrentGameStructure) -> Result<StrategyProfile, FormatError> {
    let blocks = parse_strategies(text, m)?;
    let mut slots: Vec<Option<MachineStrategy>> = vec![None; m.agent_count()];
    for (a, s) in blocks {
        if slots[a.0].replace(s).is_some() {
            return Err(FormatError::syntax(0, format!("two strategies for agent {}", a.0 + 1)));
        }
    }
    let mut strategies = Vec::new();
    for (i, s) in slots.into_iter().enumerate() {
        strategies.push(s.ok_or_else(|| FormatError::syntax(0, format!("no strategy for agent {}", i + 1)))?);
    }
    Ok(StrategyProfile::new(m, strategies)?)
}

/// A coalition strategy: the agents with blocks form the coalition.
pub fn parse_joint(text: &str, m: &ConcurrentGameStructure) -> Result<JointStrategy, FormatError> {
    let mut blocks = parse_strategies(text, m)?;
    blocks.sort_by_key(|(a, _)| *a);
    if blocks.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(FormatError::syntax(0, "two strategies for one agent".into()));
    }
    let c = Coalition::from_agents(blocks.iter().map(|(a, _)| *a));
    Ok(JointStrategy::new(c, blocks.into_iter().map(|(_, s)| s).collect())?)
}

pub fn print_strategy(m: &ConcurrentGameStructure, agent: AgentId, s: &MachineStrategy) -> String {
    let mut out = String::new();
    writeln!(out, "strategy {}", agent.0 + 1).unwrap();
    if let Some(map) = s.as_memoryless() {
        out.push_str("memoryless\n");
        for st in m.states() {
            writeln!(out, "map {} : {}", m.state_name(st), m.action_name(agent, map[st.0])).unwrap();
        }
        return out;
    }
    out.push_str("machine\n");
    writeln!(out, "mstates {}", s.state_count()).unwrap();
    writeln!(out, "minit {}", s.initial()).unwrap();
    for q in 0..s.state_count() {
        for st in m.states() {
            writeln!(out, "out {q} {} : {}", m.state_name(st), m.action_name(agent, s.output(q, st))).unwrap();
        }
        for st in m.states() {
            writeln!(out, "next {q} {} -> {}", m.state_name(st), s.step(q, st)).unwrap();
        }
    }
    out
}

pub fn print_profile(m: &ConcurrentGameStructure, p: &StrategyProfile) -> String {
    m.agents().map(|a| print_strategy(m, a, p.get(a))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::build_example;

    #[test]
    fn reference_profiles_round_trip() {
        for name in crate::gen::EXAMPLE_NAMES {
            let ex = build_example(name).unwrap();
            let m = ex.game.structure();
            for (_, p) in &ex.profiles {
                assert_eq!(&parse_profile(&print_profile(m, p), m).unwrap(), p);
            }
        }
    }

    #[test]
    fn machine_blocks_and_wildcards() {
        let ex = build_example("non-credible").unwrap();
        let m = ex.game.structure();
        let text = "strategy 2\nmachine\nmstates 2\nminit 0\nout 0 : a\nout 1 : b\nnext 0 * -> 1\nnext 1 * -> 1\n";
        let j = parse_joint(text, m).unwrap();
        assert_eq!(j.coalition, Coalition::singleton(AgentId(1)));
        let s = &j.machines[0];
        assert_eq!(s.state_count(), 2);
        assert_eq!(s.output(1, StateId(0)), m.action_by_name(AgentId(1), "b").unwrap());
        let back = parse_strategies(&print_strategy(m, AgentId(1), s), m).unwrap();
        assert_eq!(&back[0].1, s);
    }

    #[test]
    fn errors() {
        let ex = build_example("non-credible").unwrap();
        let m = ex.game.structure();
        assert!(matches!(
            parse_strategies("strategy 1\nmemoryless\nmap s0 : zzz\n", m),
            Err(FormatError::Syntax { line: 3, .. })
        ));
        assert!(matches!(parse_strategies("strategy 9\n", m), Err(FormatError::Syntax { line: 1, .. })));
        assert!(parse_profile("strategy 1\nmemoryless\n", m).is_err());
    }
}
