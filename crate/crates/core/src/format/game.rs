//! Line-oriented game files.
//!
//! ```text
//! game ltl|mp
//! agents <n>
//! states s0 s1 ...
//! init s0
//! actions <agent> @ <state>|* : a b ...
//! props p q ...                    # optional extra alphabet
//! label <state> : p q ...
//! weight <agent> <state> : <int>
//! trans <state> (a1,...,an) -> <state>
//! trans <state> * -> <state>       # every profile
//! goal <agent> : <LTL formula>
//! ```
//!
//! Agents are numbered from 1; `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::game::{
    ActionId, AgentId, CgsBuilder, ConcurrentGameStructure, Game, Labelling, LtlGame, MpGame, StateId,
    WeightAssignment,
};
use crate::ltl::{parse_ltl, Ltl};

use super::{FormatError, Lines};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flavour {
    Ltl,
    Mp,
}

/// Parses a game file. Malformed lines and unknown names are syntax errors;
/// violated game invariants are reported as [`FormatError::Invalid`].
pub fn parse_game(text: &str) -> Result<Game, FormatError> {
    let mut flavour = None;
    let mut builder: Option<CgsBuilder> = None;
    let mut state_names: Vec<String> = Vec::new();
    let mut props: Vec<String> = Vec::new();
    let mut labels: Vec<(usize, StateId, Vec<String>)> = Vec::new();
    let mut weights: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    let mut goals: BTreeMap<usize, (usize, Ltl)> = BTreeMap::new();

    for (line_no, line) in Lines::new(text) {
        let err = |msg: String| FormatError::syntax(line_no, msg);
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match head {
            "game" => {
                flavour = Some(match rest {
                    "ltl" => Flavour::Ltl,
                    "mp" => Flavour::Mp,
                    other => return Err(err(format!("unknown game flavour `{other}`"))),
                });
            }
            "agents" => {
                let n: usize = rest.parse().map_err(|_| err(format!("bad agent count `{rest}`")))?;
                if n == 0 {
                    return Err(FormatError::Invalid(crate::error::GameError::NoAgents));
                }
                if n > crate::game::Coalition::MAX_AGENTS {
                    return Err(FormatError::Invalid(crate::error::GameError::TooManyAgents(n)));
                }
                builder = Some(CgsBuilder::new(n));
            }
            "states" => {
                let b = builder.as_mut().ok_or_else(|| err("`states` before `agents`".into()))?;
                for name in rest.split_whitespace() {
                    if state_names.iter().any(|s| s == name) {
                        return Err(err(format!("state `{name}` declared twice")));
                    }
                    b.state(name);
                    state_names.push(name.to_string());
                }
            }
            "init" => {
                let b = builder.as_mut().ok_or_else(|| err("`init` before `agents`".into()))?;
                let s = b.find_state(rest).ok_or_else(|| err(format!("unknown state `{rest}`")))?;
                b.initial(s);
            }
            "actions" => {
                let b = builder.as_mut().ok_or_else(|| err("`actions` before `agents`".into()))?;
                let (lhs, names) = rest.split_once(':').ok_or_else(|| err("expected `:`".into()))?;
                let (agent, at) = lhs.split_once('@').ok_or_else(|| err("expected `@`".into()))?;
                let agent = agent_index(agent.trim(), b.agent_count()).map_err(&err)?;
                let acts: Vec<ActionId> = names.split_whitespace().map(|a| b.action(agent, a)).collect();
                if acts.is_empty() {
                    return Err(err("empty action list".into()));
                }
                match at.trim() {
                    "*" => {
                        b.uniform(agent, &acts);
                    }
                    s => {
                        let s = b.find_state(s).ok_or_else(|| err(format!("unknown state `{s}`")))?;
                        b.available(agent, s, &acts);
                    }
                }
            }
            "props" => props.extend(rest.split_whitespace().map(str::to_string)),
            "label" => {
                let b = builder.as_ref().ok_or_else(|| err("`label` before `agents`".into()))?;
                let (s, ps) = rest.split_once(':').ok_or_else(|| err("expected `:`".into()))?;
                let s = b
                    .find_state(s.trim())
                    .ok_or_else(|| err(format!("unknown state `{}`", s.trim())))?;
                labels.push((line_no, s, ps.split_whitespace().map(str::to_string).collect()));
            }
            "weight" => {
                let b = builder.as_ref().ok_or_else(|| err("`weight` before `agents`".into()))?;
                let (lhs, w) = rest.split_once(':').ok_or_else(|| err("expected `:`".into()))?;
                let parts: Vec<&str> = lhs.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(err("expected `weight <agent> <state> : <int>`".into()));
                }
                let agent = agent_index(parts[0], b.agent_count()).map_err(&err)?;
                let s = b
                    .find_state(parts[1])
                    .ok_or_else(|| err(format!("unknown state `{}`", parts[1])))?;
                let w: i64 = w.trim().parse().map_err(|_| err(format!("bad weight `{}`", w.trim())))?;
                weights.insert((agent.0, s.0), w);
            }
            "trans" => {
                let b = builder.as_mut().ok_or_else(|| err("`trans` before `agents`".into()))?;
                let (lhs, to) = rest.split_once("->").ok_or_else(|| err("expected `->`".into()))?;
                let to = b
                    .find_state(to.trim())
                    .ok_or_else(|| err(format!("unknown state `{}`", to.trim())))?;
                let lhs = lhs.trim();
                let (from, profile) = match lhs.find(['(', '*']) {
                    Some(i) => (lhs[..i].trim(), lhs[i..].trim()),
                    None => return Err(err("expected a profile `(a,...)` or `*`".into())),
                };
                let from = b
                    .find_state(from)
                    .ok_or_else(|| err(format!("unknown state `{from}`")))?;
                if profile == "*" {
                    b.transitions_from(from, |_| to);
                } else {
                    let inner = profile
                        .strip_prefix('(')
                        .and_then(|p| p.strip_suffix(')'))
                        .ok_or_else(|| err(format!("malformed profile `{profile}`")))?;
                    let names: Vec<&str> = inner.split(',').map(str::trim).collect();
                    if names.len() != b.agent_count() {
                        return Err(err(format!(
                            "profile has {} actions, expected {}",
                            names.len(),
                            b.agent_count()
                        )));
                    }
                    let mut acts = Vec::with_capacity(names.len());
                    for (i, n) in names.iter().enumerate() {
                        acts.push(
                            b.find_action(AgentId(i), n)
                                .ok_or_else(|| err(format!("unknown action `{n}` of agent {}", i + 1)))?,
                        );
                    }
                    b.transition(from, acts, to);
                }
            }
            "goal" => {
                let b = builder.as_ref().ok_or_else(|| err("`goal` before `agents`".into()))?;
                let (agent, f) = rest.split_once(':').ok_or_else(|| err("expected `:`".into()))?;
                let agent = agent_index(agent.trim(), b.agent_count()).map_err(&err)?;
                let f = parse_ltl(f.trim()).map_err(|e| err(e.to_string()))?;
                if goals.insert(agent.0, (line_no, f)).is_some() {
                    return Err(err(format!("second goal for agent {}", agent.0 + 1)));
                }
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }

    let flavour = flavour.ok_or_else(|| FormatError::syntax(0, "missing `game ltl|mp` line".into()))?;
    let b = builder.ok_or_else(|| FormatError::syntax(0, "missing `agents` line".into()))?;
    let structure = b.build()?;
    match flavour {
        Flavour::Ltl => {
            if !weights.is_empty() {
                return Err(FormatError::syntax(0, "`weight` lines in an ltl game".into()));
            }
            let mut alphabet = props;
            for (_, _, ps) in &labels {
                for p in ps {
                    if !alphabet.contains(p) {
                        alphabet.push(p.clone());
                    }
                }
            }
            let mut labelling = Labelling::new(alphabet, structure.state_count())?;
            for (_, s, ps) in &labels {
                for p in ps {
                    labelling.add(*s, p)?;
                }
            }
            let goals: Vec<Ltl> = goals.into_values().map(|(_, f)| f).collect();
            Ok(Game::Ltl(LtlGame::new(structure, labelling, goals)?))
        }
        Flavour::Mp => {
            if !labels.is_empty() || !goals.is_empty() {
                return Err(FormatError::syntax(0, "`label`/`goal` lines in an mp game".into()));
            }
            let n = structure.agent_count();
            let mut table = vec![vec![0i64; structure.state_count()]; n];
            for a in 0..n {
                for s in 0..structure.state_count() {
                    match weights.get(&(a, s)) {
                        Some(&w) => table[a][s] = w,
                        None => {
                            return Err(FormatError::Invalid(crate::error::GameError::MissingWeight {
                                agent: AgentId(a).to_string(),
                            }))
                        }
                    }
                }
            }
            Ok(Game::MeanPayoff(MpGame::new(structure, WeightAssignment::new(table))?))
        }
    }
}

pub(crate) fn agent_index(text: &str, agents: usize) -> Result<AgentId, String> {
    match text.parse::<usize>() {
        Ok(i) if (1..=agents).contains(&i) => Ok(AgentId(i - 1)),
        _ => Err(format!("bad agent `{text}` (expected 1..{agents})")),
    }
}

fn print_structure(out: &mut String, m: &ConcurrentGameStructure) {
    writeln!(out, "agents {}", m.agent_count()).unwrap();
    writeln!(out, "states {}", m.state_names().join(" ")).unwrap();
    writeln!(out, "init {}", m.state_name(m.initial())).unwrap();
    for a in m.agents() {
        let all: Vec<ActionId> = (0..m.action_names(a).len()).map(ActionId).collect();
        writeln!(out, "actions {} @ * : {}", a.0 + 1, m.action_names(a).join(" ")).unwrap();
        for s in m.states() {
            if m.available(a, s) != all.as_slice() {
                let names: Vec<&str> = m.available(a, s).iter().map(|&x| m.action_name(a, x)).collect();
                writeln!(out, "actions {} @ {} : {}", a.0 + 1, m.state_name(s), names.join(" ")).unwrap();
            }
        }
    }
    for s in m.states() {
        let targets: Vec<StateId> = m.profiles(s).map(|p| m.successor(s, &p).unwrap()).collect();
        if targets.iter().all(|&t| t == targets[0]) {
            writeln!(out, "trans {} * -> {}", m.state_name(s), m.state_name(targets[0])).unwrap();
            continue;
        }
        for (p, t) in m.profiles(s).zip(targets) {
            writeln!(out, "trans {} {} -> {}", m.state_name(s), m.format_profile(&p), m.state_name(t)).unwrap();
        }
    }
}

/// Prints a game so that [`parse_game`] reads it back unchanged.
pub fn print_game(game: &Game) -> String {
    let mut out = String::new();
    match game {
        Game::Ltl(g) => {
            out.push_str("game ltl\n");
            print_structure(&mut out, &g.structure);
            if !g.labelling.props().is_empty() {
                writeln!(out, "props {}", g.labelling.props().join(" ")).unwrap();
            }
            for s in g.structure.states() {
                let names = g.labelling.names_at(s);
                if !names.is_empty() {
                    writeln!(out, "label {} : {}", g.structure.state_name(s), names.join(" ")).unwrap();
                }
            }
            for (i, f) in g.goals.iter().enumerate() {
                writeln!(out, "goal {} : {f}", i + 1).unwrap();
            }
        }
        Game::MeanPayoff(g) => {
            out.push_str("game mp\n");
            print_structure(&mut out, &g.structure);
            for a in g.structure.agents() {
                for s in g.structure.states() {
                    writeln!(out, "weight {} {} : {}", a.0 + 1, g.structure.state_name(s), g.weights.weight(a, s)).unwrap();
                }
            }
        }
    }
    out
}
