//! Bisimulation between labelled concurrent game structures.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::game::{AgentId, ConcurrentGameStructure, Labelling, StateId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BisimError {
    #[error("structures have {left} and {right} agents")]
    Agents { left: usize, right: usize },
    #[error("agent {agent} has different action sets")]
    Actions { agent: String },
    #[error("proposition alphabets differ")]
    Alphabet,
}

/// Pairs `(s, t)` of related states, `s` from the left structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisimRelation {
    pub pairs: BTreeSet<(StateId, StateId)>,
}

impl BisimRelation {
    pub fn contains(&self, s: StateId, t: StateId) -> bool {
        self.pairs.contains(&(s, t))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn check_compatible(
    m: &ConcurrentGameStructure,
    l: &Labelling,
    m2: &ConcurrentGameStructure,
    l2: &Labelling,
) -> Result<(), BisimError> {
    if m.agent_count() != m2.agent_count() {
        return Err(BisimError::Agents {
            left: m.agent_count(),
            right: m2.agent_count(),
        });
    }
    for a in m.agents() {
        if m.action_names(a) != m2.action_names(a) {
            return Err(BisimError::Actions { agent: a.to_string() });
        }
    }
    let p1: BTreeSet<&String> = l.props().iter().collect();
    let p2: BTreeSet<&String> = l2.props().iter().collect();
    if p1 != p2 {
        return Err(BisimError::Alphabet);
    }
    Ok(())
}

fn label_set<'a>(l: &'a Labelling, s: StateId) -> Vec<&'a str> {
    let mut v = l.names_at(s);
    v.sort_unstable();
    v
}

/// The coarsest bisimulation between the two structures, if it relates the
/// initial states.
///
/// Refines a partition of the disjoint union, first by label and action
/// availability, then by the block reached under each action profile.
pub fn bisimilar(
    m: &ConcurrentGameStructure,
    l: &Labelling,
    m2: &ConcurrentGameStructure,
    l2: &Labelling,
) -> Result<Option<BisimRelation>, BisimError> {
    check_compatible(m, l, m2, l2)?;
    let n1 = m.state_count();
    let total = n1 + m2.state_count();
    let side = |v: usize| if v < n1 { (m, l, StateId(v)) } else { (m2, l2, StateId(v - n1)) };

    let mut block = vec![0usize; total];
    {
        let mut ids: HashMap<(Vec<&str>, Vec<&[crate::game::ActionId]>), usize> = HashMap::new();
        for (v, b) in block.iter_mut().enumerate() {
            let (mm, ll, s) = side(v);
            let avail: Vec<_> = mm.agents().map(|a: AgentId| mm.available(a, s)).collect();
            let next = ids.len();
            *b = *ids.entry((label_set(ll, s), avail)).or_insert(next);
        }
    }
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut refined = vec![0usize; total];
        for (v, r) in refined.iter_mut().enumerate() {
            let (mm, _, s) = side(v);
            let offset = if v < n1 { 0 } else { n1 };
            let sig: Vec<usize> = (0..mm.profile_count(s))
                .map(|i| block[offset + mm.successor_by_index(s, i).0])
                .collect();
            let next = ids.len();
            *r = *ids.entry((block[v], sig)).or_insert(next);
        }
        let stable = ids.len() == block.iter().collect::<BTreeSet<_>>().len();
        block = refined;
        if stable {
            break;
        }
    }
    if block[m.initial().0] != block[n1 + m2.initial().0] {
        return Ok(None);
    }
    let mut pairs = BTreeSet::new();
    for s in 0..n1 {
        for t in 0..m2.state_count() {
            if block[s] == block[n1 + t] {
                pairs.insert((StateId(s), StateId(t)));
            }
        }
    }
    Ok(Some(BisimRelation { pairs }))
}

/// Checks the defining conditions pair by pair: the initial pair is
/// related, related states agree on labels, and every profile available on
/// one side is available on the other with related successors.
pub fn verify_bisimulation(
    m: &ConcurrentGameStructure,
    l: &Labelling,
    m2: &ConcurrentGameStructure,
    l2: &Labelling,
    rel: &BisimRelation,
) -> bool {
    if check_compatible(m, l, m2, l2).is_err() || !rel.contains(m.initial(), m2.initial()) {
        return false;
    }
    rel.pairs.iter().all(|&(s, t)| {
        if label_set(l, s) != label_set(l2, t) {
            return false;
        }
        let forth = m.profiles(s).all(|p| match m2.successor(t, &p) {
            Ok(t2) => rel.contains(m.successor(s, &p).unwrap(), t2),
            Err(_) => false,
        });
        let back = m2.profiles(t).all(|p| match m.successor(s, &p) {
            Ok(s2) => rel.contains(s2, m2.successor(t, &p).unwrap()),
            Err(_) => false,
        });
        forth && back
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::CgsBuilder;

    fn flip() -> (ConcurrentGameStructure, Labelling) {
        let mut b = CgsBuilder::new(1);
        let s0 = b.state("s0");
        let s1 = b.state("s1");
        let x = b.action(AgentId(0), "x");
        let y = b.action(AgentId(0), "y");
        b.uniform(AgentId(0), &[x, y]).initial(s0);
        b.transitions_from(s0, |p| if p[0] == x { s0 } else { s1 });
        b.transitions_from(s1, |_| s0);
        let l = Labelling::from_sets(&[vec!["p"], vec![]]).unwrap();
        (b.build().unwrap(), l)
    }

    #[test]
    fn self_bisimilar_with_identity() {
        let (m, l) = flip();
        let r = bisimilar(&m, &l, &m, &l).unwrap().unwrap();
        assert!(r.contains(StateId(0), StateId(0)));
        assert!(r.contains(StateId(1), StateId(1)));
        assert!(verify_bisimulation(&m, &l, &m, &l, &r));
    }

    #[test]
    fn label_change_breaks_it() {
        let (m, l) = flip();
        let l2 = Labelling::from_sets(&[vec!["p"], vec!["p"]]).unwrap();
        assert_eq!(bisimilar(&m, &l, &m, &l2).unwrap(), None);
    }

    #[test]
    fn bogus_relation_rejected() {
        let (m, l) = flip();
        let mut pairs = BTreeSet::new();
        pairs.insert((StateId(0), StateId(0)));
        assert!(!verify_bisimulation(&m, &l, &m, &l, &BisimRelation { pairs }));
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let (m, l) = flip();
        let l2 = Labelling::from_sets(&[vec!["q"], vec![]]).unwrap();
        assert_eq!(bisimilar(&m, &l, &m, &l2), Err(BisimError::Alphabet));
    }
}
