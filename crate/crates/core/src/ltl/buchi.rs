//! LTL to Büchi automata via the on-the-fly tableau construction
//! (Gerth, Peled, Vardi, Wolper), followed by counter degeneralisation.
//!
//! Automata are state-labelled: each state carries the literals that must
//! hold on the letter read while in that state.

use std::collections::{BTreeSet, HashMap};

use crate::game::Labelling;

use super::Ltl;

/// Negation normal form with `R` (release), interned by id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Nnf {
    True,
    False,
    Pos(usize),
    Neg(usize),
    And(usize, usize),
    Or(usize, usize),
    Next(usize),
    Until(usize, usize),
    Release(usize, usize),
}

#[derive(Default)]
struct Interner {
    nodes: Vec<Nnf>,
    ids: HashMap<Nnf, usize>,
    atoms: Vec<String>,
}

impl Interner {
    fn intern(&mut self, n: Nnf) -> usize {
        if let Some(&id) = self.ids.get(&n) {
            return id;
        }
        self.nodes.push(n.clone());
        self.ids.insert(n, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn atom(&mut self, name: &str) -> usize {
        match self.atoms.iter().position(|a| a == name) {
            Some(i) => i,
            None => {
                self.atoms.push(name.to_string());
                self.atoms.len() - 1
            }
        }
    }

    fn is(&self, id: usize, n: &Nnf) -> bool {
        &self.nodes[id] == n
    }

    fn and(&mut self, a: usize, b: usize) -> usize {
        if self.is(a, &Nnf::False) || self.is(b, &Nnf::False) {
            self.intern(Nnf::False)
        } else if self.is(a, &Nnf::True) || a == b {
            b
        } else if self.is(b, &Nnf::True) {
            a
        } else {
            self.intern(Nnf::And(a, b))
        }
    }

    fn or(&mut self, a: usize, b: usize) -> usize {
        if self.is(a, &Nnf::True) || self.is(b, &Nnf::True) {
            self.intern(Nnf::True)
        } else if self.is(a, &Nnf::False) || a == b {
            b
        } else if self.is(b, &Nnf::False) {
            a
        } else {
            self.intern(Nnf::Or(a, b))
        }
    }

    fn until(&mut self, a: usize, b: usize) -> usize {
        if self.is(b, &Nnf::True) || self.is(b, &Nnf::False) || self.is(a, &Nnf::False) {
            b
        } else {
            self.intern(Nnf::Until(a, b))
        }
    }

    fn release(&mut self, a: usize, b: usize) -> usize {
        if self.is(b, &Nnf::True) || self.is(b, &Nnf::False) || self.is(a, &Nnf::True) {
            b
        } else {
            self.intern(Nnf::Release(a, b))
        }
    }

    fn next(&mut self, a: usize) -> usize {
        if self.is(a, &Nnf::True) || self.is(a, &Nnf::False) {
            a
        } else {
            self.intern(Nnf::Next(a))
        }
    }

    fn nnf(&mut self, f: &Ltl, negated: bool) -> usize {
        match (f, negated) {
            (Ltl::True, false) | (Ltl::False, true) => self.intern(Nnf::True),
            (Ltl::True, true) | (Ltl::False, false) => self.intern(Nnf::False),
            (Ltl::Atom(p), _) => {
                let i = self.atom(p);
                self.intern(if negated { Nnf::Neg(i) } else { Nnf::Pos(i) })
            }
            (Ltl::Not(a), _) => self.nnf(a, !negated),
            (Ltl::Next(a), _) => {
                let a = self.nnf(a, negated);
                self.next(a)
            }
            (Ltl::And(a, b), false) | (Ltl::Or(a, b), true) => {
                let (a, b) = (self.nnf(a, negated), self.nnf(b, negated));
                self.and(a, b)
            }
            (Ltl::Or(a, b), false) | (Ltl::And(a, b), true) => {
                let (a, b) = (self.nnf(a, negated), self.nnf(b, negated));
                self.or(a, b)
            }
            (Ltl::Until(a, b), false) => {
                let (a, b) = (self.nnf(a, false), self.nnf(b, false));
                self.until(a, b)
            }
            (Ltl::Until(a, b), true) => {
                let (a, b) = (self.nnf(a, true), self.nnf(b, true));
                self.release(a, b)
            }
        }
    }
}

#[derive(Clone)]
struct TableauNode {
    incoming: BTreeSet<usize>,
    new: BTreeSet<usize>,
    old: BTreeSet<usize>,
    next: BTreeSet<usize>,
}

/// Marker for the virtual initial predecessor.
const INIT: usize = usize::MAX;

struct Tableau<'a> {
    f: &'a Interner,
    done: Vec<TableauNode>,
}

impl Tableau<'_> {
    fn expand(&mut self, mut node: TableauNode) {
        let Some(&eta) = node.new.iter().next() else {
            if let Some(existing) = self
                .done
                .iter_mut()
                .find(|n| n.old == node.old && n.next == node.next)
            {
                existing.incoming.extend(node.incoming);
                return;
            }
            let id = self.done.len();
            let succ = TableauNode {
                incoming: BTreeSet::from([id]),
                new: node.next.clone(),
                old: BTreeSet::new(),
                next: BTreeSet::new(),
            };
            self.done.push(node);
            self.expand(succ);
            return;
        };
        node.new.remove(&eta);
        if node.old.contains(&eta) {
            self.expand(node);
            return;
        }
        match self.f.nodes[eta] {
            Nnf::False => {}
            Nnf::True => {
                node.old.insert(eta);
                self.expand(node);
            }
            Nnf::Pos(p) | Nnf::Neg(p) => {
                let dual = match self.f.nodes[eta] {
                    Nnf::Pos(_) => Nnf::Neg(p),
                    _ => Nnf::Pos(p),
                };
                if self.f.ids.get(&dual).is_some_and(|d| node.old.contains(d)) {
                    return;
                }
                node.old.insert(eta);
                self.expand(node);
            }
            Nnf::And(a, b) => {
                node.old.insert(eta);
                self.add_new(&mut node, a);
                self.add_new(&mut node, b);
                self.expand(node);
            }
            Nnf::Next(a) => {
                node.old.insert(eta);
                node.next.insert(a);
                self.expand(node);
            }
            Nnf::Or(a, b) | Nnf::Until(a, b) | Nnf::Release(a, b) => {
                node.old.insert(eta);
                let mut left = node.clone();
                let mut right = node;
                match self.f.nodes[eta] {
                    Nnf::Or(..) => {
                        self.add_new(&mut left, a);
                        self.add_new(&mut right, b);
                    }
                    Nnf::Until(..) => {
                        self.add_new(&mut left, a);
                        left.next.insert(eta);
                        self.add_new(&mut right, b);
                    }
                    _ => {
                        self.add_new(&mut left, b);
                        left.next.insert(eta);
                        self.add_new(&mut right, a);
                        self.add_new(&mut right, b);
                    }
                }
                self.expand(left);
                self.expand(right);
            }
        }
    }

    fn add_new(&self, node: &mut TableauNode, f: usize) {
        if !node.old.contains(&f) {
            node.new.insert(f);
        }
    }
}

/// A state-labelled Büchi automaton over sets of atomic propositions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuchiAutomaton {
    atoms: Vec<String>,
    /// Atoms (as bits over `atoms`) that must hold in each state.
    pos: Vec<u64>,
    /// Atoms that must not hold in each state.
    neg: Vec<u64>,
    initial: Vec<usize>,
    succ: Vec<Vec<usize>>,
    accepting: Vec<bool>,
}

/// Literal constraints of automaton states, re-expressed over a labelling's
/// proposition indices. `None` marks a state that no letter satisfies.
pub type BoundLiterals = Vec<Option<(u64, u64)>>;

impl BuchiAutomaton {
    pub fn state_count(&self) -> usize {
        self.succ.len()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn successors(&self, q: usize) -> &[usize] {
        &self.succ[q]
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    /// Whether state `q` may read a letter in which exactly `letter` holds.
    pub fn admits(&self, q: usize, letter: &BTreeSet<String>) -> bool {
        self.atoms.iter().enumerate().all(|(i, a)| {
            let holds = letter.contains(a);
            (self.pos[q] >> i & 1 == 0 || holds) && (self.neg[q] >> i & 1 == 0 || !holds)
        })
    }

    /// Translates literal constraints to the labelling's bit positions.
    pub fn bind(&self, labelling: &Labelling) -> BoundLiterals {
        let index: Vec<Option<usize>> = self.atoms.iter().map(|a| labelling.prop_index(a)).collect();
        (0..self.state_count())
            .map(|q| {
                let (mut pos, mut neg) = (0u64, 0u64);
                for (i, idx) in index.iter().enumerate() {
                    let (p, n) = (self.pos[q] >> i & 1 == 1, self.neg[q] >> i & 1 == 1);
                    match idx {
                        Some(j) => {
                            if p {
                                pos |= 1 << j;
                            }
                            if n {
                                neg |= 1 << j;
                            }
                        }
                        None if p => return None,
                        None => {}
                    }
                }
                Some((pos, neg))
            })
            .collect()
    }

    /// Whether the word `lambda(stem) . lambda(loop)^omega` is accepted.
    pub fn accepts_lasso(&self, lasso: &crate::lasso::Lasso, labelling: &Labelling) -> bool {
        let graph = super::product::LassoGraph::new(lasso);
        super::product::exists_path_with(&graph, self, labelling).is_some()
    }
}

/// Translates `formula` into a Büchi automaton accepting exactly its models.
pub fn to_buchi(formula: &Ltl) -> BuchiAutomaton {
    let mut interner = Interner::default();
    let root = interner.nnf(formula, false);
    let untils: Vec<(usize, usize)> = interner
        .nodes
        .iter()
        .enumerate()
        .filter_map(|(id, n)| match n {
            Nnf::Until(_, b) => Some((id, *b)),
            _ => None,
        })
        .collect();
    let mut tableau = Tableau {
        f: &interner,
        done: Vec::new(),
    };
    tableau.expand(TableauNode {
        incoming: BTreeSet::from([INIT]),
        new: BTreeSet::from([root]),
        old: BTreeSet::new(),
        next: BTreeSet::new(),
    });
    let nodes = tableau.done;
    let n = nodes.len();

    let mut pos = vec![0u64; n];
    let mut neg = vec![0u64; n];
    for (q, node) in nodes.iter().enumerate() {
        for &f in &node.old {
            match interner.nodes[f] {
                Nnf::Pos(p) => pos[q] |= 1 << p,
                Nnf::Neg(p) => neg[q] |= 1 << p,
                _ => {}
            }
        }
    }
    // Generalised acceptance: one set per until subformula.
    let sets: Vec<Vec<bool>> = if untils.is_empty() {
        vec![vec![true; n]]
    } else {
        untils
            .iter()
            .map(|&(u, b)| {
                nodes
                    .iter()
                    .map(|node| !node.old.contains(&u) || node.old.contains(&b))
                    .collect()
            })
            .collect()
    };
    let m = sets.len();

    // Degeneralise: state (q, i) lives at index q * m + i.
    let mut succ = vec![Vec::new(); n * m];
    let mut accepting = vec![false; n * m];
    let mut initial = Vec::new();
    for (q, node) in nodes.iter().enumerate() {
        for &p in &node.incoming {
            if p == INIT {
                initial.push(q * m);
                continue;
            }
            for i in 0..m {
                let j = if sets[i][p] { (i + 1) % m } else { i };
                succ[p * m + i].push(q * m + j);
            }
        }
        accepting[q * m] = sets[0][q];
    }
    for s in &mut succ {
        s.sort_unstable();
        s.dedup();
    }
    initial.sort_unstable();
    let expand = |v: &[u64]| v.iter().flat_map(|&x| std::iter::repeat(x).take(m)).collect();
    let mut automaton = BuchiAutomaton {
        atoms: interner.atoms,
        pos: expand(&pos),
        neg: expand(&neg),
        initial,
        succ,
        accepting,
    };
    automaton.trim();
    automaton
}

impl BuchiAutomaton {
    /// Drops states unreachable from an initial state and renumbers.
    fn trim(&mut self) {
        let n = self.state_count();
        let mut seen = vec![false; n];
        let mut stack = self.initial.clone();
        for &q in &stack {
            seen[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &r in &self.succ[q] {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        let mut new_id = vec![usize::MAX; n];
        let mut k = 0;
        for q in 0..n {
            if seen[q] {
                new_id[q] = k;
                k += 1;
            }
        }
        let keep = |v: &[u64]| (0..n).filter(|&q| seen[q]).map(|q| v[q]).collect::<Vec<_>>();
        self.pos = keep(&self.pos);
        self.neg = keep(&self.neg);
        self.accepting = (0..n).filter(|&q| seen[q]).map(|q| self.accepting[q]).collect();
        self.succ = (0..n)
            .filter(|&q| seen[q])
            .map(|q| self.succ[q].iter().map(|&r| new_id[r]).collect())
            .collect();
        self.initial = self.initial.iter().map(|&q| new_id[q]).collect();
    }
}
