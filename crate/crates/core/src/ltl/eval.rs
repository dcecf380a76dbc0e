//! Exact LTL evaluation over lassos.
//!
//! Each subformula gets one truth value per lasso position. `U` on the loop
//! is a least fixpoint, computed in two backward passes: the first assumes
//! the loop re-entry value is false, the second re-runs with the value the
//! first pass produced at the loop head.

use crate::game::Labelling;
use crate::lasso::Lasso;

use super::Ltl;

enum Node {
    True,
    False,
    /// Proposition index in the labelling; `None` never holds.
    Atom(Option<usize>),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Next(usize),
    Until(usize, usize),
}

fn compile(f: &Ltl, labelling: &Labelling, nodes: &mut Vec<Node>) -> usize {
    let node = match f {
        Ltl::True => Node::True,
        Ltl::False => Node::False,
        Ltl::Atom(p) => Node::Atom(labelling.prop_index(p)),
        Ltl::Not(a) => Node::Not(compile(a, labelling, nodes)),
        Ltl::Next(a) => Node::Next(compile(a, labelling, nodes)),
        Ltl::And(a, b) => {
            let a = compile(a, labelling, nodes);
            Node::And(a, compile(b, labelling, nodes))
        }
        Ltl::Or(a, b) => {
            let a = compile(a, labelling, nodes);
            Node::Or(a, compile(b, labelling, nodes))
        }
        Ltl::Until(a, b) => {
            let a = compile(a, labelling, nodes);
            Node::Until(a, compile(b, labelling, nodes))
        }
    };
    nodes.push(node);
    nodes.len() - 1
}

/// Whether the word `lambda(stem) . lambda(loop)^omega` models `formula`.
/// Propositions outside the labelling's alphabet never hold.
pub fn eval_on_lasso(formula: &Ltl, lasso: &Lasso, labelling: &Labelling) -> bool {
    let masks: Vec<u64> = lasso.positions().map(|s| labelling.mask(s)).collect();
    eval_on_masks(formula, labelling, &masks, lasso.stem.len())
}

pub(crate) fn eval_on_masks(formula: &Ltl, labelling: &Labelling, masks: &[u64], stem_len: usize) -> bool {
    let len = masks.len();
    debug_assert!(stem_len < len);
    let next = |i: usize| if i + 1 < len { i + 1 } else { stem_len };
    let mut nodes = Vec::new();
    let root = compile(formula, labelling, &mut nodes);
    let mut values: Vec<Vec<bool>> = Vec::with_capacity(nodes.len());
    for node in &nodes {
        let v: Vec<bool> = match *node {
            Node::True => vec![true; len],
            Node::False => vec![false; len],
            Node::Atom(None) => vec![false; len],
            Node::Atom(Some(p)) => masks.iter().map(|m| m & (1 << p) != 0).collect(),
            Node::Not(a) => values[a].iter().map(|x| !x).collect(),
            Node::And(a, b) => (0..len).map(|i| values[a][i] && values[b][i]).collect(),
            Node::Or(a, b) => (0..len).map(|i| values[a][i] || values[b][i]).collect(),
            Node::Next(a) => (0..len).map(|i| values[a][next(i)]).collect(),
            Node::Until(a, b) => {
                let (va, vb) = (&values[a], &values[b]);
                let mut v = vec![false; len];
                let mut reentry = false;
                for _pass in 0..2 {
                    for i in (stem_len..len).rev() {
                        let succ = if i + 1 < len { v[i + 1] } else { reentry };
                        v[i] = vb[i] || (va[i] && succ);
                    }
                    reentry = v[stem_len];
                }
                for i in (0..stem_len).rev() {
                    v[i] = vb[i] || (va[i] && v[i + 1]);
                }
                v
            }
        };
        values.push(v);
    }
    values[root][0]
}
