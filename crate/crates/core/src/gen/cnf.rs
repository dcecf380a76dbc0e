//! 3-CNF to mean-payoff game: the grand coalition has a beneficial
//! deviation from the reference profile iff the formula is satisfiable.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::game::{ActionId, AgentId, CgsBuilder, MpGame, WeightAssignment};
use crate::strategy::StrategyProfile;

use super::GenError;

/// Clauses of non-zero literals over variables `1..=vars` (`-v` negates).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn new(vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self, GenError> {
        if clauses.is_empty() {
            return Err(GenError::EmptyCnf);
        }
        for c in &clauses {
            if c.is_empty() || c.len() > 3 {
                return Err(GenError::BadClause(format!("{c:?}")));
            }
            if c.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > vars) {
                return Err(GenError::BadClause(format!("{c:?}")));
            }
        }
        Ok(Cnf { vars, clauses })
    }

    /// Parses `1 -2 3 0 ...` style clause lists (DIMACS body, `0`
    /// terminating each clause; `p`/`c` lines ignored).
    pub fn parse(text: &str) -> Result<Self, GenError> {
        let mut clauses = Vec::new();
        let mut cur = Vec::new();
        let mut vars = 0usize;
        for line in text.lines() {
            let line = line.trim();
            if line.starts_with('c') || line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if let Some(v) = parts.get(1).and_then(|v| v.parse().ok()) {
                    vars = vars.max(v);
                }
                continue;
            }
            for tok in line.split_whitespace() {
                let l: i32 = tok.parse().map_err(|_| GenError::BadClause(tok.to_string()))?;
                if l == 0 {
                    clauses.push(std::mem::take(&mut cur));
                } else {
                    vars = vars.max(l.unsigned_abs() as usize);
                    cur.push(l);
                }
            }
        }
        if !cur.is_empty() {
            clauses.push(cur);
        }
        Cnf::new(vars, clauses)
    }
}

impl std::fmt::Display for Cnf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "p cnf {} {}", self.vars, self.clauses.len())?;
        for c in &self.clauses {
            for l in c {
                write!(f, "{l} ")?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

/// Random 3-CNF: every clause draws up to three literals over distinct
/// variables.
pub fn random_cnf(vars: usize, clauses: usize, seed: u64) -> Cnf {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = vars.max(1);
    let cs = (0..clauses.max(1))
        .map(|_| {
            let width = rng.gen_range(1..=3.min(vars));
            let mut vs: Vec<usize> = (1..=vars).collect();
            let mut c = Vec::new();
            for _ in 0..width {
                let v = vs.swap_remove(rng.gen_range(0..vs.len()));
                let l = v as i32;
                c.push(if rng.gen_bool(0.5) { l } else { -l });
            }
            c
        })
        .collect();
    Cnf { vars, clauses: cs }
}

/// One agent per clause, actions `t`/`f` everywhere.
///
/// From `y_init` unanimous `t` enters `y0`, anything else falls into the
/// sink `y_star`. Each layer `x_v`/`nx_v` is entered by unanimous `t`
/// (positive literal) or otherwise (negative), then `yn` returns to `y0`.
/// Agent `i` earns 1 on literal states occurring in clause `i`. The
/// reference profile plays `f` everywhere and so sinks immediately.
pub fn cnf_to_mp_game(cnf: &Cnf) -> Result<(MpGame, StrategyProfile), GenError> {
    let cnf = Cnf::new(cnf.vars, cnf.clauses.clone())?;
    let m = cnf.clauses.len();
    let n = cnf.vars;
    let mut b = CgsBuilder::new(m);
    let y_init = b.state("y_init");
    let y0 = b.state("y0");
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for v in 1..=n {
        pos.push(b.state(&format!("x{v}")));
        neg.push(b.state(&format!("nx{v}")));
    }
    let yn = b.state("yn");
    let ystar = b.state("y_star");
    let mut t = ActionId(0);
    let mut f = ActionId(0);
    for i in 0..m {
        t = b.action(AgentId(i), "t");
        f = b.action(AgentId(i), "f");
        b.uniform(AgentId(i), &[t, f]);
    }
    b.initial(y_init);
    let unanimous = move |p: &[ActionId]| p.iter().all(|&a| a == t);
    b.transitions_from(y_init, |p| if unanimous(p) { y0 } else { ystar });
    let layer = |v: usize, p: &[ActionId]| if unanimous(p) { pos[v] } else { neg[v] };
    b.transitions_from(y0, |p| layer(0, p));
    for v in 0..n {
        for s in [pos[v], neg[v]] {
            b.transitions_from(s, |p| if v + 1 < n { layer(v + 1, p) } else { yn });
        }
    }
    b.transitions_from(yn, |_| y0);
    b.terminal(ystar);
    let structure = b.build()?;
    let mut weights = WeightAssignment::zeros(m, structure.state_count());
    for (i, clause) in cnf.clauses.iter().enumerate() {
        for &l in clause {
            let v = l.unsigned_abs() as usize - 1;
            let s = if l > 0 { pos[v] } else { neg[v] };
            weights.set(AgentId(i), s, 1);
        }
    }
    let game = MpGame::new(structure, weights)?;
    let profile = StrategyProfile::memoryless(
        &game.structure,
        vec![game.structure.states().map(|s| if s == ystar { t } else { f }).collect(); m],
    )?;
    Ok((game, profile))
}
