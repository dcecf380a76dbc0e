//! Core, strong core, fulfilled coalitions and E-/A-core for LTL games.
//!
//! Strategy quantifiers are searched up to a memory bound `k`. On one-shot
//! structures memoryless strategies are fully general, so bound-limited
//! answers are upgraded to definitive ones there (and whenever the caller
//! declares the bound exact).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::arena::{restrict, DeviationSpace};
use crate::error::GameError;
use crate::game::{is_one_shot, Coalition, LtlGame};
use crate::lasso::Lasso;
use crate::ltl::{exists_path, exists_path_with, to_buchi, BuchiAutomaton, Ltl};
use crate::strategy::{run_of, winners, JointStrategy, ProfileSpace, StrategyProfile};

use super::{Status, Verdict, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Memory bound `k` for searched strategies.
    pub bound: usize,
    /// Treat the bound as complete for this game.
    pub declared_exact: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            bound: 1,
            declared_exact: false,
        }
    }
}

impl SearchOptions {
    pub fn with_bound(bound: usize) -> Self {
        SearchOptions {
            bound: bound.max(1),
            declared_exact: false,
        }
    }
}

/// One row of a strong-core search: a profile, its run and winners, and
/// its strong-core membership verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreRow {
    pub profile: StrategyProfile,
    pub run: Lasso,
    pub winners: Coalition,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongCoreReport {
    /// No enumerated profile is a strong-core member.
    pub empty: bool,
    pub bound: usize,
    pub rows: Vec<CoreRow>,
}

/// Decision procedures over one LTL game. Results of fulfilment searches
/// and translated automata are cached, so one solver should be reused
/// across queries on the same game. The solver is `Sync`.
pub struct CoopSolver<'g> {
    game: &'g LtlGame,
    opts: SearchOptions,
    exact: bool,
    fulfilled: Mutex<HashMap<u32, Option<JointStrategy>>>,
    spaces: Mutex<HashMap<u32, Arc<DeviationSpace>>>,
    automata: Mutex<HashMap<(u32, u32), Arc<BuchiAutomaton>>>,
}

impl<'g> CoopSolver<'g> {
    pub fn new(game: &'g LtlGame, opts: SearchOptions) -> Self {
        let opts = SearchOptions {
            bound: opts.bound.max(1),
            ..opts
        };
        CoopSolver {
            game,
            opts,
            exact: opts.declared_exact || is_one_shot(&game.structure),
            fulfilled: Mutex::new(HashMap::new()),
            spaces: Mutex::new(HashMap::new()),
            automata: Mutex::new(HashMap::new()),
        }
    }

    pub fn game(&self) -> &'g LtlGame {
        self.game
    }

    pub fn bound(&self) -> usize {
        self.opts.bound
    }

    /// Whether bounded searches are complete for this game.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    fn undecided(&self, witness: Option<Witness>) -> Verdict {
        if self.exact {
            Verdict::holds(witness, Some(self.opts.bound))
        } else {
            Verdict::bound_limited(self.opts.bound, witness)
        }
    }

    fn space(&self, c: Coalition) -> Arc<DeviationSpace> {
        if let Some(s) = self.spaces.lock().unwrap().get(&c.mask()) {
            return s.clone();
        }
        let s = Arc::new(DeviationSpace::new(&self.game.structure, c, self.opts.bound));
        self.spaces.lock().unwrap().entry(c.mask()).or_insert(s).clone()
    }

    /// Automaton for `AND_{i in keep} gamma_i & OR_{j in lose} !gamma_j`.
    fn automaton(&self, keep: Coalition, lose: Coalition) -> Arc<BuchiAutomaton> {
        let key = (keep.mask(), lose.mask());
        if let Some(a) = self.automata.lock().unwrap().get(&key) {
            return a.clone();
        }
        let f = Ltl::and(
            Ltl::and_all(keep.members().map(|i| self.game.goal(i).clone())),
            Ltl::or_all(lose.members().map(|j| Ltl::not(self.game.goal(j).clone()))),
        );
        let a = Arc::new(to_buchi(&f));
        self.automata.lock().unwrap().entry(key).or_insert(a).clone()
    }

    /// A joint strategy of at most `k` states per member under which every
    /// member of `c` wins against all behaviours of the others.
    pub fn fulfilling_strategy(&self, c: Coalition) -> Option<JointStrategy> {
        if let Some(r) = self.fulfilled.lock().unwrap().get(&c.mask()) {
            return r.clone();
        }
        let space = self.space(c);
        let losing = self.automaton(Coalition::empty(), c);
        let found = (0..space.len()).into_par_iter().find_map_first(|i| {
            let dev = space.get(i);
            let arena = restrict(&self.game.structure, &dev).ok()?;
            exists_path_with(&arena, &losing, &self.game.labelling)
                .is_none()
                .then_some(dev)
        });
        self.fulfilled.lock().unwrap().insert(c.mask(), found.clone());
        found
    }

    /// Fulfilment is only ever confirmed; a failed search is reported as
    /// bound-limited.
    pub fn is_fulfilled(&self, c: Coalition) -> Verdict {
        match self.fulfilling_strategy(c) {
            Some(s) => Verdict::holds(Some(Witness::Deviation(s)), Some(self.opts.bound)),
            None => Verdict::bound_limited(self.opts.bound, None),
        }
    }

    /// Exact check of an (alpha-style) beneficial deviation.
    pub fn is_beneficial_deviation(&self, profile: &StrategyProfile, dev: &JointStrategy) -> Result<Verdict, GameError> {
        let run = run_of(&self.game.structure, profile)?;
        let losers = winners(self.game, &run).complement(self.game.structure.agent_count());
        if dev.coalition.is_empty() || !dev.coalition.is_subset_of(losers) {
            return Ok(Verdict::fails(Some(Witness::Lasso(run)), None));
        }
        let arena = restrict(&self.game.structure, dev)?;
        let losing = self.automaton(Coalition::empty(), dev.coalition);
        Ok(match exists_path_with(&arena, &losing, &self.game.labelling) {
            Some(punish) => Verdict::fails(Some(Witness::Lasso(punish)), None),
            None => Verdict::holds(Some(Witness::Deviation(dev.clone())), None),
        })
    }

    /// Core membership: fails iff some coalition of losers is fulfilled.
    pub fn core_membership(&self, profile: &StrategyProfile) -> Result<Verdict, GameError> {
        let run = run_of(&self.game.structure, profile)?;
        let losers = winners(self.game, &run).complement(self.game.structure.agent_count());
        for l in losers.nonempty_subsets() {
            if let Some(dev) = self.fulfilling_strategy(l) {
                return Ok(Verdict::fails(Some(Witness::Deviation(dev)), Some(self.opts.bound)));
            }
        }
        Ok(self.undecided(Some(Witness::Lasso(run))))
    }

    /// Is some run of a core member a model of `phi`?
    pub fn e_core(&self, phi: &Ltl) -> Verdict {
        let n = self.game.structure.agent_count();
        let all = Coalition::full(n);
        let mut ws = all.subsets();
        ws.sort_by(|a, b| b.len().cmp(&a.len()).then(a.mask().cmp(&b.mask())));
        let mut candidate: Option<Lasso> = None;
        for w in ws {
            let f = Ltl::and_all(
                std::iter::once(phi.clone())
                    .chain(w.members().map(|i| self.game.goal(i).clone()))
                    .chain(w.complement(n).members().map(|j| Ltl::not(self.game.goal(j).clone()))),
            );
            let Some(path) = exists_path(&self.game.structure, &f, &self.game.labelling) else {
                continue;
            };
            let blocked = w
                .complement(n)
                .nonempty_subsets()
                .into_iter()
                .any(|l| self.fulfilling_strategy(l).is_some());
            if blocked {
                continue;
            }
            if self.exact || w == all {
                return Verdict::holds(Some(Witness::Lasso(path)), Some(self.opts.bound));
            }
            candidate.get_or_insert(path);
        }
        match candidate {
            Some(path) => Verdict::bound_limited(self.opts.bound, Some(Witness::Lasso(path))),
            None => Verdict::fails(None, Some(self.opts.bound)),
        }
    }

    /// Do all runs of core members satisfy `phi`? Dual of `e_core(!phi)`.
    pub fn a_core(&self, phi: &Ltl) -> Verdict {
        let dual = self.e_core(&Ltl::not(phi.clone()));
        match dual.status {
            Status::Holds => Verdict::fails(dual.witness, dual.bound),
            Status::Fails => Verdict::holds(None, dual.bound),
            Status::BoundLimited(k) => Verdict::bound_limited(k, dual.witness),
        }
    }

    fn strong_check(
        &self,
        profile: &StrategyProfile,
        initial_winners: Coalition,
        dev: &JointStrategy,
    ) -> Result<Verdict, GameError> {
        let n = self.game.structure.agent_count();
        let c = dev.coalition;
        if c.is_empty() || !c.is_subset_of(initial_winners.complement(n)) {
            return Ok(Verdict::fails(None, None));
        }
        let deviated = run_of(&self.game.structure, &profile.with_deviation(dev))?;
        if !c.is_subset_of(winners(self.game, &deviated)) {
            return Ok(Verdict::fails(Some(Witness::Lasso(deviated)), None));
        }
        let arena = restrict(&self.game.structure, dev)?;
        let credible = self.automaton(initial_winners, c);
        Ok(match exists_path_with(&arena, &credible, &self.game.labelling) {
            Some(punish) => Verdict::fails(Some(Witness::Lasso(punish)), None),
            None => Verdict::holds(Some(Witness::Deviation(dev.clone())), None),
        })
    }

    /// Exact check of a strong beneficial deviation.
    pub fn is_strong_beneficial_deviation(
        &self,
        profile: &StrategyProfile,
        dev: &JointStrategy,
    ) -> Result<Verdict, GameError> {
        let run = run_of(&self.game.structure, profile)?;
        let w0 = winners(self.game, &run);
        if !dev.coalition.is_subset_of(w0.complement(self.game.structure.agent_count())) {
            return Ok(Verdict::fails(Some(Witness::Lasso(run)), None));
        }
        self.strong_check(profile, w0, dev)
    }

    /// Strong-core membership: fails iff some coalition of losers has a
    /// strong beneficial deviation with at most `k` states per member.
    pub fn strong_core_membership(&self, profile: &StrategyProfile) -> Result<Verdict, GameError> {
        let run = run_of(&self.game.structure, profile)?;
        let w0 = winners(self.game, &run);
        let losers = w0.complement(self.game.structure.agent_count());
        for c in losers.nonempty_subsets() {
            let space = self.space(c);
            let found = (0..space.len()).into_par_iter().find_map_first(|i| {
                let dev = space.get(i);
                match self.strong_check(profile, w0, &dev) {
                    Ok(v) if v.status == Status::Holds => Some(dev),
                    _ => None,
                }
            });
            if let Some(dev) = found {
                return Ok(Verdict::fails(Some(Witness::Deviation(dev)), Some(self.opts.bound)));
            }
        }
        Ok(self.undecided(Some(Witness::Lasso(run))))
    }

    /// Runs strong-core membership on every profile with at most `k` states
    /// per agent.
    pub fn strong_core_empty_search(&self) -> Result<StrongCoreReport, GameError> {
        let space = ProfileSpace::new(&self.game.structure, self.opts.bound);
        let rows: Result<Vec<CoreRow>, GameError> = (0..space.len())
            .into_par_iter()
            .map(|i| {
                let profile = space.get(i);
                let run = run_of(&self.game.structure, &profile)?;
                let winners = winners(self.game, &run);
                let verdict = self.strong_core_membership(&profile)?;
                Ok(CoreRow {
                    profile,
                    run,
                    winners,
                    verdict,
                })
            })
            .collect();
        let rows = rows?;
        Ok(StrongCoreReport {
            empty: rows.iter().all(|r| r.verdict.status == Status::Fails),
            bound: self.opts.bound,
            rows,
        })
    }

    /// Profiles with at most `k` states per agent that are core members.
    pub fn core_members(&self) -> Result<Vec<StrategyProfile>, GameError> {
        let space = ProfileSpace::new(&self.game.structure, self.opts.bound);
        let verdicts: Result<Vec<(StrategyProfile, Status)>, GameError> = (0..space.len())
            .into_par_iter()
            .map(|i| {
                let p = space.get(i);
                let v = self.core_membership(&p)?;
                Ok((p, v.status))
            })
            .collect();
        Ok(verdicts?
            .into_iter()
            .filter(|(_, s)| *s != Status::Fails)
            .map(|(p, _)| p)
            .collect())
    }

    /// Repeatedly applies beneficial deviations of fulfilled loser
    /// coalitions, starting from `profile`. Deviators keep their winning
    /// strategies, so every step adds new agents to the set of locked-in
    /// winners and at most `|Ag|` steps are taken. Returns the final profile
    /// and the coalitions that deviated.
    pub fn improve_to_core(&self, profile: &StrategyProfile) -> Result<(StrategyProfile, Vec<Coalition>), GameError> {
        let mut current = profile.clone();
        let mut steps = Vec::new();
        loop {
            let v = self.core_membership(&current)?;
            match (v.status, v.witness) {
                (Status::Fails, Some(Witness::Deviation(dev))) => {
                    steps.push(dev.coalition);
                    current = current.with_deviation(&dev);
                }
                _ => return Ok((current, steps)),
            }
            if steps.len() > self.game.structure.agent_count() {
                return Ok((current, steps));
            }
        }
    }
}

pub fn is_beneficial_deviation(
    game: &LtlGame,
    profile: &StrategyProfile,
    dev: &JointStrategy,
) -> Result<Verdict, GameError> {
    CoopSolver::new(game, SearchOptions::default()).is_beneficial_deviation(profile, dev)
}

pub fn is_fulfilled(game: &LtlGame, c: Coalition, k: usize) -> Verdict {
    CoopSolver::new(game, SearchOptions::with_bound(k)).is_fulfilled(c)
}

pub fn core_membership(game: &LtlGame, profile: &StrategyProfile, k: usize) -> Result<Verdict, GameError> {
    CoopSolver::new(game, SearchOptions::with_bound(k)).core_membership(profile)
}

pub fn e_core(game: &LtlGame, phi: &Ltl, k: usize) -> Verdict {
    CoopSolver::new(game, SearchOptions::with_bound(k)).e_core(phi)
}

pub fn a_core(game: &LtlGame, phi: &Ltl, k: usize) -> Verdict {
    CoopSolver::new(game, SearchOptions::with_bound(k)).a_core(phi)
}

pub fn is_strong_beneficial_deviation(
    game: &LtlGame,
    profile: &StrategyProfile,
    dev: &JointStrategy,
) -> Result<Verdict, GameError> {
    CoopSolver::new(game, SearchOptions::default()).is_strong_beneficial_deviation(profile, dev)
}

pub fn strong_core_membership(game: &LtlGame, profile: &StrategyProfile, k: usize) -> Result<Verdict, GameError> {
    CoopSolver::new(game, SearchOptions::with_bound(k)).strong_core_membership(profile)
}

pub fn strong_core_empty_search(game: &LtlGame, k: usize) -> Result<StrongCoreReport, GameError> {
    CoopSolver::new(game, SearchOptions::with_bound(k)).strong_core_empty_search()
}
