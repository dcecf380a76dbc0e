use crate::error::GameError;
use crate::game::{ConcurrentGameStructure, StateId};

/// An ultimately periodic run `stem . loop^omega`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lasso {
    pub stem: Vec<StateId>,
    pub cycle: Vec<StateId>,
}

impl Lasso {
    pub fn new(stem: Vec<StateId>, cycle: Vec<StateId>) -> Result<Self, GameError> {
        if cycle.is_empty() {
            return Err(GameError::EmptyLoop);
        }
        Ok(Lasso { stem, cycle })
    }

    /// Number of distinct positions `|stem| + |loop|`.
    pub fn len(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// State at position `i` of the infinite run.
    pub fn at(&self, i: usize) -> StateId {
        if i < self.stem.len() {
            self.stem[i]
        } else {
            self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    /// Positions `0..|stem|+|loop|` in order.
    pub fn positions(&self) -> impl Iterator<Item = StateId> + '_ {
        self.stem.iter().chain(self.cycle.iter()).copied()
    }

    /// Position following `i` within `0..len()`.
    pub fn next_position(&self, i: usize) -> usize {
        if i + 1 < self.len() {
            i + 1
        } else {
            self.stem.len()
        }
    }

    pub fn first(&self) -> StateId {
        self.at(0)
    }

    /// Checks that consecutive states (including the loop wrap-around) are
    /// connected by some available profile.
    pub fn check_consistent(&self, structure: &ConcurrentGameStructure) -> Result<(), GameError> {
        if self.cycle.is_empty() {
            return Err(GameError::EmptyLoop);
        }
        for i in 0..self.len() {
            let from = self.at(i);
            let to = self.at(i + 1);
            if !structure.successor_states(from).any(|t| t == to) {
                return Err(GameError::InconsistentLasso {
                    from: structure.state_name(from).to_string(),
                    to: structure.state_name(to).to_string(),
                });
            }
        }
        Ok(())
    }

    /// The same infinite word with the shortest loop and stem.
    pub fn normalized(&self) -> Lasso {
        let mut cycle = self.cycle.clone();
        let n = cycle.len();
        for period in 1..=n {
            if n % period == 0 && (period..n).all(|i| cycle[i] == cycle[i - period]) {
                cycle.truncate(period);
                break;
            }
        }
        let mut stem = self.stem.clone();
        while let Some(&last) = stem.last() {
            if last == *cycle.last().unwrap() {
                stem.pop();
                cycle.rotate_right(1);
            } else {
                break;
            }
        }
        Lasso { stem, cycle }
    }

    pub fn names(&self, structure: &ConcurrentGameStructure) -> (Vec<String>, Vec<String>) {
        let name = |s: &StateId| structure.state_name(*s).to_string();
        (
            self.stem.iter().map(name).collect(),
            self.cycle.iter().map(name).collect(),
        )
    }

    pub fn display(&self, structure: &ConcurrentGameStructure) -> String {
        let (stem, cycle) = self.names(structure);
        format!("{} ({})^w", stem.join(" "), cycle.join(" "))
            .trim_start()
            .to_string()
    }
}
