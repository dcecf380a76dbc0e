//! Cooperative solution concepts.

pub mod ltl;

use crate::lasso::Lasso;
use crate::strategy::JointStrategy;

/// Outcome of a decision procedure. `BoundLimited(k)` means no witness was
/// found among strategies with at most `k` memory states, which does not
/// settle the question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Holds,
    Fails,
    BoundLimited(usize),
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Holds => "HOLDS",
            Status::Fails => "FAILS",
            Status::BoundLimited(_) => "BOUND_LIMITED",
        }
    }

    /// Process exit code: 0 holds, 1 fails, 2 bound-limited.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::BoundLimited(_) => 2,
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::BoundLimited(k) => write!(f, "BOUND_LIMITED({k})"),
            other => write!(f, "{}", other.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Lasso(Lasso),
    Deviation(JointStrategy),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    /// Memory bound of the search; `None` for exact procedures.
    pub bound: Option<usize>,
}

impl Verdict {
    pub fn holds(witness: Option<Witness>, bound: Option<usize>) -> Self {
        Verdict {
            status: Status::Holds,
            witness,
            bound,
        }
    }

    pub fn fails(witness: Option<Witness>, bound: Option<usize>) -> Self {
        Verdict {
            status: Status::Fails,
            witness,
            bound,
        }
    }

    pub fn bound_limited(k: usize, witness: Option<Witness>) -> Self {
        Verdict {
            status: Status::BoundLimited(k),
            witness,
            bound: Some(k),
        }
    }

    pub fn lasso(&self) -> Option<&Lasso> {
        match &self.witness {
            Some(Witness::Lasso(l)) => Some(l),
            _ => None,
        }
    }

    pub fn deviation(&self) -> Option<&JointStrategy> {
        match &self.witness {
            Some(Witness::Deviation(d)) => Some(d),
            _ => None,
        }
    }
}
