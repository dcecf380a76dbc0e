//! JSON verdicts: `{status, witness, bound}` with states and actions by name.

use serde::{Deserialize, Serialize};

use crate::coop::{Verdict, Witness};
use crate::game::ConcurrentGameStructure;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub status: String,
    pub witness: Option<WitnessJson>,
    pub bound: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LassoJson {
    pub stem: Vec<String>,
    #[serde(rename = "loop")]
    pub cycle: Vec<String>,
}

/// One member's machine; `out[q][s]` names an action, `next[q][s]` a memory state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineJson {
    pub agent: usize,
    pub mstates: usize,
    pub minit: usize,
    pub out: Vec<Vec<String>>,
    pub next: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessJson {
    Lasso { lasso: LassoJson },
    Deviation { coalition: Vec<usize>, deviation: Vec<MachineJson> },
}

pub fn verdict_json(m: &ConcurrentGameStructure, v: &Verdict) -> VerdictJson {
    let witness = v.witness.as_ref().map(|w| match w {
        Witness::Lasso(l) => {
            let (stem, cycle) = l.names(m);
            WitnessJson::Lasso {
                lasso: LassoJson { stem, cycle },
            }
        }
        Witness::Deviation(j) => WitnessJson::Deviation {
            coalition: j.coalition.members().map(|a| a.0 + 1).collect(),
            deviation: j
                .members()
                .map(|(a, s)| MachineJson {
                    agent: a.0 + 1,
                    mstates: s.state_count(),
                    minit: s.initial(),
                    out: (0..s.state_count())
                        .map(|q| m.states().map(|st| m.action_name(a, s.output(q, st)).to_string()).collect())
                        .collect(),
                    next: (0..s.state_count())
                        .map(|q| m.states().map(|st| s.step(q, st)).collect())
                        .collect(),
                })
                .collect(),
        },
    });
    VerdictJson {
        status: v.status.name().to_string(),
        witness,
        bound: v.bound,
    }
}
