//! Decision procedures: tori in orthogonal groups (local, the set 𝒞(E,q), the
//! trivial-Clifford local-global construction) and tori in groups of type F4.

pub mod connect;
pub mod f4;
pub mod lgp;
pub mod local;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::Place;

pub use crate::octonion::RealFormF4;
pub use connect::{connectedness, factor_graph, FactorGraph, Linkage};
pub use f4::{classification_condition, f4_classify_global, f4_classify_global_with, f4_local, LType};
pub use lgp::{adjust_signatures, lgp_trivial_clifford, LgpNode, LgpResult, LoopCase, LoopStep, SignatureLoop};
pub use local::{
    exists_local_assignment, local_orth_realizable, split_place_test, Instance, LocalAssignment, LocalInvariants,
    LocalSearch, SplitStatus,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Yes,
    No,
    UnknownWithinBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reason {
    /// `None` for global conditions.
    pub place: Option<Place>,
    pub condition: String,
    pub pass: bool,
}

impl Reason {
    pub fn new(place: Option<Place>, condition: impl Into<String>, pass: bool) -> Self {
        Reason { place, condition: condition.into(), pass }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub answer: Answer,
    pub reasons: Vec<Reason>,
    pub witnesses: BTreeMap<String, serde_json::Value>,
    /// Prime bound of any search the answer depends on.
    pub bound: Option<u64>,
}

impl Verdict {
    /// Yes iff every reason passes.
    pub fn from_reasons(reasons: Vec<Reason>) -> Self {
        let answer = if reasons.iter().all(|r| r.pass) { Answer::Yes } else { Answer::No };
        Verdict { answer, reasons, witnesses: BTreeMap::new(), bound: None }
    }

    pub fn with_answer(answer: Answer, reasons: Vec<Reason>) -> Self {
        Verdict { answer, reasons, witnesses: BTreeMap::new(), bound: None }
    }

    pub fn witness<T: Serialize>(mut self, key: &str, value: &T) -> Self {
        self.witnesses.insert(key.to_string(), serde_json::to_value(value).expect("serializable witness"));
        self
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn failures(&self) -> impl Iterator<Item = &Reason> {
        self.reasons.iter().filter(|r| !r.pass)
    }
}
