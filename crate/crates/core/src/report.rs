//! Pass/fail verdicts shared by every verification routine.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// First nonzero term of `lhs - rhs`.
///
/// `grade` is the x-count for symbolic identities, the degree for linear
/// ones and the arity for A-infinity ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub equation: String,
    pub term: String,
    pub coefficient: String,
    pub grade: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub status: Status,
    pub cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl IdentityReport {
    pub fn new(id: impl Into<String>, cap: usize, witness: Option<Witness>) -> Self {
        let status = if witness.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        IdentityReport {
            identity_id: id.into(),
            status,
            cap,
            witness,
        }
    }

    pub fn pass(id: impl Into<String>, cap: usize) -> Self {
        Self::new(id, cap, None)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn all_pass(reports: &[IdentityReport]) -> bool {
    reports.iter().all(IdentityReport::passed)
}
