use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;

/// A certified claim about distance graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// Brute-force graph is isomorphic to the evaluated structure expression.
    Structure,
    /// Graph is regular with the closed-form degree.
    Degree,
    /// Connected iff `max(dist) ∈ D`; component count and sizes match.
    Connectivity,
    /// Chromatic number equals the product of the radices at `D`.
    Chromatic,
    /// On `Z_q^n`, equal chromatic numbers iff equal `|D|`.
    ChromaticBySize,
    /// Components of different distance sets are never isomorphic.
    ComponentUniqueness,
    /// `D` is recovered from the observed degree.
    Recovery,
    MetricAxioms,
    /// `G(S_n, D)` embeds into `G(Z_n^n, D)` through the word encoding.
    Embedding,
}

impl Claim {
    pub const ALL: [Claim; 9] = [
        Claim::Structure,
        Claim::Degree,
        Claim::Connectivity,
        Claim::Chromatic,
        Claim::ChromaticBySize,
        Claim::ComponentUniqueness,
        Claim::Recovery,
        Claim::MetricAxioms,
        Claim::Embedding,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Claim::Structure => "structure",
            Claim::Degree => "degree",
            Claim::Connectivity => "connectivity",
            Claim::Chromatic => "chromatic",
            Claim::ChromaticBySize => "chromatic-by-size",
            Claim::ComponentUniqueness => "component-uniqueness",
            Claim::Recovery => "recovery",
            Claim::MetricAxioms => "metric-axioms",
            Claim::Embedding => "embedding",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Claim::ALL
            .into_iter()
            .find(|c| c.as_str() == s.trim())
            .ok_or_else(|| Error::parse(0, format!("unknown claim {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    /// Only produced when a resource limit stopped the check.
    Inconclusive,
}

/// Outcome of checking one claim on one instance. Serialized as a single
/// JSON line with fields `claim, space, distances, status, evidence, seconds`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: Claim,
    pub space: String,
    /// `None` for claims about the space itself or about all distance sets.
    pub distances: Option<Vec<usize>>,
    pub status: Status,
    pub evidence: Value,
    /// Wall time, only recorded when timing is requested.
    pub seconds: Option<f64>,
}

impl VerificationReport {
    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }
}

/// Canonical emission order: claim, then space, then distance set.
pub fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by(|a, b| {
        (a.claim, &a.space, &a.distances).cmp(&(b.claim, &b.space, &b.distances))
    });
}

/// JSON lines, one report per line, each terminated by `\n`.
pub fn to_json_lines(reports: &[VerificationReport]) -> String {
    reports
        .iter()
        .map(|r| r.to_json_line() + "\n")
        .collect()
}
