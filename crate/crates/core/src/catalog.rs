//! Stable rule identifiers and severities.
//!
//! Codes are part of the public contract: CLI filters, CI scripts and
//! golden files refer to them by string. Never renumber an existing code.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

/// How bad a finding is. Ordered from most to least severe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Lint,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Lint => "lint",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub struct RuleDoc {
    pub code: &'static str,
    pub severity: Severity,
    pub summary: &'static str,
}

macro_rules! rules {
    ($($variant:ident => $code:literal, $sev:ident, $summary:literal;)+) => {
        /// Identifier of one well-formedness rule.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum RuleId {
            $($variant,)+
        }

        impl RuleId {
            /// Every rule, in code order.
            pub const ALL: &'static [RuleId] = &[$(RuleId::$variant,)+];

            pub fn doc(self) -> RuleDoc {
                match self {
                    $(RuleId::$variant => RuleDoc {
                        code: $code,
                        severity: Severity::$sev,
                        summary: $summary,
                    },)+
                }
            }
        }
    };
}

rules! {
    Spec01 => "W-SPEC-01", Error, "sub-model missing or duplicated";
    Ts01 => "W-TS-01", Error, "technical system lacks areas, units or signals";
    Ts02 => "W-TS-02", Error, "signal is not attached to a unit";
    Ts03 => "W-TS-03", Error, "technical system hierarchy is not a plant-rooted tree";
    Pp01 => "W-PP-01", Error, "process model has fewer than 3 flow objects";
    Pp02 => "W-PP-02", Error, "process model has fewer than 2 events";
    Pp03 => "W-PP-03", Error, "process model has fewer than 2 connecting objects";
    Pp04 => "W-PP-04", Error, "process model has no activities";
    Mes01 => "W-MES-01", Error, "MES model needs at least one pool and one lane";
    Gw01 => "W-GW-01", Error, "exclusive/parallel split needs 1 incoming and at least 2 outgoing sequence flows";
    Gw02 => "W-GW-02", Error, "inclusive split needs 1 incoming and at least 3 outgoing sequence flows";
    Gw03 => "W-GW-03", Error, "merge needs at least 2 incoming and exactly 1 outgoing sequence flow";
    Gw04 => "W-GW-04", Error, "gateway carries an information flow";
    Ref01 => "W-REF-01", Error, "reference element targets an element of the wrong kind";
    Ref02 => "W-REF-02", Error, "reference element targets an element in the wrong model";
    Ref03 => "W-REF-03", Error, "reference element name differs from its target";
    Ref04 => "W-REF-04", Warning, "reference element has no equivalence link";
    Lk01 => "W-LK-01", Error, "link endpoint kind can never be linked";
    Lk02 => "W-LK-02", Error, "link joins two elements of the same view";
    Lk03 => "W-LK-03", Error, "illegal data transfer endpoint";
    Lk04 => "W-LK-04", Error, "illegal equivalence endpoints";
    Lk05 => "W-LK-05", Error, "equivalence endpoints have different names";
    Lk06 => "W-LK-06", Error, "illegal deployment direction or target";
    Lk07 => "W-LK-07", Warning, "link model is empty";
    Sub01 => "W-SUB-01", Error, "subprocess containment cycle";
    Act01 => "L-ACT-01", Lint, "declared degree differs from computed degree";
    Pp01Lint => "L-PP-01", Lint, "diagram lacks a start or stop event";
}

impl RuleId {
    pub fn code(self) -> &'static str {
        self.doc().code
    }

    pub fn severity(self) -> Severity {
        self.doc().severity
    }

    pub fn summary(self) -> &'static str {
        self.doc().summary
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl Serialize for RuleId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown rule code `{0}`")]
pub struct UnknownRule(pub String);

impl FromStr for RuleId {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .iter()
            .copied()
            .find(|r| r.code().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}
