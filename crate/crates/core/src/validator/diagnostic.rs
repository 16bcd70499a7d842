use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::catalog::{RuleId, Severity};
use crate::metamodel::{ElementId, ElementRef, ViewTag};

/// Model-level subjects for findings that concern a whole sub-model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelScope {
    Spec,
    View(ViewTag),
    Links,
}

impl fmt::Display for ModelScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelScope::Spec => f.write_str("spec"),
            ModelScope::View(v) => f.write_str(v.as_str()),
            ModelScope::Links => f.write_str("links"),
        }
    }
}

/// What a diagnostic is about.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Subject {
    Element(ElementRef),
    Link(ElementId),
    Model(ModelScope),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Element(r) => write!(f, "{r}"),
            Subject::Link(id) => write!(f, "link:{id}"),
            Subject::Model(scope) => write!(f, "{scope}"),
        }
    }
}

impl Serialize for Subject {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// One recorded rule violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub rule: RuleId,
    pub severity: Severity,
    pub subject: Subject,
    pub message: String,
    /// A second element involved, such as a reference target.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub related: Option<ElementRef>,
}

impl Diagnostic {
    pub fn new(rule: RuleId, subject: Subject, message: impl Into<String>) -> Self {
        Diagnostic {
            rule,
            severity: rule.severity(),
            subject,
            message: message.into(),
            related: None,
        }
    }

    pub fn with_related(mut self, related: ElementRef) -> Self {
        self.related = Some(related);
        self
    }

    /// Ordering used for reports: severity, rule code, subject, message.
    pub fn report_order(&self, other: &Self) -> Ordering {
        self.severity
            .cmp(&other.severity)
            .then_with(|| self.rule.code().cmp(other.rule.code()))
            .then_with(|| self.subject.to_string().cmp(&other.subject.to_string()))
            .then_with(|| self.message.cmp(&other.message))
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: {}",
            self.severity, self.rule, self.subject, self.message
        )
    }
}

/// One line per diagnostic, in the given order.
pub fn render_text(diagnostics: &[Diagnostic]) -> String {
    diagnostics.iter().map(|d| format!("{d}\n")).collect()
}

/// Most severe finding, if any.
pub fn worst_severity(diagnostics: &[Diagnostic]) -> Option<Severity> {
    diagnostics.iter().map(|d| d.severity).min()
}
