//! Cross-view links and the rules deciding which links are legal.
//!
//! Rules are evaluated in a fixed order so that one link yields at most one
//! rule id: never-linkable kinds (W-LK-01), same view (W-LK-02), then the
//! rule specific to the link type (W-LK-03/04/06), then equivalence name
//! equality (W-LK-05).

use std::fmt;

use serde::{Serialize, Serializer};

use crate::catalog::RuleId;
use crate::error::ModelError;
use crate::metamodel::{ElementId, ElementKind, ElementRef, MesSpec, ViewTag};

literal_enum! {
    LinkType {
        DataTransfer => "data_transfer",
        Equivalence => "equivalence",
        Deployment => "deployment",
    }
}

literal_enum! {
    PredefinedConnector {
        Opc => "opc",
        File => "file",
        Database => "database",
        WebService => "web_service",
    }
}

impl PredefinedConnector {
    pub fn label(self) -> &'static str {
        match self {
            PredefinedConnector::Opc => "OPC",
            PredefinedConnector::File => "File",
            PredefinedConnector::Database => "Database",
            PredefinedConnector::WebService => "WebService",
        }
    }
}

/// Interface technology behind a link.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConnectorType {
    Predefined(PredefinedConnector),
    /// User-defined connector. The name is non-empty and does not collide
    /// with a predefined literal; use [`ConnectorType::from_name`].
    Custom(String),
}

impl ConnectorType {
    /// Predefined literals match case-insensitively; anything else is custom.
    pub fn from_name(name: &str) -> Option<ConnectorType> {
        if name.is_empty() {
            return None;
        }
        let lower = name.to_ascii_lowercase();
        Some(match PredefinedConnector::from_literal(&lower) {
            Some(p) => ConnectorType::Predefined(p),
            None => ConnectorType::Custom(name.to_string()),
        })
    }

    /// Name as written in the interchange format.
    pub fn literal(&self) -> &str {
        match self {
            ConnectorType::Predefined(p) => p.literal(),
            ConnectorType::Custom(name) => name,
        }
    }
}

impl fmt::Display for ConnectorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnectorType::Predefined(p) => f.write_str(p.label()),
            ConnectorType::Custom(name) => f.write_str(name),
        }
    }
}

impl Serialize for ConnectorType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Link {
    pub id: ElementId,
    pub link_type: LinkType,
    pub source: ElementRef,
    pub target: ElementRef,
    pub connector: Option<ConnectorType>,
}

impl Link {
    pub fn touches(&self, element: &ElementId) -> bool {
        &self.source.id == element || &self.target.id == element
    }
}

/// Links in authored order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinkModel {
    pub links: Vec<Link>,
}

impl LinkModel {
    pub fn new(links: Vec<Link>) -> Self {
        LinkModel { links }
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkLegality {
    Allowed,
    Forbidden { rule: RuleId, reason: String },
}

impl LinkLegality {
    pub fn is_allowed(&self) -> bool {
        matches!(self, LinkLegality::Allowed)
    }

    pub fn rule(&self) -> Option<RuleId> {
        match self {
            LinkLegality::Allowed => None,
            LinkLegality::Forbidden { rule, .. } => Some(*rule),
        }
    }

    fn forbid(rule: RuleId, reason: impl Into<String>) -> Self {
        LinkLegality::Forbidden {
            rule,
            reason: reason.into(),
        }
    }
}

/// What the legality rules need to know about one link end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Endpoint {
    pub kind: ElementKind,
    pub view: ViewTag,
    /// Event whose behavior is `link`.
    pub link_event: bool,
}

impl Endpoint {
    pub fn new(kind: ElementKind, view: ViewTag) -> Self {
        Endpoint {
            kind,
            view,
            link_event: false,
        }
    }

    fn never_linkable(&self) -> bool {
        self.link_event
            || self.kind.is_connecting()
            || matches!(
                self.kind,
                ElementKind::Gateway | ElementKind::TextAnnotation
            )
    }

    fn describe(&self) -> String {
        if self.link_event {
            "link event".to_string()
        } else {
            self.kind.as_str().replace('_', " ")
        }
    }
}

fn data_transfer_kind(kind: ElementKind) -> bool {
    matches!(
        kind,
        ElementKind::Activity
            | ElementKind::Event
            | ElementKind::DataObject
            | ElementKind::Pool
            | ElementKind::Lane
            | ElementKind::Area
            | ElementKind::Unit
            | ElementKind::Signal
            | ElementKind::UserDefinedLayer
    )
}

fn unordered(a: ElementKind, b: ElementKind, x: ElementKind, y: ElementKind) -> bool {
    (a == x && b == y) || (a == y && b == x)
}

/// Kind- and view-level verdict for a link from `source` to `target`.
/// Name equality of equivalence links is checked by [`check_link`].
pub fn evaluate(source: Endpoint, target: Endpoint, link_type: LinkType) -> LinkLegality {
    for end in [source, target] {
        if end.never_linkable() {
            return LinkLegality::forbid(
                RuleId::Lk01,
                format!("a {} cannot be linked to another view", end.describe()),
            );
        }
    }
    if source.view == target.view {
        return LinkLegality::forbid(
            RuleId::Lk02,
            format!("both endpoints are in the {} view", source.view.label()),
        );
    }
    match link_type {
        LinkType::DataTransfer => {
            let groups = source.kind == ElementKind::Group && target.kind == ElementKind::Group;
            if groups {
                return LinkLegality::Allowed;
            }
            for end in [source, target] {
                if !data_transfer_kind(end.kind) {
                    return LinkLegality::forbid(
                        RuleId::Lk03,
                        format!("a {} cannot take part in a data transfer", end.describe()),
                    );
                }
            }
            LinkLegality::Allowed
        }
        LinkType::Equivalence => {
            let technical = source.view == ViewTag::Ts || target.view == ViewTag::Ts;
            let (ok, expected) = if technical {
                (
                    unordered(
                        source.kind,
                        target.kind,
                        ElementKind::Signal,
                        ElementKind::SignalRef,
                    ),
                    "a signal and a signal reference",
                )
            } else {
                (
                    unordered(
                        source.kind,
                        target.kind,
                        ElementKind::Activity,
                        ElementKind::ActivityRef,
                    ),
                    "an activity and an activity reference",
                )
            };
            if ok {
                LinkLegality::Allowed
            } else {
                LinkLegality::forbid(
                    RuleId::Lk04,
                    format!(
                        "equivalence between {} and {} must join {expected}",
                        source.describe(),
                        target.describe()
                    ),
                )
            }
        }
        LinkType::Deployment => {
            if !source.view.is_process() || target.view != ViewTag::Ts {
                return LinkLegality::forbid(
                    RuleId::Lk06,
                    "deployment must point from a process element to the technical system",
                );
            }
            if source.kind != ElementKind::Activity {
                return LinkLegality::forbid(
                    RuleId::Lk06,
                    format!(
                        "only activities can be deployed, not a {}",
                        source.describe()
                    ),
                );
            }
            if !matches!(
                target.kind,
                ElementKind::Area | ElementKind::Unit | ElementKind::UserDefinedLayer
            ) {
                return LinkLegality::forbid(
                    RuleId::Lk06,
                    format!(
                        "activities deploy to areas, units or user-defined layers, not a {}",
                        target.describe()
                    ),
                );
            }
            LinkLegality::Allowed
        }
    }
}

/// Full legality check of one link against the spec it belongs to.
pub fn check_link(link: &Link, spec: &MesSpec) -> Result<LinkLegality, ModelError> {
    let source = spec.resolve(&link.source)?;
    let target = spec.resolve(&link.target)?;
    let verdict = evaluate(source.endpoint(), target.endpoint(), link.link_type);
    if verdict.is_allowed() && link.link_type == LinkType::Equivalence && source.name != target.name
    {
        return Ok(LinkLegality::forbid(
            RuleId::Lk05,
            format!(
                "equivalent elements must share a name: {:?} vs {:?}",
                source.name.as_deref().unwrap_or(""),
                target.name.as_deref().unwrap_or("")
            ),
        ));
    }
    Ok(verdict)
}

/// Verdict for a kind pair, independent of concrete instances.
///
/// A triple is allowed iff some placement of the two kinds into different
/// views is allowed. Otherwise the verdict of the first placement is
/// reported, or the forced same-view placement when the kinds cannot be in
/// different views at all.
pub fn kind_verdict(source: ElementKind, target: ElementKind, link_type: LinkType) -> LinkLegality {
    let mut first = None;
    for &sv in source.possible_views() {
        for &tv in target.possible_views() {
            if sv == tv {
                continue;
            }
            let verdict = evaluate(
                Endpoint::new(source, sv),
                Endpoint::new(target, tv),
                link_type,
            );
            if verdict.is_allowed() {
                return verdict;
            }
            first.get_or_insert(verdict);
        }
    }
    first.unwrap_or_else(|| {
        evaluate(
            Endpoint::new(source, source.possible_views()[0]),
            Endpoint::new(target, target.possible_views()[0]),
            link_type,
        )
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegalityEntry {
    pub source: ElementKind,
    pub target: ElementKind,
    pub link_type: LinkType,
    pub verdict: LinkLegality,
}

/// Every (source kind, target kind, link type) combination with its verdict.
pub fn legality_table() -> Vec<LegalityEntry> {
    let mut table = Vec::with_capacity(ElementKind::ALL.len().pow(2) * LinkType::ALL.len());
    for source in ElementKind::ALL {
        for target in ElementKind::ALL {
            for &link_type in LinkType::ALL {
                table.push(LegalityEntry {
                    source,
                    target,
                    link_type,
                    verdict: kind_verdict(source, target, link_type),
                });
            }
        }
    }
    table
}
