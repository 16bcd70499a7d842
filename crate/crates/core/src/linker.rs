//! Queries over the links of a specification.
//!
//! The materializing queries refuse to run while any link of the type they
//! read is illegal, naming the offending links instead of skipping them.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::catalog::RuleId;
use crate::error::ModelError;
use crate::linkmodel::{check_link, ConnectorType, Link, LinkLegality, LinkType};
use crate::metamodel::{ElementId, ElementKind, ElementRef, MesSpec};

/// A link that blocks a query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockingLink {
    pub link: ElementId,
    pub rule: RuleId,
    pub reason: String,
}

impl fmt::Display for BlockingLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} link:{}: {}", self.rule, self.link, self.reason)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkerError {
    #[error("{} {link_type} link(s) are illegal: {}", offending.len(), list(offending))]
    Precondition {
        link_type: LinkType,
        offending: Vec<BlockingLink>,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn list(offending: &[BlockingLink]) -> String {
    offending
        .iter()
        .map(|b| b.link.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Links with `r` as source or target, in document order.
pub fn links_of<'a>(r: &ElementRef, spec: &'a MesSpec) -> Result<Vec<&'a Link>, ModelError> {
    spec.resolve(r)?;
    Ok(spec
        .links()
        .links
        .iter()
        .filter(|l| &l.source == r || &l.target == r)
        .collect())
}

/// Legal links of one type, or the illegal ones as an error.
fn legal_links(spec: &MesSpec, link_type: LinkType) -> Result<Vec<&Link>, LinkerError> {
    let mut legal = Vec::new();
    let mut offending = Vec::new();
    for link in spec
        .links()
        .links
        .iter()
        .filter(|l| l.link_type == link_type)
    {
        match check_link(link, spec)? {
            LinkLegality::Allowed => legal.push(link),
            LinkLegality::Forbidden { rule, reason } => offending.push(BlockingLink {
                link: link.id.clone(),
                rule,
                reason,
            }),
        }
    }
    if offending.is_empty() {
        Ok(legal)
    } else {
        Err(LinkerError::Precondition {
            link_type,
            offending,
        })
    }
}

/// One equivalence link, oriented from the owned element to its reference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalencePair {
    /// The activity or signal.
    pub original: ElementRef,
    /// The activity or signal reference element standing for it.
    pub reference: ElementRef,
    pub link: ElementId,
}

/// One pair per equivalence link, in document order.
pub fn equivalence_pairs(spec: &MesSpec) -> Result<Vec<EquivalencePair>, LinkerError> {
    legal_links(spec, LinkType::Equivalence)?
        .into_iter()
        .map(|link| {
            let source_kind = spec.kind_of(&link.source)?;
            let source_is_reference = matches!(
                source_kind,
                ElementKind::ActivityRef | ElementKind::SignalRef
            );
            let (original, reference) = if source_is_reference {
                (&link.target, &link.source)
            } else {
                (&link.source, &link.target)
            };
            Ok(EquivalencePair {
                original: original.clone(),
                reference: reference.clone(),
                link: link.id.clone(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeploymentEntry {
    pub process_element: ElementRef,
    pub ts_target: ElementRef,
    pub link: ElementId,
}

/// Deployment links grouped by technical-system target.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DeploymentMap {
    /// Sorted by target id; document order within one target.
    pub entries: Vec<DeploymentEntry>,
}

impl DeploymentMap {
    /// Entries deployed to `target`.
    pub fn deployed_to<'a>(
        &'a self,
        target: &'a ElementId,
    ) -> impl Iterator<Item = &'a DeploymentEntry> {
        self.entries
            .iter()
            .filter(move |e| &e.ts_target.id == target)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn deployment_map(spec: &MesSpec) -> Result<DeploymentMap, LinkerError> {
    let mut entries: Vec<DeploymentEntry> = legal_links(spec, LinkType::Deployment)?
        .into_iter()
        .map(|link| DeploymentEntry {
            process_element: link.source.clone(),
            ts_target: link.target.clone(),
            link: link.id.clone(),
        })
        .collect();
    // stable sort keeps document order within a target
    entries.sort_by(|a, b| a.ts_target.id.cmp(&b.ts_target.id));
    Ok(DeploymentMap { entries })
}

/// One data-transfer link: an interface that exists or has to be built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterfaceEntry {
    pub link: ElementId,
    pub connector: Option<ConnectorType>,
    pub source: ElementRef,
    pub target: ElementRef,
}

/// One entry per data-transfer link, in document order.
pub fn data_interfaces(spec: &MesSpec) -> Result<Vec<InterfaceEntry>, LinkerError> {
    Ok(legal_links(spec, LinkType::DataTransfer)?
        .into_iter()
        .map(|link| InterfaceEntry {
            link: link.id.clone(),
            connector: link.connector.clone(),
            source: link.source.clone(),
            target: link.target.clone(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{MINIMAL, YOGURT};
    use crate::linkmodel::PredefinedConnector;
    use crate::parse_spec;

    fn r(s: &str) -> ElementRef {
        s.parse().unwrap()
    }

    #[test]
    fn links_of_in_document_order() {
        let spec = parse_spec(YOGURT).unwrap();
        let ids: Vec<&str> = links_of(&r("mes:a_mes_schedule"), &spec)
            .unwrap()
            .iter()
            .map(|l| l.id.as_str())
            .collect();
        assert_eq!(ids, ["lk_dep_schedule"]);
        let signal: Vec<_> = links_of(&r("ts:sn_lt101"), &spec).unwrap();
        assert_eq!(signal.len(), 1);
        assert!(links_of(&r("pp:pm_cool"), &spec).unwrap().is_empty());
        assert!(links_of(&r("pp:nowhere"), &spec).is_err());
    }

    #[test]
    fn pairs_are_normalized() {
        let spec = parse_spec(YOGURT).unwrap();
        let pairs = equivalence_pairs(&spec).unwrap();
        assert_eq!(pairs.len(), 4);
        for p in &pairs {
            let kind = spec.kind_of(&p.original).unwrap();
            assert!(matches!(kind, ElementKind::Activity | ElementKind::Signal));
        }
        // authored reference -> activity
        assert!(pairs
            .iter()
            .any(|p| p.original == r("pp:qt_label") && p.reference == r("mes:ref_print")));
        // authored activity -> reference
        assert!(pairs
            .iter()
            .any(|p| p.original == r("pp:qt_signal") && p.reference == r("mes:ref_signal")));
    }

    #[test]
    fn illegal_links_block_queries() {
        let text = YOGURT.replace(
            "source=mes:ref_print target=pp:qt_label",
            "source=mes:ref_print target=pp:qt_sample",
        );
        let spec = parse_spec(&text).unwrap();
        match equivalence_pairs(&spec) {
            Err(LinkerError::Precondition { offending, .. }) => {
                assert_eq!(offending.len(), 1);
                assert_eq!(offending[0].rule, RuleId::Lk05);
            }
            other => panic!("{other:?}"),
        }
        // other link types are unaffected
        assert!(deployment_map(&spec).is_ok());
    }

    #[test]
    fn deployments_grouped_by_target() {
        let spec = parse_spec(YOGURT).unwrap();
        let map = deployment_map(&spec).unwrap();
        let ws = ElementId::new("u_workstation").unwrap();
        let on_ws: Vec<&str> = map.deployed_to(&ws).map(|e| e.link.as_str()).collect();
        assert_eq!(on_ws, ["lk_dep_prepare", "lk_dep_produce"]);
        let targets: Vec<&ElementId> = map.entries.iter().map(|e| &e.ts_target.id).collect();
        assert!(targets.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn interfaces_carry_connectors() {
        let spec = parse_spec(YOGURT).unwrap();
        let interfaces = data_interfaces(&spec).unwrap();
        let pda = interfaces
            .iter()
            .find(|i| i.link.as_str() == "lk_dt_pda")
            .unwrap();
        assert_eq!(
            pda.connector,
            Some(ConnectorType::Predefined(PredefinedConnector::Opc))
        );
        let order = interfaces
            .iter()
            .find(|i| i.link.as_str() == "lk_dt_order")
            .unwrap();
        assert_eq!(
            order.connector,
            Some(ConnectorType::Custom("MQTT-bridge".into()))
        );
        let minimal = parse_spec(MINIMAL).unwrap();
        assert!(data_interfaces(&minimal).unwrap().is_empty());
        assert!(equivalence_pairs(&minimal).unwrap().is_empty());
    }
}
