use std::fmt::Write;

use serde::Serialize;

use crate::linker::{
    data_interfaces, deployment_map, equivalence_pairs, DeploymentMap, EquivalencePair,
    InterfaceEntry, LinkerError,
};
use crate::metamodel::MesSpec;

/// Every link of the model, split by type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkReport {
    pub equivalences: Vec<EquivalencePair>,
    pub deployments: DeploymentMap,
    pub interfaces: Vec<InterfaceEntry>,
}

/// Requires every link to be legal.
pub fn link_report(spec: &MesSpec) -> Result<LinkReport, LinkerError> {
    Ok(LinkReport {
        equivalences: equivalence_pairs(spec)?,
        deployments: deployment_map(spec)?,
        interfaces: data_interfaces(spec)?,
    })
}

pub fn render_deployments(map: &DeploymentMap) -> String {
    let mut out = String::new();
    let mut current = None;
    for e in &map.entries {
        if current != Some(&e.ts_target) {
            let _ = writeln!(out, "{}", e.ts_target);
            current = Some(&e.ts_target);
        }
        let _ = writeln!(out, "  {} ({})", e.process_element, e.link);
    }
    out
}

pub fn render_interfaces(interfaces: &[InterfaceEntry]) -> String {
    let mut out = String::new();
    for i in interfaces {
        let connector = i
            .connector
            .as_ref()
            .map_or_else(|| "-".to_string(), ToString::to_string);
        let _ = writeln!(out, "{} {} -> {} [{connector}]", i.link, i.source, i.target);
    }
    out
}

pub fn render_link_report(report: &LinkReport) -> String {
    let mut out = String::from("equivalence\n");
    for p in &report.equivalences {
        let _ = writeln!(out, "  {} {} = {}", p.link, p.original, p.reference);
    }
    out.push_str("deployment\n");
    for line in render_deployments(&report.deployments).lines() {
        let _ = writeln!(out, "  {line}");
    }
    out.push_str("data_transfer\n");
    for line in render_interfaces(&report.interfaces).lines() {
        let _ = writeln!(out, "  {line}");
    }
    out
}
