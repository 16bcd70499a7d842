//! Rule implementations. Each function covers one group of catalog codes
//! and pushes its findings; ordering is imposed by the caller.

use std::collections::{BTreeSet, HashSet};

use petgraph::algo::tarjan_scc;
use petgraph::graphmap::DiGraphMap;

use super::diagnostic::{Diagnostic, ModelScope, Subject};
use crate::catalog::RuleId;
use crate::error::ModelError;
use crate::linkmodel::{check_link, LinkLegality, LinkType};
use crate::metamodel::*;

fn element(view: ViewTag, id: &ElementId) -> Subject {
    Subject::Element(ElementRef::new(view, id.clone()))
}

fn model(view: ViewTag) -> Subject {
    Subject::Model(ModelScope::View(view))
}

/// W-SPEC-01: each process slot must hold a model of the matching role.
pub(super) fn spec_roles(spec: &MesSpec, out: &mut Vec<Diagnostic>) {
    for view in [ViewTag::Mes, ViewTag::Pp] {
        let m = spec.process_model(view).expect("process view");
        if m.role != view {
            out.push(Diagnostic::new(
                RuleId::Spec01,
                model(view),
                format!(
                    "the {} slot holds a {} model; the {} model is missing",
                    view.label(),
                    m.role.label(),
                    view.label()
                ),
            ));
        }
    }
}

/// W-TS-01..03.
pub(super) fn technical(spec: &MesSpec, out: &mut Vec<Diagnostic>) {
    let ts = spec.ts();
    let missing: Vec<&str> = [
        (TsKind::Area, "areas"),
        (TsKind::Unit, "units"),
        (TsKind::Signal, "signals"),
    ]
    .into_iter()
    .filter(|(k, _)| ts.count(*k) == 0)
    .map(|(_, name)| name)
    .collect();
    if !missing.is_empty() {
        out.push(Diagnostic::new(
            RuleId::Ts01,
            model(ViewTag::Ts),
            format!("the technical system has no {}", missing.join(", ")),
        ));
    }

    ts.root.walk(&mut |node, parent, _| {
        let subject = || element(ViewTag::Ts, &node.id);
        match (node.kind, parent) {
            (TsKind::Plant, Some(p)) => out.push(Diagnostic::new(
                RuleId::Ts03,
                subject(),
                format!(
                    "plant `{}` is nested below `{}`; only the root may be a plant",
                    node.id, p.id
                ),
            )),
            (kind, None) if kind != TsKind::Plant => out.push(Diagnostic::new(
                RuleId::Ts03,
                subject(),
                format!("the hierarchy root is a {kind}, not a plant"),
            )),
            (TsKind::Signal, Some(p)) if p.kind != TsKind::Unit => out.push(
                Diagnostic::new(
                    RuleId::Ts02,
                    subject(),
                    format!(
                        "signal `{}` sits under {} `{}`, not under a unit",
                        node.id, p.kind, p.id
                    ),
                )
                .with_related(ElementRef::new(ViewTag::Ts, p.id.clone())),
            ),
            _ => {}
        }
        if node.kind == TsKind::Signal && !node.children.is_empty() {
            out.push(Diagnostic::new(
                RuleId::Ts03,
                subject(),
                format!("signal `{}` has child nodes; signals are leaves", node.id),
            ));
        }
    });
}

/// W-PP-01..04 on the top-level diagram of a process model.
pub(super) fn cardinality(view: ViewTag, m: &ProcessModel, out: &mut Vec<Diagnostic>) {
    let d = &m.diagram;
    let flow_objects = d.flow_object_count();
    if flow_objects < 3 {
        out.push(Diagnostic::new(
            RuleId::Pp01,
            model(view),
            format!("{} flow objects, at least 3 required", flow_objects),
        ));
    } else {
        if d.events.len() < 2 {
            out.push(Diagnostic::new(
                RuleId::Pp02,
                model(view),
                format!("{} events, at least 2 required", d.events.len()),
            ));
        }
        if d.activities.is_empty() {
            out.push(Diagnostic::new(RuleId::Pp04, model(view), "no activities"));
        }
    }
    if d.connections.len() < 2 {
        out.push(Diagnostic::new(
            RuleId::Pp03,
            model(view),
            format!(
                "{} connecting objects, at least 2 required",
                d.connections.len()
            ),
        ));
    }
}

/// W-MES-01: swimlanes exist in the MES model and only there.
pub(super) fn swimlanes(spec: &MesSpec, out: &mut Vec<Diagnostic>) {
    let mes = spec.mes();
    if mes.pools.is_empty() || mes.lane_count() == 0 {
        out.push(Diagnostic::new(
            RuleId::Mes01,
            model(ViewTag::Mes),
            format!(
                "{} pools and {} lanes, at least one of each required",
                mes.pools.len(),
                mes.lane_count()
            ),
        ));
    }
    if !spec.pp().pools.is_empty() {
        out.push(Diagnostic::new(
            RuleId::Mes01,
            model(ViewTag::Pp),
            "pools and lanes belong to the MES model only",
        ));
    }
}

/// Which of W-GW-01..03 a gateway with the given sequence-flow degrees
/// violates, if any.
pub fn gateway_arity_rule(
    exec: GatewayExec,
    behavior: GatewayBehavior,
    in_sf: u32,
    out_sf: u32,
) -> Option<RuleId> {
    match behavior {
        GatewayBehavior::Split => {
            let (rule, min_out) = match exec {
                GatewayExec::Inclusive => (RuleId::Gw02, 3),
                GatewayExec::Exclusive | GatewayExec::Parallel => (RuleId::Gw01, 2),
            };
            (in_sf != 1 || out_sf < min_out).then_some(rule)
        }
        GatewayBehavior::Merge => (in_sf < 2 || out_sf != 1).then_some(RuleId::Gw03),
    }
}

/// W-GW-01..04 for one gateway.
pub fn check_gateway(
    view: ViewTag,
    g: &Gateway,
    spec: &MesSpec,
) -> Result<Vec<Diagnostic>, ModelError> {
    let r = ElementRef::new(view, g.id.clone());
    let info = spec.resolve(&r)?;
    if info.kind != ElementKind::Gateway {
        return Err(ModelError::UnsupportedKind {
            id: g.id.clone(),
            kind: info.kind,
        });
    }
    let deg = spec.compute_degrees(&r)?;
    let mut out = Vec::new();
    if let Some(rule) = gateway_arity_rule(g.exec, g.behavior, deg.in_sf, deg.out_sf) {
        out.push(Diagnostic::new(
            rule,
            Subject::Element(r.clone()),
            format!(
                "{} {} has {} incoming and {} outgoing sequence flows",
                g.exec, g.behavior, deg.in_sf, deg.out_sf
            ),
        ));
    }
    if deg.information_flows() > 0 {
        out.push(Diagnostic::new(
            RuleId::Gw04,
            Subject::Element(r),
            format!(
                "gateway carries {} message flows and {} data flows",
                deg.in_mf + deg.out_mf,
                deg.in_df + deg.out_df
            ),
        ));
    }
    Ok(out)
}

pub(super) fn gateways(view: ViewTag, m: &ProcessModel, spec: &MesSpec, out: &mut Vec<Diagnostic>) {
    m.diagram.walk(&mut |_, d, _| {
        for g in &d.gateways {
            out.extend(check_gateway(view, g, spec).expect("gateway of a resolved spec"));
        }
    });
}

/// W-REF-01..04 for every reference element of the model in `view`,
/// nested fragments included.
pub fn check_references(view: ViewTag, spec: &MesSpec) -> Vec<Diagnostic> {
    let Some(m) = spec.process_model(view) else {
        return Vec::new();
    };
    let equivalent: HashSet<&ElementId> = spec
        .links()
        .links
        .iter()
        .filter(|l| l.link_type == LinkType::Equivalence)
        .flat_map(|l| [&l.source, &l.target])
        .filter(|end| end.view == view)
        .map(|end| &end.id)
        .collect();

    let mut out = Vec::new();
    m.diagram.walk(&mut |_, d, _| {
        let refs = d
            .activity_refs
            .iter()
            .map(|r| (ElementKind::ActivityRef, &r.id, &r.name, &r.target))
            .chain(
                d.signal_refs
                    .iter()
                    .map(|r| (ElementKind::SignalRef, &r.id, &r.name, &r.target)),
            );
        for (kind, id, name, target) in refs {
            out.extend(reference(spec, view, kind, id, name, target));
            if !equivalent.contains(id) {
                out.push(Diagnostic::new(
                    RuleId::Ref04,
                    element(view, id),
                    format!("{kind} `{id}` has no equivalence link"),
                ));
            }
        }
    });
    out
}

fn reference(
    spec: &MesSpec,
    view: ViewTag,
    kind: ElementKind,
    id: &ElementId,
    name: &str,
    target: &ElementId,
) -> Option<Diagnostic> {
    let info = spec.info(target)?;
    let related = ElementRef::new(info.view, target.clone());
    let expected = match kind {
        ElementKind::ActivityRef => ElementKind::Activity,
        _ => ElementKind::Signal,
    };
    let (rule, message) = if info.kind != expected {
        (
            RuleId::Ref01,
            format!(
                "{kind} `{id}` targets {} `{target}`, expected a {expected}",
                info.kind
            ),
        )
    } else if info.view == view {
        (
            RuleId::Ref02,
            format!(
                "{kind} `{id}` targets `{target}` in its own {} model; it must stand for an element of another view",
                view.label()
            ),
        )
    } else if info.name.as_deref() != Some(name) {
        (
            RuleId::Ref03,
            format!(
                "{kind} `{id}` is named {:?} but its target is named {:?}",
                name,
                info.name.as_deref().unwrap_or("")
            ),
        )
    } else {
        return None;
    };
    Some(Diagnostic::new(rule, element(view, id), message).with_related(related))
}

/// W-LK-01..07.
pub(super) fn links(spec: &MesSpec, out: &mut Vec<Diagnostic>) {
    if spec.links().is_empty() {
        out.push(Diagnostic::new(
            RuleId::Lk07,
            Subject::Model(ModelScope::Links),
            "the link model is empty",
        ));
    }
    for link in &spec.links().links {
        match check_link(link, spec).expect("link endpoints of a resolved spec") {
            LinkLegality::Allowed => {}
            LinkLegality::Forbidden { rule, reason } => out.push(
                Diagnostic::new(
                    rule,
                    Subject::Link(link.id.clone()),
                    format!(
                        "{} {} -> {}: {reason}",
                        link.link_type, link.source, link.target
                    ),
                )
                .with_related(link.source.clone()),
            ),
        }
    }
}

/// W-SUB-01: cycles over subprocess containment and call edges.
pub(super) fn containment_cycles(spec: &MesSpec, out: &mut Vec<Diagnostic>) {
    let mut graph: DiGraphMap<&str, ()> = DiGraphMap::new();
    for m in [spec.mes(), spec.pp()] {
        for a in m.all_activities() {
            graph.add_node(a.id.as_str());
            if let Some(callee) = &a.calls {
                graph.add_edge(a.id.as_str(), callee.as_str(), ());
            }
            if let Some(sub) = &a.subprocess {
                for child in &sub.activities {
                    graph.add_edge(a.id.as_str(), child.id.as_str(), ());
                }
            }
        }
    }
    for scc in tarjan_scc(&graph) {
        let cyclic = scc.len() > 1 || graph.contains_edge(scc[0], scc[0]);
        if !cyclic {
            continue;
        }
        let members: BTreeSet<&str> = scc.into_iter().collect();
        let first = ElementId::new(*members.first().expect("non-empty")).expect("valid id");
        let subject = spec.element_ref(&first).expect("activity of the spec");
        out.push(Diagnostic::new(
            RuleId::Sub01,
            Subject::Element(subject),
            format!(
                "activities {} contain or call each other in a cycle",
                members.into_iter().collect::<Vec<_>>().join(", ")
            ),
        ));
    }
}

/// L-ACT-01: declared degrees must agree with the computed ones.
pub(super) fn declared_degrees(
    view: ViewTag,
    m: &ProcessModel,
    spec: &MesSpec,
    out: &mut Vec<Diagnostic>,
) {
    m.diagram.walk(&mut |_, d, _| {
        let declared = d
            .activities
            .iter()
            .map(|a| (&a.id, &a.declared))
            .chain(d.gateways.iter().map(|g| (&g.id, &g.declared)));
        for (id, declared) in declared {
            if declared.is_empty() {
                continue;
            }
            let mismatches = declared.mismatches(&spec.degrees_of(id));
            if mismatches.is_empty() {
                continue;
            }
            let text: Vec<String> = mismatches
                .iter()
                .map(|(key, d, c)| format!("{key} declared {d}, computed {c}"))
                .collect();
            out.push(Diagnostic::new(
                RuleId::Act01,
                element(view, id),
                text.join("; "),
            ));
        }
    });
}

/// L-PP-01: every diagram should have a start and a stop event.
pub(super) fn start_stop(view: ViewTag, m: &ProcessModel, out: &mut Vec<Diagnostic>) {
    m.diagram.walk(&mut |owner, d, _| {
        let missing: Vec<&str> = [(EventExec::Start, "start"), (EventExec::Stop, "stop")]
            .into_iter()
            .filter(|(e, _)| !d.has_event(*e))
            .map(|(_, n)| n)
            .collect();
        if missing.is_empty() {
            return;
        }
        let (subject, what) = match owner {
            Some(a) => (element(view, &a.id), format!("subprocess of `{}`", a.id)),
            None => (model(view), "top-level diagram".to_string()),
        };
        out.push(Diagnostic::new(
            RuleId::Pp01Lint,
            subject,
            format!("{what} has no {} event", missing.join(" or ")),
        ));
    });
}
