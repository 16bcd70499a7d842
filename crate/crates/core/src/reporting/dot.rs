//! Graphviz DOT rendering.
//!
//! Production-process elements are filled gray and MES elements white.
//! Links between views have no graphical form and are emitted as comments.

use std::collections::HashSet;
use std::fmt::Write;

use super::tree::resolve_diagram;
use super::ReportError;
use crate::metamodel::*;

const PP_FILL: &str = "lightgray";
const MES_FILL: &str = "white";

fn fill(view: ViewTag) -> &'static str {
    match view {
        ViewTag::Pp => PP_FILL,
        _ => MES_FILL,
    }
}

/// Quotes `s` as a DOT string literal.
fn q(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => {}
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Comment text must not end the line early.
fn comment(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}

/// Renders one diagram of a process view, or the technical-system
/// hierarchy for [`ViewTag::Ts`]. `diagram` is a path as accepted by
/// [`resolve_diagram`]; `None` selects the top level.
pub fn export_dot(
    spec: &MesSpec,
    view: ViewTag,
    diagram: Option<&str>,
) -> Result<String, ReportError> {
    let Some(model) = spec.process_model(view) else {
        if let Some(path) = diagram.filter(|p| !p.is_empty()) {
            return Err(ReportError::UnknownDiagram {
                path: path.to_string(),
                reason: "the technical system has a single hierarchy".into(),
            });
        }
        return Ok(ts_dot(spec));
    };
    let (owner, d) = resolve_diagram(model, diagram.unwrap_or(""))?;

    let mut out = String::new();
    let title = match owner {
        Some(a) => format!("{} / {}", view.label(), a.name),
        None => format!("{} top level", view.label()),
    };
    let _ = writeln!(out, "digraph {} {{", q(view.as_str()));
    let _ = writeln!(
        out,
        "  graph [rankdir=LR, label={}, labelloc=t, fontname=\"Helvetica\"];",
        q(&title)
    );
    let _ = writeln!(
        out,
        "  node [fontname=\"Helvetica\", style=filled, fillcolor={}];",
        q(fill(view))
    );
    let _ = writeln!(out, "  edge [fontname=\"Helvetica\"];");

    let mut placed: HashSet<&ElementId> = HashSet::new();
    if owner.is_none() && !model.pools.is_empty() {
        let mut pools: Vec<&Pool> = model.pools.iter().collect();
        pools.sort_by(|a, b| (a.rank, &a.id).cmp(&(b.rank, &b.id)));
        for pool in pools {
            let _ = writeln!(out, "  subgraph {} {{", q(&format!("cluster_{}", pool.id)));
            let _ = writeln!(out, "    label={};", q(&pool.name));
            let _ = writeln!(out, "    style=solid;");
            let _ = writeln!(
                out,
                "    {} [shape=point, style=invis];",
                q(&format!("{}.anchor", pool.id))
            );
            let mut lanes: Vec<&Lane> = pool.lanes.iter().collect();
            lanes.sort_by(|a, b| (a.rank, &a.id).cmp(&(b.rank, &b.id)));
            for lane in lanes {
                let _ = writeln!(
                    out,
                    "    subgraph {} {{",
                    q(&format!("cluster_{}", lane.id))
                );
                let _ = writeln!(out, "      label={};", q(&lane.name));
                let _ = writeln!(out, "      style=dashed;");
                let _ = writeln!(
                    out,
                    "      {} [shape=point, style=invis];",
                    q(&format!("{}.anchor", lane.id))
                );
                for a in d
                    .activities
                    .iter()
                    .filter(|a| a.lane.as_ref() == Some(&lane.id))
                {
                    let _ = writeln!(out, "      {}", activity(view, a));
                    placed.insert(&a.id);
                }
                let _ = writeln!(out, "    }}");
            }
            for a in d
                .activities
                .iter()
                .filter(|a| a.lane.as_ref() == Some(&pool.id))
            {
                let _ = writeln!(out, "    {}", activity(view, a));
                placed.insert(&a.id);
            }
            let _ = writeln!(out, "  }}");
        }
    }

    for a in d.activities.iter().filter(|a| !placed.contains(&a.id)) {
        let _ = writeln!(out, "  {}", activity(view, a));
    }
    for e in &d.events {
        let _ = writeln!(out, "  {}", event(e));
    }
    for g in &d.gateways {
        let glyph = match g.exec {
            GatewayExec::Exclusive => "X",
            GatewayExec::Inclusive => "O",
            GatewayExec::Parallel => "+",
        };
        let _ = writeln!(
            out,
            "  {} [shape=diamond, label={}, tooltip={}];",
            q(g.id.as_str()),
            q(glyph),
            q(g.behavior.literal())
        );
    }
    for r in &d.activity_refs {
        let target_view = spec.info(&r.target).map_or(view, |i| i.view);
        let _ = writeln!(
            out,
            "  {} [shape=box, style=\"rounded,filled,dashed\", fillcolor={}, label={}];",
            q(r.id.as_str()),
            q(fill(target_view)),
            q(&format!("{}\n[ref {}]", r.name, r.target))
        );
    }
    for r in &d.signal_refs {
        let _ = writeln!(
            out,
            "  {} [shape=box, style=\"filled,dashed\", label={}];",
            q(r.id.as_str()),
            q(&format!("{}\n[signal {}]", r.name, r.target))
        );
    }
    for o in &d.data_objects {
        let suffix = match o.kind {
            DataObjectKind::Single => "",
            DataObjectKind::Multi => "\n[multi]",
            DataObjectKind::Store => "\n[store]",
        };
        let _ = writeln!(
            out,
            "  {} [shape=note, label={}];",
            q(o.id.as_str()),
            q(&format!("{}{suffix}", o.name))
        );
    }
    for t in &d.annotations {
        let _ = writeln!(
            out,
            "  {} [shape=plaintext, style=\"\", label={}];",
            q(t.id.as_str()),
            q(&t.text)
        );
    }
    for c in &d.connections {
        let style = match c.kind {
            ConnectionKind::Sequence => "style=solid",
            ConnectionKind::Message => "style=dashed",
            ConnectionKind::Data => "style=dotted",
            ConnectionKind::Association => "style=dotted, arrowhead=none",
        };
        let _ = writeln!(
            out,
            "  {} -> {} [{style}, id={}];",
            q(c.source.as_str()),
            q(c.target.as_str()),
            q(c.id.as_str())
        );
    }
    for g in &d.groups {
        let members: Vec<&str> = g.members.iter().map(ElementId::as_str).collect();
        let name = g
            .name
            .as_deref()
            .map(|n| format!(" {}", comment(n)))
            .unwrap_or_default();
        let _ = writeln!(out, "  // group {}{name}: {}", g.id, members.join(", "));
    }

    let here: HashSet<&ElementId> = diagram_ids(d, owner.is_none().then_some(model));
    for link in &spec.links().links {
        let touches = [&link.source, &link.target]
            .iter()
            .any(|end| end.view == view && here.contains(&end.id));
        if touches {
            let connector = link
                .connector
                .as_ref()
                .map(|c| format!(" [{}]", comment(&c.to_string())))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "  // link {} {} {} -> {}{connector}",
                link.id, link.link_type, link.source, link.target
            );
        }
    }
    out.push_str("}\n");
    Ok(out)
}

fn diagram_ids<'a>(d: &'a Diagram, model: Option<&'a ProcessModel>) -> HashSet<&'a ElementId> {
    let mut ids: HashSet<&ElementId> = HashSet::new();
    ids.extend(d.activities.iter().map(|x| &x.id));
    ids.extend(d.events.iter().map(|x| &x.id));
    ids.extend(d.gateways.iter().map(|x| &x.id));
    ids.extend(d.activity_refs.iter().map(|x| &x.id));
    ids.extend(d.signal_refs.iter().map(|x| &x.id));
    ids.extend(d.data_objects.iter().map(|x| &x.id));
    ids.extend(d.groups.iter().map(|x| &x.id));
    if let Some(m) = model {
        for p in &m.pools {
            ids.insert(&p.id);
            ids.extend(p.lanes.iter().map(|l| &l.id));
        }
    }
    ids
}

fn activity(view: ViewTag, a: &Activity) -> String {
    let mut label = format!("{}\n[{}]", a.name, a.exec);
    if a.repetition != Repetition::None {
        let _ = write!(label, " [{}]", a.repetition);
    }
    if a.subprocess.is_some() {
        label.push_str(" [+]");
    }
    format!(
        "{} [shape=box, style=\"rounded,filled\", fillcolor={}, label={}];",
        q(a.id.as_str()),
        q(fill(view)),
        q(&label)
    )
}

fn event(e: &Event) -> String {
    let (shape, extra) = match e.exec {
        EventExec::Start => ("circle", ""),
        EventExec::Stop => ("doublecircle", ""),
        EventExec::IntermediateInterrupting => ("circle", ", penwidth=2"),
        EventExec::IntermediateNonInterrupting => ("circle", ", style=\"filled,dashed\""),
    };
    let mut label = e.name.clone().unwrap_or_default();
    if let Some(b) = e.behavior {
        if !label.is_empty() {
            label.push('\n');
        }
        let _ = write!(label, "[{b}]");
    }
    format!(
        "{} [shape={shape}{extra}, label={}];",
        q(e.id.as_str()),
        q(&label)
    )
}

fn ts_dot(spec: &MesSpec) -> String {
    let mut out = String::from("digraph \"ts\" {\n");
    out.push_str(
        "  graph [rankdir=TB, label=\"TS hierarchy\", labelloc=t, fontname=\"Helvetica\"];\n",
    );
    out.push_str("  node [shape=box, fontname=\"Helvetica\"];\n");
    spec.ts().root.walk(&mut |node, parent, _| {
        let _ = writeln!(
            out,
            "  {} [label={}];",
            q(node.id.as_str()),
            q(&format!("{}\n[{}]", node.name, node.kind))
        );
        if let Some(p) = parent {
            let _ = writeln!(
                out,
                "  {} -> {} [style=dotted, arrowhead=none];",
                q(p.id.as_str()),
                q(node.id.as_str())
            );
        }
    });
    out.push_str("}\n");
    out
}

/// Indented text rendering of the technical-system hierarchy.
pub fn render_ts_tree(spec: &MesSpec) -> String {
    let mut out = String::new();
    spec.ts().root.walk(&mut |node, _, depth| {
        let _ = write!(
            out,
            "{}{} ({} {})",
            "  ".repeat(depth),
            node.name,
            node.kind,
            node.id
        );
        if !node.attrs.is_empty() {
            let attrs: Vec<String> = node.attrs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = write!(out, " [{}]", attrs.join(", "));
        }
        out.push('\n');
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::YOGURT;
    use crate::parse_spec;

    #[test]
    fn pp_activities_are_gray() {
        let spec = parse_spec(YOGURT).unwrap();
        let dot = export_dot(&spec, ViewTag::Pp, None).unwrap();
        let setup = dot.lines().find(|l| l.contains("\"a_setup\" [")).unwrap();
        assert!(setup.contains("fillcolor=\"lightgray\""));
        assert!(setup.contains("[manual]"));
        let activities = dot
            .lines()
            .filter(|l| l.contains("style=\"rounded,filled\""))
            .count();
        assert_eq!(activities, 5);
    }

    #[test]
    fn gateways_and_stop_events() {
        let spec = parse_spec(YOGURT).unwrap();
        let dot = export_dot(&spec, ViewTag::Pp, Some("Prepare milk")).unwrap();
        assert!(dot.contains("\"gw_pm_split\" [shape=diamond, label=\"X\""));
        assert!(dot.contains("\"pm_stop\" [shape=doublecircle"));
        assert!(dot.contains("// link lk_eq_lt101"));
        assert_eq!(
            dot,
            export_dot(&spec, ViewTag::Pp, Some("a_prepare")).unwrap()
        );
    }

    #[test]
    fn mes_pools_are_clusters_in_rank_order() {
        let spec = parse_spec(YOGURT).unwrap();
        let dot = export_dot(&spec, ViewTag::Mes, None).unwrap();
        let erp = dot.find("cluster_p_erp").unwrap();
        let mes = dot.find("cluster_p_mes").unwrap();
        let pcs = dot.find("cluster_p_pcs").unwrap();
        assert!(erp < mes && mes < pcs);
        assert!(dot.contains("fillcolor=\"white\""));
    }

    #[test]
    fn ts_views() {
        let spec = parse_spec(YOGURT).unwrap();
        assert!(render_ts_tree(&spec).contains("      Tank 101 (unit u_tank101)"));
        assert!(export_dot(&spec, ViewTag::Ts, None)
            .unwrap()
            .contains("style=dotted"));
        assert!(export_dot(&spec, ViewTag::Ts, Some("x")).is_err());
    }

    #[test]
    fn labels_are_escaped() {
        assert_eq!(q("a\"b\\c\nd"), "\"a\\\"b\\\\c\\nd\"");
    }
}
