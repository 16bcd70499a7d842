use std::fmt::Write;

use serde::Serialize;

use super::ReportError;
use crate::metamodel::{Activity, Diagram, ElementId, MesSpec, ProcessModel, ViewTag};

/// One diagram in the subprocess hierarchy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    /// Activity owning this subprocess; `None` for the top level.
    pub owner: Option<ElementId>,
    pub name: String,
    pub level: usize,
    /// The owning activity sits outside the sequence flow and is invoked
    /// through link or start events.
    pub callable: bool,
    pub activities: usize,
    pub children: Vec<TreeNode>,
}

impl TreeNode {
    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(TreeNode::node_count)
            .sum::<usize>()
    }

    /// Depth-first search by owning activity id.
    pub fn find(&self, owner: &str) -> Option<&TreeNode> {
        if self.owner.as_ref().is_some_and(|o| o.as_str() == owner) {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(owner))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramTree {
    pub view: ViewTag,
    pub root: TreeNode,
}

pub fn diagram_tree(spec: &MesSpec, view: ViewTag) -> Result<DiagramTree, ReportError> {
    let model = spec
        .process_model(view)
        .ok_or(ReportError::UnsupportedView(view))?;
    Ok(DiagramTree {
        view,
        root: node(
            spec,
            None,
            &model.diagram,
            0,
            format!("{} top level", view.label()),
        ),
    })
}

fn node(
    spec: &MesSpec,
    owner: Option<&Activity>,
    d: &Diagram,
    level: usize,
    name: String,
) -> TreeNode {
    let callable = owner.is_some_and(|a| {
        let deg = spec.degrees_of(&a.id);
        deg.in_sf == 0 && deg.out_sf == 0
    });
    let children = d
        .activities
        .iter()
        .filter_map(|a| {
            a.subprocess
                .as_ref()
                .map(|sub| node(spec, Some(a), sub, level + 1, a.name.clone()))
        })
        .collect();
    TreeNode {
        owner: owner.map(|a| a.id.clone()),
        name,
        level,
        callable,
        activities: d.activities.len(),
        children,
    }
}

pub fn render_tree(tree: &DiagramTree) -> String {
    fn go(out: &mut String, n: &TreeNode) {
        let indent = "  ".repeat(n.level);
        let _ = write!(out, "{indent}[{}] {}", n.level, n.name);
        if let Some(owner) = &n.owner {
            let _ = write!(out, " ({owner})");
        }
        if n.callable {
            out.push_str(" callable");
        }
        let _ = writeln!(out, ", {} activities", n.activities);
        for c in &n.children {
            go(out, c);
        }
    }
    let mut out = String::new();
    go(&mut out, &tree.root);
    out
}

/// Resolves a `/`-separated diagram path. Each segment names an activity
/// with a subprocess by id or by exact name, starting from the top level.
/// The empty path is the top level.
pub fn resolve_diagram<'a>(
    model: &'a ProcessModel,
    path: &str,
) -> Result<(Option<&'a Activity>, &'a Diagram), ReportError> {
    let fail = |reason: String| ReportError::UnknownDiagram {
        path: path.to_string(),
        reason,
    };
    let mut owner = None;
    let mut diagram = &model.diagram;
    for segment in path.split('/').filter(|s| !s.is_empty()) {
        let by_id = diagram.activities.iter().find(|a| a.id.as_str() == segment);
        let activity = match by_id {
            Some(a) => a,
            None => {
                let named: Vec<&Activity> = diagram
                    .activities
                    .iter()
                    .filter(|a| a.name == segment)
                    .collect();
                match named.as_slice() {
                    [a] => *a,
                    [] => return Err(fail(format!("no activity `{segment}` in this diagram"))),
                    _ => {
                        return Err(fail(format!(
                            "`{segment}` names {} activities; use an id",
                            named.len()
                        )))
                    }
                }
            }
        };
        diagram = activity
            .subprocess
            .as_ref()
            .ok_or_else(|| fail(format!("activity `{}` has no subprocess", activity.id)))?;
        owner = Some(activity);
    }
    Ok((owner, diagram))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{MINIMAL, YOGURT};
    use crate::parse_spec;

    #[test]
    fn yogurt_pp_tree() {
        let spec = parse_spec(YOGURT).unwrap();
        let tree = diagram_tree(&spec, ViewTag::Pp).unwrap();
        let quality = tree.root.find("a_quality").unwrap();
        assert!(quality.callable);
        assert_eq!(quality.level, 1);
        assert!(!tree.root.find("a_prepare").unwrap().callable);
        let with_sub = spec
            .pp()
            .all_activities()
            .iter()
            .filter(|a| a.subprocess.is_some())
            .count();
        assert_eq!(tree.root.node_count(), 1 + with_sub);
    }

    #[test]
    fn mes_quality_test_children() {
        let spec = parse_spec(YOGURT).unwrap();
        let tree = diagram_tree(&spec, ViewTag::Mes).unwrap();
        let names: Vec<&str> = tree
            .root
            .find("a_mes_quality")
            .unwrap()
            .children
            .iter()
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(names, ["Collect Test Results", "Create Sample"]);
    }

    #[test]
    fn flat_spec_and_ts() {
        let spec = parse_spec(MINIMAL).unwrap();
        assert_eq!(
            diagram_tree(&spec, ViewTag::Pp).unwrap().root.node_count(),
            1
        );
        assert_eq!(
            diagram_tree(&spec, ViewTag::Ts),
            Err(ReportError::UnsupportedView(ViewTag::Ts))
        );
    }

    #[test]
    fn paths_by_name_and_id() {
        let spec = parse_spec(YOGURT).unwrap();
        let (owner, d) = resolve_diagram(spec.mes(), "Quality Test/q_create").unwrap();
        assert_eq!(owner.unwrap().name, "Create Sample");
        assert_eq!(d.activity_refs.len(), 2);
        assert!(resolve_diagram(spec.mes(), "Nope").is_err());
        assert!(resolve_diagram(spec.pp(), "a_quality/qt_label").is_err());
    }
}
