use std::collections::BTreeMap;

use super::{ElementId, ElementKind};

literal_enum! {
    TsKind {
        Plant => "plant",
        Area => "area",
        Unit => "unit",
        Signal => "signal",
        UserDefinedLayer => "user_defined_layer",
    }
}

impl TsKind {
    pub fn element_kind(self) -> ElementKind {
        match self {
            TsKind::Plant => ElementKind::Plant,
            TsKind::Area => ElementKind::Area,
            TsKind::Unit => ElementKind::Unit,
            TsKind::Signal => ElementKind::Signal,
            TsKind::UserDefinedLayer => ElementKind::UserDefinedLayer,
        }
    }
}

/// One node of the technical-system hierarchy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TsNode {
    pub id: ElementId,
    pub kind: TsKind,
    pub name: String,
    /// Free-form quality/metadata/semantics attributes; used on signals.
    pub attrs: BTreeMap<String, String>,
    pub children: Vec<TsNode>,
}

impl TsNode {
    pub fn new(id: ElementId, kind: TsKind, name: impl Into<String>) -> Self {
        TsNode {
            id,
            kind,
            name: name.into(),
            attrs: BTreeMap::new(),
            children: Vec::new(),
        }
    }

    pub fn with_children(mut self, children: Vec<TsNode>) -> Self {
        self.children = children;
        self
    }

    /// Pre-order walk; the callback gets each node with its parent.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a TsNode, Option<&'a TsNode>, usize)) {
        fn go<'a>(
            node: &'a TsNode,
            parent: Option<&'a TsNode>,
            depth: usize,
            f: &mut impl FnMut(&'a TsNode, Option<&'a TsNode>, usize),
        ) {
            f(node, parent, depth);
            for child in &node.children {
                go(child, Some(node), depth + 1, f);
            }
        }
        go(self, None, 0, f);
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(TsNode::node_count).sum::<usize>()
    }

    fn canonicalize(&mut self) {
        self.children.sort_by(|a, b| a.id.cmp(&b.id));
        for child in &mut self.children {
            child.canonicalize();
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TechnicalSystemModel {
    /// Hierarchy root; a well-formed model has a plant here.
    pub root: TsNode,
}

impl TechnicalSystemModel {
    pub fn new(root: TsNode) -> Self {
        TechnicalSystemModel { root }
    }

    pub fn count(&self, kind: TsKind) -> usize {
        let mut n = 0;
        self.root.walk(&mut |node, _, _| {
            if node.kind == kind {
                n += 1;
            }
        });
        n
    }

    pub(crate) fn canonicalize(&mut self) {
        self.root.canonicalize();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> ElementId {
        ElementId::new(s).unwrap()
    }

    #[test]
    fn tree_has_one_edge_per_non_root_node() {
        let ts =
            TechnicalSystemModel::new(TsNode::new(id("p"), TsKind::Plant, "Plant").with_children(
                vec![
                    TsNode::new(id("a"), TsKind::Area, "Area").with_children(vec![
                        TsNode::new(id("u"), TsKind::Unit, "Unit").with_children(vec![
                            TsNode::new(id("s1"), TsKind::Signal, "S1"),
                            TsNode::new(id("s2"), TsKind::Signal, "S2"),
                        ]),
                    ]),
                ],
            ));
        let mut edges = 0;
        ts.root
            .walk(&mut |_, parent, _| edges += usize::from(parent.is_some()));
        assert_eq!(edges, ts.root.node_count() - 1);
        assert_eq!(ts.count(TsKind::Signal), 2);
    }
}
