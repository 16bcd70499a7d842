use std::collections::HashMap;

use super::process::{ConnectionKind, DegreeVector, Diagram, ProcessModel};
use super::technical::{TechnicalSystemModel, TsNode};
use super::{ElementId, ElementKind, ElementRef, ViewTag};
use crate::error::{ModelError, ResolveError, ResolveErrorKind};
use crate::linkmodel::{Endpoint, Link, LinkModel};

/// Where an element lives inside its view.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scope {
    /// Inside a process diagram; `owner` is the subprocess activity, or
    /// `None` for the top level of the model.
    Diagram { owner: Option<ElementId> },
    /// Model-wide process element (pools and lanes).
    Model,
    /// Technical-system node with its parent.
    Technical { parent: Option<ElementId> },
}

/// Index entry describing one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementInfo {
    pub view: ViewTag,
    pub kind: ElementKind,
    pub name: Option<String>,
    pub scope: Scope,
    pub link_event: bool,
}

impl ElementInfo {
    pub fn endpoint(&self) -> Endpoint {
        Endpoint {
            kind: self.kind,
            view: self.view,
            link_event: self.link_event,
        }
    }
}

/// A complete specification: MES model, production-process model,
/// technical-system model and link model.
///
/// Construction resolves every id, so a `MesSpec` never holds dangling
/// references or duplicate ids. It is immutable afterwards; use
/// [`MesSpec::into_parts`] to derive a modified copy.
#[derive(Debug, Clone)]
pub struct MesSpec {
    mes: ProcessModel,
    pp: ProcessModel,
    ts: TechnicalSystemModel,
    links: LinkModel,
    index: HashMap<ElementId, ElementInfo>,
    degrees: HashMap<ElementId, DegreeVector>,
    link_ids: HashMap<ElementId, usize>,
}

impl PartialEq for MesSpec {
    fn eq(&self, other: &Self) -> bool {
        fn sorted(links: &LinkModel) -> Vec<&Link> {
            let mut v: Vec<&Link> = links.links.iter().collect();
            v.sort_by(|a, b| a.id.cmp(&b.id));
            v
        }
        self.mes == other.mes
            && self.pp == other.pp
            && self.ts == other.ts
            && sorted(&self.links) == sorted(&other.links)
    }
}

impl Eq for MesSpec {}

impl MesSpec {
    pub fn new(
        mut mes: ProcessModel,
        mut pp: ProcessModel,
        mut ts: TechnicalSystemModel,
        links: LinkModel,
    ) -> Result<Self, Vec<ResolveError>> {
        mes.canonicalize();
        pp.canonicalize();
        ts.canonicalize();

        let mut builder = IndexBuilder::default();
        builder.add_ts(&ts.root, None);
        builder.add_process(ViewTag::Mes, &mes);
        builder.add_process(ViewTag::Pp, &pp);
        let mut link_ids = HashMap::new();
        for (i, link) in links.links.iter().enumerate() {
            if builder.index.contains_key(&link.id) || link_ids.contains_key(&link.id) {
                builder.errors.push(duplicate(&link.id));
            } else {
                link_ids.insert(link.id.clone(), i);
            }
        }

        builder.resolve_process(ViewTag::Mes, &mes);
        builder.resolve_process(ViewTag::Pp, &pp);
        for link in &links.links {
            for end in [&link.source, &link.target] {
                if let Err(e) = lookup(&builder.index, end) {
                    builder
                        .errors
                        .push(dangling(&link.id, format!("link `{}`: {e}", link.id)));
                }
            }
        }

        if !builder.errors.is_empty() {
            return Err(builder.errors);
        }
        Ok(MesSpec {
            mes,
            pp,
            ts,
            links,
            index: builder.index,
            degrees: builder.degrees,
            link_ids,
        })
    }

    pub fn into_parts(self) -> (ProcessModel, ProcessModel, TechnicalSystemModel, LinkModel) {
        (self.mes, self.pp, self.ts, self.links)
    }

    pub fn mes(&self) -> &ProcessModel {
        &self.mes
    }

    pub fn pp(&self) -> &ProcessModel {
        &self.pp
    }

    pub fn ts(&self) -> &TechnicalSystemModel {
        &self.ts
    }

    pub fn links(&self) -> &LinkModel {
        &self.links
    }

    /// The process model stored in the slot for `view`; `None` for TS.
    pub fn process_model(&self, view: ViewTag) -> Option<&ProcessModel> {
        match view {
            ViewTag::Mes => Some(&self.mes),
            ViewTag::Pp => Some(&self.pp),
            ViewTag::Ts => None,
        }
    }

    pub fn info(&self, id: &ElementId) -> Option<&ElementInfo> {
        self.index.get(id)
    }

    pub fn element_ref(&self, id: &ElementId) -> Option<ElementRef> {
        self.index
            .get(id)
            .map(|i| ElementRef::new(i.view, id.clone()))
    }

    pub fn link(&self, id: &ElementId) -> Option<&Link> {
        self.link_ids.get(id).map(|&i| &self.links.links[i])
    }

    /// Number of elements across the three views (links excluded).
    pub fn element_count(&self) -> usize {
        self.index.len()
    }

    pub fn element_ids(&self) -> impl Iterator<Item = &ElementId> {
        self.index.keys()
    }

    /// Looks up `r`, requiring the element to live in `r.view`.
    pub fn resolve(&self, r: &ElementRef) -> Result<&ElementInfo, ModelError> {
        lookup(&self.index, r)
    }

    pub fn kind_of(&self, r: &ElementRef) -> Result<ElementKind, ModelError> {
        self.resolve(r).map(|i| i.kind)
    }

    pub fn view_of(&self, r: &ElementRef) -> Result<ViewTag, ModelError> {
        self.resolve(r).map(|i| i.view)
    }

    /// Connection counts of a flow object or data object within its diagram.
    pub fn compute_degrees(&self, r: &ElementRef) -> Result<DegreeVector, ModelError> {
        let info = self.resolve(r)?;
        if !(info.kind.is_flow_object() || info.kind == ElementKind::DataObject) {
            return Err(ModelError::UnsupportedKind {
                id: r.id.clone(),
                kind: info.kind,
            });
        }
        Ok(self.degrees_of(&r.id))
    }

    /// Degrees by id without kind checks; zero for unconnected ids.
    pub fn degrees_of(&self, id: &ElementId) -> DegreeVector {
        self.degrees.get(id).copied().unwrap_or_default()
    }
}

fn lookup<'a>(
    index: &'a HashMap<ElementId, ElementInfo>,
    r: &ElementRef,
) -> Result<&'a ElementInfo, ModelError> {
    match index.get(&r.id) {
        Some(info) if info.view == r.view => Ok(info),
        _ => Err(ModelError::NotFound(r.clone())),
    }
}

fn duplicate(id: &ElementId) -> ResolveError {
    ResolveError {
        kind: ResolveErrorKind::DuplicateId,
        subject: id.clone(),
        message: format!("duplicate id `{id}`"),
    }
}

fn dangling(subject: &ElementId, message: String) -> ResolveError {
    ResolveError {
        kind: ResolveErrorKind::DanglingRef,
        subject: subject.clone(),
        message,
    }
}

#[derive(Default)]
struct IndexBuilder {
    index: HashMap<ElementId, ElementInfo>,
    degrees: HashMap<ElementId, DegreeVector>,
    errors: Vec<ResolveError>,
}

impl IndexBuilder {
    fn insert(&mut self, id: &ElementId, info: ElementInfo) {
        if self.index.contains_key(id) {
            self.errors.push(duplicate(id));
        } else {
            self.index.insert(id.clone(), info);
        }
    }

    fn add_ts(&mut self, node: &TsNode, parent: Option<&ElementId>) {
        self.insert(
            &node.id,
            ElementInfo {
                view: ViewTag::Ts,
                kind: node.kind.element_kind(),
                name: Some(node.name.clone()),
                scope: Scope::Technical {
                    parent: parent.cloned(),
                },
                link_event: false,
            },
        );
        for child in &node.children {
            self.add_ts(child, Some(&node.id));
        }
    }

    fn add_process(&mut self, view: ViewTag, model: &ProcessModel) {
        for pool in &model.pools {
            self.insert(
                &pool.id,
                info(view, ElementKind::Pool, Some(&pool.name), Scope::Model),
            );
            for lane in &pool.lanes {
                self.insert(
                    &lane.id,
                    info(view, ElementKind::Lane, Some(&lane.name), Scope::Model),
                );
            }
        }
        model.diagram.walk(&mut |owner, diagram, _| {
            let scope = Scope::Diagram {
                owner: owner.map(|a| a.id.clone()),
            };
            self.add_diagram(view, diagram, scope);
        });
    }

    fn add_diagram(&mut self, view: ViewTag, d: &Diagram, scope: Scope) {
        for a in &d.activities {
            self.insert(
                &a.id,
                info(view, ElementKind::Activity, Some(&a.name), scope.clone()),
            );
        }
        for e in &d.events {
            let mut i = info(view, ElementKind::Event, e.name.as_deref(), scope.clone());
            i.link_event = e.is_link_event();
            self.insert(&e.id, i);
        }
        for g in &d.gateways {
            self.insert(&g.id, info(view, ElementKind::Gateway, None, scope.clone()));
        }
        for r in &d.activity_refs {
            self.insert(
                &r.id,
                info(view, ElementKind::ActivityRef, Some(&r.name), scope.clone()),
            );
        }
        for r in &d.signal_refs {
            self.insert(
                &r.id,
                info(view, ElementKind::SignalRef, Some(&r.name), scope.clone()),
            );
        }
        for o in &d.data_objects {
            self.insert(
                &o.id,
                info(view, ElementKind::DataObject, Some(&o.name), scope.clone()),
            );
        }
        for c in &d.connections {
            let kind = match c.kind {
                ConnectionKind::Sequence => ElementKind::SequenceFlow,
                ConnectionKind::Message => ElementKind::MessageFlow,
                ConnectionKind::Data => ElementKind::DataFlow,
                ConnectionKind::Association => ElementKind::Association,
            };
            self.insert(&c.id, info(view, kind, None, scope.clone()));
        }
        for t in &d.annotations {
            self.insert(
                &t.id,
                info(view, ElementKind::TextAnnotation, None, scope.clone()),
            );
        }
        for g in &d.groups {
            self.insert(
                &g.id,
                info(view, ElementKind::Group, g.name.as_deref(), scope.clone()),
            );
        }
    }

    fn resolve_process(&mut self, view: ViewTag, model: &ProcessModel) {
        let mut errors = Vec::new();
        let mut degrees: Vec<(ElementId, ElementId, ConnectionKind)> = Vec::new();
        let index = &self.index;
        let local = |subject: &ElementId,
                     what: &str,
                     id: &ElementId|
         -> Result<&ElementInfo, ResolveError> {
            match index.get(id) {
                None => Err(dangling(subject, format!("{what} `{id}` does not exist"))),
                Some(i) if i.view != view => Err(dangling(
                    subject,
                    format!(
                        "{what} `{id}` lies in the {} model, expected {}",
                        i.view.label(),
                        view.label()
                    ),
                )),
                Some(i) => Ok(i),
            }
        };

        model.diagram.walk(&mut |owner, diagram, _| {
            let here = owner.map(|a| &a.id);
            for c in &diagram.connections {
                let mut ok = true;
                for (what, end) in [("source", &c.source), ("target", &c.target)] {
                    let what = format!("{} {what}", c.kind.literal().replace('_', " "));
                    match local(&c.id, &what, end) {
                        Err(e) => {
                            errors.push(e);
                            ok = false;
                        }
                        Ok(i) if i.kind.is_connecting() => {
                            errors.push(dangling(
                                &c.id,
                                format!("{what} `{end}` is itself a connecting object"),
                            ));
                            ok = false;
                        }
                        Ok(i) => {
                            if let Scope::Diagram { owner } = &i.scope {
                                if owner.as_ref() != here {
                                    errors.push(dangling(
                                        &c.id,
                                        format!("{what} `{end}` lies in a different diagram"),
                                    ));
                                    ok = false;
                                }
                            }
                        }
                    }
                }
                if ok {
                    degrees.push((c.source.clone(), c.target.clone(), c.kind));
                }
            }
            for a in &diagram.activities {
                if let Some(lane) = &a.lane {
                    match local(&a.id, "lane", lane) {
                        Ok(i) if !i.kind.is_swimlane() => errors.push(dangling(
                            &a.id,
                            format!("lane `{lane}` is a {}, not a pool or lane", i.kind),
                        )),
                        Err(e) => errors.push(e),
                        _ => {}
                    }
                }
                if let Some(callee) = &a.calls {
                    match local(&a.id, "called activity", callee) {
                        Ok(i) if i.kind != ElementKind::Activity => errors.push(dangling(
                            &a.id,
                            format!("called element `{callee}` is a {}, not an activity", i.kind),
                        )),
                        Err(e) => errors.push(e),
                        _ => {}
                    }
                }
            }
            for g in &diagram.groups {
                if g.members.is_empty() {
                    errors.push(ResolveError {
                        kind: ResolveErrorKind::EmptyGroup,
                        subject: g.id.clone(),
                        message: format!("group `{}` has no members", g.id),
                    });
                }
                for m in &g.members {
                    if let Err(e) = local(&g.id, "group member", m) {
                        errors.push(e);
                    }
                }
            }
            let targets = diagram
                .activity_refs
                .iter()
                .map(|r| (&r.id, &r.target))
                .chain(diagram.signal_refs.iter().map(|r| (&r.id, &r.target)));
            for (id, target) in targets {
                if !index.contains_key(target) {
                    errors.push(dangling(
                        id,
                        format!("reference target `{target}` does not exist"),
                    ));
                }
            }
        });

        for (source, target, kind) in degrees {
            let out = self.degrees.entry(source).or_default();
            match kind {
                ConnectionKind::Sequence => out.out_sf += 1,
                ConnectionKind::Message => out.out_mf += 1,
                ConnectionKind::Data => out.out_df += 1,
                ConnectionKind::Association => {}
            }
            let inc = self.degrees.entry(target).or_default();
            match kind {
                ConnectionKind::Sequence => inc.in_sf += 1,
                ConnectionKind::Message => inc.in_mf += 1,
                ConnectionKind::Data => inc.in_df += 1,
                ConnectionKind::Association => {}
            }
        }
        self.errors.extend(errors);
    }
}

fn info(view: ViewTag, kind: ElementKind, name: Option<&str>, scope: Scope) -> ElementInfo {
    ElementInfo {
        view,
        kind,
        name: name.map(str::to_string),
        scope,
        link_event: false,
    }
}
