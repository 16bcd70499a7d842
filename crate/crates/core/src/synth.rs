//! Synthetic specifications for property tests and benchmarks.
//!
//! [`random_spec`] builds small well-formed specifications from a seed,
//! [`inject_defect`] breaks one rule on purpose and [`scaled_spec`] builds
//! a large regular specification of a requested size.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::RuleId;
use crate::error::ResolveErrorKind;
use crate::linkmodel::{ConnectorType, Link, LinkModel, LinkType, PredefinedConnector};
use crate::metamodel::*;

/// Upper bound on [`random_spec`] element counts.
pub const MAX_RANDOM_ELEMENTS: usize = 50;

const NAMES: &[&str] = &[
    "Mix",
    "Heat milk",
    "Quote \"this\"",
    "C:\\recipes\\yogurt",
    "Line\nbreak",
    "Tab\tstop",
    "Ünïcödé ✓",
    "  padded  ",
    "# not a comment",
    "key=value",
    "Check",
    "Bottling",
];

const CUSTOM_CONNECTORS: &[&str] = &["MQTT-bridge", "Fieldbus \"X\"", "REST\\v2"];

type Parts = (ProcessModel, ProcessModel, TechnicalSystemModel, LinkModel);

struct Gen<'r, R: Rng> {
    rng: &'r mut R,
    next: usize,
}

impl<R: Rng> Gen<'_, R> {
    fn id(&mut self, prefix: &str) -> ElementId {
        self.next += 1;
        let sep = *["", "_", "-", "."].choose(self.rng).expect("non-empty");
        ElementId::new(format!("{prefix}{sep}{}", self.next)).expect("generated ids are valid")
    }

    fn name(&mut self) -> String {
        let base = NAMES.choose(self.rng).expect("non-empty");
        if self.rng.random_bool(0.5) {
            format!("{base} {}", self.rng.random_range(1..100))
        } else {
            base.to_string()
        }
    }

    fn pick<T: Copy>(&mut self, items: &[T]) -> T {
        *items.choose(self.rng).expect("non-empty choice")
    }

    fn technical(&mut self) -> TechnicalSystemModel {
        let mut plant = TsNode::new(self.id("plant"), TsKind::Plant, self.name());
        for _ in 0..self.rng.random_range(1..=2) {
            let mut area = TsNode::new(self.id("ar"), TsKind::Area, self.name());
            for _ in 0..self.rng.random_range(1..=2) {
                let mut unit = TsNode::new(self.id("u"), TsKind::Unit, self.name());
                for _ in 0..self.rng.random_range(1..=2) {
                    let mut signal = TsNode::new(self.id("sn"), TsKind::Signal, self.name());
                    if self.rng.random_bool(0.3) {
                        signal.attrs.insert("quantity".into(), self.name());
                    }
                    unit.children.push(signal);
                }
                area.children.push(unit);
            }
            plant.children.push(area);
        }
        if self.rng.random_bool(0.3) {
            let mut udl = TsNode::new(self.id("udl"), TsKind::UserDefinedLayer, self.name());
            udl.children
                .push(TsNode::new(self.id("u"), TsKind::Unit, self.name()));
            plant.children.push(udl);
        }
        TechnicalSystemModel::new(plant)
    }

    fn activity(&mut self, lanes: &[ElementId]) -> Activity {
        let mut a = Activity::new(self.id("a"), self.name());
        a.exec = self.pick(ActivityExec::ALL);
        a.repetition = self.pick(Repetition::ALL);
        a.status = self.pick(RequirementStatus::ALL);
        if !lanes.is_empty() {
            a.lane = Some(lanes.choose(self.rng).expect("non-empty").clone());
        }
        a
    }

    fn flow(
        &mut self,
        d: &mut Diagram,
        kind: ConnectionKind,
        source: &ElementId,
        target: &ElementId,
    ) {
        let prefix = match kind {
            ConnectionKind::Sequence => "sf",
            ConnectionKind::Message => "mf",
            ConnectionKind::Data => "df",
            ConnectionKind::Association => "as",
        };
        let id = self.id(prefix);
        d.connections.push(Connection {
            id,
            kind,
            source: source.clone(),
            target: target.clone(),
        });
    }

    /// A start → activities (→ gateway block) → stop diagram with optional
    /// decorations and nested subprocesses.
    fn diagram(&mut self, depth: usize, lanes: &[ElementId]) -> Diagram {
        let mut d = Diagram::default();
        let start = Event {
            id: self.id("e"),
            name: self.rng.random_bool(0.3).then(|| self.name()),
            exec: EventExec::Start,
            behavior: self.pick(&[None, Some(EventBehavior::Timer), Some(EventBehavior::Link)]),
        };
        let mut last = start.id.clone();
        d.events.push(start);

        for _ in 0..self.rng.random_range(1..=2) {
            let a = self.activity(lanes);
            self.flow(&mut d, ConnectionKind::Sequence, &last, &a.id);
            last = a.id.clone();
            d.activities.push(a);
        }

        if depth == 0 && self.rng.random_bool(0.4) {
            let exec = self.pick(GatewayExec::ALL);
            let split = Gateway {
                id: self.id("g"),
                exec,
                behavior: GatewayBehavior::Split,
                declared: DeclaredDegrees::default(),
            };
            let merge = Gateway {
                id: self.id("g"),
                exec,
                behavior: GatewayBehavior::Merge,
                declared: DeclaredDegrees::default(),
            };
            self.flow(&mut d, ConnectionKind::Sequence, &last, &split.id);
            let branches = if exec == GatewayExec::Inclusive { 3 } else { 2 };
            for _ in 0..branches {
                let a = self.activity(lanes);
                self.flow(&mut d, ConnectionKind::Sequence, &split.id, &a.id);
                self.flow(&mut d, ConnectionKind::Sequence, &a.id, &merge.id);
                d.activities.push(a);
            }
            last = merge.id.clone();
            d.gateways.push(split);
            d.gateways.push(merge);
        }

        if self.rng.random_bool(0.2) {
            let e = Event {
                id: self.id("e"),
                name: Some(self.name()),
                exec: self.pick(&[
                    EventExec::IntermediateInterrupting,
                    EventExec::IntermediateNonInterrupting,
                ]),
                behavior: self.pick(&[
                    None,
                    Some(EventBehavior::Timer),
                    Some(EventBehavior::Error),
                ]),
            };
            self.flow(&mut d, ConnectionKind::Sequence, &last, &e.id);
            last = e.id.clone();
            d.events.push(e);
        }

        let stop = Event {
            id: self.id("e"),
            name: None,
            exec: EventExec::Stop,
            behavior: self.pick(&[None, None, Some(EventBehavior::Link)]),
        };
        self.flow(&mut d, ConnectionKind::Sequence, &last, &stop.id);
        d.events.push(stop);

        let ids: Vec<ElementId> = d.activities.iter().map(|a| a.id.clone()).collect();
        if self.rng.random_bool(0.3) {
            let o = DataObject {
                id: self.id("do"),
                name: self.name(),
                kind: self.pick(DataObjectKind::ALL),
            };
            let a = self.pick_id(&ids);
            if self.rng.random_bool(0.5) {
                self.flow(&mut d, ConnectionKind::Data, &o.id, &a);
            } else {
                self.flow(&mut d, ConnectionKind::Data, &a, &o.id);
            }
            d.data_objects.push(o);
        }
        if ids.len() >= 2 && self.rng.random_bool(0.3) {
            let (a, b) = (ids[0].clone(), ids[ids.len() - 1].clone());
            self.flow(&mut d, ConnectionKind::Message, &a, &b);
        }
        if self.rng.random_bool(0.2) {
            let t = TextAnnotation {
                id: self.id("t"),
                text: self.name(),
            };
            let a = self.pick_id(&ids);
            self.flow(&mut d, ConnectionKind::Association, &t.id, &a);
            d.annotations.push(t);
        }
        if self.rng.random_bool(0.2) {
            let members = vec![self.pick_id(&ids)];
            d.groups.push(Group {
                id: self.id("gr"),
                name: self.rng.random_bool(0.5).then(|| self.name()),
                members,
            });
        }

        if depth < 2 {
            for i in 0..d.activities.len() {
                if self.rng.random_bool(0.25) {
                    let sub = self.diagram(depth + 1, &[]);
                    d.activities[i].subprocess = Some(sub);
                }
            }
        }
        d
    }

    fn pick_id(&mut self, ids: &[ElementId]) -> ElementId {
        ids.choose(self.rng).expect("non-empty").clone()
    }

    fn process(&mut self, role: ViewTag) -> ProcessModel {
        let mut m = ProcessModel::new(role);
        let mut lanes = Vec::new();
        if role == ViewTag::Mes {
            for rank in 0..self.rng.random_range(1..=2u32) {
                let mut pool = Pool {
                    id: self.id("pl"),
                    name: self.name(),
                    rank,
                    lanes: Vec::new(),
                };
                let n = if rank == 0 {
                    1
                } else {
                    self.rng.random_range(0..=1)
                };
                for lane_rank in 0..n {
                    pool.lanes.push(Lane {
                        id: self.id("ln"),
                        name: self.name(),
                        rank: lane_rank,
                    });
                }
                lanes.push(pool.id.clone());
                lanes.extend(pool.lanes.iter().map(|l| l.id.clone()));
                m.pools.push(pool);
            }
        }
        m.diagram = self.diagram(0, &lanes);
        m
    }

    fn connector(&mut self) -> Option<ConnectorType> {
        match self.rng.random_range(0..3) {
            0 => None,
            1 => Some(ConnectorType::Predefined(
                self.pick(PredefinedConnector::ALL),
            )),
            _ => ConnectorType::from_name(self.pick(CUSTOM_CONNECTORS)),
        }
    }

    fn link(&mut self, link_type: LinkType, source: ElementRef, target: ElementRef) -> Link {
        let connector = if link_type == LinkType::DataTransfer {
            self.connector()
        } else {
            None
        };
        Link {
            id: self.id("lk"),
            link_type,
            source,
            target,
            connector,
        }
    }

    /// Reference elements with their equivalence links, plus deployments and
    /// data transfers between legal endpoints.
    fn cross_view(
        &mut self,
        mes: &mut ProcessModel,
        pp: &mut ProcessModel,
        ts: &TechnicalSystemModel,
    ) -> Vec<Link> {
        let mut links = Vec::new();
        let mut signals = Vec::new();
        let mut deploy_targets = Vec::new();
        let mut ts_ends = Vec::new();
        ts.root.walk(&mut |n, _, _| {
            match n.kind {
                TsKind::Signal => signals.push((n.id.clone(), n.name.clone())),
                TsKind::Area | TsKind::Unit | TsKind::UserDefinedLayer => {
                    deploy_targets.push(n.id.clone())
                }
                TsKind::Plant => return,
            }
            ts_ends.push(n.id.clone());
        });

        let pp_acts: Vec<(ElementId, String)> = pp
            .all_activities()
            .iter()
            .map(|a| (a.id.clone(), a.name.clone()))
            .collect();
        let mes_acts: Vec<(ElementId, String)> = mes
            .all_activities()
            .iter()
            .map(|a| (a.id.clone(), a.name.clone()))
            .collect();

        // activity references across the two process models
        for (host_view, host, targets, target_view) in [
            (ViewTag::Mes, &mut *mes, &pp_acts, ViewTag::Pp),
            (ViewTag::Pp, &mut *pp, &mes_acts, ViewTag::Mes),
        ] {
            if self.rng.random_bool(0.4) {
                let (target, name) = targets.choose(self.rng).expect("non-empty").clone();
                let r = ActivityRef {
                    id: self.id("ra"),
                    name,
                    target: target.clone(),
                };
                let (a, b) = (
                    ElementRef::new(host_view, r.id.clone()),
                    ElementRef::new(target_view, target),
                );
                let link = if self.rng.random_bool(0.5) {
                    self.link(LinkType::Equivalence, a, b)
                } else {
                    self.link(LinkType::Equivalence, b, a)
                };
                links.push(link);
                self.random_diagram(&mut host.diagram).activity_refs.push(r);
            }
            if self.rng.random_bool(0.3) {
                let (target, name) = signals.choose(self.rng).expect("non-empty").clone();
                let r = SignalRef {
                    id: self.id("rs"),
                    name,
                    target: target.clone(),
                };
                let link = self.link(
                    LinkType::Equivalence,
                    ElementRef::new(ViewTag::Ts, target),
                    ElementRef::new(host_view, r.id.clone()),
                );
                links.push(link);
                self.random_diagram(&mut host.diagram).signal_refs.push(r);
            }
        }

        for _ in 0..self.rng.random_range(1..=2) {
            let (view, acts) = if self.rng.random_bool(0.5) {
                (ViewTag::Pp, &pp_acts)
            } else {
                (ViewTag::Mes, &mes_acts)
            };
            let source = ElementRef::new(view, acts.choose(self.rng).expect("non-empty").0.clone());
            let target = ElementRef::new(ViewTag::Ts, self.pick_id(&deploy_targets));
            links.push(self.link(LinkType::Deployment, source, target));
        }

        let mut ends: Vec<ElementRef> = ts_ends
            .into_iter()
            .map(|id| ElementRef::new(ViewTag::Ts, id))
            .collect();
        for (view, m) in [(ViewTag::Mes, &*mes), (ViewTag::Pp, &*pp)] {
            for p in &m.pools {
                ends.push(ElementRef::new(view, p.id.clone()));
                ends.extend(p.lanes.iter().map(|l| ElementRef::new(view, l.id.clone())));
            }
            m.diagram.walk(&mut |_, d, _| {
                ends.extend(
                    d.activities
                        .iter()
                        .map(|a| ElementRef::new(view, a.id.clone())),
                );
                ends.extend(
                    d.events
                        .iter()
                        .filter(|e| !e.is_link_event())
                        .map(|e| ElementRef::new(view, e.id.clone())),
                );
                ends.extend(
                    d.data_objects
                        .iter()
                        .map(|o| ElementRef::new(view, o.id.clone())),
                );
            });
        }
        for _ in 0..self.rng.random_range(0..=2) {
            let a = ends.choose(self.rng).expect("non-empty").clone();
            let others: Vec<&ElementRef> = ends.iter().filter(|e| e.view != a.view).collect();
            let b = (*others.choose(self.rng).expect("three views")).clone();
            links.push(self.link(LinkType::DataTransfer, a, b));
        }
        links
    }

    fn random_diagram<'d>(&mut self, d: &'d mut Diagram) -> &'d mut Diagram {
        let mut count = 0;
        d.walk(&mut |_, _, _| count += 1);
        let pick = self.rng.random_range(0..count);
        nth_diagram(d, pick)
    }
}

fn nth_diagram(d: &mut Diagram, n: usize) -> &mut Diagram {
    fn go<'d>(d: &'d mut Diagram, n: &mut usize) -> Option<&'d mut Diagram> {
        if *n == 0 {
            return Some(d);
        }
        *n -= 1;
        for a in &mut d.activities {
            if let Some(sub) = &mut a.subprocess {
                if let Some(found) = go(sub, n) {
                    return Some(found);
                }
            }
        }
        None
    }
    let mut n = n;
    go(d, &mut n).expect("index within diagram count")
}

fn for_each_diagram_mut(d: &mut Diagram, f: &mut impl FnMut(&mut Diagram)) {
    f(d);
    for a in &mut d.activities {
        if let Some(sub) = &mut a.subprocess {
            for_each_diagram_mut(sub, f);
        }
    }
}

/// Copies computed degrees into the declarations of some flow objects, so
/// the declared-degree lint has consistent data to check.
fn declare_degrees<R: Rng>(spec: MesSpec, rng: &mut R) -> MesSpec {
    let degrees = |id: &ElementId| spec.degrees_of(id).as_array();
    let (mut mes, mut pp, ts, links) = spec.clone().into_parts();
    for m in [&mut mes, &mut pp] {
        for_each_diagram_mut(&mut m.diagram, &mut |d| {
            for a in &mut d.activities {
                if rng.random_bool(0.2) {
                    a.declared = DeclaredDegrees(degrees(&a.id).map(Some));
                }
            }
            for g in &mut d.gateways {
                if rng.random_bool(0.2) {
                    let [in_sf, out_sf, ..] = degrees(&g.id);
                    g.declared.0[0] = Some(in_sf);
                    g.declared.0[1] = Some(out_sf);
                }
            }
        });
    }
    MesSpec::new(mes, pp, ts, links).expect("declarations keep the spec resolvable")
}

/// A random well-formed specification with at most
/// [`MAX_RANDOM_ELEMENTS`] elements. Equal seeds give equal specs.
pub fn random_spec(seed: u64) -> MesSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_spec_with(&mut rng)
}

pub fn random_spec_with<R: Rng>(rng: &mut R) -> MesSpec {
    loop {
        let mut g = Gen {
            rng: &mut *rng,
            next: 0,
        };
        let ts = g.technical();
        let mut pp = g.process(ViewTag::Pp);
        let mut mes = g.process(ViewTag::Mes);
        let links = g.cross_view(&mut mes, &mut pp, &ts);
        let spec =
            MesSpec::new(mes, pp, ts, LinkModel::new(links)).expect("generated specs resolve");
        if spec.element_count() <= MAX_RANDOM_ELEMENTS {
            return declare_degrees(spec, rng);
        }
    }
}

/// Rules [`inject_defect`] can break.
pub fn injectable_rules() -> &'static [RuleId] {
    RuleId::ALL
}

/// Breaks `rule` in a copy of `spec`. The result is resolvable and
/// triggers `rule` at least once; other rules may fire as well.
pub fn inject_defect<R: Rng>(spec: &MesSpec, rule: RuleId, rng: &mut R) -> MesSpec {
    let (mut mes, mut pp, mut ts, mut links) = spec.clone().into_parts();
    let fresh = |tag: &str| ElementId::new(format!("inj_{tag}")).expect("valid id");
    let view = if rng.random_bool(0.5) {
        ViewTag::Pp
    } else {
        ViewTag::Mes
    };
    let first_activity = |m: &ProcessModel| m.all_activities()[0].clone();
    let (own, foreign) = if view == ViewTag::Pp {
        (first_activity(&pp), first_activity(&mes))
    } else {
        (first_activity(&mes), first_activity(&pp))
    };
    let model = if view == ViewTag::Pp {
        &mut pp
    } else {
        &mut mes
    };

    match rule {
        RuleId::Spec01 => {
            model.role = if view == ViewTag::Pp {
                ViewTag::Mes
            } else {
                ViewTag::Pp
            }
        }
        RuleId::Ts01 => {
            let areas: Vec<TsNode> = std::mem::take(&mut ts.root.children);
            for node in areas {
                if node.kind == TsKind::Area {
                    ts.root.children.extend(node.children);
                } else {
                    ts.root.children.push(node);
                }
            }
        }
        RuleId::Ts02 => {
            let signal = TsNode::new(fresh("signal"), TsKind::Signal, "Stray signal");
            let host = ts
                .root
                .children
                .iter_mut()
                .find(|n| n.kind == TsKind::Area)
                .expect("generated plants have areas");
            host.children.push(signal);
        }
        RuleId::Ts03 => {
            let host = &mut ts.root.children[0];
            host.children
                .push(TsNode::new(fresh("plant"), TsKind::Plant, "Nested plant"));
        }
        RuleId::Pp01 => {
            let d = &mut model.diagram;
            d.activities.clear();
            d.gateways.clear();
            d.activity_refs.clear();
            d.signal_refs.clear();
            d.events.truncate(2);
        }
        RuleId::Pp02 => {
            let d = &mut model.diagram;
            let events = std::mem::take(&mut d.events);
            let mut events = events.into_iter();
            d.events.extend(events.next());
            for e in events {
                d.activities.push(Activity::new(e.id, "Former event"));
            }
        }
        RuleId::Pp03 => model.diagram.connections.truncate(1),
        RuleId::Pp04 => {
            let d = &mut model.diagram;
            for a in std::mem::take(&mut d.activities) {
                d.events.push(Event {
                    id: a.id,
                    name: Some(a.name),
                    exec: EventExec::IntermediateInterrupting,
                    behavior: None,
                });
            }
        }
        RuleId::Mes01 => {
            if view == ViewTag::Mes {
                for p in &mut model.pools {
                    p.lanes.clear();
                }
            } else {
                model.pools.push(Pool {
                    id: fresh("pool"),
                    name: "Stray pool".into(),
                    rank: 0,
                    lanes: Vec::new(),
                });
            }
        }
        RuleId::Gw01 | RuleId::Gw02 | RuleId::Gw03 | RuleId::Gw04 => {
            let (exec, behavior) = match rule {
                RuleId::Gw01 => (
                    *[GatewayExec::Exclusive, GatewayExec::Parallel]
                        .choose(rng)
                        .expect("x"),
                    GatewayBehavior::Split,
                ),
                RuleId::Gw02 => (GatewayExec::Inclusive, GatewayBehavior::Split),
                RuleId::Gw03 => (
                    *GatewayExec::ALL.choose(rng).expect("x"),
                    GatewayBehavior::Merge,
                ),
                _ => (
                    *GatewayExec::ALL.choose(rng).expect("x"),
                    *GatewayBehavior::ALL.choose(rng).expect("x"),
                ),
            };
            let d = &mut model.diagram;
            let g = fresh("gateway");
            if rule == RuleId::Gw04 {
                let o = fresh("data");
                d.data_objects.push(DataObject {
                    id: o.clone(),
                    name: "Data".into(),
                    kind: DataObjectKind::Single,
                });
                d.connections.push(Connection {
                    id: fresh("flow"),
                    kind: ConnectionKind::Data,
                    source: o,
                    target: g.clone(),
                });
            }
            d.gateways.push(Gateway {
                id: g,
                exec,
                behavior,
                declared: DeclaredDegrees::default(),
            });
        }
        RuleId::Ref01 | RuleId::Ref02 | RuleId::Ref03 | RuleId::Ref04 => {
            let signal = first_signal(&ts);
            let (name, target) = match rule {
                RuleId::Ref01 => (signal.name.clone(), signal.id.clone()),
                RuleId::Ref02 => (own.name.clone(), own.id.clone()),
                RuleId::Ref03 => (format!("{} (renamed)", foreign.name), foreign.id.clone()),
                _ => (foreign.name.clone(), foreign.id.clone()),
            };
            model.diagram.activity_refs.push(ActivityRef {
                id: fresh("ref"),
                name,
                target,
            });
        }
        RuleId::Lk01 | RuleId::Lk02 | RuleId::Lk03 | RuleId::Lk04 | RuleId::Lk06 => {
            let (pp_first, mes_first) = if view == ViewTag::Pp {
                (&own, &foreign)
            } else {
                (&foreign, &own)
            };
            let pp_act = ElementRef::new(ViewTag::Pp, pp_first.id.clone());
            let mes_act = ElementRef::new(ViewTag::Mes, mes_first.id.clone());
            let root = ElementRef::new(ViewTag::Ts, ts.root.id.clone());
            let unit = ElementRef::new(ViewTag::Ts, first_unit(&ts).id.clone());
            let (link_type, source, target) = match rule {
                RuleId::Lk01 => {
                    let flow = ElementRef::new(view, model.diagram.connections[0].id.clone());
                    (LinkType::DataTransfer, flow, root)
                }
                RuleId::Lk02 => (LinkType::DataTransfer, pp_act.clone(), pp_act),
                RuleId::Lk03 => (LinkType::DataTransfer, pp_act, root),
                RuleId::Lk04 => (LinkType::Equivalence, pp_act, mes_act),
                _ => (LinkType::Deployment, unit, pp_act),
            };
            links.links.push(Link {
                id: fresh("link"),
                link_type,
                source,
                target,
                connector: None,
            });
        }
        RuleId::Lk05 => {
            let r = fresh("ref");
            model.diagram.activity_refs.push(ActivityRef {
                id: r.clone(),
                name: format!("{} (copy)", foreign.name),
                target: foreign.id.clone(),
            });
            let other = if view == ViewTag::Pp {
                ViewTag::Mes
            } else {
                ViewTag::Pp
            };
            links.links.push(Link {
                id: fresh("link"),
                link_type: LinkType::Equivalence,
                source: ElementRef::new(view, r),
                target: ElementRef::new(other, foreign.id),
                connector: None,
            });
        }
        RuleId::Lk07 => links.links.clear(),
        RuleId::Sub01 => {
            let a = &mut model.diagram.activities[0];
            a.calls = Some(a.id.clone());
        }
        RuleId::Act01 => {
            let id = own.id;
            let computed = spec.degrees_of(&id);
            for_each_diagram_mut(&mut model.diagram, &mut |d| {
                if let Some(a) = d.activities.iter_mut().find(|a| a.id == id) {
                    a.declared.0[0] = Some(computed.in_sf + 1);
                }
            });
        }
        RuleId::Pp01Lint => {
            let mut a = Activity::new(fresh("activity"), "Unfinished");
            let mut sub = Diagram::default();
            sub.activities
                .push(Activity::new(fresh("inner"), "Lonely step"));
            a.subprocess = Some(sub);
            model.diagram.activities.push(a);
        }
    }
    repair((mes, pp, ts, links))
}

fn first_signal(ts: &TechnicalSystemModel) -> TsNode {
    let mut found = None;
    ts.root.walk(&mut |n, _, _| {
        if found.is_none() && n.kind == TsKind::Signal {
            found = Some(n.clone());
        }
    });
    found.expect("generated technical systems have signals")
}

fn first_unit(ts: &TechnicalSystemModel) -> TsNode {
    let mut found = None;
    ts.root.walk(&mut |n, _, _| {
        if found.is_none() && n.kind == TsKind::Unit {
            found = Some(n.clone());
        }
    });
    found.expect("generated technical systems have units")
}

/// Drops whatever a mutation left dangling until the parts resolve.
fn repair(parts: Parts) -> MesSpec {
    let (mut mes, mut pp, ts, mut links) = parts;
    loop {
        match MesSpec::new(mes.clone(), pp.clone(), ts.clone(), links.clone()) {
            Ok(spec) => return spec,
            Err(errors) => {
                for e in errors {
                    assert_ne!(e.kind, ResolveErrorKind::DuplicateId, "{}", e.message);
                    let id = &e.subject;
                    links.links.retain(|l| &l.id != id);
                    for m in [&mut mes, &mut pp] {
                        for_each_diagram_mut(&mut m.diagram, &mut |d| {
                            d.connections.retain(|c| &c.id != id);
                            d.groups.retain(|g| &g.id != id);
                            d.activity_refs.retain(|r| &r.id != id);
                            d.signal_refs.retain(|r| &r.id != id);
                            for a in d.activities.iter_mut().filter(|a| &a.id == id) {
                                if e.message.contains("lane") {
                                    a.lane = None;
                                } else {
                                    a.calls = None;
                                }
                            }
                        });
                    }
                }
            }
        }
    }
}

/// A regular specification with exactly `elements` elements and `links`
/// links, all rules satisfied. `elements` must be at least 200.
pub fn scaled_spec(elements: usize, links: usize) -> MesSpec {
    assert!(elements >= 200, "scaled specs need at least 200 elements");
    let id = |s: String| ElementId::new(s).expect("valid id");

    // technical system: about a tenth of the elements
    let ts_budget = elements / 10;
    let mut plant = TsNode::new(id("plant".into()), TsKind::Plant, "Plant");
    let mut units = Vec::new();
    let mut signals = Vec::new();
    let mut used = 1;
    let mut a = 0;
    while used < ts_budget {
        let mut area = TsNode::new(id(format!("ar{a}")), TsKind::Area, format!("Area {a}"));
        used += 1;
        for u in 0..10 {
            if used + 2 > ts_budget && u > 0 {
                break;
            }
            let uid = id(format!("u{a}_{u}"));
            let mut unit = TsNode::new(uid.clone(), TsKind::Unit, format!("Unit {a}.{u}"));
            used += 1;
            units.push(uid);
            for s in 0..8 {
                if used >= ts_budget && s > 0 {
                    break;
                }
                let sid = id(format!("sn{a}_{u}_{s}"));
                unit.children.push(TsNode::new(
                    sid.clone(),
                    TsKind::Signal,
                    format!("Signal {a}.{u}.{s}"),
                ));
                signals.push(sid);
                used += 1;
            }
            area.children.push(unit);
        }
        plant.children.push(area);
        a += 1;
    }
    let ts = TechnicalSystemModel::new(plant);

    // process models: top-level chains of activities, each refined by a
    // start -> step -> stop subprocess (7 elements per chain link)
    let per_model = (elements - used) / 2;
    let mut mes = ProcessModel::new(ViewTag::Mes);
    let mut lanes = Vec::new();
    for p in 0..3u32 {
        let mut pool = Pool {
            id: id(format!("pool{p}")),
            name: format!("Pool {p}"),
            rank: p,
            lanes: Vec::new(),
        };
        for l in 0..2u32 {
            let lid = id(format!("lane{p}_{l}"));
            lanes.push(lid.clone());
            pool.lanes.push(Lane {
                id: lid,
                name: format!("Lane {p}.{l}"),
                rank: l,
            });
        }
        mes.pools.push(pool);
    }
    let mes_budget = per_model - 9;
    mes.diagram = chain("m", mes_budget, &lanes);
    let mut pp = ProcessModel::new(ViewTag::Pp);
    let pp_budget = elements - used - 9 - mes_budget;
    pp.diagram = chain("p", pp_budget, &[]);

    let pp_acts: Vec<ElementId> = pp.diagram.activities.iter().map(|a| a.id.clone()).collect();
    let mes_acts: Vec<ElementId> = mes
        .diagram
        .activities
        .iter()
        .map(|a| a.id.clone())
        .collect();
    let mut all = Vec::with_capacity(links);
    for i in 0..links {
        let link = if i % 2 == 0 {
            Link {
                id: id(format!("lk{i}")),
                link_type: LinkType::Deployment,
                source: ElementRef::new(ViewTag::Pp, pp_acts[i / 2 % pp_acts.len()].clone()),
                target: ElementRef::new(ViewTag::Ts, units[i % units.len()].clone()),
                connector: None,
            }
        } else {
            Link {
                id: id(format!("lk{i}")),
                link_type: LinkType::DataTransfer,
                source: ElementRef::new(ViewTag::Mes, mes_acts[i / 2 % mes_acts.len()].clone()),
                target: ElementRef::new(ViewTag::Ts, signals[i % signals.len()].clone()),
                connector: Some(ConnectorType::Predefined(PredefinedConnector::Opc)),
            }
        };
        all.push(link);
    }
    MesSpec::new(mes, pp, ts, LinkModel::new(all)).expect("scaled spec resolves")
}

/// Exactly `budget` elements: start, stop, a chain of refined activities
/// and data objects as padding.
fn chain(prefix: &str, budget: usize, lanes: &[ElementId]) -> Diagram {
    let id = |s: String| ElementId::new(s).expect("valid id");
    let mut d = Diagram::default();
    let start = id(format!("{prefix}start"));
    let stop = id(format!("{prefix}stop"));
    d.events.push(Event {
        id: start.clone(),
        name: None,
        exec: EventExec::Start,
        behavior: None,
    });
    d.events.push(Event {
        id: stop.clone(),
        name: None,
        exec: EventExec::Stop,
        behavior: None,
    });
    // 2 events + 1 closing flow, then 7 per activity
    let n = (budget - 3) / 7;
    let mut last = start;
    for i in 0..n {
        let aid = id(format!("{prefix}a{i}"));
        let mut a = Activity::new(aid.clone(), format!("Step {i}"));
        if !lanes.is_empty() {
            a.lane = Some(lanes[i % lanes.len()].clone());
        }
        let mut sub = Diagram::default();
        let (s, x, e) = (
            id(format!("{prefix}a{i}s")),
            id(format!("{prefix}a{i}x")),
            id(format!("{prefix}a{i}e")),
        );
        sub.events.push(Event {
            id: s.clone(),
            name: None,
            exec: EventExec::Start,
            behavior: None,
        });
        sub.activities
            .push(Activity::new(x.clone(), format!("Detail {i}")));
        sub.events.push(Event {
            id: e.clone(),
            name: None,
            exec: EventExec::Stop,
            behavior: None,
        });
        sub.connections.push(Connection {
            id: id(format!("{prefix}a{i}f1")),
            kind: ConnectionKind::Sequence,
            source: s,
            target: x.clone(),
        });
        sub.connections.push(Connection {
            id: id(format!("{prefix}a{i}f2")),
            kind: ConnectionKind::Sequence,
            source: x,
            target: e,
        });
        a.subprocess = Some(sub);
        d.connections.push(Connection {
            id: id(format!("{prefix}f{i}")),
            kind: ConnectionKind::Sequence,
            source: last,
            target: aid.clone(),
        });
        last = aid;
        d.activities.push(a);
    }
    d.connections.push(Connection {
        id: id(format!("{prefix}fend")),
        kind: ConnectionKind::Sequence,
        source: last,
        target: stop,
    });
    for i in 0..budget - 3 - 7 * n {
        d.data_objects.push(DataObject {
            id: id(format!("{prefix}do{i}")),
            name: format!("Record {i}"),
            kind: DataObjectKind::Store,
        });
    }
    d
}
