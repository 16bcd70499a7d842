//! Production-process and MES functional models.
//!
//! Both views share one structure ([`ProcessModel`]); only the MES model may
//! carry swimlanes. Subprocesses reuse [`Diagram`] recursively.

use serde::Serialize;

use super::{ElementId, ViewTag};

literal_enum! {
    /// Execution type of an activity. `Manual` in the MES model denotes a user task.
    ActivityExec {
        Undefined => "undefined",
        Manual => "manual",
        Automatic => "automatic",
    }
}

literal_enum! {
    Repetition {
        None => "none",
        Sequential => "sequential",
        Parallel => "parallel",
    }
}

literal_enum! {
    /// Current-versus-target marker of an activity.
    RequirementStatus {
        ToImplement => "to_implement",
        Implemented => "implemented",
        Excluded => "excluded",
    }
}

literal_enum! {
    EventExec {
        Start => "start",
        Stop => "stop" | "end",
        IntermediateInterrupting => "intermediate_interrupting",
        IntermediateNonInterrupting => "intermediate_non_interrupting",
    }
}

literal_enum! {
    EventBehavior {
        Timer => "timer",
        Error => "error",
        Link => "link",
    }
}

literal_enum! {
    GatewayExec {
        Exclusive => "exclusive" | "exclusiv",
        Inclusive => "inclusive" | "inclusiv",
        Parallel => "parallel",
    }
}

literal_enum! {
    GatewayBehavior {
        Split => "split",
        Merge => "merge",
    }
}

literal_enum! {
    DataObjectKind {
        Single => "data_object",
        Multi => "multi_data_object",
        Store => "data_store",
    }
}

literal_enum! {
    ConnectionKind {
        Sequence => "sequence_flow",
        Message => "message_flow",
        Data => "data_flow",
        Association => "association",
    }
}

/// Connection counts of one flow object, split by kind and direction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct DegreeVector {
    pub in_sf: u32,
    pub out_sf: u32,
    pub in_mf: u32,
    pub out_mf: u32,
    pub in_df: u32,
    pub out_df: u32,
}

impl DegreeVector {
    pub fn information_flows(&self) -> u32 {
        self.in_mf + self.out_mf + self.in_df + self.out_df
    }

    pub fn as_array(&self) -> [u32; 6] {
        [
            self.in_sf,
            self.out_sf,
            self.in_mf,
            self.out_mf,
            self.in_df,
            self.out_df,
        ]
    }
}

/// Degree keys as written in the interchange format.
pub const DEGREE_KEYS: [&str; 6] = ["in_sf", "out_sf", "in_mf", "out_mf", "in_df", "out_df"];

/// Degree counts an author wrote down explicitly; compared against the
/// computed [`DegreeVector`] by a lint.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct DeclaredDegrees(pub [Option<u32>; 6]);

impl DeclaredDegrees {
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(Option::is_none)
    }

    /// `(key, declared, computed)` for every declared count that disagrees.
    pub fn mismatches(&self, computed: &DegreeVector) -> Vec<(&'static str, u32, u32)> {
        let actual = computed.as_array();
        self.0
            .iter()
            .zip(actual)
            .zip(DEGREE_KEYS)
            .filter_map(|((declared, actual), key)| match declared {
                Some(d) if *d != actual => Some((key, *d, actual)),
                _ => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Activity {
    pub id: ElementId,
    pub name: String,
    pub exec: ActivityExec,
    pub repetition: Repetition,
    pub status: RequirementStatus,
    /// Pool or lane the activity is drawn in (MES model only).
    pub lane: Option<ElementId>,
    /// Activity whose subprocess this one invokes (call activity).
    pub calls: Option<ElementId>,
    pub declared: DeclaredDegrees,
    pub subprocess: Option<Diagram>,
}

impl Activity {
    pub fn new(id: ElementId, name: impl Into<String>) -> Self {
        Activity {
            id,
            name: name.into(),
            exec: ActivityExec::Undefined,
            repetition: Repetition::None,
            status: RequirementStatus::ToImplement,
            lane: None,
            calls: None,
            declared: DeclaredDegrees::default(),
            subprocess: None,
        }
    }
}

/// Proxy for an activity owned by the other process model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivityRef {
    pub id: ElementId,
    pub name: String,
    pub target: ElementId,
}

/// Proxy for a signal of the technical system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignalRef {
    pub id: ElementId,
    pub name: String,
    pub target: ElementId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub id: ElementId,
    pub name: Option<String>,
    pub exec: EventExec,
    pub behavior: Option<EventBehavior>,
}

impl Event {
    pub fn is_link_event(&self) -> bool {
        self.behavior == Some(EventBehavior::Link)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gateway {
    pub id: ElementId,
    pub exec: GatewayExec,
    pub behavior: GatewayBehavior,
    pub declared: DeclaredDegrees,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataObject {
    pub id: ElementId,
    pub name: String,
    pub kind: DataObjectKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    pub id: ElementId,
    pub kind: ConnectionKind,
    pub source: ElementId,
    pub target: ElementId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextAnnotation {
    pub id: ElementId,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub id: ElementId,
    pub name: Option<String>,
    pub members: Vec<ElementId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lane {
    pub id: ElementId,
    pub name: String,
    pub rank: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pool {
    pub id: ElementId,
    pub name: String,
    /// Vertical position; lower ranks sit higher in the automation hierarchy.
    pub rank: u32,
    pub lanes: Vec<Lane>,
}

/// Content of one process diagram: the top level of a model or a subprocess.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagram {
    pub activities: Vec<Activity>,
    pub events: Vec<Event>,
    pub gateways: Vec<Gateway>,
    pub activity_refs: Vec<ActivityRef>,
    pub signal_refs: Vec<SignalRef>,
    pub data_objects: Vec<DataObject>,
    pub connections: Vec<Connection>,
    pub annotations: Vec<TextAnnotation>,
    pub groups: Vec<Group>,
}

impl Diagram {
    pub fn is_empty(&self) -> bool {
        self.element_count() == 0
    }

    /// Elements directly in this diagram (nested subprocesses excluded).
    pub fn element_count(&self) -> usize {
        self.activities.len()
            + self.events.len()
            + self.gateways.len()
            + self.activity_refs.len()
            + self.signal_refs.len()
            + self.data_objects.len()
            + self.connections.len()
            + self.annotations.len()
            + self.groups.len()
    }

    pub fn flow_object_count(&self) -> usize {
        self.activities.len()
            + self.events.len()
            + self.gateways.len()
            + self.activity_refs.len()
            + self.signal_refs.len()
    }

    pub fn connections_of(&self, kind: ConnectionKind) -> impl Iterator<Item = &Connection> {
        self.connections.iter().filter(move |c| c.kind == kind)
    }

    pub fn data_objects_of(&self, kind: DataObjectKind) -> impl Iterator<Item = &DataObject> {
        self.data_objects.iter().filter(move |d| d.kind == kind)
    }

    pub fn has_event(&self, exec: EventExec) -> bool {
        self.events.iter().any(|e| e.exec == exec)
    }

    /// Depth-first walk over this diagram and every nested subprocess.
    /// The callback receives the owning activity (None for `self`) and depth.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(Option<&'a Activity>, &'a Diagram, usize)) {
        fn go<'a>(
            owner: Option<&'a Activity>,
            diagram: &'a Diagram,
            depth: usize,
            f: &mut impl FnMut(Option<&'a Activity>, &'a Diagram, usize),
        ) {
            f(owner, diagram, depth);
            for activity in &diagram.activities {
                if let Some(sub) = &activity.subprocess {
                    go(Some(activity), sub, depth + 1, f);
                }
            }
        }
        go(None, self, 0, f);
    }

    pub(crate) fn canonicalize(&mut self) {
        self.activities.sort_by(|a, b| a.id.cmp(&b.id));
        self.events.sort_by(|a, b| a.id.cmp(&b.id));
        self.gateways.sort_by(|a, b| a.id.cmp(&b.id));
        self.activity_refs.sort_by(|a, b| a.id.cmp(&b.id));
        self.signal_refs.sort_by(|a, b| a.id.cmp(&b.id));
        self.data_objects.sort_by(|a, b| a.id.cmp(&b.id));
        self.connections.sort_by(|a, b| a.id.cmp(&b.id));
        self.annotations.sort_by(|a, b| a.id.cmp(&b.id));
        self.groups.sort_by(|a, b| a.id.cmp(&b.id));
        for activity in &mut self.activities {
            if activity.subprocess.as_ref().is_some_and(Diagram::is_empty) {
                activity.subprocess = None;
            }
            if let Some(sub) = &mut activity.subprocess {
                sub.canonicalize();
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessModel {
    pub role: ViewTag,
    pub diagram: Diagram,
    /// Swimlanes; defined for the MES model only.
    pub pools: Vec<Pool>,
}

impl ProcessModel {
    pub fn new(role: ViewTag) -> Self {
        ProcessModel {
            role,
            diagram: Diagram::default(),
            pools: Vec::new(),
        }
    }

    pub fn lane_count(&self) -> usize {
        self.pools.iter().map(|p| p.lanes.len()).sum()
    }

    /// Every activity of the model, nested ones included, in walk order.
    pub fn all_activities(&self) -> Vec<&Activity> {
        let mut out = Vec::new();
        self.diagram
            .walk(&mut |_, d, _| out.extend(d.activities.iter()));
        out
    }

    pub(crate) fn canonicalize(&mut self) {
        self.diagram.canonicalize();
        self.pools.sort_by(|a, b| a.id.cmp(&b.id));
        for pool in &mut self.pools {
            pool.lanes.sort_by(|a, b| a.id.cmp(&b.id));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases_parse_to_normalized_variants() {
        assert_eq!(EventExec::from_literal("end"), Some(EventExec::Stop));
        assert_eq!(EventExec::Stop.literal(), "stop");
        assert_eq!(
            GatewayExec::from_literal("exclusiv"),
            Some(GatewayExec::Exclusive)
        );
        assert_eq!(
            GatewayExec::from_literal("inclusiv"),
            Some(GatewayExec::Inclusive)
        );
        assert_eq!(GatewayExec::from_literal("Exclusive"), None);
    }

    #[test]
    fn declared_degree_mismatches() {
        let computed = DegreeVector {
            in_sf: 1,
            out_sf: 1,
            ..Default::default()
        };
        let declared = DeclaredDegrees([Some(1), Some(2), None, None, Some(0), None]);
        assert_eq!(declared.mismatches(&computed), vec![("out_sf", 2, 1)]);
        assert!(DeclaredDegrees::default().is_empty());
    }
}
