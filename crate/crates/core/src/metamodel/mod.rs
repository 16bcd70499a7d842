//! Domain types of an MES-ML specification.

mod ids;
mod process;
mod spec;
mod technical;

pub use ids::{is_valid_id, ElementId, ElementKind, ElementRef, ViewTag};
pub use process::{
    Activity, ActivityExec, ActivityRef, Connection, ConnectionKind, DataObject, DataObjectKind,
    DeclaredDegrees, DegreeVector, Diagram, Event, EventBehavior, EventExec, Gateway,
    GatewayBehavior, GatewayExec, Group, Lane, Pool, ProcessModel, Repetition, RequirementStatus,
    SignalRef, TextAnnotation, DEGREE_KEYS,
};
pub use spec::{ElementInfo, MesSpec, Scope};
pub use technical::{TechnicalSystemModel, TsKind, TsNode};
