use std::borrow::Borrow;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::ModelError;

/// Author-supplied identity of a model element or link.
///
/// Allowed characters are ASCII letters, digits, `_`, `-` and `.`; the colon
/// is reserved for the `view:id` reference syntax.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(String);

impl ElementId {
    pub fn new(value: impl Into<String>) -> Result<Self, ModelError> {
        let value = value.into();
        if is_valid_id(&value) {
            Ok(ElementId(value))
        } else {
            Err(ModelError::InvalidId(value))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub fn is_valid_id(s: &str) -> bool {
    !s.is_empty()
        && s.bytes()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'-' | b'.'))
}

impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for ElementId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl FromStr for ElementId {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ElementId::new(s)
    }
}

impl Serialize for ElementId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

/// The three views of a specification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ViewTag {
    Mes,
    Pp,
    Ts,
}

impl ViewTag {
    pub const ALL: [ViewTag; 3] = [ViewTag::Mes, ViewTag::Pp, ViewTag::Ts];

    /// Lowercase literal used in references (`pp:a1`) and on the command line.
    pub fn as_str(self) -> &'static str {
        match self {
            ViewTag::Mes => "mes",
            ViewTag::Pp => "pp",
            ViewTag::Ts => "ts",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ViewTag::Mes => "MES",
            ViewTag::Pp => "PP",
            ViewTag::Ts => "TS",
        }
    }

    pub fn is_process(self) -> bool {
        !matches!(self, ViewTag::Ts)
    }
}

impl fmt::Display for ViewTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ViewTag {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mes" => Ok(ViewTag::Mes),
            "pp" => Ok(ViewTag::Pp),
            "ts" => Ok(ViewTag::Ts),
            _ => Err(ModelError::InvalidView(s.to_string())),
        }
    }
}

/// An element id qualified by the view it must reside in.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementRef {
    pub view: ViewTag,
    pub id: ElementId,
}

impl ElementRef {
    pub fn new(view: ViewTag, id: ElementId) -> Self {
        ElementRef { view, id }
    }
}

impl fmt::Display for ElementRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.view, self.id)
    }
}

impl FromStr for ElementRef {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (view, id) = s
            .split_once(':')
            .ok_or_else(|| ModelError::InvalidRef(s.to_string()))?;
        Ok(ElementRef {
            view: view.parse()?,
            id: id.parse()?,
        })
    }
}

impl Serialize for ElementRef {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Concrete kind of an element, across all three views.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    Activity,
    Event,
    Gateway,
    ActivityRef,
    SignalRef,
    DataObject,
    Pool,
    Lane,
    Group,
    TextAnnotation,
    SequenceFlow,
    MessageFlow,
    DataFlow,
    Association,
    Plant,
    Area,
    Unit,
    Signal,
    UserDefinedLayer,
}

impl ElementKind {
    pub const ALL: [ElementKind; 19] = [
        ElementKind::Activity,
        ElementKind::Event,
        ElementKind::Gateway,
        ElementKind::ActivityRef,
        ElementKind::SignalRef,
        ElementKind::DataObject,
        ElementKind::Pool,
        ElementKind::Lane,
        ElementKind::Group,
        ElementKind::TextAnnotation,
        ElementKind::SequenceFlow,
        ElementKind::MessageFlow,
        ElementKind::DataFlow,
        ElementKind::Association,
        ElementKind::Plant,
        ElementKind::Area,
        ElementKind::Unit,
        ElementKind::Signal,
        ElementKind::UserDefinedLayer,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ElementKind::Activity => "activity",
            ElementKind::Event => "event",
            ElementKind::Gateway => "gateway",
            ElementKind::ActivityRef => "activity_ref",
            ElementKind::SignalRef => "signal_ref",
            ElementKind::DataObject => "data_object",
            ElementKind::Pool => "pool",
            ElementKind::Lane => "lane",
            ElementKind::Group => "group",
            ElementKind::TextAnnotation => "text_annotation",
            ElementKind::SequenceFlow => "sequence_flow",
            ElementKind::MessageFlow => "message_flow",
            ElementKind::DataFlow => "data_flow",
            ElementKind::Association => "association",
            ElementKind::Plant => "plant",
            ElementKind::Area => "area",
            ElementKind::Unit => "unit",
            ElementKind::Signal => "signal",
            ElementKind::UserDefinedLayer => "user_defined_layer",
        }
    }

    pub fn is_connecting(self) -> bool {
        matches!(
            self,
            ElementKind::SequenceFlow
                | ElementKind::MessageFlow
                | ElementKind::DataFlow
                | ElementKind::Association
        )
    }

    pub fn is_technical(self) -> bool {
        matches!(
            self,
            ElementKind::Plant
                | ElementKind::Area
                | ElementKind::Unit
                | ElementKind::Signal
                | ElementKind::UserDefinedLayer
        )
    }

    pub fn is_flow_object(self) -> bool {
        matches!(
            self,
            ElementKind::Activity
                | ElementKind::Event
                | ElementKind::Gateway
                | ElementKind::ActivityRef
                | ElementKind::SignalRef
        )
    }

    pub fn is_swimlane(self) -> bool {
        matches!(self, ElementKind::Pool | ElementKind::Lane)
    }

    /// Views an element of this kind can live in.
    pub fn possible_views(self) -> &'static [ViewTag] {
        if self.is_technical() {
            &[ViewTag::Ts]
        } else if self.is_swimlane() {
            &[ViewTag::Mes]
        } else {
            &[ViewTag::Mes, ViewTag::Pp]
        }
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
