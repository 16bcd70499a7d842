//! Toolchain core for MES-ML specifications.
//!
//! A specification combines three views of a manufacturing execution
//! system (the MES/IT functional model, the production-process model and
//! the technical-system hierarchy) with a model of typed links between them.
//!
//! - [`metamodel`]: immutable domain types and element classification.
//! - [`linkmodel`]: links and the link legality rules.
//! - [`interchange`]: the `.mesml` text format (parse and canonical serialize).
//! - [`validator`]: the well-formedness rule catalog producing diagnostics.
//! - [`linker`]: queries over links (equivalence pairs, deployments, interfaces).
//! - [`reporting`]: status and statistics reports, diagram tree, DOT export.

/// Closed enumeration with a canonical lowercase literal and optional input
/// aliases.
macro_rules! literal_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $lit:literal $(| $alias:literal)*),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($variant,)+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant,)+];

            pub fn literal(self) -> &'static str {
                match self {
                    $($name::$variant => $lit,)+
                }
            }

            pub fn from_literal(s: &str) -> Option<Self> {
                match s {
                    $($lit $(| $alias)* => Some($name::$variant),)+
                    _ => None,
                }
            }

            /// Canonical literals, for error messages.
            pub fn literals() -> String {
                [$($lit,)+].join("|")
            }
        }

        impl std::fmt::Display for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str(self.literal())
            }
        }

        impl serde::Serialize for $name {
            fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.serialize_str(self.literal())
            }
        }
    };
}

pub mod catalog;
pub mod corpus;
pub mod error;
pub mod interchange;
pub mod linker;
pub mod linkmodel;
pub mod metamodel;
pub mod reporting;
pub mod synth;
pub mod validator;

pub use catalog::{RuleId, Severity};
pub use error::{ModelError, ResolveError, ResolveErrorKind};
pub use interchange::{parse_spec, serialize_spec, ParseError, ParseErrorCategory, SourceSpan};
pub use linkmodel::{
    check_link, legality_table, ConnectorType, Link, LinkLegality, LinkModel, LinkType,
};
pub use metamodel::{ElementId, ElementKind, ElementRef, MesSpec, ViewTag};
pub use validator::{validate_spec, Diagnostic, Subject};
