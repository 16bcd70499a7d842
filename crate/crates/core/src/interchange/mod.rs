//! The `.mesml` text interchange format.
//!
//! A document has four sections, `ts:`, `pp:`, `mes:` and `links:`. Each
//! element is one record line `- key=value key=value ...`; nesting by two
//! spaces expresses containment (technical-system children, subprocess
//! content of an activity, lanes of a pool). Values are bare tokens or
//! double-quoted strings with `\"`, `\\`, `\n`, `\r` and `\t` escapes.
//! Lines starting with `#` are comments.
//!
//! ```text
//! ts:
//!   - kind=plant id=plant name="Plant"
//!     - kind=area id=area name="Area"
//! pp:
//!   - kind=event id=start exec=start
//!   - kind=sequence_flow id=sf1 source=start target=act
//! links:
//!   - kind=deployment id=lk1 source=pp:act target=ts:area
//! ```
//!
//! [`serialize_spec`] writes the canonical form: records sorted by id,
//! fixed key order, normalized enumeration literals.

mod lexer;
mod parse;
mod serialize;

use std::fmt;

use serde::Serialize;

pub use parse::{parse_spec, parse_spec_named};
pub use serialize::serialize_spec;

/// File extension of interchange documents.
pub const FILE_EXTENSION: &str = "mesml";

/// Location of a parse problem. Line and column are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SourceSpan {
    pub file: String,
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParseErrorCategory {
    Syntax,
    UnknownKey,
    BadEnum,
    DuplicateId,
    DanglingRef,
    MissingSubmodel,
}

impl ParseErrorCategory {
    pub fn as_str(self) -> &'static str {
        match self {
            ParseErrorCategory::Syntax => "syntax",
            ParseErrorCategory::UnknownKey => "unknown-key",
            ParseErrorCategory::BadEnum => "bad-enum",
            ParseErrorCategory::DuplicateId => "duplicate-id",
            ParseErrorCategory::DanglingRef => "dangling-ref",
            ParseErrorCategory::MissingSubmodel => "missing-submodel",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("{span}: {}: {message}", category.as_str())]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub category: ParseErrorCategory,
}
