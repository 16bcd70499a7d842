//! Bundled example specifications.

/// The laboratory yogurt production plant. Passes every rule.
pub const YOGURT: &str = include_str!("../fixtures/yogurt.mesml");

/// Smallest specification that passes every rule.
pub const MINIMAL: &str = include_str!("../fixtures/minimal.mesml");
