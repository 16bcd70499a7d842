//! Inputs shared by the benchmarks.

use mesml_core::corpus::YOGURT;
use mesml_core::synth::scaled_spec;
use mesml_core::{parse_spec, serialize_spec, MesSpec};

/// Element and link counts of the scale benchmark.
pub const SCALE: (usize, usize) = (10_000, 2_000);

pub fn yogurt() -> MesSpec {
    parse_spec(YOGURT).expect("bundled fixture parses")
}

/// The scale specification together with its canonical text.
pub fn scaled() -> (MesSpec, String) {
    let spec = scaled_spec(SCALE.0, SCALE.1);
    let text = serialize_spec(&spec);
    (spec, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_consistent() {
        let (spec, text) = scaled();
        assert_eq!(spec.element_count(), SCALE.0);
        assert_eq!(parse_spec(&text).unwrap(), spec);
        assert!(yogurt().element_count() > 100);
    }
}
