//! Well-formedness checking.
//!
//! [`validate_spec`] runs every rule of the catalog and returns the findings
//! ordered by severity, rule code, subject and message. Rules are pure and
//! independent of each other; the ordering is applied after collection.

mod diagnostic;
mod rules;

pub use diagnostic::{render_text, worst_severity, Diagnostic, ModelScope, Subject};
pub use rules::{check_gateway, check_references, gateway_arity_rule};

use crate::metamodel::{MesSpec, ViewTag};

/// Runs the full rule catalog over `spec`.
pub fn validate_spec(spec: &MesSpec) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    rules::spec_roles(spec, &mut out);
    rules::technical(spec, &mut out);
    rules::swimlanes(spec, &mut out);
    for view in [ViewTag::Mes, ViewTag::Pp] {
        let m = spec.process_model(view).expect("process view");
        rules::cardinality(view, m, &mut out);
        rules::gateways(view, m, spec, &mut out);
        out.extend(check_references(view, spec));
        rules::declared_degrees(view, m, spec, &mut out);
        rules::start_stop(view, m, &mut out);
    }
    rules::links(spec, &mut out);
    rules::containment_cycles(spec, &mut out);
    out.sort_by(Diagnostic::report_order);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::RuleId;
    use crate::corpus::{MINIMAL, YOGURT};
    use crate::interchange::parse_spec;
    use crate::metamodel::*;

    fn codes(text: &str) -> Vec<RuleId> {
        let spec = parse_spec(text).unwrap_or_else(|e| panic!("{e:?}"));
        validate_spec(&spec).into_iter().map(|d| d.rule).collect()
    }

    #[test]
    fn bundled_fixtures_are_clean() {
        assert_eq!(codes(MINIMAL), vec![]);
        let spec = parse_spec(YOGURT).unwrap();
        let found = validate_spec(&spec);
        assert!(found.is_empty(), "{}", render_text(&found));
    }

    #[test]
    fn inclusive_split_with_two_branches() {
        let text = YOGURT.replace(
            "id=gw_pm_split exec=exclusive",
            "id=gw_pm_split exec=inclusive",
        );
        assert_eq!(codes(&text), vec![RuleId::Gw02]);
    }

    #[test]
    fn renamed_equivalent_is_a_name_mismatch() {
        let text = YOGURT.replace(
            "id=qt_label name=\"Print Label\"",
            "id=qt_label name=\"Etikett drucken\"",
        );
        let found = codes(&text);
        assert!(found.contains(&RuleId::Lk05));
        assert!(found.contains(&RuleId::Ref03));
    }

    #[test]
    fn empty_link_model_is_a_single_warning() {
        let text = MINIMAL.split("links:").next().unwrap().to_string() + "links:\n";
        assert_eq!(codes(&text), vec![RuleId::Lk07]);
    }

    #[test]
    fn gateway_examples() {
        use GatewayBehavior::*;
        use GatewayExec::*;
        assert_eq!(gateway_arity_rule(Exclusive, Split, 1, 2), None);
        assert_eq!(gateway_arity_rule(Parallel, Merge, 3, 1), None);
        assert_eq!(
            gateway_arity_rule(Exclusive, Merge, 2, 2),
            Some(RuleId::Gw03)
        );
        assert_eq!(
            gateway_arity_rule(Inclusive, Split, 1, 2),
            Some(RuleId::Gw02)
        );
    }

    #[test]
    fn data_flow_on_gateway() {
        let text = YOGURT.replace(
            "source=do_recipe target=pm_heat",
            "source=do_recipe target=gw_pm_split",
        );
        assert_eq!(codes(&text), vec![RuleId::Gw04]);
    }

    #[test]
    fn check_gateway_rejects_other_kinds() {
        let spec = parse_spec(YOGURT).unwrap();
        let fake = Gateway {
            id: ElementId::new("pm_heat").unwrap(),
            exec: GatewayExec::Exclusive,
            behavior: GatewayBehavior::Split,
            declared: DeclaredDegrees::default(),
        };
        assert!(check_gateway(ViewTag::Pp, &fake, &spec).is_err());
    }

    #[test]
    fn signal_ref_targeting_an_area() {
        let text = YOGURT.replace("target=sn_lt101", "target=ar_production");
        assert_eq!(codes(&text), vec![RuleId::Ref01]);
    }

    #[test]
    fn reference_without_equivalence_link() {
        let text: String = YOGURT
            .lines()
            .filter(|l| !l.contains("id=lk_eq_print"))
            .map(|l| format!("{l}\n"))
            .collect();
        assert_eq!(codes(&text), vec![RuleId::Ref04]);
    }

    #[test]
    fn call_cycle() {
        let text = YOGURT.replace(
            "id=qt_sample name=\"Take sample\" exec=manual",
            "id=qt_sample name=\"Take sample\" exec=manual calls=a_quality",
        );
        assert_eq!(codes(&text), vec![RuleId::Sub01]);
    }

    #[test]
    fn validation_is_pure() {
        let spec = parse_spec(YOGURT).unwrap();
        assert_eq!(validate_spec(&spec), validate_spec(&spec));
    }
}
