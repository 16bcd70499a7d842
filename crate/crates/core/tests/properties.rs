use std::collections::{HashMap, HashSet};

use mesml_core::linker::{equivalence_pairs, links_of};
use mesml_core::linkmodel::LegalityEntry;
use mesml_core::metamodel::{ConnectionKind, Diagram, TextAnnotation, TsNode};
use mesml_core::reporting::{diagram_tree, export_dot, link_report, model_stats, status_report};
use mesml_core::synth::{inject_defect, injectable_rules, random_spec};
use mesml_core::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(96)
}

/// Connection counts per kind, counted straight from the diagrams.
fn connection_counts(spec: &MesSpec) -> HashMap<ConnectionKind, u32> {
    let mut counts = HashMap::new();
    for model in [spec.mes(), spec.pp()] {
        model.diagram.walk(&mut |_, d: &Diagram, _| {
            for c in &d.connections {
                *counts.entry(c.kind).or_insert(0) += 1;
            }
        });
    }
    counts
}

fn table() -> HashMap<(ElementKind, ElementKind, LinkType), LinkLegality> {
    legality_table()
        .into_iter()
        .map(
            |LegalityEntry {
                 source,
                 target,
                 link_type,
                 verdict,
             }| ((source, target, link_type), verdict),
        )
        .collect()
}

/// Expected link rule computed from the kind table and the instance
/// predicates, in catalog precedence.
fn oracle_rule(
    spec: &MesSpec,
    link: &Link,
    table: &HashMap<(ElementKind, ElementKind, LinkType), LinkLegality>,
) -> Option<RuleId> {
    let s = spec.info(&link.source.id).unwrap();
    let t = spec.info(&link.target.id).unwrap();
    let kind_rule = table[&(s.kind, t.kind, link.link_type)].rule();
    if s.link_event || t.link_event || kind_rule == Some(RuleId::Lk01) {
        return Some(RuleId::Lk01);
    }
    if s.view == t.view {
        return Some(RuleId::Lk02);
    }
    if kind_rule.is_some() {
        return kind_rule;
    }
    if link.link_type == LinkType::Equivalence && s.name != t.name {
        return Some(RuleId::Lk05);
    }
    None
}

fn with_random_links(seed: u64, extra: usize) -> MesSpec {
    use rand::seq::IndexedRandom;
    use rand::Rng;
    let spec = random_spec(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let refs: Vec<ElementRef> = spec
        .element_ids()
        .map(|id| spec.element_ref(id).unwrap())
        .collect();
    let (mes, pp, ts, mut links) = spec.into_parts();
    for i in 0..extra {
        links.links.push(Link {
            id: ElementId::new(format!("extra{i}")).unwrap(),
            link_type: *LinkType::ALL.choose(&mut rng).unwrap(),
            source: refs.choose(&mut rng).unwrap().clone(),
            target: refs.choose(&mut rng).unwrap().clone(),
            connector: rng
                .random_bool(0.5)
                .then(|| ConnectorType::from_name("opc").unwrap()),
        });
    }
    MesSpec::new(mes, pp, ts, links).unwrap()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn round_trip(seed in any::<u64>()) {
        let spec = random_spec(seed);
        let text = serialize_spec(&spec);
        let back = parse_spec(&text).map_err(|e| TestCaseError::fail(format!("{e:?}\n{text}")))?;
        prop_assert_eq!(&back, &spec);
        prop_assert_eq!(serialize_spec(&back), text);
    }

    #[test]
    fn ids_are_unique(seed in any::<u64>()) {
        let spec = random_spec(seed);
        let ids: HashSet<&ElementId> = spec.element_ids().collect();
        prop_assert_eq!(ids.len(), spec.element_count());
    }

    #[test]
    fn ts_is_a_tree(seed in any::<u64>()) {
        let spec = random_spec(seed);
        let mut nodes = 0;
        let mut edges = 0;
        let mut seen = HashSet::new();
        spec.ts().root.walk(&mut |n: &TsNode, parent, _| {
            nodes += 1;
            edges += usize::from(parent.is_some());
            assert!(seen.insert(n.id.clone()));
        });
        prop_assert_eq!(edges, nodes - 1);
    }

    #[test]
    fn degrees_are_sound(seed in any::<u64>()) {
        let spec = random_spec(seed);
        let counts = connection_counts(&spec);
        let mut sums = [0u32; 6];
        for id in spec.element_ids() {
            let r = spec.element_ref(id).unwrap();
            if let Ok(d) = spec.compute_degrees(&r) {
                for (s, v) in sums.iter_mut().zip(d.as_array()) {
                    *s += v;
                }
            }
        }
        let n = |k| counts.get(&k).copied().unwrap_or(0);
        prop_assert_eq!(sums[0] + sums[1], 2 * n(ConnectionKind::Sequence));
        prop_assert_eq!(sums[2] + sums[3], 2 * n(ConnectionKind::Message));
        prop_assert_eq!(sums[4] + sums[5], 2 * n(ConnectionKind::Data));
    }

    #[test]
    fn link_diagnostics_match_oracle(seed in any::<u64>(), extra in 0usize..8) {
        let spec = with_random_links(seed, extra);
        let table = table();
        let link_rules = [RuleId::Lk01, RuleId::Lk02, RuleId::Lk03, RuleId::Lk04, RuleId::Lk05, RuleId::Lk06];
        let mut expected: Vec<(String, RuleId)> = spec
            .links()
            .links
            .iter()
            .filter_map(|l| oracle_rule(&spec, l, &table).map(|r| (format!("link:{}", l.id), r)))
            .collect();
        let mut actual: Vec<(String, RuleId)> = validate_spec(&spec)
            .into_iter()
            .filter(|d| link_rules.contains(&d.rule))
            .map(|d| (d.subject.to_string(), d.rule))
            .collect();
        expected.sort();
        actual.sort();
        prop_assert_eq!(actual, expected);
        for l in &spec.links().links {
            if check_link(l, &spec).unwrap().is_allowed() {
                prop_assert_ne!(spec.view_of(&l.source).unwrap(), spec.view_of(&l.target).unwrap());
            }
        }
    }

    #[test]
    fn links_of_counts_each_link_twice(seed in any::<u64>()) {
        let spec = random_spec(seed);
        let mut total = 0;
        for id in spec.element_ids() {
            total += links_of(&spec.element_ref(id).unwrap(), &spec).unwrap().len();
        }
        prop_assert_eq!(total, 2 * spec.links().links.len());
    }

    #[test]
    fn link_report_partitions_links(seed in any::<u64>()) {
        let spec = random_spec(seed);
        let r = link_report(&spec).unwrap();
        let mut ids: Vec<&ElementId> = r
            .equivalences
            .iter()
            .map(|p| &p.link)
            .chain(r.deployments.entries.iter().map(|e| &e.link))
            .chain(r.interfaces.iter().map(|i| &i.link))
            .collect();
        ids.sort();
        let mut all: Vec<&ElementId> = spec.links().links.iter().map(|l| &l.id).collect();
        all.sort();
        prop_assert_eq!(ids, all);
    }

    #[test]
    fn equivalence_direction_is_irrelevant(seed in any::<u64>()) {
        let spec = random_spec(seed);
        let (mes, pp, ts, mut links) = spec.clone().into_parts();
        for l in &mut links.links {
            if l.link_type == LinkType::Equivalence {
                std::mem::swap(&mut l.source, &mut l.target);
            }
        }
        let flipped = MesSpec::new(mes, pp, ts, links).unwrap();
        prop_assert_eq!(equivalence_pairs(&spec).unwrap(), equivalence_pairs(&flipped).unwrap());
    }

    #[test]
    fn reports_are_consistent(seed in any::<u64>()) {
        let spec = random_spec(seed);
        let status = status_report(&spec);
        let stats = model_stats(&spec);
        for view in [ViewTag::Mes, ViewTag::Pp] {
            let model = spec.process_model(view).unwrap();
            let activities = model.all_activities();
            prop_assert_eq!(status.model(view).unwrap().total(), activities.len());
            let v = stats.view(view).unwrap();
            let with_sub = activities.iter().filter(|a| a.subprocess.is_some()).count();
            prop_assert_eq!(v.totals.diagrams, 1 + with_sub);
            prop_assert_eq!(diagram_tree(&spec, view).unwrap().root.node_count(), 1 + with_sub);
            prop_assert_eq!(v.totals.activities, activities.len());
            prop_assert_eq!(v.totals.activities, v.diagrams.iter().map(|d| d.activities).sum::<usize>());
        }
        let ts_nodes = spec.ts().root.node_count();
        prop_assert_eq!(stats.totals.activities + stats.totals.other_elements, spec.element_count());
        prop_assert!(stats.totals.other_elements >= ts_nodes);
    }

    #[test]
    fn validation_and_export_are_pure(seed in any::<u64>()) {
        let spec = random_spec(seed);
        prop_assert_eq!(validate_spec(&spec), validate_spec(&spec));
        for view in [ViewTag::Mes, ViewTag::Pp, ViewTag::Ts] {
            prop_assert_eq!(export_dot(&spec, view, None).unwrap(), export_dot(&spec, view, None).unwrap());
        }
    }

    #[test]
    fn unrelated_additions_keep_diagnostics(seed in any::<u64>(), rule in 0usize..27) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let broken = inject_defect(&random_spec(seed), injectable_rules()[rule], &mut rng);
        let before = validate_spec(&broken);
        let (mut mes, pp, ts, links) = broken.into_parts();
        mes.diagram.annotations.push(TextAnnotation {
            id: ElementId::new("unrelated_note").unwrap(),
            text: "Nothing to see".into(),
        });
        let after = validate_spec(&MesSpec::new(mes, pp, ts, links).unwrap());
        for d in &before {
            prop_assert!(after.contains(d), "lost {d:?}");
        }
    }

    #[test]
    fn seeded_parse_defects_are_all_reported(seed in any::<u64>(), k in 1usize..5) {
        let text = serialize_spec(&random_spec(seed));
        let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
        let candidates: Vec<usize> = lines
            .iter()
            .enumerate()
            .filter(|(_, l)| l.trim_start().starts_with("- kind="))
            .map(|(i, _)| i)
            .collect();
        let k = k.min(candidates.len());
        for &i in candidates.iter().take(k) {
            lines[i] = format!("{} bogus_key=1", lines[i]);
        }
        let errors = parse_spec(&lines.join("\n")).unwrap_err();
        prop_assert!(errors.len() >= k, "{} < {k}", errors.len());
    }
}
