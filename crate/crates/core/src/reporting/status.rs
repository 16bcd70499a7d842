use std::fmt::Write;

use serde::Serialize;

use crate::metamodel::{ElementId, MesSpec, RequirementStatus, ViewTag};

/// Activities of one process model partitioned by requirement status.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatusEntry {
    pub view: ViewTag,
    pub to_implement: Vec<ElementId>,
    pub implemented: Vec<ElementId>,
    pub excluded: Vec<ElementId>,
}

impl StatusEntry {
    pub fn total(&self) -> usize {
        self.to_implement.len() + self.implemented.len() + self.excluded.len()
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (
            self.to_implement.len(),
            self.implemented.len(),
            self.excluded.len(),
        )
    }
}

/// Current-versus-target comparison over both process models.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatusReport {
    pub models: Vec<StatusEntry>,
}

impl StatusReport {
    pub fn model(&self, view: ViewTag) -> Option<&StatusEntry> {
        self.models.iter().find(|m| m.view == view)
    }
}

/// Partitions every activity, nested ones included, by status. Lists are
/// sorted by id.
pub fn status_report(spec: &MesSpec) -> StatusReport {
    let models = [ViewTag::Mes, ViewTag::Pp]
        .into_iter()
        .map(|view| {
            let mut entry = StatusEntry {
                view,
                to_implement: Vec::new(),
                implemented: Vec::new(),
                excluded: Vec::new(),
            };
            let model = spec.process_model(view).expect("process view");
            for a in model.all_activities() {
                let bucket = match a.status {
                    RequirementStatus::ToImplement => &mut entry.to_implement,
                    RequirementStatus::Implemented => &mut entry.implemented,
                    RequirementStatus::Excluded => &mut entry.excluded,
                };
                bucket.push(a.id.clone());
            }
            entry.to_implement.sort();
            entry.implemented.sort();
            entry.excluded.sort();
            entry
        })
        .collect();
    StatusReport { models }
}

pub fn render_status(report: &StatusReport) -> String {
    let mut out = String::new();
    for m in &report.models {
        let (t, i, e) = m.counts();
        let _ = writeln!(
            out,
            "{}: to_implement={t} implemented={i} excluded={e}",
            m.view.label()
        );
        for (label, ids) in [
            ("to_implement", &m.to_implement),
            ("implemented", &m.implemented),
            ("excluded", &m.excluded),
        ] {
            if !ids.is_empty() {
                let ids: Vec<&str> = ids.iter().map(ElementId::as_str).collect();
                let _ = writeln!(out, "  {label}: {}", ids.join(" "));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::YOGURT;
    use crate::parse_spec;

    #[test]
    fn yogurt_mes_functions_are_still_to_implement() {
        let spec = parse_spec(YOGURT).unwrap();
        let report = status_report(&spec);
        let mes = report.model(ViewTag::Mes).unwrap();
        assert!(!mes.to_implement.is_empty());
        let pp = report.model(ViewTag::Pp).unwrap();
        assert_eq!(pp.counts().0, 0);
        assert_eq!(pp.total(), spec.pp().all_activities().len());
    }

    #[test]
    fn six_activity_partition() {
        let mut text = String::from(
            "ts:\n  - kind=plant id=p name=\"P\"\npp:\n  - kind=event id=s exec=start\n",
        );
        for (i, status) in [
            "to_implement",
            "to_implement",
            "to_implement",
            "implemented",
            "implemented",
            "excluded",
        ]
        .iter()
        .enumerate()
        {
            let _ = writeln!(
                text,
                "  - kind=activity id=a{i} name=\"A{i}\" status={status}"
            );
        }
        text.push_str("mes:\nlinks:\n");
        let spec = parse_spec(&text).unwrap();
        let pp = status_report(&spec).model(ViewTag::Pp).unwrap().clone();
        assert_eq!(pp.counts(), (3, 2, 1));
    }
}
