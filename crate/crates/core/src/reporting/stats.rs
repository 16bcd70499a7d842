use std::fmt::Write;

use serde::Serialize;

use crate::metamodel::{ElementId, MesSpec, ViewTag};

/// Counts for one diagram: the top level of a model or one subprocess.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramStats {
    /// Subprocess activity; `None` for the top level.
    pub owner: Option<ElementId>,
    pub level: usize,
    pub activities: usize,
    pub other_elements: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub diagrams: usize,
    pub activities: usize,
    pub other_elements: usize,
}

impl Totals {
    fn add(&mut self, other: &Totals) {
        self.diagrams += other.diagrams;
        self.activities += other.activities;
        self.other_elements += other.other_elements;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViewStats {
    pub view: ViewTag,
    pub totals: Totals,
    pub diagrams: Vec<DiagramStats>,
}

/// Size of a specification: diagrams (activities; all other elements) per
/// view, with grand totals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelStats {
    pub views: Vec<ViewStats>,
    pub totals: Totals,
}

impl ModelStats {
    pub fn view(&self, view: ViewTag) -> Option<&ViewStats> {
        self.views.iter().find(|v| v.view == view)
    }
}

pub fn model_stats(spec: &MesSpec) -> ModelStats {
    let mut views = Vec::new();
    for view in [ViewTag::Mes, ViewTag::Pp] {
        let model = spec.process_model(view).expect("process view");
        let mut diagrams = Vec::new();
        model.diagram.walk(&mut |owner, d, level| {
            let mut other = d.element_count() - d.activities.len();
            if owner.is_none() {
                other += model.pools.len() + model.lane_count();
            }
            diagrams.push(DiagramStats {
                owner: owner.map(|a| a.id.clone()),
                level,
                activities: d.activities.len(),
                other_elements: other,
            });
        });
        views.push(summarize(view, diagrams));
    }
    views.push(summarize(
        ViewTag::Ts,
        vec![DiagramStats {
            owner: None,
            level: 0,
            activities: 0,
            other_elements: spec.ts().root.node_count(),
        }],
    ));
    let mut totals = Totals::default();
    for v in &views {
        totals.add(&v.totals);
    }
    ModelStats { views, totals }
}

fn summarize(view: ViewTag, diagrams: Vec<DiagramStats>) -> ViewStats {
    let totals = Totals {
        diagrams: diagrams.len(),
        activities: diagrams.iter().map(|d| d.activities).sum(),
        other_elements: diagrams.iter().map(|d| d.other_elements).sum(),
    };
    ViewStats {
        view,
        totals,
        diagrams,
    }
}

fn line(label: &str, t: &Totals) -> String {
    let noun = if t.diagrams == 1 {
        "diagram"
    } else {
        "diagrams"
    };
    format!(
        "{label:<6}{} {noun} ({}; {})",
        t.diagrams, t.activities, t.other_elements
    )
}

pub fn render_stats(stats: &ModelStats) -> String {
    let mut out = String::new();
    for v in &stats.views {
        let _ = writeln!(out, "{}", line(v.view.label(), &v.totals));
    }
    let _ = writeln!(out, "{}", line("total", &stats.totals));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{MINIMAL, YOGURT};
    use crate::parse_spec;

    #[test]
    fn minimal_counts() {
        let stats = model_stats(&parse_spec(MINIMAL).unwrap());
        let pp = &stats.view(ViewTag::Pp).unwrap().totals;
        assert_eq!((pp.diagrams, pp.activities, pp.other_elements), (1, 1, 4));
        assert!(render_stats(&stats).contains("PP    1 diagram (1; 4)"));
    }

    #[test]
    fn yogurt_level_zero_has_five_steps() {
        let stats = model_stats(&parse_spec(YOGURT).unwrap());
        let top = &stats.view(ViewTag::Pp).unwrap().diagrams[0];
        assert_eq!((top.owner.as_ref(), top.activities), (None, 5));
    }

    #[test]
    fn totals_are_sums() {
        let stats = model_stats(&parse_spec(YOGURT).unwrap());
        let sum: usize = stats
            .views
            .iter()
            .map(|v| v.totals.activities + v.totals.other_elements)
            .sum();
        assert_eq!(sum, stats.totals.activities + stats.totals.other_elements);
    }
}
