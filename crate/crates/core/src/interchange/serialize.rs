use std::fmt::Write;

use crate::linkmodel::Link;
use crate::metamodel::*;

/// Writes the canonical interchange text of `spec`.
///
/// Sections appear in the order ts, pp, mes, links. Within every container
/// records are sorted by id regardless of kind; links are sorted by id.
pub fn serialize_spec(spec: &MesSpec) -> String {
    let mut out = String::new();
    out.push_str("ts:\n");
    ts_node(&mut out, &spec.ts().root, 1);
    out.push_str("pp:\n");
    process(&mut out, spec.pp());
    out.push_str("mes:\n");
    process(&mut out, spec.mes());
    out.push_str("links:\n");
    let mut links: Vec<&Link> = spec.links().links.iter().collect();
    links.sort_by(|a, b| a.id.cmp(&b.id));
    for link in links {
        let mut r = Record::new(1, link.link_type.literal(), &link.id);
        r.bare("source", &link.source.to_string());
        r.bare("target", &link.target.to_string());
        if let Some(c) = &link.connector {
            match c {
                crate::linkmodel::ConnectorType::Predefined(p) => r.bare("connector", p.literal()),
                crate::linkmodel::ConnectorType::Custom(name) => r.quoted("connector", name),
            }
        }
        r.end(&mut out);
    }
    out
}

/// Escapes `s` as a double-quoted interchange string.
pub(crate) fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        match c {
            '"' => q.push_str("\\\""),
            '\\' => q.push_str("\\\\"),
            '\n' => q.push_str("\\n"),
            '\r' => q.push_str("\\r"),
            '\t' => q.push_str("\\t"),
            c => q.push(c),
        }
    }
    q.push('"');
    q
}

struct Record {
    line: String,
}

impl Record {
    fn new(depth: usize, kind: &str, id: &ElementId) -> Self {
        let mut line = String::new();
        for _ in 0..depth {
            line.push_str("  ");
        }
        let _ = write!(line, "- kind={kind} id={id}");
        Record { line }
    }

    fn bare(&mut self, key: &str, value: &str) {
        let _ = write!(self.line, " {key}={value}");
    }

    fn quoted(&mut self, key: &str, value: &str) {
        let _ = write!(self.line, " {key}={}", quote(value));
    }

    fn degrees(&mut self, declared: &DeclaredDegrees) {
        for (value, key) in declared.0.iter().zip(DEGREE_KEYS) {
            if let Some(v) = value {
                self.bare(key, &v.to_string());
            }
        }
    }

    fn end(mut self, out: &mut String) {
        self.line.push('\n');
        out.push_str(&self.line);
    }
}

fn ts_node(out: &mut String, node: &TsNode, depth: usize) {
    let mut r = Record::new(depth, node.kind.literal(), &node.id);
    r.quoted("name", &node.name);
    for (k, v) in &node.attrs {
        r.quoted(&format!("attr.{k}"), v);
    }
    r.end(out);
    for child in &node.children {
        ts_node(out, child, depth + 1);
    }
}

fn process(out: &mut String, model: &ProcessModel) {
    // Pools sit beside the top-level diagram records, ordered by id with them.
    let mut entries: Vec<(&ElementId, Entry)> = model
        .pools
        .iter()
        .map(|p| (&p.id, Entry::Pool(p)))
        .collect();
    collect(&model.diagram, &mut entries);
    entries.sort_by(|a, b| a.0.cmp(b.0));
    for (_, e) in entries {
        entry(out, e, 1);
    }
}

enum Entry<'a> {
    Pool(&'a Pool),
    Activity(&'a Activity),
    Event(&'a Event),
    Gateway(&'a Gateway),
    ActivityRef(&'a ActivityRef),
    SignalRef(&'a SignalRef),
    DataObject(&'a DataObject),
    Connection(&'a Connection),
    Annotation(&'a TextAnnotation),
    Group(&'a Group),
}

fn collect<'a>(d: &'a Diagram, entries: &mut Vec<(&'a ElementId, Entry<'a>)>) {
    entries.extend(d.activities.iter().map(|x| (&x.id, Entry::Activity(x))));
    entries.extend(d.events.iter().map(|x| (&x.id, Entry::Event(x))));
    entries.extend(d.gateways.iter().map(|x| (&x.id, Entry::Gateway(x))));
    entries.extend(
        d.activity_refs
            .iter()
            .map(|x| (&x.id, Entry::ActivityRef(x))),
    );
    entries.extend(d.signal_refs.iter().map(|x| (&x.id, Entry::SignalRef(x))));
    entries.extend(d.data_objects.iter().map(|x| (&x.id, Entry::DataObject(x))));
    entries.extend(d.connections.iter().map(|x| (&x.id, Entry::Connection(x))));
    entries.extend(d.annotations.iter().map(|x| (&x.id, Entry::Annotation(x))));
    entries.extend(d.groups.iter().map(|x| (&x.id, Entry::Group(x))));
}

fn entry(out: &mut String, e: Entry<'_>, depth: usize) {
    match e {
        Entry::Pool(p) => {
            let mut r = Record::new(depth, "pool", &p.id);
            r.quoted("name", &p.name);
            r.bare("rank", &p.rank.to_string());
            r.end(out);
            for lane in &p.lanes {
                let mut r = Record::new(depth + 1, "lane", &lane.id);
                r.quoted("name", &lane.name);
                r.bare("rank", &lane.rank.to_string());
                r.end(out);
            }
        }
        Entry::Activity(a) => {
            let mut r = Record::new(depth, "activity", &a.id);
            r.quoted("name", &a.name);
            r.bare("exec", a.exec.literal());
            r.bare("repetition", a.repetition.literal());
            r.bare("status", a.status.literal());
            if let Some(lane) = &a.lane {
                r.bare("lane", lane.as_str());
            }
            if let Some(calls) = &a.calls {
                r.bare("calls", calls.as_str());
            }
            r.degrees(&a.declared);
            r.end(out);
            if let Some(sub) = &a.subprocess {
                let mut entries = Vec::new();
                collect(sub, &mut entries);
                entries.sort_by(|a, b| a.0.cmp(b.0));
                for (_, e) in entries {
                    entry(out, e, depth + 1);
                }
            }
        }
        Entry::Event(ev) => {
            let mut r = Record::new(depth, "event", &ev.id);
            if let Some(name) = &ev.name {
                r.quoted("name", name);
            }
            r.bare("exec", ev.exec.literal());
            if let Some(b) = ev.behavior {
                r.bare("behavior", b.literal());
            }
            r.end(out);
        }
        Entry::Gateway(g) => {
            let mut r = Record::new(depth, "gateway", &g.id);
            r.bare("exec", g.exec.literal());
            r.bare("behavior", g.behavior.literal());
            r.degrees(&g.declared);
            r.end(out);
        }
        Entry::ActivityRef(x) => reference(out, depth, "activity_ref", &x.id, &x.name, &x.target),
        Entry::SignalRef(x) => reference(out, depth, "signal_ref", &x.id, &x.name, &x.target),
        Entry::DataObject(o) => {
            let mut r = Record::new(depth, o.kind.literal(), &o.id);
            r.quoted("name", &o.name);
            r.end(out);
        }
        Entry::Connection(c) => {
            let mut r = Record::new(depth, c.kind.literal(), &c.id);
            r.bare("source", c.source.as_str());
            r.bare("target", c.target.as_str());
            r.end(out);
        }
        Entry::Annotation(t) => {
            let mut r = Record::new(depth, "text_annotation", &t.id);
            r.quoted("text", &t.text);
            r.end(out);
        }
        Entry::Group(g) => {
            let mut r = Record::new(depth, "group", &g.id);
            if let Some(name) = &g.name {
                r.quoted("name", name);
            }
            let members: Vec<&str> = g.members.iter().map(ElementId::as_str).collect();
            r.bare("members", &members.join(","));
            r.end(out);
        }
    }
}

fn reference(
    out: &mut String,
    depth: usize,
    kind: &str,
    id: &ElementId,
    name: &str,
    target: &ElementId,
) {
    let mut r = Record::new(depth, kind, id);
    r.quoted("name", name);
    r.bare("target", target.as_str());
    r.end(out);
}
