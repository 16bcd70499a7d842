use std::collections::{BTreeMap, HashMap};

use super::lexer::{lex, Pair, RawRecord, Section};
use super::{ParseError, ParseErrorCategory, SourceSpan};
use crate::error::ResolveErrorKind;
use crate::linkmodel::{ConnectorType, Link, LinkModel, LinkType};
use crate::metamodel::*;

use ParseErrorCategory::*;

/// Parses a document. Every problem found is reported; parsing does not
/// stop at the first error.
pub fn parse_spec(document: &str) -> Result<MesSpec, Vec<ParseError>> {
    parse_spec_named("<input>", document)
}

/// Like [`parse_spec`], with `file` used in error spans.
pub fn parse_spec_named(file: &str, document: &str) -> Result<MesSpec, Vec<ParseError>> {
    let mut errors = Vec::new();
    let raw = lex(file, document, &mut errors);
    let mut b = Builder {
        errors,
        spans: HashMap::new(),
    };

    let mut ts = None;
    let mut pp = None;
    let mut mes = None;
    let mut links = None;
    for (section, span, records) in &raw.sections {
        match section {
            Section::Ts => {
                if ts.is_some() {
                    continue;
                }
                ts = Some(b.technical(span, records));
            }
            Section::Pp => {
                if pp.is_none() {
                    pp = Some(b.process(ViewTag::Pp, records));
                }
            }
            Section::Mes => {
                if mes.is_none() {
                    mes = Some(b.process(ViewTag::Mes, records));
                }
            }
            Section::Links => {
                if links.is_none() {
                    links = Some(b.links(records));
                }
            }
        }
    }

    let end = SourceSpan {
        file: file.to_string(),
        line: document.lines().count().max(1),
        column: 1,
        length: 0,
    };
    let mut missing = |present: bool, name: &str| {
        if !present {
            b.errors.push(ParseError {
                span: end.clone(),
                message: format!("section `{name}:` is missing"),
                category: MissingSubmodel,
            });
        }
    };
    missing(ts.is_some(), "ts");
    missing(pp.is_some(), "pp");
    missing(mes.is_some(), "mes");
    missing(links.is_some(), "links");

    let (Some(Some(ts)), Some(pp), Some(mes), Some(links)) = (ts, pp, mes, links) else {
        return Err(b.finish());
    };
    match MesSpec::new(mes, pp, ts, links) {
        Ok(spec) if b.errors.is_empty() => Ok(spec),
        Ok(_) => Err(b.finish()),
        Err(resolve_errors) => {
            let mut seen: HashMap<ElementId, usize> = HashMap::new();
            for e in resolve_errors {
                let spans = b.spans.get(&e.subject);
                let span = match e.kind {
                    // point at the later occurrence of a duplicate
                    ResolveErrorKind::DuplicateId => {
                        let n = seen.entry(e.subject.clone()).or_insert(0);
                        *n += 1;
                        spans.and_then(|s| s.get(*n).or(s.last()))
                    }
                    _ => spans.and_then(|s| s.first()),
                }
                .cloned()
                .unwrap_or_else(|| end.clone());
                let category = match e.kind {
                    ResolveErrorKind::DuplicateId => DuplicateId,
                    ResolveErrorKind::DanglingRef => DanglingRef,
                    ResolveErrorKind::EmptyGroup => Syntax,
                };
                b.errors.push(ParseError {
                    span,
                    message: e.message,
                    category,
                });
            }
            Err(b.finish())
        }
    }
}

struct Builder {
    errors: Vec<ParseError>,
    /// Spans of every record carrying a given id, in document order.
    spans: HashMap<ElementId, Vec<SourceSpan>>,
}

impl Builder {
    fn finish(mut self) -> Vec<ParseError> {
        self.errors.sort_by(|a, b| {
            (a.span.line, a.span.column, &a.message).cmp(&(b.span.line, b.span.column, &b.message))
        });
        self.errors.dedup();
        self.errors
    }

    fn error(
        &mut self,
        span: &SourceSpan,
        category: ParseErrorCategory,
        message: impl Into<String>,
    ) {
        self.errors.push(ParseError {
            span: span.clone(),
            message: message.into(),
            category,
        });
    }

    fn reject_children(&mut self, rec: &RawRecord, kind: &str) {
        if let Some(child) = rec.children.first() {
            self.error(
                &child.span,
                Syntax,
                format!("`{kind}` records cannot contain nested records"),
            );
        }
    }

    // ---- technical system ------------------------------------------------

    fn technical(
        &mut self,
        header: &SourceSpan,
        records: &[RawRecord],
    ) -> Option<TechnicalSystemModel> {
        let mut roots = records.iter().filter_map(|r| self.ts_node(r));
        let root = roots.next();
        let extra: Vec<TsNode> = roots.collect();
        if !extra.is_empty() {
            let span = records
                .iter()
                .skip(1)
                .map(|r| r.span.clone())
                .next()
                .unwrap_or_else(|| header.clone());
            self.error(
                &span,
                Syntax,
                "the technical system must have a single root record",
            );
        }
        match root {
            Some(root) => Some(TechnicalSystemModel::new(root)),
            None => {
                self.error(header, MissingSubmodel, "section `ts:` has no root record");
                None
            }
        }
    }

    fn ts_node(&mut self, rec: &RawRecord) -> Option<TsNode> {
        let mut f = Fields::new(rec);
        let kind_text = f.required(self, "kind")?;
        let Some(kind) = TsKind::from_literal(&kind_text) else {
            let span = f.span_of("kind");
            self.error(
                &span,
                BadEnum,
                format!(
                    "`{kind_text}` is not a technical-system kind ({})",
                    TsKind::literals()
                ),
            );
            return None;
        };
        let id = f.id(self, "id")?;
        let name = f.name(self)?;
        let mut attrs = BTreeMap::new();
        for pair in &rec.pairs {
            if let Some(key) = pair.key.strip_prefix("attr.") {
                f.mark(&pair.key);
                if kind != TsKind::Signal {
                    self.error(
                        &pair.span,
                        UnknownKey,
                        "attributes are only allowed on signals",
                    );
                } else if !is_valid_id(key) {
                    self.error(&pair.span, Syntax, format!("invalid attribute key `{key}`"));
                } else {
                    attrs.insert(key.to_string(), pair.value.clone());
                }
            }
        }
        f.finish(self);
        self.remember(&id, rec);
        let children = rec
            .children
            .iter()
            .filter_map(|c| self.ts_node(c))
            .collect();
        Some(TsNode {
            id,
            kind,
            name,
            attrs,
            children,
        })
    }

    // ---- process models --------------------------------------------------

    fn process(&mut self, role: ViewTag, records: &[RawRecord]) -> ProcessModel {
        let mut model = ProcessModel::new(role);
        for rec in records {
            let kind = rec
                .pairs
                .iter()
                .find(|p| p.key == "kind")
                .map(|p| p.value.as_str());
            if kind == Some("pool") {
                if role != ViewTag::Mes {
                    self.error(
                        &rec.span,
                        Syntax,
                        "pools and lanes are only allowed in the `mes:` section",
                    );
                    continue;
                }
                if let Some(pool) = self.pool(rec) {
                    model.pools.push(pool);
                }
            } else {
                self.diagram_record(rec, &mut model.diagram);
            }
        }
        model
    }

    fn pool(&mut self, rec: &RawRecord) -> Option<Pool> {
        let mut f = Fields::new(rec);
        f.mark("kind");
        // a malformed pool record still gets its lanes checked
        let (id, name, rank) = (f.id(self, "id"), f.name(self), f.rank(self));
        f.finish(self);
        if let Some(id) = &id {
            self.remember(id, rec);
        }
        let mut lanes = Vec::new();
        for child in &rec.children {
            let mut f = Fields::new(child);
            match f.optional("kind").as_deref() {
                Some("lane") => {}
                other => {
                    self.error(
                        &child.span,
                        Syntax,
                        format!("only `lane` records may be nested under a pool, found {other:?}"),
                    );
                    continue;
                }
            }
            let (Some(id), Some(name), Some(rank)) = (f.id(self, "id"), f.name(self), f.rank(self))
            else {
                continue;
            };
            f.finish(self);
            self.remember(&id, child);
            self.reject_children(child, "lane");
            lanes.push(Lane { id, name, rank });
        }
        Some(Pool {
            id: id?,
            name: name?,
            rank: rank?,
            lanes,
        })
    }

    fn diagram_record(&mut self, rec: &RawRecord, diagram: &mut Diagram) {
        let mut f = Fields::new(rec);
        let Some(kind) = f.required(self, "kind") else {
            return;
        };
        let Some(id) = f.id(self, "id") else { return };
        self.remember(&id, rec);
        if kind != "activity" {
            self.reject_children(rec, &kind);
        }
        match kind.as_str() {
            "activity" => {
                let Some(name) = f.name(self) else { return };
                let mut activity = Activity::new(id, name);
                let exec = f.enumeration(
                    self,
                    "exec",
                    ActivityExec::from_literal,
                    ActivityExec::literals,
                );
                let repetition = f.enumeration(
                    self,
                    "repetition",
                    Repetition::from_literal,
                    Repetition::literals,
                );
                let status = f.enumeration(
                    self,
                    "status",
                    RequirementStatus::from_literal,
                    RequirementStatus::literals,
                );
                activity.exec = exec
                    .unwrap_or(Some(ActivityExec::Undefined))
                    .unwrap_or(ActivityExec::Undefined);
                activity.repetition = repetition
                    .unwrap_or(Some(Repetition::None))
                    .unwrap_or(Repetition::None);
                activity.status = status
                    .unwrap_or(Some(RequirementStatus::ToImplement))
                    .unwrap_or(RequirementStatus::ToImplement);
                activity.lane = f.optional_id(self, "lane");
                activity.calls = f.optional_id(self, "calls");
                activity.declared = f.degrees(self);
                f.finish(self);
                if !rec.children.is_empty() {
                    let mut sub = Diagram::default();
                    for child in &rec.children {
                        if child
                            .pairs
                            .iter()
                            .any(|p| p.key == "kind" && p.value == "pool")
                        {
                            self.error(
                                &child.span,
                                Syntax,
                                "pools cannot be nested inside a subprocess",
                            );
                            continue;
                        }
                        self.diagram_record(child, &mut sub);
                    }
                    activity.subprocess = Some(sub);
                }
                diagram.activities.push(activity);
            }
            "event" => {
                let name = f.optional("name");
                let exec =
                    f.enumeration(self, "exec", EventExec::from_literal, EventExec::literals);
                let behavior = f.enumeration(
                    self,
                    "behavior",
                    EventBehavior::from_literal,
                    EventBehavior::literals,
                );
                let exec = match exec {
                    Some(Some(e)) => e,
                    None => {
                        self.error(&rec.span, Syntax, "`event` record requires `exec`");
                        return;
                    }
                    Some(None) => return,
                };
                f.finish(self);
                diagram.events.push(Event {
                    id,
                    name,
                    exec,
                    behavior: behavior.flatten(),
                });
            }
            "gateway" => {
                let exec = f.enumeration(
                    self,
                    "exec",
                    GatewayExec::from_literal,
                    GatewayExec::literals,
                );
                let behavior = f.enumeration(
                    self,
                    "behavior",
                    GatewayBehavior::from_literal,
                    GatewayBehavior::literals,
                );
                let declared = f.degrees(self);
                f.finish(self);
                match (exec, behavior) {
                    (Some(Some(exec)), Some(Some(behavior))) => diagram.gateways.push(Gateway {
                        id,
                        exec,
                        behavior,
                        declared,
                    }),
                    (e, b) => {
                        if e.is_none() || b.is_none() {
                            self.error(
                                &rec.span,
                                Syntax,
                                "`gateway` record requires `exec` and `behavior`",
                            );
                        }
                    }
                }
            }
            "activity_ref" | "signal_ref" => {
                let (Some(name), Some(target)) = (f.name(self), f.id(self, "target")) else {
                    return;
                };
                f.finish(self);
                if kind == "activity_ref" {
                    diagram.activity_refs.push(ActivityRef { id, name, target });
                } else {
                    diagram.signal_refs.push(SignalRef { id, name, target });
                }
            }
            "data_object" | "multi_data_object" | "data_store" => {
                let Some(name) = f.name(self) else { return };
                f.finish(self);
                diagram.data_objects.push(DataObject {
                    id,
                    name,
                    kind: DataObjectKind::from_literal(&kind).expect("matched above"),
                });
            }
            "sequence_flow" | "message_flow" | "data_flow" | "association" => {
                let (Some(source), Some(target)) = (f.id(self, "source"), f.id(self, "target"))
                else {
                    return;
                };
                f.finish(self);
                diagram.connections.push(Connection {
                    id,
                    kind: ConnectionKind::from_literal(&kind).expect("matched above"),
                    source,
                    target,
                });
            }
            "text_annotation" => {
                let Some(text) = f.required(self, "text") else {
                    return;
                };
                f.finish(self);
                diagram.annotations.push(TextAnnotation { id, text });
            }
            "group" => {
                let name = f.optional("name");
                let Some(list) = f.required(self, "members") else {
                    return;
                };
                let mut members = Vec::new();
                for m in list.split(',').filter(|m| !m.is_empty()) {
                    match ElementId::new(m) {
                        Ok(m) => members.push(m),
                        Err(e) => {
                            let span = f.span_of("members");
                            self.error(&span, Syntax, e.to_string());
                        }
                    }
                }
                f.finish(self);
                diagram.groups.push(Group { id, name, members });
            }
            "lane" => {
                self.error(
                    &rec.span,
                    Syntax,
                    "`lane` records must be nested under a pool",
                );
            }
            other => {
                let span = f.span_of("kind");
                self.error(
                    &span,
                    BadEnum,
                    format!("unknown process element kind `{other}`"),
                );
            }
        }
    }

    // ---- links -----------------------------------------------------------

    fn links(&mut self, records: &[RawRecord]) -> LinkModel {
        let mut links = Vec::new();
        for rec in records {
            self.reject_children(rec, "link");
            let mut f = Fields::new(rec);
            let Some(kind) = f.required(self, "kind") else {
                continue;
            };
            let Some(link_type) = LinkType::from_literal(&kind) else {
                let span = f.span_of("kind");
                self.error(
                    &span,
                    BadEnum,
                    format!("`{kind}` is not a link type ({})", LinkType::literals()),
                );
                continue;
            };
            let Some(id) = f.id(self, "id") else { continue };
            self.remember(&id, rec);
            let source = f.element_ref(self, "source");
            let target = f.element_ref(self, "target");
            let connector = f.optional("connector").and_then(|c| {
                let parsed = ConnectorType::from_name(&c);
                if parsed.is_none() {
                    let span = f.span_of("connector");
                    self.error(&span, Syntax, "connector name must not be empty");
                }
                parsed
            });
            f.finish(self);
            if let (Some(source), Some(target)) = (source, target) {
                links.push(Link {
                    id,
                    link_type,
                    source,
                    target,
                    connector,
                });
            }
        }
        LinkModel::new(links)
    }

    fn remember(&mut self, id: &ElementId, rec: &RawRecord) {
        self.spans
            .entry(id.clone())
            .or_default()
            .push(rec.span.clone());
    }
}

/// Key lookup over one record that tracks which keys were consumed.
struct Fields<'a> {
    rec: &'a RawRecord,
    used: Vec<bool>,
}

impl<'a> Fields<'a> {
    fn new(rec: &'a RawRecord) -> Self {
        Fields {
            rec,
            used: vec![false; rec.pairs.len()],
        }
    }

    fn pair(&mut self, key: &str) -> Option<&'a Pair> {
        let i = self.rec.pairs.iter().position(|p| p.key == key)?;
        self.used[i] = true;
        Some(&self.rec.pairs[i])
    }

    fn mark(&mut self, key: &str) {
        self.pair(key);
    }

    fn span_of(&self, key: &str) -> SourceSpan {
        self.rec
            .pairs
            .iter()
            .find(|p| p.key == key)
            .map_or_else(|| self.rec.span.clone(), |p| p.span.clone())
    }

    fn optional(&mut self, key: &str) -> Option<String> {
        self.pair(key).map(|p| p.value.clone())
    }

    fn required(&mut self, b: &mut Builder, key: &str) -> Option<String> {
        let value = self.optional(key);
        if value.is_none() {
            b.error(
                &self.rec.span,
                Syntax,
                format!("missing required key `{key}`"),
            );
        }
        value
    }

    fn name(&mut self, b: &mut Builder) -> Option<String> {
        let name = self.required(b, "name")?;
        if name.is_empty() {
            b.error(&self.span_of("name"), Syntax, "name must not be empty");
            return None;
        }
        Some(name)
    }

    fn id(&mut self, b: &mut Builder, key: &str) -> Option<ElementId> {
        let value = self.required(b, key)?;
        self.parse_id(b, key, &value)
    }

    fn optional_id(&mut self, b: &mut Builder, key: &str) -> Option<ElementId> {
        let value = self.optional(key)?;
        self.parse_id(b, key, &value)
    }

    fn parse_id(&self, b: &mut Builder, key: &str, value: &str) -> Option<ElementId> {
        match ElementId::new(value) {
            Ok(id) => Some(id),
            Err(e) => {
                b.error(&self.span_of(key), Syntax, e.to_string());
                None
            }
        }
    }

    fn element_ref(&mut self, b: &mut Builder, key: &str) -> Option<ElementRef> {
        let value = self.required(b, key)?;
        let span = self.span_of(key);
        let Some((view, id)) = value.split_once(':') else {
            b.error(
                &span,
                Syntax,
                format!("`{key}` must be written as view:id, found `{value}`"),
            );
            return None;
        };
        let Ok(view) = view.parse::<ViewTag>() else {
            b.error(
                &span,
                BadEnum,
                format!("`{view}` is not a view (mes|pp|ts)"),
            );
            return None;
        };
        let id = self.parse_id(b, key, id)?;
        Some(ElementRef::new(view, id))
    }

    fn rank(&mut self, b: &mut Builder) -> Option<u32> {
        match self.optional("rank") {
            None => Some(0),
            Some(v) => match v.parse() {
                Ok(r) => Some(r),
                Err(_) => {
                    b.error(
                        &self.span_of("rank"),
                        Syntax,
                        format!("rank must be a non-negative integer, found `{v}`"),
                    );
                    None
                }
            },
        }
    }

    /// `None`: key absent. `Some(None)`: present but invalid (reported).
    fn enumeration<T>(
        &mut self,
        b: &mut Builder,
        key: &str,
        parse: fn(&str) -> Option<T>,
        literals: fn() -> String,
    ) -> Option<Option<T>> {
        let value = self.optional(key)?;
        let parsed = parse(&value);
        if parsed.is_none() {
            b.error(
                &self.span_of(key),
                BadEnum,
                format!("`{value}` is not a valid {key} ({})", literals()),
            );
        }
        Some(parsed)
    }

    fn degrees(&mut self, b: &mut Builder) -> DeclaredDegrees {
        let mut declared = DeclaredDegrees::default();
        for (slot, key) in declared.0.iter_mut().zip(DEGREE_KEYS) {
            if let Some(v) = self.optional(key) {
                match v.parse() {
                    Ok(n) => *slot = Some(n),
                    Err(_) => b.error(
                        &self.span_of(key),
                        Syntax,
                        format!("`{key}` must be a non-negative integer, found `{v}`"),
                    ),
                }
            }
        }
        declared
    }

    fn finish(self, b: &mut Builder) {
        for (pair, used) in self.rec.pairs.iter().zip(&self.used) {
            if !used {
                b.error(
                    &pair.span,
                    UnknownKey,
                    format!("unknown key `{}`", pair.key),
                );
            }
        }
    }
}
