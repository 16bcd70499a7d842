//! Line-level tokenizer: turns the document into sections of nested raw
//! records. Knows nothing about element kinds.

use super::{ParseError, ParseErrorCategory, SourceSpan};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Section {
    Ts,
    Pp,
    Mes,
    Links,
}

impl Section {
    pub(crate) fn name(self) -> &'static str {
        match self {
            Section::Ts => "ts",
            Section::Pp => "pp",
            Section::Mes => "mes",
            Section::Links => "links",
        }
    }

    fn from_name(s: &str) -> Option<Section> {
        match s {
            "ts" => Some(Section::Ts),
            "pp" => Some(Section::Pp),
            "mes" => Some(Section::Mes),
            "links" => Some(Section::Links),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Pair {
    pub key: String,
    pub value: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone)]
pub(crate) struct RawRecord {
    pub span: SourceSpan,
    pub pairs: Vec<Pair>,
    pub children: Vec<RawRecord>,
}

#[derive(Debug, Default)]
pub(crate) struct RawDocument {
    pub sections: Vec<(Section, SourceSpan, Vec<RawRecord>)>,
}

pub(crate) fn lex(file: &str, text: &str, errors: &mut Vec<ParseError>) -> RawDocument {
    let mut doc = RawDocument::default();
    // Open records, innermost last; index i holds a record at depth i.
    let mut stack: Vec<RawRecord> = Vec::new();
    // After a badly indented record, its deeper continuation lines are skipped.
    let mut skip_below: Option<usize> = None;

    let span = |line: usize, column: usize, length: usize| SourceSpan {
        file: file.to_string(),
        line,
        column,
        length,
    };

    for (n, raw_line) in text.split('\n').enumerate() {
        let line_no = n + 1;
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
        let body = line.trim_start_matches(' ');
        let indent = line.len() - body.len();
        if body.trim().is_empty() || body.starts_with('#') {
            continue;
        }
        if body.starts_with('\t') {
            errors.push(err(
                span(line_no, indent + 1, 1),
                "tab characters are not allowed in indentation",
            ));
            continue;
        }

        if indent == 0 {
            close_all(&mut stack, &mut doc);
            skip_below = None;
            let header = body.trim_end();
            match header.strip_suffix(':').and_then(Section::from_name) {
                Some(section) => {
                    let s = span(line_no, 1, header.len());
                    if doc
                        .sections
                        .iter()
                        .any(|(existing, _, _)| *existing == section)
                    {
                        errors.push(err(
                            s.clone(),
                            format!("section `{}` appears more than once", section.name()),
                        ));
                    }
                    doc.sections.push((section, s, Vec::new()));
                }
                None => errors.push(err(
                    span(line_no, 1, header.len()),
                    format!("expected a section header (ts:, pp:, mes:, links:), found `{header}`"),
                )),
            }
            continue;
        }

        let record_span = span(line_no, indent + 1, body.trim_end().len());
        if doc.sections.is_empty() {
            errors.push(err(record_span, "record outside of any section"));
            continue;
        }
        let Some(rest) = body.strip_prefix("- ").or(if body.trim_end() == "-" {
            Some("")
        } else {
            None
        }) else {
            errors.push(err(record_span, "expected a record starting with `- `"));
            continue;
        };
        if indent % 2 != 0 {
            errors.push(err(
                record_span,
                "indentation must be a multiple of two spaces",
            ));
            skip_below = Some(indent);
            continue;
        }
        let depth = indent / 2 - 1;
        if let Some(limit) = skip_below {
            if indent > limit {
                continue;
            }
            skip_below = None;
        }
        if depth > stack.len() {
            errors.push(err(
                record_span,
                "record is indented deeper than its parent allows",
            ));
            skip_below = Some(indent);
            continue;
        }
        while stack.len() > depth {
            close_one(&mut stack, &mut doc);
        }

        let pairs = lex_pairs(rest, line_no, indent + 3, &span, errors);
        stack.push(RawRecord {
            span: record_span,
            pairs,
            children: Vec::new(),
        });
    }
    close_all(&mut stack, &mut doc);
    doc
}

fn close_one(stack: &mut Vec<RawRecord>, doc: &mut RawDocument) {
    let record = stack.pop().expect("non-empty stack");
    match stack.last_mut() {
        Some(parent) => parent.children.push(record),
        None => doc
            .sections
            .last_mut()
            .expect("records only open inside a section")
            .2
            .push(record),
    }
}

fn close_all(stack: &mut Vec<RawRecord>, doc: &mut RawDocument) {
    while !stack.is_empty() {
        close_one(stack, doc);
    }
}

fn err(span: SourceSpan, message: impl Into<String>) -> ParseError {
    ParseError {
        span,
        message: message.into(),
        category: ParseErrorCategory::Syntax,
    }
}

fn is_key_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-')
}

/// Splits `key=value` pairs. `start_col` is the 1-based column of `text[0]`.
fn lex_pairs(
    text: &str,
    line: usize,
    start_col: usize,
    span: &impl Fn(usize, usize, usize) -> SourceSpan,
    errors: &mut Vec<ParseError>,
) -> Vec<Pair> {
    let chars: Vec<char> = text.chars().collect();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i] == ' ' {
            i += 1;
            continue;
        }
        if chars[i] == '#' {
            break;
        }
        let key_start = i;
        while i < chars.len() && is_key_char(chars[i]) {
            i += 1;
        }
        let key: String = chars[key_start..i].iter().collect();
        if key.is_empty() || i >= chars.len() || chars[i] != '=' {
            let end = chars[i..]
                .iter()
                .position(|&c| c == ' ')
                .map_or(chars.len(), |p| i + p);
            let token: String = chars[key_start..end].iter().collect();
            errors.push(err(
                span(line, start_col + key_start, token.chars().count().max(1)),
                format!("expected `key=value`, found `{token}`"),
            ));
            i = end;
            continue;
        }
        i += 1;
        let value_start = i;
        let value = if i < chars.len() && chars[i] == '"' {
            match lex_quoted(&chars, &mut i) {
                Ok(v) => v,
                Err(message) => {
                    errors.push(err(
                        span(line, start_col + value_start, i - value_start),
                        message,
                    ));
                    return pairs;
                }
            }
        } else {
            let begin = i;
            while i < chars.len() && chars[i] != ' ' {
                if chars[i] == '"' {
                    errors.push(err(
                        span(line, start_col + i, 1),
                        "unexpected quote inside a bare value",
                    ));
                }
                i += 1;
            }
            if begin == i {
                errors.push(err(
                    span(line, start_col + key_start, key.len() + 1),
                    format!("missing value for `{key}`"),
                ));
                continue;
            }
            chars[begin..i].iter().collect()
        };
        if i < chars.len() && chars[i] != ' ' {
            errors.push(err(
                span(line, start_col + i, 1),
                "expected a space after the value",
            ));
        }
        let pair_span = span(line, start_col + key_start, i - key_start);
        if pairs.iter().any(|p| p.key == key) {
            errors.push(err(pair_span, format!("key `{key}` given more than once")));
            continue;
        }
        pairs.push(Pair {
            key,
            value,
            span: pair_span,
        });
    }
    pairs
}

fn lex_quoted(chars: &[char], i: &mut usize) -> Result<String, String> {
    debug_assert_eq!(chars[*i], '"');
    *i += 1;
    let mut out = String::new();
    while *i < chars.len() {
        match chars[*i] {
            '"' => {
                *i += 1;
                return Ok(out);
            }
            '\\' => {
                let escaped = chars.get(*i + 1).copied();
                out.push(match escaped {
                    Some('"') => '"',
                    Some('\\') => '\\',
                    Some('n') => '\n',
                    Some('r') => '\r',
                    Some('t') => '\t',
                    Some(c) => {
                        *i += 2;
                        return Err(format!("unknown escape `\\{c}`"));
                    }
                    None => {
                        *i += 1;
                        return Err("unterminated escape".into());
                    }
                });
                *i += 2;
            }
            c => {
                out.push(c);
                *i += 1;
            }
        }
    }
    Err("unterminated string".into())
}
