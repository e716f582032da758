//! Line-oriented knowledge-base files.
//!
//! ```text
//! # comments run to the end of the line
//! atoms: A B C D
//! C | B
//! B | A
//! query ca: C | A
//! ```
//!
//! The `atoms:` header comes first. Every other nonblank line is either a
//! conditional event of the family or a named query `query <name>: <cond>`.
//! LF and CRLF line endings are accepted.

use std::fmt;

use cohere_core::{ConditionalEvent, Error, KnowledgeBase, Vocabulary};

#[derive(Debug, Clone)]
pub struct KbFile {
    pub kb: KnowledgeBase,
    /// Source line of each family member.
    pub lines: Vec<usize>,
    pub queries: Vec<(String, ConditionalEvent)>,
}

impl KbFile {
    pub fn query(&self, name: &str) -> Option<&ConditionalEvent> {
        self.queries.iter().find(|(n, _)| n == name).map(|(_, q)| q)
    }
}

/// A load failure; `line` and `column` are 1-based, `line` 0 means the file as a whole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KbError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for KbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
        }
    }
}

impl std::error::Error for KbError {}

struct Line<'a> {
    number: usize,
    raw: &'a str,
    /// Byte offset of `text` within `raw`.
    start: usize,
    text: &'a str,
}

impl Line<'_> {
    fn column_at(&self, offset: usize) -> usize {
        let end = (self.start + offset).min(self.raw.len());
        self.raw[..end].chars().count() + 1
    }

    fn error(&self, offset: usize, message: impl Into<String>) -> KbError {
        KbError {
            line: self.number,
            column: self.column_at(offset),
            message: message.into(),
        }
    }

    /// The part of the line from `offset` on, trimmed.
    fn sub(&self, offset: usize) -> Line<'_> {
        let rest = &self.text[offset..];
        let lead = rest.len() - rest.trim_start().len();
        Line {
            number: self.number,
            raw: self.raw,
            start: self.start + offset + lead,
            text: rest.trim(),
        }
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.strip_prefix('\u{feff}')
        .unwrap_or(text)
        .split('\n')
        .enumerate()
        .filter_map(|(i, raw)| {
            let raw = raw.strip_suffix('\r').unwrap_or(raw);
            let content = raw.split('#').next().unwrap_or("");
            let lead = content.len() - content.trim_start().len();
            let text = content.trim();
            (!text.is_empty()).then_some(Line {
                number: i + 1,
                raw,
                start: lead,
                text,
            })
        })
}

fn conditional(line: &Line<'_>, vocab: &Vocabulary) -> Result<ConditionalEvent, KbError> {
    vocab.parse_conditional(line.text).map_err(|e| match &e {
        Error::Syntax { position, message } => line.error(*position, message.clone()),
        Error::UndeclaredAtom { name, position } => {
            line.error(*position, format!("undeclared atom `{name}`"))
        }
        _ => line.error(0, e.to_string()),
    })
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_kb(text: &str) -> Result<KbFile, KbError> {
    let mut iter = lines(text);
    let header = iter.next().ok_or_else(|| KbError {
        line: 0,
        column: 0,
        message: "file is empty: expected an `atoms:` header".into(),
    })?;
    let Some(rest) = header.text.strip_prefix("atoms:") else {
        return Err(header.error(0, "expected an `atoms:` header"));
    };
    let names_line = header.sub(header.text.len() - rest.len());
    let base = names_line.text.as_ptr() as usize;
    let tokens: Vec<(usize, &str)> = names_line
        .text
        .split_whitespace()
        .map(|t| (t.as_ptr() as usize - base, t))
        .collect();
    let vocab = Vocabulary::new(tokens.iter().map(|&(_, t)| t)).map_err(|e| {
        let at = match &e {
            Error::InvalidAtomName(n) => tokens.iter().find(|(_, t)| t == n).map(|&(i, _)| i),
            Error::DuplicateAtom(n) => tokens.iter().filter(|(_, t)| t == n).nth(1).map(|&(i, _)| i),
            _ => None,
        };
        names_line.error(at.unwrap_or(0), e.to_string())
    })?;

    let mut items = Vec::new();
    let mut item_lines = Vec::new();
    let mut queries: Vec<(String, ConditionalEvent)> = Vec::new();
    for line in iter {
        if line.text.starts_with("atoms:") {
            return Err(line.error(0, "duplicate `atoms:` header"));
        }
        if let Some(rest) = line.text.strip_prefix("query ") {
            let Some((name, _)) = rest.split_once(':') else {
                return Err(line.error(0, "expected `query <name>: <conditional>`"));
            };
            let name_line = line.sub(line.text.len() - rest.len());
            let name = name.trim();
            if !is_identifier(name) {
                return Err(name_line.error(0, format!("invalid query name `{name}`")));
            }
            if queries.iter().any(|(n, _)| n == name) {
                return Err(name_line.error(0, format!("duplicate query name `{name}`")));
            }
            let colon = rest.find(':').unwrap();
            let cond_line = line.sub(line.text.len() - rest.len() + colon + 1);
            queries.push((name.to_string(), conditional(&cond_line, &vocab)?));
            continue;
        }
        items.push(conditional(&line, &vocab)?);
        item_lines.push(line.number);
    }
    if items.is_empty() {
        return Err(KbError {
            line: 0,
            column: 0,
            message: "no conditional events after the `atoms:` header".into(),
        });
    }
    let kb = KnowledgeBase::new(vocab, items).map_err(|e| KbError {
        line: 0,
        column: 0,
        message: e.to_string(),
    })?;
    Ok(KbFile {
        kb,
        lines: item_lines,
        queries,
    })
}
