//! Line-oriented text form of a slow sequence.
//!
//! ```text
//! Lines:
//! (0.00,0.00)--(4.00,0.00)--(8.00,0.00)--(9.00,0.00)
//! Circles:
//! (1.50,-2.00,3.00)
//! Labels:
//! A:(0.00,0.00)
//! ```
//!
//! `Lines:` is always present; `Circles:` and `Labels:` only when non-empty.
//! Numbers carry exactly two decimals and a sign only when negative.

use std::collections::btree_map::Entry;

use serde::Serialize;

use super::flow::{FlowChain, PerceptualRuler};
use super::SlowSequence;
use crate::error::CodecError;
use crate::geometry::{Circle, Labels, Point};

pub const LINES_HEADER: &str = "Lines:";
pub const CIRCLES_HEADER: &str = "Circles:";
pub const LABELS_HEADER: &str = "Labels:";

/// Emits the canonical text form.
pub fn serialize(sq: &SlowSequence) -> String {
    let mut out = String::with_capacity(64 + 16 * sq.point_count());
    out.push_str(LINES_HEADER);
    out.push('\n');
    for chain in &sq.chains {
        for (i, p) in chain.points.iter().enumerate() {
            if i > 0 {
                out.push_str("--");
            }
            out.push_str(&p.to_string());
        }
        out.push('\n');
    }
    if !sq.circles.is_empty() {
        out.push_str(CIRCLES_HEADER);
        out.push('\n');
        for c in &sq.circles {
            out.push_str(&c.to_string());
            out.push('\n');
        }
    }
    if !sq.labels.is_empty() {
        out.push_str(LABELS_HEADER);
        out.push('\n');
        for (letter, p) in &sq.labels {
            out.push(*letter);
            out.push(':');
            out.push_str(&p.to_string());
            out.push('\n');
        }
    }
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ParseMode {
    /// First malformed statement is an error.
    Strict,
    /// Malformed statements are skipped and recorded.
    #[default]
    Lenient,
}

/// A skipped statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    /// Zero-based index among the non-header statements.
    pub statement: usize,
    /// One-based source line, when the statement came from text.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub sequence: SlowSequence,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Section {
    None,
    Lines,
    Circles,
    Labels,
}

struct LineError {
    column: usize,
    reason: String,
}

type LineResult<T> = Result<T, LineError>;

/// Parses the text form. The ruler is metadata kept alongside the text and is
/// attached to every chain.
pub fn parse(text: &str, ruler: PerceptualRuler, mode: ParseMode) -> Result<Parsed, CodecError> {
    let strict = mode == ParseMode::Strict;
    let mut sq = SlowSequence {
        chains: Vec::new(),
        circles: Vec::new(),
        labels: Labels::new(),
        ruler,
    };
    let mut diagnostics = Vec::new();
    let mut section = Section::None;
    let mut statement = 0usize;

    let body = text.strip_suffix('\n').unwrap_or(text);
    if body.is_empty() && strict {
        return Err(parse_error(1, 1, "missing Lines: header"));
    }
    for (idx, raw) in body.split('\n').enumerate() {
        let lineno = idx + 1;
        let line = if strict {
            if let Some(col) = raw.find(['\r', '\t']) {
                return Err(parse_error(lineno, col + 1, "unexpected control character"));
            }
            if raw.ends_with(' ') {
                return Err(parse_error(lineno, raw.len(), "trailing whitespace"));
            }
            raw
        } else {
            raw.trim()
        };
        if line.is_empty() {
            if strict {
                return Err(parse_error(lineno, 1, "empty line"));
            }
            continue;
        }
        if let Some(next) = header(line) {
            if strict {
                let ok = match next {
                    Section::Lines => section == Section::None,
                    _ => section != Section::None && next > section,
                };
                if !ok {
                    return Err(parse_error(lineno, 1, "section header out of order"));
                }
            }
            section = next;
            continue;
        }
        if section == Section::None {
            if strict {
                return Err(parse_error(lineno, 1, "missing Lines: header"));
            }
            // Statements before any header are read as chains.
            section = Section::Lines;
        }
        let outcome = match section {
            Section::Lines | Section::None => {
                chain_statement(line, strict).map(|points| sq.chains.push(FlowChain { points, ruler }))
            }
            Section::Circles => circle_statement(line, strict).map(|c| sq.circles.push(c)),
            Section::Labels => label_statement(line, strict).and_then(|(letter, p)| match sq.labels.entry(letter) {
                Entry::Occupied(_) => Err(LineError {
                    column: 1,
                    reason: format!("duplicate label {letter}"),
                }),
                Entry::Vacant(slot) => {
                    slot.insert(p);
                    Ok(())
                }
            }),
        };
        if let Err(e) = outcome {
            if strict {
                return Err(parse_error(lineno, e.column, &e.reason));
            }
            diagnostics.push(Diagnostic {
                statement,
                line: Some(lineno),
                reason: e.reason,
            });
        }
        statement += 1;
    }
    if strict && section == Section::None {
        return Err(parse_error(1, 1, "missing Lines: header"));
    }
    Ok(Parsed {
        sequence: sq,
        diagnostics,
    })
}

fn parse_error(line: usize, column: usize, reason: &str) -> CodecError {
    CodecError::Parse {
        line,
        column,
        reason: reason.to_string(),
    }
}

fn header(line: &str) -> Option<Section> {
    match line {
        LINES_HEADER => Some(Section::Lines),
        CIRCLES_HEADER => Some(Section::Circles),
        LABELS_HEADER => Some(Section::Labels),
        _ => None,
    }
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
    strict: bool,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str, strict: bool) -> Self {
        Self { s, pos: 0, strict }
    }

    fn err<T>(&self, reason: impl Into<String>) -> LineResult<T> {
        Err(LineError {
            column: self.pos + 1,
            reason: reason.into(),
        })
    }

    fn skip_ws(&mut self) {
        if !self.strict {
            let rest = &self.s[self.pos..];
            self.pos += rest.len() - rest.trim_start().len();
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> LineResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected {tok:?}"))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.s.len()
    }

    /// A number in hundredths.
    fn number(&mut self) -> LineResult<i64> {
        self.skip_ws();
        let rest = &self.s[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '-' | '+' | '.' | 'e' | 'E')))
            .unwrap_or(rest.len());
        let tok = &rest[..len];
        let value = if self.strict {
            strict_number(tok)
        } else {
            tok.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .and_then(|v| crate::geometry::round_hundredths(v).ok())
        };
        match value {
            Some(v) => {
                self.pos += len;
                Ok(v)
            }
            None => self.err(format!("malformed number {tok:?}")),
        }
    }

    fn point(&mut self) -> LineResult<Point> {
        let start = self.pos;
        self.expect("(")?;
        let x = self.number()?;
        self.expect(",")?;
        let y = self.number()?;
        self.expect(")")?;
        to_point(x, y).ok_or(LineError {
            column: start + 1,
            reason: "point outside [-10, 10]".into(),
        })
    }
}

/// `["-"] 1*2DIGIT "." 2DIGIT`
fn strict_number(tok: &str) -> Option<i64> {
    let (neg, body) = match tok.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, tok),
    };
    let (int, frac) = body.split_once('.')?;
    let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !(1..=2).contains(&int.len()) || frac.len() != 2 || !digits(int) || !digits(frac) {
        return None;
    }
    let v: i64 = int.parse::<i64>().ok()? * 100 + frac.parse::<i64>().ok()?;
    Some(if neg { -v } else { v })
}

fn to_point(x: i64, y: i64) -> Option<Point> {
    Point::from_hundredths(i32::try_from(x).ok()?, i32::try_from(y).ok()?).ok()
}

fn chain_statement(line: &str, strict: bool) -> LineResult<Vec<Point>> {
    let mut cur = Cursor::new(line, strict);
    let mut points = vec![cur.point()?];
    while cur.eat("--") {
        points.push(cur.point()?);
    }
    if !cur.at_end() {
        return cur.err("unexpected trailing input");
    }
    if points.len() < 2 {
        return Err(LineError {
            column: 1,
            reason: "chain needs at least two points".into(),
        });
    }
    Ok(points)
}

fn circle_statement(line: &str, strict: bool) -> LineResult<Circle> {
    let mut cur = Cursor::new(line, strict);
    cur.expect("(")?;
    let x = cur.number()?;
    cur.expect(",")?;
    let y = cur.number()?;
    cur.expect(",")?;
    let r = cur.number()?;
    cur.expect(")")?;
    if !cur.at_end() {
        return cur.err("unexpected trailing input");
    }
    let bad = |reason: String| LineError { column: 1, reason };
    let center = to_point(x, y).ok_or_else(|| bad("center outside [-10, 10]".into()))?;
    let r = i32::try_from(r).map_err(|_| bad("radius out of range".into()))?;
    Circle::from_hundredths(center, r).map_err(|e| bad(e.to_string()))
}

fn label_statement(line: &str, strict: bool) -> LineResult<(char, Point)> {
    let mut cur = Cursor::new(line, strict);
    cur.skip_ws();
    let letter = match cur.s[cur.pos..].chars().next() {
        Some(c) if c.is_ascii_uppercase() => c,
        _ => return cur.err("expected a label letter A-Z"),
    };
    cur.pos += 1;
    cur.expect(":")?;
    let p = cur.point()?;
    if !cur.at_end() {
        return cur.err("unexpected trailing input");
    }
    Ok((letter, p))
}
