//! Line-oriented text formats.
//!
//! Instance: a header `n m q`, then one `i j r` line per edge.
//! Allocation: one `j i` line per occupied slot.
//!
//! Fields are whitespace separated. Blank lines and lines starting with `#` are skipped.
//! Reals are written in the shortest decimal form that parses back to the same `f64`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::allocation::{Allocation, Mode};
use crate::error::ParseError;
use crate::instance::{Edge, ProblemInstance, RawInstance};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(k, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((k + 1, line.split_whitespace().collect()))
        }
    })
}

fn field<T: FromStr>(line: usize, fields: &[&str], k: usize, what: &str) -> Result<T, ParseError> {
    let raw = fields.get(k).ok_or_else(|| ParseError::Syntax {
        line,
        message: format!("missing field '{what}'"),
    })?;
    raw.parse().map_err(|_| ParseError::Syntax {
        line,
        message: format!("cannot parse '{raw}' as {what}"),
    })
}

fn expect_arity(line: usize, fields: &[&str], n: usize) -> Result<(), ParseError> {
    if fields.len() != n {
        return Err(ParseError::Syntax {
            line,
            message: format!("expected {n} fields, found {}", fields.len()),
        });
    }
    Ok(())
}

/// Parses instance text without validating it.
pub fn parse_raw_instance(text: &str) -> Result<RawInstance, ParseError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(ParseError::Syntax {
        line: 1,
        message: "missing header 'n m q'".into(),
    })?;
    expect_arity(line, &header, 3)?;
    let num_ads = field(line, &header, 0, "n")?;
    let num_slots = field(line, &header, 1, "m")?;
    let quit_prob = field(line, &header, 2, "q")?;
    let mut edges = Vec::new();
    for (line, fields) in lines {
        expect_arity(line, &fields, 3)?;
        edges.push(Edge::new(
            field(line, &fields, 0, "ad")?,
            field(line, &fields, 1, "slot")?,
            field(line, &fields, 2, "reward")?,
        ));
    }
    Ok(RawInstance { num_ads, num_slots, quit_prob, edges })
}

pub fn parse_instance(text: &str) -> Result<ProblemInstance, ParseError> {
    Ok(parse_raw_instance(text)?.into_instance()?)
}

pub fn format_instance(inst: &ProblemInstance) -> String {
    let mut out = String::with_capacity(16 * inst.num_edges() + 32);
    let _ = writeln!(out, "{} {} {:?}", inst.num_ads(), inst.num_slots(), inst.quit_prob());
    for e in inst.edges() {
        let _ = writeln!(out, "{} {} {:?}", e.ad, e.slot, e.reward);
    }
    out
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<ProblemInstance, ParseError> {
    parse_instance(&fs::read_to_string(path)?)
}

pub fn write_instance(path: impl AsRef<Path>, inst: &ProblemInstance) -> std::io::Result<()> {
    fs::write(path, format_instance(inst))
}

/// Parses `j i` lines into `(slot, ad)` pairs.
pub fn parse_allocation_pairs(text: &str) -> Result<Vec<(usize, usize)>, ParseError> {
    content_lines(text)
        .map(|(line, fields)| {
            expect_arity(line, &fields, 2)?;
            Ok((field(line, &fields, 0, "slot")?, field(line, &fields, 1, "ad")?))
        })
        .collect()
}

pub fn parse_allocation(
    inst: &ProblemInstance,
    mode: Mode,
    text: &str,
) -> Result<Allocation, ParseError> {
    Ok(Allocation::new(inst, mode, parse_allocation_pairs(text)?)?)
}

pub fn format_allocation(alloc: &Allocation) -> String {
    let mut out = String::new();
    for (slot, ad) in alloc.pairs() {
        let _ = writeln!(out, "{slot} {ad}");
    }
    out
}

pub fn write_allocation(path: impl AsRef<Path>, alloc: &Allocation) -> std::io::Result<()> {
    fs::write(path, format_allocation(alloc))
}
