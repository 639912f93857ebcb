//! Text formats: network documents, distance reports and motif listings.
//!
//! A network document looks like
//!
//! ```text
//! # comments and blank lines are ignored
//! format_version 1
//! labels p q
//! weights
//! 1 2
//! 3 4
//! ```
//!
//! Weights follow the `weights` line as `n²` whitespace-separated decimal
//! literals in row-major order; line breaks between them are free.
//! Serialization writes one row per line using shortest round-trip decimals,
//! so `parse_network(&write_network(x)) == x` bit for bit.
//!
//! Reports and motif listings are flat `key = value` documents with a fixed
//! key order. Wall-clock timings appear only after a `[timings]` marker so
//! that everything above it is deterministic.

use std::fmt::Write as _;

use crate::correspondence::Correspondence;
use crate::distance::DistanceReport;
use crate::error::{Error, Result};
use crate::motifs::MotifSet;
use crate::network::Network;

pub const FORMAT_VERSION: u32 = 1;

/// Renders a real so that parsing it back yields the same `f64`.
pub fn fmt_real(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokens(line_no: usize, line: &str) -> Vec<Token<'_>> {
    let content = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (byte, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(byte),
            (true, Some(s)) => {
                out.push(Token {
                    text: &content[s..byte],
                    line: line_no,
                    column: content[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn err_at(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn expect_keyword<'a>(
    lines: &mut impl Iterator<Item = Vec<Token<'a>>>,
    keyword: &str,
    last_line: usize,
) -> Result<Vec<Token<'a>>> {
    let line = lines
        .next()
        .ok_or_else(|| err_at(last_line, 1, format!("missing `{keyword}` line")))?;
    if line[0].text != keyword {
        return Err(err_at(
            line[0].line,
            line[0].column,
            format!("expected `{keyword}`, found `{}`", line[0].text),
        ));
    }
    Ok(line)
}

/// Parses a network document.
pub fn parse_network(text: &str) -> Result<Network> {
    let last_line = text.lines().count().max(1);
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| tokens(i + 1, l))
        .filter(|t| !t.is_empty());

    let header = expect_keyword(&mut lines, "format_version", last_line)?;
    match header.get(1) {
        Some(v) if v.text == FORMAT_VERSION.to_string() && header.len() == 2 => {}
        Some(v) => {
            return Err(err_at(v.line, v.column, format!("unsupported format version `{}`", v.text)))
        }
        None => {
            let h = &header[0];
            return Err(err_at(h.line, h.column + h.text.len(), "missing format version"));
        }
    }

    let label_line = expect_keyword(&mut lines, "labels", last_line)?;
    let label_tokens = &label_line[1..];
    if label_tokens.is_empty() {
        let h = &label_line[0];
        return Err(err_at(h.line, h.column, "a network needs at least one label"));
    }
    for (i, tok) in label_tokens.iter().enumerate() {
        if label_tokens[..i].iter().any(|prev| prev.text == tok.text) {
            return Err(err_at(tok.line, tok.column, format!("duplicate label `{}`", tok.text)));
        }
    }
    let labels: Vec<String> = label_tokens.iter().map(|t| t.text.to_string()).collect();
    let n = labels.len();

    let weights_line = expect_keyword(&mut lines, "weights", last_line)?;
    let mut weights = Vec::with_capacity(n * n);
    let rest = weights_line.into_iter().skip(1).chain(lines.flatten());
    for tok in rest {
        if weights.len() == n * n {
            return Err(err_at(
                tok.line,
                tok.column,
                format!("expected {} weights, found more", n * n),
            ));
        }
        let value: f64 = tok
            .text
            .parse()
            .map_err(|_| err_at(tok.line, tok.column, format!("invalid number `{}`", tok.text)))?;
        if !value.is_finite() {
            return Err(err_at(
                tok.line,
                tok.column,
                format!("weight `{}` is not finite", tok.text),
            ));
        }
        weights.push(value);
    }
    if weights.len() != n * n {
        return Err(err_at(
            last_line,
            1,
            format!("expected {} weights, found {}", n * n, weights.len()),
        ));
    }
    Network::new(labels, weights).map_err(|e| err_at(1, 1, e.to_string()))
}

pub fn write_network(x: &Network) -> String {
    let mut out = format!("format_version {FORMAT_VERSION}\nlabels {}\nweights\n", x.labels().join(" "));
    for i in 0..x.len() {
        let row: Vec<String> = x.row(i).iter().map(|&w| fmt_real(w)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_correspondence(r: &Correspondence) -> String {
    r.pairs()
        .iter()
        .map(|(a, b)| format!("{a}:{b}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders a distance report. Keys appear in a fixed order; timings are
/// quarantined below the `[timings]` marker.
pub fn write_report(report: &DistanceReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format_version = {FORMAT_VERSION}");
    let _ = writeln!(out, "x.nodes = {}", report.x_nodes);
    let _ = writeln!(out, "y.nodes = {}", report.y_nodes);
    for lb in &report.lower_bounds {
        let _ = writeln!(out, "lower.{} = {}", lb.method, fmt_real(lb.value));
    }
    for ub in &report.upper_bounds {
        let _ = writeln!(out, "upper.{} = {}", ub.method, fmt_real(ub.value));
        let _ = writeln!(out, "upper.{}.witness = {}", ub.method, write_correspondence(&ub.witness));
    }
    let _ = writeln!(out, "bound.lower = {}", fmt_real(report.max_lower()));
    let _ = writeln!(out, "bound.upper = {}", fmt_real(report.min_upper()));
    match &report.exact {
        Some(exact) => {
            let _ = writeln!(out, "exact = {}", fmt_real(exact.value));
            let _ = writeln!(out, "exact.witness = {}", write_correspondence(&exact.witness));
        }
        None => {
            let _ = writeln!(out, "exact = skipped");
        }
    }
    for s in &report.skipped {
        let _ = writeln!(out, "skipped.{} = {}", s.method, s.reason);
    }
    out.push_str("[timings]\n");
    for (method, secs) in &report.timings {
        let _ = writeln!(out, "timing.{method} = {}", fmt_real(*secs));
    }
    out
}

pub fn write_motifs(set: &MotifSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format_version = {FORMAT_VERSION}");
    let _ = writeln!(out, "motif.order = {}", set.order());
    let _ = writeln!(out, "motif.count = {}", set.len());
    for (i, m) in set.matrices().iter().enumerate() {
        let entries: Vec<String> = m.iter().map(|&v| fmt_real(v)).collect();
        let _ = writeln!(out, "motif.{i} = {}", entries.join(" "));
    }
    out
}
