//! Line-oriented text formats for tables, involutions, measures and
//! functions. Blank lines and anything after `#` are ignored.

use std::fmt::Write as _;

use kannappan_core::{CFunction, DiscreteMeasure, FiniteSemigroup, InvolutiveAutomorphism, C64};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unexpected end of input: {0}")]
    Truncated(&'static str),
}

fn err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-empty content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T, FormatError> {
    tok.parse()
        .map_err(|_| err(line, format!("cannot parse {tok:?}")))
}

/// A Cayley table as read from disk, before any validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTable {
    pub rows: Vec<Vec<usize>>,
    pub identity: Option<usize>,
}

pub fn parse_table(text: &str) -> Result<RawTable, FormatError> {
    let mut lines = content_lines(text);
    let (ln, head) = lines
        .next()
        .ok_or(FormatError::Truncated("missing \"n <N>\" header"))?;
    let n = match head.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", v] => parse_num::<usize>(ln, v)?,
        _ => return Err(err(ln, "expected \"n <N>\"")),
    };
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, l) = lines
            .next()
            .ok_or(FormatError::Truncated("too few table rows"))?;
        let row = l
            .split_whitespace()
            .map(|t| parse_num(ln, t))
            .collect::<Result<Vec<usize>, _>>()?;
        if row.len() != n {
            return Err(err(
                ln,
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        rows.push(row);
    }
    let mut identity = None;
    for (ln, l) in lines {
        match l.split_whitespace().collect::<Vec<_>>()[..] {
            ["identity", v] if identity.is_none() => identity = Some(parse_num(ln, v)?),
            _ => return Err(err(ln, format!("unexpected line {l:?}"))),
        }
    }
    Ok(RawTable { rows, identity })
}

pub fn write_table(s: &FiniteSemigroup) -> String {
    let mut out = format!("n {}\n", s.len());
    for row in s.rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    if let Some(e) = s.identity() {
        writeln!(out, "identity {e}").unwrap();
    }
    out
}

pub fn parse_sigma(text: &str) -> Result<Vec<usize>, FormatError> {
    let mut lines = content_lines(text);
    let (ln, l) = lines
        .next()
        .ok_or(FormatError::Truncated("empty sigma file"))?;
    if let Some((ln2, _)) = lines.next() {
        return Err(err(ln2, "sigma file must hold a single line"));
    }
    l.split_whitespace().map(|t| parse_num(ln, t)).collect()
}

pub fn write_sigma(sigma: &InvolutiveAutomorphism) -> String {
    let cells: Vec<String> = sigma.as_slice().iter().map(|v| v.to_string()).collect();
    format!("{}\n", cells.join(" "))
}

fn parse_complex(ln: usize, re: &str, im: &str) -> Result<C64, FormatError> {
    Ok(C64::new(parse_num(ln, re)?, parse_num(ln, im)?))
}

/// Atoms `(index, weight)`; duplicate and range checks happen when the
/// measure is bound to a semigroup.
pub fn parse_measure_atoms(text: &str) -> Result<Vec<(usize, C64)>, FormatError> {
    content_lines(text)
        .map(
            |(ln, l)| match l.split_whitespace().collect::<Vec<_>>()[..] {
                [i, re, im] => Ok((parse_num(ln, i)?, parse_complex(ln, re, im)?)),
                _ => Err(err(ln, "expected \"<index> <re> <im>\"")),
            },
        )
        .collect()
}

pub fn write_measure(mu: &DiscreteMeasure) -> String {
    let mut out = String::new();
    for (i, w) in mu.atoms() {
        writeln!(out, "{i} {:.16e} {:.16e}", w.re, w.im).unwrap();
    }
    out
}

pub fn parse_function(text: &str) -> Result<CFunction, FormatError> {
    content_lines(text)
        .map(
            |(ln, l)| match l.split_whitespace().collect::<Vec<_>>()[..] {
                [re, im] => parse_complex(ln, re, im),
                [re] => parse_complex(ln, re, "0"),
                _ => Err(err(ln, "expected \"<re> <im>\"")),
            },
        )
        .collect::<Result<Vec<_>, _>>()
        .map(CFunction::new)
}

pub fn write_function(f: &CFunction) -> String {
    let mut out = String::new();
    for v in f.values() {
        writeln!(out, "{:.16e} {:.16e}", v.re, v.im).unwrap();
    }
    out
}
