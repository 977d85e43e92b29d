//! The `pda v1` text format.
//!
//! ```text
//! pda v1
//! K=4 F=4 Z=2 S=4
//! * 1 * 3
//! 1 * 3 *
//! * 2 * 4
//! 2 * 4 *
//! ```
//!
//! Tokens are separated by exactly one space and the file ends with a
//! newline. `Z` is the star count of the first column. Header values must
//! agree with the grid.

use std::fmt::Write as _;

use thiserror::Error;

use super::{PdaArray, PdaEntry, PdaError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("color {missing} is missing from the grid")]
    ColorGap { missing: u32 },
    #[error("header says {field}={header} but the grid has {field}={measured}")]
    HeaderMismatch { field: &'static str, header: usize, measured: usize },
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, column, message: message.into() }
}

pub fn write_pda(p: &PdaArray) -> String {
    let mut out = String::from("pda v1\n");
    let _ = writeln!(out, "K={} F={} Z={} S={}", p.cols(), p.rows(), p.stars_in_column(0), p.color_count());
    out.push_str(&p.to_string());
    out
}

struct Header {
    k: usize,
    f: usize,
    z: usize,
    s: usize,
}

fn parse_header(line: &str) -> Result<Header, FormatError> {
    let mut values = [0usize; 4];
    let names = ["K", "F", "Z", "S"];
    let mut fields = line.split(' ');
    let mut column = 1;
    for (slot, name) in values.iter_mut().zip(names) {
        let field = fields.next().ok_or_else(|| parse_err(2, column, format!("expected {name}=<int>")))?;
        let value = field
            .strip_prefix(name)
            .and_then(|rest| rest.strip_prefix('='))
            .ok_or_else(|| parse_err(2, column, format!("expected {name}=<int>, found `{field}`")))?;
        *slot =
            value.parse().ok().filter(|_| value.bytes().all(|b| b.is_ascii_digit())).ok_or_else(|| {
                parse_err(2, column + name.len() + 1, format!("`{value}` is not a non-negative integer"))
            })?;
        column += field.len() + 1;
    }
    if let Some(extra) = fields.next() {
        return Err(parse_err(2, column, format!("unexpected `{extra}` after header")));
    }
    let [k, f, z, s] = values;
    Ok(Header { k, f, z, s })
}

pub fn read_pda(text: &str) -> Result<PdaArray, FormatError> {
    let Some(body) = text.strip_suffix('\n') else {
        let line = text.split('\n').count();
        let column = text.rsplit('\n').next().map_or(0, str::len) + 1;
        return Err(parse_err(line, column, "missing trailing newline"));
    };
    let lines: Vec<&str> = body.split('\n').collect();
    if lines[0] != "pda v1" {
        return Err(parse_err(1, 1, format!("expected `pda v1`, found `{}`", lines[0])));
    }
    let header_line = lines.get(1).ok_or_else(|| parse_err(2, 1, "missing header line"))?;
    let header = parse_header(header_line)?;
    if header.f == 0 || header.k == 0 {
        return Err(parse_err(2, 1, "K and F must be positive"));
    }

    let grid_lines = &lines[2..];
    if grid_lines.len() != header.f {
        let line = 2 + grid_lines.len().min(header.f) + 1;
        return Err(parse_err(line, 1, format!("expected {} grid rows, found {}", header.f, grid_lines.len())));
    }

    let mut cells = Vec::with_capacity(header.f * header.k);
    for (r, row) in grid_lines.iter().enumerate() {
        let line = r + 3;
        let mut column = 1;
        let mut count = 0;
        for token in row.split(' ') {
            count += 1;
            if count > header.k {
                return Err(parse_err(line, column, format!("more than K={} tokens", header.k)));
            }
            let entry = match token {
                "*" => PdaEntry::Star,
                "" => return Err(parse_err(line, column, "empty token (tokens are separated by single spaces)")),
                t if t.bytes().all(|b| b.is_ascii_digit()) => match t.parse::<u32>() {
                    Ok(v) if v >= 1 => PdaEntry::Color(v),
                    _ => return Err(parse_err(line, column, format!("color `{t}` out of range"))),
                },
                t => return Err(parse_err(line, column, format!("invalid token `{t}`"))),
            };
            cells.push(entry);
            column += token.len() + 1;
        }
        if count < header.k {
            return Err(parse_err(line, column, format!("expected {} tokens, found {count}", header.k)));
        }
    }

    let p = PdaArray::from_cells(header.f, header.k, cells).map_err(|e| match e {
        PdaError::ColorGap { missing } => FormatError::ColorGap { missing },
        other => unreachable!("shape and zero colors were checked while parsing: {other}"),
    })?;
    let measured = [("Z", header.z, p.stars_in_column(0)), ("S", header.s, p.color_count() as usize)];
    for (field, header, measured) in measured {
        if header != measured {
            return Err(FormatError::HeaderMismatch { field, header, measured });
        }
    }
    Ok(p)
}
