//! Text formats: a point literal is whitespace-separated decimals
//! (`"1 -2.5"`); a point file holds one literal per line, with blank lines
//! and lines starting with `#` ignored.

use std::path::Path;

use crate::error::{Error, Result};

fn parse_line(line: &str, line_no: usize) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut rest = line;
    let mut offset = 0;
    while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let token = &tail[..len];
        let column = line[..offset + start].chars().count() + 1;
        let value: f64 = token.parse().map_err(|_| Error::Parse {
            line: line_no,
            column,
            message: format!("expected a decimal number, found {token:?}"),
        })?;
        if !value.is_finite() {
            return Err(Error::Parse {
                line: line_no,
                column,
                message: format!("{token:?} is not a finite number"),
            });
        }
        out.push(value);
        offset += start + len;
        rest = &tail[len..];
    }
    Ok(out)
}

/// Parses a single point literal such as `"0 2"`.
pub fn parse_point(text: &str) -> Result<Vec<f64>> {
    let v = parse_line(text, 1)?;
    if v.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty point".into(),
        });
    }
    Ok(v)
}

/// Parses a point file. All points must have the same dimension.
pub fn parse_points(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut pts: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let p = parse_line(line, i + 1)?;
        if let Some(first) = pts.first() {
            if first.len() != p.len() {
                return Err(Error::Parse {
                    line: i + 1,
                    column: 1,
                    message: format!("expected {} coordinates, found {}", first.len(), p.len()),
                });
            }
        }
        pts.push(p);
    }
    if pts.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            column: 1,
            message: "no points found".into(),
        });
    }
    Ok(pts)
}

pub fn read_points(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    parse_points(&text)
}
