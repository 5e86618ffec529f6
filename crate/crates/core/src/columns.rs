//! Two-column numeric text files shared by the curve, grid and g loaders.

use crate::error::{Error, Result};

/// Parses rows of two numbers separated by commas and/or whitespace. Blank
/// lines and `#` comments are skipped.
pub fn parse_two_columns(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("expected 2 columns, found {}", fields.len()),
            });
        }
        let num = |s: &str| {
            s.parse::<f64>().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("not a number: {s:?}"),
            })
        };
        rows.push((num(fields[0])?, num(fields[1])?));
    }
    Ok(rows)
}
