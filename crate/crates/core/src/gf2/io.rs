//! Plain-text code files: one generator row per line as a 0/1 string,
//! `#` starting a comment line. Character `i` of a row is coordinate `i + 1`.

use std::path::Path;

use super::{LinearCode, Word};
use crate::error::{Error, Result};

pub fn parse_code(text: &str) -> Result<LinearCode> {
    let mut rows: Vec<Word> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Word = line.parse().map_err(|e: Error| Error::Parse {
            line: idx + 1,
            msg: e.to_string(),
        })?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("row has length {}, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no generator rows, code length unknown".into(),
        });
    }
    LinearCode::from_row_list(rows)
}

pub fn read_code(path: &Path) -> Result<LinearCode> {
    parse_code(&std::fs::read_to_string(path)?)
}

/// Canonical generator rows, one per line. The zero code has no rows, so
/// its length survives only in the leading comment.
pub fn format_code(code: &LinearCode) -> String {
    let mut out = format!("# n={} k={}\n", code.length(), code.dim());
    for g in code.generators() {
        out.push_str(&g.to_bit_string());
        out.push('\n');
    }
    out
}

pub fn write_code(path: &Path, code: &LinearCode) -> Result<()> {
    std::fs::write(path, format_code(code))?;
    Ok(())
}
