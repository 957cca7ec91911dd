//! SQL text for skyline queries.
//!
//! The skyline of a table is expressed as a `NOT EXISTS` anti-join: a row
//! survives when no other row is at least as good on every dimension and
//! strictly better on one.

use crate::model::{Dimension, Direction, QuerySpec};

use super::{EngineError, Result};

const RESERVED: &[&str] = &[
    "and", "as", "by", "exists", "from", "group", "having", "in", "join", "not", "null", "on", "or", "order",
    "select", "table", "union", "where",
];

/// Accepts plain unquoted identifiers: `[A-Za-z_][A-Za-z0-9_]*`, not a
/// reserved word.
pub fn validate_identifier(name: &str) -> Result<()> {
    let mut chars = name.chars();
    let head_ok = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    let tail_ok = chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if head_ok && tail_ok && !RESERVED.contains(&name.to_ascii_lowercase().as_str()) {
        Ok(())
    } else {
        Err(EngineError::InvalidIdentifier(name.to_string()))
    }
}

/// Standard-SQL skyline query for `spec` over `table`.
pub fn emit_skyline_sql(spec: &QuerySpec, table: &str) -> Result<String> {
    emit_skyline_sql_for(spec.dimensions(), table)
}

pub fn emit_skyline_sql_for(dimensions: &[(Dimension, Direction)], table: &str) -> Result<String> {
    validate_identifier(table)?;
    if dimensions.is_empty() {
        return Err(EngineError::EmptySpec);
    }
    let (weak, strict): (Vec<String>, Vec<String>) = dimensions
        .iter()
        .map(|(dim, dir)| {
            let col = dim.column();
            let (w, s) = match dir {
                Direction::Min => ("<=", "<"),
                Direction::Max => (">=", ">"),
            };
            (format!("S1.{col} {w} S.{col}"), format!("S1.{col} {s} S.{col}"))
        })
        .unzip();
    Ok(format!(
        "SELECT * FROM {table} S WHERE NOT EXISTS (SELECT * FROM {table} S1 WHERE {} AND ({}))",
        weak.join(" AND "),
        strict.join(" OR ")
    ))
}

/// The query written with the `SKYLINE OF` operator extension, for
/// documentation and for engines that support it.
pub fn emit_skyline_operator(spec: &QuerySpec, table: &str) -> Result<String> {
    validate_identifier(table)?;
    let dims: Vec<String> = spec
        .dimensions()
        .iter()
        .map(|(d, dir)| format!("{} {dir}", d.column()))
        .collect();
    Ok(format!("SELECT * FROM {table} SKYLINE OF {}", dims.join(", ")))
}
