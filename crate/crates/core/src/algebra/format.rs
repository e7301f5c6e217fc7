//! JSON algebra documents.
//!
//! ```json
//! { "name": "Z2", "size": 2, "zero": 0,
//!   "operations": [ { "name": "mul", "arity": 2, "table": [[0, 1], [1, 0]] } ] }
//! ```
//!
//! A table of arity `k` is nested `k` levels deep, each level of length
//! `size`; a nullary table is a bare integer. The zero symbol `"0"` is added
//! when not listed.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{FiniteAlgebra, Signature};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub name: String,
    pub size: usize,
    pub zero: usize,
    pub operations: Vec<OperationDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperationDocument {
    pub name: String,
    pub arity: usize,
    pub table: Value,
}

/// Parses and validates an algebra from its JSON text.
pub fn parse_algebra(text: &str) -> Result<Arc<FiniteAlgebra>> {
    let raw: Value = serde_json::from_str(text).map_err(|e| Error::Malformed {
        at: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    load_algebra(&raw)
}

/// Validates a structured document into an algebra.
pub fn load_algebra(raw: &Value) -> Result<Arc<FiniteAlgebra>> {
    let doc: AlgebraDocument = serde_json::from_value(raw.clone()).map_err(|e| Error::Malformed {
        at: "document".into(),
        message: e.to_string(),
    })?;
    if doc.zero != 0 {
        return Err(Error::Malformed {
            at: "zero".into(),
            message: format!("the point must be element 0, found {}", doc.zero),
        });
    }
    let sig = Signature::new(doc.operations.iter().map(|op| (op.name.clone(), op.arity)))?;
    let mut tables = Vec::with_capacity(sig.ops().len());
    for symbol in sig.ops() {
        let table = match doc.operations.iter().find(|op| op.name == symbol.name) {
            Some(op) => flatten(&op.name, &op.table, doc.size, op.arity)?,
            None => vec![0],
        };
        tables.push(table);
    }
    FiniteAlgebra::new(doc.name, sig, doc.size, tables)
}

fn flatten(op: &str, table: &Value, size: usize, arity: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(size.pow(arity as u32));
    let mut coordinate = Vec::with_capacity(arity);
    walk(op, table, size, arity, &mut coordinate, &mut out)?;
    Ok(out)
}

fn walk(
    op: &str,
    node: &Value,
    size: usize,
    depth: usize,
    coordinate: &mut Vec<usize>,
    out: &mut Vec<usize>,
) -> Result<()> {
    let at = || format!("operations.{op}{coordinate:?}");
    if depth == 0 {
        let value = node.as_u64().ok_or_else(|| Error::Malformed {
            at: at(),
            message: format!("expected a non-negative integer, found {node}"),
        })?;
        if value >= size as u64 {
            return Err(Error::OutOfRange {
                op: op.into(),
                coordinate: coordinate.clone(),
                value,
                size,
            });
        }
        out.push(value as usize);
        return Ok(());
    }
    let items = node.as_array().ok_or_else(|| Error::Malformed {
        at: at(),
        message: format!("expected an array nested {depth} more level(s)"),
    })?;
    if items.len() != size {
        return Err(Error::Malformed {
            at: at(),
            message: format!("expected {size} entries, found {}", items.len()),
        });
    }
    for (i, item) in items.iter().enumerate() {
        coordinate.push(i);
        walk(op, item, size, depth - 1, coordinate, out)?;
        coordinate.pop();
    }
    Ok(())
}

fn nest(table: &[usize], size: usize, arity: usize) -> Value {
    if arity == 0 {
        return Value::from(table[0]);
    }
    let stride = table.len() / size;
    Value::Array(
        (0..size)
            .map(|i| nest(&table[i * stride..(i + 1) * stride], size, arity - 1))
            .collect(),
    )
}

impl AlgebraDocument {
    pub fn from_algebra(a: &FiniteAlgebra) -> AlgebraDocument {
        let operations = a
            .signature()
            .ops()
            .iter()
            .zip(a.ops())
            .map(|(symbol, op)| OperationDocument {
                name: symbol.name.clone(),
                arity: symbol.arity,
                table: nest(op.table(), a.size(), symbol.arity),
            })
            .collect();
        AlgebraDocument {
            name: a.name().into(),
            size: a.size(),
            zero: 0,
            operations,
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("algebra documents serialize")
    }
}
