//! Signatures, finite pointed algebras and homomorphisms.
//!
//! Carriers are always the index set `0..n`, and index `0` is the
//! distinguished point named by the signature's zero symbol.

mod format;
mod hom;
pub(crate) mod search;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use format::{load_algebra, parse_algebra, AlgebraDocument, OperationDocument};
pub use hom::{compose_homs, enumerate_homs, enumerate_homs_pinned, hom_image, Hom, Image};

/// Name of the designated nullary symbol whose value is the point.
pub const ZERO_SYMBOL: &str = "0";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpSymbol {
    pub name: String,
    pub arity: usize,
}

/// Operation symbols sorted by name, with one designated nullary symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<OpSymbol>,
    zero: usize,
}

impl Signature {
    /// Builds a signature from `(name, arity)` pairs. The zero symbol is
    /// added when absent.
    pub fn new<I, S>(ops: I) -> Result<Signature>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut ops: Vec<OpSymbol> = ops
            .into_iter()
            .map(|(name, arity)| OpSymbol {
                name: name.into(),
                arity,
            })
            .collect();
        if !ops.iter().any(|op| op.name == ZERO_SYMBOL) {
            ops.push(OpSymbol {
                name: ZERO_SYMBOL.to_string(),
                arity: 0,
            });
        }
        ops.sort_by(|a, b| a.name.cmp(&b.name));
        for pair in ops.windows(2) {
            if pair[0].name == pair[1].name {
                return Err(Error::Malformed {
                    at: format!("operations.{}", pair[0].name),
                    message: "duplicate operation name".into(),
                });
            }
        }
        let zero = ops.iter().position(|op| op.name == ZERO_SYMBOL).unwrap();
        if ops[zero].arity != 0 {
            return Err(Error::Malformed {
                at: format!("operations.{ZERO_SYMBOL}"),
                message: "the zero symbol must be nullary".into(),
            });
        }
        Ok(Signature { ops, zero })
    }

    pub fn ops(&self) -> &[OpSymbol] {
        &self.ops
    }

    pub fn zero_symbol(&self) -> usize {
        self.zero
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|op| op.name == name)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ops.iter().map(|op| format!("{}/{}", op.name, op.arity)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A basic operation stored as a row-major table over `size^arity` tuples.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Operation {
    arity: usize,
    table: Vec<usize>,
}

impl Operation {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }
}

/// A finite pointed algebra. Equality ignores the name.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    name: String,
    sig: Signature,
    size: usize,
    ops: Vec<Operation>,
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.sig == other.sig && self.ops == other.ops
    }
}

impl Eq for FiniteAlgebra {}

impl FiniteAlgebra {
    /// Validates and builds an algebra. `tables` follow the signature order.
    pub fn new(
        name: impl Into<String>,
        sig: Signature,
        size: usize,
        tables: Vec<Vec<usize>>,
    ) -> Result<Arc<FiniteAlgebra>> {
        let name = name.into();
        if size == 0 {
            return Err(Error::Malformed {
                at: "size".into(),
                message: "carrier must be non-empty".into(),
            });
        }
        if tables.len() != sig.ops.len() {
            return Err(Error::Malformed {
                at: "operations".into(),
                message: format!("expected {} tables, found {}", sig.ops.len(), tables.len()),
            });
        }
        let mut ops = Vec::with_capacity(tables.len());
        for (symbol, table) in sig.ops.iter().zip(tables) {
            let expected = size.pow(symbol.arity as u32);
            if table.len() != expected {
                return Err(Error::Malformed {
                    at: format!("operations.{}", symbol.name),
                    message: format!("table has {} entries, expected {expected}", table.len()),
                });
            }
            if let Some(pos) = table.iter().position(|&v| v >= size) {
                return Err(Error::OutOfRange {
                    op: symbol.name.clone(),
                    coordinate: decode(pos, size, symbol.arity),
                    value: table[pos] as u64,
                    size,
                });
            }
            ops.push(Operation {
                arity: symbol.arity,
                table,
            });
        }
        let zero_value = ops[sig.zero].table[0];
        if zero_value != 0 {
            return Err(Error::ZeroNotPoint {
                symbol: ZERO_SYMBOL.into(),
                value: zero_value,
            });
        }
        for (symbol, op) in sig.ops.iter().zip(&ops) {
            // the all-zero tuple is row 0
            if op.table[0] != 0 {
                return Err(Error::ZeroNotFixed {
                    op: symbol.name.clone(),
                    value: op.table[0],
                });
            }
        }
        Ok(Arc::new(FiniteAlgebra { name, sig, size, ops }))
    }

    /// The one-element algebra of a signature, named after the signature's
    /// non-constant symbols (`trivial{mul}`) so trivial algebras of
    /// different signatures never share a name.
    pub fn trivial(sig: &Signature) -> Arc<FiniteAlgebra> {
        let tables = sig.ops.iter().map(|_| vec![0]).collect();
        let symbols: Vec<&str> = sig
            .ops
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != sig.zero_symbol())
            .map(|(_, s)| s.name.as_str())
            .collect();
        let name = format!("trivial{{{}}}", symbols.join(","));
        FiniteAlgebra::new(name, sig.clone(), 1, tables).expect("trivial algebra is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    /// Evaluates operation `op` on `args`.
    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        let operation = &self.ops[op];
        debug_assert_eq!(args.len(), operation.arity);
        let index = args.iter().fold(0, |acc, &a| acc * self.size + a);
        operation.table[index]
    }

    /// Same algebra under another name.
    pub fn renamed(&self, name: impl Into<String>) -> Arc<FiniteAlgebra> {
        Arc::new(FiniteAlgebra {
            name: name.into(),
            ..self.clone()
        })
    }

    pub fn same_signature(&self, other: &FiniteAlgebra) -> Result<()> {
        if self.sig == other.sig {
            Ok(())
        } else {
            Err(Error::SignatureMismatch {
                left: self.name.clone(),
                right: other.name.clone(),
            })
        }
    }
}

/// Digits of a row-major tuple index, most significant first.
pub(crate) fn decode(mut index: usize, size: usize, arity: usize) -> Vec<usize> {
    let mut digits = vec![0; arity];
    for slot in digits.iter_mut().rev() {
        *slot = index % size;
        index /= size;
    }
    digits
}

/// Pointer equality first, then table equality.
pub fn same_algebra(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
