//! Built-in algebras.
//!
//! | name               | algebra                                        |
//! |--------------------|------------------------------------------------|
//! | `lattice2`         | B, the two-element lattice with 0              |
//! | `group-z2`         | Z2 as a monoid under xor                       |
//! | `pset2`            | P2, the two-element pointed set                |
//! | `monoid-or`        | M2, `({0,1}, or, 0)`                           |
//! | `monoid-trunc3`    | N3, `({0,1,2}, min(x+y,2), 0)`                 |
//! | `monoid-leftzero3` | L, left-zero semigroup `{a,b}` with unit 0     |
//! | `trivial`          | one-element algebra of every built-in signature|
//!
//! Z2, M2, N3 and L share the monoid signature `{0, mul}` and so form one
//! slice.

use std::sync::Arc;

use crate::algebra::{parse_algebra, FiniteAlgebra, Signature};
use crate::error::{Error, Result};

const SOURCES: [(&str, &str); 6] = [
    ("lattice2", include_str!("../catalog/lattice2.json")),
    ("group-z2", include_str!("../catalog/group-z2.json")),
    ("pset2", include_str!("../catalog/pset2.json")),
    ("monoid-or", include_str!("../catalog/monoid-or.json")),
    ("monoid-trunc3", include_str!("../catalog/monoid-trunc3.json")),
    ("monoid-leftzero3", include_str!("../catalog/monoid-leftzero3.json")),
];

pub const NAMES: [&str; 7] = [
    "lattice2",
    "group-z2",
    "pset2",
    "monoid-or",
    "monoid-trunc3",
    "monoid-leftzero3",
    "trivial",
];

/// A named non-trivial built-in. Panics on unknown names; use [`catalog`]
/// for fallible lookup.
pub fn builtin(name: &str) -> Arc<FiniteAlgebra> {
    let (_, text) = SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no built-in algebra `{name}`"));
    parse_algebra(text).expect("built-in algebras are valid")
}

/// Signatures of the built-ins, in catalog order and deduplicated.
pub fn builtin_signatures() -> Vec<Signature> {
    let mut out: Vec<Signature> = Vec::new();
    for (name, _) in SOURCES {
        let sig = builtin(name).signature().clone();
        if !out.contains(&sig) {
            out.push(sig);
        }
    }
    out
}

/// Algebras registered under a catalog name.
pub fn catalog(name: &str) -> Result<Vec<Arc<FiniteAlgebra>>> {
    match name {
        "trivial" => Ok(builtin_signatures().iter().map(FiniteAlgebra::trivial).collect()),
        "all" => Ok(full()),
        _ if SOURCES.iter().any(|(n, _)| *n == name) => Ok(vec![builtin(name)]),
        _ => Err(Error::UnknownCatalog(name.into())),
    }
}

/// Every built-in, trivial algebras last.
pub fn full() -> Vec<Arc<FiniteAlgebra>> {
    let mut out: Vec<_> = SOURCES.iter().map(|(n, _)| builtin(n)).collect();
    out.extend(builtin_signatures().iter().map(FiniteAlgebra::trivial));
    out
}

/// Members of `algebras` sharing the signature of `like`, in order.
pub fn slice_of(algebras: &[Arc<FiniteAlgebra>], like: &FiniteAlgebra) -> Vec<Arc<FiniteAlgebra>> {
    algebras
        .iter()
        .filter(|a| a.signature() == like.signature())
        .cloned()
        .collect()
}

/// Partition of `algebras` by signature, in order of first appearance.
pub fn slices(algebras: &[Arc<FiniteAlgebra>]) -> Vec<Vec<Arc<FiniteAlgebra>>> {
    let mut out: Vec<Vec<Arc<FiniteAlgebra>>> = Vec::new();
    for a in algebras {
        match out.iter_mut().find(|s| s[0].signature() == a.signature()) {
            Some(slice) => slice.push(Arc::clone(a)),
            None => out.push(vec![Arc::clone(a)]),
        }
    }
    out
}
