use std::sync::Arc;

use crate::algebra::{decode, FiniteAlgebra, Hom};
use crate::error::{Error, Result};

/// An operation-closed subset containing 0, re-indexed in ascending order.
#[derive(Debug, Clone)]
pub struct Subalgebra {
    of: Arc<FiniteAlgebra>,
    members: Vec<usize>,
    algebra: Arc<FiniteAlgebra>,
    inclusion: Hom,
}

impl Subalgebra {
    /// Wraps a subset that is already closed; errors otherwise.
    pub fn from_closed(of: &Arc<FiniteAlgebra>, mut members: Vec<usize>) -> Result<Subalgebra> {
        members.sort_unstable();
        members.dedup();
        let mut index = vec![usize::MAX; of.size()];
        for (i, &m) in members.iter().enumerate() {
            index[m] = i;
        }
        if members.first() != Some(&0) {
            return Err(Error::ShapeMismatch {
                what: "subalgebra",
                expected: "a subset containing 0".into(),
                found: format!("{members:?}"),
            });
        }
        let k = members.len();
        let mut tables = Vec::with_capacity(of.ops().len());
        let mut args = Vec::new();
        for (op, operation) in of.ops().iter().enumerate() {
            let arity = operation.arity();
            let count = k.pow(arity as u32);
            let mut table = Vec::with_capacity(count);
            for t in 0..count {
                args.clear();
                args.extend(decode(t, k, arity).into_iter().map(|i| members[i]));
                let value = of.apply(op, &args);
                if index[value] == usize::MAX {
                    return Err(Error::ShapeMismatch {
                        what: "subalgebra",
                        expected: "a subset closed under all operations".into(),
                        found: format!("{members:?}"),
                    });
                }
                table.push(index[value]);
            }
            tables.push(table);
        }
        let algebra = FiniteAlgebra::new(format!("sub({})", of.name()), of.signature().clone(), k, tables)?;
        let inclusion = Hom::raw(&algebra, of, members.clone());
        Ok(Subalgebra {
            of: Arc::clone(of),
            members,
            algebra,
            inclusion,
        })
    }

    pub fn of(&self) -> &Arc<FiniteAlgebra> {
        &self.of
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn inclusion(&self) -> &Hom {
        &self.inclusion
    }

    pub fn is_everything(&self) -> bool {
        self.members.len() == self.of.size()
    }
}

/// Closure of `seeds ∪ {0}` under every operation.
pub fn subalgebra_generate(a: &Arc<FiniteAlgebra>, seeds: &[usize]) -> Result<Subalgebra> {
    let n = a.size();
    if let Some(&bad) = seeds.iter().find(|&&s| s >= n) {
        return Err(Error::ShapeMismatch {
            what: "subalgebra seed",
            expected: format!("an element below {n}"),
            found: bad.to_string(),
        });
    }
    Subalgebra::from_closed(a, closure(a, seeds))
}

/// Fixpoint of applying all operation tables, as a sorted member list.
pub(crate) fn closure(a: &FiniteAlgebra, seeds: &[usize]) -> Vec<usize> {
    let n = a.size();
    let mut inside = vec![false; n];
    let mut members = Vec::new();
    let push = |x: usize, inside: &mut Vec<bool>, members: &mut Vec<usize>| {
        if !inside[x] {
            inside[x] = true;
            members.push(x);
        }
    };
    push(0, &mut inside, &mut members);
    for &s in seeds {
        push(s, &mut inside, &mut members);
    }
    // semi-naive: each round only applies tuples touching the previous round
    let mut done = 0;
    let mut args = Vec::new();
    loop {
        let fresh_from = done;
        let total = members.len();
        if fresh_from == total {
            break;
        }
        done = total;
        for (op, operation) in a.ops().iter().enumerate() {
            let arity = operation.arity();
            if arity == 0 {
                push(a.apply(op, &[]), &mut inside, &mut members);
                continue;
            }
            let count = total.pow(arity as u32);
            for t in 0..count {
                let digits = decode(t, total, arity);
                if digits.iter().all(|&d| d < fresh_from) {
                    continue;
                }
                args.clear();
                args.extend(digits.iter().map(|&d| members[d]));
                let value = a.apply(op, &args);
                push(value, &mut inside, &mut members);
            }
        }
    }
    members.sort_unstable();
    members
}
