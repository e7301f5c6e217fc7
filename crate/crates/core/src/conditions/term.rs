//! Term conditions decided by generating the clone of `k`-ary term
//! operations as a subalgebra of `A^(A^k)`.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::{decode, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::report::{CheckReport, Counterexample};
use crate::Caps;

/// A term over a signature in variables `v0 .. v(k-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Term {
    Var(usize),
    Op { symbol: String, args: Vec<Term> },
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "v{i}"),
            Term::Op { symbol, args } if args.is_empty() => f.write_str(symbol),
            Term::Op { symbol, args } => {
                write!(f, "{symbol}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Evaluates `term` in `a` with `env[i]` bound to `vi`, looking symbols up
/// by name.
pub fn evaluate(term: &Term, a: &FiniteAlgebra, env: &[usize]) -> Result<usize> {
    match term {
        Term::Var(i) => env.get(*i).copied().ok_or_else(|| Error::Malformed {
            at: format!("v{i}"),
            message: format!("only {} variables bound", env.len()),
        }),
        Term::Op { symbol, args } => {
            let op = a.signature().position(symbol).ok_or_else(|| Error::Malformed {
                at: symbol.clone(),
                message: format!("no such operation in {}", a.signature()),
            })?;
            let arity = a.signature().ops()[op].arity;
            if arity != args.len() {
                return Err(Error::Malformed {
                    at: symbol.clone(),
                    message: format!("arity {arity} applied to {} arguments", args.len()),
                });
            }
            let values = args.iter().map(|t| evaluate(t, a, env)).collect::<Result<Vec<_>>>()?;
            Ok(a.apply(op, &values))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    X,
    Y,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    /// `m(x,x,y) = m(x,y,x) = m(y,x,x) = x`
    Majority,
    /// `m(x,x,y,0) = x`, `m(0,y,y,y) = y`, `m(y,x,y,0) = y`
    M4,
    /// `t(x,0) = x = t(0,x)`
    Plus,
}

impl TermKind {
    pub fn name(self) -> &'static str {
        match self {
            TermKind::Majority => "majority",
            TermKind::M4 => "m4",
            TermKind::Plus => "plus",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            TermKind::Majority => 3,
            TermKind::M4 => 4,
            TermKind::Plus => 2,
        }
    }

    fn equations(self) -> &'static [(&'static [Slot], Slot)] {
        use Slot::*;
        match self {
            TermKind::Majority => &[(&[X, X, Y], X), (&[X, Y, X], X), (&[Y, X, X], X)],
            TermKind::M4 => &[(&[X, X, Y, Zero], X), (&[Zero, Y, Y, Y], Y), (&[Y, X, Y, Zero], Y)],
            TermKind::Plus => &[(&[X, Zero], X), (&[Zero, X], X)],
        }
    }

    fn carrier_cap(self, caps: &Caps) -> usize {
        match self {
            TermKind::M4 => caps.term_carrier_m4,
            _ => caps.term_carrier_small,
        }
    }

    /// `(argument tuple, required value)` for every instance of every
    /// equation on `0..n`.
    fn instances(self, n: usize) -> Vec<(Vec<usize>, usize)> {
        let mut out = Vec::new();
        for &(lhs, rhs) in self.equations() {
            for x in 0..n {
                for y in 0..n {
                    let val = |s: Slot| match s {
                        Slot::X => x,
                        Slot::Y => y,
                        Slot::Zero => 0,
                    };
                    out.push((lhs.iter().map(|&s| val(s)).collect(), val(rhs)));
                }
            }
        }
        out
    }
}

impl std::str::FromStr for TermKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<TermKind> {
        match s {
            "majority" => Ok(TermKind::Majority),
            "m4" => Ok(TermKind::M4),
            "plus" | "unital" | "unital_plus" => Ok(TermKind::Plus),
            _ => Err(Error::Malformed {
                at: "kind".into(),
                message: format!("unknown term kind `{s}`"),
            }),
        }
    }
}

/// The first equation instance `term` violates on `a`, as
/// `(arguments, expected, found)`.
pub fn validate_term(term: &Term, a: &FiniteAlgebra, kind: TermKind) -> Result<Option<(Vec<usize>, usize, usize)>> {
    for (args, want) in kind.instances(a.size()) {
        let got = evaluate(term, a, &args)?;
        if got != want {
            return Ok(Some((args, want, got)));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermSearch {
    pub term: Option<Term>,
    /// Term operations generated before stopping.
    pub closure: usize,
    /// Operation applications performed.
    pub steps: u64,
}

enum Origin {
    Var(usize),
    Op(usize, Vec<usize>),
}

struct Closure {
    elements: Vec<Vec<u8>>,
    origins: Vec<Origin>,
    seen: HashSet<Vec<u8>>,
    found: Option<usize>,
}

impl Closure {
    fn admit(&mut self, t: Vec<u8>, origin: Origin, goal: &impl Fn(&[u8]) -> bool) {
        if self.seen.contains(&t) {
            return;
        }
        if self.found.is_none() && goal(&t) {
            self.found = Some(self.elements.len());
        }
        self.seen.insert(t.clone());
        self.elements.push(t);
        self.origins.push(origin);
    }
}

fn rebuild(a: &FiniteAlgebra, origins: &[Origin], i: usize) -> Term {
    match &origins[i] {
        Origin::Var(v) => Term::Var(*v),
        Origin::Op(op, args) => Term::Op {
            symbol: a.signature().ops()[*op].name.clone(),
            args: args.iter().map(|&j| rebuild(a, origins, j)).collect(),
        },
    }
}

/// Breadth-first generation of the `k`-ary term operations of `a` from the
/// projections and constants, stopping at the first one satisfying the
/// equations of `kind`. Exhausting the closure without a hit proves no
/// such term exists; hitting a cap is an error, not an answer.
pub fn term_search(a: &Arc<FiniteAlgebra>, kind: TermKind, caps: &Caps) -> Result<TermSearch> {
    let n = a.size();
    let cap = kind.carrier_cap(caps);
    if n > cap {
        return Err(Error::CapExceeded {
            cap: "term carrier",
            required: n as u64,
            limit: cap as u64,
        });
    }
    let k = kind.arity();
    let len = n.pow(k as u32);
    let constraints: Vec<(usize, u8)> = kind
        .instances(n)
        .into_iter()
        .map(|(args, want)| (args.iter().fold(0, |acc, &x| acc * n + x), want as u8))
        .collect();
    let goal = |t: &[u8]| constraints.iter().all(|&(i, v)| t[i] == v);

    let mut clo = Closure {
        elements: Vec::new(),
        origins: Vec::new(),
        seen: HashSet::new(),
        found: None,
    };
    let points: Vec<Vec<usize>> = (0..len).map(|i| decode(i, n, k)).collect();
    for v in 0..k {
        let t = points.iter().map(|p| p[v] as u8).collect();
        clo.admit(t, Origin::Var(v), &goal);
    }
    for (op, operation) in a.ops().iter().enumerate() {
        if operation.arity() == 0 {
            let c = a.apply(op, &[]) as u8;
            clo.admit(vec![c; len], Origin::Op(op, Vec::new()), &goal);
        }
    }

    let mut steps = 0u64;
    let mut done = 0;
    let mut args = Vec::new();
    'rounds: while clo.found.is_none() && done < clo.elements.len() {
        let fresh_from = done;
        let total = clo.elements.len();
        done = total;
        for (op, operation) in a.ops().iter().enumerate() {
            let arity = operation.arity();
            if arity == 0 {
                continue;
            }
            for index in 0..total.pow(arity as u32) {
                let digits = decode(index, total, arity);
                if digits.iter().all(|&d| d < fresh_from) {
                    continue;
                }
                steps += 1;
                if steps > caps.term_steps {
                    return Err(Error::CapExceeded {
                        cap: "term steps",
                        required: steps,
                        limit: caps.term_steps,
                    });
                }
                let t: Vec<u8> = (0..len)
                    .map(|i| {
                        args.clear();
                        args.extend(digits.iter().map(|&d| clo.elements[d][i] as usize));
                        a.apply(op, &args) as u8
                    })
                    .collect();
                clo.admit(t, Origin::Op(op, digits), &goal);
                if clo.found.is_some() {
                    break 'rounds;
                }
            }
        }
    }

    let Closure {
        elements,
        origins,
        found,
        ..
    } = clo;
    let term = found.map(|i| rebuild(a, &origins, i));
    if let Some(t) = &term {
        if let Some((args, want, got)) = validate_term(t, a, kind)? {
            return Err(Error::Inconsistent(format!(
                "{} term {t} gives {got} at {args:?}, expected {want}",
                kind.name()
            )));
        }
    }
    Ok(TermSearch {
        term,
        closure: elements.len(),
        steps,
    })
}

/// [`term_search`] as a report: pass with the term, fail when the closure
/// is exhausted, refused on caps.
pub fn term_check(a: &Arc<FiniteAlgebra>, kind: TermKind, caps: &Caps) -> Result<CheckReport> {
    let check = format!("terms-{}", kind.name());
    let report = CheckReport::new(&check, [a.name()]);
    let search = match term_search(a, kind, caps) {
        Ok(s) => s,
        Err(e) => return report.refuse(e),
    };
    let report = report
        .stat("closure", search.closure as u64)
        .stat("steps", search.steps);
    Ok(match search.term {
        Some(t) => report.with_witness(json!({"term": t, "display": t.to_string(), "arity": kind.arity()})),
        None => report.fail(
            Counterexample::new([a.name()])
                .bind("kind", kind.name())
                .bind("closure", search.closure),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    fn median(x: usize, y: usize, z: usize) -> usize {
        (x & y) | (x & z) | (y & z)
    }

    #[test]
    fn lattice_majority_is_the_median() {
        let b = builtin("lattice2");
        let s = term_search(&b, TermKind::Majority, &Caps::default()).unwrap();
        let t = s.term.unwrap();
        for i in 0..8 {
            let (x, y, z) = (i >> 2 & 1, i >> 1 & 1, i & 1);
            assert_eq!(evaluate(&t, &b, &[x, y, z]).unwrap(), median(x, y, z));
        }
    }

    #[test]
    fn no_majority_for_sets_or_groups() {
        let caps = Caps::default();
        let p2 = builtin("pset2");
        let s = term_search(&p2, TermKind::Majority, &caps).unwrap();
        assert!(s.term.is_none());
        assert_eq!(s.closure, 4);
        let z2 = builtin("group-z2");
        let s = term_search(&z2, TermKind::Majority, &caps).unwrap();
        assert!(s.term.is_none());
        assert_eq!(s.closure, 8);
    }

    #[test]
    fn m4_for_the_or_monoid() {
        let m2 = builtin("monoid-or");
        let t = term_search(&m2, TermKind::M4, &Caps::default()).unwrap().term.unwrap();
        for i in 0..16 {
            let env = decode(i, 2, 4);
            assert_eq!(evaluate(&t, &m2, &env).unwrap(), env[0] | env[3]);
        }
    }

    #[test]
    fn caps_refuse() {
        let n3 = builtin("monoid-trunc3");
        let caps = Caps {
            term_carrier_small: 2,
            ..Caps::default()
        };
        assert!(term_check(&n3, TermKind::Majority, &caps).unwrap().refused());
        let caps = Caps {
            term_steps: 3,
            ..Caps::default()
        };
        let r = term_check(&n3, TermKind::M4, &caps).unwrap();
        assert_eq!(r.refusal.unwrap().cap, "term steps");
    }

    #[test]
    fn term_round_trips_through_json() {
        let t = Term::Op {
            symbol: "join".into(),
            args: vec![
                Term::Var(0),
                Term::Op {
                    symbol: "0".into(),
                    args: vec![],
                },
            ],
        };
        assert_eq!(t.to_string(), "join(v0, 0)");
        let back: Term = serde_json::from_value(serde_json::to_value(&t).unwrap()).unwrap();
        assert_eq!(back, t);
    }
}
