use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{decode, same_algebra, FiniteAlgebra, Hom};
use crate::error::{Error, Result};

/// Union-find whose roots are always the smallest member of their class.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn from_repr(repr: &[usize]) -> UnionFind {
        UnionFind { parent: repr.to_vec() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// True when two distinct classes were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (low, high) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[high] = low;
        true
    }

    pub(crate) fn repr(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}

/// A congruence stored as the map sending each element to the smallest
/// member of its class.
#[derive(Clone)]
pub struct Congruence {
    on: Arc<FiniteAlgebra>,
    repr: Vec<usize>,
}

impl PartialEq for Congruence {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && same_algebra(&self.on, &other.on)
    }
}

impl Eq for Congruence {}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Congruence({} {:?})", self.on.name(), self.classes())
    }
}

impl Congruence {
    pub fn equality(a: &Arc<FiniteAlgebra>) -> Congruence {
        Congruence {
            on: Arc::clone(a),
            repr: (0..a.size()).collect(),
        }
    }

    pub fn total(a: &Arc<FiniteAlgebra>) -> Congruence {
        Congruence {
            on: Arc::clone(a),
            repr: vec![0; a.size()],
        }
    }

    /// Validates a representative map: canonical (smallest member) and
    /// compatible with every operation.
    pub fn from_repr(a: &Arc<FiniteAlgebra>, repr: Vec<usize>) -> Result<Congruence> {
        let bad = |why: &str, repr: &[usize]| Error::ShapeMismatch {
            what: "congruence",
            expected: why.to_string(),
            found: format!("{repr:?}"),
        };
        if repr.len() != a.size() {
            return Err(bad("one representative per element", &repr));
        }
        for (x, &r) in repr.iter().enumerate() {
            if r > x || repr[r] != r {
                return Err(bad("idempotent map to the smallest class member", &repr));
            }
        }
        let c = Congruence {
            on: Arc::clone(a),
            repr,
        };
        if !c.is_compatible() {
            return Err(bad("a partition compatible with every operation", &c.repr));
        }
        Ok(c)
    }

    pub(crate) fn raw(a: &Arc<FiniteAlgebra>, repr: Vec<usize>) -> Congruence {
        Congruence {
            on: Arc::clone(a),
            repr,
        }
    }

    pub fn on(&self) -> &Arc<FiniteAlgebra> {
        &self.on
    }

    pub fn repr(&self) -> &[usize] {
        &self.repr
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.repr[a] == self.repr[b]
    }

    /// Classes in order of their smallest member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut slot = vec![usize::MAX; self.repr.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (x, &r) in self.repr.iter().enumerate() {
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }

    pub fn class_count(&self) -> usize {
        self.repr.iter().enumerate().filter(|&(x, &r)| x == r).count()
    }

    pub fn is_equality(&self) -> bool {
        self.repr.iter().enumerate().all(|(x, &r)| x == r)
    }

    pub fn is_total(&self) -> bool {
        self.repr.iter().all(|&r| r == 0)
    }

    pub fn le(&self, other: &Congruence) -> bool {
        (0..self.repr.len()).all(|x| other.contains(x, self.repr[x]))
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let mut first: HashMap<(usize, usize), usize> = HashMap::new();
        let repr = (0..self.repr.len())
            .map(|x| *first.entry((self.repr[x], other.repr[x])).or_insert(x))
            .collect();
        Congruence::raw(&self.on, repr)
    }

    /// Equivalence join; congruences are closed under it.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::from_repr(&self.repr);
        for (x, &r) in other.repr.iter().enumerate() {
            uf.union(x, r);
        }
        Congruence::raw(&self.on, uf.repr())
    }

    /// `repr(f(t)) = repr(f(repr(t)))` for every operation and tuple.
    pub fn is_compatible(&self) -> bool {
        let a = &self.on;
        let n = a.size();
        let mut args = Vec::new();
        for (op, operation) in a.ops().iter().enumerate() {
            for (t, &value) in operation.table().iter().enumerate() {
                args.clear();
                args.extend(decode(t, n, operation.arity()).into_iter().map(|x| self.repr[x]));
                if self.repr[value] != self.repr[a.apply(op, &args)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_relation(&self) -> Relation {
        let n = self.repr.len();
        let mut r = Relation::empty(n);
        for x in 0..n {
            for y in 0..n {
                if self.contains(x, y) {
                    r.insert(x, y);
                }
            }
        }
        r
    }
}

/// Smallest congruence containing `pairs`.
///
/// Union-find closure under the unary polynomial translations of the basic
/// operations: whenever `t` and `t'` agree up to the current partition,
/// `f(t)` and `f(t')` are merged, until nothing changes.
pub fn generate_congruence(a: &Arc<FiniteAlgebra>, pairs: &[(usize, usize)]) -> Result<Congruence> {
    let n = a.size();
    if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= n || y >= n) {
        return Err(Error::ShapeMismatch {
            what: "congruence generator",
            expected: format!("elements below {n}"),
            found: format!("({x}, {y})"),
        });
    }
    let mut uf = UnionFind::new(n);
    for &(x, y) in pairs {
        uf.union(x, y);
    }
    Ok(Congruence::raw(a, close(a, uf)))
}

pub(crate) fn close(a: &FiniteAlgebra, mut uf: UnionFind) -> Vec<usize> {
    let n = a.size();
    let decoded: Vec<Vec<Vec<usize>>> = a
        .ops()
        .iter()
        .map(|op| {
            if op.arity() == 0 {
                Vec::new()
            } else {
                (0..op.table().len()).map(|t| decode(t, n, op.arity())).collect()
            }
        })
        .collect();
    let mut args = Vec::new();
    loop {
        let repr = uf.repr();
        let mut changed = false;
        for (op, operation) in a.ops().iter().enumerate() {
            if operation.arity() == 0 {
                continue;
            }
            for (t, &value) in operation.table().iter().enumerate() {
                let tuple = &decoded[op][t];
                if tuple.iter().all(|&x| repr[x] == x) {
                    continue;
                }
                args.clear();
                args.extend(tuple.iter().map(|&x| repr[x]));
                changed |= uf.union(value, a.apply(op, &args));
            }
        }
        if !changed {
            return uf.repr();
        }
    }
}

/// `a ~ b` iff `f(a) = f(b)`.
pub fn kernel_congruence(f: &Hom) -> Congruence {
    let mut first = vec![usize::MAX; f.cod().size()];
    let repr = (0..f.dom().size())
        .map(|x| {
            let slot = &mut first[f.at(x)];
            if *slot == usize::MAX {
                *slot = x;
            }
            *slot
        })
        .collect();
    Congruence::raw(f.dom(), repr)
}

/// The full congruence lattice as the join-closure of the principal
/// congruences. Ordered by decreasing class count, then by representative
/// table, so equality comes first and the total congruence last.
pub fn all_congruences(a: &Arc<FiniteAlgebra>, carrier_cap: usize) -> Result<Vec<Congruence>> {
    let n = a.size();
    if n > carrier_cap {
        return Err(Error::CapExceeded {
            cap: "congruence carrier",
            required: n as u64,
            limit: carrier_cap as u64,
        });
    }
    let mut principal: BTreeSet<Vec<usize>> = BTreeSet::new();
    for x in 0..n {
        for y in x + 1..n {
            principal.insert(generate_congruence(a, &[(x, y)])?.repr);
        }
    }
    let principal: Vec<Vec<usize>> = principal.into_iter().collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert((0..n).collect());
    let mut frontier: Vec<Vec<usize>> = vec![(0..n).collect()];
    while let Some(current) = frontier.pop() {
        for p in &principal {
            let mut uf = UnionFind::from_repr(&current);
            for (x, &r) in p.iter().enumerate() {
                uf.union(x, r);
            }
            let joined = uf.repr();
            if seen.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    let mut out: Vec<Congruence> = seen.into_iter().map(|r| Congruence::raw(a, r)).collect();
    out.sort_by(|x, y| y.class_count().cmp(&x.class_count()).then_with(|| x.repr.cmp(&y.repr)));
    Ok(out)
}

/// A binary relation on `0..n` as a dense boolean matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl Relation {
    pub fn empty(n: usize) -> Relation {
        Relation {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits[a * self.n + b] = true;
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n * self.n)
            .filter(|&i| self.bits[i])
            .map(|i| (i / self.n, i % self.n))
            .collect()
    }

    pub fn is_total(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn le(&self, other: &Relation) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Smallest pair in `self` but not in `other`.
    pub fn first_difference(&self, other: &Relation) -> Option<(usize, usize)> {
        (0..self.n * self.n)
            .find(|&i| self.bits[i] && !other.bits[i])
            .map(|i| (i / self.n, i % self.n))
    }
}

/// `{(a, c) : ∃b. a θ1 b ∧ b θ2 c}`.
pub fn relation_compose(first: &Congruence, second: &Congruence) -> Result<Relation> {
    if !same_algebra(&first.on, &second.on) {
        return Err(Error::ShapeMismatch {
            what: "relation composition",
            expected: first.on.name().into(),
            found: second.on.name().into(),
        });
    }
    let n = first.repr.len();
    let classes = second.classes();
    let mut class_of = vec![0; n];
    for (i, class) in classes.iter().enumerate() {
        for &x in class {
            class_of[x] = i;
        }
    }
    let mut r = Relation::empty(n);
    for a in 0..n {
        for b in 0..n {
            if first.contains(a, b) {
                for &c in &classes[class_of[b]] {
                    r.insert(a, c);
                }
            }
        }
    }
    Ok(r)
}
