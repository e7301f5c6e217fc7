//! Backtracking search for homomorphisms with constraint propagation.
//!
//! Branching always picks the lowest unassigned domain index and tries
//! codomain values in ascending order, so solutions come out in
//! lexicographic order of their map tables.

use std::ops::ControlFlow;

use super::{decode, FiniteAlgebra};

const UNSET: usize = usize::MAX;

/// One operation instance `dom.op(args) = target` to be preserved.
struct Constraint {
    op: usize,
    args: Vec<usize>,
    target: usize,
}

pub(crate) struct HomSearch<'a> {
    cod: &'a FiniteAlgebra,
    constraints: Vec<Constraint>,
    // constraint indices mentioning each domain element as an argument
    watch: Vec<Vec<usize>>,
    // constants: (op, target)
    nullary: Vec<(usize, usize)>,
    map: Vec<usize>,
    trail: Vec<usize>,
    queue: Vec<usize>,
    scratch: Vec<usize>,
}

impl<'a> HomSearch<'a> {
    /// Signatures must already agree.
    pub(crate) fn new(dom: &'a FiniteAlgebra, cod: &'a FiniteAlgebra) -> HomSearch<'a> {
        debug_assert_eq!(dom.signature(), cod.signature());
        let n = dom.size();
        let mut constraints = Vec::new();
        let mut watch = vec![Vec::new(); n];
        let mut nullary = Vec::new();
        for (op, operation) in dom.ops().iter().enumerate() {
            if operation.arity() == 0 {
                nullary.push((op, operation.table()[0]));
                continue;
            }
            for (index, &target) in operation.table().iter().enumerate() {
                let args = decode(index, n, operation.arity());
                let id = constraints.len();
                let mut seen: Vec<usize> = args.clone();
                seen.sort_unstable();
                seen.dedup();
                for a in seen {
                    watch[a].push(id);
                }
                constraints.push(Constraint { op, args, target });
            }
        }
        HomSearch {
            cod,
            constraints,
            watch,
            nullary,
            map: vec![UNSET; n],
            trail: Vec::new(),
            queue: Vec::new(),
            scratch: Vec::new(),
        }
    }

    fn set(&mut self, element: usize, value: usize) -> bool {
        match self.map[element] {
            UNSET => {
                self.map[element] = value;
                self.trail.push(element);
                self.queue.push(element);
                true
            }
            current => current == value,
        }
    }

    fn propagate(&mut self) -> bool {
        while let Some(element) = self.queue.pop() {
            for w in 0..self.watch[element].len() {
                let c = &self.constraints[self.watch[element][w]];
                self.scratch.clear();
                let mut complete = true;
                for &a in &c.args {
                    let v = self.map[a];
                    if v == UNSET {
                        complete = false;
                        break;
                    }
                    self.scratch.push(v);
                }
                if !complete {
                    continue;
                }
                let value = self.cod.apply(c.op, &self.scratch);
                let target = c.target;
                if !self.set(target, value) {
                    self.queue.clear();
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let element = self.trail.pop().unwrap();
            self.map[element] = UNSET;
        }
    }

    fn assign(&mut self, element: usize, value: usize) -> bool {
        self.set(element, value) && self.propagate()
    }

    /// Installs the constants and `pins`; false if they are inconsistent.
    fn start(&mut self, pins: &[(usize, usize)]) -> bool {
        self.undo(0);
        self.queue.clear();
        for i in 0..self.nullary.len() {
            let (op, target) = self.nullary[i];
            let value = self.cod.apply(op, &[]);
            if !self.assign(target, value) {
                return false;
            }
        }
        for &(element, value) in pins {
            if value >= self.cod.size() || !self.assign(element, value) {
                return false;
            }
        }
        true
    }

    fn descend<F>(&mut self, from: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let Some(next) = (from..self.map.len()).find(|&i| self.map[i] == UNSET) else {
            return visit(&self.map);
        };
        for value in 0..self.cod.size() {
            let mark = self.trail.len();
            if self.assign(next, value) {
                self.descend(next + 1, visit)?;
            }
            self.undo(mark);
        }
        ControlFlow::Continue(())
    }

    /// Visits every homomorphism extending `pins`, in lexicographic order.
    pub(crate) fn run<F>(&mut self, pins: &[(usize, usize)], mut visit: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.start(pins) {
            let _ = self.descend(0, &mut visit);
        }
        self.undo(0);
    }
}

/// All homomorphism tables extending `pins`, up to `limit` of them.
pub(crate) fn hom_tables(
    dom: &FiniteAlgebra,
    cod: &FiniteAlgebra,
    pins: &[(usize, usize)],
    limit: Option<usize>,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut search = HomSearch::new(dom, cod);
    search.run(pins, |map| {
        out.push(map.to_vec());
        match limit {
            Some(l) if out.len() >= l => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        }
    });
    out
}

/// Direct check that `map` preserves every operation.
pub(crate) fn preserves(dom: &FiniteAlgebra, cod: &FiniteAlgebra, map: &[usize]) -> Option<String> {
    let n = dom.size();
    for (op, operation) in dom.ops().iter().enumerate() {
        for (index, &target) in operation.table().iter().enumerate() {
            let args = decode(index, n, operation.arity());
            let image: Vec<usize> = args.iter().map(|&a| map[a]).collect();
            let expected = cod.apply(op, &image);
            if map[target] != expected {
                return Some(format!(
                    "operation `{}` at {:?}: image {} but expected {}",
                    dom.signature().ops()[op].name,
                    args,
                    map[target],
                    expected
                ));
            }
        }
    }
    None
}
