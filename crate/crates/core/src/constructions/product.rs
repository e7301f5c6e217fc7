use std::sync::Arc;

use crate::algebra::{decode, same_algebra, FiniteAlgebra, Hom};
use crate::error::{Error, Result};

/// A binary product with its structure maps. Elements pair as
/// `(a, b) ↦ a·|B| + b`.
#[derive(Debug, Clone)]
pub struct ProductData {
    pub left: Arc<FiniteAlgebra>,
    pub right: Arc<FiniteAlgebra>,
    pub prod: Arc<FiniteAlgebra>,
    pub pi1: Hom,
    pub pi2: Hom,
    /// `(1, 0)`
    pub iota1: Hom,
    /// `(0, 1)`
    pub iota2: Hom,
    /// Present when both factors are equal.
    pub diagonal: Option<Hom>,
    /// Present when both factors are equal.
    pub swap: Option<Hom>,
}

impl ProductData {
    #[inline]
    pub fn pair(&self, a: usize, b: usize) -> usize {
        a * self.right.size() + b
    }

    #[inline]
    pub fn unpair(&self, p: usize) -> (usize, usize) {
        (p / self.right.size(), p % self.right.size())
    }

    /// `(f, g): S -> left × right`.
    pub fn pairing(&self, f: &Hom, g: &Hom) -> Result<Hom> {
        check_end(f.cod(), &self.left, "pairing (left)")?;
        check_end(g.cod(), &self.right, "pairing (right)")?;
        check_end(g.dom(), f.dom(), "pairing (source)")?;
        let map = (0..f.dom().size()).map(|s| self.pair(f.at(s), g.at(s))).collect();
        Ok(Hom::raw(f.dom(), &self.prod, map))
    }
}

pub(crate) fn check_end(found: &Arc<FiniteAlgebra>, expected: &Arc<FiniteAlgebra>, what: &'static str) -> Result<()> {
    if same_algebra(found, expected) {
        Ok(())
    } else {
        Err(Error::ShapeMismatch {
            what,
            expected: expected.name().into(),
            found: found.name().into(),
        })
    }
}

fn compound(name: &str) -> String {
    if name.contains(' ') {
        format!("({name})")
    } else {
        name.to_string()
    }
}

/// The componentwise product algebra with projections and injections.
pub fn product(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> Result<ProductData> {
    a.same_signature(b)?;
    let (n, m) = (a.size(), b.size());
    let size = n * m;
    let mut tables = Vec::with_capacity(a.ops().len());
    let mut left_args = Vec::new();
    let mut right_args = Vec::new();
    for (op, operation) in a.ops().iter().enumerate() {
        let arity = operation.arity();
        let count = size.pow(arity as u32);
        let mut table = Vec::with_capacity(count);
        for index in 0..count {
            left_args.clear();
            right_args.clear();
            for p in decode(index, size, arity) {
                left_args.push(p / m);
                right_args.push(p % m);
            }
            table.push(a.apply(op, &left_args) * m + b.apply(op, &right_args));
        }
        tables.push(table);
    }
    let name = format!("{} x {}", compound(a.name()), compound(b.name()));
    let prod = FiniteAlgebra::new(name, a.signature().clone(), size, tables)?;
    let pi1 = Hom::raw(&prod, a, (0..size).map(|p| p / m).collect());
    let pi2 = Hom::raw(&prod, b, (0..size).map(|p| p % m).collect());
    let iota1 = Hom::raw(a, &prod, (0..n).map(|x| x * m).collect());
    let iota2 = Hom::raw(b, &prod, (0..m).collect());
    let (diagonal, swap) = if same_algebra(a, b) {
        let diagonal = Hom::raw(a, &prod, (0..n).map(|x| x * m + x).collect());
        let swap = Hom::raw(&prod, &prod, (0..size).map(|p| (p % m) * m + p / m).collect());
        (Some(diagonal), Some(swap))
    } else {
        (None, None)
    };
    Ok(ProductData {
        left: Arc::clone(a),
        right: Arc::clone(b),
        prod,
        pi1,
        pi2,
        iota1,
        iota2,
        diagonal,
        swap,
    })
}

/// `f × g` between two products.
pub fn product_map(f: &Hom, g: &Hom, src: &ProductData, tgt: &ProductData) -> Result<Hom> {
    check_end(f.dom(), &src.left, "product map (left source)")?;
    check_end(g.dom(), &src.right, "product map (right source)")?;
    check_end(f.cod(), &tgt.left, "product map (left target)")?;
    check_end(g.cod(), &tgt.right, "product map (right target)")?;
    let map = (0..src.prod.size())
        .map(|p| {
            let (a, b) = src.unpair(p);
            tgt.pair(f.at(a), g.at(b))
        })
        .collect();
    Ok(Hom::raw(&src.prod, &tgt.prod, map))
}

/// A pullback `A ×_X B` with its two projections.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub algebra: Arc<FiniteAlgebra>,
    /// Pairs `(a, b)` in index order.
    pub members: Vec<(usize, usize)>,
    pub p1: Hom,
    pub p2: Hom,
}

pub fn pullback(f: &Hom, g: &Hom) -> Result<Pullback> {
    check_end(g.cod(), f.cod(), "pullback codomain")?;
    let data = product(f.dom(), g.dom())?;
    let members: Vec<usize> = (0..data.prod.size())
        .filter(|&p| {
            let (a, b) = data.unpair(p);
            f.at(a) == g.at(b)
        })
        .collect();
    let sub = super::Subalgebra::from_closed(&data.prod, members)?;
    let algebra = sub.algebra().renamed(format!(
        "{} x_{} {}",
        compound(f.dom().name()),
        compound(f.cod().name()),
        compound(g.dom().name())
    ));
    let pairs: Vec<(usize, usize)> = sub.members().iter().map(|&p| data.unpair(p)).collect();
    let p1 = Hom::raw(&algebra, f.dom(), pairs.iter().map(|&(a, _)| a).collect());
    let p2 = Hom::raw(&algebra, g.dom(), pairs.iter().map(|&(_, b)| b).collect());
    Ok(Pullback {
        algebra,
        members: pairs,
        p1,
        p2,
    })
}
