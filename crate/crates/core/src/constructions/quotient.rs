use std::sync::Arc;

use super::congruence::{generate_congruence, Congruence};
use super::product::check_end;
use crate::algebra::{decode, FiniteAlgebra, Hom};
use crate::error::{Error, Result};

/// A quotient algebra and its surjection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: Arc<FiniteAlgebra>,
    pub map: Hom,
}

/// Classes are re-indexed by their smallest member; since 0 is the smallest
/// member of its class, its class is index 0.
pub fn quotient(a: &Arc<FiniteAlgebra>, theta: &Congruence) -> Result<Quotient> {
    check_end(theta.on(), a, "quotient")?;
    let repr = theta.repr();
    let n = a.size();
    let mut index = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if repr[x] == x {
            index[x] = reps.len();
            reps.push(x);
        }
    }
    let k = reps.len();
    let mut args = Vec::new();
    let mut tables = Vec::with_capacity(a.ops().len());
    for (op, operation) in a.ops().iter().enumerate() {
        let arity = operation.arity();
        let count = k.pow(arity as u32);
        let mut table = Vec::with_capacity(count);
        for t in 0..count {
            args.clear();
            args.extend(decode(t, k, arity).into_iter().map(|i| reps[i]));
            table.push(index[repr[a.apply(op, &args)]]);
        }
        tables.push(table);
    }
    let algebra = FiniteAlgebra::new(format!("{}/~", a.name()), a.signature().clone(), k, tables)?;
    let map = Hom::raw(a, &algebra, (0..n).map(|x| index[repr[x]]).collect());
    Ok(Quotient { algebra, map })
}

/// A coequaliser of a parallel pair, kept with the pair that built it.
#[derive(Debug, Clone)]
pub struct Coequaliser {
    pub f: Hom,
    pub g: Hom,
    pub congruence: Congruence,
    pub quotient: Quotient,
}

impl Coequaliser {
    pub fn q(&self) -> &Hom {
        &self.quotient.map
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.quotient.algebra
    }
}

/// Quotient of the codomain by the congruence generated by
/// `{(f(s), g(s))}`.
pub fn coequaliser(f: &Hom, g: &Hom) -> Result<Coequaliser> {
    check_end(g.dom(), f.dom(), "coequaliser (domains)")?;
    check_end(g.cod(), f.cod(), "coequaliser (codomains)")?;
    let pairs: Vec<(usize, usize)> = (0..f.dom().size()).map(|s| (f.at(s), g.at(s))).collect();
    let congruence = generate_congruence(f.cod(), &pairs)?;
    let quotient = quotient(f.cod(), &congruence)?;
    Ok(Coequaliser {
        f: f.clone(),
        g: g.clone(),
        congruence,
        quotient,
    })
}

/// The unique `h'` with `h' ∘ q = h`, for surjective `q`. Fails with the
/// offending pair when `q` identifies elements that `h` separates.
pub fn factor_through(q: &Hom, h: &Hom) -> Result<Hom> {
    check_end(h.dom(), q.dom(), "factorisation source")?;
    let mut map = vec![usize::MAX; q.cod().size()];
    for x in 0..q.dom().size() {
        let slot = &mut map[q.at(x)];
        if *slot == usize::MAX {
            *slot = h.at(x);
        } else if *slot != h.at(x) {
            return Err(Error::ShapeMismatch {
                what: "factorisation",
                expected: "kernel of q below kernel of h".into(),
                found: format!("element {x} separated by h but identified by q"),
            });
        }
    }
    if map.contains(&usize::MAX) {
        return Err(Error::ShapeMismatch {
            what: "factorisation",
            expected: "a surjective quotient map".into(),
            found: q.to_string(),
        });
    }
    Hom::new(q.cod(), h.cod(), map)
}
