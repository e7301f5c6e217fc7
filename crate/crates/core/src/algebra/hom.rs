use std::fmt;
use std::sync::Arc;

use super::search::{hom_tables, preserves};
use super::{same_algebra, FiniteAlgebra};
use crate::error::{Error, Result};

/// A homomorphism between finite algebras of one signature.
#[derive(Debug, Clone)]
pub struct Hom {
    dom: Arc<FiniteAlgebra>,
    cod: Arc<FiniteAlgebra>,
    map: Vec<usize>,
}

impl PartialEq for Hom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && same_algebra(&self.dom, &other.dom) && same_algebra(&self.cod, &other.cod)
    }
}

impl Eq for Hom {}

impl Hom {
    /// Validates `map` as a homomorphism.
    pub fn new(dom: &Arc<FiniteAlgebra>, cod: &Arc<FiniteAlgebra>, map: Vec<usize>) -> Result<Hom> {
        dom.same_signature(cod)?;
        let not_hom = |reason: String| Error::NotAHom {
            dom: dom.name().into(),
            cod: cod.name().into(),
            reason,
        };
        if map.len() != dom.size() {
            return Err(not_hom(format!(
                "table has {} entries, expected {}",
                map.len(),
                dom.size()
            )));
        }
        if let Some(i) = map.iter().position(|&v| v >= cod.size()) {
            return Err(not_hom(format!("entry {} at {i} out of range", map[i])));
        }
        if let Some(reason) = preserves(dom, cod, &map) {
            return Err(not_hom(reason));
        }
        Ok(Hom::raw(dom, cod, map))
    }

    /// Caller guarantees the homomorphism property.
    pub(crate) fn raw(dom: &Arc<FiniteAlgebra>, cod: &Arc<FiniteAlgebra>, map: Vec<usize>) -> Hom {
        debug_assert!(preserves(dom, cod, &map).is_none());
        Hom {
            dom: Arc::clone(dom),
            cod: Arc::clone(cod),
            map,
        }
    }

    pub fn identity(a: &Arc<FiniteAlgebra>) -> Hom {
        Hom::raw(a, a, (0..a.size()).collect())
    }

    pub fn zero(dom: &Arc<FiniteAlgebra>, cod: &Arc<FiniteAlgebra>) -> Result<Hom> {
        dom.same_signature(cod)?;
        Ok(Hom::raw(dom, cod, vec![0; dom.size()]))
    }

    pub fn dom(&self) -> &Arc<FiniteAlgebra> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteAlgebra> {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn at(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_zero(&self) -> bool {
        self.map.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        same_algebra(&self.dom, &self.cod) && self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.size()];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.cod.size()];
        for &v in &self.map {
            if std::mem::replace(&mut hit[v], true) {
                return false;
            }
        }
        true
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_injective()
    }

    /// Same table with both ends replaced by equal algebras.
    pub fn retarget(&self, dom: &Arc<FiniteAlgebra>, cod: &Arc<FiniteAlgebra>) -> Result<Hom> {
        if !same_algebra(&self.dom, dom) || !same_algebra(&self.cod, cod) {
            return Err(Error::ShapeMismatch {
                what: "retarget",
                expected: format!("{} -> {}", self.dom.name(), self.cod.name()),
                found: format!("{} -> {}", dom.name(), cod.name()),
            });
        }
        Ok(Hom::raw(dom, cod, self.map.clone()))
    }
}

impl fmt::Display for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.dom.name(), self.cod.name(), self.map)
    }
}

/// `g ∘ f`.
pub fn compose_homs(g: &Hom, f: &Hom) -> Result<Hom> {
    if !same_algebra(f.cod(), g.dom()) {
        return Err(Error::ShapeMismatch {
            what: "composition",
            expected: f.cod().name().into(),
            found: g.dom().name().into(),
        });
    }
    let map = f.map.iter().map(|&x| g.map[x]).collect();
    Ok(Hom::raw(f.dom(), g.cod(), map))
}

/// Every homomorphism `a -> b`, ordered lexicographically by table.
pub fn enumerate_homs(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> Result<Vec<Hom>> {
    a.same_signature(b)?;
    Ok(hom_tables(a, b, &[], None)
        .into_iter()
        .map(|map| Hom::raw(a, b, map))
        .collect())
}

/// Homomorphisms `a -> b` extending the given `(element, value)` pins.
pub fn enumerate_homs_pinned(
    a: &Arc<FiniteAlgebra>,
    b: &Arc<FiniteAlgebra>,
    pins: &[(usize, usize)],
    limit: Option<usize>,
) -> Result<Vec<Hom>> {
    a.same_signature(b)?;
    Ok(hom_tables(a, b, pins, limit)
        .into_iter()
        .map(|map| Hom::raw(a, b, map))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    pub members: Vec<usize>,
    pub surjective: bool,
    pub injective: bool,
}

pub fn hom_image(f: &Hom) -> Image {
    let mut members = f.map.clone();
    members.sort_unstable();
    members.dedup();
    Image {
        members,
        surjective: f.is_surjective(),
        injective: f.is_injective(),
    }
}
