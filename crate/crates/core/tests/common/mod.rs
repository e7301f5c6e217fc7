//! Brute-force oracles. Deliberately naive and independent of the search
//! code they check: no propagation, no union-find, no closure tricks.
#![allow(dead_code)]

use std::sync::Arc;

use centralic::algebra::FiniteAlgebra;
use centralic::catalog;

/// Row-major digits of `index` in base `n`, most significant first.
pub fn digits(mut index: usize, n: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for d in out.iter_mut().rev() {
        *d = index % n;
        index /= n;
    }
    out
}

/// Every map `0..n -> 0..m`, as tables.
pub fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    (0..m.pow(n as u32)).map(|i| digits(i, m, n)).collect()
}

/// Whether `map` commutes with every operation, tuple by tuple.
pub fn is_hom(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[usize]) -> bool {
    let n = a.size();
    a.ops().iter().enumerate().all(|(op, operation)| {
        let k = operation.arity();
        (0..n.pow(k as u32)).all(|i| {
            let args = digits(i, n, k);
            let image: Vec<usize> = args.iter().map(|&x| map[x]).collect();
            map[a.apply(op, &args)] == b.apply(op, &image)
        })
    })
}

/// Homomorphism tables found by filtering all point-preserving maps.
pub fn homs(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Vec<Vec<usize>> {
    all_maps(a.size(), b.size())
        .into_iter()
        .filter(|m| m[0] == 0 && is_hom(a, b, m))
        .collect()
}

/// Set partitions of `0..n` as restricted growth strings, converted to
/// "smallest member of my block" tables.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            let mut first = Vec::new();
            let repr = prefix
                .iter()
                .enumerate()
                .map(|(i, &block)| {
                    if block == first.len() {
                        first.push(i);
                    }
                    first[block]
                })
                .collect();
            out.push(repr);
            return;
        }
        let blocks = prefix.iter().max().map_or(0, |&b| b + 1);
        for b in 0..=blocks {
            prefix.push(b);
            grow(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), n, &mut out);
    out
}

/// Compatibility straight from the definition: related argument tuples
/// give related results.
pub fn is_congruence(a: &FiniteAlgebra, repr: &[usize]) -> bool {
    let n = a.size();
    a.ops().iter().enumerate().all(|(op, operation)| {
        let k = operation.arity();
        let tuples = n.pow(k as u32);
        (0..tuples).all(|i| {
            let s = digits(i, n, k);
            let base = repr[a.apply(op, &s)];
            // comparing every tuple with its representative tuple suffices
            let r: Vec<usize> = s.iter().map(|&x| repr[x]).collect();
            base == repr[a.apply(op, &r)]
        })
    })
}

pub fn congruences(a: &FiniteAlgebra) -> Vec<Vec<usize>> {
    partitions(a.size())
        .into_iter()
        .filter(|p| is_congruence(a, p))
        .collect()
}

/// The intersection of every congruence containing `pairs`.
pub fn least_congruence(all: &[Vec<usize>], pairs: &[(usize, usize)]) -> Vec<usize> {
    let n = all[0].len();
    let containing: Vec<&Vec<usize>> = all
        .iter()
        .filter(|p| pairs.iter().all(|&(x, y)| p[x] == p[y]))
        .collect();
    (0..n)
        .map(|x| {
            (0..=x)
                .find(|&y| containing.iter().all(|p| p[x] == p[y]))
                .expect("x is related to itself")
        })
        .collect()
}

/// Catalog slices with trivial algebras, one per signature.
pub fn slices() -> Vec<Vec<Arc<FiniteAlgebra>>> {
    catalog::slices(&catalog::full())
}

pub fn builtin(name: &str) -> Arc<FiniteAlgebra> {
    catalog::builtin(name)
}

pub fn trivial_like(a: &FiniteAlgebra) -> Arc<FiniteAlgebra> {
    FiniteAlgebra::trivial(a.signature())
}

#[test]
fn bell_numbers() {
    let counts: Vec<usize> = (1..=6).map(|n| partitions(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 15, 52, 203]);
}
