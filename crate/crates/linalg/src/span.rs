use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::{Scalar, SparseVec};

#[derive(Clone, Debug)]
struct Row<K: Ord> {
    vec: SparseVec<K>,
    combo: SparseVec<usize>,
}

/// Incrementally built subspace in reduced row-echelon form.
///
/// Generators are numbered in insertion order. Every basis row remembers which
/// combination of generators produced it, so membership queries can also return
/// coordinates, and dependent generators yield linear relations.
#[derive(Clone, Debug)]
pub struct Span<K: Ord + Clone = usize> {
    rows: BTreeMap<K, Row<K>>,
    relations: Vec<SparseVec<usize>>,
    generators: usize,
}

impl<K: Ord + Clone> Default for Span<K> {
    fn default() -> Self {
        Self {
            rows: BTreeMap::new(),
            relations: Vec::new(),
            generators: 0,
        }
    }
}

impl<K: Ord + Clone> Span<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec<K>>>(vectors: I) -> Self {
        let mut s = Self::new();
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Relations among inserted generators, one for every dependent insertion.
    pub fn relations(&self) -> &[SparseVec<usize>] {
        &self.relations
    }

    /// Reduced basis rows, ordered by leading key.
    pub fn basis(&self) -> Vec<SparseVec<K>> {
        self.rows.values().map(|r| r.vec.clone()).collect()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    fn reduce_full(&self, v: &SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let hits: Vec<(K, Scalar)> = v
            .iter()
            .filter(|(k, _)| self.rows.contains_key(*k))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        let mut rem = v.clone();
        let mut combo = SparseVec::new();
        for (k, c) in hits {
            let row = &self.rows[&k];
            rem.axpy(&-c.clone(), &row.vec);
            combo.axpy(&c, &row.combo);
        }
        (rem, combo)
    }

    /// Component of `v` outside the span, relative to the echelon basis.
    pub fn remainder(&self, v: &SparseVec<K>) -> SparseVec<K> {
        self.reduce_full(v).0
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.remainder(v).is_zero()
    }

    /// Coefficients over the inserted generators expressing `v`, if `v` lies in the span.
    pub fn express(&self, v: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let (rem, combo) = self.reduce_full(v);
        rem.is_zero().then_some(combo)
    }

    /// Inserts a generator. Returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let g = self.generators;
        self.generators += 1;
        let (rem, reduced) = self.reduce_full(&v);
        let mut combo = SparseVec::basis(g);
        combo.axpy(&-Scalar::one(), &reduced);
        let lead = match rem.first() {
            None => {
                self.relations.push(combo);
                return false;
            }
            Some((k, c)) => (k.clone(), c.clone()),
        };
        let inv = Scalar::one() / lead.1;
        let row = Row {
            vec: rem.scale(&inv),
            combo: combo.scale(&inv),
        };
        for other in self.rows.values_mut() {
            let c = other.vec.get(&lead.0);
            if !c.is_zero() {
                other.vec.axpy(&-c.clone(), &row.vec);
                other.combo.axpy(&-c, &row.combo);
            }
        }
        self.rows.insert(lead.0, row);
        true
    }

    pub fn contains_span(&self, other: &Span<K>) -> bool {
        other.rows.values().all(|r| self.contains(&r.vec))
    }

    pub fn same_as(&self, other: &Span<K>) -> bool {
        self.dim() == other.dim() && self.contains_span(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn v(xs: &[i64]) -> SparseVec<usize> {
        SparseVec::from_terms(xs.iter().enumerate().map(|(i, x)| (i, int(*x))))
    }

    #[test]
    fn dependent_insert_records_relation() {
        let mut s = Span::new();
        assert!(s.insert(v(&[1, 2, 0])));
        assert!(s.insert(v(&[0, 1, 1])));
        assert!(!s.insert(v(&[2, 5, 1])));
        assert_eq!(s.dim(), 2);
        let rel = &s.relations()[0];
        assert_eq!(rel.get(&2), int(1));
        assert_eq!(rel.get(&0), int(-2));
        assert_eq!(rel.get(&1), int(-1));
    }

    #[test]
    fn express_recovers_coefficients() {
        let s = Span::from_vectors([v(&[1, 1]), v(&[1, -1])]);
        let c = s.express(&v(&[3, 1])).unwrap();
        assert_eq!(c.get(&0), int(2));
        assert_eq!(c.get(&1), int(1));
    }

    #[test]
    fn equal_spans_from_different_generators() {
        let a = Span::from_vectors([v(&[1, 0, 1]), v(&[0, 1, 0])]);
        let b = Span::from_vectors([v(&[1, 1, 1]), v(&[1, -1, 1])]);
        assert!(a.same_as(&b));
        assert!(!a.contains(&v(&[1, 0, 0])));
    }
}
