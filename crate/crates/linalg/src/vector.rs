use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::scalar::is_zero;
use crate::Scalar;

/// Sparse vector keyed by an ordered basis label. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseVec<K: Ord = usize> {
    entries: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for SparseVec<K> {
    fn default() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for SparseVec<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k:?}: {v}")?;
        }
        f.write_str("}")
    }
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, Scalar::from_integer(1.into()))
    }

    pub fn term(key: K, coeff: Scalar) -> Self {
        let mut v = Self::new();
        v.add_term(key, coeff);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Scalar)>>(terms: I) -> Self {
        let mut v = Self::new();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &K) -> Scalar {
        self.entries.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeff(&self, key: &K) -> Option<&Scalar> {
        self.entries.get(key)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&K, &Scalar)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl DoubleEndedIterator<Item = &K> {
        self.entries.keys()
    }

    pub fn first(&self) -> Option<(&K, &Scalar)> {
        self.entries.iter().next()
    }

    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if is_zero(&coeff) {
            return;
        }
        match self.entries.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + coeff;
                if is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Scalar, other: &Self) {
        if is_zero(c) {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(k.clone(), c * v);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if is_zero(c) {
            return Self::new();
        }
        Self {
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    pub fn map_keys<L: Ord + Clone, F: FnMut(&K) -> L>(&self, mut f: F) -> SparseVec<L> {
        SparseVec::from_terms(self.entries.iter().map(|(k, v)| (f(k), v.clone())))
    }

    /// Linear extension of a map defined on basis keys.
    pub fn linear_map<L: Ord + Clone, F: FnMut(&K) -> SparseVec<L>>(
        &self,
        mut f: F,
    ) -> SparseVec<L> {
        let mut out = SparseVec::new();
        for (k, c) in self.entries.iter() {
            out.axpy(c, &f(k));
        }
        out
    }

    /// Applies a functional given on basis keys.
    pub fn pair<F: FnMut(&K) -> Scalar>(&self, mut f: F) -> Scalar {
        let mut acc = Scalar::zero();
        for (k, c) in self.entries.iter() {
            let v = f(k);
            if !is_zero(&v) {
                acc += c * v;
            }
        }
        acc
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, Scalar)> {
        self.entries.into_iter()
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for SparseVec<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<K: Ord + Clone> Add for &SparseVec<K> {
    type Output = SparseVec<K>;
    fn add(self, rhs: Self) -> SparseVec<K> {
        let mut out = self.clone();
        out.axpy(&Scalar::from_integer(1.into()), rhs);
        out
    }
}

impl<K: Ord + Clone> Sub for &SparseVec<K> {
    type Output = SparseVec<K>;
    fn sub(self, rhs: Self) -> SparseVec<K> {
        let mut out = self.clone();
        out.axpy(&Scalar::from_integer((-1).into()), rhs);
        out
    }
}

impl<K: Ord + Clone> Neg for &SparseVec<K> {
    type Output = SparseVec<K>;
    fn neg(self) -> SparseVec<K> {
        self.scale(&Scalar::from_integer((-1).into()))
    }
}

impl<K: Ord + Clone> Mul<&Scalar> for &SparseVec<K> {
    type Output = SparseVec<K>;
    fn mul(self, rhs: &Scalar) -> SparseVec<K> {
        self.scale(rhs)
    }
}
