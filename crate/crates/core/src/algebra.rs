//! Algebras given by a basis and a product rule, their tensor squares, and
//! multipliers represented as pairs of left and right actions.

use std::fmt::Debug;

use hopfforge_linalg::{Scalar, Span, SparseVec};
use num_traits::{One, Zero};

use crate::HopfError;

pub type Element = SparseVec<usize>;
pub type Tensor2 = SparseVec<(usize, usize)>;
pub type Tensor3 = SparseVec<(usize, usize, usize)>;

/// Built-in product rules over the integer labels `…, -1, 0, 1, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportedRule {
    /// Finitely supported functions on ℤ with the pointwise product.
    PointwiseZ,
}

impl SupportedRule {
    pub fn name(&self) -> &'static str {
        match self {
            SupportedRule::PointwiseZ => "pointwise-z",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "pointwise-z" => Some(SupportedRule::PointwiseZ),
            _ => None,
        }
    }
}

/// Index of an integer label in the zigzag enumeration `0, -1, 1, -2, 2, …`.
pub fn zigzag_index(label: i64) -> usize {
    if label >= 0 {
        (2 * label) as usize
    } else {
        (-2 * label - 1) as usize
    }
}

pub fn zigzag_label(index: usize) -> i64 {
    if index % 2 == 0 {
        (index / 2) as i64
    } else {
        -((index as i64 + 1) / 2)
    }
}

/// Finite-dimensional algebra given by structure constants.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseAlgebra {
    labels: Vec<String>,
    table: Vec<Element>,
    unit: Option<Element>,
}

impl DenseAlgebra {
    /// `products[i][j]` is `e_i e_j`. The unit is detected by solving a linear system.
    pub fn new(labels: Vec<String>, products: Vec<Vec<Element>>) -> Result<Self, HopfError> {
        let n = labels.len();
        if n == 0 {
            return Err(HopfError::Input("algebra has an empty basis".into()));
        }
        if products.len() != n || products.iter().any(|r| r.len() != n) {
            return Err(HopfError::Input(format!("product table must be {n}x{n}")));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in products {
            for v in row {
                if let Some(k) = v.keys().next_back() {
                    if *k >= n {
                        return Err(HopfError::Input(format!(
                            "product refers to basis index {k} beyond dimension {n}"
                        )));
                    }
                }
                table.push(v);
            }
        }
        let mut alg = DenseAlgebra {
            labels,
            table,
            unit: None,
        };
        alg.unit = alg.solve_unit();
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn product(&self, i: usize, j: usize) -> &Element {
        &self.table[i * self.dim() + j]
    }

    pub fn unit(&self) -> Option<&Element> {
        self.unit.as_ref()
    }

    fn solve_unit(&self) -> Option<Element> {
        let n = self.dim();
        let mut span: Span<(usize, usize, usize)> = Span::new();
        for u in 0..n {
            let mut col = SparseVec::new();
            for j in 0..n {
                for (k, c) in self.product(u, j).iter() {
                    col.add_term((0, j, *k), c.clone());
                }
                for (k, c) in self.product(j, u).iter() {
                    col.add_term((1, j, *k), c.clone());
                }
            }
            span.insert(col);
        }
        let mut target = SparseVec::new();
        for j in 0..n {
            target.add_term((0, j, j), Scalar::one());
            target.add_term((1, j, j), Scalar::one());
        }
        span.express(&target)
    }

    pub fn opposite(&self) -> DenseAlgebra {
        let n = self.dim();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(self.product(j, i).clone());
            }
        }
        DenseAlgebra {
            labels: self.labels.clone(),
            table,
            unit: self.unit.clone(),
        }
    }
}

/// An algebra with an infinite enumerable basis and a built-in product rule.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportedAlgebra {
    pub rule: SupportedRule,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Algebra {
    Dense(DenseAlgebra),
    Supported(SupportedAlgebra),
}

impl Algebra {
    pub fn is_dense(&self) -> bool {
        matches!(self, Algebra::Dense(_))
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            Algebra::Dense(d) => Some(d.dim()),
            Algebra::Supported(_) => None,
        }
    }

    pub fn unit(&self) -> Option<&Element> {
        match self {
            Algebra::Dense(d) => d.unit(),
            Algebra::Supported(_) => None,
        }
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Element {
        match self {
            Algebra::Dense(d) => d.product(i, j).clone(),
            Algebra::Supported(s) => match s.rule {
                SupportedRule::PointwiseZ => {
                    if i == j {
                        SparseVec::basis(i)
                    } else {
                        SparseVec::new()
                    }
                }
            },
        }
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.axpy(&(a * b), &self.mul_basis(*i, *j));
            }
        }
        out
    }

    pub fn label(&self, i: usize) -> String {
        match self {
            Algebra::Dense(d) => d.labels[i].clone(),
            Algebra::Supported(_) => zigzag_label(i).to_string(),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match self {
            Algebra::Dense(d) => d.labels.iter().position(|l| l == label),
            Algebra::Supported(_) => label.trim().parse::<i64>().ok().map(zigzag_index),
        }
    }

    /// Size of a basis label, used to pick local-unit radii. Zero for dense algebras.
    pub fn magnitude(&self, i: usize) -> usize {
        match self {
            Algebra::Dense(_) => 0,
            Algebra::Supported(_) => zigzag_label(i).unsigned_abs() as usize,
        }
    }

    /// Basis elements with labels of magnitude at most `k`; the whole basis for dense algebras.
    pub fn window(&self, k: usize) -> Vec<usize> {
        match self {
            Algebra::Dense(d) => (0..d.dim()).collect(),
            Algebra::Supported(_) => (0..=2 * k).collect(),
        }
    }

    /// Sum of the basis elements of magnitude at most `r`, for algebras without a unit.
    pub fn local_unit(&self, r: usize) -> Option<Element> {
        match self {
            Algebra::Dense(_) => None,
            Algebra::Supported(s) => match s.rule {
                SupportedRule::PointwiseZ => {
                    Some((0..=2 * r).map(|i| (i, Scalar::one())).collect())
                }
            },
        }
    }

    pub fn opposite(&self) -> Algebra {
        match self {
            Algebra::Dense(d) => Algebra::Dense(d.opposite()),
            Algebra::Supported(s) => Algebra::Supported(s.clone()),
        }
    }

    pub fn format_element(&self, x: &Element) -> String {
        format_terms(x.iter().map(|(k, c)| (self.label(*k), c)))
    }

    pub fn format_tensor(&self, x: &Tensor2) -> String {
        format_terms(
            x.iter()
                .map(|((a, b), c)| (format!("{}⊗{}", self.label(*a), self.label(*b)), c)),
        )
    }
}

fn format_terms<'a, I: Iterator<Item = (String, &'a Scalar)>>(terms: I) -> String {
    let parts: Vec<String> = terms
        .map(|(l, c)| {
            if c.is_one() {
                l
            } else {
                format!("{}·{}", hopfforge_linalg::format_scalar(c), l)
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Common interface of an algebra and its tensor square.
pub trait BasisAlgebra {
    type Key: Ord + Clone + Debug;
    fn mul_keys(&self, a: &Self::Key, b: &Self::Key) -> SparseVec<Self::Key>;
    fn unit_vec(&self) -> Option<SparseVec<Self::Key>>;
    fn local_unit_vec(&self, r: usize) -> Option<SparseVec<Self::Key>>;
    fn window_keys(&self, k: usize) -> Vec<Self::Key>;

    fn mul(&self, x: &SparseVec<Self::Key>, y: &SparseVec<Self::Key>) -> SparseVec<Self::Key> {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.axpy(&(a * b), &self.mul_keys(i, j));
            }
        }
        out
    }
}

impl BasisAlgebra for Algebra {
    type Key = usize;

    fn mul_keys(&self, a: &usize, b: &usize) -> Element {
        self.mul_basis(*a, *b)
    }

    fn unit_vec(&self) -> Option<Element> {
        self.unit().cloned()
    }

    fn local_unit_vec(&self, r: usize) -> Option<Element> {
        self.local_unit(r)
    }

    fn window_keys(&self, k: usize) -> Vec<usize> {
        self.window(k)
    }
}

/// The algebra `A⊗A` with componentwise product.
#[derive(Clone, Copy, Debug)]
pub struct TensorSquare<'a>(pub &'a Algebra);

impl BasisAlgebra for TensorSquare<'_> {
    type Key = (usize, usize);

    fn mul_keys(&self, a: &(usize, usize), b: &(usize, usize)) -> Tensor2 {
        tensor(&self.0.mul_basis(a.0, b.0), &self.0.mul_basis(a.1, b.1))
    }

    fn unit_vec(&self) -> Option<Tensor2> {
        self.0.unit().map(|u| tensor(u, u))
    }

    fn local_unit_vec(&self, r: usize) -> Option<Tensor2> {
        self.0.local_unit(r).map(|u| tensor(&u, &u))
    }

    fn window_keys(&self, k: usize) -> Vec<(usize, usize)> {
        let w = self.0.window(k);
        w.iter()
            .flat_map(|a| w.iter().map(move |b| (*a, *b)))
            .collect()
    }
}

pub fn tensor(x: &Element, y: &Element) -> Tensor2 {
    let mut out = SparseVec::new();
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            out.add_term((*i, *j), a * b);
        }
    }
    out
}

pub fn tensor3(x: &Tensor2, y: &Element) -> Tensor3 {
    let mut out = SparseVec::new();
    for ((i, j), a) in x.iter() {
        for (k, b) in y.iter() {
            out.add_term((*i, *j, *k), a * b);
        }
    }
    out
}

pub fn flip2(x: &Tensor2) -> Tensor2 {
    x.map_keys(|(a, b)| (*b, *a))
}

pub fn mul2(alg: &Algebra, x: &Tensor2, y: &Tensor2) -> Tensor2 {
    TensorSquare(alg).mul(x, y)
}

pub fn mul3(alg: &Algebra, x: &Tensor3, y: &Tensor3) -> Tensor3 {
    let mut out = SparseVec::new();
    for ((a1, a2, a3), c) in x.iter() {
        for ((b1, b2, b3), d) in y.iter() {
            let p1 = alg.mul_basis(*a1, *b1);
            if p1.is_zero() {
                continue;
            }
            let p2 = alg.mul_basis(*a2, *b2);
            if p2.is_zero() {
                continue;
            }
            let p3 = alg.mul_basis(*a3, *b3);
            let cd = c * d;
            for (i, x1) in p1.iter() {
                for (j, x2) in p2.iter() {
                    for (k, x3) in p3.iter() {
                        out.add_term((*i, *j, *k), &cd * x1 * x2 * x3);
                    }
                }
            }
        }
    }
    out
}

/// `(ι⊗ω)(x)` for a functional given on basis keys.
pub fn slice_second<F: FnMut(usize) -> Scalar>(x: &Tensor2, mut omega: F) -> Element {
    let mut out = SparseVec::new();
    for ((a, b), c) in x.iter() {
        let w = omega(*b);
        if !w.is_zero() {
            out.add_term(*a, c * w);
        }
    }
    out
}

/// `(ω⊗ι)(x)` for a functional given on basis keys.
pub fn slice_first<F: FnMut(usize) -> Scalar>(x: &Tensor2, mut omega: F) -> Element {
    let mut out = SparseVec::new();
    for ((a, b), c) in x.iter() {
        let w = omega(*a);
        if !w.is_zero() {
            out.add_term(*b, c * w);
        }
    }
    out
}

/// First-leg components of `x`, one element per second-leg basis key.
pub fn first_legs(x: &Tensor2) -> Vec<Element> {
    let mut by_second: std::collections::BTreeMap<usize, Element> = Default::default();
    for ((a, b), c) in x.iter() {
        by_second.entry(*b).or_default().add_term(*a, c.clone());
    }
    by_second.into_values().collect()
}

/// Second-leg components of `x`, one element per first-leg basis key.
pub fn second_legs(x: &Tensor2) -> Vec<Element> {
    let mut by_first: std::collections::BTreeMap<usize, Element> = Default::default();
    for ((a, b), c) in x.iter() {
        by_first.entry(*a).or_default().add_term(*b, c.clone());
    }
    by_first.into_values().collect()
}

type Action<'a, K> = Box<dyn Fn(&SparseVec<K>) -> SparseVec<K> + 'a>;

/// Element of a multiplier algebra, stored as its left and right actions.
pub struct Multiplier<'a, K: Ord> {
    left: Action<'a, K>,
    right: Action<'a, K>,
}

impl<'a, K: Ord + Clone + 'a> Multiplier<'a, K> {
    pub fn new<L, R>(left: L, right: R) -> Self
    where
        L: Fn(&SparseVec<K>) -> SparseVec<K> + 'a,
        R: Fn(&SparseVec<K>) -> SparseVec<K> + 'a,
    {
        Self {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// `m·x`
    pub fn left(&self, x: &SparseVec<K>) -> SparseVec<K> {
        (self.left)(x)
    }

    /// `x·m`
    pub fn right(&self, x: &SparseVec<K>) -> SparseVec<K> {
        (self.right)(x)
    }
}

pub fn multiplier_from_element<'a, A>(alg: &'a A, a: SparseVec<A::Key>) -> Multiplier<'a, A::Key>
where
    A: BasisAlgebra,
    A::Key: 'a,
{
    let a2 = a.clone();
    Multiplier::new(move |x| alg.mul(&a, x), move |x| alg.mul(x, &a2))
}

/// Checks `a·(m·b) = (a·m)·b` for all window keys; returns the first failing pair.
pub fn multiplier_check<A: BasisAlgebra>(
    alg: &A,
    m: &Multiplier<'_, A::Key>,
    window: &[A::Key],
) -> Result<(), (A::Key, A::Key)> {
    for a in window {
        let av = SparseVec::basis(a.clone());
        let am = m.right(&av);
        for b in window {
            let bv = SparseVec::basis(b.clone());
            if alg.mul(&av, &m.left(&bv)) != alg.mul(&am, &bv) {
                return Err((a.clone(), b.clone()));
            }
        }
    }
    Ok(())
}

/// Recovers an element representing `m`, if there is one.
///
/// Unital algebras use `m·1`. Algebras with local units compare the actions on
/// the local units of radius `r` and `2r+1`, and report an element only when
/// they agree. Non-unital dense algebras solve `e·b = m·b`, `b·e = b·m` over
/// the window keys.
pub fn multiplier_as_element<A: BasisAlgebra>(
    alg: &A,
    m: &Multiplier<'_, A::Key>,
    window: &[A::Key],
    r: usize,
) -> Option<SparseVec<A::Key>> {
    if let Some(u) = alg.unit_vec() {
        return Some(m.left(&u));
    }
    if let (Some(u1), Some(u2)) = (alg.local_unit_vec(r), alg.local_unit_vec(2 * r + 1)) {
        let l1 = m.left(&u1);
        let r1 = m.right(&u1);
        let stable = l1 == r1 && l1 == m.left(&u2) && r1 == m.right(&u2);
        return stable.then_some(l1);
    }
    let mut span: Span<(bool, A::Key, A::Key)> = Span::new();
    for e in window {
        let ev = SparseVec::basis(e.clone());
        let mut col = SparseVec::new();
        for b in window {
            let bv = SparseVec::basis(b.clone());
            for (k, c) in alg.mul(&ev, &bv).into_terms() {
                col.add_term((false, b.clone(), k), c);
            }
            for (k, c) in alg.mul(&bv, &ev).into_terms() {
                col.add_term((true, b.clone(), k), c);
            }
        }
        span.insert(col);
    }
    let mut target = SparseVec::new();
    for b in window {
        let bv = SparseVec::basis(b.clone());
        for (k, c) in m.left(&bv).into_terms() {
            target.add_term((false, b.clone(), k), c);
        }
        for (k, c) in m.right(&bv).into_terms() {
            target.add_term((true, b.clone(), k), c);
        }
    }
    let coeffs = span.express(&target)?;
    Some(coeffs.map_keys(|g| window[*g].clone()))
}

/// Checks `(e_i e_j) e_k = e_i (e_j e_k)` on the window; returns a failing triple.
pub fn check_associative(alg: &Algebra, window: &[usize]) -> Result<(), (usize, usize, usize)> {
    for &i in window {
        for &j in window {
            let ij = alg.mul_basis(i, j);
            for &k in window {
                let lhs = alg.multiply(&ij, &SparseVec::basis(k));
                let rhs = alg.multiply(&SparseVec::basis(i), &alg.mul_basis(j, k));
                if lhs != rhs {
                    return Err((i, j, k));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct NondegeneracyReport {
    /// Nonzero `a` with `aA = 0`, if any.
    pub left_witness: Option<Element>,
    /// Nonzero `a` with `Aa = 0`, if any.
    pub right_witness: Option<Element>,
}

impl NondegeneracyReport {
    pub fn passed(&self) -> bool {
        self.left_witness.is_none() && self.right_witness.is_none()
    }
}

/// Non-degeneracy of the product restricted to `window` (the whole basis for dense algebras).
pub fn check_nondegenerate(alg: &Algebra, window: &[usize]) -> NondegeneracyReport {
    let witness = |left: bool| {
        let mut span: Span<(usize, usize)> = Span::new();
        for &i in window {
            let mut col = SparseVec::new();
            for &j in window {
                let p = if left {
                    alg.mul_basis(i, j)
                } else {
                    alg.mul_basis(j, i)
                };
                for (k, c) in p.into_terms() {
                    col.add_term((j, k), c);
                }
            }
            span.insert(col);
        }
        span.relations()
            .first()
            .map(|rel| rel.map_keys(|g| window[*g]))
    };
    NondegeneracyReport {
        left_witness: witness(true),
        right_witness: witness(false),
    }
}

/// `A = A²`: the products of basis pairs span the algebra.
pub fn check_idempotent_algebra(alg: &Algebra) -> Result<bool, HopfError> {
    let n = alg.dim().ok_or(HopfError::NotDense("idempotency check"))?;
    let span = Span::from_vectors(
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| alg.mul_basis(i, j)),
    );
    Ok(span.dim() == n)
}

/// `A·A` spanned inside the window for windowed algebras: every window basis
/// element is a combination of products of closure elements.
pub fn window_idempotent(alg: &Algebra, window: &[usize], closure: &[usize]) -> bool {
    let span = Span::from_vectors(
        closure
            .iter()
            .flat_map(|i| closure.iter().map(move |j| alg.mul_basis(*i, *j))),
    );
    window.iter().all(|w| span.contains(&SparseVec::basis(*w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hopfforge_linalg::int;

    fn group_z2() -> Algebra {
        let e = |i: usize| SparseVec::basis(i);
        Algebra::Dense(
            DenseAlgebra::new(
                vec!["e".into(), "g".into()],
                vec![vec![e(0), e(1)], vec![e(1), e(0)]],
            )
            .unwrap(),
        )
    }

    fn functions_z2() -> Algebra {
        let e = |i: usize| SparseVec::basis(i);
        let z = Element::new;
        Algebra::Dense(
            DenseAlgebra::new(
                vec!["e".into(), "g".into()],
                vec![vec![e(0), z()], vec![z(), e(1)]],
            )
            .unwrap(),
        )
    }

    fn zero_product() -> Algebra {
        Algebra::Dense(DenseAlgebra::new(vec!["x".into()], vec![vec![Element::new()]]).unwrap())
    }

    #[test]
    fn group_product() {
        let a = group_z2();
        assert_eq!(
            a.multiply(&SparseVec::basis(1), &SparseVec::basis(1)),
            SparseVec::basis(0)
        );
        assert!(a.multiply(&SparseVec::basis(1), &Element::new()).is_zero());
        assert_eq!(a.unit(), Some(&SparseVec::basis(0)));
    }

    #[test]
    fn pointwise_product_of_disjoint_indicators() {
        let a = functions_z2();
        assert!(a
            .multiply(&SparseVec::basis(0), &SparseVec::basis(1))
            .is_zero());
        let one: Element = SparseVec::from_terms([(0, int(1)), (1, int(1))]);
        assert_eq!(a.unit(), Some(&one));
    }

    #[test]
    fn zero_product_is_degenerate_and_not_idempotent() {
        let a = zero_product();
        let rep = check_nondegenerate(&a, &a.window(0));
        assert!(!rep.passed());
        assert_eq!(rep.left_witness, Some(SparseVec::basis(0)));
        assert!(!check_idempotent_algebra(&a).unwrap());
        assert!(a.unit().is_none());
    }

    #[test]
    fn element_multipliers() {
        let a = group_z2();
        let w = a.window(0);
        let g = multiplier_from_element(&a, SparseVec::basis(1));
        assert_eq!(g.left(&SparseVec::basis(0)), SparseVec::basis(1));
        assert!(multiplier_check(&a, &g, &w).is_ok());
        assert_eq!(
            multiplier_as_element(&a, &g, &w, 0),
            Some(SparseVec::basis(1))
        );
        let unit = multiplier_from_element(&a, a.unit().unwrap().clone());
        assert_eq!(
            multiplier_as_element(&a, &unit, &w, 0),
            Some(SparseVec::basis(0))
        );
        let zero = multiplier_from_element(&a, Element::new());
        assert!(zero.left(&SparseVec::basis(1)).is_zero());
    }

    #[test]
    fn incompatible_actions_fail_the_multiplier_relation() {
        let a = group_z2();
        let m = Multiplier::new(|x: &Element| x.scale(&int(2)), |x: &Element| x.clone());
        assert!(multiplier_check(&a, &m, &a.window(0)).is_err());
    }

    #[test]
    fn zigzag_round_trip() {
        for z in -20..=20 {
            assert_eq!(zigzag_label(zigzag_index(z)), z);
        }
        let alg = Algebra::Supported(SupportedAlgebra {
            rule: SupportedRule::PointwiseZ,
        });
        let w: Vec<i64> = alg.window(2).into_iter().map(zigzag_label).collect();
        assert_eq!(w, vec![0, -1, 1, -2, 2]);
    }

    #[test]
    fn opposite_transposes() {
        let e = |i: usize| SparseVec::basis(i);
        let z = Element::new;
        // 2x2 upper triangular matrices: e11, e12, e22.
        let prods = vec![
            vec![e(0), e(1), z()],
            vec![z(), z(), e(1)],
            vec![z(), z(), e(2)],
        ];
        let a = DenseAlgebra::new(vec!["e11".into(), "e12".into(), "e22".into()], prods).unwrap();
        let op = a.opposite();
        assert_eq!(op.product(1, 0), a.product(0, 1));
        assert_eq!(op.unit(), a.unit());
    }
}
