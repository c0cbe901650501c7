//! Coproducts with values in the multiplier algebra of `A⊗A`, the four
//! canonical maps, regularity, coassociativity, legs and counits.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use hopfforge_linalg::{Scalar, Span, SparseMat, SparseVec};
use num_traits::One;

use crate::algebra::{
    first_legs, flip2, mul2, multiplier_as_element, second_legs, slice_first, slice_second, tensor,
    zigzag_index, zigzag_label, Algebra, Element, Multiplier, Tensor2, Tensor3, TensorSquare,
};
use crate::instance::Scope;
use crate::integrals::Functional;
use crate::HopfError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Which {
    T1,
    T2,
    T3,
    T4,
}

impl Which {
    pub const ALL: [Which; 4] = [Which::T1, Which::T2, Which::T3, Which::T4];

    pub fn index(self) -> usize {
        match self {
            Which::T1 => 1,
            Which::T2 => 2,
            Which::T3 => 3,
            Which::T4 => 4,
        }
    }

    /// Zero-based position in [`Which::ALL`].
    pub fn slot(self) -> usize {
        self.index() - 1
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.index())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// How `Δ(e_a)` acts on basis tensors.
#[derive(Clone, Debug, PartialEq)]
pub enum CoproductRule {
    /// `Δ(e_a)` is the given element of `A⊗A`.
    Images(Vec<Tensor2>),
    /// Explicit multiplier tables: `left[a][(x, y)] = Δ(e_a)(e_x⊗e_y)` and
    /// `right[a][(x, y)] = (e_x⊗e_y)Δ(e_a)`. Missing entries are zero.
    Actions {
        left: Vec<BTreeMap<(usize, usize), Tensor2>>,
        right: Vec<BTreeMap<(usize, usize), Tensor2>>,
    },
    /// Dual of addition on ℤ: `Δ(δ_a)(δ_s⊗δ_t) = [s+t=a] δ_s⊗δ_t`.
    SumZ,
    /// `Δ(f) = 1⊗f` on pointwise functions on ℤ.
    SecondLegZ,
}

/// `Δ(e_i) = e_i⊗e_i` for every basis element.
pub fn grouplike_images(n: usize) -> Vec<Tensor2> {
    (0..n).map(|i| SparseVec::basis((i, i))).collect()
}

/// `Δ(δ_k) = Σ_{gh=k} δ_g⊗δ_h` for a partial composition on basis labels.
pub fn composition_images<F: Fn(usize, usize) -> Option<usize>>(
    n: usize,
    compose: F,
) -> Vec<Tensor2> {
    let mut images = vec![Tensor2::new(); n];
    for g in 0..n {
        for h in 0..n {
            if let Some(k) = compose(g, h) {
                images[k].add_term((g, h), Scalar::one());
            }
        }
    }
    images
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regularity {
    Yes,
    WindowYes,
    No { witness: (usize, usize) },
}

impl Regularity {
    pub fn holds(&self) -> bool {
        !matches!(self, Regularity::No { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CoassocVariant {
    T1T2,
    T3T4,
    T1T4,
    T2T3,
}

impl CoassocVariant {
    pub const ALL: [CoassocVariant; 4] = [
        CoassocVariant::T1T2,
        CoassocVariant::T3T4,
        CoassocVariant::T1T4,
        CoassocVariant::T2T3,
    ];

    pub fn maps(self) -> (Which, Which) {
        match self {
            CoassocVariant::T1T2 => (Which::T1, Which::T2),
            CoassocVariant::T3T4 => (Which::T3, Which::T4),
            CoassocVariant::T1T4 => (Which::T1, Which::T4),
            CoassocVariant::T2T3 => (Which::T2, Which::T3),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CoassocVariant::T1T2 => "T1T2",
            CoassocVariant::T3T4 => "T3T4",
            CoassocVariant::T1T4 => "T1T4",
            CoassocVariant::T2T3 => "T2T3",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LegSubspace {
    pub side: Side,
    pub via: Which,
    pub span: Span<usize>,
    pub windowed: bool,
}

impl LegSubspace {
    pub fn basis(&self) -> Vec<Element> {
        self.span.basis()
    }
}

type ImageCache = HashMap<(Which, usize, usize), Option<Tensor2>>;

/// A coproduct on an algebra, with cached canonical-map images on basis pairs.
pub struct Coproduct {
    algebra: Arc<Algebra>,
    rule: CoproductRule,
    flipped: bool,
    cache: Mutex<ImageCache>,
}

impl Clone for Coproduct {
    fn clone(&self) -> Self {
        Self::with_flip(self.algebra.clone(), self.rule.clone(), self.flipped)
    }
}

impl fmt::Debug for Coproduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coproduct")
            .field("rule", &self.rule)
            .field("flipped", &self.flipped)
            .finish()
    }
}

impl Coproduct {
    pub fn new(algebra: Arc<Algebra>, rule: CoproductRule) -> Result<Self, HopfError> {
        match (&*algebra, &rule) {
            (Algebra::Dense(d), CoproductRule::Images(imgs)) if imgs.len() != d.dim() => {
                return Err(HopfError::Input(format!(
                    "expected {} coproduct images, found {}",
                    d.dim(),
                    imgs.len()
                )))
            }
            (Algebra::Dense(d), CoproductRule::Actions { left, right })
                if left.len() != d.dim() || right.len() != d.dim() =>
            {
                return Err(HopfError::Input(
                    "explicit coproduct tables must cover every basis element".into(),
                ))
            }
            (Algebra::Dense(_), CoproductRule::SumZ | CoproductRule::SecondLegZ) => {
                return Err(HopfError::Input(
                    "built-in ℤ coproduct rules need a supported algebra".into(),
                ))
            }
            (Algebra::Supported(_), CoproductRule::Images(_) | CoproductRule::Actions { .. }) => {
                return Err(HopfError::Input(
                    "supported algebras take a built-in coproduct rule".into(),
                ))
            }
            _ => {}
        }
        Ok(Self::with_flip(algebra, rule, false))
    }

    fn with_flip(algebra: Arc<Algebra>, rule: CoproductRule, flipped: bool) -> Self {
        Self {
            algebra,
            rule,
            flipped,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> Arc<Algebra> {
        self.algebra.clone()
    }

    pub fn rule(&self) -> &CoproductRule {
        &self.rule
    }

    pub fn is_flipped(&self) -> bool {
        self.flipped
    }

    /// `Δ^cop = ζ∘Δ`.
    pub fn cop(&self) -> Coproduct {
        Self::with_flip(self.algebra.clone(), self.rule.clone(), !self.flipped)
    }

    /// The same coproduct viewed on the opposite algebra.
    pub fn opposite(&self) -> Coproduct {
        let rule = match &self.rule {
            CoproductRule::Actions { left, right } => CoproductRule::Actions {
                left: right.clone(),
                right: left.clone(),
            },
            other => other.clone(),
        };
        Self::with_flip(Arc::new(self.algebra.opposite()), rule, self.flipped)
    }

    fn raw_action(&self, a: usize, x: usize, y: usize, left: bool) -> Tensor2 {
        match &self.rule {
            CoproductRule::Images(imgs) => {
                let xy = SparseVec::basis((x, y));
                if left {
                    mul2(&self.algebra, &imgs[a], &xy)
                } else {
                    mul2(&self.algebra, &xy, &imgs[a])
                }
            }
            CoproductRule::Actions { left: l, right: r } => {
                let table = if left { &l[a] } else { &r[a] };
                table.get(&(x, y)).cloned().unwrap_or_default()
            }
            CoproductRule::SumZ => {
                if zigzag_label(x) + zigzag_label(y) == zigzag_label(a) {
                    SparseVec::basis((x, y))
                } else {
                    Tensor2::new()
                }
            }
            CoproductRule::SecondLegZ => {
                if y == a {
                    SparseVec::basis((x, y))
                } else {
                    Tensor2::new()
                }
            }
        }
    }

    /// `Δ(e_a)(e_x⊗e_y)`
    pub fn delta_left(&self, a: usize, x: usize, y: usize) -> Tensor2 {
        if self.flipped {
            flip2(&self.raw_action(a, y, x, true))
        } else {
            self.raw_action(a, x, y, true)
        }
    }

    /// `(e_x⊗e_y)Δ(e_a)`
    pub fn delta_right(&self, a: usize, x: usize, y: usize) -> Tensor2 {
        if self.flipped {
            flip2(&self.raw_action(a, y, x, false))
        } else {
            self.raw_action(a, x, y, false)
        }
    }

    pub fn delta_left_on(&self, a: usize, t: &Tensor2) -> Tensor2 {
        t.linear_map(|(x, y)| self.delta_left(a, *x, *y))
    }

    pub fn delta_right_on(&self, a: usize, t: &Tensor2) -> Tensor2 {
        t.linear_map(|(x, y)| self.delta_right(a, *x, *y))
    }

    /// `Δ(e_a)` as a multiplier of `A⊗A`.
    pub fn delta_multiplier(&self, a: usize) -> Multiplier<'_, (usize, usize)> {
        Multiplier::new(
            move |t| self.delta_left_on(a, t),
            move |t| self.delta_right_on(a, t),
        )
    }

    /// `Δ(e_a)` as an element of `A⊗A`, when it is one.
    pub fn delta_element(&self, a: usize, scope: &Scope) -> Option<Tensor2> {
        let sq = TensorSquare(&self.algebra);
        let window: Vec<(usize, usize)> = scope
            .inputs
            .iter()
            .flat_map(|x| scope.inputs.iter().map(move |y| (*x, *y)))
            .collect();
        let r = 2 * self.algebra.magnitude(a) + scope.k + 1;
        multiplier_as_element(&sq, &self.delta_multiplier(a), &window, r)
    }

    /// The fixed factor and the "one" leg of each canonical map on `e_i⊗e_j`:
    /// returns `(coproduct argument, left action?, other factor, one on first leg?)`.
    fn shape(which: Which, i: usize, j: usize) -> (usize, bool, usize, bool) {
        match which {
            Which::T1 => (i, true, j, true),
            Which::T2 => (j, false, i, false),
            Which::T3 => (i, false, j, true),
            Which::T4 => (j, true, i, false),
        }
    }

    fn act_with_unit(
        &self,
        a: usize,
        left: bool,
        other: usize,
        one_first: bool,
        unit: &Element,
    ) -> Tensor2 {
        let mut out = Tensor2::new();
        for (u, c) in unit.iter() {
            let (x, y) = if one_first { (*u, other) } else { (other, *u) };
            let v = if left {
                self.delta_left(a, x, y)
            } else {
                self.delta_right(a, x, y)
            };
            out.axpy(c, &v);
        }
        out
    }

    fn act_with_local_unit(
        &self,
        a: usize,
        left: bool,
        other: usize,
        one_first: bool,
        r: usize,
    ) -> Tensor2 {
        if let CoproductRule::SumZ = self.rule {
            let free = zigzag_label(a) - zigzag_label(other);
            if free.unsigned_abs() as usize > r {
                return Tensor2::new();
            }
            let u = zigzag_index(free);
            let (x, y) = if one_first { (u, other) } else { (other, u) };
            return SparseVec::basis((x, y));
        }
        let unit = self
            .algebra
            .local_unit(r)
            .expect("supported algebra has local units");
        self.act_with_unit(a, left, other, one_first, &unit)
    }

    fn compute_image(&self, which: Which, i: usize, j: usize) -> Option<Tensor2> {
        let (a, left, other, one_first) = Self::shape(which, i, j);
        if let Some(unit) = self.algebra.unit() {
            return Some(self.act_with_unit(a, left, other, one_first, unit));
        }
        match &*self.algebra {
            Algebra::Supported(_) => {
                let r = self.algebra.magnitude(i) + self.algebra.magnitude(j) + 1;
                let small = self.act_with_local_unit(a, left, other, one_first, r);
                let large = self.act_with_local_unit(a, left, other, one_first, 2 * r + 1);
                (small == large).then_some(small)
            }
            Algebra::Dense(d) => {
                let n = d.dim();
                let sq = TensorSquare(&self.algebra);
                let window: Vec<(usize, usize)> =
                    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
                let m = self.t_multiplier(which, i, j);
                multiplier_as_element(&sq, &m, &window, 0)
            }
        }
    }

    /// The canonical map image of `e_i⊗e_j` as a multiplier of `A⊗A`.
    pub fn t_multiplier(&self, which: Which, i: usize, j: usize) -> Multiplier<'_, (usize, usize)> {
        let alg = &*self.algebra;
        let ei: Element = SparseVec::basis(i);
        let ej: Element = SparseVec::basis(j);
        // Multiplying by 1⊗b or c⊗1 on one side of a tensor.
        let on_second = move |t: &Tensor2, b: &Element, before: bool| -> Tensor2 {
            t.linear_map(|(x, y)| {
                let yv = SparseVec::basis(*y);
                let p = if before {
                    alg.multiply(b, &yv)
                } else {
                    alg.multiply(&yv, b)
                };
                tensor(&SparseVec::basis(*x), &p)
            })
        };
        let on_first = move |t: &Tensor2, c: &Element, before: bool| -> Tensor2 {
            t.linear_map(|(x, y)| {
                let xv = SparseVec::basis(*x);
                let p = if before {
                    alg.multiply(c, &xv)
                } else {
                    alg.multiply(&xv, c)
                };
                tensor(&p, &SparseVec::basis(*y))
            })
        };
        match which {
            Which::T1 => {
                let (b1, b2) = (ej.clone(), ej);
                Multiplier::new(
                    move |t| self.delta_left_on(i, &on_second(t, &b1, true)),
                    move |t| on_second(&self.delta_right_on(i, t), &b2, false),
                )
            }
            Which::T2 => {
                let (c1, c2) = (ei.clone(), ei);
                Multiplier::new(
                    move |t| on_first(&self.delta_left_on(j, t), &c1, true),
                    move |t| self.delta_right_on(j, &on_first(t, &c2, false)),
                )
            }
            Which::T3 => {
                let (b1, b2) = (ej.clone(), ej);
                Multiplier::new(
                    move |t| on_second(&self.delta_left_on(i, t), &b1, true),
                    move |t| self.delta_right_on(i, &on_second(t, &b2, false)),
                )
            }
            Which::T4 => {
                let (c1, c2) = (ei.clone(), ei);
                Multiplier::new(
                    move |t| self.delta_left_on(j, &on_first(t, &c1, true)),
                    move |t| on_first(&self.delta_right_on(j, t), &c2, false),
                )
            }
        }
    }

    /// Image of `e_i⊗e_j` in `A⊗A`, or `None` when it is not an element.
    pub fn t_image(&self, which: Which, i: usize, j: usize) -> Option<Tensor2> {
        if let Some(v) = self.cache.lock().expect("image cache").get(&(which, i, j)) {
            return v.clone();
        }
        let v = self.compute_image(which, i, j);
        self.cache
            .lock()
            .expect("image cache")
            .insert((which, i, j), v.clone());
        v
    }

    pub fn t_basis(&self, which: Which, i: usize, j: usize) -> Result<Tensor2, HopfError> {
        self.t_image(which, i, j)
            .ok_or_else(|| HopfError::NotRegular {
                map: which,
                witness: Some(format!(
                    "{}⊗{}",
                    self.algebra.label(i),
                    self.algebra.label(j)
                )),
            })
    }

    /// Linear extension of a canonical map to `A⊗A`.
    pub fn t_apply(&self, which: Which, x: &Tensor2) -> Result<Tensor2, HopfError> {
        let mut out = Tensor2::new();
        for ((i, j), c) in x.iter() {
            out.axpy(c, &self.t_basis(which, *i, *j)?);
        }
        Ok(out)
    }

    pub fn check_regular(&self, which: Which, scope: &Scope) -> Regularity {
        for &i in &scope.inputs {
            for &j in &scope.inputs {
                if self.t_image(which, i, j).is_none() {
                    return Regularity::No { witness: (i, j) };
                }
            }
        }
        if scope.windowed {
            Regularity::WindowYes
        } else {
            Regularity::Yes
        }
    }

    pub fn require_regular(&self, which: Which, scope: &Scope) -> Result<(), HopfError> {
        match self.check_regular(which, scope) {
            Regularity::No { witness: (i, j) } => Err(HopfError::NotRegular {
                map: which,
                witness: Some(format!(
                    "{}⊗{}",
                    self.algebra.label(i),
                    self.algebra.label(j)
                )),
            }),
            _ => Ok(()),
        }
    }

    /// The `n²×n²` matrix of a canonical map; column and row `(x, y)` sit at `x·n + y`.
    pub fn t_matrix(&self, which: Which) -> Result<SparseMat, HopfError> {
        let n = self
            .algebra
            .dim()
            .ok_or(HopfError::NotDense("canonical map matrix"))?;
        let mut cols = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                cols.push(self.t_basis(which, i, j)?.map_keys(|(x, y)| x * n + y));
            }
        }
        Ok(SparseMat::from_columns(n * n, cols)?)
    }

    /// `Δ(e_i e_j)` and `Δ(e_i)Δ(e_j)` agree on window tensors, from both sides.
    pub fn check_homomorphism(&self, scope: &Scope) -> Result<(), (usize, usize)> {
        let alg = &*self.algebra;
        for &i in &scope.inputs {
            for &j in &scope.inputs {
                let ij = alg.mul_basis(i, j);
                for &x in &scope.inputs {
                    for &y in &scope.inputs {
                        let xy = SparseVec::basis((x, y));
                        let lhs = ij.linear_map(|k| self.delta_left(*k, x, y));
                        let rhs = self.delta_left_on(i, &self.delta_left(j, x, y));
                        if lhs != rhs {
                            return Err((i, j));
                        }
                        let lhs = ij.linear_map(|k| self.delta_right(*k, x, y));
                        let rhs = self.delta_right_on(j, &self.delta_right_on(i, &xy));
                        if lhs != rhs {
                            return Err((i, j));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Sums `Σ F(p⊗c)⊗q` over the terms `p⊗q` of `x`, with the first map applied on legs one and two.
    fn lift_first(
        &self,
        map: Which,
        c: usize,
        x: &Tensor2,
        c_first: bool,
    ) -> Result<Tensor3, HopfError> {
        let mut out = Tensor3::new();
        for ((p, q), coeff) in x.iter() {
            let img = if c_first {
                self.t_basis(map, c, *p)?
            } else {
                self.t_basis(map, *p, c)?
            };
            for ((u, v), d) in img.iter() {
                out.add_term((*u, *v, *q), coeff * d);
            }
        }
        Ok(out)
    }

    /// Sums `r⊗G(s⊗b)` over the terms `r⊗s` of `x`, with the second map applied on legs two and three.
    fn lift_second(&self, map: Which, b: usize, x: &Tensor2) -> Result<Tensor3, HopfError> {
        let mut out = Tensor3::new();
        for ((r, s), coeff) in x.iter() {
            let img = self.t_basis(map, *s, b)?;
            for ((u, v), d) in img.iter() {
                out.add_term((*r, *u, *v), coeff * d);
            }
        }
        Ok(out)
    }

    /// Both sides of a coassociativity identity on the basis triple `(a, b, c)`.
    pub fn coassoc_sides(
        &self,
        variant: CoassocVariant,
        a: usize,
        b: usize,
        c: usize,
    ) -> Result<(Tensor3, Tensor3), HopfError> {
        // (outer map producing p⊗q from a⊗b, map applied to c⊗p, map producing r⊗s from c⊗a, map applied to s⊗b)
        let (inner, first, outer, second) = match variant {
            CoassocVariant::T1T2 => (Which::T1, Which::T2, Which::T2, Which::T1),
            CoassocVariant::T3T4 => (Which::T3, Which::T4, Which::T4, Which::T3),
            CoassocVariant::T1T4 => (Which::T1, Which::T4, Which::T4, Which::T1),
            CoassocVariant::T2T3 => (Which::T3, Which::T2, Which::T2, Which::T3),
        };
        let pq = self.t_basis(inner, a, b)?;
        let lhs = self.lift_first(first, c, &pq, true)?;
        let rs = self.t_basis(outer, c, a)?;
        let rhs = self.lift_second(second, b, &rs)?;
        Ok((lhs, rhs))
    }

    /// Checks a coassociativity variant on all window triples; `Ok(Some(..))` is a failing triple.
    pub fn check_coassoc(
        &self,
        variant: CoassocVariant,
        scope: &Scope,
    ) -> Result<Option<(usize, usize, usize)>, HopfError> {
        let (m1, m2) = variant.maps();
        self.require_regular(m1, scope)?;
        self.require_regular(m2, scope)?;
        for &a in &scope.inputs {
            for &b in &scope.inputs {
                for &c in &scope.inputs {
                    let (lhs, rhs) = self.coassoc_sides(variant, a, b, c)?;
                    if lhs != rhs {
                        return Ok(Some((a, b, c)));
                    }
                }
            }
        }
        Ok(None)
    }

    fn leg_map(&self, side: Side, scope: &Scope) -> Result<Which, HopfError> {
        let candidates = match side {
            Side::Left => [Which::T1, Which::T3],
            Side::Right => [Which::T2, Which::T4],
        };
        candidates
            .into_iter()
            .find(|w| self.check_regular(*w, scope).holds())
            .ok_or(HopfError::NotRegular {
                map: candidates[0],
                witness: Some(format!("no regular map for the {side} leg")),
            })
    }

    /// The left leg (first-leg components of T1 or T3 images) or right leg (second-leg components of T2 or T4 images).
    pub fn compute_leg(&self, side: Side, scope: &Scope) -> Result<LegSubspace, HopfError> {
        let via = self.leg_map(side, scope)?;
        self.compute_leg_via(side, via, scope)
    }

    pub fn compute_leg_via(
        &self,
        side: Side,
        via: Which,
        scope: &Scope,
    ) -> Result<LegSubspace, HopfError> {
        let mut span = Span::new();
        for &i in &scope.inputs {
            for &j in &scope.inputs {
                let img = self.t_basis(via, i, j)?;
                let parts = match side {
                    Side::Left => first_legs(&img),
                    Side::Right => second_legs(&img),
                };
                for p in parts {
                    span.insert(p);
                }
            }
        }
        Ok(LegSubspace {
            side,
            via,
            span,
            windowed: scope.windowed,
        })
    }

    /// `span{(ι⊗ω)(T1(p⊗q))}` for the left side, `span{(ω⊗ι)(T2(p⊗q))}` for the right.
    pub fn leg_via_functional(
        &self,
        side: Side,
        omega: &Functional,
        scope: &Scope,
    ) -> Result<LegSubspace, HopfError> {
        let via = self.leg_map(side, scope)?;
        let mut span = Span::new();
        for &i in &scope.inputs {
            for &j in &scope.inputs {
                let img = self.t_basis(via, i, j)?;
                let v = match side {
                    Side::Left => slice_second(&img, |k| omega.value(k)),
                    Side::Right => slice_first(&img, |k| omega.value(k)),
                };
                span.insert(v);
            }
        }
        Ok(LegSubspace {
            side,
            via,
            span,
            windowed: scope.windowed,
        })
    }

    /// Both legs contain every window basis element.
    pub fn check_full(&self, scope: &Scope) -> Result<bool, HopfError> {
        let left = self.compute_leg(Side::Left, scope)?;
        let right = self.compute_leg(Side::Right, scope)?;
        Ok(leg_covers(&left, &scope.inputs) && leg_covers(&right, &scope.inputs))
    }

    /// `(ε⊗ι)(T1(a⊗b)) = ab` and `(ι⊗ε)(T2(c⊗a)) = ca`; returns the first failing pair.
    pub fn check_counit(
        &self,
        eps: &Functional,
        scope: &Scope,
    ) -> Result<Option<(usize, usize)>, HopfError> {
        self.require_regular(Which::T1, scope)?;
        self.require_regular(Which::T2, scope)?;
        let alg = &*self.algebra;
        for &a in &scope.inputs {
            for &b in &scope.inputs {
                let ab = alg.mul_basis(a, b);
                if slice_first(&self.t_basis(Which::T1, a, b)?, |k| eps.value(k)) != ab {
                    return Ok(Some((a, b)));
                }
                let ba = alg.mul_basis(b, a);
                if slice_second(&self.t_basis(Which::T2, b, a)?, |k| eps.value(k)) != ba {
                    return Ok(Some((a, b)));
                }
            }
        }
        Ok(None)
    }
}

pub fn leg_covers(leg: &LegSubspace, keys: &[usize]) -> bool {
    keys.iter()
        .all(|k| leg.span.contains(&SparseVec::basis(*k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{DenseAlgebra, SupportedAlgebra, SupportedRule};
    use hopfforge_linalg::{flip, int};

    fn group_algebra(table: &[Vec<usize>]) -> Coproduct {
        let n = table.len();
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        let prods = table
            .iter()
            .map(|r| r.iter().map(|k| SparseVec::basis(*k)).collect())
            .collect();
        let alg = Arc::new(Algebra::Dense(DenseAlgebra::new(labels, prods).unwrap()));
        Coproduct::new(alg, CoproductRule::Images(grouplike_images(n))).unwrap()
    }

    fn cyclic(n: usize) -> Vec<Vec<usize>> {
        (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect()
    }

    fn s3() -> Vec<Vec<usize>> {
        // Permutations of {0,1,2} in a fixed order; product is composition p∘q.
        let perms = [
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        (0..6)
            .map(|i| {
                (0..6)
                    .map(|j| {
                        idx([
                            perms[i][perms[j][0]],
                            perms[i][perms[j][1]],
                            perms[i][perms[j][2]],
                        ])
                    })
                    .collect()
            })
            .collect()
    }

    fn zint() -> Coproduct {
        let alg = Arc::new(Algebra::Supported(SupportedAlgebra {
            rule: SupportedRule::PointwiseZ,
        }));
        Coproduct::new(alg, CoproductRule::SumZ).unwrap()
    }

    #[test]
    fn t1_on_group_algebra() {
        let d = group_algebra(&cyclic(2));
        assert_eq!(
            d.t_basis(Which::T1, 1, 0).unwrap(),
            SparseVec::basis((1, 1))
        );
        assert!(d.t_apply(Which::T1, &Tensor2::new()).unwrap().is_zero());
    }

    #[test]
    fn unital_instances_are_regular() {
        let d = group_algebra(&s3());
        let scope = Scope::for_algebra(d.algebra(), 0);
        for w in Which::ALL {
            assert_eq!(d.check_regular(w, &scope), Regularity::Yes);
        }
    }

    #[test]
    fn group_algebra_is_coassociative_in_every_form() {
        let d = group_algebra(&s3());
        let scope = Scope::for_algebra(d.algebra(), 0);
        for v in CoassocVariant::ALL {
            assert_eq!(d.check_coassoc(v, &scope).unwrap(), None);
        }
    }

    #[test]
    fn one_dimensional_coassociative() {
        let d = group_algebra(&cyclic(1));
        let scope = Scope::for_algebra(d.algebra(), 0);
        assert_eq!(d.check_coassoc(CoassocVariant::T1T2, &scope).unwrap(), None);
        assert!(d.check_full(&scope).unwrap());
    }

    #[test]
    fn legs_of_z2_are_full() {
        let d = group_algebra(&cyclic(2));
        let scope = Scope::for_algebra(d.algebra(), 0);
        assert_eq!(d.compute_leg(Side::Left, &scope).unwrap().span.dim(), 2);
        assert!(d.check_full(&scope).unwrap());
    }

    #[test]
    fn flip_conjugation_swaps_t1_and_t4() {
        let d = group_algebra(&s3());
        let cop = d.cop();
        let z = flip(6);
        for (a, b) in [(Which::T1, Which::T4), (Which::T2, Which::T3)] {
            let lhs = cop.t_matrix(a).unwrap();
            let rhs = z.mul(&d.t_matrix(b).unwrap()).unwrap().mul(&z).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn sum_rule_on_integers() {
        let d = zint();
        let scope = Scope::for_algebra(d.algebra(), 3);
        let a = zigzag_index(2);
        let b = zigzag_index(-1);
        assert_eq!(
            d.t_basis(Which::T1, a, b).unwrap(),
            SparseVec::basis((zigzag_index(3), b))
        );
        for w in Which::ALL {
            assert_eq!(d.check_regular(w, &scope), Regularity::WindowYes);
        }
        assert!(d.delta_element(zigzag_index(0), &scope).is_none());
    }

    #[test]
    fn second_leg_rule_is_not_regular() {
        let alg = Arc::new(Algebra::Supported(SupportedAlgebra {
            rule: SupportedRule::PointwiseZ,
        }));
        let d = Coproduct::new(alg, CoproductRule::SecondLegZ).unwrap();
        let scope = Scope::for_algebra(d.algebra(), 2);
        assert!(matches!(
            d.check_regular(Which::T1, &scope),
            Regularity::No { .. }
        ));
        assert!(matches!(
            d.check_regular(Which::T3, &scope),
            Regularity::No { .. }
        ));
        assert_eq!(d.check_regular(Which::T2, &scope), Regularity::WindowYes);
        assert_eq!(d.check_regular(Which::T4, &scope), Regularity::WindowYes);
    }

    #[test]
    fn constant_counit_on_group_algebra() {
        let d = group_algebra(&cyclic(3));
        let scope = Scope::for_algebra(d.algebra(), 0);
        let eps = Functional::from_values("eps", (0..3).map(|i| (i, int(1))));
        assert_eq!(d.check_counit(&eps, &scope).unwrap(), None);
        let zero = Functional::from_values("zero", []);
        assert!(d.check_counit(&zero, &scope).unwrap().is_some());
    }
}
