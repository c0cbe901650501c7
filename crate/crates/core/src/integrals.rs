//! Linear functionals, faithfulness, integrals and scalar invariance.

use std::collections::BTreeMap;

use hopfforge_linalg::{Scalar, Span, SparseVec};
use num_traits::Zero;

use crate::algebra::{mul2, slice_first, slice_second, tensor, Algebra, Element, Tensor2};
use crate::coproduct::{Coproduct, Side, Which};
use crate::instance::Scope;
use crate::HopfError;

/// A linear functional given by its values on basis elements.
///
/// Keys absent from `values` take the value `default`, which lets a functional
/// such as the sum over all points of ℤ be written down finitely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    pub name: String,
    pub default: Scalar,
    pub values: BTreeMap<usize, Scalar>,
}

impl Functional {
    pub fn from_values<I: IntoIterator<Item = (usize, Scalar)>>(
        name: impl Into<String>,
        values: I,
    ) -> Self {
        Functional {
            name: name.into(),
            default: Scalar::zero(),
            values: values.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn constant(name: impl Into<String>, value: Scalar) -> Self {
        Functional {
            name: name.into(),
            default: value,
            values: BTreeMap::new(),
        }
    }

    pub fn value(&self, k: usize) -> Scalar {
        self.values
            .get(&k)
            .cloned()
            .unwrap_or_else(|| self.default.clone())
    }

    pub fn apply(&self, x: &Element) -> Scalar {
        x.pair(|k| self.value(*k))
    }

    pub fn scaled(&self, c: &Scalar) -> Functional {
        Functional {
            name: self.name.clone(),
            default: &self.default * c,
            values: self
                .values
                .iter()
                .map(|(k, v)| (*k, v * c))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn is_zero_on(&self, keys: &[usize]) -> bool {
        keys.iter().all(|k| self.value(*k).is_zero())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FaithfulnessReport {
    pub left: bool,
    pub right: bool,
    /// Nonzero `a` with `ω(a·A) = 0`.
    pub left_witness: Option<Element>,
    /// Nonzero `a` with `ω(A·a) = 0`.
    pub right_witness: Option<Element>,
    pub windowed: bool,
}

impl FaithfulnessReport {
    pub fn both(&self) -> bool {
        self.left && self.right
    }
}

fn pairing_kernel(
    alg: &Algebra,
    set: &[&Functional],
    side: Side,
    scope: &Scope,
) -> Option<Element> {
    let mut span: Span<(usize, usize)> = Span::new();
    for &i in &scope.inputs {
        let mut col = SparseVec::new();
        for (w, omega) in set.iter().enumerate() {
            for &j in &scope.closure {
                let p = match side {
                    Side::Left => alg.mul_basis(i, j),
                    Side::Right => alg.mul_basis(j, i),
                };
                col.add_term((w, j), omega.apply(&p));
            }
        }
        span.insert(col);
    }
    span.relations()
        .first()
        .map(|r| r.map_keys(|g| scope.inputs[*g]))
}

/// Left faithful: `ω(a e_j) = 0` for all `j` forces `a = 0`; right faithful: `ω(e_j a) = 0` does.
pub fn check_faithful(alg: &Algebra, omega: &Functional, scope: &Scope) -> FaithfulnessReport {
    let left_witness = pairing_kernel(alg, &[omega], Side::Left, scope);
    let right_witness = pairing_kernel(alg, &[omega], Side::Right, scope);
    FaithfulnessReport {
        left: left_witness.is_none(),
        right: right_witness.is_none(),
        left_witness,
        right_witness,
        windowed: scope.windowed,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SetFaithfulness {
    pub holds: bool,
    pub witness: Option<Element>,
    pub reason: Option<String>,
}

/// Joint faithfulness of a set of functionals on one side.
pub fn check_faithful_set(
    alg: &Algebra,
    set: &[&Functional],
    side: Side,
    scope: &Scope,
) -> SetFaithfulness {
    if set.is_empty() {
        return SetFaithfulness {
            holds: false,
            witness: None,
            reason: Some("empty set of functionals".into()),
        };
    }
    let witness = pairing_kernel(alg, set, side, scope);
    SetFaithfulness {
        holds: witness.is_none(),
        witness,
        reason: None,
    }
}

/// A failing triple of an integral identity: `(a, c, c')`.
pub type IntegralWitness = (usize, usize, usize);

fn left_integral_map(cop: &Coproduct, scope: &Scope) -> Result<Which, HopfError> {
    [Which::T2, Which::T4]
        .into_iter()
        .find(|w| cop.check_regular(*w, scope).holds())
        .ok_or(HopfError::NotRegular {
            map: Which::T2,
            witness: Some("neither T2 nor T4 is regular".into()),
        })
}

fn right_integral_map(cop: &Coproduct, scope: &Scope) -> Result<Which, HopfError> {
    [Which::T1, Which::T3]
        .into_iter()
        .find(|w| cop.check_regular(*w, scope).holds())
        .ok_or(HopfError::NotRegular {
            map: Which::T1,
            witness: Some("neither T1 nor T3 is regular".into()),
        })
}

/// `(c⊗1)Δ(a)(c'⊗1)` through whichever of T2, T4 is regular.
fn sandwich_left(
    cop: &Coproduct,
    via: Which,
    a: &Element,
    c: &Element,
    c2: &Element,
) -> Result<Tensor2, HopfError> {
    let alg = cop.algebra();
    match via {
        Which::T2 => {
            let t = cop.t_apply(Which::T2, &tensor(c, a))?;
            Ok(right_mul_first(alg, &t, c2))
        }
        _ => {
            let t = cop.t_apply(Which::T4, &tensor(c2, a))?;
            Ok(left_mul_first(alg, c, &t))
        }
    }
}

/// `(1⊗b')Δ(a)(1⊗b)` through whichever of T1, T3 is regular.
fn sandwich_right(
    cop: &Coproduct,
    via: Which,
    a: &Element,
    b2: &Element,
    b: &Element,
) -> Result<Tensor2, HopfError> {
    let alg = cop.algebra();
    match via {
        Which::T3 => {
            let t = cop.t_apply(Which::T3, &tensor(a, b2))?;
            Ok(right_mul_second(alg, &t, b))
        }
        _ => {
            let t = cop.t_apply(Which::T1, &tensor(a, b))?;
            Ok(left_mul_second(alg, b2, &t))
        }
    }
}

pub fn right_mul_first(alg: &Algebra, t: &Tensor2, c: &Element) -> Tensor2 {
    t.linear_map(|(x, y)| {
        tensor(
            &alg.multiply(&SparseVec::basis(*x), c),
            &SparseVec::basis(*y),
        )
    })
}

pub fn left_mul_first(alg: &Algebra, c: &Element, t: &Tensor2) -> Tensor2 {
    t.linear_map(|(x, y)| {
        tensor(
            &alg.multiply(c, &SparseVec::basis(*x)),
            &SparseVec::basis(*y),
        )
    })
}

pub fn right_mul_second(alg: &Algebra, t: &Tensor2, b: &Element) -> Tensor2 {
    t.linear_map(|(x, y)| {
        tensor(
            &SparseVec::basis(*x),
            &alg.multiply(&SparseVec::basis(*y), b),
        )
    })
}

pub fn left_mul_second(alg: &Algebra, b: &Element, t: &Tensor2) -> Tensor2 {
    t.linear_map(|(x, y)| {
        tensor(
            &SparseVec::basis(*x),
            &alg.multiply(b, &SparseVec::basis(*y)),
        )
    })
}

/// Test elements for the integral identities: the unit alone when there is one,
/// otherwise every window basis element.
fn probes(alg: &Algebra, scope: &Scope) -> Vec<(String, Element)> {
    match alg.unit() {
        Some(u) => vec![("1".to_string(), u.clone())],
        None => scope
            .inputs
            .iter()
            .map(|i| (alg.label(*i), SparseVec::basis(*i)))
            .collect(),
    }
}

/// Outcome of an integral check: `None` when the identity holds, else the failing labels `(a, c, c')`.
pub type IntegralOutcome = Option<(String, String, String)>;

/// `(ι⊗φ)((c⊗1)Δ(a)(c'⊗1)) = φ(a)cc'` for window `a, c, c'`.
pub fn check_left_integral(
    cop: &Coproduct,
    phi: &Functional,
    scope: &Scope,
) -> Result<IntegralOutcome, HopfError> {
    let via = left_integral_map(cop, scope)?;
    let alg = cop.algebra();
    let probes = probes(alg, scope);
    for &a in &scope.inputs {
        let av = SparseVec::basis(a);
        let pa = phi.value(a);
        for (cl, c) in &probes {
            for (cl2, c2) in &probes {
                let x = sandwich_left(cop, via, &av, c, c2)?;
                let lhs = slice_second(&x, |k| phi.value(k));
                let rhs = alg.multiply(c, c2).scale(&pa);
                if lhs != rhs {
                    return Ok(Some((alg.label(a), cl.clone(), cl2.clone())));
                }
            }
        }
    }
    Ok(None)
}

/// `(ψ⊗ι)((1⊗b')Δ(a)(1⊗b)) = ψ(a)b'b` for window `a, b', b`.
pub fn check_right_integral(
    cop: &Coproduct,
    psi: &Functional,
    scope: &Scope,
) -> Result<IntegralOutcome, HopfError> {
    let via = right_integral_map(cop, scope)?;
    let alg = cop.algebra();
    let probes = probes(alg, scope);
    for &a in &scope.inputs {
        let av = SparseVec::basis(a);
        let pa = psi.value(a);
        for (bl2, b2) in &probes {
            for (bl, b) in &probes {
                let x = sandwich_right(cop, via, &av, b2, b)?;
                let lhs = slice_first(&x, |k| psi.value(k));
                let rhs = alg.multiply(b2, b).scale(&pa);
                if lhs != rhs {
                    return Ok(Some((alg.label(a), bl2.clone(), bl.clone())));
                }
            }
        }
    }
    Ok(None)
}

/// Which integral and faithfulness properties a functional has on a scope.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntegralRoles {
    pub left_integral: bool,
    pub right_integral: bool,
    pub left_faithful: bool,
    pub right_faithful: bool,
}

pub fn integral_roles(cop: &Coproduct, f: &Functional, scope: &Scope) -> IntegralRoles {
    let faithful = check_faithful(cop.algebra(), f, scope);
    IntegralRoles {
        left_integral: matches!(check_left_integral(cop, f, scope), Ok(None)),
        right_integral: matches!(check_right_integral(cop, f, scope), Ok(None)),
        left_faithful: faithful.left,
        right_faithful: faithful.right,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScalarInvariance {
    /// `Δ(A)(A⊗A) ≠ A⊗A`; no verdict is drawn.
    HypothesisUnmet(String),
    /// `(ι⊗φ)(Δ(a)(c⊗1))` is not a scalar multiple of `c` for this basis element `a`.
    NotScalarInvariant { witness: usize },
    /// `λ = φ` on the right leg; `everywhere` when they agree on all of `A`.
    AgreesOnRightLeg {
        everywhere: bool,
        lambda: Functional,
    },
    /// `λ = φ` on the right leg but not at this basis element outside it.
    DiffersOutsideRightLeg { witness: usize, lambda: Functional },
}

/// Determines `λ` with `(ι⊗φ)(Δ(a)(c⊗1)) = λ(a)c` and compares it with `φ` on the right leg.
pub fn scalar_invariance_to_integral(
    cop: &Coproduct,
    phi: &Functional,
) -> Result<ScalarInvariance, HopfError> {
    let alg = cop.algebra();
    let n = alg.dim().ok_or(HopfError::NotDense("scalar invariance"))?;
    let scope = Scope::for_algebra(alg, 0);
    cop.require_regular(Which::T1, &scope)?;
    cop.require_regular(Which::T4, &scope)?;
    let mut span = Span::new();
    for a in 0..n {
        for x in 0..n {
            for y in 0..n {
                span.insert(cop.delta_left(a, x, y));
            }
        }
    }
    if span.dim() != n * n {
        return Ok(ScalarInvariance::HypothesisUnmet(format!(
            "Δ(A)(A⊗A) has dimension {} instead of {}",
            span.dim(),
            n * n
        )));
    }
    let mut lambda = BTreeMap::new();
    for a in 0..n {
        let mut generator = SparseVec::new();
        let mut target = SparseVec::new();
        for c in 0..n {
            let y = slice_second(&cop.t_basis(Which::T4, c, a)?, |k| phi.value(k));
            generator.add_term((c, c), Scalar::from_integer(1.into()));
            for (k, v) in y.into_terms() {
                target.add_term((c, k), v);
            }
        }
        let single = Span::from_vectors([generator]);
        match single.express(&target) {
            None => return Ok(ScalarInvariance::NotScalarInvariant { witness: a }),
            Some(coeff) => {
                lambda.insert(a, coeff.get(&0));
            }
        }
    }
    let lambda = Functional::from_values(format!("lambda({})", phi.name), lambda);
    let right_leg = cop.compute_leg_via(Side::Right, Which::T4, &scope)?;
    for w in right_leg.basis() {
        if lambda.apply(&w) != phi.apply(&w) {
            return Err(HopfError::Inconsistency(format!(
                "scalar invariance: λ differs from {} on the right leg at {}",
                phi.name,
                alg.format_element(&w)
            )));
        }
    }
    for a in 0..n {
        if lambda.value(a) != phi.value(a) {
            return Ok(ScalarInvariance::DiffersOutsideRightLeg { witness: a, lambda });
        }
    }
    Ok(ScalarInvariance::AgreesOnRightLeg {
        everywhere: true,
        lambda,
    })
}

/// `x ↦ (ι⊗φ)(x)` composed with multiplication by `c⊗1` on the right.
pub fn slice_after(alg: &Algebra, x: &Tensor2, c: &Tensor2, phi: &Functional) -> Element {
    slice_second(&mul2(alg, x, c), |k| phi.value(k))
}
