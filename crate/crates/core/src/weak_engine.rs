//! Separability idempotents, their legs and antiisomorphisms, the F-elements,
//! weak integrals, kernel and range formulas and weak classification.

use std::collections::BTreeMap;

use hopfforge_linalg::{Span, SparseMat, SparseVec};

use crate::algebra::{
    mul2, mul3, slice_first, slice_second, tensor, tensor3, Algebra, Element, Tensor2, Tensor3,
};
use crate::coproduct::{Coproduct, Side, Which};
use crate::instance::{Instance, Scope};
use crate::integrals::{check_faithful, check_faithful_set, Functional};
use crate::ls_engine::{
    automatic_checks, lift_pair, lift_unchecked, structural_checks, structure_ok, LiftElement,
    Route,
};
use crate::report::{Check, Classification, Status, Verdict};
use crate::HopfError;

fn unit_of(alg: &Algebra, what: &'static str) -> Result<Element, HopfError> {
    if !alg.is_dense() {
        return Err(HopfError::NotDense(what));
    }
    alg.unit().cloned().ok_or(HopfError::NotUnital(what))
}

/// `Δ(e_a)` for a unital dense algebra.
pub fn delta_of(cop: &Coproduct, a: usize, unit: &Element) -> Tensor2 {
    cop.delta_left_on(a, &tensor(unit, unit))
}

/// `Σ c x⊗1⊗y` for `E = Σ c x⊗y`.
fn leg13(e: &Tensor2, unit: &Element) -> Tensor3 {
    let mut out = Tensor3::new();
    for ((x, y), c) in e.iter() {
        for (u, d) in unit.iter() {
            out.add_term((*x, *u, *y), c * d);
        }
    }
    out
}

/// `1⊗X` as an element of `A⊗A⊗A`.
fn pad_left(unit: &Element, x: &Tensor2) -> Tensor3 {
    let mut out = Tensor3::new();
    for (u, d) in unit.iter() {
        for ((a, b), c) in x.iter() {
            out.add_term((*u, *a, *b), c * d);
        }
    }
    out
}

/// First-leg slices `E^y` keyed by the second-leg basis element `y`.
fn slices_by_second(x: &Tensor2) -> BTreeMap<usize, Element> {
    let mut out: BTreeMap<usize, Element> = BTreeMap::new();
    for ((a, b), c) in x.iter() {
        out.entry(*b).or_default().add_term(*a, c.clone());
    }
    out
}

/// Second-leg slices `E_x` keyed by the first-leg basis element `x`.
fn slices_by_first(x: &Tensor2) -> BTreeMap<usize, Element> {
    let mut out: BTreeMap<usize, Element> = BTreeMap::new();
    for ((a, b), c) in x.iter() {
        out.entry(*a).or_default().add_term(*b, c.clone());
    }
    out
}

/// A linear map given by its values on a basis of a subspace.
#[derive(Clone, Debug)]
pub struct BasisMap {
    domain: Span<usize>,
    images: Vec<Element>,
}

impl BasisMap {
    fn new(basis: &[Element], images: Vec<Element>) -> Self {
        BasisMap {
            domain: Span::from_vectors(basis.iter().cloned()),
            images,
        }
    }

    pub fn apply(&self, x: &Element) -> Option<Element> {
        let coeffs = self.domain.express(x)?;
        let mut out = Element::new();
        for (g, c) in coeffs.iter() {
            out.axpy(c, &self.images[*g]);
        }
        Some(out)
    }

    /// The inverse map, when the images are independent.
    pub fn inverse(&self, basis: &[Element]) -> Option<BasisMap> {
        let span = Span::from_vectors(self.images.iter().cloned());
        (span.dim() == self.images.len()).then(|| BasisMap {
            domain: span,
            images: basis.to_vec(),
        })
    }
}

/// The legs `B`, `C` of `E` with the antiisomorphisms between them.
#[derive(Clone, Debug)]
pub struct Legs {
    pub b_basis: Vec<Element>,
    pub c_basis: Vec<Element>,
    /// `E(b⊗1) = E(1⊗S_B(b))`.
    pub s_b: BasisMap,
    /// `(1⊗c)E = (S_C(c)⊗1)E`.
    pub s_c: BasisMap,
    pub s_b_inv: BasisMap,
    pub s_c_inv: BasisMap,
}

impl Legs {
    pub fn b_span(&self) -> Span<usize> {
        Span::from_vectors(self.b_basis.iter().cloned())
    }

    pub fn c_span(&self) -> Span<usize> {
        Span::from_vectors(self.c_basis.iter().cloned())
    }
}

/// Computes `B`, `C`, `S_B` and `S_C`; fails when either antiisomorphism is not determined.
pub fn compute_legs_e(cop: &Coproduct, e: &Tensor2) -> Result<Legs, String> {
    let alg = cop.algebra();
    let n = alg.dim().ok_or("legs of E need a dense algebra")?;
    let unit = alg.unit().ok_or("legs of E need a unital algebra")?.clone();
    let mut b = Span::new();
    let mut c = Span::new();
    for a in 0..n {
        let av = SparseVec::basis(a);
        for v in slices_by_second(&mul2(alg, e, &tensor(&unit, &av))).into_values() {
            b.insert(v);
        }
        for v in slices_by_first(&mul2(alg, &tensor(&av, &unit), e)).into_values() {
            c.insert(v);
        }
    }
    let b_basis = b.basis();
    let c_basis = c.basis();
    if b_basis.len() != c_basis.len() {
        return Err(format!(
            "dim B = {} differs from dim C = {}",
            b_basis.len(),
            c_basis.len()
        ));
    }
    let solve = |targets: Vec<Tensor2>,
                 generators: Vec<Tensor2>,
                 basis: &[Element],
                 what: &str|
     -> Result<Vec<Element>, String> {
        let span = Span::from_vectors(generators.iter().cloned());
        if span.dim() != generators.len() {
            return Err(format!("{what} is not uniquely determined"));
        }
        targets
            .iter()
            .map(|t| {
                let coeffs = span
                    .express(t)
                    .ok_or_else(|| format!("{what} has no solution"))?;
                let mut out = Element::new();
                for (g, k) in coeffs.iter() {
                    out.axpy(k, &basis[*g]);
                }
                Ok(out)
            })
            .collect()
    };
    let sb_images = solve(
        b_basis
            .iter()
            .map(|x| mul2(alg, e, &tensor(x, &unit)))
            .collect(),
        c_basis
            .iter()
            .map(|y| mul2(alg, e, &tensor(&unit, y)))
            .collect(),
        &c_basis,
        "S_B",
    )?;
    let sc_images = solve(
        c_basis
            .iter()
            .map(|y| mul2(alg, &tensor(&unit, y), e))
            .collect(),
        b_basis
            .iter()
            .map(|x| mul2(alg, &tensor(x, &unit), e))
            .collect(),
        &b_basis,
        "S_C",
    )?;
    let s_b = BasisMap::new(&b_basis, sb_images);
    let s_c = BasisMap::new(&c_basis, sc_images);
    let s_b_inv = s_b.inverse(&b_basis).ok_or("S_B is not injective")?;
    let s_c_inv = s_c.inverse(&c_basis).ok_or("S_C is not injective")?;
    Ok(Legs {
        b_basis,
        c_basis,
        s_b,
        s_c,
        s_b_inv,
        s_c_inv,
    })
}

/// The twisted copies of `E`.
#[derive(Clone, Debug, PartialEq)]
pub struct FElements {
    /// `(ι⊗S_C)E`
    pub f1: Tensor2,
    /// `(S_B⊗ι)E`
    pub f2: Tensor2,
    /// `(ι⊗S_B⁻¹)E`
    pub f3: Tensor2,
    /// `(S_C⁻¹⊗ι)E`
    pub f4: Tensor2,
}

impl FElements {
    pub fn get(&self, which: Which) -> &Tensor2 {
        match which {
            Which::T1 => &self.f1,
            Which::T2 => &self.f2,
            Which::T3 => &self.f3,
            Which::T4 => &self.f4,
        }
    }
}

pub fn compute_f(e: &Tensor2, legs: &Legs) -> Result<FElements, String> {
    let second = |map: &BasisMap, what: &str| -> Result<Tensor2, String> {
        let mut out = Tensor2::new();
        for (x, ex) in slices_by_first(e) {
            let img = map
                .apply(&ex)
                .ok_or_else(|| format!("{what}: second leg of E outside its domain"))?;
            out = &out + &tensor(&SparseVec::basis(x), &img);
        }
        Ok(out)
    };
    let first = |map: &BasisMap, what: &str| -> Result<Tensor2, String> {
        let mut out = Tensor2::new();
        for (y, ey) in slices_by_second(e) {
            let img = map
                .apply(&ey)
                .ok_or_else(|| format!("{what}: first leg of E outside its domain"))?;
            out = &out + &tensor(&img, &SparseVec::basis(y));
        }
        Ok(out)
    };
    Ok(FElements {
        f1: second(&legs.s_c, "F1")?,
        f2: first(&legs.s_b, "F2")?,
        f3: second(&legs.s_b_inv, "F3")?,
        f4: first(&legs.s_c_inv, "F4")?,
    })
}

/// The four identities tying each `F_i` to `E` inside `A⊗A⊗A`.
pub fn check_f_identities(
    alg: &Algebra,
    e: &Tensor2,
    f: &FElements,
) -> Result<[bool; 4], HopfError> {
    let unit = unit_of(alg, "F identities")?;
    let e13 = leg13(e, &unit);
    let one_e = pad_left(&unit, e);
    let e_one = tensor3(e, &unit);
    Ok([
        mul3(alg, &e13, &tensor3(&f.f1, &unit)) == mul3(alg, &e13, &one_e),
        mul3(alg, &tensor3(&f.f3, &unit), &e13) == mul3(alg, &one_e, &e13),
        mul3(alg, &pad_left(&unit, &f.f2), &e13) == mul3(alg, &e_one, &e13),
        mul3(alg, &e13, &pad_left(&unit, &f.f4)) == mul3(alg, &e13, &e_one),
    ])
}

fn span_of<I: IntoIterator<Item = Tensor2>>(it: I) -> Span<(usize, usize)> {
    Span::from_vectors(it)
}

fn all_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
}

fn products_span(alg: &Algebra, basis: &[Element], n: usize, left: bool) -> usize {
    let mut span = Span::new();
    for b in basis {
        for k in 0..n {
            let kv = SparseVec::basis(k);
            span.insert(if left {
                alg.multiply(b, &kv)
            } else {
                alg.multiply(&kv, b)
            });
        }
    }
    span.dim()
}

/// Checks the separability-idempotent conditions for `E`; also returns the legs when they exist.
pub fn verify_e(cop: &Coproduct, e: &Tensor2) -> Result<(Vec<Check>, Option<Legs>), HopfError> {
    let alg = cop.algebra();
    let unit = unit_of(alg, "separability idempotent")?;
    let n = alg.dim().expect("dense");
    let mut checks = Vec::new();
    checks.push(Check::outcome(
        "E.idempotent",
        "E·E = E",
        mul2(alg, e, e) == *e,
        false,
    ));

    let mut absorbs = None;
    for a in 0..n {
        let d = delta_of(cop, a, &unit);
        if mul2(alg, e, &d) != d || mul2(alg, &d, e) != d {
            absorbs = Some(alg.label(a));
            break;
        }
    }
    let mut c = Check::outcome(
        "E.absorbs-delta",
        "EΔ(a) = Δ(a)E = Δ(a)",
        absorbs.is_none(),
        false,
    );
    if let Some(w) = absorbs {
        c = c.with_witness(w);
    }
    checks.push(c);

    let delta_left = span_of(
        (0..n)
            .flat_map(|a| all_pairs(n).map(move |(x, y)| (a, x, y)))
            .map(|(a, x, y)| cop.delta_left(a, x, y)),
    );
    let e_left = span_of(all_pairs(n).map(|(x, y)| mul2(alg, e, &SparseVec::basis((x, y)))));
    checks.push(
        Check::outcome(
            "E.range-left",
            "Δ(A)(A⊗A) = E(A⊗A)",
            delta_left.same_as(&e_left),
            false,
        )
        .with_detail(format!(
            "dimensions {} and {}",
            delta_left.dim(),
            e_left.dim()
        )),
    );
    let delta_right = span_of(
        (0..n)
            .flat_map(|a| all_pairs(n).map(move |(x, y)| (a, x, y)))
            .map(|(a, x, y)| cop.delta_right(a, x, y)),
    );
    let e_right = span_of(all_pairs(n).map(|(x, y)| mul2(alg, &SparseVec::basis((x, y)), e)));
    checks.push(
        Check::outcome(
            "E.range-right",
            "(A⊗A)Δ(A) = (A⊗A)E",
            delta_right.same_as(&e_right),
            false,
        )
        .with_detail(format!(
            "dimensions {} and {}",
            delta_right.dim(),
            e_right.dim()
        )),
    );

    let mut delta_e = Tensor3::new();
    for ((x, y), c) in e.iter() {
        delta_e.axpy(
            c,
            &tensor3(&delta_of(cop, *x, &unit), &SparseVec::basis(*y)),
        );
    }
    let e_one = tensor3(e, &unit);
    let one_e = pad_left(&unit, e);
    let ok = delta_e == mul3(alg, &e_one, &one_e) && delta_e == mul3(alg, &one_e, &e_one);
    checks.push(Check::outcome(
        "E.coproduct",
        "(Δ⊗ι)E = (E⊗1)(1⊗E) = (1⊗E)(E⊗1)",
        ok,
        false,
    ));

    let legs = match compute_legs_e(cop, e) {
        Ok(l) => l,
        Err(reason) => {
            checks.push(
                Check::new(
                    "E.antiisomorphisms",
                    "S_B and S_C exist and are bijective",
                    Status::Fail,
                )
                .with_detail(reason),
            );
            return Ok((checks, None));
        }
    };
    checks.push(
        Check::passed(
            "E.antiisomorphisms",
            "S_B and S_C exist and are bijective",
            false,
        )
        .with_detail(format!("dim B = dim C = {}", legs.b_basis.len())),
    );
    let commute = legs.b_basis.iter().all(|b| {
        legs.c_basis
            .iter()
            .all(|c| alg.multiply(b, c) == alg.multiply(c, b))
    });
    checks.push(Check::outcome(
        "E.legs-commute",
        "B and C commute",
        commute,
        false,
    ));
    let nondeg = [&legs.b_basis, &legs.c_basis].into_iter().all(|basis| {
        products_span(alg, basis, n, true) == n && products_span(alg, basis, n, false) == n
    });
    checks.push(Check::outcome(
        "E.legs-nondegenerate",
        "BA = AB = A and CA = AC = A",
        nondeg,
        false,
    ));

    let anti = |basis: &[Element], map: &BasisMap| -> bool {
        basis.iter().all(|x| {
            basis.iter().all(|y| {
                let lhs = map.apply(&alg.multiply(x, y));
                let rhs = match (map.apply(x), map.apply(y)) {
                    (Some(sx), Some(sy)) => Some(alg.multiply(&sy, &sx)),
                    _ => None,
                };
                lhs.is_some() && lhs == rhs
            })
        })
    };
    checks.push(Check::outcome(
        "E.S_B-antimultiplicative",
        "S_B(xy) = S_B(y)S_B(x)",
        anti(&legs.b_basis, &legs.s_b),
        false,
    ));
    checks.push(Check::outcome(
        "E.S_C-antimultiplicative",
        "S_C(xy) = S_C(y)S_C(x)",
        anti(&legs.c_basis, &legs.s_c),
        false,
    ));
    Ok((checks, Some(legs)))
}

/// The unique `E` in `Δ(A)(A⊗A)` that is a left unit there, a right unit on
/// `(A⊗A)Δ(A)` and lies in both spaces; `None` when no such element exists.
pub fn derive_e(cop: &Coproduct) -> Result<Option<Tensor2>, HopfError> {
    let alg = cop.algebra();
    unit_of(alg, "deriving E")?;
    let n = alg.dim().expect("dense");
    let n2 = n * n;
    let mut r = Span::new();
    let mut l = Span::new();
    for a in 0..n {
        for (x, y) in all_pairs(n) {
            r.insert(cop.delta_left(a, x, y));
            l.insert(cop.delta_right(a, x, y));
        }
    }
    let rb = r.basis();
    let lb = l.basis();
    let m = rb.len();
    let row = |block: usize, k: usize, (x, y): (usize, usize)| block * n2 + k * n2 + x * n + y;
    let l_off = m;
    let rem_off = m + lb.len();
    let total = (rem_off + 1) * n2;
    let mut cols = Vec::with_capacity(m);
    for rj in &rb {
        let mut col = SparseVec::new();
        for (k, rk) in rb.iter().enumerate() {
            for (key, c) in mul2(alg, rj, rk).into_terms() {
                col.add_term(row(0, k, key), c);
            }
        }
        for (k, lk) in lb.iter().enumerate() {
            for (key, c) in mul2(alg, lk, rj).into_terms() {
                col.add_term(row(l_off, k, key), c);
            }
        }
        for (key, c) in l.remainder(rj).into_terms() {
            col.add_term(row(rem_off, 0, key), c);
        }
        cols.push(col);
    }
    let mut rhs = SparseVec::new();
    for (k, rk) in rb.iter().enumerate() {
        for (key, c) in rk.iter() {
            rhs.add_term(row(0, k, *key), c.clone());
        }
    }
    for (k, lk) in lb.iter().enumerate() {
        for (key, c) in lk.iter() {
            rhs.add_term(row(l_off, k, *key), c.clone());
        }
    }
    let mat = SparseMat::from_columns(total, cols)?;
    let Some(t) = mat.solve(&rhs)? else {
        return Ok(None);
    };
    if !mat.kernel_basis().is_empty() {
        return Err(HopfError::Inconsistency(
            "the separability idempotent is not unique".into(),
        ));
    }
    let mut e = Tensor2::new();
    for (j, c) in t.iter() {
        e.axpy(c, &rb[*j]);
    }
    Ok(Some(e))
}

/// Everything the weak pipeline derives from `(A, Δ, E)`.
#[derive(Clone, Debug)]
pub struct WeakContext<'a> {
    pub cop: &'a Coproduct,
    pub scope: Scope,
    pub unit: Element,
    pub e: Tensor2,
    pub legs: Legs,
    pub f: FElements,
}

impl<'a> WeakContext<'a> {
    /// Verifies `E`, computes its legs and the F-elements; returns the checks and, if
    /// the conditions on `E` allow it, the context.
    pub fn build(
        cop: &'a Coproduct,
        e: &Tensor2,
    ) -> Result<(Vec<Check>, Option<WeakContext<'a>>), HopfError> {
        let alg = cop.algebra();
        let unit = unit_of(alg, "weak classification")?;
        let (mut checks, legs) = verify_e(cop, e)?;
        let Some(legs) = legs else {
            return Ok((checks, None));
        };
        let f = match compute_f(e, &legs) {
            Ok(f) => f,
            Err(reason) => {
                checks.push(
                    Check::new("F.defined", "F1..F4 are defined", Status::Fail).with_detail(reason),
                );
                return Ok((checks, None));
            }
        };
        let ids = check_f_identities(alg, e, &f)?;
        let names = [
            ("F.identity.1", "E13(F1⊗1) = E13(1⊗E)"),
            ("F.identity.3", "(F3⊗1)E13 = (1⊗E)E13"),
            ("F.identity.2", "(1⊗F2)E13 = (E⊗1)E13"),
            ("F.identity.4", "E13(1⊗F4) = E13(E⊗1)"),
        ];
        for ((id, rule), ok) in names.into_iter().zip(ids) {
            checks.push(Check::outcome(id, rule, ok, false));
        }
        if ids.iter().any(|ok| !ok)
            && checks
                .iter()
                .all(|c| c.status != Status::Fail || c.id.starts_with("F.identity"))
        {
            return Err(HopfError::Inconsistency(
                "an F-identity fails although E satisfies its conditions".into(),
            ));
        }
        let scope = Scope::for_algebra(alg, 0);
        Ok((
            checks,
            Some(WeakContext {
                cop,
                scope,
                unit,
                e: e.clone(),
                legs,
                f,
            }),
        ))
    }

    fn alg(&self) -> &Algebra {
        self.cop.algebra()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeakIntegralStatus {
    /// The F-element formulas hold for every basis element.
    Strengthened,
    /// Slices land in the right subalgebra but a formula fails at the witness.
    Basic {
        witness: String,
    },
    Fail {
        witness: String,
    },
}

impl WeakIntegralStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            WeakIntegralStatus::Strengthened => "strengthened",
            WeakIntegralStatus::Basic { .. } => "basic",
            WeakIntegralStatus::Fail { .. } => "fail",
        }
    }
}

/// Left integrals: `(ι⊗φ)Δ(a) ∈ C`, strengthened by `= (ι⊗φ)((1⊗a)F4) = (ι⊗φ)(F2(1⊗a))`.
/// Right integrals: `(ψ⊗ι)Δ(a) ∈ B`, strengthened by `= (ψ⊗ι)((a⊗1)F1) = (ψ⊗ι)(F3(a⊗1))`.
pub fn check_weak_integral(
    ctx: &WeakContext<'_>,
    f: &Functional,
    side: Side,
) -> Result<WeakIntegralStatus, HopfError> {
    let alg = ctx.alg();
    let n = alg.dim().expect("dense");
    let left_pair = ctx.cop.check_regular(Which::T1, &ctx.scope).holds()
        && ctx.cop.check_regular(Which::T4, &ctx.scope).holds();
    let right_pair = ctx.cop.check_regular(Which::T2, &ctx.scope).holds()
        && ctx.cop.check_regular(Which::T3, &ctx.scope).holds();
    if !left_pair && !right_pair {
        return Err(HopfError::NotRegular {
            map: Which::T1,
            witness: Some("no regular pair of canonical maps".into()),
        });
    }
    let target = match side {
        Side::Left => ctx.legs.c_span(),
        Side::Right => ctx.legs.b_span(),
    };
    let w = |k: usize| f.value(k);
    let mut basic_witness = None;
    for a in 0..n {
        let av = SparseVec::basis(a);
        let d = delta_of(ctx.cop, a, &ctx.unit);
        let lhs = match side {
            Side::Left => slice_second(&d, w),
            Side::Right => slice_first(&d, w),
        };
        if !target.contains(&lhs) {
            return Ok(WeakIntegralStatus::Fail {
                witness: alg.label(a),
            });
        }
        let mut forms = Vec::new();
        match side {
            Side::Left => {
                if left_pair {
                    forms.push(slice_second(
                        &mul2(alg, &tensor(&ctx.unit, &av), &ctx.f.f4),
                        w,
                    ));
                }
                if right_pair {
                    forms.push(slice_second(
                        &mul2(alg, &ctx.f.f2, &tensor(&ctx.unit, &av)),
                        w,
                    ));
                }
            }
            Side::Right => {
                if left_pair {
                    forms.push(slice_first(
                        &mul2(alg, &tensor(&av, &ctx.unit), &ctx.f.f1),
                        w,
                    ));
                }
                if right_pair {
                    forms.push(slice_first(
                        &mul2(alg, &ctx.f.f3, &tensor(&av, &ctx.unit)),
                        w,
                    ));
                }
            }
        }
        if basic_witness.is_none() && forms.iter().any(|x| *x != lhs) {
            basic_witness = Some(alg.label(a));
        }
    }
    Ok(match basic_witness {
        None => WeakIntegralStatus::Strengthened,
        Some(witness) => WeakIntegralStatus::Basic { witness },
    })
}

/// Whether `set` consists of strengthened `integral`-side integrals and is jointly `faithful`-side faithful.
pub fn integral_set_has(
    ctx: &WeakContext<'_>,
    set: &[&Functional],
    integral: Side,
    faithful: Side,
) -> Result<bool, HopfError> {
    let mut members = Vec::new();
    for f in set {
        if check_weak_integral(ctx, f, integral)? == WeakIntegralStatus::Strengthened {
            members.push(*f);
        }
    }
    Ok(!members.is_empty() && check_faithful_set(ctx.alg(), &members, faithful, &ctx.scope).holds)
}

/// `(x⊗1)F(1⊗y)` for T1, T2 and `(1⊗y)F(x⊗1)` for T3, T4.
fn twisted(alg: &Algebra, which: Which, fi: &Tensor2, x: usize, y: usize) -> Tensor2 {
    fi.linear_map(|(f1, f2)| match which {
        Which::T1 | Which::T2 => tensor(&alg.mul_basis(x, *f1), &alg.mul_basis(*f2, y)),
        Which::T3 | Which::T4 => tensor(&alg.mul_basis(*f1, x), &alg.mul_basis(y, *f2)),
    })
}

/// The span of `(x⊗1)(1−F)(1⊗y)` (or its T3/T4 mirror) over basis pairs.
pub fn kernel_formula_span(alg: &Algebra, which: Which, fi: &Tensor2) -> Span<(usize, usize)> {
    let n = alg.dim().expect("dense");
    span_of(all_pairs(n).map(|(x, y)| &SparseVec::basis((x, y)) - &twisted(alg, which, fi, x, y)))
}

/// Integral set demanded by the kernel formula for `which`, as `(integral side, faithful side)`.
pub fn kernel_hypothesis(which: Which) -> (Side, Side) {
    crate::ls_engine::injectivity_hypothesis(which)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelFormulaReport {
    pub which: Which,
    pub kernel_dim: usize,
    pub formula_dim: usize,
    pub equal: bool,
    pub hypothesis_met: bool,
    /// For T1: `x⊗y ↦ (x⊗1)(1−F1)(1⊗y)` is idempotent with range the kernel.
    pub projection: Option<bool>,
}

/// Compares the kernel of `which` with the span built from `fi`.
pub fn check_kernel_formula_with(
    ctx: &WeakContext<'_>,
    which: Which,
    fi: &Tensor2,
    set: &[&Functional],
) -> Result<KernelFormulaReport, HopfError> {
    let alg = ctx.alg();
    let n = alg.dim().expect("dense");
    let (side, faithful) = kernel_hypothesis(which);
    let hypothesis_met = integral_set_has(ctx, set, side, faithful)?;
    let t = ctx.cop.t_matrix(which)?;
    let kernel = Span::from_vectors(
        t.kernel_basis()
            .into_iter()
            .map(|v| v.map_keys(|k| (k / n, k % n))),
    );
    let formula = kernel_formula_span(alg, which, fi);
    let equal = kernel.same_as(&formula);
    let projection = (which == Which::T1).then(|| {
        let cols: Vec<SparseVec<usize>> = all_pairs(n)
            .map(|(x, y)| {
                (&SparseVec::basis((x, y)) - &twisted(alg, which, fi, x, y))
                    .map_keys(|(a, b)| a * n + b)
            })
            .collect();
        let p = SparseMat::from_columns(n * n, cols).expect("square");
        let idempotent = p.mul(&p).map(|pp| pp == p).unwrap_or(false);
        idempotent
            && p.column_span().same_as(
                &kernel
                    .basis()
                    .iter()
                    .map(|v| v.map_keys(|(a, b)| a * n + b))
                    .collect::<Vec<_>>()
                    .into_iter()
                    .fold(Span::new(), |mut s, v| {
                        s.insert(v);
                        s
                    }),
            )
    });
    if hypothesis_met && !equal {
        return Err(HopfError::Inconsistency(format!(
            "kernel formula for {which} fails although its hypothesis holds"
        )));
    }
    Ok(KernelFormulaReport {
        which,
        kernel_dim: kernel.dim(),
        formula_dim: formula.dim(),
        equal,
        hypothesis_met,
        projection,
    })
}

pub fn check_kernel_formula(
    ctx: &WeakContext<'_>,
    which: Which,
    set: &[&Functional],
) -> Result<KernelFormulaReport, HopfError> {
    let fi = ctx.f.get(which).clone();
    check_kernel_formula_with(ctx, which, &fi, set)
}

/// `which` applied to a lift; its image should be `E(a⊗c)`, `(c⊗a)E`, `(a⊗c)E` or `E(c⊗a)`.
pub fn build_weak_lift(
    ctx: &WeakContext<'_>,
    which: Which,
    p: &Element,
    q: &Element,
    c: &Element,
    omega: &Functional,
) -> Result<LiftElement, HopfError> {
    let (m1, m2) = lift_pair(which);
    ctx.cop.require_regular(m1, &ctx.scope)?;
    ctx.cop.require_regular(m2, &ctx.scope)?;
    twisted_lift(ctx, which, p, q, c, omega)
}

fn twisted_lift(
    ctx: &WeakContext<'_>,
    which: Which,
    p: &Element,
    q: &Element,
    c: &Element,
    omega: &Functional,
) -> Result<LiftElement, HopfError> {
    let alg = ctx.alg();
    let mut lift = lift_unchecked(ctx.cop, which, p, q, c, omega)?;
    lift.expected = match which {
        Which::T1 | Which::T4 => mul2(alg, &ctx.e, &lift.expected),
        Which::T2 | Which::T3 => mul2(alg, &lift.expected, &ctx.e),
    };
    Ok(lift)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeFormulaReport {
    pub which: Which,
    pub rank_t: usize,
    pub rank_e: usize,
    pub equal: bool,
    pub hypothesis_met: bool,
    /// `T(A⊗A) ⊆ middle` and `middle ⊆ T(leg)` for the intermediate space built from a leg.
    pub inclusions: [bool; 2],
    pub inclusion_hypothesis_met: bool,
}

/// Integral sets for the range formula of `which`: `(left set faithful side, right set faithful side)`.
pub fn range_hypothesis(which: Which) -> (Side, Side) {
    match which {
        Which::T1 | Which::T2 => (Side::Left, Side::Right),
        Which::T3 | Which::T4 => (Side::Right, Side::Left),
    }
}

/// Compares the range of `which` with `E(A⊗A)` (T1, T4) or `(A⊗A)E` (T2, T3).
pub fn check_range_formula(
    ctx: &WeakContext<'_>,
    which: Which,
    left_set: &[&Functional],
    right_set: &[&Functional],
) -> Result<RangeFormulaReport, HopfError> {
    let alg = ctx.alg();
    let n = alg.dim().expect("dense");
    let cop = ctx.cop;
    let e_on_left = matches!(which, Which::T1 | Which::T4);
    let by_e = |t: &Tensor2| {
        if e_on_left {
            mul2(alg, &ctx.e, t)
        } else {
            mul2(alg, t, &ctx.e)
        }
    };
    let range = span_of(
        all_pairs(n)
            .map(|(x, y)| cop.t_basis(which, x, y))
            .collect::<Result<Vec<_>, _>>()?,
    );
    let e_range = span_of(all_pairs(n).map(|(x, y)| by_e(&SparseVec::basis((x, y)))));
    let (ls, rs) = range_hypothesis(which);
    let (m1, m2) = lift_pair(which);
    let pair =
        cop.check_regular(m1, &ctx.scope).holds() && cop.check_regular(m2, &ctx.scope).holds();
    let hypothesis_met = pair
        && integral_set_has(ctx, left_set, Side::Left, ls)?
        && integral_set_has(ctx, right_set, Side::Right, rs)?;
    let inclusion_hypothesis_met = pair
        && match which {
            Which::T1 => integral_set_has(ctx, left_set, Side::Left, Side::Left)?,
            Which::T2 => integral_set_has(ctx, right_set, Side::Right, Side::Right)?,
            Which::T3 => integral_set_has(ctx, left_set, Side::Left, Side::Right)?,
            Which::T4 => integral_set_has(ctx, right_set, Side::Right, Side::Left)?,
        };
    // V for T1 and T3 on the first factor, W for T2 and T4 on the second.
    let leg_side = match which {
        Which::T1 | Which::T3 => Side::Left,
        Which::T2 | Which::T4 => Side::Right,
    };
    let leg = cop.compute_leg(leg_side, &ctx.scope)?.basis();
    let mut leg_tensors = Vec::new();
    for v in &leg {
        for k in 0..n {
            let kv = SparseVec::basis(k);
            leg_tensors.push(match leg_side {
                Side::Left => tensor(v, &kv),
                Side::Right => tensor(&kv, v),
            });
        }
    }
    let middle = span_of(leg_tensors.iter().map(&by_e));
    let outer = span_of(
        leg_tensors
            .iter()
            .map(|t| cop.t_apply(which, t))
            .collect::<Result<Vec<_>, _>>()?,
    );
    let inclusions = [middle.contains_span(&range), outer.contains_span(&middle)];
    if inclusion_hypothesis_met && !(inclusions[0] && inclusions[1]) {
        return Err(HopfError::Inconsistency(format!(
            "range inclusions for {which} fail although their hypothesis holds"
        )));
    }
    let equal = range.same_as(&e_range);
    if hypothesis_met && !equal {
        return Err(HopfError::Inconsistency(format!(
            "range formula for {which} fails although its hypothesis holds"
        )));
    }
    Ok(RangeFormulaReport {
        which,
        rank_t: range.dim(),
        rank_e: e_range.dim(),
        equal,
        hypothesis_met,
        inclusions,
        inclusion_hypothesis_met,
    })
}

/// Caveat attached to one-sided weak verdicts.
pub const ONE_SIDED_CAVEAT: &str = "the general theory of one-sided weak multiplier Hopf algebras is not developed; this verdict records which hypotheses hold";

fn weak_to_multiplier(v: Verdict, unital: bool) -> Verdict {
    match (v, unital) {
        (Verdict::RegularWeakMHA, true) => Verdict::HopfInvertibleS,
        (Verdict::RegularWeakMHA, false) => Verdict::RegularMultiplierHopf,
        (Verdict::WeakMHA, true) => Verdict::Hopf,
        (Verdict::WeakMHA, false) => Verdict::MultiplierHopf,
        (Verdict::LeftWeakMHA, _) => Verdict::LeftMHA,
        (Verdict::RightWeakMHA, _) => Verdict::RightMHA,
        (other, _) => other,
    }
}

/// Resolves the idempotent to use: the supplied one, the derived one, or both when they must agree.
pub fn resolve_e(inst: &Instance, ev: &mut Vec<Check>) -> Result<Option<Tensor2>, HopfError> {
    let cop = &inst.coproduct;
    if !inst.derive_e {
        return Ok(inst.e.clone());
    }
    let derived = derive_e(cop)?;
    let c = Check::outcome(
        "E.derived",
        "a unique separability idempotent exists",
        derived.is_some(),
        false,
    );
    match (&derived, &inst.e) {
        (Some(d), Some(given)) if d != given => {
            return Err(HopfError::Inconsistency(format!(
                "derived E {} differs from the supplied {}",
                cop.algebra().format_tensor(d),
                cop.algebra().format_tensor(given)
            )))
        }
        (Some(d), _) => ev.push(c.with_detail(cop.algebra().format_tensor(d))),
        (None, _) => ev.push(c),
    }
    Ok(derived.or_else(|| inst.e.clone()))
}

fn lift_triples(
    ctx: &WeakContext<'_>,
    which: Which,
    omega: &Functional,
) -> Result<Option<(usize, usize, usize)>, HopfError> {
    let n = ctx.alg().dim().expect("dense");
    for p in 0..n {
        for q in 0..n {
            for c in 0..n {
                let lift = twisted_lift(
                    ctx,
                    which,
                    &SparseVec::basis(p),
                    &SparseVec::basis(q),
                    &SparseVec::basis(c),
                    omega,
                )?;
                if !lift.verified() {
                    return Ok(Some((p, q, c)));
                }
            }
        }
    }
    Ok(None)
}

pub fn classify_weak(inst: &Instance) -> Result<Classification, HopfError> {
    classify_weak_with(inst, Route::Auto)
}

/// Classifies through the separability idempotent of the instance.
pub fn classify_weak_with(inst: &Instance, route: Route) -> Result<Classification, HopfError> {
    let cop = &inst.coproduct;
    let alg = cop.algebra();
    unit_of(alg, "weak classification")?;
    let scope = Scope::for_algebra(alg, 0);
    let mut ev = Vec::new();
    let mut notes = Vec::new();
    let regular = structural_checks(cop, &scope, &mut ev)?;
    let structure = structure_ok(&ev);
    let e = resolve_e(inst, &mut ev)?;
    let Some(e) = e else {
        ev.push(Check::new(
            "E.present",
            "a separability idempotent is available",
            Status::Fail,
        ));
        notes.push("no separability idempotent".into());
        return Ok(Classification {
            verdict: Verdict::Fail,
            window_verified: false,
            evidence: ev,
            notes,
        });
    };
    let (checks, ctx) = WeakContext::build(cop, &e)?;
    let e_ok = checks.iter().all(|c| c.status != Status::Fail);
    ev.extend(checks);
    let Some(ctx) = ctx else {
        notes.push("the conditions on E fail".into());
        return Ok(Classification {
            verdict: Verdict::Fail,
            window_verified: false,
            evidence: ev,
            notes,
        });
    };

    let mut left_set = Vec::new();
    let mut right_set = Vec::new();
    for (side, names) in [
        (Side::Left, &inst.left_integrals),
        (Side::Right, &inst.right_integrals),
    ] {
        for name in names {
            let f = inst.functional(name)?;
            let status = check_weak_integral(&ctx, f, side)?;
            let mut c = Check::outcome(
                format!("weak-integral.{side}.{name}"),
                format!("{name} is a {side} integral with the F-element formulas"),
                status == WeakIntegralStatus::Strengthened,
                false,
            )
            .with_detail(status.as_str());
            if let WeakIntegralStatus::Basic { witness } | WeakIntegralStatus::Fail { witness } =
                &status
            {
                c = c.with_witness(witness.clone());
            }
            ev.push(c);
            if !ev.iter().any(|c| c.id == format!("faithful.left.{name}")) {
                let rep = check_faithful(alg, f, &scope);
                ev.push(Check::outcome(
                    format!("faithful.left.{name}"),
                    format!("{name} is left faithful"),
                    rep.left,
                    false,
                ));
                ev.push(Check::outcome(
                    format!("faithful.right.{name}"),
                    format!("{name} is right faithful"),
                    rep.right,
                    false,
                ));
            }
            match side {
                Side::Left => left_set.push(f),
                Side::Right => right_set.push(f),
            }
        }
    }
    let lfl = integral_set_has(&ctx, &left_set, Side::Left, Side::Left)?;
    let rfl = integral_set_has(&ctx, &left_set, Side::Left, Side::Right)?;
    let lfr = integral_set_has(&ctx, &right_set, Side::Right, Side::Left)?;
    let rfr = integral_set_has(&ctx, &right_set, Side::Right, Side::Right)?;
    for (id, ok, rule) in [
        (
            "left-faithful-left-set",
            lfl,
            "a left faithful set of left integrals",
        ),
        (
            "right-faithful-right-set",
            rfr,
            "a right faithful set of right integrals",
        ),
        (
            "right-faithful-left-set",
            rfl,
            "a right faithful set of left integrals",
        ),
        (
            "left-faithful-right-set",
            lfr,
            "a left faithful set of right integrals",
        ),
    ] {
        ev.push(Check::outcome(format!("hypothesis.{id}"), rule, ok, false));
    }

    for which in Which::ALL {
        if !regular[which.slot()] {
            continue;
        }
        let (side, _) = kernel_hypothesis(which);
        let set = if side == Side::Left {
            &left_set
        } else {
            &right_set
        };
        let k = check_kernel_formula(&ctx, which, set)?;
        let rule = match which {
            Which::T1 | Which::T2 => format!("Ker {which} = (A⊗1)(1−F{})(1⊗A)", which.index()),
            Which::T3 | Which::T4 => format!("Ker {which} = (1⊗A)(1−F{})(A⊗1)", which.index()),
        };
        ev.push(
            Check::outcome(format!("kernel-formula.{which}"), rule, k.equal, false).with_detail(
                format!(
                    "kernel dimension {}, formula dimension {}",
                    k.kernel_dim, k.formula_dim
                ),
            ),
        );
        if let Some(p) = k.projection {
            ev.push(Check::outcome(
                "kernel-projection.T1",
                "x⊗y ↦ (x⊗1)(1−F1)(1⊗y) projects onto Ker T1",
                p,
                false,
            ));
        }
        let r = check_range_formula(&ctx, which, &left_set, &right_set)?;
        let rule = match which {
            Which::T1 | Which::T4 => format!("range of {which} is E(A⊗A)"),
            Which::T2 | Which::T3 => format!("range of {which} is (A⊗A)E"),
        };
        ev.push(
            Check::outcome(format!("range-formula.{which}"), rule, r.equal, false)
                .with_detail(format!("ranks {} and {}", r.rank_t, r.rank_e)),
        );
        ev.push(Check::outcome(
            format!("range-inclusions.{which}"),
            format!("range of {which} sits between E-twisted leg tensors and their image"),
            r.inclusions[0] && r.inclusions[1],
            false,
        ));
    }

    for which in Which::ALL {
        let (m1, m2) = lift_pair(which);
        let omega = match which {
            Which::T1 | Which::T3 => left_set.first(),
            Which::T2 | Which::T4 => right_set.first(),
        };
        let id = format!("weak-lift.{which}");
        let rule = format!("explicit E-twisted preimages under {which}");
        match omega {
            Some(f) if structure && regular[m1.slot()] && regular[m2.slot()] => {
                let out = lift_triples(&ctx, which, f)?;
                let mut c = Check::outcome(id, rule, out.is_none(), false)
                    .with_detail(format!("functional {}", f.name));
                if let Some((p, q, c0)) = out {
                    c = c.with_witness(format!(
                        "({}, {}, {})",
                        alg.label(p),
                        alg.label(q),
                        alg.label(c0)
                    ));
                }
                ev.push(c);
            }
            _ => ev.push(
                Check::new(id, rule, Status::Skipped)
                    .with_detail("needs both maps regular and an integral"),
            ),
        }
    }

    // Δ(A)(A⊗A) is E(A⊗A) here, already covered by E.range-left.
    let automatic: Vec<Check> = automatic_checks(cop, &scope)?
        .into_iter()
        .filter(|c| c.id != "auto.delta-nondegenerate")
        .collect();
    let all_regular = regular.iter().all(|r| *r);
    let ok = structure && e_ok;
    let faithful_both = lfl && rfl && lfr && rfr;
    let verdict = if !ok {
        Verdict::Fail
    } else if matches!(route, Route::Auto) && all_regular && lfl && rfr {
        if faithful_both {
            Verdict::RegularWeakMHA
        } else {
            Verdict::WeakMHA
        }
    } else if !matches!(route, Route::RightOnly) && regular[0] && regular[3] && faithful_both {
        notes.push(ONE_SIDED_CAVEAT.into());
        Verdict::LeftWeakMHA
    } else if !matches!(route, Route::LeftOnly) && regular[1] && regular[2] && faithful_both {
        notes.push(ONE_SIDED_CAVEAT.into());
        Verdict::RightWeakMHA
    } else {
        Verdict::Fail
    };
    if verdict != Verdict::Fail {
        if let Some(bad) = automatic.iter().find(|c| c.status == Status::Fail) {
            return Err(HopfError::Inconsistency(format!(
                "verdict {verdict} reached but {} fails",
                bad.id
            )));
        }
    } else {
        let unmet: Vec<String> = ev
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.id.clone())
            .collect();
        if !unmet.is_empty() {
            notes.push(format!("unmet: {}", unmet.join(", ")));
        }
    }
    ev.extend(automatic);
    let unit = ctx.unit.clone();
    let verdict = if ctx.e == tensor(&unit, &unit) {
        let reduced = weak_to_multiplier(verdict, true);
        if reduced != verdict {
            notes.push(format!("E = 1⊗1: {verdict} reduces to {reduced}"));
        }
        reduced
    } else {
        verdict
    };
    Ok(Classification {
        verdict,
        window_verified: false,
        evidence: ev,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DenseAlgebra;
    use crate::coproduct::{composition_images, grouplike_images, CoproductRule};
    use hopfforge_linalg::int;
    use std::sync::Arc;

    /// Arrows `(t, s)` of the pair groupoid on two points, indexed `2t + s`; `(t,s)(t',s')` is defined when `s = t'`.
    fn compose(g: usize, h: usize) -> Option<usize> {
        let (t, s) = (g / 2, g % 2);
        let (t2, s2) = (h / 2, h % 2);
        (s == t2).then_some(2 * t + s2)
    }

    fn groupoid_algebra() -> Coproduct {
        let labels = (0..4).map(|g| format!("a{}{}", g / 2, g % 2)).collect();
        let prods = (0..4)
            .map(|g| {
                (0..4)
                    .map(|h| compose(g, h).map(SparseVec::basis).unwrap_or_default())
                    .collect()
            })
            .collect();
        let alg = Arc::new(Algebra::Dense(DenseAlgebra::new(labels, prods).unwrap()));
        Coproduct::new(alg, CoproductRule::Images(grouplike_images(4))).unwrap()
    }

    fn groupoid_functions() -> Coproduct {
        let labels = (0..4).map(|g| format!("d{}{}", g / 2, g % 2)).collect();
        let prods = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        if i == j {
                            SparseVec::basis(i)
                        } else {
                            Element::new()
                        }
                    })
                    .collect()
            })
            .collect();
        let alg = Arc::new(Algebra::Dense(DenseAlgebra::new(labels, prods).unwrap()));
        Coproduct::new(alg, CoproductRule::Images(composition_images(4, compose))).unwrap()
    }

    fn units_e() -> Tensor2 {
        SparseVec::from_terms([((0, 0), int(1)), ((3, 3), int(1))])
    }

    fn unit_indicator() -> Functional {
        Functional::from_values("units", [(0, int(1)), (3, int(1))])
    }

    #[test]
    fn groupoid_e_verifies() {
        let cop = groupoid_algebra();
        let (checks, legs) = verify_e(&cop, &units_e()).unwrap();
        assert!(
            checks.iter().all(|c| c.status == Status::Pass),
            "{checks:?}"
        );
        let legs = legs.unwrap();
        assert_eq!(legs.b_basis.len(), 2);
        for b in &legs.b_basis {
            assert_eq!(legs.s_b.apply(b).as_ref(), Some(b));
        }
        assert_eq!(derive_e(&cop).unwrap(), Some(units_e()));
    }

    #[test]
    fn zero_e_fails_range() {
        let cop = groupoid_algebra();
        let (checks, _) = verify_e(&cop, &Tensor2::new()).unwrap();
        assert_eq!(
            checks
                .iter()
                .find(|c| c.id == "E.range-left")
                .unwrap()
                .status,
            Status::Fail
        );
    }

    #[test]
    fn trivial_e_on_group() {
        let labels = vec!["e".into(), "g".into()];
        let e = |i: usize| SparseVec::basis(i);
        let alg = Arc::new(Algebra::Dense(
            DenseAlgebra::new(labels, vec![vec![e(0), e(1)], vec![e(1), e(0)]]).unwrap(),
        ));
        let cop = Coproduct::new(alg, CoproductRule::Images(grouplike_images(2))).unwrap();
        let one = SparseVec::basis((0, 0));
        assert_eq!(derive_e(&cop).unwrap(), Some(one.clone()));
        let (_, ctx) = WeakContext::build(&cop, &one).unwrap();
        let ctx = ctx.unwrap();
        for w in Which::ALL {
            assert_eq!(ctx.f.get(w), &one);
        }
        let phi = Functional::from_values("e", [(0, int(1))]);
        assert_eq!(
            check_weak_integral(&ctx, &phi, Side::Left).unwrap(),
            WeakIntegralStatus::Strengthened
        );
        let k = check_kernel_formula(&ctx, Which::T1, &[&phi]).unwrap();
        assert_eq!((k.kernel_dim, k.formula_dim, k.equal), (0, 0, true));
        let r = check_range_formula(&ctx, Which::T1, &[&phi], &[&phi]).unwrap();
        assert_eq!((r.rank_t, r.equal), (4, true));
    }

    #[test]
    fn groupoid_kernel_and_range() {
        let cop = groupoid_algebra();
        let (_, ctx) = WeakContext::build(&cop, &units_e()).unwrap();
        let ctx = ctx.unwrap();
        assert_eq!(ctx.f.f1, units_e());
        let phi = unit_indicator();
        assert_eq!(
            check_weak_integral(&ctx, &phi, Side::Left).unwrap(),
            WeakIntegralStatus::Strengthened
        );
        for which in Which::ALL {
            let k = check_kernel_formula(&ctx, which, &[&phi]).unwrap();
            assert!(k.hypothesis_met && k.equal && k.kernel_dim == 8, "{which}");
            let r = check_range_formula(&ctx, which, &[&phi], &[&phi]).unwrap();
            assert!(
                r.equal && r.rank_t == 8 && r.inclusions == [true, true],
                "{which}"
            );
        }
        let k = check_kernel_formula(&ctx, Which::T1, &[&phi]).unwrap();
        assert_eq!(k.projection, Some(true));
        let bad = Functional::from_values("arrow", [(1, int(1))]);
        assert!(matches!(
            check_weak_integral(&ctx, &bad, Side::Left).unwrap(),
            WeakIntegralStatus::Fail { .. }
        ));
    }

    #[test]
    fn corrupted_f1_is_detected() {
        let cop = groupoid_algebra();
        let (_, ctx) = WeakContext::build(&cop, &units_e()).unwrap();
        let ctx = ctx.unwrap();
        let corrupted = &ctx.f.f1 + &SparseVec::basis((0, 3));
        let k = check_kernel_formula_with(&ctx, Which::T1, &corrupted, &[]).unwrap();
        assert!(!k.equal);
    }

    #[test]
    fn weak_lifts_on_groupoids() {
        for cop in [groupoid_algebra(), groupoid_functions()] {
            let e = derive_e(&cop).unwrap().unwrap();
            let (checks, ctx) = WeakContext::build(&cop, &e).unwrap();
            assert!(
                checks.iter().all(|c| c.status == Status::Pass),
                "{checks:?}"
            );
            let ctx = ctx.unwrap();
            let phi = if cop.algebra().unit()
                == Some(&SparseVec::from_terms([(0, int(1)), (3, int(1))]))
            {
                unit_indicator()
            } else {
                Functional::constant("count", int(1))
            };
            for which in Which::ALL {
                assert_eq!(lift_triples(&ctx, which, &phi).unwrap(), None, "{which}");
            }
            let zero = Element::new();
            let one = SparseVec::basis(0);
            assert!(build_weak_lift(&ctx, Which::T1, &zero, &one, &one, &phi)
                .unwrap()
                .y
                .is_zero());
        }
    }

    #[test]
    fn classify_groupoids() {
        for (cop, phi) in [
            (groupoid_algebra(), unit_indicator()),
            (groupoid_functions(), Functional::constant("count", int(1))),
        ] {
            let mut inst = Instance::new("g", cop).with_functional(phi.clone());
            inst.left_integrals = vec![phi.name.clone()];
            inst.right_integrals = vec![phi.name.clone()];
            inst.derive_e = true;
            let c = classify_weak(&inst).unwrap();
            assert_eq!(
                c.verdict,
                Verdict::RegularWeakMHA,
                "{:?}",
                c.failed_checks().collect::<Vec<_>>()
            );
        }
    }
}
