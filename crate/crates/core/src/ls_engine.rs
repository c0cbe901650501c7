//! Injectivity, lifts, bijectivity and classification for multiplier Hopf
//! algebras, plus the counit and antipode built from integrals.

use std::collections::BTreeMap;

use hopfforge_linalg::{Scalar, Span, SparseMat, SparseVec};

use crate::algebra::{
    check_associative, check_idempotent_algebra, check_nondegenerate, slice_first, slice_second,
    tensor, window_idempotent, Algebra, Element, Tensor2,
};
use crate::coproduct::{CoassocVariant, Coproduct, Side, Which};
use crate::instance::{Instance, Scope};
use crate::integrals::{check_faithful, check_left_integral, check_right_integral, Functional};
use crate::report::{Check, Classification, Status, Verdict};
use crate::HopfError;

/// An element `y` of `A⊗A` whose canonical-map image is a predicted simple tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftElement {
    pub which: Which,
    pub p: Element,
    pub q: Element,
    pub other: Element,
    /// The element `a` produced from `p`, `q` by slicing with the functional.
    pub a: Element,
    pub y: Tensor2,
    /// The canonical map applied to `y`.
    pub image: Tensor2,
    /// `a⊗c` for T1 and T3, `c⊗a` for T2 and T4.
    pub expected: Tensor2,
}

impl LiftElement {
    pub fn verified(&self) -> bool {
        self.image == self.expected
    }
}

/// The two canonical maps whose regularity a lift for `which` relies on.
pub fn lift_pair(which: Which) -> (Which, Which) {
    match which {
        Which::T1 | Which::T4 => (Which::T1, Which::T4),
        Which::T2 | Which::T3 => (Which::T2, Which::T3),
    }
}

/// Builds the preimage of `a⊗c` (or `c⊗a`) under `which` without Sweedler sums.
///
/// T1 and T3 use a left integral `φ` sliced on the second leg; T2 and T4 use a
/// right integral `ψ` sliced on the first leg.
pub fn build_lift(
    cop: &Coproduct,
    which: Which,
    p: &Element,
    q: &Element,
    c: &Element,
    omega: &Functional,
    scope: &Scope,
) -> Result<LiftElement, HopfError> {
    let (m1, m2) = lift_pair(which);
    cop.require_regular(m1, scope)?;
    cop.require_regular(m2, scope)?;
    lift_unchecked(cop, which, p, q, c, omega)
}

/// [`build_lift`] without the regularity precondition; irregular images surface as errors.
pub(crate) fn lift_unchecked(
    cop: &Coproduct,
    which: Which,
    p: &Element,
    q: &Element,
    c: &Element,
    omega: &Functional,
) -> Result<LiftElement, HopfError> {
    let w = |k: usize| omega.value(k);
    let mut y = Tensor2::new();
    let (a, expected) = match which {
        Which::T1 => {
            for ((r, s), coef) in cop.t_apply(Which::T4, &tensor(c, q))?.iter() {
                for ((u, v), d) in cop
                    .t_apply(Which::T1, &tensor(p, &SparseVec::basis(*s)))?
                    .iter()
                {
                    y.add_term((*u, *r), coef * d * w(*v));
                }
            }
            let a = slice_second(&cop.t_apply(Which::T1, &tensor(p, q))?, w);
            let e = tensor(&a, c);
            (a, e)
        }
        Which::T2 => {
            for ((r, s), coef) in cop.t_apply(Which::T3, &tensor(p, c))?.iter() {
                for ((u, v), d) in cop
                    .t_apply(Which::T2, &tensor(&SparseVec::basis(*r), q))?
                    .iter()
                {
                    y.add_term((*s, *v), coef * d * w(*u));
                }
            }
            let a = slice_first(&cop.t_apply(Which::T2, &tensor(p, q))?, w);
            let e = tensor(c, &a);
            (a, e)
        }
        Which::T3 => {
            for ((r, s), coef) in cop.t_apply(Which::T2, &tensor(c, p))?.iter() {
                for ((u, v), d) in cop
                    .t_apply(Which::T3, &tensor(q, &SparseVec::basis(*s)))?
                    .iter()
                {
                    y.add_term((*u, *r), coef * d * w(*v));
                }
            }
            let a = slice_second(&cop.t_apply(Which::T3, &tensor(q, p))?, w);
            let e = tensor(&a, c);
            (a, e)
        }
        Which::T4 => {
            for ((r, s), coef) in cop.t_apply(Which::T1, &tensor(q, c))?.iter() {
                for ((u, v), d) in cop
                    .t_apply(Which::T4, &tensor(&SparseVec::basis(*r), p))?
                    .iter()
                {
                    y.add_term((*s, *v), coef * d * w(*u));
                }
            }
            let a = slice_first(&cop.t_apply(Which::T4, &tensor(q, p))?, w);
            let e = tensor(c, &a);
            (a, e)
        }
    };
    let image = cop.t_apply(which, &y)?;
    Ok(LiftElement {
        which,
        p: p.clone(),
        q: q.clone(),
        other: c.clone(),
        a,
        y,
        image,
        expected,
    })
}

/// The integral hypothesis that makes `which` injective, as `(integral side, faithful side)`.
pub fn injectivity_hypothesis(which: Which) -> (Side, Side) {
    match which {
        Which::T1 => (Side::Right, Side::Right),
        Which::T2 => (Side::Left, Side::Left),
        Which::T3 => (Side::Right, Side::Left),
        Which::T4 => (Side::Left, Side::Right),
    }
}

fn has_role(
    cop: &Coproduct,
    f: &Functional,
    integral: Side,
    faithful: Side,
    scope: &Scope,
) -> bool {
    let is_integral = match integral {
        Side::Left => matches!(check_left_integral(cop, f, scope), Ok(None)),
        Side::Right => matches!(check_right_integral(cop, f, scope), Ok(None)),
    };
    if !is_integral {
        return false;
    }
    let rep = check_faithful(cop.algebra(), f, scope);
    match faithful {
        Side::Left => rep.left,
        Side::Right => rep.right,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InjectivityReport {
    pub which: Which,
    pub hypothesis_met: bool,
    /// Kernel basis; for windowed algebras, kernel vectors supported on the window.
    pub kernel: Vec<Tensor2>,
    pub windowed: bool,
}

impl InjectivityReport {
    pub fn injective(&self) -> bool {
        self.kernel.is_empty()
    }
}

fn window_pairs(keys: &[usize]) -> Vec<(usize, usize)> {
    keys.iter()
        .flat_map(|i| keys.iter().map(move |j| (*i, *j)))
        .collect()
}

/// Kernel of a regular canonical map: from its matrix for dense algebras, from
/// relations among window images otherwise.
pub fn kernel_of(cop: &Coproduct, which: Which, scope: &Scope) -> Result<Vec<Tensor2>, HopfError> {
    cop.require_regular(which, scope)?;
    if let Some(n) = cop.algebra().dim() {
        let m = cop.t_matrix(which)?;
        return Ok(m
            .kernel_basis()
            .into_iter()
            .map(|v| v.map_keys(|k| (k / n, k % n)))
            .collect());
    }
    let pairs = window_pairs(&scope.inputs);
    let mut span = Span::new();
    for (i, j) in &pairs {
        span.insert(cop.t_basis(which, *i, *j)?);
    }
    Ok(span
        .relations()
        .iter()
        .map(|r| r.map_keys(|g| pairs[*g]))
        .collect())
}

/// Computes the kernel of `which` and asserts that it vanishes when `integral` has the required roles.
pub fn check_injectivity(
    cop: &Coproduct,
    which: Which,
    integral: Option<&Functional>,
    scope: &Scope,
) -> Result<InjectivityReport, HopfError> {
    let (side, faithful) = injectivity_hypothesis(which);
    let hypothesis_met = integral.is_some_and(|f| has_role(cop, f, side, faithful, scope));
    let kernel = kernel_of(cop, which, scope)?;
    if hypothesis_met && !kernel.is_empty() {
        return Err(HopfError::Inconsistency(format!(
            "{which} has a kernel vector {} although its integral hypothesis holds",
            cop.algebra().format_tensor(&kernel[0])
        )));
    }
    Ok(InjectivityReport {
        which,
        hypothesis_met,
        kernel,
        windowed: scope.windowed,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BijectivityReport {
    pub which: Which,
    pub hypothesis_met: bool,
    /// Matrix rank for dense algebras.
    pub rank: Option<usize>,
    pub injective: bool,
    pub surjective: bool,
    pub windowed: bool,
}

impl BijectivityReport {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Faithfulness sides demanded of `(φ, ψ)` for bijectivity of `which`.
pub fn bijectivity_hypothesis(which: Which) -> (Side, Side) {
    match which {
        Which::T1 | Which::T2 => (Side::Left, Side::Right),
        Which::T3 | Which::T4 => (Side::Right, Side::Left),
    }
}

/// Rank and kernel test of bijectivity; the integral hypothesis, when met, must imply it.
pub fn check_bijectivity(
    cop: &Coproduct,
    which: Which,
    phi: Option<&Functional>,
    psi: Option<&Functional>,
    scope: &Scope,
) -> Result<BijectivityReport, HopfError> {
    let (m1, m2) = lift_pair(which);
    let pair_regular = cop.check_regular(m1, scope).holds() && cop.check_regular(m2, scope).holds();
    let (phi_side, psi_side) = bijectivity_hypothesis(which);
    let hypothesis_met = pair_regular
        && phi.is_some_and(|f| has_role(cop, f, Side::Left, phi_side, scope))
        && psi.is_some_and(|f| has_role(cop, f, Side::Right, psi_side, scope));
    cop.require_regular(which, scope)?;
    let report = if let Some(n) = cop.algebra().dim() {
        let rank = cop.t_matrix(which)?.rank();
        BijectivityReport {
            which,
            hypothesis_met,
            rank: Some(rank),
            injective: rank == n * n,
            surjective: rank == n * n,
            windowed: false,
        }
    } else {
        let injective = kernel_of(cop, which, scope)?.is_empty();
        let mut span = Span::new();
        for (i, j) in window_pairs(&scope.closure) {
            if let Some(img) = cop.t_image(which, i, j) {
                span.insert(img);
            }
        }
        let surjective = window_pairs(&scope.inputs)
            .into_iter()
            .all(|k| span.contains(&SparseVec::basis(k)));
        BijectivityReport {
            which,
            hypothesis_met,
            rank: None,
            injective,
            surjective,
            windowed: true,
        }
    };
    if hypothesis_met && !report.bijective() {
        return Err(HopfError::Inconsistency(format!(
            "{which} is not bijective although its hypotheses hold"
        )));
    }
    Ok(report)
}

/// Which canonical maps a classification may rely on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Route {
    #[default]
    Auto,
    /// Only T1 and T4.
    LeftOnly,
    /// Only T2 and T3.
    RightOnly,
}

/// Integral names with a given integral side and faithful side.
#[derive(Clone, Debug, Default)]
struct Roles {
    left_faithful_left: Vec<String>,
    right_faithful_left: Vec<String>,
    left_faithful_right: Vec<String>,
    right_faithful_right: Vec<String>,
}

fn label_triple(alg: &Algebra, t: (usize, usize, usize)) -> String {
    format!(
        "({}, {}, {})",
        alg.label(t.0),
        alg.label(t.1),
        alg.label(t.2)
    )
}

fn label_pair(alg: &Algebra, t: (usize, usize)) -> String {
    format!("({}, {})", alg.label(t.0), alg.label(t.1))
}

/// Algebra and coproduct axioms shared by both pipelines; returns whether all passed.
pub(crate) fn structural_checks(
    cop: &Coproduct,
    scope: &Scope,
    ev: &mut Vec<Check>,
) -> Result<[bool; 4], HopfError> {
    let alg = cop.algebra();
    let w = scope.windowed;
    let assoc = check_associative(alg, &scope.inputs);
    let mut c = Check::outcome(
        "algebra.associative",
        "product is associative",
        assoc.is_ok(),
        w,
    );
    if let Err(t) = assoc {
        c = c.with_witness(label_triple(alg, t));
    }
    ev.push(c);
    let nd = check_nondegenerate(alg, &scope.inputs);
    let mut c = Check::outcome(
        "algebra.nondegenerate",
        "product is non-degenerate",
        nd.passed(),
        w,
    );
    if let Some(x) = nd.left_witness.as_ref().or(nd.right_witness.as_ref()) {
        c = c.with_witness(alg.format_element(x));
    }
    ev.push(c);
    let hom = cop.check_homomorphism(scope);
    let mut c = Check::outcome(
        "coproduct.homomorphism",
        "coproduct is multiplicative",
        hom.is_ok(),
        w,
    );
    if let Err(t) = hom {
        c = c.with_witness(label_pair(alg, t));
    }
    ev.push(c);
    let mut regular = [false; 4];
    for which in Which::ALL {
        let r = cop.check_regular(which, scope);
        regular[which.slot()] = r.holds();
        let mut c = Check::outcome(
            format!("coproduct.regular.{which}"),
            format!("{which} maps into A⊗A"),
            r.holds(),
            w,
        );
        if let crate::coproduct::Regularity::No { witness } = r {
            c = c.with_witness(label_pair(alg, witness));
        }
        ev.push(c);
    }
    for variant in CoassocVariant::ALL {
        let (m1, m2) = variant.maps();
        let id = format!("coproduct.coassoc.{}", variant.name());
        let rule = format!("coassociativity through {m1} and {m2}");
        if !(regular[m1.slot()] && regular[m2.slot()]) {
            ev.push(
                Check::new(id, rule, Status::Skipped)
                    .with_detail(format!("{m1} or {m2} is not regular")),
            );
            continue;
        }
        let out = cop.check_coassoc(variant, scope)?;
        let mut c = Check::outcome(id, rule, out.is_none(), w);
        if let Some(t) = out {
            c = c.with_witness(label_triple(alg, t));
        }
        ev.push(c);
    }
    Ok(regular)
}

/// Whether every structural check that ran passed and at least one coassociativity variant was checked.
pub(crate) fn structure_ok(ev: &[Check]) -> bool {
    let coassoc_ran = ev
        .iter()
        .any(|c| c.id.starts_with("coproduct.coassoc.") && c.status != Status::Skipped);
    coassoc_ran
        && ev
            .iter()
            .filter(|c| {
                c.id.starts_with("algebra.")
                    || c.id == "coproduct.homomorphism"
                    || c.id.starts_with("coproduct.coassoc.")
            })
            .all(|c| c.status != Status::Fail)
}

fn integral_checks(
    inst: &Instance,
    scope: &Scope,
    ev: &mut Vec<Check>,
) -> Result<Roles, HopfError> {
    let cop = &inst.coproduct;
    let alg = cop.algebra();
    let w = scope.windowed;
    let mut roles = Roles::default();
    for (side, names) in [
        (Side::Left, &inst.left_integrals),
        (Side::Right, &inst.right_integrals),
    ] {
        for name in names {
            let f = inst.functional(name)?;
            let id = format!("integral.{side}.{name}");
            let outcome = match side {
                Side::Left => check_left_integral(cop, f, scope),
                Side::Right => check_right_integral(cop, f, scope),
            };
            let is_integral = match outcome {
                Ok(None) => {
                    ev.push(Check::passed(id, format!("{name} is a {side} integral"), w));
                    true
                }
                Ok(Some((a, c, c2))) => {
                    ev.push(
                        Check::new(id, format!("{name} is a {side} integral"), Status::Fail)
                            .with_witness(format!("a={a}, c={c}, c'={c2}")),
                    );
                    false
                }
                Err(e) => {
                    ev.push(
                        Check::new(id, format!("{name} is a {side} integral"), Status::Skipped)
                            .with_detail(e.to_string()),
                    );
                    false
                }
            };
            let rep = check_faithful(alg, f, scope);
            for (fside, ok, wit) in [
                (Side::Left, rep.left, &rep.left_witness),
                (Side::Right, rep.right, &rep.right_witness),
            ] {
                let fid = format!("faithful.{fside}.{name}");
                if ev.iter().any(|c| c.id == fid) {
                    continue;
                }
                let mut c = Check::outcome(fid, format!("{name} is {fside} faithful"), ok, w);
                if let Some(x) = wit {
                    c = c.with_witness(alg.format_element(x));
                }
                ev.push(c);
            }
            if is_integral {
                let bucket = match (side, rep.left, rep.right) {
                    (Side::Left, l, r) => {
                        if l {
                            roles.left_faithful_left.push(name.clone());
                        }
                        if r {
                            roles.right_faithful_left.push(name.clone());
                        }
                        continue;
                    }
                    (Side::Right, l, r) => (l, r),
                };
                if bucket.0 {
                    roles.left_faithful_right.push(name.clone());
                }
                if bucket.1 {
                    roles.right_faithful_right.push(name.clone());
                }
            }
        }
    }
    let hyps = [
        (
            "left-faithful-left-integral",
            &roles.left_faithful_left,
            "a left integral that is left faithful",
        ),
        (
            "right-faithful-right-integral",
            &roles.right_faithful_right,
            "a right integral that is right faithful",
        ),
        (
            "right-faithful-left-integral",
            &roles.right_faithful_left,
            "a left integral that is right faithful",
        ),
        (
            "left-faithful-right-integral",
            &roles.left_faithful_right,
            "a right integral that is left faithful",
        ),
    ];
    for (id, names, rule) in hyps {
        let c = Check::outcome(format!("hypothesis.{id}"), rule, !names.is_empty(), w);
        ev.push(if names.is_empty() {
            c
        } else {
            c.with_detail(names.join(", "))
        });
    }
    Ok(roles)
}

/// Fullness, `A = A²` and `Δ(A)(A⊗A) = A⊗A` on the scope; `None` entries could not be evaluated.
pub(crate) fn automatic_checks(cop: &Coproduct, scope: &Scope) -> Result<Vec<Check>, HopfError> {
    let alg = cop.algebra();
    let w = scope.windowed;
    let mut out = Vec::new();
    match cop.check_full(scope) {
        Ok(full) => out.push(Check::outcome(
            "auto.full",
            "both legs are all of A",
            full,
            w,
        )),
        Err(e) => out.push(
            Check::new("auto.full", "both legs are all of A", Status::Skipped)
                .with_detail(e.to_string()),
        ),
    }
    let idem = match alg.dim() {
        Some(_) => check_idempotent_algebra(alg)?,
        None => window_idempotent(alg, &scope.inputs, &scope.closure),
    };
    out.push(Check::outcome(
        "auto.idempotent",
        "products span A",
        idem,
        w,
    ));
    let mut span = Span::new();
    for &a in &scope.closure {
        for &x in &scope.closure {
            for &y in &scope.closure {
                span.insert(cop.delta_left(a, x, y));
            }
        }
    }
    let nondeg = window_pairs(&scope.inputs)
        .into_iter()
        .all(|k| span.contains(&SparseVec::basis(k)));
    out.push(Check::outcome(
        "auto.delta-nondegenerate",
        "Δ(A)(A⊗A) spans A⊗A",
        nondeg,
        w,
    ));
    Ok(out)
}

fn lift_check(
    cop: &Coproduct,
    which: Which,
    omega: &Functional,
    scope: &Scope,
) -> Result<Option<(usize, usize, usize)>, HopfError> {
    let (m1, m2) = lift_pair(which);
    cop.require_regular(m1, scope)?;
    cop.require_regular(m2, scope)?;
    for &p in &scope.inputs {
        let pv = SparseVec::basis(p);
        for &q in &scope.inputs {
            let qv = SparseVec::basis(q);
            for &c in &scope.inputs {
                if !lift_unchecked(cop, which, &pv, &qv, &SparseVec::basis(c), omega)?.verified() {
                    return Ok(Some((p, q, c)));
                }
            }
        }
    }
    Ok(None)
}

/// Classifies an instance as a (multiplier) Hopf algebra, using all available canonical maps.
pub fn classify(inst: &Instance) -> Result<Classification, HopfError> {
    classify_with(inst, Route::Auto)
}

pub fn classify_with(inst: &Instance, route: Route) -> Result<Classification, HopfError> {
    let cop = &inst.coproduct;
    let alg = cop.algebra();
    let scope = inst.scope();
    let w = scope.windowed;
    let mut ev = Vec::new();
    let mut notes = Vec::new();
    let regular = structural_checks(cop, &scope, &mut ev)?;
    let structure = structure_ok(&ev);
    let roles = integral_checks(inst, &scope, &mut ev)?;
    let pick = |names: &Vec<String>| names.first().map(|n| inst.functional(n)).transpose();
    let phi_l = pick(&roles.left_faithful_left)?;
    let phi_r = pick(&roles.right_faithful_left)?;
    let psi_r = pick(&roles.right_faithful_right)?;
    let psi_l = pick(&roles.left_faithful_right)?;
    let any_left = inst.left_integral_set()?.first().copied();
    let any_right = inst.right_integral_set()?.first().copied();

    let mut bijective = [false; 4];
    for which in Which::ALL {
        if !regular[which.slot()] {
            continue;
        }
        let (side, faithful) = injectivity_hypothesis(which);
        let integral = match (side, faithful) {
            (Side::Right, Side::Right) => psi_r.or(any_right),
            (Side::Left, Side::Left) => phi_l.or(any_left),
            (Side::Right, Side::Left) => psi_l.or(any_right),
            (Side::Left, Side::Right) => phi_r.or(any_left),
        };
        let inj = check_injectivity(cop, which, integral, &scope)?;
        let mut c = Check::outcome(
            format!("injective.{which}"),
            format!("{which} is injective"),
            inj.injective(),
            w,
        )
        .with_detail(format!("kernel dimension {}", inj.kernel.len()));
        if let Some(k) = inj.kernel.first() {
            c = c.with_witness(alg.format_tensor(k));
        }
        ev.push(c);
        let (ps, qs) = bijectivity_hypothesis(which);
        let phi = if ps == Side::Left { phi_l } else { phi_r };
        let psi = if qs == Side::Right { psi_r } else { psi_l };
        let bij = check_bijectivity(cop, which, phi.or(any_left), psi.or(any_right), &scope)?;
        bijective[which.slot()] = bij.bijective();
        let mut c = Check::outcome(
            format!("bijective.{which}"),
            format!("{which} is bijective"),
            bij.bijective(),
            w,
        );
        if let Some(r) = bij.rank {
            c = c.with_detail(format!("rank {r}"));
        }
        ev.push(c);
    }

    for which in Which::ALL {
        let (m1, m2) = lift_pair(which);
        let omega = match which {
            Which::T1 | Which::T3 => phi_l.or(phi_r),
            Which::T2 | Which::T4 => psi_r.or(psi_l),
        };
        let id = format!("lift.{which}");
        let rule = format!("explicit preimages under {which}");
        match omega {
            Some(f) if structure && regular[m1.slot()] && regular[m2.slot()] => {
                let out = lift_check(cop, which, f, &scope)?;
                let mut c = Check::outcome(id, rule, out.is_none(), w)
                    .with_detail(format!("functional {}", f.name));
                if let Some(t) = out {
                    c = c.with_witness(label_triple(alg, t));
                }
                ev.push(c);
            }
            _ => ev.push(
                Check::new(id, rule, Status::Skipped)
                    .with_detail("needs a coproduct, both maps regular and a faithful integral"),
            ),
        }
    }

    let automatic = automatic_checks(cop, &scope)?;
    let lfl = !roles.left_faithful_left.is_empty();
    let rfr = !roles.right_faithful_right.is_empty();
    let rfl = !roles.right_faithful_left.is_empty();
    let lfr = !roles.left_faithful_right.is_empty();
    let all_faithful = lfl && rfr && rfl && lfr;
    let unital = alg.unit().is_some();
    let all_regular = regular.iter().all(|r| *r);
    let left_pair = regular[0] && regular[3];
    let right_pair = regular[1] && regular[2];

    let full_route = matches!(route, Route::Auto) && all_regular && lfl && rfr;
    let verdict = if !structure {
        Verdict::Fail
    } else if full_route {
        match (unital, rfl && lfr) {
            (true, true) => Verdict::HopfInvertibleS,
            (true, false) => Verdict::Hopf,
            (false, true) => Verdict::RegularMultiplierHopf,
            (false, false) => Verdict::MultiplierHopf,
        }
    } else if !matches!(route, Route::RightOnly) && left_pair && all_faithful {
        notes.push("with faithful integrals a left multiplier Hopf algebra is a regular multiplier Hopf algebra: upgrade to RegularMultiplierHopf".into());
        Verdict::LeftMHA
    } else if !matches!(route, Route::LeftOnly) && right_pair && all_faithful {
        notes.push("with faithful integrals a right multiplier Hopf algebra is a regular multiplier Hopf algebra: upgrade to RegularMultiplierHopf".into());
        Verdict::RightMHA
    } else {
        Verdict::Fail
    };

    if verdict != Verdict::Fail {
        let needed: &[Which] = match verdict {
            Verdict::LeftMHA => &[Which::T1, Which::T4],
            Verdict::RightMHA => &[Which::T2, Which::T3],
            Verdict::Hopf | Verdict::MultiplierHopf => &[Which::T1, Which::T2],
            _ => &Which::ALL,
        };
        for which in needed {
            if !bijective[which.slot()] {
                return Err(HopfError::Inconsistency(format!(
                    "verdict {verdict} reached but {which} is not bijective"
                )));
            }
        }
        if let Some(bad) = automatic.iter().find(|c| c.status == Status::Fail) {
            if !w {
                return Err(HopfError::Inconsistency(format!(
                    "verdict {verdict} reached but {} fails",
                    bad.id
                )));
            }
            notes.push(format!("{} fails on the window", bad.id));
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
    Ok(Classification {
        verdict,
        window_verified: w && verdict != Verdict::Fail,
        evidence: ev,
        notes,
    })
}

/// A linear map prescribed on a spanning family of generators.
///
/// Each generator carries a vector and a prescribed value; the map is well
/// defined exactly when every linear relation among the generators sends the
/// values to zero.
#[derive(Clone, Debug)]
pub struct Prescribed<K: Ord + Clone> {
    span: Span<usize>,
    values: Vec<SparseVec<K>>,
    /// First relation whose values do not cancel.
    conflict: Option<SparseVec<usize>>,
}

impl<K: Ord + Clone> Default for Prescribed<K> {
    fn default() -> Self {
        Prescribed {
            span: Span::new(),
            values: Vec::new(),
            conflict: None,
        }
    }
}

impl<K: Ord + Clone> Prescribed<K> {
    pub fn push(&mut self, v: Element, value: SparseVec<K>) {
        self.values.push(value);
        if !self.span.insert(v) && self.conflict.is_none() {
            let rel = self
                .span
                .relations()
                .last()
                .expect("dependent insert records a relation")
                .clone();
            if !self.combine(&rel).is_zero() {
                self.conflict = Some(rel);
            }
        }
    }

    fn combine(&self, coeffs: &SparseVec<usize>) -> SparseVec<K> {
        let mut out = SparseVec::new();
        for (g, c) in coeffs.iter() {
            out.axpy(c, &self.values[*g]);
        }
        out
    }

    pub fn consistent(&self) -> bool {
        self.conflict.is_none()
    }

    pub fn conflict(&self) -> Option<&SparseVec<usize>> {
        self.conflict.as_ref()
    }

    pub fn generator_count(&self) -> usize {
        self.values.len()
    }

    pub fn relation_count(&self) -> usize {
        self.span.relations().len()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.span.contains(x)
    }

    pub fn eval(&self, x: &Element) -> Option<SparseVec<K>> {
        self.span.express(x).map(|c| self.combine(&c))
    }
}

/// Well-definedness record of a construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub generators: usize,
    pub relations: usize,
    pub consistent: bool,
    /// The generator pairs of a relation whose prescribed values do not cancel.
    pub witness: Option<String>,
    pub hypotheses_met: bool,
}

fn certificate<K: Ord + Clone>(
    alg: &Algebra,
    sys: &Prescribed<K>,
    gens: &[(usize, usize)],
    hypotheses_met: bool,
) -> Certificate {
    Certificate {
        generators: sys.generator_count(),
        relations: sys.relation_count(),
        consistent: sys.consistent(),
        witness: sys.conflict().map(|r| {
            r.iter()
                .map(|(g, c)| format!("{c}·({}, {})", alg.label(gens[*g].0), alg.label(gens[*g].1)))
                .collect::<Vec<_>>()
                .join(" + ")
        }),
        hypotheses_met,
    }
}

/// Basis elements a construction is tabulated on.
fn domain_keys(scope: &Scope) -> &[usize] {
    &scope.closure
}

/// A counit reconstructed on one leg.
#[derive(Clone, Debug, PartialEq)]
pub struct CounitMap {
    pub side: Side,
    /// Values on `domain`; zero elsewhere.
    pub functional: Functional,
    /// Basis elements lying in the leg on which the counit is tabulated.
    pub domain: Vec<usize>,
    pub certificate: Certificate,
    pub windowed: bool,
}

impl CounitMap {
    pub fn value(&self, x: &Element) -> Scalar {
        self.functional.apply(x)
    }
}

fn counit(
    cop: &Coproduct,
    side: Side,
    omega: &Functional,
    hypotheses_met: bool,
    scope: &Scope,
) -> Result<CounitMap, HopfError> {
    let alg = cop.algebra();
    let map = match side {
        Side::Left => Which::T1,
        Side::Right => Which::T4,
    };
    cop.require_regular(map, scope)?;
    let gens: Vec<(usize, usize)> = domain_keys(scope)
        .iter()
        .flat_map(|p| scope.inputs.iter().map(move |q| (*p, *q)))
        .collect();
    let mut sys: Prescribed<()> = Prescribed::default();
    for &(p, q) in &gens {
        let v = match side {
            Side::Left => slice_second(&cop.t_basis(Which::T1, p, q)?, |k| omega.value(k)),
            Side::Right => slice_first(&cop.t_basis(Which::T4, q, p)?, |k| omega.value(k)),
        };
        let val = omega.apply(&alg.mul_basis(p, q));
        sys.push(v, SparseVec::term((), val));
    }
    let cert = certificate(alg, &sys, &gens, hypotheses_met);
    if hypotheses_met && !cert.consistent {
        return Err(HopfError::Inconsistency(format!(
            "counit system is inconsistent: {}",
            cert.witness.unwrap_or_default()
        )));
    }
    let mut values = BTreeMap::new();
    let mut domain = Vec::new();
    for &k in domain_keys(scope) {
        if let Some(v) = sys.eval(&SparseVec::basis(k)) {
            domain.push(k);
            values.insert(k, v.get(&()));
        }
    }
    let name = match side {
        Side::Left => "epsilon",
        Side::Right => "epsilon'",
    };
    Ok(CounitMap {
        side,
        functional: Functional::from_values(name, values),
        domain,
        certificate: cert,
        windowed: scope.windowed,
    })
}

/// `ε((ι⊗φ)(Δ(p)(1⊗q))) = φ(pq)` on the left leg.
pub fn construct_counit_left(
    cop: &Coproduct,
    phi: &Functional,
    psi: Option<&Functional>,
    scope: &Scope,
) -> Result<CounitMap, HopfError> {
    let regular =
        cop.check_regular(Which::T1, scope).holds() && cop.check_regular(Which::T4, scope).holds();
    let met = regular
        && has_role(cop, phi, Side::Left, Side::Left, scope)
        && psi.is_some_and(|f| has_role(cop, f, Side::Right, Side::Right, scope));
    counit(cop, Side::Left, phi, met, scope)
}

/// `ε′((ψ⊗ι)(Δ(p)(q⊗1))) = ψ(pq)` on the right leg.
pub fn construct_counit_right(
    cop: &Coproduct,
    psi: &Functional,
    phi: Option<&Functional>,
    scope: &Scope,
) -> Result<CounitMap, HopfError> {
    let regular =
        cop.check_regular(Which::T1, scope).holds() && cop.check_regular(Which::T4, scope).holds();
    let met = regular
        && has_role(cop, psi, Side::Right, Side::Left, scope)
        && phi.is_some_and(|f| has_role(cop, f, Side::Left, Side::Right, scope));
    counit(cop, Side::Right, psi, met, scope)
}

/// `(ε⊗ι)(Δ(a)(1⊗b)) = ab` for the left counit, `(ι⊗ε′)(Δ(a)(c⊗1)) = ac` for the right one.
pub fn verify_counit(
    cop: &Coproduct,
    eps: &CounitMap,
    scope: &Scope,
) -> Result<Option<(usize, usize)>, HopfError> {
    let alg = cop.algebra();
    let known = |x: &Element| x.keys().all(|k| eps.domain.contains(k));
    for &a in &scope.inputs {
        for &b in &scope.inputs {
            let (img, target) = match eps.side {
                Side::Left => (cop.t_basis(Which::T1, a, b)?, alg.mul_basis(a, b)),
                Side::Right => (cop.t_basis(Which::T4, b, a)?, alg.mul_basis(a, b)),
            };
            let legs_known = match eps.side {
                Side::Left => crate::algebra::first_legs(&img).iter().all(known),
                Side::Right => crate::algebra::second_legs(&img).iter().all(known),
            };
            let got = match eps.side {
                Side::Left => slice_first(&img, |k| eps.functional.value(k)),
                Side::Right => slice_second(&img, |k| eps.functional.value(k)),
            };
            if !legs_known || got != target {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum SlotKey {
    /// Coefficient of `e_out` in `S(·)e_x`.
    Action(usize, usize),
    /// Coefficient of `e_out` in `S(·)` as an element.
    Element(usize),
}

/// The antipode on the left leg, as a left multiplier and, when possible, as an element.
#[derive(Debug)]
pub struct AntipodeMap<'a> {
    cop: &'a Coproduct,
    phi: Functional,
    scope: Scope,
    /// Elements `x` on which the left action is tabulated.
    actions: Vec<usize>,
    element_form: bool,
    system: Prescribed<SlotKey>,
    generators: Vec<(usize, usize)>,
    p_radius: usize,
    /// Single-entry changes applied after construction: `S(e_k) += patch`.
    patches: BTreeMap<usize, Element>,
    pub certificate: Certificate,
}

impl<'a> AntipodeMap<'a> {
    fn generator_value(
        &self,
        p: usize,
        q: usize,
    ) -> Result<(Element, SparseVec<SlotKey>), HopfError> {
        let cop = self.cop;
        let alg = cop.algebra();
        let phi = |k: usize| self.phi.value(k);
        let a = slice_second(&cop.t_basis(Which::T1, p, q)?, phi);
        let mut value = SparseVec::new();
        let pv = SparseVec::basis(p);
        for &x in &self.actions {
            let t = cop.t_basis(Which::T4, x, q)?;
            let t = crate::integrals::left_mul_second(alg, &pv, &t);
            for (out, c) in slice_second(&t, phi).into_terms() {
                value.add_term(SlotKey::Action(x, out), c);
            }
        }
        if self.element_form {
            for (out, c) in slice_second(&cop.t_basis(Which::T3, q, p)?, phi).into_terms() {
                value.add_term(SlotKey::Element(out), c);
            }
        }
        Ok((a, value))
    }

    fn add_generators(&mut self, ps: Vec<usize>) -> Result<(), HopfError> {
        for p in ps {
            for qi in 0..self.scope.inputs.len() {
                let q = self.scope.inputs[qi];
                let (a, value) = self.generator_value(p, q)?;
                self.generators.push((p, q));
                self.system.push(a, value);
            }
        }
        self.certificate = certificate(
            self.cop.algebra(),
            &self.system,
            &self.generators,
            self.certificate.hypotheses_met,
        );
        if self.certificate.hypotheses_met && !self.certificate.consistent {
            return Err(HopfError::Inconsistency(format!(
                "antipode system is inconsistent: {}",
                self.certificate.witness.clone().unwrap_or_default()
            )));
        }
        Ok(())
    }

    /// Adds generators until the left leg covers basis elements of magnitude `radius`.
    pub fn extend_to(&mut self, radius: usize) -> Result<(), HopfError> {
        let alg = self.cop.algebra();
        if alg.is_dense() || radius <= self.p_radius {
            return Ok(());
        }
        let new: Vec<usize> = alg
            .window(radius)
            .into_iter()
            .filter(|p| alg.magnitude(*p) > self.p_radius)
            .collect();
        self.p_radius = radius;
        self.add_generators(new)
    }

    fn basis_value(&mut self, k: usize) -> Result<SparseVec<SlotKey>, HopfError> {
        let e = SparseVec::basis(k);
        if !self.system.contains(&e) {
            let need = self.cop.algebra().magnitude(k) + self.scope.k;
            self.extend_to(need)?;
        }
        self.system.eval(&e).ok_or_else(|| {
            HopfError::Input(format!(
                "{} is not in the left leg",
                self.cop.algebra().label(k)
            ))
        })
    }

    /// `S(v)x` from the tabulated left action.
    pub fn apply_left(&mut self, v: &Element, x: usize) -> Result<Element, HopfError> {
        if !self.actions.contains(&x) {
            return Err(HopfError::Input(format!(
                "left action not tabulated at {}",
                self.cop.algebra().label(x)
            )));
        }
        let alg = self.cop.algebra();
        let mut out = Element::new();
        for (k, c) in v.iter() {
            let val = self.basis_value(*k)?;
            for (key, d) in val.iter() {
                if let SlotKey::Action(xx, o) = key {
                    if *xx == x {
                        out.add_term(*o, c * d);
                    }
                }
            }
            if let Some(p) = self.patches.get(k) {
                out.axpy(c, &alg.multiply(p, &SparseVec::basis(x)));
            }
        }
        Ok(out)
    }

    /// `S(e_k)` as an element of `A`, when T3 is regular.
    pub fn element(&mut self, k: usize) -> Result<Option<Element>, HopfError> {
        if !self.element_form {
            return Ok(None);
        }
        let val = self.basis_value(k)?;
        let mut out: Element = val
            .iter()
            .filter_map(|(key, c)| {
                if let SlotKey::Element(o) = key {
                    Some((*o, c.clone()))
                } else {
                    None
                }
            })
            .collect();
        if let Some(p) = self.patches.get(&k) {
            out = &out + p;
        }
        Ok(Some(out))
    }

    pub fn has_element_form(&self) -> bool {
        self.element_form
    }

    /// Basis elements of the current window lying in the left leg.
    pub fn domain(&self) -> Vec<usize> {
        domain_keys(&self.scope)
            .iter()
            .copied()
            .filter(|k| self.system.contains(&SparseVec::basis(*k)))
            .collect()
    }

    pub fn phi(&self) -> &Functional {
        &self.phi
    }

    /// `n×n` matrix of the element form of a dense antipode; column `k` is `S(e_k)`.
    pub fn element_matrix(&mut self) -> Result<Option<SparseMat>, HopfError> {
        let Some(n) = self.cop.algebra().dim() else {
            return Ok(None);
        };
        if !self.element_form {
            return Ok(None);
        }
        let mut cols = Vec::with_capacity(n);
        for k in 0..n {
            cols.push(self.element(k)?.unwrap_or_default());
        }
        Ok(Some(SparseMat::from_columns(n, cols)?))
    }

    /// Rank test of the element form; `None` when there is no dense element form.
    pub fn is_invertible(&mut self) -> Result<Option<bool>, HopfError> {
        let n = self.cop.algebra().dim();
        Ok(self.element_matrix()?.map(|m| Some(m.rank()) == n))
    }

    /// Changes `S(e_k)` by `delta`, in both forms.
    pub fn corrupt(&mut self, k: usize, delta: Element) {
        let entry = self.patches.entry(k).or_default();
        *entry = &*entry + &delta;
    }
}

/// `S((ι⊗φ)(Δ(p)(1⊗q)))x = (ι⊗φ)((1⊗p)Δ(q)(x⊗1))`, solved over spanning pairs.
pub fn construct_antipode<'a>(
    cop: &'a Coproduct,
    phi: &Functional,
    psi: Option<&Functional>,
    scope: &Scope,
) -> Result<AntipodeMap<'a>, HopfError> {
    cop.require_regular(Which::T1, scope)?;
    cop.require_regular(Which::T4, scope)?;
    let met = has_role(cop, phi, Side::Left, Side::Left, scope)
        && psi.is_some_and(|f| has_role(cop, f, Side::Right, Side::Right, scope));
    let element_form = cop.check_regular(Which::T3, scope).holds();
    let mut map = AntipodeMap {
        cop,
        phi: phi.clone(),
        scope: scope.clone(),
        actions: scope.closure.clone(),
        element_form,
        system: Prescribed::default(),
        generators: Vec::new(),
        p_radius: scope.k,
        patches: BTreeMap::new(),
        certificate: Certificate {
            generators: 0,
            relations: 0,
            consistent: true,
            witness: None,
            hypotheses_met: met,
        },
    };
    map.add_generators(domain_keys(scope).to_vec())?;
    if !cop.algebra().is_dense() {
        map.p_radius = 2 * scope.k;
    }
    Ok(map)
}

/// Outcome of the antipode identities; each entry is a failing pair of labels.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AntipodeAxioms {
    /// `m(R(a⊗b)) = ε(a)b` where `R(a⊗b) = Σ a(1)⊗S(a(2))b`.
    pub law: Option<(String, String)>,
    /// `T1∘R = id`.
    pub t1_after_r: Option<(String, String)>,
    /// `R∘T1 = id`.
    pub r_after_t1: Option<(String, String)>,
    /// Defining formula re-evaluated through the tabulated map on all window pairs.
    pub defining_formula: Option<(String, String)>,
    pub skipped: Option<String>,
    pub windowed: bool,
}

impl AntipodeAxioms {
    pub fn passed(&self) -> bool {
        self.skipped.is_none()
            && self.law.is_none()
            && self.t1_after_r.is_none()
            && self.r_after_t1.is_none()
            && self.defining_formula.is_none()
    }
}

/// `Σ a(1)⊗S(a(2))b` evaluated through `Δ(a)(c⊗1)` for a unit or large enough local unit `c`.
fn r_basis(s: &mut AntipodeMap<'_>, a: usize, b: usize) -> Result<Option<Tensor2>, HopfError> {
    let cop = s.cop;
    let alg = cop.algebra();
    let with = |s: &mut AntipodeMap<'_>, c: &Element| -> Result<Tensor2, HopfError> {
        let t = cop.t_apply(Which::T4, &tensor(c, &SparseVec::basis(a)))?;
        let mut out = Tensor2::new();
        for ((u, v), d) in t.iter() {
            let sb = s.apply_left(&SparseVec::basis(*v), b)?;
            out.axpy(d, &tensor(&SparseVec::basis(*u), &sb));
        }
        Ok(out)
    };
    if let Some(unit) = alg.unit() {
        return with(s, &unit.clone()).map(Some);
    }
    let r = alg.magnitude(a) + alg.magnitude(b) + 1;
    let (Some(small), Some(large)) = (alg.local_unit(r), alg.local_unit(2 * r + 1)) else {
        return Ok(None);
    };
    let x = with(s, &small)?;
    let y = with(s, &large)?;
    Ok((x == y).then_some(x))
}

fn r_apply(s: &mut AntipodeMap<'_>, t: &Tensor2) -> Result<Option<Tensor2>, HopfError> {
    let mut out = Tensor2::new();
    for ((a, b), c) in t.iter() {
        match r_basis(s, *a, *b)? {
            Some(v) => out.axpy(c, &v),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Checks the antipode law and that `R` inverts T1 on window pairs.
pub fn check_antipode_axioms(
    s: &mut AntipodeMap<'_>,
    eps: &CounitMap,
) -> Result<AntipodeAxioms, HopfError> {
    let cop = s.cop;
    let alg = cop.algebra();
    let scope = s.scope.clone();
    let mut out = AntipodeAxioms {
        windowed: scope.windowed,
        ..Default::default()
    };
    if alg.is_dense() && alg.unit().is_none() {
        out.skipped = Some("Δ(a) is not an element of A⊗A for this non-unital algebra".into());
        return Ok(out);
    }
    if eps.side != Side::Left {
        out.skipped = Some("the antipode law uses the counit on the left leg".into());
        return Ok(out);
    }
    let lbl = |a: usize, b: usize| (alg.label(a), alg.label(b));
    for &a in &scope.inputs {
        for &b in &scope.inputs {
            let Some(r) = r_basis(s, a, b)? else {
                out.law.get_or_insert(lbl(a, b));
                continue;
            };
            if out.law.is_none() {
                let m: Element = r.linear_map(|(u, v)| alg.mul_basis(*u, *v));
                if m != SparseVec::basis(b).scale(&eps.functional.value(a)) {
                    out.law = Some(lbl(a, b));
                }
            }
            if out.t1_after_r.is_none() && cop.t_apply(Which::T1, &r)? != SparseVec::basis((a, b)) {
                out.t1_after_r = Some(lbl(a, b));
            }
            if out.r_after_t1.is_none() {
                let t = cop.t_basis(Which::T1, a, b)?;
                if r_apply(s, &t)? != Some(SparseVec::basis((a, b))) {
                    out.r_after_t1 = Some(lbl(a, b));
                }
            }
        }
    }
    let phi = s.phi.clone();
    'pairs: for &p in &scope.inputs {
        for &q in &scope.inputs {
            let a = slice_second(&cop.t_basis(Which::T1, p, q)?, |k| phi.value(k));
            let pv = SparseVec::basis(p);
            for &x in &scope.inputs {
                let t = crate::integrals::left_mul_second(alg, &pv, &cop.t_basis(Which::T4, x, q)?);
                let want = slice_second(&t, |k| phi.value(k));
                if s.apply_left(&a, x)? != want {
                    out.defining_formula = Some(lbl(p, q));
                    break 'pairs;
                }
            }
            if s.has_element_form() {
                let want = slice_second(&cop.t_basis(Which::T3, q, p)?, |k| phi.value(k));
                let mut got = Element::new();
                for (k, c) in a.iter() {
                    got.axpy(c, &s.element(*k)?.unwrap_or_default());
                }
                if got != want {
                    out.defining_formula = Some(lbl(p, q));
                    break 'pairs;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DenseAlgebra;
    use crate::coproduct::{composition_images, grouplike_images, CoproductRule};
    use hopfforge_linalg::int;
    use std::sync::Arc;

    fn group(table: Vec<Vec<usize>>) -> Instance {
        let n = table.len();
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        let prods = table
            .iter()
            .map(|r| r.iter().map(|k| SparseVec::basis(*k)).collect())
            .collect();
        let alg = Arc::new(Algebra::Dense(DenseAlgebra::new(labels, prods).unwrap()));
        let cop = Coproduct::new(alg, CoproductRule::Images(grouplike_images(n))).unwrap();
        let mut inst = Instance::new("group", cop)
            .with_functional(Functional::from_values("phi", [(0, int(1))]));
        inst.left_integrals = vec!["phi".into()];
        inst.right_integrals = vec!["phi".into()];
        inst
    }

    fn cyclic(n: usize) -> Vec<Vec<usize>> {
        (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect()
    }

    fn s3() -> Vec<Vec<usize>> {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| idx([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect()
    }

    fn functions(n: usize, compose: impl Fn(usize, usize) -> usize) -> Instance {
        let labels = (0..n).map(|i| format!("d{i}")).collect();
        let prods = (0..n)
            .map(|i| {
                (0..n)
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
        let cop = Coproduct::new(
            alg,
            CoproductRule::Images(composition_images(n, |g, h| Some(compose(g, h)))),
        )
        .unwrap();
        let mut inst =
            Instance::new("fun", cop).with_functional(Functional::constant("haar", int(1)));
        inst.left_integrals = vec!["haar".into()];
        inst.right_integrals = vec!["haar".into()];
        inst
    }

    #[test]
    fn s3_injective_and_bijective() {
        let inst = group(s3());
        let scope = inst.scope();
        let phi = inst.functional("phi").unwrap();
        for which in Which::ALL {
            let inj = check_injectivity(&inst.coproduct, which, Some(phi), &scope).unwrap();
            assert!(inj.hypothesis_met && inj.injective());
            let bij =
                check_bijectivity(&inst.coproduct, which, Some(phi), Some(phi), &scope).unwrap();
            assert_eq!(bij.rank, Some(36));
            assert!(bij.hypothesis_met && bij.bijective());
        }
    }

    #[test]
    fn one_dimensional_is_injective() {
        let inst = group(vec![vec![0]]);
        let inj = check_injectivity(&inst.coproduct, Which::T1, None, &inst.scope()).unwrap();
        assert!(inj.injective() && !inj.hypothesis_met);
    }

    #[test]
    fn lifts_on_z2() {
        let inst = group(cyclic(2));
        let scope = inst.scope();
        let phi = inst.functional("phi").unwrap();
        let g = SparseVec::basis(1);
        let e = SparseVec::basis(0);
        let lift = build_lift(&inst.coproduct, Which::T1, &g, &g, &e, phi, &scope).unwrap();
        assert!(lift.verified());
        assert_eq!(lift.a, g);
        let zero = Element::new();
        let lift = build_lift(&inst.coproduct, Which::T1, &zero, &g, &e, phi, &scope).unwrap();
        assert!(lift.y.is_zero());
    }

    #[test]
    fn lifts_on_function_algebra() {
        let inst = functions(3, |g, h| (g + h) % 3);
        let scope = inst.scope();
        let haar = inst.functional("haar").unwrap();
        for which in Which::ALL {
            assert_eq!(
                lift_check(&inst.coproduct, which, haar, &scope).unwrap(),
                None,
                "{which}"
            );
        }
    }

    #[test]
    fn classify_group_and_function_algebras() {
        for inst in [
            group(s3()),
            group(cyclic(4)),
            functions(4, |g, h| (g + h) % 4),
        ] {
            let c = classify(&inst).unwrap();
            assert_eq!(
                c.verdict,
                Verdict::HopfInvertibleS,
                "{:?}",
                c.failed_checks().collect::<Vec<_>>()
            );
            assert!(!c.window_verified);
            for id in [
                "auto.full",
                "auto.idempotent",
                "auto.delta-nondegenerate",
                "lift.T1",
                "lift.T4",
            ] {
                assert_eq!(c.check(id).unwrap().status, Status::Pass, "{id}");
            }
        }
    }

    #[test]
    fn restricted_routes() {
        let inst = group(cyclic(3));
        let c = classify_with(&inst, Route::LeftOnly).unwrap();
        assert_eq!(c.verdict, Verdict::LeftMHA);
        assert!(c.notes.iter().any(|n| n.contains("RegularMultiplierHopf")));
        assert_eq!(
            classify_with(&inst, Route::RightOnly).unwrap().verdict,
            Verdict::RightMHA
        );
    }

    #[test]
    fn missing_integral_fails() {
        let mut inst = group(cyclic(2));
        inst.left_integrals.clear();
        let c = classify(&inst).unwrap();
        assert_eq!(c.verdict, Verdict::Fail);
        assert_eq!(
            c.check("hypothesis.left-faithful-left-integral")
                .unwrap()
                .status,
            Status::Fail
        );
    }

    #[test]
    fn counits() {
        let inst = group(cyclic(3));
        let scope = inst.scope();
        let phi = inst.functional("phi").unwrap();
        let eps = construct_counit_left(&inst.coproduct, phi, Some(phi), &scope).unwrap();
        assert!(eps.certificate.consistent && eps.certificate.hypotheses_met);
        assert!((0..3).all(|k| eps.functional.value(k) == int(1)));
        assert_eq!(verify_counit(&inst.coproduct, &eps, &scope).unwrap(), None);
        assert_eq!(
            inst.coproduct
                .check_counit(&eps.functional, &scope)
                .unwrap(),
            None
        );
        let eps2 = construct_counit_right(&inst.coproduct, phi, Some(phi), &scope).unwrap();
        assert_eq!(
            eps2.functional,
            Functional {
                name: "epsilon'".into(),
                ..eps.functional.clone()
            }
        );
        assert_eq!(verify_counit(&inst.coproduct, &eps2, &scope).unwrap(), None);

        let fun = functions(4, |g, h| (g + h) % 4);
        let scope = fun.scope();
        let haar = fun.functional("haar").unwrap();
        let eps = construct_counit_left(&fun.coproduct, haar, Some(haar), &scope).unwrap();
        assert_eq!(eps.functional.values, BTreeMap::from([(0, int(1))]));

        let trivial = group(vec![vec![0]]);
        let phi = trivial.functional("phi").unwrap();
        let eps =
            construct_counit_left(&trivial.coproduct, phi, Some(phi), &trivial.scope()).unwrap();
        assert_eq!(eps.functional.value(0), int(1));
    }

    #[test]
    fn antipode_on_s3_is_inversion() {
        let table = s3();
        let inst = group(table.clone());
        let scope = inst.scope();
        let phi = inst.functional("phi").unwrap();
        let mut s = construct_antipode(&inst.coproduct, phi, Some(phi), &scope).unwrap();
        assert!(s.certificate.consistent);
        for g in 0..6 {
            let inv = (0..6).find(|h| table[g][*h] == 0).unwrap();
            assert_eq!(s.element(g).unwrap(), Some(SparseVec::basis(inv)));
        }
        assert_eq!(s.is_invertible().unwrap(), Some(true));
        let eps = construct_counit_left(&inst.coproduct, phi, Some(phi), &scope).unwrap();
        assert!(check_antipode_axioms(&mut s, &eps).unwrap().passed());
    }

    #[test]
    fn antipode_on_function_algebra() {
        let inst = functions(4, |g, h| (g + h) % 4);
        let scope = inst.scope();
        let haar = inst.functional("haar").unwrap();
        let mut s = construct_antipode(&inst.coproduct, haar, Some(haar), &scope).unwrap();
        for g in 0..4 {
            assert_eq!(s.element(g).unwrap(), Some(SparseVec::basis((4 - g) % 4)));
        }
        let eps = construct_counit_left(&inst.coproduct, haar, Some(haar), &scope).unwrap();
        assert!(check_antipode_axioms(&mut s, &eps).unwrap().passed());
    }

    #[test]
    fn corrupted_antipode_is_caught() {
        let inst = group(cyclic(3));
        let scope = inst.scope();
        let phi = inst.functional("phi").unwrap();
        let eps = construct_counit_left(&inst.coproduct, phi, Some(phi), &scope).unwrap();
        let mut s = construct_antipode(&inst.coproduct, phi, Some(phi), &scope).unwrap();
        s.corrupt(1, SparseVec::basis(0));
        let ax = check_antipode_axioms(&mut s, &eps).unwrap();
        assert!(ax.law.is_some());
        assert!(ax.defining_formula.is_some());
    }
}
