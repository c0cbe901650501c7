//! End-to-end acceptance run. Each criterion prints one line; the test fails
//! when any criterion does. Run with `--nocapture` to see the lines.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use hopfforge::algebra::{mul2, tensor, zigzag_index};
use hopfforge::corpus::{self, InstanceBundle};
use hopfforge::integrals::{scalar_invariance_to_integral, ScalarInvariance};
use hopfforge::ls_engine::{
    check_antipode_axioms, classify, construct_antipode, construct_counit_left,
};
use hopfforge::weak_engine::{
    check_f_identities, check_kernel_formula, check_range_formula, classify_weak, derive_e,
    kernel_formula_span, verify_e, WeakContext,
};
use hopfforge::{
    classify_instance, Element, Functional, Instance, Status, Tensor2, Verdict, Which,
};
use hopfforge_linalg::{int, Scalar, Span, SparseMat, SparseVec};
use num_traits::{One, Zero};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn generate(name: &str) -> InstanceBundle {
    corpus::generate(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// The Hopf instances: four group algebras and their duals.
const GROUPS: [&str; 4] = ["z2", "z3", "z4", "s3"];

fn hopf_names() -> Vec<String> {
    GROUPS
        .iter()
        .flat_map(|g| [g.to_string(), format!("fun-{g}")])
        .collect()
}

/// Group inverses computed from first principles, in corpus index order.
fn inversion_oracle(group: &str) -> Vec<usize> {
    match group {
        "s3" => {
            let perms: [[usize; 3]; 6] = [
                [0, 1, 2],
                [1, 0, 2],
                [0, 2, 1],
                [2, 1, 0],
                [1, 2, 0],
                [2, 0, 1],
            ];
            perms
                .iter()
                .map(|p| {
                    let mut inv = [0; 3];
                    for (i, &x) in p.iter().enumerate() {
                        inv[x] = i;
                    }
                    perms.iter().position(|q| *q == inv).unwrap()
                })
                .collect()
        }
        z => {
            let n: usize = z[1..].parse().unwrap();
            (0..n).map(|k| (n - k) % n).collect()
        }
    }
}

/// Constant 1 on group elements; evaluation at the identity for functions.
fn counit_oracle(name: &str, n: usize) -> Vec<Scalar> {
    if name.starts_with("fun-") {
        (0..n)
            .map(|k| {
                if k == 0 {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            })
            .collect()
    } else {
        vec![Scalar::one(); n]
    }
}

fn group_of(name: &str) -> &str {
    name.strip_prefix("fun-").unwrap_or(name)
}

fn first_left(inst: &Instance) -> &Functional {
    inst.functional(&inst.left_integrals[0]).unwrap()
}

fn criterion_1() -> Outcome {
    let mut slowest = Duration::ZERO;
    for name in hopf_names() {
        let start = Instant::now();
        let inst = generate(&name).instance;
        let n = inst.algebra().dim().unwrap();
        let cop = &inst.coproduct;
        for which in Which::ALL {
            let rank = cop.t_matrix(which).unwrap().rank();
            ensure!(
                rank == n * n,
                "{name}: rank {which} = {rank}, expected {}",
                n * n
            );
        }
        let verdict = classify(&inst).map_err(|e| format!("{name}: {e}"))?.verdict;
        ensure!(
            verdict == Verdict::HopfInvertibleS,
            "{name}: verdict {verdict:?}"
        );
        let scope = inst.scope();
        let phi = first_left(&inst);
        let eps = construct_counit_left(cop, phi, Some(phi), &scope).unwrap();
        let oracle = counit_oracle(&name, n);
        for (k, want) in oracle.iter().enumerate() {
            ensure!(
                eps.functional.value(k) == *want,
                "{name}: counit differs at {k}"
            );
        }
        let mut s = construct_antipode(cop, phi, Some(phi), &scope).unwrap();
        for (k, inv) in inversion_oracle(group_of(&name)).into_iter().enumerate() {
            let got = s.element(k).unwrap();
            ensure!(
                got == Some(SparseVec::basis(inv)),
                "{name}: S({k}) = {got:?}, expected basis {inv}"
            );
        }
        let took = start.elapsed();
        ensure!(took < Duration::from_secs(5), "{name}: took {took:?}");
        slowest = slowest.max(took);
    }
    Ok(format!("8 instances, slowest {slowest:?}"))
}

/// `Σ a(1)S(a(2))b` and `T1(Σ a(1)⊗S(a(2))b)` from the coproduct and the tabulated antipode.
fn antipode_law_directly(inst: &Instance, s: &[Element], eps: &[Scalar]) -> Option<(usize, usize)> {
    let alg = inst.algebra();
    let cop = &inst.coproduct;
    let scope = inst.scope();
    let n = alg.dim().unwrap();
    for a in 0..n {
        let delta = cop.delta_element(a, &scope).unwrap();
        for b in 0..n {
            let bv = SparseVec::basis(b);
            let mut law = Element::new();
            let mut r = Tensor2::new();
            for ((x, y), c) in delta.iter() {
                let sy_b = alg.multiply(&s[*y], &bv);
                law.axpy(c, &alg.multiply(&SparseVec::basis(*x), &sy_b));
                r.axpy(c, &tensor(&SparseVec::basis(*x), &sy_b));
            }
            let mut want = Element::new();
            want.axpy(&eps[a], &bv);
            let back = cop.t_apply(Which::T1, &r).unwrap();
            if law != want || back != SparseVec::basis((a, b)) {
                return Some((a, b));
            }
        }
    }
    None
}

fn criterion_2() -> Outcome {
    for name in hopf_names() {
        let inst = generate(&name).instance;
        let scope = inst.scope();
        let phi = first_left(&inst);
        let n = inst.algebra().dim().unwrap();
        let eps = construct_counit_left(&inst.coproduct, phi, Some(phi), &scope).unwrap();
        let mut s = construct_antipode(&inst.coproduct, phi, Some(phi), &scope).unwrap();
        let axioms = check_antipode_axioms(&mut s, &eps).unwrap();
        ensure!(axioms.passed(), "{name}: {axioms:?}");
        let table: Vec<Element> = (0..n).map(|k| s.element(k).unwrap().unwrap()).collect();
        if let Some((a, b)) = antipode_law_directly(&inst, &table, &counit_oracle(&name, n)) {
            return Err(format!("{name}: antipode law fails at ({a}, {b})"));
        }
    }
    let inst = generate("s3").instance;
    let scope = inst.scope();
    let phi = first_left(&inst);
    let eps = construct_counit_left(&inst.coproduct, phi, Some(phi), &scope).unwrap();
    let mut s = construct_antipode(&inst.coproduct, phi, Some(phi), &scope).unwrap();
    s.corrupt(4, SparseVec::basis(0));
    let axioms = check_antipode_axioms(&mut s, &eps).unwrap();
    ensure!(!axioms.passed(), "corrupted antipode passes");
    let witness = axioms
        .law
        .clone()
        .or(axioms.defining_formula.clone())
        .ok_or("corruption detected without a witness")?;
    Ok(format!(
        "laws hold on 8 instances; corruption of S((012)) caught at {witness:?}"
    ))
}

fn criterion_3() -> Outcome {
    let neg = generate("neg-non-full").instance;
    let full = neg.coproduct.check_full(&neg.scope()).unwrap();
    ensure!(!full, "neg-non-full: check_full is true");
    let c = classify_instance(&neg).unwrap();
    ensure!(
        c.verdict == Verdict::Fail,
        "neg-non-full: verdict {:?}",
        c.verdict
    );
    let unmet = c
        .evidence
        .iter()
        .find(|e| e.id == "integral.left.phi")
        .ok_or("no integral.left.phi check")?;
    ensure!(
        unmet.status == Status::Fail,
        "integral.left.phi is {:?}",
        unmet.status
    );
    ensure!(
        c.notes.iter().any(|n| n.contains("integral.left.phi")),
        "verdict does not name integral.left.phi: {:?}",
        c.notes
    );
    let mut positives = 0;
    for name in corpus::names()
        .into_iter()
        .filter(|n| !n.starts_with("neg-"))
    {
        let inst = generate(&name).instance;
        ensure!(
            inst.coproduct.check_full(&inst.scope()).unwrap(),
            "{name}: not full"
        );
        let c = classify_instance(&inst).unwrap();
        for id in ["auto.full", "auto.idempotent"] {
            let check = c
                .evidence
                .iter()
                .find(|e| e.id == id)
                .ok_or(format!("{name}: no {id}"))?;
            ensure!(check.status.ok(), "{name}: {id} is {:?}", check.status);
        }
        positives += 1;
    }
    Ok(format!(
        "negative fails on integral.left.phi; {positives} positive instances full and idempotent"
    ))
}

/// Arrows `(t, s)` of the pair groupoid on two points at index `2t + s`.
fn pair_arrows() -> Vec<(usize, usize)> {
    (0..2).flat_map(|t| (0..2).map(move |s| (t, s))).collect()
}

fn non_composable_oracle() -> usize {
    let arrows = pair_arrows();
    arrows
        .iter()
        .flat_map(|g| arrows.iter().map(move |h| (g, h)))
        .filter(|(g, h)| g.1 != h.0)
        .count()
}

fn weak_context_parts(name: &str) -> (Instance, Tensor2) {
    let inst = generate(name).instance;
    let e = inst.e.clone().unwrap();
    (inst, e)
}

fn criterion_4() -> Outcome {
    let (inst, e) = weak_context_parts("pair-groupoid-2");
    let (_, ctx) = WeakContext::build(&inst.coproduct, &e).unwrap();
    let ctx = ctx.ok_or("E rejected")?;
    let units = inst.functional("units").unwrap();
    let expected = non_composable_oracle();
    ensure!(expected == 8, "oracle count {expected}");
    let n = inst.algebra().dim().unwrap();
    for which in Which::ALL {
        let t = inst.coproduct.t_matrix(which).unwrap();
        let by_rank = n * n - t.rank();
        ensure!(
            by_rank == expected,
            "{which}: kernel dimension by rank {by_rank}"
        );
        let kernel = Span::from_vectors(
            t.kernel_basis()
                .into_iter()
                .map(|v| v.map_keys(|k| (k / n, k % n))),
        );
        let formula = kernel_formula_span(inst.algebra(), which, ctx.f.get(which));
        ensure!(
            kernel.same_as(&formula),
            "{which}: kernel differs from the F{} span",
            which.index()
        );
        let report = check_kernel_formula(&ctx, which, &[units]).unwrap();
        ensure!(
            report.equal && report.kernel_dim == expected,
            "{which}: {report:?}"
        );
    }
    Ok(format!(
        "dim Ker Ti = {expected} for T1..T4, each equal to its F span"
    ))
}

fn criterion_5() -> Outcome {
    let (inst, e) = weak_context_parts("pair-groupoid-2");
    let alg = inst.algebra();
    let n = alg.dim().unwrap();
    let t1 = inst.coproduct.t_matrix(Which::T1).unwrap();
    let cols = (0..n * n)
        .map(|k| mul2(alg, &e, &SparseVec::basis((k / n, k % n))).map_keys(|(x, y)| x * n + y))
        .collect();
    let by_e = SparseMat::from_columns(n * n, cols).unwrap();
    ensure!(
        t1.column_span().same_as(&by_e.column_span()),
        "range of T1 differs from E(A⊗A)"
    );
    ensure!(
        t1.rank() == 8 && by_e.rank() == 8,
        "ranks {} and {}",
        t1.rank(),
        by_e.rank()
    );
    let (_, ctx) = WeakContext::build(&inst.coproduct, &e).unwrap();
    let ctx = ctx.ok_or("E rejected")?;
    let units = inst.functional("units").unwrap();
    for which in Which::ALL {
        let r = check_range_formula(&ctx, which, &[units], &[units]).unwrap();
        ensure!(r.equal && r.rank_t == 8, "{which}: {r:?}");
        ensure!(
            r.inclusion_hypothesis_met && r.inclusions == [true, true],
            "{which}: inclusions {r:?}"
        );
    }
    Ok("range T1 = E(A⊗A), rank 8; inclusions hold for T1..T4".into())
}

/// `Σ_units u⊗u` for the groupoid algebra and `Σ_{s(g)=t(h)} δ_g⊗δ_h` for functions on it.
fn e_oracle(functions: bool) -> Tensor2 {
    let arrows = pair_arrows();
    let mut e = Tensor2::new();
    for (g, a) in arrows.iter().enumerate() {
        for (h, b) in arrows.iter().enumerate() {
            let hit = if functions {
                a.1 == b.0
            } else {
                g == h && a.0 == a.1
            };
            if hit {
                e.add_term((g, h), Scalar::one());
            }
        }
    }
    e
}

fn criterion_6() -> Outcome {
    for (name, functions) in [("pair-groupoid-2", false), ("fun-pair-groupoid-2", true)] {
        let (inst, supplied) = weak_context_parts(name);
        ensure!(
            supplied == e_oracle(functions),
            "{name}: supplied E differs from the oracle"
        );
        let derived = derive_e(&inst.coproduct).unwrap();
        ensure!(
            derived.as_ref() == Some(&supplied),
            "{name}: derived {derived:?}"
        );
        let (checks, legs) = verify_e(&inst.coproduct, &supplied).unwrap();
        ensure!(legs.is_some(), "{name}: legs not built");
        for id in ["E.S_B-antimultiplicative", "E.S_C-antimultiplicative"] {
            let c = checks
                .iter()
                .find(|c| c.id == id)
                .ok_or(format!("{name}: no {id}"))?;
            ensure!(c.status.ok(), "{name}: {id} is {:?}", c.status);
        }
        let (_, ctx) = WeakContext::build(&inst.coproduct, &supplied).unwrap();
        let ctx = ctx.ok_or(format!("{name}: E rejected"))?;
        let ids = check_f_identities(inst.algebra(), &supplied, &ctx.f).unwrap();
        ensure!(ids == [true; 4], "{name}: F identities {ids:?}");
    }
    Ok("E derived on both groupoid instances; F identities and S_B/S_C checks hold".into())
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for name in hopf_names().into_iter().chain(["trivial".to_string()]) {
        let inst = generate(&name).instance;
        let base = classify(&inst).unwrap().verdict;
        let unit = inst.algebra().unit().unwrap().clone();
        let one = tensor(&unit, &unit);
        let mut weak = inst.clone();
        weak.e = Some(one.clone());
        let got = classify_weak(&weak)
            .map_err(|e| format!("{name}: {e}"))?
            .verdict;
        ensure!(
            got == base,
            "{name}: weak verdict {got:?}, expected {base:?}"
        );
        let (_, ctx) = WeakContext::build(&inst.coproduct, &one).unwrap();
        let ctx = ctx.ok_or(format!("{name}: 1⊗1 rejected"))?;
        let phi = first_left(&inst);
        for which in Which::ALL {
            ensure!(
                ctx.f.get(which) == &one,
                "{name}: F{} is not 1⊗1",
                which.index()
            );
            let k = check_kernel_formula(&ctx, which, &[phi]).unwrap();
            ensure!(k.kernel_dim == 0 && k.equal, "{name}: {which} kernel {k:?}");
        }
        count += 1;
    }
    Ok(format!(
        "{count} instances agree with E = 1⊗1, F_i = 1⊗1, kernels 0"
    ))
}

fn criterion_8() -> Outcome {
    let z3 = generate("z3").instance;
    let delta_e = Functional::from_values("delta-e", [(0, int(1))]);
    match scalar_invariance_to_integral(&z3.coproduct, &delta_e).unwrap() {
        ScalarInvariance::AgreesOnRightLeg {
            everywhere: true,
            lambda,
        } => {
            for k in 0..3 {
                ensure!(lambda.value(k) == delta_e.value(k), "lambda differs at {k}");
            }
        }
        other => return Err(format!("Z3: {other:?}")),
    }
    let z2 = generate("z2").instance;
    let delta_g = Functional::from_values("delta-g", [(1, int(1))]);
    match scalar_invariance_to_integral(&z2.coproduct, &delta_g).unwrap() {
        ScalarInvariance::NotScalarInvariant { witness: 1 } => {}
        other => return Err(format!("Z2: {other:?}")),
    }
    Ok("Z3 delta_e scalar invariant with lambda = phi; Z2 delta_g rejected at g".into())
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let inst = generate("zint-window-8").instance;
    let scope = inst.scope();
    ensure!(scope.windowed, "not windowed");
    let zero = zigzag_index(0);
    ensure!(
        inst.coproduct.delta_element(zero, &scope).is_none(),
        "Δ(δ_0) has an element form"
    );
    let c = classify_instance(&inst).unwrap();
    let mut seen = 0;
    for check in &c.evidence {
        if check.id.starts_with("coproduct.regular.")
            || check.id.starts_with("integral.")
            || check.id.starts_with("faithful.")
        {
            ensure!(
                check.status == Status::WindowPass,
                "{} is {:?}",
                check.id,
                check.status
            );
            seen += 1;
        }
    }
    ensure!(seen >= 6, "only {seen} regularity and integral checks");
    ensure!(
        matches!(
            c.verdict,
            Verdict::MultiplierHopf | Verdict::RegularMultiplierHopf
        ) && c.window_verified,
        "verdict {:?}, window verified {}",
        c.verdict,
        c.window_verified
    );
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(10), "took {took:?}");
    Ok(format!(
        "{:?} (window-verified), {seen} window-pass checks, {took:?}",
        c.verdict
    ))
}

fn corpus_and_verify(dir: &Path) -> Result<(Vec<Vec<u8>>, Vec<u8>), String> {
    let bin = env!("CARGO_BIN_EXE_hopfforge");
    let out = Command::new(bin)
        .args(["corpus", "all", "--out"])
        .arg(dir)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        out.status.success(),
        "corpus exited {:?}",
        out.status.code()
    );
    let names = corpus::names();
    let files: Vec<_> = names
        .iter()
        .map(|n| dir.join(format!("{n}.json")))
        .collect();
    let corpus = files
        .iter()
        .map(std::fs::read)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let out = Command::new(bin)
        .arg("verify")
        .args(&files)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(!out.stdout.is_empty(), "verify printed nothing");
    Ok((corpus, out.stdout))
}

fn criterion_10() -> Outcome {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    let a = corpus_and_verify(first.path())?;
    let b = corpus_and_verify(second.path())?;
    ensure!(a.0 == b.0, "corpus files differ between runs");
    ensure!(a.1 == b.1, "verify reports differ between runs");
    Ok(format!(
        "{} instance files and {} report bytes identical",
        a.0.len(),
        a.1.len()
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Hopf reconstruction", criterion_1),
        ("antipode law", criterion_2),
        ("automatic fullness and idempotency", criterion_3),
        ("weak kernel formula", criterion_4),
        ("weak range formula", criterion_5),
        ("separability structure", criterion_6),
        ("degeneration to E = 1⊗1", criterion_7),
        ("scalar invariance", criterion_8),
        ("non-unital window instance", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
