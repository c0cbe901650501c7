//! Batch front end: instance files in, reports and constructed maps out.

pub mod file;
pub mod report;

use std::path::Path;
use std::time::Instant;

use hopfforge::ls_engine::{
    check_antipode_axioms, construct_antipode, construct_counit_left, verify_counit,
};
use hopfforge::weak_engine::{derive_e, WeakContext};
use hopfforge::{classify_instance, Check, HopfError, Instance, Status};
use hopfforge_linalg::format_scalar;
use serde_json::{json, Value};
use thiserror::Error;

use file::{parse_file, to_json, to_pair_terms, to_terms, InstanceFile};
use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("{path}: {source}")]
    Engine { path: String, source: HopfError },
}

impl CliError {
    /// 2 for unusable input, 1 for engine failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine {
                source: HopfError::Input(_),
                ..
            } => 2,
            CliError::Engine { .. } => 1,
            _ => 2,
        }
    }
}

fn engine(path: &str) -> impl Fn(HopfError) -> CliError + '_ {
    move |source| CliError::Engine {
        path: path.to_string(),
        source,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Overrides the window of supported algebras.
    pub window: Option<usize>,
    pub timings: bool,
}

pub fn load_instance(path: &str, opts: &Options) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })?;
    load_instance_str(path, &text, opts)
}

pub fn load_instance_str(path: &str, text: &str, opts: &Options) -> Result<Instance, CliError> {
    let mut inst = parse_file(path, text)?.to_instance(path)?;
    if let Some(w) = opts.window {
        inst.window = w;
    }
    Ok(inst)
}

/// Counit and antipode constructions run as extra checks by `verify` on multiplier Hopf verdicts.
fn construction_checks(inst: &Instance, path: &str) -> Result<Vec<Check>, CliError> {
    let err = engine(path);
    let (Some(phi), psi) = (
        inst.left_integral_set().map_err(&err)?.first().copied(),
        inst.right_integral_set().map_err(&err)?.first().copied(),
    ) else {
        return Ok(Vec::new());
    };
    let scope = inst.scope();
    let w = scope.windowed;
    let cop = &inst.coproduct;
    let mut out = Vec::new();
    let eps = construct_counit_left(cop, phi, psi, &scope).map_err(&err)?;
    let bad = verify_counit(cop, &eps, &scope).map_err(&err)?;
    let mut c = Check::outcome(
        "construct.counit",
        "the counit built from the integral is a counit",
        eps.certificate.consistent && bad.is_none(),
        w,
    );
    if let Some((a, b)) = bad {
        c = c.with_witness(format!(
            "({}, {})",
            cop.algebra().label(a),
            cop.algebra().label(b)
        ));
    }
    out.push(c);
    let mut s = construct_antipode(cop, phi, psi, &scope).map_err(&err)?;
    let axioms = check_antipode_axioms(&mut s, &eps).map_err(&err)?;
    let mut c = if axioms.skipped.is_some() && axioms.passed() {
        Check::new(
            "construct.antipode",
            "the antipode built from the integral satisfies its laws",
            Status::Skipped,
        )
    } else {
        Check::outcome(
            "construct.antipode",
            "the antipode built from the integral satisfies its laws",
            axioms.passed(),
            w,
        )
    };
    if let Some(reason) = &axioms.skipped {
        c = c.with_detail(reason.clone());
    }
    if let Some((a, b)) = axioms.law.as_ref().or(axioms.defining_formula.as_ref()) {
        c = c.with_witness(format!("({a}, {b})"));
    }
    out.push(c);
    Ok(out)
}

fn finish(mut report: Report, inst: &Instance, start: Instant, opts: &Options) -> Report {
    report.expected = inst.expect.clone();
    report.window = inst.scope().windowed.then_some(inst.window);
    if opts.timings {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    report
}

/// Runs every applicable check; exit code 1 when any fails or the expectation is not met.
pub fn verify(inst: &Instance, path: &str, opts: &Options) -> Result<(Report, i32), CliError> {
    let start = Instant::now();
    let c = classify_instance(inst).map_err(engine(path))?;
    let extra = if c.verdict.is_multiplier_hopf() && !inst.wants_weak() {
        construction_checks(inst, path)?
    } else {
        Vec::new()
    };
    let report = finish(
        Report::new(&inst.name, "verify", &c, &extra),
        inst,
        start,
        opts,
    );
    let code = if report.any_failed() || !report.expectation_met() {
        1
    } else {
        0
    };
    Ok((report, code))
}

/// Classifies; exit code 1 when the verdict is `Fail` or differs from the expectation.
pub fn classify(inst: &Instance, path: &str, opts: &Options) -> Result<(Report, i32), CliError> {
    let start = Instant::now();
    let c = classify_instance(inst).map_err(engine(path))?;
    let report = finish(
        Report::new(&inst.name, "classify", &c, &[]),
        inst,
        start,
        opts,
    );
    let code = if report.classification.verdict == "Fail" || !report.expectation_met() {
        1
    } else {
        0
    };
    Ok((report, code))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Emit {
    Counit,
    Antipode,
    E,
    F,
}

impl Emit {
    pub fn parse(s: &str) -> Option<Emit> {
        match s.trim() {
            "counit" => Some(Emit::Counit),
            "antipode" => Some(Emit::Antipode),
            "E" | "e" => Some(Emit::E),
            "F" | "f" => Some(Emit::F),
            _ => None,
        }
    }
}

/// Builds the requested maps; returns the artifact document and exit code 1 when a hypothesis is refuted.
pub fn construct(inst: &Instance, path: &str, emit: &[Emit]) -> Result<(Value, i32), CliError> {
    let err = engine(path);
    let cop = &inst.coproduct;
    let alg = cop.algebra();
    let scope = inst.scope();
    let mut doc = serde_json::Map::new();
    doc.insert("instance".into(), json!(inst.name));
    let mut refutations = Vec::new();
    let phi = inst.left_integral_set().map_err(&err)?.first().copied();
    let psi = inst.right_integral_set().map_err(&err)?.first().copied();
    let mut e_cache = None;
    let mut resolve_e = || -> Result<Option<hopfforge::Tensor2>, CliError> {
        if e_cache.is_none() {
            e_cache = Some(match &inst.e {
                Some(e) => Some(e.clone()),
                None => derive_e(cop).map_err(&err)?,
            });
        }
        Ok(e_cache.clone().flatten())
    };
    for kind in emit {
        match kind {
            Emit::Counit | Emit::Antipode => {
                let Some(phi) = phi else {
                    refutations.push("no left integral is declared".to_string());
                    continue;
                };
                let eps = match construct_counit_left(cop, phi, psi, &scope) {
                    Ok(e) => e,
                    Err(e) => {
                        refutations.push(format!("counit: {e}"));
                        continue;
                    }
                };
                if !(eps.certificate.consistent && eps.certificate.hypotheses_met) {
                    refutations.push(format!(
                        "counit: hypotheses met {}, consistent {}{}",
                        eps.certificate.hypotheses_met,
                        eps.certificate.consistent,
                        eps.certificate
                            .witness
                            .as_ref()
                            .map(|w| format!(", witness {w}"))
                            .unwrap_or_default()
                    ));
                    continue;
                }
                if *kind == Emit::Counit {
                    let values: Vec<(String, String)> = eps
                        .domain
                        .iter()
                        .map(|k| (alg.label(*k), format_scalar(&eps.functional.value(*k))))
                        .collect();
                    doc.insert(
                        "counit".into(),
                        json!({ "windowed": eps.windowed, "values": values }),
                    );
                    continue;
                }
                let mut s = construct_antipode(cop, phi, psi, &scope).map_err(&err)?;
                let axioms = check_antipode_axioms(&mut s, &eps).map_err(&err)?;
                if !axioms.passed() {
                    refutations
                        .push("antipode: the constructed map violates the antipode law".into());
                    continue;
                }
                let mut images = Vec::new();
                for k in s.domain() {
                    match s.element(k).map_err(&err)? {
                        Some(x) => images.push(json!([k, to_terms(&x)])),
                        None => {
                            refutations
                                .push(format!("antipode: no element form for {}", alg.label(k)));
                            break;
                        }
                    }
                }
                let invertible = s.is_invertible().map_err(&err)?;
                doc.insert(
                    "antipode".into(),
                    json!({ "windowed": scope.windowed, "invertible": invertible, "images": images }),
                );
            }
            Emit::E => match resolve_e()? {
                Some(e) => {
                    doc.insert("E".into(), json!(to_pair_terms(&e)));
                }
                None => refutations.push("E: no separability idempotent exists".into()),
            },
            Emit::F => {
                let Some(e) = resolve_e()? else {
                    refutations.push("F: no separability idempotent exists".into());
                    continue;
                };
                let (checks, ctx) = WeakContext::build(cop, &e).map_err(&err)?;
                match ctx {
                    Some(ctx) => {
                        doc.insert(
                            "F".into(),
                            json!({
                                "F1": to_pair_terms(&ctx.f.f1),
                                "F2": to_pair_terms(&ctx.f.f2),
                                "F3": to_pair_terms(&ctx.f.f3),
                                "F4": to_pair_terms(&ctx.f.f4),
                            }),
                        );
                    }
                    None => {
                        let failed: Vec<String> = checks
                            .iter()
                            .filter(|c| c.status == Status::Fail)
                            .map(|c| c.id.clone())
                            .collect();
                        refutations.push(format!("F: conditions on E fail: {}", failed.join(", ")));
                    }
                }
            }
        }
    }
    let code = if refutations.is_empty() { 0 } else { 1 };
    if !refutations.is_empty() {
        doc.insert("refutations".into(), json!(refutations));
    }
    Ok((Value::Object(doc), code))
}

/// Serialized corpus instance.
pub fn corpus_file(name: &str) -> Result<String, CliError> {
    let bundle = hopfforge::corpus::generate(name).map_err(|source| CliError::Engine {
        path: name.to_string(),
        source,
    })?;
    Ok(to_json(&InstanceFile::from_instance(&bundle.instance)?))
}

/// Writes `<dir>/<name>.json` for each name; `all` expands to the whole corpus.
pub fn write_corpus(names: &[String], dir: &Path) -> Result<Vec<String>, CliError> {
    let names: Vec<String> = if names.iter().any(|n| n == "all") {
        hopfforge::corpus::names()
    } else {
        names.to_vec()
    };
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut written = Vec::new();
    for name in names {
        let text = corpus_file(&name)?;
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        written.push(path.display().to_string());
    }
    Ok(written)
}
