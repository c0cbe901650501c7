//! The JSON instance file format.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use hopfforge::algebra::{Algebra, DenseAlgebra, SupportedAlgebra, SupportedRule};
use hopfforge::coproduct::{composition_images, grouplike_images, CoproductRule};
use hopfforge::{Coproduct, Element, Functional, Instance, Tensor2};
use hopfforge_linalg::{format_scalar, parse_scalar, Scalar, SparseVec};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Coefficient vector over basis indices.
pub type Terms = Vec<(usize, String)>;
/// Coefficient vector over pairs of basis indices.
pub type PairTerms = Vec<((usize, usize), String)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub scalars: String,
    pub name: String,
    pub algebra: AlgebraFile,
    pub coproduct: CoproductFile,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functionals: BTreeMap<String, FunctionalFile>,
    #[serde(default)]
    pub integrals: IntegralsFile,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<PairTerms>,
    #[serde(rename = "deriveE", default, skip_serializing_if = "is_false")]
    pub derive_e: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<String>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlgebraFile {
    Dense {
        basis: Vec<String>,
        /// `[i, j, e_i e_j]`; omitted products are zero.
        products: Vec<(usize, usize, Terms)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit: Option<Terms>,
    },
    Supported {
        #[serde(rename = "productRule")]
        product_rule: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CoproductFile {
    /// `Δ(e_i) = e_i⊗e_i`.
    Grouplike,
    /// `Δ(δ_k) = Σ δ_g⊗δ_h` over the triples `[g, h, k]`.
    Dualfunction {
        composition: Vec<(usize, usize, usize)>,
    },
    Explicit {
        /// `[i, Δ(e_i)]` with `Δ(e_i) ∈ A⊗A`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        images: Option<Vec<(usize, PairTerms)>>,
        /// `[i, [j, k], Δ(e_i)(e_j⊗e_k)]`.
        #[serde(
            rename = "leftAction",
            default,
            skip_serializing_if = "Option::is_none"
        )]
        left_action: Option<Vec<(usize, (usize, usize), PairTerms)>>,
        /// `[i, [j, k], (e_j⊗e_k)Δ(e_i)]`.
        #[serde(
            rename = "rightAction",
            default,
            skip_serializing_if = "Option::is_none"
        )]
        right_action: Option<Vec<(usize, (usize, usize), PairTerms)>>,
    },
    /// A named rule on a supported algebra: `sum-z` or `second-leg-z`.
    Builtin { rule: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionalFile {
    Values(Vec<(String, String)>),
    WithDefault {
        default: String,
        values: Vec<(String, String)>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralsFile {
    #[serde(default)]
    pub left: Vec<String>,
    #[serde(default)]
    pub right: Vec<String>,
}

/// Default cap on the dimension of dense algebras; `HOPFFORGE_MAX_DIM` overrides it.
pub const DEFAULT_MAX_DIM: usize = 64;

pub fn max_dim() -> usize {
    std::env::var("HOPFFORGE_MAX_DIM")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

pub fn parse_file(path: &str, text: &str) -> Result<InstanceFile, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn invalid(path: &str, message: impl Into<String>) -> CliError {
    CliError::Invalid {
        path: path.to_string(),
        message: message.into(),
    }
}

fn scalar(path: &str, at: &str, text: &str) -> Result<Scalar, CliError> {
    parse_scalar(text)
        .map_err(|_| invalid(path, format!("{at}: {text:?} is not a rational number")))
}

fn terms(path: &str, at: &str, n: Option<usize>, t: &Terms) -> Result<Element, CliError> {
    let mut out = Element::new();
    for (k, c) in t {
        if n.is_some_and(|n| *k >= n) {
            return Err(invalid(path, format!("{at}: basis index {k} out of range")));
        }
        out.add_term(*k, scalar(path, at, c)?);
    }
    Ok(out)
}

fn pair_terms(path: &str, at: &str, n: usize, t: &PairTerms) -> Result<Tensor2, CliError> {
    let mut out = Tensor2::new();
    for ((a, b), c) in t {
        if *a >= n || *b >= n {
            return Err(invalid(
                path,
                format!("{at}: basis pair ({a}, {b}) out of range"),
            ));
        }
        out.add_term((*a, *b), scalar(path, at, c)?);
    }
    Ok(out)
}

fn index(path: &str, at: &str, n: usize, k: usize) -> Result<usize, CliError> {
    if k < n {
        Ok(k)
    } else {
        Err(invalid(path, format!("{at}: basis index {k} out of range")))
    }
}

impl InstanceFile {
    /// Builds the engine instance; `path` only labels error messages.
    pub fn to_instance(&self, path: &str) -> Result<Instance, CliError> {
        if self.scalars != "rational" {
            return Err(invalid(
                path,
                format!("scalars: unsupported field {:?}", self.scalars),
            ));
        }
        let algebra = match &self.algebra {
            AlgebraFile::Dense {
                basis,
                products,
                unit,
            } => {
                let n = basis.len();
                if n > max_dim() {
                    return Err(invalid(
                        path,
                        format!(
                            "algebra: dimension {n} exceeds the cap {} (set HOPFFORGE_MAX_DIM)",
                            max_dim()
                        ),
                    ));
                }
                if basis.iter().collect::<BTreeSet<_>>().len() != n {
                    return Err(invalid(path, "algebra.basis: labels must be distinct"));
                }
                let mut table = vec![vec![Element::new(); n]; n];
                for (idx, (i, j, t)) in products.iter().enumerate() {
                    let at = format!("algebra.products[{idx}]");
                    let (i, j) = (index(path, &at, n, *i)?, index(path, &at, n, *j)?);
                    table[i][j] = &table[i][j] + &terms(path, &at, Some(n), t)?;
                }
                let alg = DenseAlgebra::new(basis.clone(), table)
                    .map_err(|e| invalid(path, format!("algebra: {e}")))?;
                if let Some(u) = unit {
                    let u = terms(path, "algebra.unit", Some(n), u)?;
                    if alg.unit() != Some(&u) {
                        return Err(invalid(
                            path,
                            "algebra.unit: the given element is not a unit of the product table",
                        ));
                    }
                }
                Algebra::Dense(alg)
            }
            AlgebraFile::Supported { product_rule } => {
                let rule = SupportedRule::from_name(product_rule).ok_or_else(|| {
                    invalid(
                        path,
                        format!("algebra.productRule: unknown rule {product_rule:?}"),
                    )
                })?;
                Algebra::Supported(SupportedAlgebra { rule })
            }
        };
        let n = algebra.dim();
        let need_dense = |what: &str| {
            n.ok_or_else(|| invalid(path, format!("coproduct: {what} needs a dense algebra")))
        };
        let rule = match &self.coproduct {
            CoproductFile::Grouplike => {
                CoproductRule::Images(grouplike_images(need_dense("grouplike")?))
            }
            CoproductFile::Dualfunction { composition } => {
                let n = need_dense("dualfunction")?;
                let mut table = BTreeMap::new();
                for (idx, (g, h, k)) in composition.iter().enumerate() {
                    let at = format!("coproduct.composition[{idx}]");
                    for x in [g, h, k] {
                        index(path, &at, n, *x)?;
                    }
                    if table.insert((*g, *h), *k).is_some() {
                        return Err(invalid(path, format!("{at}: pair composed twice")));
                    }
                }
                CoproductRule::Images(composition_images(n, |g, h| table.get(&(g, h)).copied()))
            }
            CoproductFile::Explicit {
                images,
                left_action,
                right_action,
            } => {
                let n = need_dense("explicit")?;
                match (images, left_action, right_action) {
                    (Some(images), None, None) => {
                        let mut out = vec![Tensor2::new(); n];
                        for (idx, (i, t)) in images.iter().enumerate() {
                            let at = format!("coproduct.images[{idx}]");
                            let i = index(path, &at, n, *i)?;
                            out[i] = &out[i] + &pair_terms(path, &at, n, t)?;
                        }
                        CoproductRule::Images(out)
                    }
                    (None, Some(l), Some(r)) => {
                        let table = |rows: &Vec<(usize, (usize, usize), PairTerms)>, key: &str| {
                            let mut out = vec![BTreeMap::new(); n];
                            for (idx, (i, (x, y), t)) in rows.iter().enumerate() {
                                let at = format!("coproduct.{key}[{idx}]");
                                let i = index(path, &at, n, *i)?;
                                index(path, &at, n, *x)?;
                                index(path, &at, n, *y)?;
                                out[i].insert((*x, *y), pair_terms(path, &at, n, t)?);
                            }
                            Ok::<_, CliError>(out)
                        };
                        CoproductRule::Actions { left: table(l, "leftAction")?, right: table(r, "rightAction")? }
                    }
                    _ => {
                        return Err(invalid(path, "coproduct: explicit needs either images or both leftAction and rightAction"))
                    }
                }
            }
            CoproductFile::Builtin { rule } => match rule.as_str() {
                "sum-z" => CoproductRule::SumZ,
                "second-leg-z" => CoproductRule::SecondLegZ,
                other => {
                    return Err(invalid(
                        path,
                        format!("coproduct.rule: unknown rule {other:?}"),
                    ))
                }
            },
        };
        let cop = Coproduct::new(Arc::new(algebra), rule)
            .map_err(|e| invalid(path, format!("coproduct: {e}")))?;
        let mut inst = Instance::new(self.name.clone(), cop);
        for (name, f) in &self.functionals {
            let at = format!("functionals.{name}");
            let (default, values) = match f {
                FunctionalFile::Values(v) => (Scalar::zero(), v),
                FunctionalFile::WithDefault { default, values } => {
                    (scalar(path, &at, default)?, values)
                }
            };
            let mut map = BTreeMap::new();
            for (label, c) in values {
                let k = inst
                    .algebra()
                    .index_of(label)
                    .ok_or_else(|| invalid(path, format!("{at}: undeclared label {label:?}")))?;
                map.insert(k, scalar(path, &at, c)?);
            }
            let mut func = Functional::from_values(name.clone(), map);
            func.default = default;
            inst.functionals.insert(name.clone(), func);
        }
        for (side, names) in [
            ("left", &self.integrals.left),
            ("right", &self.integrals.right),
        ] {
            for name in names {
                if !inst.functionals.contains_key(name) {
                    return Err(invalid(
                        path,
                        format!("integrals.{side}: undeclared functional {name:?}"),
                    ));
                }
            }
        }
        inst.left_integrals = self.integrals.left.clone();
        inst.right_integrals = self.integrals.right.clone();
        if let Some(e) = &self.e {
            let n = n.ok_or_else(|| invalid(path, "E: needs a dense algebra"))?;
            inst.e = Some(pair_terms(path, "E", n, e)?);
        }
        inst.derive_e = self.derive_e;
        if let Some(w) = self.window {
            inst.window = w;
        }
        if let Some(x) = &self.expect {
            if hopfforge::Verdict::parse(x).is_none() {
                return Err(invalid(
                    path,
                    format!("expect: unknown classification {x:?}"),
                ));
            }
        }
        inst.expect = self.expect.clone();
        Ok(inst)
    }

    /// Serializes an instance; the result parses back to an equivalent instance.
    pub fn from_instance(inst: &Instance) -> Result<InstanceFile, CliError> {
        let unsupported = |m: &str| CliError::Invalid {
            path: inst.name.clone(),
            message: m.to_string(),
        };
        let cop = &inst.coproduct;
        let alg = cop.algebra();
        let (algebra, pointwise) = match alg {
            Algebra::Dense(d) => {
                let n = d.dim();
                let mut products = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        let p = d.product(i, j);
                        if !p.is_zero() {
                            products.push((i, j, to_terms(p)));
                        }
                    }
                }
                let pointwise = (0..n).all(|i| {
                    (0..n).all(|j| {
                        *d.product(i, j)
                            == if i == j {
                                SparseVec::basis(i)
                            } else {
                                Element::new()
                            }
                    })
                });
                (
                    AlgebraFile::Dense {
                        basis: d.labels().to_vec(),
                        products,
                        unit: d.unit().map(to_terms),
                    },
                    pointwise,
                )
            }
            Algebra::Supported(s) => (
                AlgebraFile::Supported {
                    product_rule: s.rule.name().to_string(),
                },
                false,
            ),
        };
        let coproduct = match (cop.rule(), cop.is_flipped()) {
            (CoproductRule::Images(images), flipped) => {
                let images: Vec<Tensor2> = images
                    .iter()
                    .map(|t| {
                        if flipped {
                            hopfforge::algebra::flip2(t)
                        } else {
                            t.clone()
                        }
                    })
                    .collect();
                describe_images(&images, pointwise)
            }
            (CoproductRule::Actions { left, right }, false) => {
                let rows = |t: &Vec<BTreeMap<(usize, usize), Tensor2>>| {
                    t.iter()
                        .enumerate()
                        .flat_map(|(i, m)| m.iter().map(move |(k, v)| (i, *k, to_pair_terms(v))))
                        .collect::<Vec<_>>()
                };
                CoproductFile::Explicit {
                    images: None,
                    left_action: Some(rows(left)),
                    right_action: Some(rows(right)),
                }
            }
            (CoproductRule::SumZ, false) => CoproductFile::Builtin {
                rule: "sum-z".into(),
            },
            (CoproductRule::SecondLegZ, false) => CoproductFile::Builtin {
                rule: "second-leg-z".into(),
            },
            _ => {
                return Err(unsupported(
                    "flipped coproducts given by tables or rules cannot be written",
                ))
            }
        };
        let functionals = inst
            .functionals
            .iter()
            .map(|(name, f)| {
                let values = f
                    .values
                    .iter()
                    .map(|(k, c)| (alg.label(*k), format_scalar(c)))
                    .collect();
                let file = if f.default.is_zero() {
                    FunctionalFile::Values(values)
                } else {
                    FunctionalFile::WithDefault {
                        default: format_scalar(&f.default),
                        values,
                    }
                };
                (name.clone(), file)
            })
            .collect();
        Ok(InstanceFile {
            scalars: "rational".into(),
            name: inst.name.clone(),
            algebra,
            coproduct,
            functionals,
            integrals: IntegralsFile {
                left: inst.left_integrals.clone(),
                right: inst.right_integrals.clone(),
            },
            e: inst.e.as_ref().map(to_pair_terms),
            derive_e: inst.derive_e,
            window: (!alg.is_dense()).then_some(inst.window),
            expect: inst.expect.clone(),
        })
    }
}

fn describe_images(images: &[Tensor2], pointwise: bool) -> CoproductFile {
    if images == grouplike_images(images.len()).as_slice() {
        return CoproductFile::Grouplike;
    }
    if pointwise {
        let mut seen = BTreeSet::new();
        let mut composition = Vec::new();
        let ok = images.iter().enumerate().all(|(k, t)| {
            t.iter().all(|((g, h), c)| {
                composition.push((*g, *h, k));
                c.is_one() && seen.insert((*g, *h))
            })
        });
        if ok {
            composition.sort_unstable();
            return CoproductFile::Dualfunction { composition };
        }
    }
    CoproductFile::Explicit {
        images: Some(
            images
                .iter()
                .enumerate()
                .filter(|(_, t)| !t.is_zero())
                .map(|(i, t)| (i, to_pair_terms(t)))
                .collect(),
        ),
        left_action: None,
        right_action: None,
    }
}

pub fn to_terms(x: &Element) -> Terms {
    x.iter().map(|(k, c)| (*k, format_scalar(c))).collect()
}

pub fn to_pair_terms(x: &Tensor2) -> PairTerms {
    x.iter().map(|(k, c)| (*k, format_scalar(c))).collect()
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use hopfforge::corpus::{generate, names};

    #[test]
    fn corpus_round_trips() {
        for name in names() {
            let inst = generate(&name).unwrap().instance;
            let file = InstanceFile::from_instance(&inst).unwrap();
            let text = to_json(&file);
            let back = parse_file("mem", &text).unwrap();
            assert_eq!(back, file, "{name}");
            let again = InstanceFile::from_instance(&back.to_instance("mem").unwrap()).unwrap();
            assert_eq!(again, file, "{name}");
        }
    }

    #[test]
    fn coproduct_kinds_are_recognized() {
        let file = InstanceFile::from_instance(&generate("s3").unwrap().instance).unwrap();
        assert_eq!(file.coproduct, CoproductFile::Grouplike);
        let file = InstanceFile::from_instance(&generate("fun-z2").unwrap().instance).unwrap();
        assert!(
            matches!(file.coproduct, CoproductFile::Dualfunction { ref composition } if composition.len() == 4)
        );
        let file = InstanceFile::from_instance(&generate("neg-no-e").unwrap().instance).unwrap();
        assert!(matches!(
            file.coproduct,
            CoproductFile::Explicit {
                images: Some(_),
                ..
            }
        ));
    }

    #[test]
    fn malformed_inputs_are_located() {
        let err = parse_file(
            "x.json",
            "{\n  \"scalars\": \"rational\",\n  \"name\": 3\n}",
        )
        .unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 3, .. }), "{err}");
        let mut file = InstanceFile::from_instance(&generate("z2").unwrap().instance).unwrap();
        file.integrals.left.push("missing".into());
        let err = file.to_instance("x.json").unwrap_err();
        assert!(err.to_string().contains("integrals.left"), "{err}");
        let mut file = InstanceFile::from_instance(&generate("z2").unwrap().instance).unwrap();
        if let AlgebraFile::Dense { products, .. } = &mut file.algebra {
            products[0].2[0].0 = 9;
        }
        assert!(file
            .to_instance("x.json")
            .unwrap_err()
            .to_string()
            .contains("algebra.products[0]"));
    }
}
