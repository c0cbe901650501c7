//! Deterministic example instances with expectations taken from group and
//! groupoid tables.

use std::sync::Arc;

use hopfforge_linalg::{Scalar, SparseVec};
use num_traits::{One, Zero};

use crate::algebra::{Algebra, DenseAlgebra, Element, SupportedAlgebra, SupportedRule, Tensor2};
use crate::coproduct::{composition_images, grouplike_images, Coproduct, CoproductRule};
use crate::instance::Instance;
use crate::integrals::Functional;
use crate::report::Verdict;
use crate::HopfError;

/// A finite group by its multiplication table, identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    pub labels: Vec<String>,
    pub mul: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn new(labels: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self, HopfError> {
        let n = labels.len();
        if n == 0
            || mul.len() != n
            || mul
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&k| k >= n))
        {
            return Err(HopfError::Input(
                "group table must be square over the labels".into(),
            ));
        }
        for g in 0..n {
            if mul[0][g] != g || mul[g][0] != g {
                return Err(HopfError::Input(format!(
                    "{} is not the identity",
                    labels[0]
                )));
            }
            if !(0..n).any(|h| mul[g][h] == 0 && mul[h][g] == 0) {
                return Err(HopfError::Input(format!("{} has no inverse", labels[g])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(HopfError::Input(format!(
                            "not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(GroupTable { labels, mul })
    }

    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n)
            .map(|k| {
                if k == 0 {
                    "e".to_string()
                } else {
                    format!("g{k}")
                }
            })
            .collect();
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        GroupTable::new(labels, mul).expect("cyclic group")
    }

    /// Permutations of three points, composed right to left.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let labels = ["e", "(01)", "(12)", "(02)", "(012)", "(021)"]
            .map(String::from)
            .to_vec();
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let mul = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| idx([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        GroupTable::new(labels, mul).expect("S3")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order())
            .find(|&h| self.mul[g][h] == 0)
            .expect("validated")
    }
}

/// A finite groupoid. `compose[g][h]` is `g∘h`, defined when the source of `g` is the target of `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Groupoid {
    pub labels: Vec<String>,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub compose: Vec<Vec<Option<usize>>>,
}

impl Groupoid {
    pub fn new(
        labels: Vec<String>,
        source: Vec<usize>,
        target: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
    ) -> Result<Self, HopfError> {
        let n = labels.len();
        if source.len() != n
            || target.len() != n
            || compose.len() != n
            || compose.iter().any(|r| r.len() != n)
        {
            return Err(HopfError::Input(
                "groupoid tables must match the arrows".into(),
            ));
        }
        let gd = Groupoid {
            labels,
            source,
            target,
            compose,
        };
        for g in 0..n {
            for h in 0..n {
                let c = gd.compose[g][h];
                if c.is_some() != (gd.source[g] == gd.target[h]) {
                    return Err(HopfError::Input(format!(
                        "composability of ({}, {})",
                        gd.labels[g], gd.labels[h]
                    )));
                }
                if let Some(k) = c {
                    if k >= n || gd.target[k] != gd.target[g] || gd.source[k] != gd.source[h] {
                        return Err(HopfError::Input(format!(
                            "endpoints of {}∘{}",
                            gd.labels[g], gd.labels[h]
                        )));
                    }
                    for l in 0..n {
                        let left = gd.compose[k][l];
                        let right = gd.compose[h][l].and_then(|m| gd.compose[g][m]);
                        if left != right && (left.is_some() || gd.compose[h][l].is_some()) {
                            return Err(HopfError::Input(format!(
                                "not associative at ({}, {}, {})",
                                gd.labels[g], gd.labels[h], gd.labels[l]
                            )));
                        }
                    }
                }
            }
        }
        for x in gd.objects() {
            let u = gd
                .unit_at(x)
                .ok_or_else(|| HopfError::Input(format!("object {x} has no identity")))?;
            for g in 0..n {
                let ok = (gd.target[g] != x || gd.compose[u][g] == Some(g))
                    && (gd.source[g] != x || gd.compose[g][u] == Some(g));
                if !ok {
                    return Err(HopfError::Input(format!(
                        "{} is not an identity",
                        gd.labels[u]
                    )));
                }
            }
        }
        for g in 0..n {
            if gd.inverse(g).is_none() {
                return Err(HopfError::Input(format!("{} has no inverse", gd.labels[g])));
            }
        }
        Ok(gd)
    }

    /// Pair groupoid on `n` points; the arrow `(t, s)` goes from `s` to `t`.
    pub fn pair(n: usize) -> Self {
        let arrows: Vec<(usize, usize)> =
            (0..n).flat_map(|t| (0..n).map(move |s| (t, s))).collect();
        let labels = arrows.iter().map(|(t, s)| format!("a{t}{s}")).collect();
        let compose = arrows
            .iter()
            .map(|&(t, s)| {
                arrows
                    .iter()
                    .map(|&(t2, s2)| (s == t2).then(|| t * n + s2))
                    .collect()
            })
            .collect();
        Groupoid::new(
            labels,
            arrows.iter().map(|a| a.1).collect(),
            arrows.iter().map(|a| a.0).collect(),
            compose,
        )
        .expect("pair groupoid")
    }

    /// A group as a groupoid with one object.
    pub fn from_group(g: &GroupTable) -> Self {
        let n = g.order();
        let compose = (0..n)
            .map(|a| (0..n).map(|b| Some(g.mul[a][b])).collect())
            .collect();
        Groupoid::new(g.labels.clone(), vec![0; n], vec![0; n], compose).expect("group")
    }

    /// Disjoint union of groups, one object each.
    pub fn bundle(groups: &[GroupTable]) -> Self {
        let mut labels = Vec::new();
        let mut obj = Vec::new();
        let mut offsets = Vec::new();
        for (x, g) in groups.iter().enumerate() {
            offsets.push(labels.len());
            for l in &g.labels {
                labels.push(format!("{l}@{x}"));
                obj.push(x);
            }
        }
        let n = labels.len();
        let compose = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        (obj[a] == obj[b]).then(|| {
                            let off = offsets[obj[a]];
                            off + groups[obj[a]].mul[a - off][b - off]
                        })
                    })
                    .collect()
            })
            .collect();
        Groupoid::new(labels, obj.clone(), obj, compose).expect("group bundle")
    }

    pub fn arrows(&self) -> usize {
        self.labels.len()
    }

    pub fn objects(&self) -> Vec<usize> {
        let mut xs: Vec<usize> = self.source.iter().chain(&self.target).copied().collect();
        xs.sort_unstable();
        xs.dedup();
        xs
    }

    pub fn unit_at(&self, x: usize) -> Option<usize> {
        (0..self.arrows())
            .find(|&u| self.source[u] == x && self.target[u] == x && self.compose[u][u] == Some(u))
    }

    pub fn units(&self) -> Vec<usize> {
        self.objects()
            .into_iter()
            .filter_map(|x| self.unit_at(x))
            .collect()
    }

    pub fn inverse(&self, g: usize) -> Option<usize> {
        let (s, t) = (self.unit_at(self.source[g])?, self.unit_at(self.target[g])?);
        (0..self.arrows()).find(|&h| self.compose[g][h] == Some(t) && self.compose[h][g] == Some(s))
    }

    /// Number of ordered pairs that cannot be composed.
    pub fn non_composable_pairs(&self) -> usize {
        self.compose
            .iter()
            .flatten()
            .filter(|c| c.is_none())
            .count()
    }

    /// Number of ordered pairs of arrows with different sources.
    pub fn source_mismatches(&self) -> usize {
        let n = self.arrows();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.source[a] != self.source[b])
            .count()
    }
}

/// What the engines are expected to report for an instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    pub verdict: Verdict,
    pub window_verified: bool,
    /// Check ids that must fail.
    pub failing: Vec<String>,
    /// `ε(e_i)` for every basis element.
    pub counit: Option<Vec<Scalar>>,
    /// `S(e_i) = e_{σ(i)}`.
    pub antipode: Option<Vec<usize>>,
    /// `dim Ker T1`.
    pub kernel_dim: Option<usize>,
    pub e: Option<Tensor2>,
}

impl Expected {
    fn verdict(verdict: Verdict) -> Self {
        Expected {
            verdict,
            window_verified: false,
            failing: Vec::new(),
            counit: None,
            antipode: None,
            kernel_dim: None,
            e: None,
        }
    }

    fn failing(ids: &[&str]) -> Self {
        Expected {
            failing: ids.iter().map(|s| s.to_string()).collect(),
            ..Expected::verdict(Verdict::Fail)
        }
    }
}

#[derive(Clone, Debug)]
pub struct InstanceBundle {
    pub instance: Instance,
    pub expected: Expected,
}

fn dense(labels: Vec<String>, products: Vec<Vec<Element>>) -> Arc<Algebra> {
    Arc::new(Algebra::Dense(
        DenseAlgebra::new(labels, products).expect("generated tables are valid"),
    ))
}

fn pointwise(labels: Vec<String>) -> Arc<Algebra> {
    let n = labels.len();
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
    dense(labels, prods)
}

fn bundle(name: &str, cop: Coproduct, integral: Functional, expected: Expected) -> InstanceBundle {
    let mut inst = Instance::new(name, cop).with_functional(integral.clone());
    inst.left_integrals = vec![integral.name.clone()];
    inst.right_integrals = vec![integral.name];
    inst.expect = Some(expected.verdict.as_str().to_string());
    InstanceBundle {
        instance: inst,
        expected,
    }
}

/// `ℚ[G]` with `Δ(g) = g⊗g` and `φ = δ_e`.
pub fn gen_group_algebra(name: &str, g: &GroupTable) -> InstanceBundle {
    let n = g.order();
    let prods = (0..n)
        .map(|a| (0..n).map(|b| SparseVec::basis(g.mul[a][b])).collect())
        .collect();
    let cop = Coproduct::new(
        dense(g.labels.clone(), prods),
        CoproductRule::Images(grouplike_images(n)),
    )
    .expect("grouplike");
    let expected = Expected {
        counit: Some(vec![Scalar::one(); n]),
        antipode: Some((0..n).map(|a| g.inverse(a)).collect()),
        kernel_dim: Some(0),
        ..Expected::verdict(Verdict::HopfInvertibleS)
    };
    bundle(
        name,
        cop,
        Functional::from_values("phi", [(0, Scalar::one())]),
        expected,
    )
}

/// Functions on `G` with `Δ(f)(s, t) = f(st)` and the Haar sum.
pub fn gen_function_algebra(name: &str, g: &GroupTable) -> InstanceBundle {
    let n = g.order();
    let labels = g.labels.iter().map(|l| format!("d[{l}]")).collect();
    let images = composition_images(n, |a, b| Some(g.mul[a][b]));
    let cop =
        Coproduct::new(pointwise(labels), CoproductRule::Images(images)).expect("dual coproduct");
    let expected = Expected {
        counit: Some(
            (0..n)
                .map(|a| {
                    if a == 0 {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect(),
        ),
        antipode: Some((0..n).map(|a| g.inverse(a)).collect()),
        kernel_dim: Some(0),
        ..Expected::verdict(Verdict::HopfInvertibleS)
    };
    bundle(
        name,
        cop,
        Functional::constant("haar", Scalar::one()),
        expected,
    )
}

/// Finitely supported functions on ℤ with the dual of addition, checked on `{-k..k}`.
pub fn gen_function_algebra_infinite(name: &str, window: usize) -> InstanceBundle {
    let alg = Arc::new(Algebra::Supported(SupportedAlgebra {
        rule: SupportedRule::PointwiseZ,
    }));
    let cop = Coproduct::new(alg, CoproductRule::SumZ).expect("sum coproduct");
    let expected = Expected {
        window_verified: true,
        ..Expected::verdict(Verdict::RegularMultiplierHopf)
    };
    let mut b = bundle(
        name,
        cop,
        Functional::constant("haar", Scalar::one()),
        expected,
    );
    b.instance.window = window;
    b
}

/// `E = Σ_units x⊗x` in the groupoid algebra.
pub fn groupoid_algebra_e(gd: &Groupoid) -> Tensor2 {
    SparseVec::from_terms(gd.units().into_iter().map(|u| ((u, u), Scalar::one())))
}

/// `E = Σ_{s(g)=t(h)} δ_g⊗δ_h` in the function algebra.
pub fn groupoid_function_e(gd: &Groupoid) -> Tensor2 {
    let n = gd.arrows();
    SparseVec::from_terms(
        (0..n)
            .flat_map(|g| (0..n).map(move |h| (g, h)))
            .filter(|&(g, h)| gd.compose[g][h].is_some())
            .map(|k| (k, Scalar::one())),
    )
}

fn weak_verdict(gd: &Groupoid) -> Verdict {
    if gd.objects().len() == 1 {
        Verdict::HopfInvertibleS
    } else {
        Verdict::RegularWeakMHA
    }
}

/// Groupoid algebra with `Δ(g) = g⊗g` and the indicator of the units.
pub fn gen_groupoid_algebra(name: &str, gd: &Groupoid) -> InstanceBundle {
    let n = gd.arrows();
    let prods = (0..n)
        .map(|g| {
            (0..n)
                .map(|h| gd.compose[g][h].map(SparseVec::basis).unwrap_or_default())
                .collect()
        })
        .collect();
    let cop = Coproduct::new(
        dense(gd.labels.clone(), prods),
        CoproductRule::Images(grouplike_images(n)),
    )
    .expect("grouplike");
    let e = groupoid_algebra_e(gd);
    let expected = Expected {
        kernel_dim: Some(gd.non_composable_pairs()),
        e: Some(e.clone()),
        ..Expected::verdict(weak_verdict(gd))
    };
    let units =
        Functional::from_values("units", gd.units().into_iter().map(|u| (u, Scalar::one())));
    let mut b = bundle(name, cop, units, expected);
    b.instance.e = Some(e);
    b.instance.derive_e = true;
    b
}

/// Functions on a groupoid with `Δ(f)(g, h) = f(gh)` on composable pairs and the arrow sum.
pub fn gen_groupoid_function_algebra(name: &str, gd: &Groupoid) -> InstanceBundle {
    let n = gd.arrows();
    let labels = gd.labels.iter().map(|l| format!("d[{l}]")).collect();
    let images = composition_images(n, |g, h| gd.compose[g][h]);
    let cop =
        Coproduct::new(pointwise(labels), CoproductRule::Images(images)).expect("dual coproduct");
    let e = groupoid_function_e(gd);
    let expected = Expected {
        kernel_dim: Some(gd.source_mismatches()),
        e: Some(e.clone()),
        ..Expected::verdict(weak_verdict(gd))
    };
    let mut b = bundle(
        name,
        cop,
        Functional::constant("arrows", Scalar::one()),
        expected,
    );
    b.instance.e = Some(e);
    b.instance.derive_e = true;
    b
}

/// Kinds accepted by [`gen_negative`].
pub const NEGATIVE_KINDS: [&str; 7] = [
    "non-faithful",
    "non-integral",
    "broken-coassoc",
    "non-full",
    "no-e",
    "zero-product",
    "non-regular",
];

/// Instances built to break one hypothesis each.
pub fn gen_negative(kind: &str) -> Result<InstanceBundle, HopfError> {
    let name = format!("neg-{kind}");
    let mut b = match kind {
        // The zero functional passes the integral test but pairs trivially.
        "non-faithful" => {
            let mut b = gen_group_algebra(&name, &GroupTable::cyclic(2));
            let zero = Functional::from_values("zero", []);
            b.instance = b.instance.with_functional(zero);
            b.instance.functionals.remove("phi");
            b.instance.left_integrals = vec!["zero".into()];
            b.instance.right_integrals = vec!["zero".into()];
            b.expected = Expected::failing(&["faithful.left.zero", "faithful.right.zero"]);
            b
        }
        "non-integral" => {
            let mut b = gen_group_algebra(&name, &GroupTable::cyclic(3));
            b.instance = b
                .instance
                .with_functional(Functional::from_values("delta-g1", [(1, Scalar::one())]));
            b.instance.functionals.remove("phi");
            b.instance.left_integrals = vec!["delta-g1".into()];
            b.instance.right_integrals = vec!["delta-g1".into()];
            b.expected = Expected::failing(&["integral.left.delta-g1", "integral.right.delta-g1"]);
            b
        }
        // Δ(f)(s, t) = f(s − t) on Z3.
        "broken-coassoc" => {
            let g = GroupTable::cyclic(3);
            let labels = g.labels.iter().map(|l| format!("d[{l}]")).collect();
            let images = composition_images(3, |s, t| Some((s + 3 - t) % 3));
            let cop =
                Coproduct::new(pointwise(labels), CoproductRule::Images(images)).expect("images");
            bundle(
                &name,
                cop,
                Functional::constant("haar", Scalar::one()),
                Expected::failing(&["coproduct.coassoc.T1T2"]),
            )
        }
        // ℚ[Z2] ⊕ ℚ with Δ vanishing on the second block.
        "non-full" => {
            let labels = ["e", "g", "u"].map(String::from).to_vec();
            let b = |i: usize| SparseVec::basis(i);
            let z = Element::new;
            let prods = vec![
                vec![b(0), b(1), z()],
                vec![b(1), b(0), z()],
                vec![z(), z(), b(2)],
            ];
            let images = vec![
                SparseVec::basis((0, 0)),
                SparseVec::basis((1, 1)),
                Tensor2::new(),
            ];
            let cop = Coproduct::new(dense(labels, prods), CoproductRule::Images(images))
                .expect("images");
            bundle(
                &name,
                cop,
                Functional::from_values("phi", [(0, Scalar::one())]),
                Expected::failing(&["integral.left.phi", "auto.full"]),
            )
        }
        // Δ(x) = x⊗e12 on 2×2 matrices: Δ(A)(A⊗A) has no unit.
        "no-e" => {
            let labels = ["e11", "e12", "e21", "e22"].map(String::from).to_vec();
            let idx = |r: usize, c: usize| 2 * r + c;
            let prods = (0..4)
                .map(|x| {
                    (0..4)
                        .map(|y| {
                            if x % 2 == y / 2 {
                                SparseVec::basis(idx(x / 2, y % 2))
                            } else {
                                Element::new()
                            }
                        })
                        .collect()
                })
                .collect();
            let images = (0..4).map(|x| SparseVec::basis((x, idx(0, 1)))).collect();
            let cop = Coproduct::new(dense(labels, prods), CoproductRule::Images(images))
                .expect("images");
            let trace = Functional::from_values("trace", [(0, Scalar::one()), (3, Scalar::one())]);
            let mut b = bundle(
                &name,
                cop,
                trace,
                Expected::failing(&["coproduct.homomorphism", "E.derived", "E.present"]),
            );
            b.instance.derive_e = true;
            b
        }
        "zero-product" => {
            let labels = ["x", "y"].map(String::from).to_vec();
            let prods = vec![vec![Element::new(); 2]; 2];
            let cop = Coproduct::new(
                dense(labels, prods),
                CoproductRule::Images(grouplike_images(2)),
            )
            .expect("images");
            bundle(
                &name,
                cop,
                Functional::constant("sum", Scalar::one()),
                Expected::failing(&["algebra.nondegenerate"]),
            )
        }
        // Δ(f) = 1⊗f on F_fin(ℤ).
        "non-regular" => {
            let alg = Arc::new(Algebra::Supported(SupportedAlgebra {
                rule: SupportedRule::PointwiseZ,
            }));
            let cop = Coproduct::new(alg, CoproductRule::SecondLegZ).expect("second leg");
            let mut b = bundle(
                &name,
                cop,
                Functional::constant("haar", Scalar::one()),
                Expected::failing(&["coproduct.regular.T1"]),
            );
            b.instance.window = 2;
            b
        }
        other => return Err(HopfError::Input(format!("unknown negative kind {other:?}"))),
    };
    b.instance.expect = Some(b.expected.verdict.as_str().to_string());
    Ok(b)
}

/// Every name accepted by [`generate`], in a fixed order.
pub fn names() -> Vec<String> {
    let mut out: Vec<String> = [
        "z2", "z3", "z4", "s3", "trivial", "fun-z2", "fun-z3", "fun-z4", "fun-s3",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    out.extend(["zint-window-2", "zint-window-4", "zint-window-8"].map(String::from));
    out.extend(
        [
            "pair-groupoid-2",
            "fun-pair-groupoid-2",
            "group-bundle",
            "fun-group-bundle",
            "one-object-z3",
        ]
        .map(String::from),
    );
    out.extend(NEGATIVE_KINDS.iter().map(|k| format!("neg-{k}")));
    out
}

fn group_named(key: &str) -> Option<GroupTable> {
    match key {
        "z2" => Some(GroupTable::cyclic(2)),
        "z3" => Some(GroupTable::cyclic(3)),
        "z4" => Some(GroupTable::cyclic(4)),
        "s3" => Some(GroupTable::symmetric3()),
        "trivial" => Some(GroupTable::cyclic(1)),
        _ => None,
    }
}

fn z2_and_point() -> Groupoid {
    Groupoid::bundle(&[GroupTable::cyclic(2), GroupTable::cyclic(1)])
}

pub fn generate(name: &str) -> Result<InstanceBundle, HopfError> {
    if let Some(g) = group_named(name) {
        return Ok(gen_group_algebra(name, &g));
    }
    if let Some(g) = name.strip_prefix("fun-").and_then(group_named) {
        return Ok(gen_function_algebra(name, &g));
    }
    if let Some(k) = name.strip_prefix("zint-window-") {
        let k: usize = k
            .parse()
            .map_err(|_| HopfError::Input(format!("bad window in {name:?}")))?;
        return Ok(gen_function_algebra_infinite(name, k));
    }
    if let Some(kind) = name.strip_prefix("neg-") {
        return gen_negative(kind);
    }
    match name {
        "pair-groupoid-2" => Ok(gen_groupoid_algebra(name, &Groupoid::pair(2))),
        "fun-pair-groupoid-2" => Ok(gen_groupoid_function_algebra(name, &Groupoid::pair(2))),
        "group-bundle" => Ok(gen_groupoid_algebra(name, &z2_and_point())),
        "fun-group-bundle" => Ok(gen_groupoid_function_algebra(name, &z2_and_point())),
        "one-object-z3" => Ok(gen_groupoid_algebra(
            name,
            &Groupoid::from_group(&GroupTable::cyclic(3)),
        )),
        other => Err(HopfError::Input(format!(
            "unknown corpus instance {other:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_validate() {
        assert!(
            GroupTable::new(vec!["e".into(), "a".into()], vec![vec![0, 1], vec![1, 1]]).is_err()
        );
        let s3 = GroupTable::symmetric3();
        assert_eq!((0..6).filter(|&g| s3.inverse(g) == g).count(), 4);
        let pair = Groupoid::pair(2);
        assert_eq!(
            (pair.arrows(), pair.units(), pair.non_composable_pairs()),
            (4, vec![0, 3], 8)
        );
        let b = z2_and_point();
        assert_eq!(
            (b.arrows(), b.objects().len(), b.non_composable_pairs()),
            (3, 2, 4)
        );
        let mut bad = Groupoid::pair(2);
        bad.compose[0][0] = None;
        assert!(Groupoid::new(bad.labels, bad.source, bad.target, bad.compose).is_err());
    }

    #[test]
    fn every_name_generates() {
        for n in names() {
            let b = generate(&n).unwrap();
            assert_eq!(b.instance.name, n);
            assert_eq!(
                b.instance.expect.as_deref(),
                Some(b.expected.verdict.as_str())
            );
        }
        assert!(generate("nope").is_err());
    }

    #[test]
    fn e_oracles() {
        let pair = Groupoid::pair(2);
        assert_eq!(groupoid_algebra_e(&pair).len(), 2);
        assert_eq!(groupoid_function_e(&pair).len(), 8);
    }
}
