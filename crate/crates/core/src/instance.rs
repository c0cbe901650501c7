use std::collections::BTreeMap;

use crate::algebra::{flip2, Algebra, Tensor2};
use crate::coproduct::Coproduct;
use crate::integrals::Functional;
use crate::HopfError;

/// Basis elements a check quantifies over.
///
/// For dense algebras both lists are the whole basis. For supported algebras
/// `inputs` holds the labels of magnitude at most `k` and `closure` those of
/// magnitude at most `2k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scope {
    pub inputs: Vec<usize>,
    pub closure: Vec<usize>,
    pub windowed: bool,
    pub k: usize,
}

impl Scope {
    pub fn for_algebra(alg: &Algebra, k: usize) -> Scope {
        match alg {
            Algebra::Dense(_) => {
                let all = alg.window(0);
                Scope {
                    inputs: all.clone(),
                    closure: all,
                    windowed: false,
                    k: 0,
                }
            }
            Algebra::Supported(_) => Scope {
                inputs: alg.window(k),
                closure: alg.window(2 * k),
                windowed: true,
                k,
            },
        }
    }
}

/// An algebra with coproduct, named functionals and the integrals to use.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub coproduct: Coproduct,
    pub functionals: BTreeMap<String, Functional>,
    pub left_integrals: Vec<String>,
    pub right_integrals: Vec<String>,
    /// User-supplied separability idempotent.
    pub e: Option<Tensor2>,
    /// Run the weak pipeline with a derived idempotent.
    pub derive_e: bool,
    pub expect: Option<String>,
    /// Window size for supported algebras.
    pub window: usize,
}

impl Instance {
    pub fn new(name: impl Into<String>, coproduct: Coproduct) -> Self {
        Instance {
            name: name.into(),
            coproduct,
            functionals: BTreeMap::new(),
            left_integrals: Vec::new(),
            right_integrals: Vec::new(),
            e: None,
            derive_e: false,
            expect: None,
            window: 4,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        self.coproduct.algebra()
    }

    pub fn scope(&self) -> Scope {
        Scope::for_algebra(self.algebra(), self.window)
    }

    pub fn with_functional(mut self, f: Functional) -> Self {
        self.functionals.insert(f.name.clone(), f);
        self
    }

    pub fn functional(&self, name: &str) -> Result<&Functional, HopfError> {
        self.functionals
            .get(name)
            .ok_or_else(|| HopfError::UnknownFunctional(name.to_string()))
    }

    pub fn left_integral_set(&self) -> Result<Vec<&Functional>, HopfError> {
        self.left_integrals
            .iter()
            .map(|n| self.functional(n))
            .collect()
    }

    pub fn right_integral_set(&self) -> Result<Vec<&Functional>, HopfError> {
        self.right_integrals
            .iter()
            .map(|n| self.functional(n))
            .collect()
    }

    /// `(A^op, Δ)`: left and right integrals keep their roles.
    pub fn opposite(&self) -> Instance {
        Instance {
            name: format!("{}-op", self.name),
            coproduct: self.coproduct.opposite(),
            ..self.clone()
        }
    }

    /// `(A, Δ^cop)`: left and right integrals trade places.
    pub fn cop(&self) -> Instance {
        Instance {
            name: format!("{}-cop", self.name),
            coproduct: self.coproduct.cop(),
            left_integrals: self.right_integrals.clone(),
            right_integrals: self.left_integrals.clone(),
            e: self.e.as_ref().map(flip2),
            ..self.clone()
        }
    }

    /// Whether classification should go through the weak pipeline.
    pub fn wants_weak(&self) -> bool {
        if self.derive_e {
            return true;
        }
        match (&self.e, self.algebra().unit()) {
            (Some(e), Some(u)) => *e != crate::algebra::tensor(u, u),
            (Some(_), None) => true,
            _ => false,
        }
    }
}
