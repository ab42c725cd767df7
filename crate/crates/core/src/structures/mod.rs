//! Finite posets carrying carrier-valued promonoidal data `(p, j, S)`, and
//! exhaustive checkers for the laws such data may satisfy.

mod file;
mod laws;
mod poset;

use thiserror::Error;

use crate::carriers::{Carrier, CarrierError, Value};

pub use file::{StructureFile, StructureFileError};
pub use laws::{CheckReport, Law, LawOutcome, Witness, MAX_WITNESSES};
pub use poset::FinitePoset;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StructureError {
    #[error("duplicate object label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("object index {index} out of range for {len} objects")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("not a poset: `{a}` and `{b}` are below each other")]
    NotAPoset { a: String, b: String },
    #[error("table `{table}` has {found} entries, expected {expected}")]
    TableSize {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("non-idempotent carrier {0} requires a discrete poset")]
    NonDiscreteNat(Carrier),
    #[error("structure has no unit table j")]
    MissingUnit,
    #[error("structure has no duality map S")]
    MissingDuality,
    #[error(transparent)]
    Carrier(#[from] CarrierError),
}

/// A poset with promultiplication `p(a, b, c)`, optional unit `j(a)` and
/// optional duality `S`, all valued in one carrier.
///
/// `p` is dense and row-major in `(a, b, c)`. The hom of the underlying
/// category is `A(a, b) = unit` if `a ≤ b`, bottom otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct PromonoidalStructure {
    poset: FinitePoset,
    carrier: Carrier,
    p: Vec<Value>,
    j: Option<Vec<Value>>,
    s: Option<Vec<usize>>,
}

impl PromonoidalStructure {
    pub fn new(
        poset: FinitePoset,
        carrier: Carrier,
        p: Vec<Value>,
        j: Option<Vec<Value>>,
        s: Option<Vec<usize>>,
    ) -> Result<Self, StructureError> {
        let n = poset.len();
        if p.len() != n * n * n {
            return Err(StructureError::TableSize {
                table: "p",
                expected: n * n * n,
                found: p.len(),
            });
        }
        for v in &p {
            carrier.check(v)?;
        }
        if let Some(j) = &j {
            if j.len() != n {
                return Err(StructureError::TableSize {
                    table: "j",
                    expected: n,
                    found: j.len(),
                });
            }
            for v in j {
                carrier.check(v)?;
            }
        }
        if let Some(s) = &s {
            if s.len() != n {
                return Err(StructureError::TableSize {
                    table: "s",
                    expected: n,
                    found: s.len(),
                });
            }
            if let Some(&bad) = s.iter().find(|&&x| x >= n) {
                return Err(StructureError::IndexOutOfRange { index: bad, len: n });
            }
        }
        if !carrier.is_idempotent() && !poset.is_discrete() {
            return Err(StructureError::NonDiscreteNat(carrier));
        }
        Ok(PromonoidalStructure { poset, carrier, p, j, s })
    }

    /// Builds `p` and `j` from closures over object indices.
    pub fn from_fn(
        poset: FinitePoset,
        carrier: Carrier,
        p: impl Fn(usize, usize, usize) -> Value,
        j: Option<&dyn Fn(usize) -> Value>,
        s: Option<Vec<usize>>,
    ) -> Result<Self, StructureError> {
        let n = poset.len();
        let mut table = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    table.push(p(a, b, c));
                }
            }
        }
        let j = j.map(|j| (0..n).map(j).collect());
        Self::new(poset, carrier, table, j, s)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        self.poset.label(i)
    }

    pub fn p(&self, a: usize, b: usize, c: usize) -> Value {
        let n = self.len();
        self.p[(a * n + b) * n + c]
    }

    pub fn p_table(&self) -> &[Value] {
        &self.p
    }

    pub fn j(&self, a: usize) -> Option<Value> {
        self.j.as_ref().map(|j| j[a])
    }

    pub fn j_table(&self) -> Option<&[Value]> {
        self.j.as_deref()
    }

    pub fn s(&self, a: usize) -> Option<usize> {
        self.s.as_ref().map(|s| s[a])
    }

    pub fn s_map(&self) -> Option<&[usize]> {
        self.s.as_deref()
    }

    pub fn hom(&self, a: usize, b: usize) -> Value {
        self.carrier.indicator(self.poset.le(a, b))
    }

    pub fn duality_is_bijective(&self) -> bool {
        self.s.as_ref().is_some_and(|s| {
            let mut seen = vec![false; s.len()];
            s.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        })
    }

    pub fn duality_is_involutive(&self) -> bool {
        self.s
            .as_ref()
            .is_some_and(|s| s.iter().enumerate().all(|(a, &sa)| s[sa] == a))
    }

    /// Returns a copy with one `p` entry replaced.
    pub fn with_p_entry(mut self, a: usize, b: usize, c: usize, v: Value) -> Result<Self, StructureError> {
        let n = self.len();
        if let Some(&bad) = [a, b, c].iter().find(|&&x| x >= n) {
            return Err(StructureError::IndexOutOfRange { index: bad, len: n });
        }
        self.carrier.check(&v)?;
        self.p[(a * n + b) * n + c] = v;
        Ok(self)
    }

    pub fn with_unit(self, j: Option<Vec<Value>>) -> Result<Self, StructureError> {
        Self::new(self.poset, self.carrier, self.p, j, self.s)
    }

    pub fn with_duality(self, s: Option<Vec<usize>>) -> Result<Self, StructureError> {
        Self::new(self.poset, self.carrier, self.p, self.j, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> FinitePoset {
        FinitePoset::from_labels(["a", "b"], &[("a", "b")]).unwrap()
    }

    #[test]
    fn rejects_bad_tables() {
        let err = PromonoidalStructure::new(chain2(), Carrier::Bool, vec![Value::Bool(false); 7], None, None);
        assert!(matches!(err, Err(StructureError::TableSize { table: "p", .. })));
        let err = PromonoidalStructure::new(
            chain2(),
            Carrier::Bool,
            vec![Value::Nat(0); 8],
            None,
            None,
        );
        assert!(matches!(err, Err(StructureError::Carrier(_))));
        let err = PromonoidalStructure::new(
            chain2(),
            Carrier::Bool,
            vec![Value::Bool(false); 8],
            None,
            Some(vec![0, 2]),
        );
        assert!(matches!(err, Err(StructureError::IndexOutOfRange { .. })));
    }

    #[test]
    fn nat_requires_discrete_order() {
        let err = PromonoidalStructure::new(chain2(), Carrier::Nat, vec![Value::Nat(0); 8], None, None);
        assert_eq!(err.unwrap_err(), StructureError::NonDiscreteNat(Carrier::Nat));
        let ok = PromonoidalStructure::new(
            FinitePoset::discrete(["a", "b"]).unwrap(),
            Carrier::Nat,
            vec![Value::Nat(0); 8],
            None,
            None,
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn hom_and_duality_predicates() {
        let s = PromonoidalStructure::new(
            chain2(),
            Carrier::MaxPlus,
            vec![Carrier::MaxPlus.bottom(); 8],
            None,
            Some(vec![1, 0]),
        )
        .unwrap();
        assert_eq!(s.hom(0, 1), Carrier::MaxPlus.unit());
        assert_eq!(s.hom(1, 0), Carrier::MaxPlus.bottom());
        assert!(s.duality_is_bijective());
        assert!(s.duality_is_involutive());
        let s = s.with_duality(Some(vec![1, 1])).unwrap();
        assert!(!s.duality_is_bijective());
        assert!(!s.duality_is_involutive());
    }
}
