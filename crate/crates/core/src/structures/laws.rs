use std::fmt;

use serde_json::{json, Value as Json};

use super::{PromonoidalStructure, StructureError};
use crate::carriers::Value;

/// Checkers stop after this many witnesses.
pub const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    Variance,
    Associativity,
    Unit,
    Cyclic,
    DualCompat,
}

impl Law {
    pub const ALL: [Law; 5] = [
        Law::Variance,
        Law::Associativity,
        Law::Unit,
        Law::Cyclic,
        Law::DualCompat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Variance => "variance",
            Law::Associativity => "associativity",
            Law::Unit => "unit",
            Law::Cyclic => "cyclic",
            Law::DualCompat => "dual-compat",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An index tuple at which two values that should be related are not.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub objects: Vec<String>,
    /// Which comparison failed, e.g. `"left unit"`.
    pub context: &'static str,
    pub left: Value,
    pub right: Value,
}

impl Witness {
    pub fn to_json(&self) -> Json {
        json!({
            "objects": self.objects,
            "context": self.context,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
        })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) {}: {} vs {}",
            self.objects.join(", "),
            self.context,
            self.left,
            self.right
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub law: Law,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
}

/// A law that was either checked or does not apply to the structure.
#[derive(Debug, Clone, PartialEq)]
pub struct LawOutcome {
    pub law: Law,
    pub report: Option<CheckReport>,
}

impl LawOutcome {
    pub fn status(&self) -> &'static str {
        match &self.report {
            None => "n/a",
            Some(r) if r.passed => "pass",
            Some(_) => "fail",
        }
    }

    pub fn failed(&self) -> bool {
        self.report.as_ref().is_some_and(|r| !r.passed)
    }

    pub fn witnesses(&self) -> &[Witness] {
        self.report.as_ref().map_or(&[], |r| &r.witnesses)
    }

    pub fn to_json(&self) -> Json {
        json!({
            "law": self.law.name(),
            "status": self.status(),
            "witnesses": self.witnesses().iter().map(Witness::to_json).collect::<Vec<_>>(),
        })
    }
}

struct Collector<'a> {
    structure: &'a PromonoidalStructure,
    law: Law,
    witnesses: Vec<Witness>,
}

impl<'a> Collector<'a> {
    fn new(structure: &'a PromonoidalStructure, law: Law) -> Self {
        Collector {
            structure,
            law,
            witnesses: Vec::new(),
        }
    }

    fn full(&self) -> bool {
        self.witnesses.len() >= MAX_WITNESSES
    }

    fn push(&mut self, indices: &[usize], context: &'static str, left: Value, right: Value) {
        if self.full() {
            return;
        }
        self.witnesses.push(Witness {
            indices: indices.to_vec(),
            objects: indices.iter().map(|&i| self.structure.label(i).to_string()).collect(),
            context,
            left,
            right,
        });
    }

    fn finish(self) -> CheckReport {
        CheckReport {
            law: self.law,
            passed: self.witnesses.is_empty(),
            witnesses: self.witnesses,
        }
    }
}

impl PromonoidalStructure {
    /// `p` is contravariant in its first two arguments and covariant in the
    /// third; `j` is covariant. Witness tuples are `(a, b, c, a', b', c')`
    /// for `p(a,b,c) ≰ p(a',b',c')` and `(a, a')` for `j`.
    pub fn check_variance(&self, tol: f64) -> Result<CheckReport, StructureError> {
        let mut out = Collector::new(self, Law::Variance);
        let poset = self.poset();
        let carrier = self.carrier();
        let n = self.len();
        'p: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let here = self.p(a, b, c);
                    for a2 in poset.below(a) {
                        for b2 in poset.below(b) {
                            for c2 in poset.above(c) {
                                if (a2, b2, c2) == (a, b, c) {
                                    continue;
                                }
                                let there = self.p(a2, b2, c2);
                                if !carrier.leq(here, there, tol)? {
                                    out.push(&[a, b, c, a2, b2, c2], "p", here, there);
                                    if out.full() {
                                        break 'p;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        if let Some(j) = self.j_table() {
            for (a, a2) in poset.strict_pairs() {
                if !carrier.leq(j[a], j[a2], tol)? {
                    out.push(&[a, a2], "j", j[a], j[a2]);
                }
            }
        }
        Ok(out.finish())
    }

    /// `⋁_x p(i,j,x) ⊗ p(x,k,l) = ⋁_x p(i,x,l) ⊗ p(j,k,x)` for every `(i,j,k,l)`.
    pub fn check_associativity(&self, tol: f64) -> Result<CheckReport, StructureError> {
        let mut out = Collector::new(self, Law::Associativity);
        let carrier = self.carrier();
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut left = carrier.bottom();
                        let mut right = carrier.bottom();
                        for x in 0..n {
                            left = carrier.join2(left, carrier.tensor(self.p(i, j, x), self.p(x, k, l))?)?;
                            right = carrier.join2(right, carrier.tensor(self.p(i, x, l), self.p(j, k, x))?)?;
                        }
                        if !carrier.approx_eq(left, right, tol)? {
                            out.push(&[i, j, k, l], "(ij)k vs i(jk)", left, right);
                            if out.full() {
                                return Ok(out.finish());
                            }
                        }
                    }
                }
            }
        }
        Ok(out.finish())
    }

    /// `⋁_x j(x) ⊗ p(x,a,b) = A(a,b) = ⋁_x j(x) ⊗ p(a,x,b)`.
    pub fn check_unit(&self, tol: f64) -> Result<CheckReport, StructureError> {
        let j = self.j_table().ok_or(StructureError::MissingUnit)?;
        let mut out = Collector::new(self, Law::Unit);
        let carrier = self.carrier();
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let hom = self.hom(a, b);
                let mut left = carrier.bottom();
                let mut right = carrier.bottom();
                for (x, &jx) in j.iter().enumerate() {
                    left = carrier.join2(left, carrier.tensor(jx, self.p(x, a, b))?)?;
                    right = carrier.join2(right, carrier.tensor(jx, self.p(a, x, b))?)?;
                }
                if !carrier.approx_eq(left, hom, tol)? {
                    out.push(&[a, b], "left unit", left, hom);
                }
                if !carrier.approx_eq(right, hom, tol)? {
                    out.push(&[a, b], "right unit", right, hom);
                }
                if out.full() {
                    return Ok(out.finish());
                }
            }
        }
        Ok(out.finish())
    }

    /// `p(a,b,Sc) = p(b,c,Sa) = p(c,a,Sb)` for every `(a,b,c)`.
    pub fn check_cyclic(&self, tol: f64) -> Result<CheckReport, StructureError> {
        let s = self.s_map().ok_or(StructureError::MissingDuality)?;
        let mut out = Collector::new(self, Law::Cyclic);
        let carrier = self.carrier();
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let x = self.p(a, b, s[c]);
                    let y = self.p(b, c, s[a]);
                    let z = self.p(c, a, s[b]);
                    if !carrier.approx_eq(x, y, tol)? {
                        out.push(&[a, b, c], "p(a,b,Sc) vs p(b,c,Sa)", x, y);
                    } else if !carrier.approx_eq(y, z, tol)? {
                        out.push(&[a, b, c], "p(b,c,Sa) vs p(c,a,Sb)", y, z);
                    }
                    if out.full() {
                        return Ok(out.finish());
                    }
                }
            }
        }
        Ok(out.finish())
    }

    /// `p(Si,Sj,Sk) = p(i,j,k)*` for every `(i,j,k)`.
    pub fn check_dual_compat(&self, tol: f64) -> Result<CheckReport, StructureError> {
        let s = self.s_map().ok_or(StructureError::MissingDuality)?;
        let carrier = self.carrier();
        let mut out = Collector::new(self, Law::DualCompat);
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.p(s[i], s[j], s[k]);
                    let right = carrier.star(self.p(i, j, k))?;
                    if !carrier.approx_eq(left, right, tol)? {
                        out.push(&[i, j, k], "p(Si,Sj,Sk) vs p(i,j,k)*", left, right);
                        if out.full() {
                            return Ok(out.finish());
                        }
                    }
                }
            }
        }
        Ok(out.finish())
    }

    /// Runs every law in [`Law::ALL`] order. Unit is not applicable without
    /// `j`; cyclic and dual-compat are not applicable without `S` (dual-compat
    /// also needs a carrier with a star).
    pub fn check_all(&self, tol: f64) -> Result<Vec<LawOutcome>, StructureError> {
        Law::ALL
            .into_iter()
            .map(|law| {
                let report = match law {
                    Law::Variance => Some(self.check_variance(tol)?),
                    Law::Associativity => Some(self.check_associativity(tol)?),
                    Law::Unit => self.j_table().map(|_| self.check_unit(tol)).transpose()?,
                    Law::Cyclic => self.s_map().map(|_| self.check_cyclic(tol)).transpose()?,
                    Law::DualCompat => match self.s_map() {
                        Some(_) if self.carrier().supports_star() => Some(self.check_dual_compat(tol)?),
                        _ => None,
                    },
                };
                Ok(LawOutcome { law, report })
            })
            .collect()
    }
}
