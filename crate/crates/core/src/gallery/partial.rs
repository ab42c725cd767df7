//! Partial binary operations: generalized effect algebras `(A, ⊕, 0)`,
//! generalized difference algebras `(A, ⊖, 0)`, and groupoids.

use super::GalleryError;
use crate::structures::FinitePoset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableMode {
    /// `op(a, b) = a ⊕ b`.
    Effect,
    /// `op(c, b) = c ⊖ b`.
    Difference,
    /// `op(a, b) = ab`, meaning `a` then `b`.
    Groupoid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartialMonoidTable {
    labels: Vec<String>,
    op: Vec<Option<usize>>,
    mode: TableMode,
    zero: Option<usize>,
}

fn invalid(why: String) -> GalleryError {
    GalleryError::InvalidTable(why)
}

impl PartialMonoidTable {
    fn raw(labels: Vec<String>, op: Vec<Option<usize>>, mode: TableMode, zero: Option<usize>) -> Result<Self, GalleryError> {
        let n = labels.len();
        if op.len() != n * n {
            return Err(invalid(format!("operation table has {} entries, expected {}", op.len(), n * n)));
        }
        if op.iter().flatten().any(|&x| x >= n) || zero.is_some_and(|z| z >= n) {
            return Err(invalid("operation result out of range".into()));
        }
        Ok(PartialMonoidTable { labels, op, mode, zero })
    }

    /// Validates neutrality of `zero`, associativity where defined,
    /// cancellation and positivity.
    pub fn effect(labels: Vec<String>, op: Vec<Option<usize>>, zero: usize) -> Result<Self, GalleryError> {
        let t = Self::raw(labels, op, TableMode::Effect, Some(zero))?;
        let n = t.len();
        for a in 0..n {
            if t.op(zero, a) != Some(a) || t.op(a, zero) != Some(a) {
                return Err(invalid(format!("0 is not neutral for `{}`", t.labels[a])));
            }
        }
        t.check_associative()?;
        for a in 0..n {
            for b in 0..n {
                for c in (b + 1)..n {
                    let clash = |x: Option<usize>, y: Option<usize>| x.is_some() && x == y;
                    if clash(t.op(a, b), t.op(a, c)) || clash(t.op(b, a), t.op(c, a)) {
                        return Err(invalid(format!("not cancellative at `{}`", t.labels[a])));
                    }
                }
                if t.op(a, b) == Some(zero) && (a != zero || b != zero) {
                    return Err(invalid("not positive".into()));
                }
            }
        }
        Ok(t)
    }

    /// Validates `c ⊖ 0 = c`, `c ⊖ (c ⊖ a) = a`, that "`c ⊖ a` is defined"
    /// is a partial order, and `(c ⊖ a) ⊖ (c ⊖ b) = b ⊖ a` for `a ≤ b ≤ c`.
    pub fn difference(labels: Vec<String>, op: Vec<Option<usize>>, zero: usize) -> Result<Self, GalleryError> {
        let t = Self::raw(labels, op, TableMode::Difference, Some(zero))?;
        let n = t.len();
        let order = t.order()?;
        for c in 0..n {
            if t.op(c, zero) != Some(c) {
                return Err(invalid(format!("`{}` ⊖ 0 is not `{}`", t.labels[c], t.labels[c])));
            }
            for a in 0..n {
                let Some(d) = t.op(c, a) else { continue };
                if t.op(c, d) != Some(a) {
                    return Err(invalid(format!("c ⊖ (c ⊖ a) ≠ a at `{}`, `{}`", t.labels[c], t.labels[a])));
                }
                for b in 0..n {
                    if !(order.le(a, b) && order.le(b, c)) {
                        continue;
                    }
                    let (cb, ba) = (t.op(c, b), t.op(b, a));
                    let lhs = cb.and_then(|cb| t.op(d, cb));
                    if lhs.is_none() || lhs != ba {
                        return Err(invalid(format!(
                            "(c ⊖ a) ⊖ (c ⊖ b) ≠ b ⊖ a at ({}, {}, {})",
                            t.labels[a], t.labels[b], t.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(t)
    }

    /// Validates associativity, identities on both sides of every arrow,
    /// composability exactly at matching endpoints, and inverses.
    pub fn groupoid(labels: Vec<String>, op: Vec<Option<usize>>) -> Result<Self, GalleryError> {
        let t = Self::raw(labels, op, TableMode::Groupoid, None)?;
        let n = t.len();
        t.check_associative()?;
        let ids: Vec<usize> = (0..n).filter(|&e| t.op(e, e) == Some(e)).collect();
        for &e in &ids {
            if (0..n).any(|a| t.op(e, a).is_some_and(|x| x != a) || t.op(a, e).is_some_and(|x| x != a)) {
                return Err(invalid(format!("idempotent `{}` is not an identity", t.labels[e])));
            }
        }
        let source = |a: usize| ids.iter().copied().find(|&e| t.op(e, a) == Some(a));
        let target = |a: usize| ids.iter().copied().find(|&e| t.op(a, e) == Some(a));
        let mut ends = Vec::with_capacity(n);
        for a in 0..n {
            match (source(a), target(a)) {
                (Some(s), Some(e)) => ends.push((s, e)),
                _ => return Err(invalid(format!("`{}` lacks an identity", t.labels[a]))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                if t.op(a, b).is_some() != (ends[a].1 == ends[b].0) {
                    return Err(invalid(format!(
                        "`{}``{}` composability disagrees with endpoints",
                        t.labels[a], t.labels[b]
                    )));
                }
            }
            if t.inverse(a).is_none() {
                return Err(invalid(format!("`{}` has no inverse", t.labels[a])));
            }
        }
        Ok(t)
    }

    fn check_associative(&self) -> Result<(), GalleryError> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = self.op(a, b).and_then(|ab| self.op(ab, c));
                    let right = self.op(b, c).and_then(|bc| self.op(a, bc));
                    if left != right {
                        return Err(invalid(format!(
                            "not associative at ({}, {}, {})",
                            self.labels[a], self.labels[b], self.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mode(&self) -> TableMode {
        self.mode
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn op(&self, a: usize, b: usize) -> Option<usize> {
        self.op[a * self.len() + b]
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn is_identity(&self, a: usize) -> bool {
        self.mode == TableMode::Groupoid && self.op(a, a) == Some(a)
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.len()).find(|&b| {
            matches!((self.op(a, b), self.op(b, a)), (Some(x), Some(y)) if self.op(x, x) == Some(x) && self.op(y, y) == Some(y))
        })
    }

    /// The `x` with `a ⊕ x = b` (effect mode; unique by cancellation).
    pub fn residual(&self, b: usize, a: usize) -> Option<usize> {
        (0..self.len()).find(|&x| self.op(a, x) == Some(b))
    }

    /// Effect: `a ≤ b` iff `a ⊕ x = b` for some `x`. Difference: `a ≤ c`
    /// iff `c ⊖ a` is defined. Groupoid: discrete.
    pub fn order(&self) -> Result<FinitePoset, GalleryError> {
        let n = self.len();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let le = match self.mode {
                    TableMode::Effect => self.residual(b, a).is_some(),
                    TableMode::Difference => self.op(b, a).is_some(),
                    TableMode::Groupoid => a == b,
                };
                if le {
                    pairs.push((a, b));
                }
            }
        }
        let poset = FinitePoset::new(self.labels.clone(), pairs)?;
        // The closure must not add anything: the relation itself is the order.
        for a in 0..n {
            for b in 0..n {
                let direct = match self.mode {
                    TableMode::Effect => self.residual(b, a).is_some(),
                    TableMode::Difference => self.op(b, a).is_some(),
                    TableMode::Groupoid => a == b,
                };
                if poset.le(a, b) != direct {
                    return Err(invalid(format!(
                        "induced relation is not transitive at ({}, {})",
                        self.labels[a], self.labels[b]
                    )));
                }
            }
        }
        Ok(poset)
    }

    /// `{0, …, n}` with `a ⊕ b = a + b` when `a + b ≤ n`.
    pub fn truncated_chain_sum(n: usize) -> Self {
        let labels = (0..=n).map(|i| i.to_string()).collect();
        let op = (0..=n)
            .flat_map(|a| (0..=n).map(move |b| (a + b <= n).then_some(a + b)))
            .collect();
        Self::effect(labels, op, 0).expect("truncated chain is an effect algebra")
    }

    /// `{0, …, n}` with `c ⊖ b = c − b` when `b ≤ c`.
    pub fn truncated_chain_difference(n: usize) -> Self {
        let labels = (0..=n).map(|i| i.to_string()).collect();
        let op = (0..=n)
            .flat_map(|c| (0..=n).map(move |b| (b <= c).then(|| c - b)))
            .collect();
        Self::difference(labels, op, 0).expect("truncated chain is a difference algebra")
    }

    /// The group `ℤ/2 = {e, g}`.
    pub fn z2() -> Self {
        let op = vec![Some(0), Some(1), Some(1), Some(0)];
        Self::groupoid(vec!["e".into(), "g".into()], op).expect("Z/2 is a group")
    }

    /// The pair groupoid on `{1..k}`: one arrow `i->j` for every pair, with
    /// `(i->j)(j->l) = i->l`.
    pub fn pair_groupoid(k: usize) -> Self {
        let arrows: Vec<(usize, usize)> = (1..=k).flat_map(|i| (1..=k).map(move |j| (i, j))).collect();
        let labels = arrows.iter().map(|(i, j)| format!("{i}->{j}")).collect();
        let index = |i: usize, j: usize| (i - 1) * k + (j - 1);
        let op = arrows
            .iter()
            .flat_map(|&(i, j)| arrows.iter().map(move |&(j2, l)| (j == j2).then(|| index(i, l))))
            .collect();
        Self::groupoid(labels, op).expect("pair groupoid")
    }
}
