use std::collections::HashMap;

use super::StructureError;

/// A finite partial order on labelled objects, stored as a dense `le` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    le: Vec<bool>,
}

impl FinitePoset {
    /// Takes the reflexive-transitive closure of `le_pairs` and rejects it if
    /// two distinct objects end up below each other.
    pub fn new<S, I>(objects: impl IntoIterator<Item = S>, le_pairs: I) -> Result<Self, StructureError>
    where
        S: Into<String>,
        I: IntoIterator<Item = (usize, usize)>,
    {
        let labels: Vec<String> = objects.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(StructureError::DuplicateLabel(label.clone()));
            }
        }
        let n = labels.len();
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for (a, b) in le_pairs {
            if a >= n || b >= n {
                return Err(StructureError::IndexOutOfRange { index: a.max(b), len: n });
            }
            le[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if !le[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if le[k * n + j] {
                        le[i * n + j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if le[i * n + j] && le[j * n + i] {
                    return Err(StructureError::NotAPoset {
                        a: labels[i].clone(),
                        b: labels[j].clone(),
                    });
                }
            }
        }
        Ok(FinitePoset { labels, index, le })
    }

    /// Same as [`FinitePoset::new`] with pairs given by label.
    pub fn from_labels<S: Into<String>>(
        objects: impl IntoIterator<Item = S>,
        le_pairs: &[(&str, &str)],
    ) -> Result<Self, StructureError> {
        let discrete = Self::discrete(objects)?;
        let pairs = le_pairs
            .iter()
            .map(|(a, b)| Ok((discrete.require(a)?, discrete.require(b)?)))
            .collect::<Result<Vec<_>, StructureError>>()?;
        Self::new(discrete.labels, pairs)
    }

    /// The equality order.
    pub fn discrete<S: Into<String>>(objects: impl IntoIterator<Item = S>) -> Result<Self, StructureError> {
        Self::new(objects, std::iter::empty())
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

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub(crate) fn require(&self, label: &str) -> Result<usize, StructureError> {
        self.index_of(label)
            .ok_or_else(|| StructureError::UnknownObject(label.to_string()))
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.len() + b]
    }

    pub fn is_discrete(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| a == b || !self.le(a, b)))
    }

    /// Indices `x` with `x ≤ a`, ascending.
    pub fn below(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&x| self.le(x, a))
    }

    /// Indices `x` with `a ≤ x`, ascending.
    pub fn above(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&x| self.le(a, x))
    }

    /// Strict pairs `a < b` in lexicographic index order.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |a| (0..n).filter(move |&b| a != b && self.le(a, b)).map(move |b| (a, b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_is_discrete() {
        let p = FinitePoset::from_labels(["x"], &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.is_discrete());
        assert!(p.le(0, 0));
    }

    #[test]
    fn two_chain() {
        let p = FinitePoset::from_labels(["a", "b"], &[("a", "b")]).unwrap();
        assert!(p.le(0, 1));
        assert!(!p.le(1, 0));
        assert!(!p.is_discrete());
    }

    #[test]
    fn cycle_is_rejected() {
        let err = FinitePoset::from_labels(["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, StructureError::NotAPoset { .. }));
    }

    #[test]
    fn closure_is_transitive() {
        let p = FinitePoset::from_labels(["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p.le(0, 2));
        assert_eq!(p.strict_pairs().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(p.below(2).collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn long_cycle_and_duplicates_are_rejected() {
        let err = FinitePoset::from_labels(["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
        assert!(err.is_err());
        assert_eq!(
            FinitePoset::discrete(["a", "a"]).unwrap_err(),
            StructureError::DuplicateLabel("a".into())
        );
        assert!(FinitePoset::from_labels(["a"], &[("a", "z")]).is_err());
    }
}
