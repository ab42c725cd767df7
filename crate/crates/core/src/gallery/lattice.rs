//! Finite lattices with an orthocomplement or a Heyting implication.

use super::GalleryError;
use crate::structures::FinitePoset;

/// A finite poset with all binary meets and joins, stored as tables.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    poset: FinitePoset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    pub fn new(poset: FinitePoset) -> Result<Self, GalleryError> {
        let n = poset.len();
        if n == 0 {
            return Err(GalleryError::NotALattice("empty poset".into()));
        }
        let greatest = |set: &[usize]| set.iter().copied().find(|&x| set.iter().all(|&y| poset.le(y, x)));
        let least = |set: &[usize]| set.iter().copied().find(|&x| set.iter().all(|&y| poset.le(x, y)));
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&x| poset.le(x, a) && poset.le(x, b)).collect();
                let upper: Vec<usize> = (0..n).filter(|&x| poset.le(a, x) && poset.le(b, x)).collect();
                let no = |what: &str| {
                    GalleryError::NotALattice(format!(
                        "`{}` and `{}` have no {what}",
                        poset.label(a),
                        poset.label(b)
                    ))
                };
                meet[a * n + b] = greatest(&lower).ok_or_else(|| no("meet"))?;
                join[a * n + b] = least(&upper).ok_or_else(|| no("join"))?;
            }
        }
        let all: Vec<usize> = (0..n).collect();
        let bottom = least(&all).expect("finite lattice has a bottom");
        let top = greatest(&all).expect("finite lattice has a top");
        Ok(Lattice {
            poset,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.poset.le(a, b)
    }
}

/// A bounded lattice with an order-reversing involutive complement `a ↦ a'`
/// such that `a ∧ a' = 0` and `a ∨ a' = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoLattice {
    lattice: Lattice,
    complement: Vec<usize>,
}

impl OrthoLattice {
    pub fn new(poset: FinitePoset, complement: Vec<usize>) -> Result<Self, GalleryError> {
        let lattice = Lattice::new(poset)?;
        let n = lattice.len();
        let bad = |why: String| Err(GalleryError::NotOrtho(why));
        if complement.len() != n || complement.iter().any(|&c| c >= n) {
            return bad("complement must map every element into the lattice".into());
        }
        let label = |i: usize| lattice.poset().label(i).to_string();
        for a in 0..n {
            let ca = complement[a];
            if complement[ca] != a {
                return bad(format!("complement is not involutive at `{}`", label(a)));
            }
            if lattice.meet(a, ca) != lattice.bottom() || lattice.join(a, ca) != lattice.top() {
                return bad(format!("`{}` and its complement are not complementary", label(a)));
            }
            for b in lattice.poset().above(a) {
                if !lattice.le(complement[b], ca) {
                    return bad(format!("complement does not reverse `{}` ≤ `{}`", label(a), label(b)));
                }
            }
        }
        Ok(OrthoLattice { lattice, complement })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn complement(&self, a: usize) -> usize {
        self.complement[a]
    }

    pub fn complement_map(&self) -> &[usize] {
        &self.complement
    }

    /// `a ⊥ b` iff `a ≤ b'`.
    pub fn orthogonal(&self, a: usize, b: usize) -> bool {
        self.lattice.le(a, self.complement[b])
    }

    /// First pair `a ≤ b` with `b ≠ a ∨ (a' ∧ b)`, or `None` if the lattice
    /// is orthomodular.
    pub fn orthomodular_witness(&self) -> Option<(usize, usize)> {
        let l = &self.lattice;
        l.poset()
            .strict_pairs()
            .find(|&(a, b)| l.join(a, l.meet(self.complement[a], b)) != b)
    }

    pub fn is_orthomodular(&self) -> bool {
        self.orthomodular_witness().is_none()
    }

    /// Subsets of `{1..n}` ordered by inclusion, indexed by bitmask.
    pub fn boolean(n: usize) -> Result<Self, GalleryError> {
        let poset = super::subset_poset(n, true)?;
        let full = (1usize << n) - 1;
        Self::new(poset, (0..=full).map(|m| full ^ m).collect())
    }

    /// `MO2`: `0 < a, a', b, b' < 1`.
    pub fn mo2() -> Self {
        let atoms = ["a", "a'", "b", "b'"];
        let pairs: Vec<(&str, &str)> = atoms.iter().flat_map(|&x| [("0", x), (x, "1")]).collect();
        let poset = FinitePoset::from_labels(["0", "a", "a'", "b", "b'", "1"], &pairs).expect("MO2 order");
        Self::new(poset, vec![5, 2, 1, 4, 3, 0]).expect("MO2 is an ortholattice")
    }

    /// The benzene ring `O6`: chains `0 < a < b < 1` and `0 < b' < a' < 1`.
    pub fn o6() -> Self {
        let poset = FinitePoset::from_labels(
            ["0", "a", "b", "b'", "a'", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "b'"), ("b'", "a'"), ("a'", "1")],
        )
        .expect("O6 order");
        Self::new(poset, vec![5, 4, 3, 2, 1, 0]).expect("O6 is an ortholattice")
    }
}

/// A finite lattice with relative pseudo-complement `a ⇒ b`, the greatest
/// `x` with `a ∧ x ≤ b`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeytingLattice {
    lattice: Lattice,
    implication: Vec<usize>,
}

impl HeytingLattice {
    pub fn new(poset: FinitePoset) -> Result<Self, GalleryError> {
        let lattice = Lattice::new(poset)?;
        let n = lattice.len();
        let mut implication = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let candidates: Vec<usize> = (0..n).filter(|&x| lattice.le(lattice.meet(a, x), b)).collect();
                let max = candidates
                    .iter()
                    .copied()
                    .find(|&x| candidates.iter().all(|&y| lattice.le(y, x)))
                    .ok_or_else(|| GalleryError::NotHeyting {
                        a: lattice.poset().label(a).to_string(),
                        b: lattice.poset().label(b).to_string(),
                    })?;
                implication[a * n + b] = max;
            }
        }
        Ok(HeytingLattice { lattice, implication })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn implication(&self, a: usize, b: usize) -> usize {
        self.implication[a * self.lattice.len() + b]
    }

    /// `a ⇒ 0`.
    pub fn negation(&self, a: usize) -> usize {
        self.implication(a, self.lattice.bottom())
    }

    /// The chain `0 < 1 < … < n−1`, labelled by rank.
    pub fn chain(n: usize) -> Result<Self, GalleryError> {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let poset = FinitePoset::new(labels, (1..n).map(|i| (i - 1, i)))?;
        Self::new(poset)
    }
}
