//! Constructors for the example families of promonoidal structures, plus
//! the named fixtures used by the CLI and the test suites.

mod fixtures;
pub mod functions;
mod lattice;
mod partial;

use thiserror::Error;

use crate::carriers::{Carrier, Value};
use crate::structures::{FinitePoset, PromonoidalStructure, StructureError};

pub use fixtures::{fano_table, fibonacci, fixture, fixture_with_carrier, ising, FIXTURE_PATTERNS};
pub use lattice::{HeytingLattice, Lattice, OrthoLattice};
pub use partial::{PartialMonoidTable, TableMode};

/// Largest ground set for [`powerset_structure`]; `p` is dense, so `2^6`
/// objects already mean 262 144 entries.
pub const MAX_POWERSET: usize = 6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GalleryError {
    #[error("invalid operation table: {0}")]
    InvalidTable(String),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("not an ortholattice: {0}")]
    NotOrtho(String),
    #[error("not a Heyting algebra: `{a}` ⇒ `{b}` has no greatest candidate")]
    NotHeyting { a: String, b: String },
    #[error("{constructor} does not support carrier {carrier}")]
    UnsupportedCarrier {
        constructor: &'static str,
        carrier: Carrier,
    },
    #[error("ground set of size {0} exceeds the limit of {MAX_POWERSET}")]
    SizeLimit(usize),
    #[error("{0} requires a table in {1:?} mode")]
    WrongMode(&'static str, TableMode),
    #[error("doubling requires a commutative effect algebra")]
    NonCommutative,
    #[error("duality map is not an involution")]
    NonInvolutive,
    #[error("probability {0} at ({1}, {2}, {3}) is outside [0, 1]")]
    OutOfRange(f64, usize, usize, usize),
    #[error("table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Carriers in which a {0,1}-valued table can be written as unit/bottom.
fn require_boolean_like(constructor: &'static str, carrier: Carrier) -> Result<(), GalleryError> {
    if carrier.is_idempotent() {
        Ok(())
    } else {
        Err(GalleryError::UnsupportedCarrier { constructor, carrier })
    }
}

pub(crate) fn subset_label(mask: usize) -> String {
    let members: Vec<String> = (0..usize::BITS as usize)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", members.join(","))
}

/// Subsets of `{1..n}` indexed by bitmask, either discrete or by inclusion.
pub(crate) fn subset_poset(n: usize, inclusion: bool) -> Result<FinitePoset, GalleryError> {
    if n > MAX_POWERSET {
        return Err(GalleryError::SizeLimit(n));
    }
    let size = 1usize << n;
    let labels = (0..size).map(subset_label);
    let pairs = (0..size)
        .flat_map(|a| (0..size).map(move |b| (a, b)))
        .filter(|&(a, b)| inclusion && a & b == a);
    Ok(FinitePoset::new(labels, pairs)?)
}

/// Discrete powerset of `{1..n}`: `p(a, b, c)` is unit iff `a`, `b` are
/// disjoint with union `c`; `j` is unit at `∅`; `S` is complement.
pub fn powerset_structure(n: usize, carrier: Carrier) -> Result<PromonoidalStructure, GalleryError> {
    require_boolean_like("powerset_structure", carrier)?;
    let poset = subset_poset(n, false)?;
    let full = (1usize << n) - 1;
    Ok(PromonoidalStructure::from_fn(
        poset,
        carrier,
        |a, b, c| carrier.indicator(a & b == 0 && a | b == c),
        Some(&|a| carrier.indicator(a == 0)),
        Some((0..=full).map(|a| full ^ a).collect()),
    )?)
}

/// Discrete structure on an ortholattice: `p(a, b, c)` is unit iff
/// `a ⊥ b` and `a ∨ b = c`; `j` is unit at `0`; `S` is the complement.
pub fn oml_structure(l: &OrthoLattice, carrier: Carrier) -> Result<PromonoidalStructure, GalleryError> {
    require_boolean_like("oml_structure", carrier)?;
    let lat = l.lattice();
    let poset = FinitePoset::discrete(lat.poset().labels().iter().cloned())?;
    let zero = lat.bottom();
    Ok(PromonoidalStructure::from_fn(
        poset,
        carrier,
        |a, b, c| carrier.indicator(l.orthogonal(a, b) && lat.join(a, b) == c),
        Some(&|a| carrier.indicator(a == zero)),
        Some(l.complement_map().to_vec()),
    )?)
}

/// Structure on the Heyting order itself: `p(a, b, c)` is unit iff
/// `a ∧ b ≤ c`; `j` is unit at the top; `S a = a ⇒ 0`.
pub fn heyting_structure(h: &HeytingLattice, carrier: Carrier) -> Result<PromonoidalStructure, GalleryError> {
    require_boolean_like("heyting_structure", carrier)?;
    let lat = h.lattice();
    let top = lat.top();
    Ok(PromonoidalStructure::from_fn(
        lat.poset().clone(),
        carrier,
        |a, b, c| carrier.indicator(lat.le(lat.meet(a, b), c)),
        Some(&|a| carrier.indicator(a == top)),
        Some((0..lat.len()).map(|a| h.negation(a)).collect()),
    )?)
}

/// Discrete structure on the arrows: `p(a, b, c)` is unit iff `ab = c`;
/// `j` marks identities; `S` is inversion.
pub fn groupoid_structure(
    g: &PartialMonoidTable,
    carrier: Carrier,
) -> Result<PromonoidalStructure, GalleryError> {
    require_boolean_like("groupoid_structure", carrier)?;
    if g.mode() != TableMode::Groupoid {
        return Err(GalleryError::WrongMode("groupoid_structure", TableMode::Groupoid));
    }
    let poset = FinitePoset::discrete(g.labels().iter().cloned())?;
    let inverse = (0..g.len())
        .map(|a| g.inverse(a).expect("validated groupoid"))
        .collect();
    Ok(PromonoidalStructure::from_fn(
        poset,
        carrier,
        |a, b, c| carrier.indicator(g.op(a, b) == Some(c)),
        Some(&|a| carrier.indicator(g.is_identity(a))),
        Some(inverse),
    )?)
}

/// `p(a, b, c)` is unit iff `a ⊕ b` is defined and `≤ c`; `j ≡ unit`.
pub fn effect_structure(a: &PartialMonoidTable, carrier: Carrier) -> Result<PromonoidalStructure, GalleryError> {
    require_boolean_like("effect_structure", carrier)?;
    if a.mode() != TableMode::Effect {
        return Err(GalleryError::WrongMode("effect_structure", TableMode::Effect));
    }
    let order = a.order()?;
    let zero = a.zero().expect("effect tables have a zero");
    let j = |x: usize| carrier.indicator(order.le(zero, x));
    Ok(PromonoidalStructure::from_fn(
        order.clone(),
        carrier,
        |x, y, z| carrier.indicator(a.op(x, y).is_some_and(|s| order.le(s, z))),
        Some(&j),
        None,
    )?)
}

/// `p(a, b, c)` is unit iff `c ⊖ b` is defined and `a ≤ c ⊖ b`; `j ≡ unit`.
pub fn difference_structure(
    d: &PartialMonoidTable,
    carrier: Carrier,
) -> Result<PromonoidalStructure, GalleryError> {
    require_boolean_like("difference_structure", carrier)?;
    if d.mode() != TableMode::Difference {
        return Err(GalleryError::WrongMode("difference_structure", TableMode::Difference));
    }
    let order = d.order()?;
    let zero = d.zero().expect("difference tables have a zero");
    let j = |x: usize| carrier.indicator(order.le(zero, x));
    Ok(PromonoidalStructure::from_fn(
        order.clone(),
        carrier,
        |x, y, z| carrier.indicator(d.op(z, y).is_some_and(|r| order.le(x, r))),
        Some(&j),
        None,
    )?)
}

/// `a ⊕ b ≤ c` iff `a ≤ c ⊖ b`, for all `a, b, c`.
pub fn galois_check(sum: &PartialMonoidTable, diff: &PartialMonoidTable) -> Result<bool, GalleryError> {
    if sum.mode() != TableMode::Effect {
        return Err(GalleryError::WrongMode("galois_check", TableMode::Effect));
    }
    if diff.mode() != TableMode::Difference {
        return Err(GalleryError::WrongMode("galois_check", TableMode::Difference));
    }
    if sum.labels() != diff.labels() {
        return Ok(false);
    }
    let sum_order = sum.order()?;
    let diff_order = diff.order()?;
    let n = sum.len();
    Ok((0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                let left = sum.op(a, b).is_some_and(|s| sum_order.le(s, c));
                let right = diff.op(c, b).is_some_and(|r| diff_order.le(a, r));
                left == right
            })
        })
    }))
}

/// Doubling `A + A^op` of a commutative effect algebra. Objects are `a`
/// (indices `0..n`) followed by `a*` (indices `n..2n`).
///
/// Order: `a ≤ b` as in `A`; `a* ≤ b*` iff `b ≤ a`; `a ≤ b*` iff `a ⊕ b`
/// is defined; never `a* ≤ b`. Sum: `a ⊕ b` as in `A`;
/// `a ⊕ b* = b* ⊕ a = (b ⊖ a)*` when `a ≤ b`; `a* ⊕ b*` undefined.
/// `p(x, y, z)` is unit iff `x ⊕ y` is defined and `≤ z`; `j(x)` is unit iff
/// `0 ≤ x`; `S` swaps the copies.
pub fn double(a: &PartialMonoidTable, carrier: Carrier) -> Result<PromonoidalStructure, GalleryError> {
    require_boolean_like("double", carrier)?;
    if a.mode() != TableMode::Effect {
        return Err(GalleryError::WrongMode("double", TableMode::Effect));
    }
    if !a.is_commutative() {
        return Err(GalleryError::NonCommutative);
    }
    let n = a.len();
    let base = a.order()?;
    let zero = a.zero().expect("effect tables have a zero");
    let labels: Vec<String> = a
        .labels()
        .iter()
        .cloned()
        .chain(a.labels().iter().map(|l| format!("{l}*")))
        .collect();
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if base.le(x, y) {
                pairs.push((x, y));
                pairs.push((n + y, n + x));
            }
            if a.op(x, y).is_some() {
                pairs.push((x, n + y));
            }
        }
    }
    let order = FinitePoset::new(labels, pairs)?;
    let sum = |x: usize, y: usize| -> Option<usize> {
        match (x < n, y < n) {
            (true, true) => a.op(x, y),
            (true, false) => a.residual(y - n, x).map(|r| n + r),
            (false, true) => a.residual(x - n, y).map(|r| n + r),
            (false, false) => None,
        }
    };
    let j = |z: usize| carrier.indicator(order.le(zero, z));
    Ok(PromonoidalStructure::from_fn(
        order.clone(),
        carrier,
        |x, y, z| carrier.indicator(sum(x, y).is_some_and(|s| order.le(s, z))),
        Some(&j),
        Some((0..2 * n).map(|x| if x < n { x + n } else { x - n }).collect()),
    )?)
}

/// Discrete `Nat` structure with `p(i, j, k) = N[i][j][k]` and `j = δ_vacuum`.
pub fn fusion_structure<S: Into<String>>(
    labels: impl IntoIterator<Item = S>,
    table: &[u64],
    s: Vec<usize>,
    vacuum: usize,
) -> Result<PromonoidalStructure, GalleryError> {
    let poset = FinitePoset::discrete(labels)?;
    let n = poset.len();
    if table.len() != n * n * n {
        return Err(GalleryError::TableSize {
            expected: n * n * n,
            found: table.len(),
        });
    }
    if vacuum >= n {
        return Err(StructureError::IndexOutOfRange { index: vacuum, len: n }.into());
    }
    if s.len() != n || s.iter().any(|&x| x >= n) || (0..n).any(|i| s[s[i]] != i) {
        return Err(GalleryError::NonInvolutive);
    }
    Ok(PromonoidalStructure::new(
        poset,
        Carrier::Nat,
        table.iter().map(|&x| Value::Nat(x)).collect(),
        Some((0..n).map(|i| Value::Nat(u64::from(i == vacuum))).collect()),
        Some(s),
    )?)
}

/// Discrete `MaxTimes` structure from a table of probabilities, with no
/// unit. `S = id` is attached only if `p(a,b,c) = p(b,c,a) = p(c,a,b)`
/// holds exactly for every triple.
pub fn prob_geometry_structure<S: Into<String>>(
    labels: impl IntoIterator<Item = S>,
    table: &[f64],
) -> Result<PromonoidalStructure, GalleryError> {
    let poset = FinitePoset::discrete(labels)?;
    let n = poset.len();
    if table.len() != n * n * n {
        return Err(GalleryError::TableSize {
            expected: n * n * n,
            found: table.len(),
        });
    }
    let at = |a: usize, b: usize, c: usize| table[(a * n + b) * n + c];
    let mut p = Vec::with_capacity(table.len());
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let x = at(a, b, c);
                if !(0.0..=1.0).contains(&x) {
                    return Err(GalleryError::OutOfRange(x, a, b, c));
                }
                p.push(Value::nonneg(x).expect("checked range"));
            }
        }
    }
    let cyclic = (0..n).all(|a| {
        (0..n).all(|b| (0..n).all(|c| at(a, b, c) == at(b, c, a) && at(b, c, a) == at(c, a, b)))
    });
    let s = cyclic.then(|| (0..n).collect());
    Ok(PromonoidalStructure::new(poset, Carrier::MaxTimes, p, None, s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carriers::DEFAULT_TOLERANCE as TOL;

    fn all_pass(s: &PromonoidalStructure) {
        assert!(s.check_variance(TOL).unwrap().passed, "variance");
        assert!(s.check_associativity(TOL).unwrap().passed, "associativity");
        if s.j_table().is_some() {
            assert!(s.check_unit(TOL).unwrap().passed, "unit");
        }
        if s.s_map().is_some() {
            let r = s.check_cyclic(TOL).unwrap();
            assert!(r.passed, "cyclic: {:?}", r.witnesses.first());
        }
    }

    #[test]
    fn empty_powerset() {
        let s = powerset_structure(0, Carrier::MaxPlus).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.s(0), Some(0));
        all_pass(&s);
        assert!(s.check_dual_compat(TOL).unwrap().passed);
    }

    #[test]
    fn powerset_entries() {
        let s = powerset_structure(2, Carrier::Bool).unwrap();
        assert_eq!(s.label(3), "{1,2}");
        assert_eq!(s.p(1, 2, 3), Value::Bool(true));
        assert_eq!(s.p(1, 1, 1), Value::Bool(false));
        let s3 = powerset_structure(3, Carrier::MaxTimes).unwrap();
        all_pass(&s3);
        assert!(matches!(powerset_structure(7, Carrier::Bool), Err(GalleryError::SizeLimit(7))));
        assert!(matches!(
            powerset_structure(2, Carrier::Nat),
            Err(GalleryError::UnsupportedCarrier { .. })
        ));
    }

    #[test]
    fn orthomodular_structures_are_cyclic() {
        all_pass(&oml_structure(&OrthoLattice::boolean(2).unwrap(), Carrier::Bool).unwrap());
        all_pass(&oml_structure(&OrthoLattice::mo2(), Carrier::Bool).unwrap());
    }

    #[test]
    fn o6_breaks_cyclicity() {
        let s = oml_structure(&OrthoLattice::o6(), Carrier::Bool).unwrap();
        assert!(s.check_associativity(TOL).unwrap().passed);
        assert!(s.check_unit(TOL).unwrap().passed);
        let r = s.check_cyclic(TOL).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witnesses[0].indices.len(), 3);
    }

    #[test]
    fn heyting_chain() {
        let h = HeytingLattice::chain(3).unwrap();
        let s = heyting_structure(&h, Carrier::Bool).unwrap();
        assert_eq!(s.s(1), Some(0));
        assert!(!s.poset().is_discrete());
        all_pass(&s);
        // S is not involutive away from Boolean algebras.
        assert!(!s.duality_is_involutive());
    }

    #[test]
    fn groupoids() {
        let z2 = groupoid_structure(&PartialMonoidTable::z2(), Carrier::Bool).unwrap();
        assert_eq!(z2.p(1, 1, 0), Value::Bool(true));
        assert_eq!(z2.s(1), Some(1));
        all_pass(&z2);
        let pair = groupoid_structure(&PartialMonoidTable::pair_groupoid(2), Carrier::Bool).unwrap();
        assert_eq!(pair.p(1, 2, 0), Value::Bool(true));
        assert!((0..4).all(|c| pair.p(1, 1, c) == Value::Bool(false)));
        all_pass(&pair);
        assert!(pair.duality_is_bijective());
        let corrupted = z2.with_unit(Some(vec![Value::Bool(false), Value::Bool(true)])).unwrap();
        assert!(!corrupted.check_unit(TOL).unwrap().passed);
    }

    #[test]
    fn effect_and_difference_agree() {
        for n in 0..=4 {
            let sum = PartialMonoidTable::truncated_chain_sum(n);
            let diff = PartialMonoidTable::truncated_chain_difference(n);
            assert!(galois_check(&sum, &diff).unwrap());
            let e = effect_structure(&sum, Carrier::Bool).unwrap();
            let d = difference_structure(&diff, Carrier::Bool).unwrap();
            assert_eq!(e, d);
            all_pass(&e);
        }
        let e = effect_structure(&PartialMonoidTable::truncated_chain_sum(2), Carrier::Bool).unwrap();
        assert_eq!(e.p(1, 1, 2), Value::Bool(true));
        assert!((0..3).all(|c| e.p(1, 2, c) == Value::Bool(false)));
        assert!(matches!(
            effect_structure(&PartialMonoidTable::z2(), Carrier::Bool),
            Err(GalleryError::WrongMode(..))
        ));
    }

    #[test]
    fn variance_detects_planted_violation() {
        let e = effect_structure(&PartialMonoidTable::truncated_chain_sum(2), Carrier::Bool).unwrap();
        assert!(e.check_variance(TOL).unwrap().passed);
        let bad = e.clone().with_p_entry(1, 0, 2, Value::Bool(false)).unwrap();
        let r = bad.check_variance(TOL).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witnesses[0].indices, vec![1, 0, 1, 1, 0, 2]);
        assert!(r.witnesses.iter().any(|w| w.indices == [2, 0, 2, 1, 0, 2]));
        // p(2,0,2) has nothing above it to disagree with; the unit law sees it.
        let corner = e.with_p_entry(2, 0, 2, Value::Bool(false)).unwrap();
        assert!(corner.check_variance(TOL).unwrap().passed);
        assert!(!corner.check_unit(TOL).unwrap().passed);
    }

    #[test]
    fn doubling() {
        let trivial = double(&PartialMonoidTable::truncated_chain_sum(0), Carrier::Bool).unwrap();
        assert_eq!(trivial.poset().labels(), ["0", "0*"]);
        all_pass(&trivial);
        for n in 1..=4 {
            let d = double(&PartialMonoidTable::truncated_chain_sum(n), Carrier::Bool).unwrap();
            assert_eq!(d.len(), 2 * (n + 1));
            assert!(d.duality_is_involutive());
            all_pass(&d);
        }
    }

    #[test]
    fn fusion_rejects_non_involution() {
        let err = fusion_structure(["1", "x", "y"], &[0; 27], vec![1, 2, 0], 0);
        assert_eq!(err.unwrap_err(), GalleryError::NonInvolutive);
        let trivial = fusion_structure(["1"], &[1], vec![0], 0).unwrap();
        all_pass(&trivial);
        assert!(trivial.check_dual_compat(TOL).unwrap().passed);
    }

    #[test]
    fn geometry_precheck() {
        let mut table = vec![0.0; 8];
        table[0b001] = 1.0; // p(0,0,1)
        table[0b010] = 0.5; // p(0,1,0)
        let s = prob_geometry_structure(["a", "b"], &table).unwrap();
        assert_eq!(s.s_map(), None);
        assert_eq!(s.j_table(), None);
        let err = prob_geometry_structure(["a"], &[1.5]).unwrap_err();
        assert!(matches!(err, GalleryError::OutOfRange(..)));
        let symmetric = prob_geometry_structure(["a"], &[0.25]).unwrap();
        assert_eq!(symmetric.s_map(), Some(&[0][..]));
    }
}
