//! Upper and lower convolution of carrier-valued functions on a promonoidal
//! structure, together with the monoid and convexity predicates built on it.
//!
//! For functions `f, g` on the objects of `P`:
//!
//! ```text
//! upper(f, g)(c) = ⋁_{a,b} f(a) ⊗ g(b) ⊗ p(a, b, c)
//! lower(f, g)(c) = ( ⋁_{a,b} f(a)* ⊗ g(b)* ⊗ p(a, b, c) )*
//! ```
//!
//! On a powerset over `MaxPlus` these are `max_{a ⊆ c} f(a) + g(c − a)` and
//! `min_{a ⊆ c} f(a) + g(c − a)`.

use std::fmt;

use serde::Deserialize;
use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::carriers::{Carrier, CarrierError, Value};
use crate::structures::{PromonoidalStructure, StructureError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConvolutionError {
    #[error("function has {found} values but the structure has {expected} objects")]
    SizeMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Carrier(#[from] CarrierError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("malformed function file: {0}")]
    File(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvMode {
    Upper,
    Lower,
}

impl ConvMode {
    pub fn name(self) -> &'static str {
        match self {
            ConvMode::Upper => "upper",
            ConvMode::Lower => "lower",
        }
    }
}

/// A carrier-valued function on the objects of a structure, indexed like the
/// structure's poset.
#[derive(Debug, Clone, PartialEq)]
pub struct Functor {
    carrier: Carrier,
    values: Vec<Value>,
}

impl Functor {
    pub fn new(structure: &PromonoidalStructure, values: Vec<Value>) -> Result<Self, ConvolutionError> {
        if values.len() != structure.len() {
            return Err(ConvolutionError::SizeMismatch {
                expected: structure.len(),
                found: values.len(),
            });
        }
        let carrier = structure.carrier();
        for v in &values {
            carrier.check(v)?;
        }
        Ok(Functor { carrier, values })
    }

    pub fn from_fn(
        structure: &PromonoidalStructure,
        f: impl Fn(usize) -> Value,
    ) -> Result<Self, ConvolutionError> {
        Self::new(structure, (0..structure.len()).map(f).collect())
    }

    pub fn constant(structure: &PromonoidalStructure, v: Value) -> Result<Self, ConvolutionError> {
        Self::from_fn(structure, |_| v)
    }

    /// The unit table `j` as a function; `None` when the structure has no unit.
    pub fn unit_of(structure: &PromonoidalStructure) -> Option<Self> {
        structure.j_table().map(|j| Functor {
            carrier: structure.carrier(),
            values: j.to_vec(),
        })
    }

    /// Indicator of a set of objects: unit on `objects`, bottom elsewhere.
    pub fn indicator(structure: &PromonoidalStructure, objects: &[usize]) -> Result<Self, ConvolutionError> {
        let carrier = structure.carrier();
        Self::from_fn(structure, |i| carrier.indicator(objects.contains(&i)))
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, i: usize) -> Value {
        self.values[i]
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    /// First pair `a ≤ b` with `f(a) ≰ f(b)`, if any.
    pub fn monotonicity_witness(
        &self,
        structure: &PromonoidalStructure,
        tol: f64,
    ) -> Result<Option<(usize, usize)>, ConvolutionError> {
        self.compatible(structure)?;
        for (a, b) in structure.poset().strict_pairs() {
            if !self.carrier.leq(self.values[a], self.values[b], tol)? {
                return Ok(Some((a, b)));
            }
        }
        Ok(None)
    }

    pub fn is_monotone(&self, structure: &PromonoidalStructure, tol: f64) -> Result<bool, ConvolutionError> {
        Ok(self.monotonicity_witness(structure, tol)?.is_none())
    }

    /// Function file: `{"values": [[object, value], ...]}`; omitted objects
    /// are bottom.
    pub fn from_json_str(structure: &PromonoidalStructure, text: &str) -> Result<Self, ConvolutionError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct FunctionFile {
            values: Vec<(String, Json)>,
        }
        let file: FunctionFile =
            serde_json::from_str(text).map_err(|e| ConvolutionError::File(e.to_string()))?;
        let carrier = structure.carrier();
        let mut values = vec![carrier.bottom(); structure.len()];
        for (k, (label, v)) in file.values.iter().enumerate() {
            let i = structure
                .poset()
                .index_of(label)
                .ok_or_else(|| ConvolutionError::File(format!("values[{k}]: unknown object `{label}`")))?;
            values[i] = Value::from_json(v, carrier)
                .map_err(|e| ConvolutionError::File(format!("values[{k}]: {e}")))?;
        }
        Self::new(structure, values)
    }

    /// Every object is listed, in index order.
    pub fn to_json(&self, structure: &PromonoidalStructure) -> Json {
        let values: Vec<Json> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| json!([structure.label(i), v.to_json()]))
            .collect();
        json!({ "values": values })
    }

    fn compatible(&self, structure: &PromonoidalStructure) -> Result<(), ConvolutionError> {
        if self.len() != structure.len() {
            return Err(ConvolutionError::SizeMismatch {
                expected: structure.len(),
                found: self.len(),
            });
        }
        structure.carrier().check(&self.carrier.bottom())?;
        Ok(())
    }
}

/// `c ↦ ⋁_{a,b} f(a) ⊗ g(b) ⊗ p(a,b,c)`.
pub fn convolve_upper(
    f: &Functor,
    g: &Functor,
    structure: &PromonoidalStructure,
) -> Result<Functor, ConvolutionError> {
    f.compatible(structure)?;
    g.compatible(structure)?;
    let carrier = structure.carrier();
    let n = structure.len();
    let mut out = vec![carrier.bottom(); n];
    for a in 0..n {
        for b in 0..n {
            let fg = carrier.tensor(f.values[a], g.values[b])?;
            if fg == carrier.bottom() {
                continue;
            }
            for (c, slot) in out.iter_mut().enumerate() {
                *slot = carrier.join2(*slot, carrier.tensor(fg, structure.p(a, b, c))?)?;
            }
        }
    }
    let result = Functor { carrier, values: out };
    #[cfg(debug_assertions)]
    if carrier.is_idempotent() && structure.check_variance(crate::carriers::DEFAULT_TOLERANCE)?.passed {
        debug_assert!(result.is_monotone(structure, crate::carriers::DEFAULT_TOLERANCE)?);
    }
    Ok(result)
}

/// `c ↦ (⋁_{a,b} f(a)* ⊗ g(b)* ⊗ p(a,b,c))*`.
pub fn convolve_lower(
    f: &Functor,
    g: &Functor,
    structure: &PromonoidalStructure,
) -> Result<Functor, ConvolutionError> {
    f.compatible(structure)?;
    g.compatible(structure)?;
    let carrier = structure.carrier();
    let n = structure.len();
    let f_star = dualize(f)?;
    let g_star = dualize(g)?;
    let mut out = Vec::with_capacity(n);
    for c in 0..n {
        let mut acc = carrier.bottom();
        for a in 0..n {
            for b in 0..n {
                let term = carrier.tensor(
                    carrier.tensor(f_star.values[a], g_star.values[b])?,
                    structure.p(a, b, c),
                )?;
                acc = carrier.join2(acc, term)?;
            }
        }
        out.push(carrier.star(acc)?);
    }
    Ok(Functor { carrier, values: out })
}

/// Pointwise star.
pub fn dualize(f: &Functor) -> Result<Functor, ConvolutionError> {
    let values = f
        .values
        .iter()
        .map(|&v| f.carrier.star(v))
        .collect::<Result<_, _>>()?;
    Ok(Functor {
        carrier: f.carrier,
        values,
    })
}

pub fn convolve(
    f: &Functor,
    g: &Functor,
    structure: &PromonoidalStructure,
    mode: ConvMode,
) -> Result<Functor, ConvolutionError> {
    match mode {
        ConvMode::Upper => convolve_upper(f, g, structure),
        ConvMode::Lower => convolve_lower(f, g, structure),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// The unit map `j → f` (or `f → j*` for lower monoids).
    Unit,
    /// The multiplication `f ⊛ f → f` (or `f → f ⊛ f` for lower monoids).
    Multiplication,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Unit => "unit",
            Condition::Multiplication => "multiplication",
        })
    }
}

/// The object at which `left ≤ right` failed.
#[derive(Debug, Clone, PartialEq)]
pub struct VerdictWitness {
    pub object: usize,
    pub label: String,
    pub condition: Condition,
    pub left: Value,
    pub right: Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<VerdictWitness>,
}

impl Verdict {
    fn from_witness(witness: Option<VerdictWitness>) -> Self {
        Verdict {
            holds: witness.is_none(),
            witness,
        }
    }

    pub fn to_json(&self) -> Json {
        match &self.witness {
            None => json!({ "holds": true }),
            Some(w) => json!({
                "holds": false,
                "witness": {
                    "object": w.label,
                    "condition": w.condition.to_string(),
                    "left": w.left.to_json(),
                    "right": w.right.to_json(),
                }
            }),
        }
    }
}

/// Scans objects in index order; at each object the unit condition is
/// tested before the multiplication.
fn first_failure(
    structure: &PromonoidalStructure,
    tol: f64,
    unit_pairs: Option<(&Functor, &Functor)>,
    mult_pairs: (&Functor, &Functor),
) -> Result<Option<VerdictWitness>, ConvolutionError> {
    let carrier = structure.carrier();
    for c in 0..structure.len() {
        let candidates = unit_pairs
            .map(|(l, r)| (Condition::Unit, l, r))
            .into_iter()
            .chain(std::iter::once((Condition::Multiplication, mult_pairs.0, mult_pairs.1)));
        for (condition, l, r) in candidates {
            let (left, right) = (l.values[c], r.values[c]);
            if !carrier.leq(left, right, tol)? {
                return Ok(Some(VerdictWitness {
                    object: c,
                    label: structure.label(c).to_string(),
                    condition,
                    left,
                    right,
                }));
            }
        }
    }
    Ok(None)
}

/// Upper: `j ≤ f` and `upper(f, f) ≤ f`. Lower: `f ≤ j*` and
/// `f ≤ lower(f, f)`.
pub fn is_monoid(
    f: &Functor,
    structure: &PromonoidalStructure,
    mode: ConvMode,
    tol: f64,
) -> Result<Verdict, ConvolutionError> {
    let j = Functor::unit_of(structure).ok_or(StructureError::MissingUnit)?;
    let witness = match mode {
        ConvMode::Upper => {
            let ff = convolve_upper(f, f, structure)?;
            first_failure(structure, tol, Some((&j, f)), (&ff, f))?
        }
        ConvMode::Lower => {
            let ff = convolve_lower(f, f, structure)?;
            let j_star = dualize(&j)?;
            first_failure(structure, tol, Some((f, &j_star)), (f, &ff))?
        }
    };
    Ok(Verdict::from_witness(witness))
}

/// `upper(f, f) ≤ f`, with no unit condition.
pub fn is_convex(f: &Functor, structure: &PromonoidalStructure, tol: f64) -> Result<Verdict, ConvolutionError> {
    let ff = convolve_upper(f, f, structure)?;
    Ok(Verdict::from_witness(first_failure(structure, tol, None, (&ff, f))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carriers::DEFAULT_TOLERANCE as TOL;
    use crate::gallery;

    fn mp(x: f64) -> Value {
        Value::real(x).unwrap()
    }

    fn set_fn(s: &PromonoidalStructure, f: impl Fn(u32) -> f64) -> Functor {
        Functor::from_fn(s, |i| mp(f(i as u32))).unwrap()
    }

    #[test]
    fn cardinality_convolves_to_cardinality_at_top() {
        let s = gallery::powerset_structure(2, Carrier::MaxPlus).unwrap();
        let card = set_fn(&s, |m| f64::from(m.count_ones()));
        assert_eq!(convolve_upper(&card, &card, &s).unwrap().value(3), mp(2.0));
        assert_eq!(convolve_lower(&card, &card, &s).unwrap().value(3), mp(2.0));
    }

    #[test]
    fn uniform_rank_lower_convolution() {
        let s = gallery::powerset_structure(2, Carrier::MaxPlus).unwrap();
        let rank = set_fn(&s, |m| f64::from(m.count_ones().min(1)));
        // min over ∅+E, {1}+{2}, {2}+{1}, E+∅ = min(1, 2, 2, 1)
        assert_eq!(convolve_lower(&rank, &rank, &s).unwrap().value(3), mp(1.0));
        assert_eq!(convolve_upper(&rank, &rank, &s).unwrap().value(3), mp(2.0));
    }

    #[test]
    fn unit_is_neutral() {
        let s = gallery::powerset_structure(3, Carrier::MaxPlus).unwrap();
        let j = Functor::unit_of(&s).unwrap();
        let f = set_fn(&s, |m| f64::from(m * 7 % 5) - 2.0);
        assert_eq!(convolve_upper(&f, &j, &s).unwrap(), f);
        assert_eq!(convolve_upper(&j, &f, &s).unwrap(), f);
    }

    #[test]
    fn lower_is_star_conjugate_of_upper() {
        let s = gallery::powerset_structure(2, Carrier::MaxPlus).unwrap();
        let f = set_fn(&s, |m| f64::from(m) - 1.5);
        let g = set_fn(&s, |m| if m == 2 { f64::NEG_INFINITY } else { 3.0 });
        let lower = convolve_lower(&f, &g, &s).unwrap();
        let conj = dualize(&convolve_upper(&dualize(&f).unwrap(), &dualize(&g).unwrap(), &s).unwrap()).unwrap();
        assert_eq!(lower, conj);
        assert_eq!(convolve(&f, &g, &s, ConvMode::Lower).unwrap(), lower);
    }

    #[test]
    fn dualize_examples() {
        let s = gallery::powerset_structure(2, Carrier::MaxPlus).unwrap();
        let zero = Functor::constant(&s, mp(0.0)).unwrap();
        assert_eq!(dualize(&zero).unwrap(), zero);
        let card = set_fn(&s, |m| f64::from(m.count_ones()));
        let neg = set_fn(&s, |m| -f64::from(m.count_ones()));
        assert_eq!(dualize(&card).unwrap(), neg);
        assert_eq!(dualize(&dualize(&card).unwrap()).unwrap(), card);
    }

    #[test]
    fn bool_lower_equals_upper() {
        let s = gallery::powerset_structure(2, Carrier::Bool).unwrap();
        let f = Functor::indicator(&s, &[1, 2]).unwrap();
        let g = Functor::indicator(&s, &[0, 2]).unwrap();
        assert_eq!(
            convolve_lower(&f, &g, &s).unwrap(),
            convolve_upper(&f, &g, &s).unwrap()
        );
    }

    #[test]
    fn ising_sigma_squared() {
        let s = gallery::fixture("fusion:ising").unwrap();
        let sigma = s.poset().index_of("sigma").unwrap();
        let delta = Functor::indicator(&s, &[sigma]).unwrap();
        let sq = convolve_upper(&delta, &delta, &s).unwrap();
        assert_eq!(sq.values(), &[Value::Nat(1), Value::Nat(1), Value::Nat(0)]);
    }

    #[test]
    fn monoid_examples() {
        let s = gallery::powerset_structure(3, Carrier::MaxPlus).unwrap();
        let card = set_fn(&s, |m| f64::from(m.count_ones()));
        assert!(is_monoid(&card, &s, ConvMode::Upper, TOL).unwrap().holds);
        assert!(is_monoid(&card, &s, ConvMode::Lower, TOL).unwrap().holds);

        let s4 = gallery::powerset_structure(4, Carrier::MaxPlus).unwrap();
        let rank = set_fn(&s4, |m| f64::from(m.count_ones().min(2)));
        assert!(is_monoid(&rank, &s4, ConvMode::Lower, TOL).unwrap().holds);

        let dip = set_fn(&s, |m| if m == 0 { -1.0 } else { 0.0 });
        let v = is_monoid(&dip, &s, ConvMode::Upper, TOL).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!((w.object, w.condition), (0, Condition::Unit));
        assert_eq!((w.left, w.right), (mp(0.0), mp(-1.0)));
    }

    #[test]
    fn lower_monoid_unit_witness() {
        let s = gallery::powerset_structure(2, Carrier::MaxPlus).unwrap();
        let f = set_fn(&s, |m| if m == 0 { 1.0 } else { 5.0 });
        let v = is_monoid(&f, &s, ConvMode::Lower, TOL).unwrap();
        assert_eq!(v.witness.as_ref().map(|w| (w.label.as_str(), w.condition)), Some(("{}", Condition::Unit)));
    }

    #[test]
    fn fano_convexity() {
        let s = gallery::fixture("geometry:fano").unwrap();
        // points are labelled 1..7; {1,2,3} is a line
        let line = Functor::indicator(&s, &[0, 1, 2]).unwrap();
        assert!(is_convex(&line, &s, TOL).unwrap().holds);
        let all = Functor::constant(&s, Carrier::MaxTimes.unit()).unwrap();
        assert!(is_convex(&all, &s, TOL).unwrap().holds);
        let pair = Functor::indicator(&s, &[0, 1]).unwrap();
        let v = is_convex(&pair, &s, TOL).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!(w.label, "3");
        assert_eq!(w.condition, Condition::Multiplication);
    }

    #[test]
    fn mismatches_are_errors() {
        let s2 = gallery::powerset_structure(2, Carrier::MaxPlus).unwrap();
        let s1 = gallery::powerset_structure(1, Carrier::MaxPlus).unwrap();
        let f = Functor::constant(&s1, mp(0.0)).unwrap();
        assert!(matches!(
            convolve_upper(&f, &f, &s2),
            Err(ConvolutionError::SizeMismatch { expected: 4, found: 2 })
        ));
        let b = gallery::powerset_structure(1, Carrier::Bool).unwrap();
        assert!(matches!(convolve_upper(&f, &f, &b), Err(ConvolutionError::Carrier(_))));
        assert!(Functor::new(&b, vec![mp(0.0), mp(0.0)]).is_err());
        let geo = gallery::fixture("geometry:fano").unwrap();
        let f = Functor::constant(&geo, Carrier::MaxTimes.unit()).unwrap();
        assert!(matches!(
            is_monoid(&f, &geo, ConvMode::Upper, TOL),
            Err(ConvolutionError::Structure(StructureError::MissingUnit))
        ));
    }

    #[test]
    fn function_files() {
        let s = gallery::powerset_structure(2, Carrier::MaxPlus).unwrap();
        let f = Functor::from_json_str(&s, r#"{"values": [["{1,2}", 2], ["{1}", "-inf"], ["{2}", 1.5]]}"#).unwrap();
        assert_eq!(f.values(), &[mp(f64::NEG_INFINITY), mp(f64::NEG_INFINITY), mp(1.5), mp(2.0)]);
        let again = Functor::from_json_str(&s, &f.to_json(&s).to_string()).unwrap();
        assert_eq!(again, f);
        assert!(Functor::from_json_str(&s, r#"{"values": [["{3}", 1]]}"#).is_err());
        assert!(Functor::from_json_str(&s, r#"{"vals": []}"#).is_err());
    }

    #[test]
    fn monotonicity() {
        let s = gallery::fixture("heyting:chain:3").unwrap();
        let up = Functor::indicator(&s, &[1, 2]).unwrap();
        assert!(up.is_monotone(&s, TOL).unwrap());
        let down = Functor::indicator(&s, &[0]).unwrap();
        assert_eq!(down.monotonicity_witness(&s, TOL).unwrap(), Some((0, 1)));
        // Convolutions over a variance-respecting structure are monotone.
        let conv = convolve_upper(&down, &down, &s).unwrap();
        assert!(conv.is_monotone(&s, TOL).unwrap());
    }
}
