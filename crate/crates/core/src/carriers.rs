//! Value algebras over which tables and convolutions are computed.
//!
//! Four commutative carriers are supported:
//!
//! * [`Carrier::Bool`]: `({false, true}, ∧, ∨)`.
//! * [`Carrier::MaxTimes`]: `[0, ∞]` with multiplication and supremum, where
//!   `∞ ⊗ 0 = 0` and `∞ ⊗ r = ∞` for `r ≠ 0`.
//! * [`Carrier::MaxPlus`]: `{−∞} ∪ ℝ ∪ {∞}` with addition and supremum. The
//!   bottom `−∞` absorbs everything, including `+∞`.
//! * [`Carrier::Nat`]: natural numbers with multiplication and addition. This
//!   is the only non-idempotent carrier: its "join" is a sum.
//!
//! `MaxPlus` and `MaxTimes` are isomorphic under `x ↦ exp(x)`; see
//! [`exponentiate`]. The `MaxTimes` dualization `x ↦ 1/x` is transported
//! through that isomorphism from negation on `MaxPlus`.

use std::fmt;
use std::str::FromStr;

use serde_json::Value as Json;
use thiserror::Error;

/// Default slack used when comparing finite reals.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CarrierError {
    #[error("expected a {expected} value, found a {found} value")]
    Mismatch { expected: Carrier, found: Carrier },
    #[error("carrier {0} has no dualization")]
    StarUnsupported(Carrier),
    #[error("natural-number overflow")]
    Overflow,
    #[error("invalid {carrier} value: {reason}")]
    InvalidValue { carrier: Carrier, reason: String },
    #[error("unknown carrier `{0}`")]
    UnknownCarrier(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Carrier {
    Bool,
    MaxTimes,
    MaxPlus,
    Nat,
}

/// An extended real: a finite `f64` or one of the two symbolic infinities.
///
/// `Finite` never holds a NaN or an infinite float; use [`Extended::from_f64`]
/// to normalize.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    NegInf,
    Finite(f64),
    PosInf,
}

impl Extended {
    /// Maps IEEE infinities onto the symbolic states. Returns `None` for NaN.
    pub fn from_f64(x: f64) -> Option<Self> {
        if x.is_nan() {
            None
        } else if x == f64::INFINITY {
            Some(Extended::PosInf)
        } else if x == f64::NEG_INFINITY {
            Some(Extended::NegInf)
        } else {
            Some(Extended::Finite(x))
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Extended::NegInf => f64::NEG_INFINITY,
            Extended::Finite(x) => x,
            Extended::PosInf => f64::INFINITY,
        }
    }

    fn rank(self) -> u8 {
        match self {
            Extended::NegInf => 0,
            Extended::Finite(_) => 1,
            Extended::PosInf => 2,
        }
    }

    /// Order with `tol` slack between finite values; infinities compare exactly.
    fn leq(self, other: Self, tol: f64) -> bool {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => {
                let scale = 1f64.max(a.abs()).max(b.abs());
                a <= b + tol * scale
            }
            (a, b) => a.rank() <= b.rank(),
        }
    }

    fn max(self, other: Self) -> Self {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a.max(b)),
            (a, b) if a.rank() >= b.rank() => a,
            (_, b) => b,
        }
    }

    fn min(self, other: Self) -> Self {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a.min(b)),
            (a, b) if a.rank() <= b.rank() => a,
            (_, b) => b,
        }
    }
}

/// A carrier element. The variant fixes the carrier it belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Bool(bool),
    /// Element of `[0, ∞]` (the `MaxTimes` carrier). Never `NegInf`, never negative.
    NonNeg(Extended),
    /// Element of `[−∞, ∞]` (the `MaxPlus` carrier).
    Real(Extended),
    Nat(u64),
}

impl Value {
    /// Builds a `MaxTimes` value; `f64::INFINITY` becomes the symbolic `∞`.
    pub fn nonneg(x: f64) -> Result<Self, CarrierError> {
        match Extended::from_f64(x) {
            Some(e @ (Extended::Finite(_) | Extended::PosInf)) if x >= 0.0 => {
                // -0.0 is stored as 0.0 so the table bits stay canonical.
                Ok(Value::NonNeg(match e {
                    Extended::Finite(v) => Extended::Finite(v + 0.0),
                    other => other,
                }))
            }
            _ => Err(CarrierError::InvalidValue {
                carrier: Carrier::MaxTimes,
                reason: format!("{x} is not in [0, inf]"),
            }),
        }
    }

    /// Builds a `MaxPlus` value; IEEE infinities become the symbolic ones.
    pub fn real(x: f64) -> Result<Self, CarrierError> {
        Extended::from_f64(x)
            .map(Value::Real)
            .ok_or_else(|| CarrierError::InvalidValue {
                carrier: Carrier::MaxPlus,
                reason: "NaN".to_string(),
            })
    }

    pub fn carrier(&self) -> Carrier {
        match self {
            Value::Bool(_) => Carrier::Bool,
            Value::NonNeg(_) => Carrier::MaxTimes,
            Value::Real(_) => Carrier::MaxPlus,
            Value::Nat(_) => Carrier::Nat,
        }
    }

    /// Numeric view: `true` is 1, infinities are IEEE infinities.
    pub fn as_f64(&self) -> f64 {
        match *self {
            Value::Bool(b) => f64::from(u8::from(b)),
            Value::NonNeg(e) | Value::Real(e) => e.to_f64(),
            Value::Nat(n) => n as f64,
        }
    }

    /// JSON encoding: booleans, decimal numbers, `"inf"`/`"-inf"`, naturals.
    pub fn to_json(&self) -> Json {
        match *self {
            Value::Bool(b) => Json::Bool(b),
            Value::NonNeg(e) | Value::Real(e) => match e {
                Extended::NegInf => Json::String("-inf".into()),
                Extended::PosInf => Json::String("inf".into()),
                Extended::Finite(x) => Json::from(x),
            },
            Value::Nat(n) => Json::from(n),
        }
    }

    pub fn from_json(json: &Json, carrier: Carrier) -> Result<Self, CarrierError> {
        let invalid = |reason: String| CarrierError::InvalidValue { carrier, reason };
        match carrier {
            Carrier::Bool => json
                .as_bool()
                .map(Value::Bool)
                .ok_or_else(|| invalid(format!("expected true/false, found {json}"))),
            Carrier::Nat => json
                .as_u64()
                .map(Value::Nat)
                .ok_or_else(|| invalid(format!("expected a natural number, found {json}"))),
            Carrier::MaxTimes | Carrier::MaxPlus => {
                let x = match json {
                    Json::Number(n) => n
                        .as_f64()
                        .ok_or_else(|| invalid(format!("unrepresentable number {n}")))?,
                    Json::String(s) if s == "inf" => f64::INFINITY,
                    Json::String(s) if s == "-inf" => f64::NEG_INFINITY,
                    other => return Err(invalid(format!("expected a number, found {other}"))),
                };
                if carrier == Carrier::MaxTimes {
                    Value::nonneg(x)
                } else {
                    Value::real(x)
                }
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_json() {
            Json::String(s) => f.write_str(&s),
            other => write!(f, "{other}"),
        }
    }
}

impl Carrier {
    pub const ALL: [Carrier; 4] = [Carrier::Bool, Carrier::MaxTimes, Carrier::MaxPlus, Carrier::Nat];

    pub fn name(self) -> &'static str {
        match self {
            Carrier::Bool => "bool",
            Carrier::MaxTimes => "maxtimes",
            Carrier::MaxPlus => "maxplus",
            Carrier::Nat => "nat",
        }
    }

    /// `join(x, x) = x`. False only for `Nat`, whose join is addition.
    pub fn is_idempotent(self) -> bool {
        self != Carrier::Nat
    }

    pub fn supports_star(self) -> bool {
        // Bool and Nat dualize trivially; the real carriers reverse order.
        true
    }

    pub fn unit(self) -> Value {
        match self {
            Carrier::Bool => Value::Bool(true),
            Carrier::MaxTimes => Value::NonNeg(Extended::Finite(1.0)),
            Carrier::MaxPlus => Value::Real(Extended::Finite(0.0)),
            Carrier::Nat => Value::Nat(1),
        }
    }

    pub fn bottom(self) -> Value {
        match self {
            Carrier::Bool => Value::Bool(false),
            Carrier::MaxTimes => Value::NonNeg(Extended::Finite(0.0)),
            Carrier::MaxPlus => Value::Real(Extended::NegInf),
            Carrier::Nat => Value::Nat(0),
        }
    }

    /// Unit if `cond`, bottom otherwise.
    pub fn indicator(self, cond: bool) -> Value {
        if cond {
            self.unit()
        } else {
            self.bottom()
        }
    }

    pub fn check(self, x: &Value) -> Result<(), CarrierError> {
        let found = x.carrier();
        if found == self {
            Ok(())
        } else {
            Err(CarrierError::Mismatch { expected: self, found })
        }
    }

    pub fn tensor(self, x: Value, y: Value) -> Result<Value, CarrierError> {
        self.check(&x)?;
        self.check(&y)?;
        Ok(match (x, y) {
            (Value::Bool(a), Value::Bool(b)) => Value::Bool(a && b),
            (Value::NonNeg(a), Value::NonNeg(b)) => Value::NonNeg(match (a, b) {
                (Extended::Finite(z), _) | (_, Extended::Finite(z)) if z == 0.0 => {
                    Extended::Finite(0.0)
                }
                (Extended::PosInf, _) | (_, Extended::PosInf) => Extended::PosInf,
                (Extended::Finite(a), Extended::Finite(b)) => {
                    Extended::from_f64(a * b).expect("product of finite non-negatives")
                }
                (Extended::NegInf, _) | (_, Extended::NegInf) => {
                    unreachable!("validated MaxTimes value")
                }
            }),
            (Value::Real(a), Value::Real(b)) => Value::Real(match (a, b) {
                (Extended::NegInf, _) | (_, Extended::NegInf) => Extended::NegInf,
                (Extended::PosInf, _) | (_, Extended::PosInf) => Extended::PosInf,
                (Extended::Finite(a), Extended::Finite(b)) => {
                    Extended::from_f64(a + b).expect("sum of finite reals")
                }
            }),
            (Value::Nat(a), Value::Nat(b)) => {
                Value::Nat(a.checked_mul(b).ok_or(CarrierError::Overflow)?)
            }
            _ => unreachable!("carriers checked above"),
        })
    }

    /// Binary join: disjunction, supremum, or (for `Nat`) sum.
    pub fn join2(self, x: Value, y: Value) -> Result<Value, CarrierError> {
        self.check(&x)?;
        self.check(&y)?;
        Ok(match (x, y) {
            (Value::Bool(a), Value::Bool(b)) => Value::Bool(a || b),
            (Value::NonNeg(a), Value::NonNeg(b)) => Value::NonNeg(a.max(b)),
            (Value::Real(a), Value::Real(b)) => Value::Real(a.max(b)),
            (Value::Nat(a), Value::Nat(b)) => {
                Value::Nat(a.checked_add(b).ok_or(CarrierError::Overflow)?)
            }
            _ => unreachable!("carriers checked above"),
        })
    }

    /// Finite join; the empty join is [`Carrier::bottom`].
    pub fn join<I>(self, xs: I) -> Result<Value, CarrierError>
    where
        I: IntoIterator<Item = Value>,
    {
        xs.into_iter()
            .try_fold(self.bottom(), |acc, x| self.join2(acc, x))
    }

    /// Binary meet in the carrier order. Only meaningful for idempotent
    /// carriers; `Nat` uses the numeric minimum.
    pub fn meet2(self, x: Value, y: Value) -> Result<Value, CarrierError> {
        self.check(&x)?;
        self.check(&y)?;
        Ok(match (x, y) {
            (Value::Bool(a), Value::Bool(b)) => Value::Bool(a && b),
            (Value::NonNeg(a), Value::NonNeg(b)) => Value::NonNeg(a.min(b)),
            (Value::Real(a), Value::Real(b)) => Value::Real(a.min(b)),
            (Value::Nat(a), Value::Nat(b)) => Value::Nat(a.min(b)),
            _ => unreachable!("carriers checked above"),
        })
    }

    /// Carrier order. `tol` only loosens comparisons between finite reals.
    pub fn leq(self, x: Value, y: Value, tol: f64) -> Result<bool, CarrierError> {
        self.check(&x)?;
        self.check(&y)?;
        Ok(match (x, y) {
            (Value::Bool(a), Value::Bool(b)) => !a || b,
            (Value::NonNeg(a), Value::NonNeg(b)) | (Value::Real(a), Value::Real(b)) => {
                a.leq(b, tol)
            }
            (Value::Nat(a), Value::Nat(b)) => a <= b,
            _ => unreachable!("carriers checked above"),
        })
    }

    /// `leq` in both directions.
    pub fn approx_eq(self, x: Value, y: Value, tol: f64) -> Result<bool, CarrierError> {
        Ok(self.leq(x, y, tol)? && self.leq(y, x, tol)?)
    }

    /// Order-reversing involution: negation on `MaxPlus`, reciprocal on
    /// `MaxTimes` (with `0 ↔ ∞`), identity on `Bool` and `Nat`.
    pub fn star(self, x: Value) -> Result<Value, CarrierError> {
        self.check(&x)?;
        if !self.supports_star() {
            return Err(CarrierError::StarUnsupported(self));
        }
        Ok(match x {
            Value::Bool(_) | Value::Nat(_) => x,
            Value::Real(e) => Value::Real(match e {
                Extended::NegInf => Extended::PosInf,
                Extended::PosInf => Extended::NegInf,
                Extended::Finite(a) => Extended::Finite(-a + 0.0),
            }),
            Value::NonNeg(e) => Value::NonNeg(match e {
                Extended::Finite(0.0) => Extended::PosInf,
                Extended::PosInf => Extended::Finite(0.0),
                Extended::Finite(a) => Extended::from_f64(1.0 / a).expect("reciprocal"),
                Extended::NegInf => unreachable!("validated MaxTimes value"),
            }),
        })
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Carrier {
    type Err = CarrierError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Carrier::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CarrierError::UnknownCarrier(s.to_string()))
    }
}

/// The isomorphism `MaxPlus → MaxTimes`, `x ↦ exp(x)`, with `exp(−∞) = 0`
/// and `exp(∞) = ∞`.
pub fn exponentiate(x: Value) -> Result<Value, CarrierError> {
    match x {
        Value::Real(Extended::NegInf) => Ok(Value::NonNeg(Extended::Finite(0.0))),
        Value::Real(Extended::PosInf) => Ok(Value::NonNeg(Extended::PosInf)),
        Value::Real(Extended::Finite(a)) => Value::nonneg(a.exp()),
        other => Err(CarrierError::Mismatch {
            expected: Carrier::MaxPlus,
            found: other.carrier(),
        }),
    }
}

/// Inverse of [`exponentiate`].
pub fn logarithm(x: Value) -> Result<Value, CarrierError> {
    match x {
        Value::NonNeg(Extended::Finite(0.0)) => Ok(Value::Real(Extended::NegInf)),
        Value::NonNeg(Extended::PosInf) => Ok(Value::Real(Extended::PosInf)),
        Value::NonNeg(Extended::Finite(a)) => Value::real(a.ln()),
        other => Err(CarrierError::Mismatch {
            expected: Carrier::MaxTimes,
            found: other.carrier(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mt(x: f64) -> Value {
        Value::nonneg(x).unwrap()
    }

    fn mp(x: f64) -> Value {
        Value::real(x).unwrap()
    }

    #[test]
    fn infinity_times_zero_is_zero() {
        let c = Carrier::MaxTimes;
        assert_eq!(c.tensor(mt(f64::INFINITY), mt(0.0)).unwrap(), mt(0.0));
        assert_eq!(c.tensor(mt(0.0), mt(f64::INFINITY)).unwrap(), mt(0.0));
        assert_eq!(c.tensor(mt(f64::INFINITY), mt(3.0)).unwrap(), mt(f64::INFINITY));
        assert_eq!(c.tensor(mt(1.0), mt(7.5)).unwrap(), mt(7.5));
    }

    #[test]
    fn maxplus_bottom_absorbs_top() {
        let lhs = Carrier::MaxPlus
            .tensor(mp(f64::NEG_INFINITY), mp(f64::INFINITY))
            .unwrap();
        assert_eq!(lhs, mp(f64::NEG_INFINITY));
        // Same rule seen through exp: 0 ⊗ ∞ = 0.
        let image = Carrier::MaxTimes
            .tensor(
                exponentiate(mp(f64::NEG_INFINITY)).unwrap(),
                exponentiate(mp(f64::INFINITY)).unwrap(),
            )
            .unwrap();
        assert_eq!(image, exponentiate(lhs).unwrap());
    }

    #[test]
    fn joins() {
        assert_eq!(
            Carrier::MaxPlus
                .join([mp(3.0), mp(f64::NEG_INFINITY), mp(5.0)])
                .unwrap(),
            mp(5.0)
        );
        assert_eq!(Carrier::Nat.join([Value::Nat(1), Value::Nat(1)]).unwrap(), Value::Nat(2));
        assert_eq!(Carrier::MaxTimes.join([]).unwrap(), mt(0.0));
        assert_eq!(Carrier::Bool.join([]).unwrap(), Value::Bool(false));
    }

    #[test]
    fn units_bottoms_and_order() {
        assert_eq!(Carrier::MaxPlus.unit(), mp(0.0));
        assert_eq!(Carrier::MaxPlus.bottom(), mp(f64::NEG_INFINITY));
        assert!(Carrier::MaxTimes.leq(mt(2.0), mt(2.0 + 1e-12), 1e-9).unwrap());
        assert!(!Carrier::MaxTimes.leq(mt(2.1), mt(2.0), 1e-9).unwrap());
        assert!(!Carrier::MaxPlus
            .leq(mp(f64::INFINITY), mp(1e300), 1.0)
            .unwrap());
        assert!(Carrier::Bool.leq(Value::Bool(false), Value::Bool(true), 0.0).unwrap());
        assert!(!Carrier::Nat.leq(Value::Nat(3), Value::Nat(2), 10.0).unwrap());
    }

    #[test]
    fn stars() {
        let c = Carrier::MaxPlus;
        assert_eq!(c.star(mp(3.0)).unwrap(), mp(-3.0));
        assert_eq!(c.star(mp(f64::NEG_INFINITY)).unwrap(), mp(f64::INFINITY));
        assert_eq!(c.star(mp(0.0)).unwrap(), mp(0.0));
        let half = Carrier::MaxTimes.star(mt(2.0)).unwrap();
        assert_eq!(half, mt(0.5));
        // exp(−log 2) = 1/2
        let via_exp = exponentiate(c.star(logarithm(mt(2.0)).unwrap()).unwrap()).unwrap();
        assert!(Carrier::MaxTimes.approx_eq(half, via_exp, 1e-12).unwrap());
        assert_eq!(Carrier::MaxTimes.star(mt(0.0)).unwrap(), mt(f64::INFINITY));
        assert_eq!(Carrier::Nat.star(Value::Nat(4)).unwrap(), Value::Nat(4));
    }

    #[test]
    fn mismatch_and_overflow_are_errors() {
        assert_eq!(
            Carrier::Bool.tensor(Value::Bool(true), Value::Nat(1)),
            Err(CarrierError::Mismatch {
                expected: Carrier::Bool,
                found: Carrier::Nat
            })
        );
        assert_eq!(
            Carrier::Nat.tensor(Value::Nat(u64::MAX), Value::Nat(2)),
            Err(CarrierError::Overflow)
        );
        assert_eq!(
            Carrier::Nat.join([Value::Nat(u64::MAX), Value::Nat(1)]),
            Err(CarrierError::Overflow)
        );
        assert!(Value::nonneg(-1.0).is_err());
        assert!(Value::nonneg(f64::NAN).is_err());
        assert!(Value::real(f64::NAN).is_err());
    }

    #[test]
    fn json_encoding() {
        assert_eq!(mp(f64::NEG_INFINITY).to_json(), Json::String("-inf".into()));
        assert_eq!(mt(f64::INFINITY).to_string(), "inf");
        assert_eq!(mp(2.5).to_string(), "2.5");
        assert_eq!(Value::Nat(3).to_json(), Json::from(3u64));
        let parsed = Value::from_json(&serde_json::json!("-inf"), Carrier::MaxPlus).unwrap();
        assert_eq!(parsed, mp(f64::NEG_INFINITY));
        assert_eq!(
            Value::from_json(&serde_json::json!(2), Carrier::MaxTimes).unwrap(),
            mt(2.0)
        );
        assert!(Value::from_json(&serde_json::json!("-inf"), Carrier::MaxTimes).is_err());
        assert!(Value::from_json(&serde_json::json!(-1), Carrier::Nat).is_err());
        assert!(Value::from_json(&serde_json::json!(1), Carrier::Bool).is_err());
        assert_eq!("maxplus".parse::<Carrier>().unwrap(), Carrier::MaxPlus);
        assert!("tropical".parse::<Carrier>().is_err());
    }
}
