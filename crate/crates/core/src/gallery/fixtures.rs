use super::{
    difference_structure, double, effect_structure, fusion_structure, groupoid_structure, heyting_structure,
    oml_structure, powerset_structure, prob_geometry_structure, GalleryError, HeytingLattice, OrthoLattice,
    PartialMonoidTable,
};
use crate::carriers::Carrier;
use crate::structures::PromonoidalStructure;

/// Accepted fixture names; `N`/`K` are small natural numbers.
pub const FIXTURE_PATTERNS: &[&str] = &[
    "powerset:N",
    "oml:boolean:N",
    "oml:mo2",
    "oml:o6",
    "heyting:chain:N",
    "group:z2",
    "groupoid:pair:K",
    "effect:chain:N",
    "difference:chain:N",
    "double:effect:chain:N",
    "fusion:ising",
    "fusion:fib",
    "geometry:fano",
];

const MAX_OBJECTS: usize = 64;

/// The Ising fusion ring on `{1, eps, sigma}`.
pub fn ising() -> PromonoidalStructure {
    let n = 3;
    let (vac, eps, sigma) = (0, 1, 2);
    let mut table = vec![0u64; n * n * n];
    let mut set = |i: usize, j: usize, k: usize| table[(i * n + j) * n + k] = 1;
    for x in 0..n {
        set(vac, x, x);
        set(x, vac, x);
    }
    set(eps, eps, vac);
    set(eps, sigma, sigma);
    set(sigma, eps, sigma);
    set(sigma, sigma, vac);
    set(sigma, sigma, eps);
    fusion_structure(["1", "eps", "sigma"], &table, vec![0, 1, 2], vac).expect("Ising table")
}

/// The Fibonacci fusion ring on `{1, tau}`.
pub fn fibonacci() -> PromonoidalStructure {
    let n = 2;
    let mut table = vec![0u64; n * n * n];
    let mut set = |i: usize, j: usize, k: usize| table[(i * n + j) * n + k] = 1;
    for x in 0..n {
        set(0, x, x);
        set(x, 0, x);
    }
    set(1, 1, 0);
    set(1, 1, 1);
    fusion_structure(["1", "tau"], &table, vec![0, 1], 0).expect("Fibonacci table")
}

const FANO_LINES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [1, 6, 7],
    [2, 4, 6],
    [2, 5, 7],
    [3, 4, 7],
    [3, 5, 6],
];

/// Collinearity in the Fano plane (points `1..7`, stored at indices `0..7`):
/// `p(a, b, c) = 1` iff `c` lies on the line through `a ≠ b`, and
/// `p(a, a, c) = 1` iff `c = a`.
pub fn fano_table() -> Vec<f64> {
    let n = 7;
    let on_line = |a: usize, b: usize, c: usize| {
        FANO_LINES
            .iter()
            .any(|l| [a, b, c].iter().all(|x| l.contains(&(x + 1))))
    };
    let mut table = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let hit = if a == b { c == a } else { on_line(a, b, c) };
                table.push(if hit { 1.0 } else { 0.0 });
            }
        }
    }
    table
}

fn parse_size(s: &str, name: &str, max: usize) -> Result<usize, GalleryError> {
    s.parse::<usize>()
        .ok()
        .filter(|&k| k <= max)
        .ok_or_else(|| GalleryError::UnknownFixture(name.to_string()))
}

/// Resolves a fixture by name using its default carrier.
pub fn fixture(name: &str) -> Result<PromonoidalStructure, GalleryError> {
    fixture_with_carrier(name, None)
}

/// Resolves a fixture by name. Powersets default to `maxplus`, fusion rings
/// to `nat`, the Fano plane to `maxtimes`, everything else to `bool`. The
/// fixed-carrier families reject any other override.
pub fn fixture_with_carrier(name: &str, carrier: Option<Carrier>) -> Result<PromonoidalStructure, GalleryError> {
    let unknown = || GalleryError::UnknownFixture(name.to_string());
    let fixed = |wanted: Carrier, build: fn() -> PromonoidalStructure| match carrier {
        Some(c) if c != wanted => Err(GalleryError::UnsupportedCarrier {
            constructor: "fixture",
            carrier: c,
        }),
        _ => Ok(build()),
    };
    let bool_or = |c: Option<Carrier>| c.unwrap_or(Carrier::Bool);
    let parts: Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["powerset", n] => powerset_structure(
            parse_size(n, name, super::MAX_POWERSET)?,
            carrier.unwrap_or(Carrier::MaxPlus),
        ),
        ["oml", "boolean", n] => {
            oml_structure(&OrthoLattice::boolean(parse_size(n, name, super::MAX_POWERSET)?)?, bool_or(carrier))
        }
        ["oml", "mo2"] => oml_structure(&OrthoLattice::mo2(), bool_or(carrier)),
        ["oml", "o6"] => oml_structure(&OrthoLattice::o6(), bool_or(carrier)),
        ["heyting", "chain", n] => {
            let n = parse_size(n, name, MAX_OBJECTS)?;
            if n == 0 {
                return Err(unknown());
            }
            heyting_structure(&HeytingLattice::chain(n)?, bool_or(carrier))
        }
        ["group", "z2"] => groupoid_structure(&PartialMonoidTable::z2(), bool_or(carrier)),
        ["groupoid", "pair", k] => {
            let k = parse_size(k, name, 8)?;
            groupoid_structure(&PartialMonoidTable::pair_groupoid(k), bool_or(carrier))
        }
        ["effect", "chain", n] => effect_structure(
            &PartialMonoidTable::truncated_chain_sum(parse_size(n, name, MAX_OBJECTS - 1)?),
            bool_or(carrier),
        ),
        ["difference", "chain", n] => difference_structure(
            &PartialMonoidTable::truncated_chain_difference(parse_size(n, name, MAX_OBJECTS - 1)?),
            bool_or(carrier),
        ),
        ["double", "effect", "chain", n] => double(
            &PartialMonoidTable::truncated_chain_sum(parse_size(n, name, MAX_OBJECTS / 2 - 1)?),
            bool_or(carrier),
        ),
        ["fusion", "ising"] => fixed(Carrier::Nat, ising),
        ["fusion", "fib"] => fixed(Carrier::Nat, fibonacci),
        ["geometry", "fano"] => fixed(Carrier::MaxTimes, || {
            prob_geometry_structure((1..=7).map(|i| i.to_string()), &fano_table()).expect("Fano table")
        }),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carriers::{Value, DEFAULT_TOLERANCE as TOL};

    #[test]
    fn names_resolve() {
        for name in [
            "powerset:0",
            "powerset:4",
            "oml:boolean:3",
            "oml:mo2",
            "oml:o6",
            "heyting:chain:4",
            "group:z2",
            "groupoid:pair:2",
            "effect:chain:2",
            "difference:chain:3",
            "double:effect:chain:4",
            "fusion:ising",
            "fusion:fib",
            "geometry:fano",
        ] {
            assert!(fixture(name).is_ok(), "{name}");
        }
        for name in ["powerset:x", "powerset:7", "heyting:chain:0", "oml", "fusion:su2", ""] {
            assert!(matches!(fixture(name), Err(GalleryError::UnknownFixture(_))), "{name}");
        }
    }

    #[test]
    fn default_and_overridden_carriers() {
        assert_eq!(fixture("powerset:2").unwrap().carrier(), Carrier::MaxPlus);
        assert_eq!(fixture("oml:mo2").unwrap().carrier(), Carrier::Bool);
        assert_eq!(fixture("fusion:fib").unwrap().carrier(), Carrier::Nat);
        assert_eq!(
            fixture_with_carrier("powerset:2", Some(Carrier::MaxTimes)).unwrap().carrier(),
            Carrier::MaxTimes
        );
        assert!(fixture_with_carrier("fusion:ising", Some(Carrier::Bool)).is_err());
        assert!(fixture_with_carrier("fusion:ising", Some(Carrier::Nat)).is_ok());
        assert!(fixture_with_carrier("group:z2", Some(Carrier::Nat)).is_err());
    }

    #[test]
    fn fusion_fixtures_pass_all_four_checks() {
        for s in [ising(), fibonacci()] {
            assert!(s.check_associativity(TOL).unwrap().passed);
            assert!(s.check_unit(TOL).unwrap().passed);
            assert!(s.check_cyclic(TOL).unwrap().passed);
            assert!(s.check_dual_compat(TOL).unwrap().passed);
        }
        let s = ising();
        assert_eq!(s.p(2, 2, 0), Value::Nat(1));
        assert_eq!(s.p(2, 2, 1), Value::Nat(1));
        assert_eq!(s.p(2, 2, 2), Value::Nat(0));
    }

    #[test]
    fn fano_has_no_cyclic_duality() {
        let s = fixture("geometry:fano").unwrap();
        assert_eq!(s.s_map(), None);
        assert!(s.check_associativity(TOL).unwrap().passed);
        // Forcing S = id exposes the diagonal: p(a,b,a) = 1 but p(a,a,b) = 0.
        let forced = s.with_duality(Some((0..7).collect())).unwrap();
        let r = forced.check_cyclic(TOL).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witnesses[0].indices, vec![0, 0, 1]);
    }

    #[test]
    fn fano_lines_meet_pairwise() {
        for (i, l) in FANO_LINES.iter().enumerate() {
            for m in &FANO_LINES[i + 1..] {
                assert_eq!(l.iter().filter(|x| m.contains(x)).count(), 1);
            }
        }
    }
}
