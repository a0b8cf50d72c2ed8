//! Per-divisor bounds on the exponents `e_d` of the degree-1 Milnor fibre
//! monodromy, and the characteristic polynomial when they are all known.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::arrangement::Arrangement;
use crate::cyclo::{cyclotomic_polynomial, IntPoly};
use crate::error::{Error, Result};
use crate::field::{divisors, euler_phi, is_prime, prime_power};
use crate::flats::FlatTable;
use crate::matroid::decompose;
use crate::multinet::{verify, Multinet};
use crate::resonance::beta_p;

/// The diagonal character of order `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagonalCharacter(u64);

impl DiagonalCharacter {
    pub fn new(d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("character order must be positive".into()));
        }
        Ok(DiagonalCharacter(d))
    }

    pub fn order(&self) -> u64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Rule {
    /// No flat multiplicity is divisible by `d`.
    R1,
    /// The arrangement decomposes as a product.
    R2,
    /// `d = p` prime on a reflection arrangement: `e_p = beta_p`.
    R3,
    /// `d = p^s`: `e_d <= beta_p`.
    R4,
    /// A `k`-multinet with `m ≡ 1 (mod k)` and `d | k`: `e_d >= 1`.
    R5,
}

impl Rule {
    pub fn description(&self) -> &'static str {
        match self {
            Rule::R1 => "R1 no flat multiplicity divisible by d",
            Rule::R2 => "R2 arrangement decomposes",
            Rule::R3 => "R3 e_p = beta_p on reflection arrangements",
            Rule::R4 => "R4 e_{p^s} <= beta_p",
            Rule::R5 => "R5 reduced multinet with d | k",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Zero { rules: Vec<Rule> },
    Exact { value: usize, rules: Vec<Rule> },
    /// `hi = None` when no upper bound applies.
    Range { lo: usize, hi: Option<usize>, rules: Vec<Rule> },
}

impl Status {
    pub fn rules(&self) -> &[Rule] {
        match self {
            Status::Zero { rules } | Status::Exact { rules, .. } | Status::Range { rules, .. } => rules,
        }
    }

    /// The value when determined.
    pub fn exact(&self) -> Option<usize> {
        match self {
            Status::Zero { .. } => Some(0),
            Status::Exact { value, .. } => Some(*value),
            Status::Range { .. } => None,
        }
    }

    fn to_json(&self) -> Value {
        let rules: Vec<&str> = self.rules().iter().map(Rule::description).collect();
        match self {
            Status::Zero { .. } => json!({ "status": "zero", "value": 0, "rules": rules }),
            Status::Exact { value, .. } => json!({ "status": "exact", "value": value, "rules": rules }),
            Status::Range { lo, hi, .. } => json!({ "status": "range", "lo": lo, "hi": hi, "rules": rules }),
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Zero { .. } => write!(f, "0"),
            Status::Exact { value, .. } => write!(f, "{value}"),
            Status::Range { lo, hi: Some(hi), .. } => write!(f, "[{lo}, {hi}]"),
            Status::Range { lo, hi: None, .. } => write!(f, "[{lo}, ?]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyProfile {
    pub id: String,
    pub n: usize,
    /// Divisors `d > 1` of `n` in increasing order.
    pub entries: Vec<(DiagonalCharacter, Status)>,
}

impl MonodromyProfile {
    pub fn e1(&self) -> usize {
        self.n - 1
    }

    /// Status of `e_d`; `None` when `d` does not divide `n` (then `e_d = 0`).
    pub fn status(&self, d: u64) -> Option<&Status> {
        self.entries.iter().find(|(c, _)| c.order() == d).map(|(_, s)| s)
    }

    pub fn to_json(&self) -> Value {
        let mut e = serde_json::Map::new();
        e.insert("1".into(), json!(self.e1()));
        for (c, s) in &self.entries {
            e.insert(c.order().to_string(), s.to_json());
        }
        let cp = char_poly(self);
        json!({ "n": self.n, "e": Value::Object(e), "char_poly": cp.to_json() })
    }
}

/// Primes `p` such that some `p^s > 1` divides `n`.
pub fn primes_needed(n: usize) -> Vec<u64> {
    divisors(n as u64).into_iter().filter(|&d| is_prime(d)).collect()
}

/// `beta_p` for every prime dividing `n`.
pub fn betti_map(table: &FlatTable) -> Result<BTreeMap<u64, usize>> {
    primes_needed(table.num_hyperplanes())
        .into_iter()
        .map(|p| Ok((p, beta_p(table, p)?.value)))
        .collect()
}

/// Whether some flat multiplicity is divisible by `d`.
pub fn divisor_flat_screen(table: &FlatTable, d: u64) -> Result<bool> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("divisor screen needs d >= 2, got {d}")));
    }
    Ok(table.flats().iter().any(|f| (f.multiplicity() as u64).is_multiple_of(d)))
}

pub fn monodromy_profile(
    arr: &Arrangement,
    table: &FlatTable,
    betti: &BTreeMap<u64, usize>,
    nets: &[Multinet],
    is_reflection: bool,
) -> Result<MonodromyProfile> {
    let n = arr.len();
    let mut net_orders = Vec::new();
    for net in nets {
        if !verify(arr, table, net)?.valid {
            return Err(Error::InvalidParameter("a supplied multinet fails verification".into()));
        }
        if net.is_h_reduced(net.k() as u64) {
            net_orders.push(net.k() as u64);
        }
    }
    let decomposes = decompose(arr).len() >= 2;
    let beta = |p: u64| betti.get(&p).copied().ok_or(Error::MissingBetti(p));
    let mut entries = Vec::new();
    for d in divisors(n as u64).into_iter().filter(|&d| d > 1) {
        let mut rules = Vec::new();
        let mut zero = false;
        if !divisor_flat_screen(table, d)? {
            rules.push(Rule::R1);
            zero = true;
        }
        if decomposes {
            rules.push(Rule::R2);
            zero = true;
        }
        let mut exact = None;
        if is_reflection && is_prime(d) {
            rules.push(Rule::R3);
            exact = Some(beta(d)?);
        }
        let mut hi = None;
        if let Some((p, _)) = prime_power(d) {
            rules.push(Rule::R4);
            hi = Some(beta(p)?);
        }
        let mut lo = 0;
        if net_orders.iter().any(|&k| k % d == 0) {
            rules.push(Rule::R5);
            lo = 1;
        }
        let conflict = |what: String| Error::Internal(format!("e_{d}: {what}"));
        if let Some(h) = hi {
            if h < lo {
                return Err(conflict(format!("lower bound {lo} exceeds upper bound {h}")));
            }
        }
        let status = if zero {
            if lo > 0 || exact.is_some_and(|v| v > 0) {
                return Err(conflict("vanishing rule contradicts a positive value".into()));
            }
            Status::Zero { rules }
        } else if let Some(v) = exact {
            if v < lo || hi.is_some_and(|h| v > h) {
                return Err(conflict(format!("value {v} outside bounds")));
            }
            Status::Exact { value: v, rules }
        } else if hi == Some(lo) {
            Status::Exact { value: lo, rules }
        } else {
            Status::Range { lo, hi, rules }
        };
        entries.push((DiagonalCharacter::new(d)?, status));
    }
    let id = arr.metadata.family.clone().unwrap_or_else(|| format!("arrangement with {n} hyperplanes"));
    Ok(MonodromyProfile { id, n, entries })
}

/// `(t - 1)^{n-1} prod_d Phi_d(t)^{e_d}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    /// `(d, e_d)` with `e_d > 0`, starting with `(1, n - 1)`.
    pub factors: Vec<(u64, usize)>,
    /// Divisors whose exponent is not determined.
    pub unresolved: Vec<u64>,
    pub complete: bool,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.factors.iter().map(|&(d, e)| e * euler_phi(d as u32)).sum()
    }

    /// Product of the known factors as an integer polynomial.
    pub fn expand(&self) -> Result<IntPoly> {
        let mut out = IntPoly::one();
        for &(d, e) in &self.factors {
            out = out.mul(&cyclotomic_polynomial(d as u32)?.pow(e as u64));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .factors
            .iter()
            .map(|&(d, e)| if d == 1 { json!(["t-1", e]) } else { json!([format!("Phi_{d}"), e]) })
            .collect();
        json!({ "factors": factors, "complete": self.complete, "unresolved": self.unresolved })
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for &(d, e) in &self.factors {
            let base = if d == 1 {
                "(t - 1)".to_string()
            } else {
                let poly = cyclotomic_polynomial(d as u32).map_err(|_| fmt::Error)?;
                format!("({})", poly.to_string().replace('x', "t"))
            };
            parts.push(if e == 1 { base } else { format!("{base}^{e}") });
        }
        write!(f, "{}", parts.join(" "))?;
        if !self.complete {
            let ds: Vec<String> = self.unresolved.iter().map(|d| format!("Phi_{d}")).collect();
            write!(f, " [undetermined: {}]", ds.join(", "))?;
        }
        Ok(())
    }
}

pub fn char_poly(profile: &MonodromyProfile) -> CharPoly {
    let mut factors = vec![(1, profile.e1())];
    let mut unresolved = Vec::new();
    for (c, s) in &profile.entries {
        match s.exact() {
            Some(0) => {}
            Some(e) => factors.push((c.order(), e)),
            None => unresolved.push(c.order()),
        }
    }
    let complete = unresolved.is_empty();
    CharPoly { factors, unresolved, complete }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::tests::rational;
    use crate::catalog::{build, FamilySpec};
    use crate::flats::compute_flat_table;
    use crate::multinet::{fy_monomial_3net, hessian_4net, mod3_net};

    fn profile(spec: FamilySpec, nets: &[Multinet]) -> MonodromyProfile {
        let arr = build(&spec).unwrap();
        let t = compute_flat_table(&arr);
        let betti = betti_map(&t).unwrap();
        monodromy_profile(&arr, &t, &betti, nets, arr.is_reflection()).unwrap()
    }

    #[test]
    fn a413_profile() {
        let p = profile(FamilySpec::FullMonomial { m: 4, l: 3 }, &[]);
        assert_eq!(p.n, 15);
        assert_eq!(p.status(3), Some(&Status::Exact { value: 1, rules: vec![Rule::R3, Rule::R4] }));
        assert_eq!(p.status(5), Some(&Status::Zero { rules: vec![Rule::R1, Rule::R3, Rule::R4] }));
        assert_eq!(p.status(15), Some(&Status::Zero { rules: vec![Rule::R1] }));
        let cp = char_poly(&p);
        assert!(cp.complete);
        assert_eq!(cp.factors, vec![(1, 14), (3, 1)]);
        assert_eq!(cp.to_string(), "(t - 1)^14 (t^2 + t + 1)");
    }

    #[test]
    fn a663_profile() {
        let (_, n1) = fy_monomial_3net(6).unwrap();
        let (_, n2) = mod3_net(6).unwrap();
        let p = profile(FamilySpec::Monomial { m: 6, l: 3 }, &[n1, n2]);
        assert_eq!(p.status(3).unwrap().exact(), Some(2));
        assert_eq!(p.status(2).unwrap().exact(), Some(0));
        assert!(matches!(p.status(9), Some(Status::Zero { .. })));
        assert!(matches!(p.status(18), Some(Status::Zero { .. })));
        assert!(matches!(p.status(6), Some(Status::Range { lo: 0, hi: None, .. })));
        assert!(!char_poly(&p).complete);
        assert_eq!(char_poly(&p).unresolved, vec![6]);
    }

    #[test]
    fn hessian_profile() {
        let (_, net) = hessian_4net().unwrap();
        let p = profile(FamilySpec::Hessian, &[net]);
        assert_eq!(p.status(2).unwrap().exact(), Some(2));
        for d in [3, 6, 12] {
            assert!(matches!(p.status(d), Some(Status::Zero { rules }) if rules.contains(&Rule::R1)));
        }
        assert!(matches!(p.status(4), Some(Status::Range { lo: 1, hi: Some(2), .. })));
    }

    #[test]
    fn full_monomial_polynomials() {
        for m in 2..=4u32 {
            for l in [3, 4] {
                let p = profile(FamilySpec::FullMonomial { m, l }, &[]);
                let cp = char_poly(&p);
                assert!(cp.complete, "A({m},1,{l})");
                let mut expected = vec![(1, p.n - 1)];
                if l == 3 && m % 3 == 1 {
                    expected.push((3, 1));
                }
                assert_eq!(cp.factors, expected, "A({m},1,{l})");
                assert_eq!(cp.expand().unwrap().degree(), cp.degree());
            }
        }
    }

    #[test]
    fn non_reflection_gets_bounds_only() {
        // three lines through a point plus a fourth generic line, not marked reflection
        let arr = rational(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        let t = compute_flat_table(&arr);
        let betti = betti_map(&t).unwrap();
        let p = monodromy_profile(&arr, &t, &betti, &[], false).unwrap();
        assert!(p.entries.iter().all(|(_, s)| !s.rules().contains(&Rule::R3)));
        // it is a product of a pencil and a line
        assert!(p.entries.iter().all(|(_, s)| s.rules().contains(&Rule::R2)));
    }

    #[test]
    fn missing_betti_and_screen() {
        let arr = build(&FamilySpec::Hessian).unwrap();
        let t = compute_flat_table(&arr);
        let err = monodromy_profile(&arr, &t, &BTreeMap::new(), &[], true).unwrap_err();
        assert_eq!(err, Error::MissingBetti(2));
        assert!(!divisor_flat_screen(&t, 3).unwrap());
        assert!(divisor_flat_screen(&t, 4).unwrap());
        assert!(divisor_flat_screen(&t, 1).is_err());
        let generic = compute_flat_table(&rational(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert!(divisor_flat_screen(&generic, 2).unwrap());
    }

    #[test]
    fn json_shape() {
        let p = profile(FamilySpec::FullMonomial { m: 4, l: 3 }, &[]);
        let v = p.to_json();
        assert_eq!(v["n"], 15);
        assert_eq!(v["e"]["1"], 14);
        assert_eq!(v["e"]["3"]["status"], "exact");
        assert_eq!(v["e"]["3"]["value"], 1);
        assert_eq!(v["e"]["15"]["status"], "zero");
        assert_eq!(v["char_poly"]["factors"], json!([["t-1", 14], ["Phi_3", 1]]));
        assert_eq!(v["char_poly"]["complete"], true);
    }
}
