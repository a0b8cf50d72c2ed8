//! Builders for the monomial, full monomial and exceptional reflection
//! arrangements, with the standard hyperplane labels, and closed-form counts
//! of their rank-2 flats by type.
//!
//! Labels: `Hi` is `z_i = 0`; `Hij^a` is `z_i - w^a z_j = 0`; `Ha(a2,a3,a4)`
//! and `Ha(a1,a2,a3,a4)` are the extra hyperplanes of G31 and G33;
//! `Hi^(a,b)` are the non-coordinate hyperplanes of G32; `H(a,b)` is
//! `z_1 + w^a z_2 + w^b z_3 = 0` in the Hessian arrangement.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::arrangement::{Arrangement, Hyperplane, Metadata};
use crate::cyclo::{CycElem, CyclotomicField};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::flats::FlatTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// `A(1,1,l)`.
    Braid { l: usize },
    /// `A(m,m,l)`: `prod (z_i^m - z_j^m)`.
    Monomial { m: u32, l: usize },
    /// `A(m,1,l)`: `z_1 ... z_l prod (z_i^m - z_j^m)`.
    FullMonomial { m: u32, l: usize },
    G31,
    G32,
    G33,
    /// `A(G25)`.
    Hessian,
}

impl FamilySpec {
    pub fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidFamily(msg));
        match *self {
            FamilySpec::Braid { l } if l < 2 => bad(format!("braid needs l >= 2, got {l}")),
            FamilySpec::Monomial { m, l } if m < 1 || l < 2 => {
                bad(format!("monomial needs m >= 1 and l >= 2, got m = {m}, l = {l}"))
            }
            FamilySpec::FullMonomial { m, l } if m < 2 || l < 2 => {
                bad(format!("full-monomial needs m >= 2 and l >= 2, got m = {m}, l = {l}"))
            }
            _ => Ok(()),
        }
    }

    /// Expected `|A|`.
    pub fn hyperplane_count(&self) -> usize {
        match *self {
            FamilySpec::Braid { l } => l * (l - 1) / 2,
            FamilySpec::Monomial { m, l } => m as usize * l * (l - 1) / 2,
            FamilySpec::FullMonomial { m, l } => l + m as usize * l * (l - 1) / 2,
            FamilySpec::G31 => 60,
            FamilySpec::G32 => 40,
            FamilySpec::G33 => 45,
            FamilySpec::Hessian => 12,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Braid { l } => write!(f, "braid:{l}"),
            FamilySpec::Monomial { m, l } => write!(f, "monomial:{m}:{l}"),
            FamilySpec::FullMonomial { m, l } => write!(f, "full-monomial:{m}:{l}"),
            FamilySpec::G31 => write!(f, "G31"),
            FamilySpec::G32 => write!(f, "G32"),
            FamilySpec::G33 => write!(f, "G33"),
            FamilySpec::Hessian => write!(f, "hessian"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| -> Result<u64> {
            t.parse().map_err(|_| Error::InvalidFamily(format!("{s}: `{t}` is not a number")))
        };
        let spec = match parts.as_slice() {
            ["braid", l] => FamilySpec::Braid { l: num(l)? as usize },
            ["monomial", m, l] => FamilySpec::Monomial { m: num(m)? as u32, l: num(l)? as usize },
            ["full-monomial", m, l] => FamilySpec::FullMonomial { m: num(m)? as u32, l: num(l)? as usize },
            ["G31"] | ["g31"] => FamilySpec::G31,
            ["G32"] | ["g32"] => FamilySpec::G32,
            ["G33"] | ["g33"] => FamilySpec::G33,
            ["hessian"] | ["G25"] => FamilySpec::Hessian,
            _ => return Err(Error::InvalidFamily(s.to_string())),
        };
        spec.check()?;
        Ok(spec)
    }
}

struct Builder {
    field: CyclotomicField,
    l: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Builder {
    fn new(m: u32, l: usize) -> Self {
        Builder { field: CyclotomicField::new(m).expect("m >= 1"), l, hyperplanes: Vec::new() }
    }

    /// Adds `sum_i c_i w^{e_i} z_{k_i}`, terms given as (coordinate, sign, exponent).
    fn push(&mut self, label: String, terms: &[(usize, i64, i64)]) {
        let f = &self.field;
        let mut normal: Vec<CycElem> = vec![f.zero(); self.l];
        for &(k, sign, e) in terms {
            let t = f.mul(&f.from_i64(sign), &f.zeta_pow(e));
            normal[k] = f.add(&normal[k], &t);
        }
        self.hyperplanes.push(Hyperplane { label, normal });
    }

    fn coordinates(&mut self, count: usize) {
        for i in 0..count {
            self.push(format!("H{}", i + 1), &[(i, 1, 0)]);
        }
    }

    /// `z_i - w^a z_j` for `i < j < = upto`, `a` in `Z/m`.
    fn differences(&mut self, upto: usize, m: u32) {
        for i in 0..upto {
            for j in i + 1..upto {
                for a in 0..m as i64 {
                    self.push(pair_label(i + 1, j + 1, a, self.l), &[(i, 1, 0), (j, -1, a)]);
                }
            }
        }
    }

    fn finish(self, spec: FamilySpec) -> Result<Arrangement> {
        let arr = Arrangement::new(self.field, self.l, self.hyperplanes)?;
        Ok(arr.with_metadata(Metadata { family: Some(spec.to_string()), reflection: true }))
    }
}

fn pair_label(i: usize, j: usize, a: i64, l: usize) -> String {
    if l < 10 {
        format!("H{i}{j}^{a}")
    } else {
        format!("H{i},{j}^{a}")
    }
}

/// Constructs the catalog arrangement for `spec`.
pub fn build(spec: &FamilySpec) -> Result<Arrangement> {
    spec.check()?;
    let arr = match *spec {
        FamilySpec::Braid { l } => {
            let mut b = Builder::new(1, l);
            b.differences(l, 1);
            b.finish(*spec)?
        }
        FamilySpec::Monomial { m, l } => {
            let mut b = Builder::new(m, l);
            b.differences(l, m);
            b.finish(*spec)?
        }
        FamilySpec::FullMonomial { m, l } => {
            let mut b = Builder::new(m, l);
            b.coordinates(l);
            b.differences(l, m);
            b.finish(*spec)?
        }
        FamilySpec::G31 => {
            let mut b = Builder::new(4, 4);
            b.coordinates(4);
            b.differences(4, 4);
            for a2 in 0..4 {
                for a3 in 0..4 {
                    for a4 in 0..4 {
                        if (a2 + a3 + a4) % 2 == 0 {
                            b.push(
                                format!("Ha({a2},{a3},{a4})"),
                                &[(0, 1, 0), (1, 1, a2), (2, 1, a3), (3, 1, a4)],
                            );
                        }
                    }
                }
            }
            b.finish(*spec)?
        }
        FamilySpec::G32 => {
            let mut b = Builder::new(3, 4);
            b.coordinates(4);
            for i in 1..=4usize {
                for a in 0..3 {
                    for c in 0..3 {
                        let terms = match i {
                            1 => [(1, 1, 0), (2, 1, a), (3, 1, c)],
                            2 => [(0, 1, 0), (2, 1, a), (3, -1, c)],
                            3 => [(0, 1, 0), (1, -1, a), (3, 1, c)],
                            _ => [(0, 1, 0), (1, 1, a), (2, -1, c)],
                        };
                        b.push(format!("H{i}^({a},{c})"), &terms);
                    }
                }
            }
            b.finish(*spec)?
        }
        FamilySpec::G33 => {
            let mut b = Builder::new(3, 6);
            b.differences(4, 3);
            for a1 in 0..3 {
                for a2 in 0..3 {
                    for a3 in 0..3 {
                        for a4 in 0..3 {
                            if (a1 + a2 + a3 + a4) % 3 == 0 {
                                b.push(
                                    format!("Ha({a1},{a2},{a3},{a4})"),
                                    &[(0, 1, a1), (1, 1, a2), (2, 1, a3), (3, 1, a4), (4, 1, 0), (5, 1, 0)],
                                );
                            }
                        }
                    }
                }
            }
            b.finish(*spec)?
        }
        FamilySpec::Hessian => {
            let mut b = Builder::new(3, 3);
            b.coordinates(3);
            for a in 0..3 {
                for c in 0..3 {
                    b.push(format!("H({a},{c})"), &[(0, 1, 0), (1, 1, a), (2, 1, c)]);
                }
            }
            b.finish(*spec)?
        }
    };
    debug_assert_eq!(arr.len(), spec.hyperplane_count());
    Ok(arr)
}

/// Structured reading of a catalog label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelKind {
    Coordinate(usize),
    Difference { i: usize, j: usize, alpha: i64 },
    Other,
}

pub fn parse_label(label: &str) -> LabelKind {
    let Some(rest) = label.strip_prefix('H') else {
        return LabelKind::Other;
    };
    if let Ok(i) = rest.parse::<usize>() {
        // single coordinate hyperplane unless it is a bare pair like "H12"
        return LabelKind::Coordinate(i);
    }
    let Some((idx, alpha)) = rest.split_once('^') else {
        return LabelKind::Other;
    };
    let Ok(alpha) = alpha.parse::<i64>() else {
        return LabelKind::Other;
    };
    let pair = if let Some((i, j)) = idx.split_once(',') {
        i.parse().ok().zip(j.parse().ok())
    } else if idx.len() == 2 && idx.bytes().all(|b| b.is_ascii_digit()) {
        let b = idx.as_bytes();
        Some(((b[0] - b'0') as usize, (b[1] - b'0') as usize))
    } else {
        None
    };
    match pair {
        Some((i, j)) => LabelKind::Difference { i, j, alpha },
        None => LabelKind::Other,
    }
}

/// Rank-2 flat types of the monomial families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FlatType {
    /// `{H_i, H_j, H_ij^a (all a)}`.
    Ia,
    /// `{H_ij^a, H_jk^b, H_ik^(a+b)}`.
    Ib,
    /// `{H_ij^a, H_kh^b}` with disjoint index pairs.
    Ic,
    /// `{H_i, H_jk^a}`.
    Id,
    /// `{H_ij^a (all a)}`.
    II,
    /// Anything not matching a pattern above, bucketed by size.
    Size(usize),
}

impl fmt::Display for FlatType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlatType::Ia => write!(f, "I_a"),
            FlatType::Ib => write!(f, "I_b"),
            FlatType::Ic => write!(f, "I_c"),
            FlatType::Id => write!(f, "I_d"),
            FlatType::II => write!(f, "II"),
            FlatType::Size(k) => write!(f, "size-{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusEntry {
    pub count: usize,
    pub multiplicity: usize,
}

pub type FlatCensus = BTreeMap<FlatType, CensusEntry>;

pub fn census_pair_count(census: &FlatCensus) -> usize {
    census.values().map(|e| e.count * e.multiplicity * (e.multiplicity - 1) / 2).sum()
}

/// Classifies a flat from its member labels.
pub fn classify(labels: &[&str]) -> FlatType {
    let kinds: Vec<LabelKind> = labels.iter().map(|l| parse_label(l)).collect();
    let coords: Vec<usize> = kinds
        .iter()
        .filter_map(|k| if let LabelKind::Coordinate(i) = k { Some(*i) } else { None })
        .collect();
    let pairs: Vec<(usize, usize)> = kinds
        .iter()
        .filter_map(|k| if let LabelKind::Difference { i, j, .. } = k { Some((*i, *j)) } else { None })
        .collect();
    let size = labels.len();
    if coords.len() + pairs.len() != size {
        return FlatType::Size(size);
    }
    let same_pair = |p: &(usize, usize)| pairs.iter().all(|q| q == p);
    match (coords.len(), pairs.len()) {
        (0, n) if n >= 2 && same_pair(&pairs[0]) => FlatType::II,
        (2, n) if n >= 1 && same_pair(&pairs[0]) => {
            let (i, j) = pairs[0];
            let mut c = coords.clone();
            c.sort();
            if c == [i, j] { FlatType::Ia } else { FlatType::Size(size) }
        }
        (0, 3) => {
            let mut idx: Vec<usize> = pairs.iter().flat_map(|&(i, j)| [i, j]).collect();
            idx.sort();
            idx.dedup();
            let distinct = pairs[0] != pairs[1] && pairs[1] != pairs[2] && pairs[0] != pairs[2];
            if idx.len() == 3 && distinct { FlatType::Ib } else { FlatType::Size(size) }
        }
        (0, 2) => {
            let ((i, j), (k, h)) = (pairs[0], pairs[1]);
            if i != k && i != h && j != k && j != h { FlatType::Ic } else { FlatType::Size(size) }
        }
        (1, 1) => {
            let (j, k) = pairs[0];
            if coords[0] != j && coords[0] != k { FlatType::Id } else { FlatType::Size(size) }
        }
        _ => FlatType::Size(size),
    }
}

/// Census of a computed flat table. Fails if one type shows up with two
/// different multiplicities.
pub fn observed_census(arr: &Arrangement, table: &FlatTable) -> Result<FlatCensus> {
    let mut out = FlatCensus::new();
    for flat in table.flats() {
        let labels: Vec<&str> = flat.members().iter().map(|&i| arr.hyperplanes()[i].label.as_str()).collect();
        let ty = classify(&labels);
        let e = out.entry(ty).or_insert(CensusEntry { count: 0, multiplicity: flat.multiplicity() });
        if e.multiplicity != flat.multiplicity() {
            return Err(Error::Internal(format!(
                "flat type {ty} seen with multiplicities {} and {}",
                e.multiplicity,
                flat.multiplicity()
            )));
        }
        e.count += 1;
    }
    Ok(out)
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Closed-form flat counts for the monomial and full monomial families.
pub fn expected_flat_census(spec: &FamilySpec) -> Result<FlatCensus> {
    spec.check()?;
    let (m, l, full) = match *spec {
        FamilySpec::Braid { l } => (1, l, false),
        FamilySpec::Monomial { m, l } => (m as usize, l, false),
        FamilySpec::FullMonomial { m, l } => (m as usize, l, true),
        _ => return Err(Error::Unsupported(format!("no closed-form flat census for {spec}"))),
    };
    let mut out = FlatCensus::new();
    let mut put = |ty, count, multiplicity| {
        if count > 0 {
            out.insert(ty, CensusEntry { count, multiplicity });
        }
    };
    if full {
        put(FlatType::Ia, binom(l, 2), m + 2);
        put(FlatType::Id, l * binom(l - 1, 2) * m, 2);
    } else if m >= 2 {
        put(FlatType::II, binom(l, 2), m);
    }
    put(FlatType::Ib, binom(l, 3) * m * m, 3);
    put(FlatType::Ic, 3 * binom(l, 4) * m * m, 2);
    Ok(out)
}
