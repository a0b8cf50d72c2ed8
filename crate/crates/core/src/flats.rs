//! Rank-2 flats: every codimension-2 intersection together with the set of
//! hyperplanes containing it.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::cyclo::CycElem;
use crate::error::{Error, Result};
use crate::field::Field;

/// A rank-2 flat `X`, stored as the closed member set `A_X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat2 {
    members: Vec<usize>,
}

impl Flat2 {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, h: usize) -> bool {
        self.members.binary_search(&h).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatTable {
    n: usize,
    flats: Vec<Flat2>,
    /// `pair[i * n + j]` is the index of the flat containing `H_i, H_j`.
    pair: Vec<usize>,
    /// Flats through each hyperplane, in canonical order.
    incident: Vec<Vec<usize>>,
}

impl FlatTable {
    fn from_member_sets(n: usize, sets: impl IntoIterator<Item = BTreeSet<usize>>) -> Self {
        let mut flats: Vec<Flat2> =
            sets.into_iter().map(|s| Flat2 { members: s.into_iter().collect() }).collect();
        flats.sort();
        let mut pair = vec![usize::MAX; n * n];
        let mut incident = vec![Vec::new(); n];
        for (x, flat) in flats.iter().enumerate() {
            for (a, &i) in flat.members.iter().enumerate() {
                incident[i].push(x);
                for &j in &flat.members[a + 1..] {
                    pair[i * n + j] = x;
                    pair[j * n + i] = x;
                }
            }
        }
        FlatTable { n, flats, pair, incident }
    }

    pub fn flats(&self) -> &[Flat2] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.n
    }

    /// The flat `H_i ∩ H_j`, for `i != j`.
    pub fn flat_of_pair(&self, i: usize, j: usize) -> &Flat2 {
        &self.flats[self.pair_index(i, j)]
    }

    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        assert_ne!(i, j, "a hyperplane does not determine a rank-2 flat");
        self.pair[i * self.n + j]
    }

    /// Indices of the flats contained in hyperplane `h`.
    pub fn flats_through(&self, h: usize) -> &[usize] {
        &self.incident[h]
    }

    pub fn find(&self, members: &[usize]) -> Option<usize> {
        self.flats.binary_search_by(|f| f.members.as_slice().cmp(members)).ok()
    }

    /// `sum_X C(|A_X|, 2)`, which must equal `C(n, 2)`.
    pub fn pair_count(&self) -> usize {
        self.flats.iter().map(|f| f.multiplicity() * (f.multiplicity() - 1) / 2).sum()
    }

    pub fn pair_identity_holds(&self) -> bool {
        self.pair_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Multiplicity → number of flats with that multiplicity.
    pub fn multiplicity_histogram(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut out = std::collections::BTreeMap::new();
        for f in &self.flats {
            *out.entry(f.multiplicity()).or_insert(0) += 1;
        }
        out
    }

    pub fn to_json(&self, arr: &Arrangement) -> FlatTableJson {
        FlatTableJson {
            flats: self
                .flats
                .iter()
                .map(|f| FlatJson {
                    members: f.members.iter().map(|&i| arr.hyperplanes()[i].label.clone()).collect(),
                    multiplicity: f.multiplicity(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatJson {
    pub members: Vec<String>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatTableJson {
    pub flats: Vec<FlatJson>,
}

/// Reduced row echelon form of the span of two normalized, non-proportional
/// vectors. Equal spans give equal keys.
fn span_key(arr: &Arrangement, u: &[CycElem], v: &[CycElem]) -> Vec<CycElem> {
    let f = arr.field();
    let lead = |w: &[CycElem]| w.iter().position(|x| !x.is_zero()).expect("nonzero normal");
    let (cu, cv) = (lead(u), lead(v));
    let (top, bottom) = match cu.cmp(&cv) {
        std::cmp::Ordering::Less => (u.to_vec(), v.to_vec()),
        std::cmp::Ordering::Greater => (v.to_vec(), u.to_vec()),
        std::cmp::Ordering::Equal => {
            // both have a leading 1 in the same column
            let diff: Vec<CycElem> = v.iter().zip(u).map(|(a, b)| f.sub(a, b)).collect();
            (u.to_vec(), crate::arrangement::normalize(f, &diff))
        }
    };
    let c2 = lead(&bottom);
    let factor = top[c2].clone();
    let mut key: Vec<CycElem> = top.iter().zip(&bottom).map(|(a, b)| f.sub(a, &f.mul(&factor, b))).collect();
    key.extend(bottom);
    key
}

/// Enumerates all rank-2 flats. Pairs of hyperplanes are grouped by the
/// canonical echelon form of the plane their normals span; the members of a
/// flat are the union of its pairs, which is closed by construction.
pub fn compute_flat_table(arr: &Arrangement) -> FlatTable {
    let n = arr.len();
    let normals: Vec<Vec<CycElem>> = (0..n).map(|i| arr.normalized_normal(i)).collect();
    let mut groups: HashMap<Vec<CycElem>, BTreeSet<usize>> = HashMap::new();
    let mut assigned = vec![false; n * n];
    for i in 0..n {
        for j in i + 1..n {
            if assigned[i * n + j] {
                continue;
            }
            let key = span_key(arr, &normals[i], &normals[j]);
            let members = groups.entry(key).or_default();
            members.insert(i);
            members.insert(j);
            // mark pairs already known to share this flat
            for &a in members.iter() {
                for &b in members.iter() {
                    assigned[a * n + b] = true;
                }
            }
        }
    }
    FlatTable::from_member_sets(n, groups.into_values())
}

/// The subarrangement `A_X` of hyperplanes containing `X`.
pub fn restrict_to_flat(arr: &Arrangement, table: &FlatTable, members: &[usize]) -> Result<Arrangement> {
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    let idx = table.find(&sorted).ok_or_else(|| Error::NotAFlat(sorted.clone()))?;
    Ok(arr.subarrangement(table.flats()[idx].members()))
}
