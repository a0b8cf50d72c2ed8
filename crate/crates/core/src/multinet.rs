//! Multinets: a partition of the hyperplanes into `k >= 3` blocks with
//! positive weights `m_H`, such that for every flat `X` meeting at least two
//! blocks, the sum `n_X` of `m_K` over the members `K` of `X` in a block
//! does not depend on the block.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::catalog::{build, FamilySpec};
use crate::error::{Error, Result};
use crate::field::{divisors, is_prime, Field, PrimeField, Rationals};
use crate::flats::FlatTable;
use crate::linalg::rank;
use crate::resonance::beta_p;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multinet {
    blocks: Vec<Vec<usize>>,
    mult: Vec<u64>,
    block_of: Vec<usize>,
}

fn malformed<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::MalformedMultinet(msg.into()))
}

impl Multinet {
    /// `blocks` must partition `0..n` into at least three nonempty classes.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>, mult: Vec<u64>) -> Result<Self> {
        if blocks.len() < 3 {
            return malformed(format!("a multinet needs at least 3 blocks, got {}", blocks.len()));
        }
        if mult.len() != n {
            return malformed(format!("{} weights for {n} hyperplanes", mult.len()));
        }
        if let Some(h) = mult.iter().position(|&w| w == 0) {
            return malformed(format!("weight of hyperplane {h} is zero"));
        }
        let mut block_of = vec![usize::MAX; n];
        let mut blocks = blocks;
        for (b, block) in blocks.iter_mut().enumerate() {
            if block.is_empty() {
                return malformed(format!("block {b} is empty"));
            }
            block.sort_unstable();
            for &h in block.iter() {
                if h >= n {
                    return malformed(format!("hyperplane index {h} out of range"));
                }
                if block_of[h] != usize::MAX {
                    return malformed(format!("hyperplane {h} appears in two blocks"));
                }
                block_of[h] = b;
            }
        }
        if let Some(h) = block_of.iter().position(|&b| b == usize::MAX) {
            return malformed(format!("hyperplane {h} is in no block"));
        }
        Ok(Multinet { blocks, mult, block_of })
    }

    /// All weights equal to 1.
    pub fn unweighted(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(n, blocks, vec![1; n])
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.mult.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.mult
    }

    pub fn multiplicity(&self, h: usize) -> u64 {
        self.mult[h]
    }

    pub fn block_of(&self, h: usize) -> usize {
        self.block_of[h]
    }

    /// `gcd(m_H - 1)`; zero exactly when every weight is 1.
    pub fn reduction_gcd(&self) -> u64 {
        self.mult.iter().fold(0, |g, &w| g.gcd(&(w - 1)))
    }

    /// Whether `m ≡ 1 (mod h)`.
    pub fn is_h_reduced(&self, h: u64) -> bool {
        h >= 1 && self.reduction_gcd().is_multiple_of(h)
    }

    pub fn is_reduced(&self) -> bool {
        self.reduction_gcd() == 0
    }

    /// Same multinet with blocks ordered by least member.
    pub fn canonical(&self) -> Multinet {
        let mut blocks = self.blocks.clone();
        blocks.sort_by_key(|b| b[0]);
        Multinet::new(self.num_hyperplanes(), blocks, self.mult.clone()).expect("already valid")
    }

    /// Reorders blocks: new block `i` is old block `perm[i]`.
    pub fn relabel_blocks(&self, perm: &[usize]) -> Result<Multinet> {
        let blocks = perm.iter().map(|&i| self.blocks.get(i).cloned()).collect::<Option<Vec<_>>>();
        match blocks {
            Some(b) => Multinet::new(self.num_hyperplanes(), b, self.mult.clone()),
            None => malformed("block permutation out of range"),
        }
    }

    pub fn phi(&self) -> PhiMap {
        PhiMap { k: self.k(), block: self.block_of.clone(), weight: self.mult.clone() }
    }

    pub fn to_json(&self, arr: &Arrangement) -> MultinetJson {
        let label = |h: usize| arr.hyperplanes()[h].label.clone();
        MultinetJson {
            blocks: self.blocks.iter().map(|b| b.iter().map(|&h| label(h)).collect()).collect(),
            multiplicities: (0..self.num_hyperplanes())
                .filter(|&h| self.mult[h] != 1)
                .map(|h| (label(h), self.mult[h]))
                .collect(),
        }
    }

    pub fn from_json(arr: &Arrangement, json: &MultinetJson) -> Result<Multinet> {
        let index = arr.label_index();
        let lookup = |l: &str| match index.get(l) {
            Some(&i) => Ok(i),
            None => malformed(format!("unknown label {l}")),
        };
        let blocks = json
            .blocks
            .iter()
            .map(|b| b.iter().map(|l| lookup(l)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut mult = vec![1; arr.len()];
        for (l, &w) in &json.multiplicities {
            mult[lookup(l)?] = w;
        }
        Multinet::new(arr.len(), blocks, mult)
    }
}

/// File format: blocks as label lists; omitted weights default to 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultinetJson {
    pub blocks: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub multiplicities: BTreeMap<String, u64>,
}

/// `φ: H_1(M) -> H_1(S)`, `a_H -> m_H c_α`, with `H_1(S)` the free group
/// on `c_0..c_{k-1}` modulo their sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiMap {
    pub k: usize,
    pub block: Vec<usize>,
    pub weight: Vec<u64>,
}

impl PhiMap {
    pub fn target_rank(&self) -> usize {
        self.k - 1
    }

    /// `φ(a_H)` in the basis `c_0..c_{k-2}` (using `c_{k-1} = -sum c_α`).
    pub fn image_of(&self, h: usize) -> Vec<i64> {
        let w = self.weight[h] as i64;
        if self.block[h] == self.k - 1 {
            vec![-w; self.k - 1]
        } else {
            let mut v = vec![0; self.k - 1];
            v[self.block[h]] = w;
            v
        }
    }

    /// Whether `φ ⊗ F_p` is onto.
    pub fn is_surjective_mod(&self, p: u64) -> Result<bool> {
        let f = PrimeField::new(p)?;
        let rows: Vec<Vec<u64>> = (0..self.block.len())
            .map(|h| self.image_of(h).into_iter().map(|x| f.reduce(x)).collect())
            .collect();
        Ok(rank(&f, &rows, self.k - 1) == self.k - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossFlatValue {
    pub members: Vec<String>,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub members: Vec<String>,
    pub block_a: usize,
    pub block_b: usize,
    /// Weighted count for every block.
    pub values: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultinetReport {
    pub valid: bool,
    pub k: usize,
    pub cross_flat_values: Vec<CrossFlatValue>,
    pub failures: Vec<AxiomFailure>,
    /// All weights equal 1 (every `h` then qualifies for `reduced_mod`).
    pub reduced: bool,
    /// Every `h >= 2` with `m ≡ 1 (mod h)`; empty when `reduced`.
    pub reduced_mod: Vec<u64>,
    /// Reduced, valid, and every cross flat meets every block.
    pub net: bool,
}

/// Checks the weighted block-count axiom on every cross flat.
pub fn verify(arr: &Arrangement, table: &FlatTable, net: &Multinet) -> Result<MultinetReport> {
    if net.num_hyperplanes() != arr.len() || table.num_hyperplanes() != arr.len() {
        return malformed(format!(
            "multinet covers {} hyperplanes, arrangement has {}",
            net.num_hyperplanes(),
            arr.len()
        ));
    }
    let k = net.k();
    let labels = |members: &[usize]| members.iter().map(|&h| arr.hyperplanes()[h].label.clone()).collect();
    let mut cross_flat_values = Vec::new();
    let mut failures = Vec::new();
    let mut meets_all = true;
    for flat in table.flats() {
        let mut values = vec![0u64; k];
        for &h in flat.members() {
            values[net.block_of(h)] += net.multiplicity(h);
        }
        if values.iter().filter(|&&v| v > 0).count() < 2 {
            continue;
        }
        meets_all &= values.iter().all(|&v| v > 0);
        match values.iter().position(|&v| v != values[0]) {
            None => cross_flat_values.push(CrossFlatValue { members: labels(flat.members()), value: values[0] }),
            Some(b) => failures.push(AxiomFailure { members: labels(flat.members()), block_a: 0, block_b: b, values }),
        }
    }
    let g = net.reduction_gcd();
    let reduced_mod = if g == 0 { Vec::new() } else { divisors(g).into_iter().filter(|&h| h >= 2).collect() };
    let valid = failures.is_empty();
    Ok(MultinetReport {
        valid,
        k,
        cross_flat_values,
        failures,
        reduced: g == 0,
        reduced_mod,
        net: valid && g == 0 && meets_all,
    })
}

fn block_lists(arr: &Arrangement, key: impl Fn(&str) -> Option<usize>, k: usize) -> Result<Vec<Vec<usize>>> {
    let mut blocks = vec![Vec::new(); k];
    for (h, hp) in arr.hyperplanes().iter().enumerate() {
        match key(&hp.label) {
            Some(b) => blocks[b].push(h),
            None => return Err(Error::Internal(format!("unexpected label {} in catalog arrangement", hp.label))),
        }
    }
    Ok(blocks)
}

fn difference(label: &str) -> Option<(usize, usize, i64)> {
    match crate::catalog::parse_label(label) {
        crate::catalog::LabelKind::Difference { i, j, alpha } => Some((i, j, alpha)),
        _ => None,
    }
}

/// Blocks by direction `{ij}` on `A(m,m,3)`.
pub fn fy_monomial_3net(m: u32) -> Result<(Arrangement, Multinet)> {
    let arr = build(&FamilySpec::Monomial { m, l: 3 })?;
    let blocks = block_lists(
        &arr,
        |l| {
            difference(l).map(|d| match (d.0, d.1) {
                (1, 2) => 0,
                (1, 3) => 1,
                _ => 2,
            })
        },
        3,
    )?;
    let net = Multinet::unweighted(arr.len(), blocks)?;
    Ok((arr, net))
}

/// Blocks by `α mod 3` on `A(m,m,3)`, `3 | m`, with `α` negated on `{1,3}`.
pub fn mod3_net(m: u32) -> Result<(Arrangement, Multinet)> {
    if m == 0 || !m.is_multiple_of(3) {
        return Err(Error::InvalidParameter(format!("mod3_net needs 3 | m, got m = {m}")));
    }
    let arr = build(&FamilySpec::Monomial { m, l: 3 })?;
    let blocks = block_lists(
        &arr,
        |l| {
            difference(l).map(|(i, j, a)| {
                let a = if (i, j) == (1, 3) { -a } else { a };
                a.rem_euclid(3) as usize
            })
        },
        3,
    )?;
    let net = Multinet::unweighted(arr.len(), blocks)?;
    Ok((arr, net))
}

/// Blocks `{12,34}`, `{13,24}`, `{14,23}` on `A(m,m,4)`.
pub fn pairs_net(m: u32) -> Result<(Arrangement, Multinet)> {
    let arr = build(&FamilySpec::Monomial { m, l: 4 })?;
    let blocks = block_lists(
        &arr,
        |l| {
            difference(l).map(|(i, j, _)| match (i, j) {
                (1, 2) | (3, 4) => 0,
                (1, 3) | (2, 4) => 1,
                _ => 2,
            })
        },
        3,
    )?;
    let net = Multinet::unweighted(arr.len(), blocks)?;
    Ok((arr, net))
}

/// On `A(m,1,3)`: block `i` is `H_i` (weight `m`) together with every
/// `H_{jk}^α` for `{j,k}` the complement of `i`.
pub fn full_monomial_multinet(m: u32) -> Result<(Arrangement, Multinet)> {
    let arr = build(&FamilySpec::FullMonomial { m, l: 3 })?;
    let blocks = block_lists(
        &arr,
        |l| match crate::catalog::parse_label(l) {
            crate::catalog::LabelKind::Coordinate(i) => Some(i - 1),
            crate::catalog::LabelKind::Difference { i, j, .. } => Some(6 - i - j - 1),
            crate::catalog::LabelKind::Other => None,
        },
        3,
    )?;
    let mult = arr
        .hyperplanes()
        .iter()
        .map(|h| match crate::catalog::parse_label(&h.label) {
            crate::catalog::LabelKind::Coordinate(_) => m as u64,
            _ => 1,
        })
        .collect();
    let net = Multinet::new(arr.len(), blocks, mult)?;
    Ok((arr, net))
}

/// The four triangles of the Hessian arrangement: the coordinate lines and
/// the three classes `a + b mod 3` of the lines `H(a,b)`.
pub fn hessian_4net() -> Result<(Arrangement, Multinet)> {
    let arr = build(&FamilySpec::Hessian)?;
    let blocks = block_lists(
        &arr,
        |l| {
            if let Some(rest) = l.strip_prefix("H(") {
                let (a, b) = rest.trim_end_matches(')').split_once(',')?;
                let s: usize = a.parse::<usize>().ok()? + b.parse::<usize>().ok()?;
                Some(1 + s % 3)
            } else {
                Some(0)
            }
        },
        4,
    )?;
    let net = Multinet::unweighted(arr.len(), blocks)?;
    Ok((arr, net))
}

/// The multinets known on a catalog family: the direction and `α mod 3`
/// nets on `A(m,m,3)`, the pairs net on `A(m,m,4)`, the weighted net on
/// `A(m,1,3)` and the triangle net on the Hessian arrangement.
pub fn catalog_nets(spec: &FamilySpec) -> Result<Vec<Multinet>> {
    let nets = match *spec {
        FamilySpec::Monomial { m, l: 3 } if m >= 2 => {
            let mut v = vec![fy_monomial_3net(m)?.1];
            if m % 3 == 0 {
                v.push(mod3_net(m)?.1);
            }
            v
        }
        FamilySpec::Monomial { m, l: 4 } if m >= 2 => vec![pairs_net(m)?.1],
        FamilySpec::FullMonomial { m, l: 3 } => vec![full_monomial_multinet(m)?.1],
        FamilySpec::Hessian => vec![hessian_4net()?.1],
        _ => Vec::new(),
    };
    Ok(nets)
}

fn subspace<F: Field>(field: &F, net: &Multinet) -> Vec<Vec<F::Elem>> {
    let n = net.num_hyperplanes();
    let last = net.k() - 1;
    (0..last)
        .map(|a| {
            (0..n)
                .map(|h| {
                    let w = field.from_i64(net.multiplicity(h) as i64);
                    match net.block_of(h) {
                        b if b == a => w,
                        b if b == last => field.neg(&w),
                        _ => field.zero(),
                    }
                })
                .collect()
        })
        .collect()
}

/// Basis of `im φ*` over `Q`: classes `sum_H m_H a_{α(H)} e_H` with
/// `sum_α a_α = 0`.
pub fn multinet_subspace_rational(net: &Multinet) -> Vec<Vec<BigRational>> {
    subspace(&Rationals, net)
}

/// Basis of `im φ*` over `F_p`; needs `m ≡ 1 (mod p)`.
pub fn multinet_subspace_mod_p(net: &Multinet, p: u64) -> Result<Vec<Vec<u64>>> {
    let f = PrimeField::new(p)?;
    if !net.is_h_reduced(p) {
        return Err(Error::InvalidParameter(format!("multinet is not {p}-reduced")));
    }
    Ok(subspace(&f, net))
}

/// `dim(U ∩ V)` for subspaces of `F^n` given by spanning sets.
pub fn subspace_intersection_dim<F: Field>(field: &F, u: &[Vec<F::Elem>], v: &[Vec<F::Elem>], n: usize) -> usize
where
    F::Elem: Clone,
{
    let both: Vec<Vec<F::Elem>> = u.iter().chain(v).cloned().collect();
    rank(field, u, n) + rank(field, v, n) - rank(field, &both, n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "claim", rename_all = "snake_case")]
pub enum Claim {
    /// `e_d > 0`.
    MonodromyPositive { d: u64 },
    /// `beta_p >= 1`, with the computed value.
    BettiPositive { p: u64, beta: usize },
}

/// Consequences of a verified `k`-multinet with `m ≡ 1 (mod k)`: `e_d > 0`
/// for every `d | k`, `d > 1`, and `beta_p >= 1` for every prime `p | k`.
/// Each Betti claim is checked against the computed value.
pub fn multinet_consequences(arr: &Arrangement, table: &FlatTable, net: &Multinet) -> Result<Vec<Claim>> {
    let k = net.k() as u64;
    if !net.is_h_reduced(k) {
        return Err(Error::InvalidParameter(format!("multinet is not {k}-reduced")));
    }
    if !verify(arr, table, net)?.valid {
        return Err(Error::InvalidParameter("partition fails the multinet axiom".into()));
    }
    let mut out = Vec::new();
    for d in divisors(k).into_iter().filter(|&d| d > 1) {
        out.push(Claim::MonodromyPositive { d });
    }
    for p in divisors(k).into_iter().filter(|&p| is_prime(p)) {
        let beta = beta_p(table, p)?.value;
        if beta == 0 {
            return Err(Error::Internal(format!("verified {k}-multinet but beta_{p} = 0")));
        }
        out.push(Claim::BettiPositive { p, beta });
    }
    Ok(out)
}

/// Distinct `n_X` values of a report, for relabeling comparisons.
pub fn cross_value_set(report: &MultinetReport) -> BTreeSet<(Vec<String>, u64)> {
    report.cross_flat_values.iter().map(|c| (c.members.clone(), c.value)).collect()
}
