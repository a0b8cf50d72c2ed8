//! Orlik–Solomon cohomology in degrees at most 2.
//!
//! Degree 2 splits as a sum over rank-2 flats `X`; the component of `X` has
//! basis `b^X_K` for the members `K` of `A_X` other than the least one.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::flats::FlatTable;
use crate::linalg::{rank, PrimeFieldMatrix};
use crate::multinet::{multinet_subspace_rational, Multinet};

/// Coordinates of a degree-1 class in the basis `a_H`.
pub type OneClass<E> = Vec<E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeTwoClass<E> {
    /// One vector per flat, in flat-table order, of length `|A_X| - 1`.
    pub components: Vec<Vec<E>>,
}

impl<E> DegreeTwoClass<E> {
    pub fn dim(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    pub fn is_zero_in<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.components.iter().flatten().all(|x| field.is_zero(x))
    }
}

fn check_len<E>(table: &FlatTable, v: &[E]) -> Result<()> {
    if v.len() != table.num_hyperplanes() {
        return Err(Error::Dimension(format!(
            "degree-1 class has {} coordinates, arrangement has {} hyperplanes",
            v.len(),
            table.num_hyperplanes()
        )));
    }
    Ok(())
}

/// Cup product of two degree-1 classes.
pub fn cup<F: Field>(
    field: &F,
    table: &FlatTable,
    sigma: &[F::Elem],
    tau: &[F::Elem],
) -> Result<DegreeTwoClass<F::Elem>> {
    check_len(table, sigma)?;
    check_len(table, tau)?;
    let sum = |v: &[F::Elem], members: &[usize]| {
        members.iter().fold(field.zero(), |acc, &h| field.add(&acc, &v[h]))
    };
    let components = table
        .flats()
        .iter()
        .map(|flat| {
            let members = flat.members();
            let (sx, tx) = (sum(sigma, members), sum(tau, members));
            members[1..]
                .iter()
                .map(|&k| field.sub(&field.mul(&sx, &tau[k]), &field.mul(&tx, &sigma[k])))
                .collect()
        })
        .collect();
    Ok(DegreeTwoClass { components })
}

/// Matrix of the linear map `eta -> cup(sigma, eta)`, one row per
/// degree-2 basis element.
pub fn cup_matrix<F: Field>(field: &F, table: &FlatTable, sigma: &[F::Elem]) -> Result<Vec<Vec<F::Elem>>> {
    check_len(table, sigma)?;
    let n = table.num_hyperplanes();
    let mut rows = Vec::new();
    for flat in table.flats() {
        let members = flat.members();
        let sx = members.iter().fold(field.zero(), |acc, &h| field.add(&acc, &sigma[h]));
        for &k in &members[1..] {
            let mut row = vec![field.zero(); n];
            for &h in members {
                row[h] = field.neg(&sigma[k]);
            }
            row[k] = field.add(&row[k], &sx);
            rows.push(row);
        }
    }
    Ok(rows)
}

/// `dim H^1` of the Aomoto complex `(H^*(M, F_p), sigma_p)`, where
/// `sigma_p` is the all-ones class.
pub fn aomoto_h1(table: &FlatTable, p: u64) -> Result<usize> {
    let f = PrimeField::new(p)?;
    let n = table.num_hyperplanes();
    let rows = cup_matrix(&f, table, &vec![1; n])?;
    let kernel = n - PrimeFieldMatrix::new(p, n, rows)?.rank();
    // sigma_p itself spans the image of degree 0
    kernel
        .checked_sub(1)
        .ok_or_else(|| Error::Internal("sigma_p is not a cocycle of the Aomoto complex".into()))
}

/// Whether all pairwise cup products of `basis` vanish.
pub fn is_isotropic<F: Field>(field: &F, table: &FlatTable, basis: &[OneClass<F::Elem>]) -> Result<bool>
where
    F::Elem: Clone,
{
    for v in basis {
        check_len(table, v)?;
    }
    if rank(field, basis, table.num_hyperplanes()) != basis.len() {
        return Err(Error::InvalidParameter("isotropy test needs an independent basis".into()));
    }
    for (i, u) in basis.iter().enumerate() {
        for v in &basis[i + 1..] {
            if !cup(field, table, u, v)?.is_zero_in(field) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Evaluates `∧²φ ∘ ∇` on every degree-2 homology generator, where `φ`
/// sends `a_H` to `m_H c_α` for `H` in block `α`, and reports whether it
/// vanishes. The verdict is checked against [`is_isotropic`] on the dual
/// subspace; disagreement is an internal error.
pub fn nabla_check(table: &FlatTable, net: &Multinet) -> Result<bool> {
    let n = table.num_hyperplanes();
    if net.num_hyperplanes() != n {
        return Err(Error::Dimension("multinet does not cover the arrangement".into()));
    }
    let k = net.k();
    let last = k - 1;
    let mut vanishes = true;
    'outer: for flat in table.flats() {
        let members = flat.members();
        for &l in &members[1..] {
            // ∇(g_{X,L}) = sum over H < K in A_X of the b_L-coefficient of e_H e_K
            let mut wedge: BTreeMap<(usize, usize), i128> = BTreeMap::new();
            for (i, &h) in members.iter().enumerate() {
                for &kk in &members[i + 1..] {
                    let coef = (kk == l) as i128 - (h == l) as i128;
                    if coef == 0 {
                        continue;
                    }
                    let (a, b) = (net.block_of(h), net.block_of(kk));
                    if a == b {
                        continue;
                    }
                    let w = coef * net.multiplicity(h) as i128 * net.multiplicity(kk) as i128;
                    let (key, sign) = if a < b { ((a, b), 1) } else { ((b, a), -1) };
                    *wedge.entry(key).or_insert(0) += sign * w;
                }
            }
            // rewrite c_α ∧ c_last with c_last = -sum_{γ < last} c_γ
            let mut reduced: BTreeMap<(usize, usize), i128> = BTreeMap::new();
            for ((a, b), w) in wedge {
                if b != last {
                    *reduced.entry((a, b)).or_insert(0) += w;
                    continue;
                }
                for g in (0..last).filter(|&g| g != a) {
                    let (key, sign) = if a < g { ((a, g), 1) } else { ((g, a), -1) };
                    *reduced.entry(key).or_insert(0) -= sign * w;
                }
            }
            if reduced.values().any(|&w| w != 0) {
                vanishes = false;
                break 'outer;
            }
        }
    }
    let basis = multinet_subspace_rational(net);
    let isotropic = is_isotropic(&Rationals, table, &basis)?;
    if isotropic != vanishes {
        return Err(Error::Internal(format!(
            "∧²φ∘∇ vanishing is {vanishes} but isotropy of im φ* is {isotropic}"
        )));
    }
    Ok(vanishes)
}
