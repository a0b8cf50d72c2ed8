//! Mod-p cocycle spaces `Z_p(A)`, Aomoto-Betti numbers and the vanishing
//! criteria built on the multiplicities of rank-2 flats.
//!
//! `eta` lies in `Z_p(A)` iff for every flat `X`: the values on `A_X` sum to
//! zero when `p` divides `|A_X|`, and are all equal otherwise.

use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::flats::FlatTable;
use crate::linalg::{rref, PrimeFieldMatrix};
use crate::matroid::decompose;
use crate::util::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleSpace {
    pub prime: u64,
    /// Basis vectors indexed by hyperplane, entries in `0..p`.
    pub basis: Vec<Vec<u64>>,
}

impl CocycleSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether `eta` lies in the span of the basis.
    pub fn contains(&self, eta: &[u64]) -> bool {
        let f = PrimeField::new(self.prime).expect("validated");
        let n = eta.len();
        let mut rows = self.basis.clone();
        let r = rref(&f, &mut rows, n).len();
        rows.push(eta.to_vec());
        rref(&f, &mut rows, n).len() == r
    }
}

/// Stacks the per-flat equations into one matrix over `F_p`.
pub fn cocycle_constraints(table: &FlatTable, p: u64) -> Result<PrimeFieldMatrix> {
    let f = PrimeField::new(p)?;
    let n = table.num_hyperplanes();
    let mut rows = Vec::new();
    for flat in table.flats() {
        let members = flat.members();
        if (flat.multiplicity() as u64).is_multiple_of(p) {
            let mut row = vec![0; n];
            for &h in members {
                row[h] = 1;
            }
            rows.push(row);
        } else {
            for &h in &members[1..] {
                let mut row = vec![0; n];
                row[members[0]] = 1;
                row[h] = f.neg(&1);
                rows.push(row);
            }
        }
    }
    PrimeFieldMatrix::new(p, n, rows)
}

pub fn cocycle_space(table: &FlatTable, p: u64) -> Result<CocycleSpace> {
    let m = cocycle_constraints(table, p)?;
    Ok(CocycleSpace { prime: p, basis: m.nullspace() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiNumber {
    pub prime: u64,
    pub dim_zp: usize,
    /// `dim Z_p(A) - 1`.
    pub value: usize,
    /// A non-constant cocycle, present iff `value > 0`.
    pub witness: Option<Vec<u64>>,
}

pub fn beta_p(table: &FlatTable, p: u64) -> Result<BettiNumber> {
    let space = cocycle_space(table, p)?;
    let n = table.num_hyperplanes();
    let dim = space.dim();
    if dim == 0 {
        return Err(Error::Internal("constant cocycle missing from Z_p".into()));
    }
    let f = PrimeField::new(p)?;
    let mut rows = space.basis.clone();
    rref(&f, &mut rows, n);
    let witness = rows
        .into_iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .find(|r| r.iter().any(|&x| x != r[0]));
    if (dim > 1) != witness.is_some() {
        return Err(Error::Internal("witness cocycle inconsistent with dim Z_p".into()));
    }
    Ok(BettiNumber { prime: p, dim_zp: dim, value: dim - 1, witness })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GammaKind {
    /// `Γ_k`: edge when `|A_X|` is not divisible by `k` (for `k = 2`: odd or equal to 2).
    Modular,
    /// `Γ_(k)`: edge when `|A_X| = k`.
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaGraph {
    pub kind: GammaKind,
    pub k: usize,
    pub edges: Vec<(usize, usize)>,
    pub components: Vec<Vec<usize>>,
}

impl GammaGraph {
    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }
}

fn gamma_edge(kind: GammaKind, k: usize, multiplicity: usize) -> bool {
    match kind {
        GammaKind::Exact => multiplicity == k,
        GammaKind::Modular if k == 2 => multiplicity % 2 == 1 || multiplicity == 2,
        GammaKind::Modular => !multiplicity.is_multiple_of(k),
    }
}

pub fn gamma_graph(table: &FlatTable, kind: GammaKind, k: usize) -> Result<GammaGraph> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("gamma graph needs k >= 2, got {k}")));
    }
    let n = table.num_hyperplanes();
    let mut uf = UnionFind::new(n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if gamma_edge(kind, k, table.flat_of_pair(i, j).multiplicity()) {
                edges.push((i, j));
                uf.union(i, j);
            }
        }
    }
    Ok(GammaGraph { kind, k, edges, components: uf.classes() })
}

/// `1 + sum (|A_X| - 1)` over flats `X` in `H` with `|A_X|` prime to `p`.
pub fn m_p_of(table: &FlatTable, h: usize, p: u64) -> usize {
    1 + table
        .flats_through(h)
        .iter()
        .map(|&x| table.flats()[x].multiplicity())
        .filter(|&mult| !(mult as u64).is_multiple_of(p))
        .map(|mult| mult - 1)
        .sum::<usize>()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// `|A|` not divisible by `p`.
    Yuzvinsky,
    /// `A` decomposes as a product.
    Product,
    /// `Γ_p` connected.
    GammaPConnected,
    /// `Γ_(2)` connected.
    GammaExact2Connected,
    /// No flat multiplicity divisible by `p`.
    NoFlatDivisibleByP,
    /// `m_p(H) > |A|/2` for every `H`.
    MpOverHalf,
    /// `m_p(H) > |A|/3` for every `H` and no flat of multiplicity `p r`, `r > 1`.
    MpOverThird,
}

impl Criterion {
    pub const ALL: [Criterion; 7] = [
        Criterion::Yuzvinsky,
        Criterion::Product,
        Criterion::GammaPConnected,
        Criterion::GammaExact2Connected,
        Criterion::NoFlatDivisibleByP,
        Criterion::MpOverHalf,
        Criterion::MpOverThird,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Criterion::Yuzvinsky => "yuzvinsky",
            Criterion::Product => "product",
            Criterion::GammaPConnected => "gamma_p_connected",
            Criterion::GammaExact2Connected => "gamma_(2)_connected",
            Criterion::NoFlatDivisibleByP => "no_flat_divisible_by_p",
            Criterion::MpOverHalf => "m_p_over_half",
            Criterion::MpOverThird => "m_p_over_third",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub criterion: Criterion,
    pub fires: bool,
    pub conclusion: String,
}

/// Evaluates one criterion. `components` is the product decomposition.
pub fn evaluate_criterion(
    table: &FlatTable,
    components: usize,
    p: u64,
    criterion: Criterion,
) -> Result<bool> {
    let n = table.num_hyperplanes();
    let mults = || table.flats().iter().map(|f| f.multiplicity() as u64);
    Ok(match criterion {
        Criterion::Yuzvinsky => !(n as u64).is_multiple_of(p),
        Criterion::Product => components >= 2,
        Criterion::GammaPConnected => gamma_graph(table, GammaKind::Modular, p as usize)?.is_connected(),
        Criterion::GammaExact2Connected => gamma_graph(table, GammaKind::Exact, 2)?.is_connected(),
        Criterion::NoFlatDivisibleByP => mults().all(|m| m % p != 0),
        // m_p(H) > n/2  <=>  2 m_p(H) > n
        Criterion::MpOverHalf => (0..n).all(|h| 2 * m_p_of(table, h, p) > n),
        Criterion::MpOverThird => {
            (0..n).all(|h| 3 * m_p_of(table, h, p) > n) && mults().all(|m| m % p != 0 || m == p)
        }
    })
}

/// Runs every vanishing criterion and cross-checks each one that fires
/// against the computed `beta_p`.
pub fn vanishing_report(arr: &Arrangement, table: &FlatTable, p: u64) -> Result<Vec<CriterionResult>> {
    PrimeField::new(p)?;
    let components = decompose(arr).len();
    let beta = beta_p(table, p)?;
    let mut out = Vec::new();
    for c in Criterion::ALL {
        let fires = evaluate_criterion(table, components, p, c)?;
        if fires && beta.value != 0 {
            return Err(Error::Internal(format!(
                "criterion {} fired but beta_{p} = {}",
                c.name(),
                beta.value
            )));
        }
        let conclusion = if fires { format!("beta_{p} = 0") } else { "inconclusive".to_string() };
        out.push(CriterionResult { criterion: c, fires, conclusion });
    }
    Ok(out)
}

/// Machine-readable Aomoto-Betti report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiReport {
    pub prime: u64,
    #[serde(rename = "dim_Zp")]
    pub dim_zp: usize,
    pub beta: usize,
    pub witness: Option<std::collections::BTreeMap<String, u64>>,
    pub criteria: Vec<CriterionResult>,
    pub beta_via_aomoto: usize,
}

pub fn betti_report(arr: &Arrangement, table: &FlatTable, p: u64) -> Result<BettiReport> {
    let beta = beta_p(table, p)?;
    let criteria = vanishing_report(arr, table, p)?;
    let via_aomoto = crate::os::aomoto_h1(table, p)?;
    if via_aomoto != beta.value {
        return Err(Error::Internal(format!(
            "beta_{p} = {} from cocycle equations but {via_aomoto} from the Aomoto complex",
            beta.value
        )));
    }
    let witness = beta.witness.as_ref().map(|w| {
        arr.hyperplanes().iter().zip(w).map(|(h, &v)| (h.label.clone(), v)).collect()
    });
    Ok(BettiReport {
        prime: p,
        dim_zp: beta.dim_zp,
        beta: beta.value,
        witness,
        criteria,
        beta_via_aomoto: via_aomoto,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::tests::rational;
    use crate::catalog::{build, FamilySpec};
    use crate::flats::compute_flat_table;

    fn table(spec: FamilySpec) -> (Arrangement, FlatTable) {
        let arr = build(&spec).unwrap();
        let t = compute_flat_table(&arr);
        (arr, t)
    }

    fn pencil(n: i64) -> Arrangement {
        let rows: Vec<Vec<i64>> = (0..n).map(|k| vec![1, k]).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        rational(&refs)
    }

    #[test]
    fn a333_mod_3() {
        let (_, t) = table(FamilySpec::Monomial { m: 3, l: 3 });
        let z = cocycle_space(&t, 3).unwrap();
        assert_eq!(z.dim(), 3);
        assert!(z.contains(&[1; 9]));
        let b = beta_p(&t, 3).unwrap();
        assert_eq!(b.value, 2);
        let w = b.witness.unwrap();
        assert!(w.iter().any(|&x| x != w[0]));
        assert!(z.contains(&w));
    }

    #[test]
    fn pencils_and_generic() {
        for p in [2u64, 3, 5, 7] {
            let t = compute_flat_table(&pencil(p as i64));
            assert_eq!(cocycle_space(&t, p).unwrap().dim(), p as usize - 1);
        }
        let generic = compute_flat_table(&rational(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        for p in [2, 3, 5] {
            assert_eq!(cocycle_space(&generic, p).unwrap().dim(), 1);
        }
        assert_eq!(cocycle_space(&generic, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn classification_samples() {
        let cases = [
            (FamilySpec::FullMonomial { m: 4, l: 3 }, 3, 1),
            (FamilySpec::Monomial { m: 2, l: 4 }, 3, 1),
            (FamilySpec::Monomial { m: 6, l: 3 }, 3, 2),
            (FamilySpec::Hessian, 2, 2),
            (FamilySpec::Hessian, 3, 0),
        ];
        for (spec, p, expected) in cases {
            let (_, t) = table(spec);
            assert_eq!(beta_p(&t, p).unwrap().value, expected, "{spec} p = {p}");
        }
    }

    #[test]
    fn gamma_graphs() {
        let (_, t) = table(FamilySpec::FullMonomial { m: 2, l: 4 });
        assert!(gamma_graph(&t, GammaKind::Exact, 2).unwrap().is_connected());
        let (_, t) = table(FamilySpec::FullMonomial { m: 4, l: 3 });
        assert!(!gamma_graph(&t, GammaKind::Modular, 3).unwrap().is_connected());
        let t = compute_flat_table(&pencil(5));
        let g = gamma_graph(&t, GammaKind::Modular, 5).unwrap();
        assert!(g.edges.is_empty());
        assert!(!g.is_connected());
        assert!(matches!(gamma_graph(&t, GammaKind::Modular, 1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn gamma_2_special_rule() {
        // multiplicity 2 is even but still an edge of Γ_2; multiplicity 4 is not
        let t = compute_flat_table(&pencil(4));
        assert!(gamma_graph(&t, GammaKind::Modular, 2).unwrap().edges.is_empty());
        let t = compute_flat_table(&pencil(2));
        assert_eq!(gamma_graph(&t, GammaKind::Modular, 2).unwrap().edges, vec![(0, 1)]);
    }

    #[test]
    fn exact_two_is_subgraph_of_every_gamma_p() {
        for spec in [FamilySpec::FullMonomial { m: 3, l: 3 }, FamilySpec::Hessian, FamilySpec::Monomial { m: 4, l: 4 }] {
            let (_, t) = table(spec);
            let sub = gamma_graph(&t, GammaKind::Exact, 2).unwrap();
            for p in [2, 3, 5, 7] {
                let g = gamma_graph(&t, GammaKind::Modular, p).unwrap();
                assert!(sub.edges.iter().all(|e| g.edges.contains(e)), "{spec} p = {p}");
            }
        }
    }

    #[test]
    fn m_p_values() {
        let generic = compute_flat_table(&rational(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        for (p, expected) in [(2, 1), (3, 3), (5, 3)] {
            assert!((0..3).all(|h| m_p_of(&generic, h, p) == expected));
        }
        let (arr, t) = table(FamilySpec::Monomial { m: 3, l: 3 });
        let h = arr.index_of("H12^0").unwrap();
        assert_eq!(m_p_of(&t, h, 3), 1);
        let t = compute_flat_table(&pencil(5));
        assert_eq!(m_p_of(&t, 2, 3), 5);
    }

    #[test]
    fn report_examples() {
        let (arr, t) = table(FamilySpec::FullMonomial { m: 2, l: 3 });
        let r = vanishing_report(&arr, &t, 5).unwrap();
        assert!(r.iter().any(|c| c.criterion == Criterion::Yuzvinsky && c.fires));

        let (arr, t) = table(FamilySpec::G32);
        let r = vanishing_report(&arr, &t, 2).unwrap();
        assert!(r.iter().any(|c| c.criterion == Criterion::GammaExact2Connected && c.fires));

        let (arr, t) = table(FamilySpec::FullMonomial { m: 4, l: 3 });
        let r = vanishing_report(&arr, &t, 3).unwrap();
        assert!(r.iter().all(|c| !c.fires));
    }

    #[test]
    fn betti_report_json_shape() {
        let (arr, t) = table(FamilySpec::Monomial { m: 3, l: 3 });
        let r = betti_report(&arr, &t, 3).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["prime"], 3);
        assert_eq!(v["dim_Zp"], 3);
        assert_eq!(v["beta"], 2);
        assert_eq!(v["beta_via_aomoto"], 2);
        assert!(v["witness"].is_object());
        assert_eq!(v["criteria"].as_array().unwrap().len(), Criterion::ALL.len());
        let r = betti_report(&arr, &t, 2).unwrap();
        assert!(serde_json::to_value(&r).unwrap()["witness"].is_null());
    }

    #[test]
    fn pencil_closed_form() {
        for m in 2..=9u32 {
            let (_, t) = table(FamilySpec::Monomial { m, l: 2 });
            for p in [2u64, 3, 5] {
                let expected = if (m as u64).is_multiple_of(p) { m as usize - 2 } else { 0 };
                assert_eq!(beta_p(&t, p).unwrap().value, expected, "m = {m}, p = {p}");
            }
        }
    }
}
