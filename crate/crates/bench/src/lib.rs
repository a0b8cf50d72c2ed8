//! Shared inputs for the benchmarks.

use refarr_core::{build, compute_flat_table, Arrangement, FamilySpec, FlatTable};

/// Catalog instances of increasing size used across benchmarks.
pub const SPECS: [FamilySpec; 4] = [
    FamilySpec::Hessian,
    FamilySpec::Monomial { m: 5, l: 4 },
    FamilySpec::G32,
    FamilySpec::G31,
];

pub fn prepared(spec: FamilySpec) -> (Arrangement, FlatTable) {
    let arr = build(&spec).expect("catalog spec");
    let table = compute_flat_table(&arr);
    (arr, table)
}
