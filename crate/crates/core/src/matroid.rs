//! Connected components of the matroid of normals, i.e. the factors of the
//! finest product decomposition of an arrangement.

use crate::arrangement::Arrangement;
use crate::linalg::CycMatrix;
use crate::util::UnionFind;

fn rank_of(arr: &Arrangement, idx: &[usize]) -> usize {
    if idx.is_empty() {
        return 0;
    }
    let rows = idx.iter().map(|&i| arr.hyperplanes()[i].normal.clone()).collect();
    CycMatrix::new(arr.field().clone(), arr.ambient_dim(), rows).expect("validated").rank()
}

/// Greedy basis: scan hyperplanes in order, keeping those that raise the rank.
pub fn greedy_basis(arr: &Arrangement) -> Vec<usize> {
    let mut basis = Vec::new();
    for i in 0..arr.len() {
        basis.push(i);
        if rank_of(arr, &basis) < basis.len() {
            basis.pop();
        }
    }
    basis
}

/// The fundamental circuit of a non-basis element `f`: `f` together with every
/// basis element `b` such that `B - b + f` is again a basis.
pub fn fundamental_circuit(arr: &Arrangement, basis: &[usize], f: usize) -> Vec<usize> {
    let r = basis.len();
    let mut circuit: Vec<usize> = basis
        .iter()
        .enumerate()
        .filter(|&(k, _)| {
            let mut swapped = basis.to_vec();
            swapped[k] = f;
            rank_of(arr, &swapped) == r
        })
        .map(|(_, &b)| b)
        .collect();
    circuit.push(f);
    circuit.sort_unstable();
    circuit
}

/// Connected components of the underlying matroid, as sorted index sets
/// ordered by least element. A single component means irreducible.
pub fn decompose(arr: &Arrangement) -> Vec<Vec<usize>> {
    let basis = greedy_basis(arr);
    let mut uf = UnionFind::new(arr.len());
    let in_basis: std::collections::HashSet<usize> = basis.iter().copied().collect();
    for f in (0..arr.len()).filter(|i| !in_basis.contains(i)) {
        let c = fundamental_circuit(arr, &basis, f);
        for w in c.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    uf.classes()
}

pub fn is_irreducible(arr: &Arrangement) -> bool {
    decompose(arr).len() == 1
}
