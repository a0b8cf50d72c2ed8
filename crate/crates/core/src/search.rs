//! Exhaustive search for reduced multinets (all weights 1) by backtracking.
//!
//! With unit weights a cross flat must split evenly across all `k` blocks,
//! so a flat whose multiplicity is not divisible by `k` lies in one block.
//! Those flats are merged up front; the remaining groups are assigned to
//! blocks in order of least member, opening new blocks one at a time so
//! each partition is produced once.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::flats::FlatTable;
use crate::multinet::{verify, Multinet};
use crate::util::UnionFind;

pub const DEFAULT_GUARD: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_results: Option<usize>,
    /// Largest arrangement searched.
    pub guard: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_results: None, guard: DEFAULT_GUARD }
    }
}

struct State<'a> {
    k: usize,
    groups: Vec<Vec<usize>>,
    /// Multiplicities of the flats that may split across blocks.
    flats: Vec<usize>,
    /// For each group, `(flat slot, members of the group in that flat)`.
    touches: Vec<Vec<(usize, usize)>>,
    counts: Vec<Vec<usize>>,
    assignment: Vec<usize>,
    used: usize,
    out: Vec<Vec<usize>>,
    limit: usize,
    table: &'a FlatTable,
}

impl State<'_> {
    fn feasible(&self, slot: usize) -> bool {
        let share = self.flats[slot] / self.k;
        let counts = &self.counts[slot];
        let touched = counts.iter().filter(|&&c| c > 0).count();
        touched < 2 || counts.iter().all(|&c| c <= share)
    }

    fn recurse(&mut self, g: usize) {
        if self.out.len() >= self.limit {
            return;
        }
        if g == self.groups.len() {
            if self.used == self.k {
                self.out.push(self.assignment.clone());
            }
            return;
        }
        // every unused block still needs a group
        if self.groups.len() - g < self.k - self.used {
            return;
        }
        let top = if self.used < self.k { self.used + 1 } else { self.k };
        for b in 0..top {
            let opened = b == self.used;
            self.assignment[g] = b;
            if opened {
                self.used += 1;
            }
            let mut ok = true;
            for &(slot, c) in &self.touches[g] {
                self.counts[slot][b] += c;
            }
            for &(slot, _) in &self.touches[g] {
                ok &= self.feasible(slot);
            }
            if ok {
                self.recurse(g + 1);
            }
            for &(slot, c) in &self.touches[g] {
                self.counts[slot][b] -= c;
            }
            if opened {
                self.used -= 1;
            }
        }
    }
}

/// All reduced `k`-multinets up to relabeling of blocks, each with blocks
/// ordered by least member.
pub fn search_nets(arr: &Arrangement, table: &FlatTable, k: usize, opts: SearchOptions) -> Result<Vec<Multinet>> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("multinets need k >= 3, got {k}")));
    }
    let n = arr.len();
    if n > opts.guard {
        return Err(Error::SearchGuard { n, guard: opts.guard });
    }
    let mut uf = UnionFind::new(n);
    for flat in table.flats() {
        if flat.multiplicity() % k != 0 {
            for &h in &flat.members()[1..] {
                uf.union(flat.members()[0], h);
            }
        }
    }
    let groups = uf.classes();
    if groups.len() < k {
        return Ok(Vec::new());
    }
    let mut group_of = vec![0; n];
    for (g, members) in groups.iter().enumerate() {
        for &h in members {
            group_of[h] = g;
        }
    }
    let mut flats = Vec::new();
    let mut touches = vec![Vec::new(); groups.len()];
    for flat in table.flats().iter().filter(|f| f.multiplicity() % k == 0) {
        let slot = flats.len();
        let mut per_group: std::collections::BTreeMap<usize, usize> = Default::default();
        for &h in flat.members() {
            *per_group.entry(group_of[h]).or_insert(0) += 1;
        }
        if per_group.len() < 2 {
            continue;
        }
        for (&g, &c) in &per_group {
            touches[g].push((slot, c));
        }
        flats.push(flat.multiplicity());
    }
    let nflats = flats.len();
    let mut state = State {
        k,
        assignment: vec![0; groups.len()],
        groups,
        flats,
        touches,
        counts: vec![vec![0; k]; nflats],
        used: 0,
        out: Vec::new(),
        limit: opts.max_results.unwrap_or(usize::MAX),
        table,
    };
    state.recurse(0);
    let mut nets = Vec::new();
    for assignment in std::mem::take(&mut state.out) {
        let mut blocks = vec![Vec::new(); k];
        for (g, &b) in assignment.iter().enumerate() {
            blocks[b].extend_from_slice(&state.groups[g]);
        }
        let net = Multinet::unweighted(n, blocks)?.canonical();
        let report = verify(arr, state.table, &net)?;
        if !report.valid || !report.reduced {
            return Err(Error::Internal("search produced a partition failing verification".into()));
        }
        nets.push(net);
    }
    Ok(nets)
}
