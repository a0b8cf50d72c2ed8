//! Exact Gaussian elimination over any [`Field`].
//!
//! Pivots are the first nonzero entry in the column, scanning rows top down,
//! so every result is deterministic.

use crate::cyclo::{CycElem, CyclotomicField};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};

/// Row-reduces `rows` in place to reduced row echelon form and returns the
/// pivot columns. Zero rows are moved to the bottom.
pub fn rref<F: Field>(field: &F, rows: &mut [Vec<F::Elem>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut().skip(c) {
            *x = field.mul(x, &inv);
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().unwrap();
        for row in head.iter_mut().chain(tail.iter_mut()) {
            if field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(pivot_row.iter()).skip(c) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> usize {
    let mut work = rows.to_vec();
    rref(field, &mut work, ncols).len()
}

/// A basis of `{v : M v = 0}`, one vector per free column, read off the RREF.
pub fn nullspace<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut work = rows.to_vec();
    let pivots = rref(field, &mut work, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); ncols];
            v[free] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(&work[r][free]);
            }
            v
        })
        .collect()
}

/// Matrix over `Q(zeta_m)`; every entry has the same order.
#[derive(Debug, Clone, PartialEq)]
pub struct CycMatrix {
    field: CyclotomicField,
    cols: usize,
    rows: Vec<Vec<CycElem>>,
}

impl CycMatrix {
    pub fn new(field: CyclotomicField, cols: usize, rows: Vec<Vec<CycElem>>) -> Result<Self> {
        for row in &rows {
            if row.len() != cols {
                return Err(Error::Dimension(format!("row of length {} in {cols}-column matrix", row.len())));
            }
            if let Some(e) = row.iter().find(|e| e.order() != field.order()) {
                return Err(Error::OrderMismatch(field.order(), e.order()));
            }
        }
        Ok(CycMatrix { field, cols, rows })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<CycElem>] {
        &self.rows
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn transpose(&self) -> CycMatrix {
        let rows = (0..self.cols)
            .map(|c| self.rows.iter().map(|r| r[c].clone()).collect())
            .collect();
        CycMatrix { field: self.field.clone(), cols: self.rows.len(), rows }
    }

    /// Exact rank over `Q(zeta_m)`.
    pub fn rank(&self) -> usize {
        rank(&self.field, &self.rows, self.cols)
    }
}

/// Matrix over `F_p` with entries in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    field: PrimeField,
    cols: usize,
    rows: Vec<Vec<u64>>,
}

impl PrimeFieldMatrix {
    pub fn new(p: u64, cols: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        let field = PrimeField::new(p)?;
        for row in &rows {
            if row.len() != cols {
                return Err(Error::Dimension(format!("row of length {} in {cols}-column matrix", row.len())));
            }
        }
        let rows = rows.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect();
        Ok(PrimeFieldMatrix { field, cols, rows })
    }

    pub fn from_signed(p: u64, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.reduce(x)).collect()).collect();
        Self::new(p, cols, rows)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        rank(&self.field, &self.rows, self.cols)
    }

    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        nullspace(&self.field, &self.rows, self.cols)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(0, |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
            .collect()
    }
}

/// Free-function form of [`CycMatrix::rank`].
pub fn rank_cyc(m: &CycMatrix) -> usize {
    m.rank()
}

/// Free-function form of [`PrimeFieldMatrix::nullspace`].
pub fn nullspace_mod_p(m: &PrimeFieldMatrix) -> Vec<Vec<u64>> {
    m.nullspace()
}
