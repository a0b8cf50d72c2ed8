//! Central hyperplane arrangements over `Q(zeta_m)`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::cyclo::{CycElem, CyclotomicField};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::CycMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    pub label: String,
    /// Coefficients of the defining linear form.
    pub normal: Vec<CycElem>,
}

/// Provenance carried alongside an arrangement.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Metadata {
    /// Catalog family string such as `monomial:3:3`, if built from the catalog.
    pub family: Option<String>,
    /// Set only by catalog builders.
    pub reflection: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    ZeroNormal { label: String },
    WrongLength { label: String, len: usize, expected: usize },
    OrderMismatch { label: String, order: u32, expected: u32 },
    DuplicateHyperplane { first: String, second: String },
    DuplicateLabel { label: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "arrangement has no hyperplanes"),
            Violation::ZeroNormal { label } => write!(f, "{label}: zero normal"),
            Violation::WrongLength { label, len, expected } => {
                write!(f, "{label}: normal has length {len}, expected {expected}")
            }
            Violation::OrderMismatch { label, order, expected } => {
                write!(f, "{label}: cyclotomic order {order}, expected {expected}")
            }
            Violation::DuplicateHyperplane { first, second } => {
                write!(f, "{first} and {second} define the same hyperplane")
            }
            Violation::DuplicateLabel { label } => write!(f, "label {label} used twice"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Arrangement {
    ambient_dim: usize,
    field: CyclotomicField,
    hyperplanes: Vec<Hyperplane>,
    pub metadata: Metadata,
}

impl Arrangement {
    /// Builds and validates an arrangement.
    pub fn new(field: CyclotomicField, ambient_dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        let arr = Self::new_unchecked(field, ambient_dim, hyperplanes);
        arr.validate()
            .map_err(|vs| Error::InvalidArrangement(vs.iter().map(ToString::to_string).collect()))?;
        Ok(arr)
    }

    /// Builds an arrangement without running [`Arrangement::validate`].
    pub fn new_unchecked(field: CyclotomicField, ambient_dim: usize, hyperplanes: Vec<Hyperplane>) -> Self {
        Arrangement { ambient_dim, field, hyperplanes, metadata: Metadata::default() }
    }

    pub fn with_metadata(mut self, metadata: Metadata) -> Self {
        self.metadata = metadata;
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cyclotomic_order(&self) -> u32 {
        self.field.order()
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn is_reflection(&self) -> bool {
        self.metadata.reflection
    }

    pub fn labels(&self) -> Vec<&str> {
        self.hyperplanes.iter().map(|h| h.label.as_str()).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.hyperplanes.iter().position(|h| h.label == label)
    }

    pub fn label_index(&self) -> HashMap<&str, usize> {
        self.hyperplanes.iter().enumerate().map(|(i, h)| (h.label.as_str(), i)).collect()
    }

    /// Normal of hyperplane `i` scaled so its first nonzero coordinate is 1.
    pub(crate) fn normalized_normal(&self, i: usize) -> Vec<CycElem> {
        normalize(&self.field, &self.hyperplanes[i].normal)
    }

    /// Checks every structural invariant, reporting all violations found.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        if self.hyperplanes.is_empty() {
            out.push(Violation::Empty);
        }
        let mut labels = HashSet::new();
        let mut seen: HashMap<Vec<CycElem>, &str> = HashMap::new();
        for h in &self.hyperplanes {
            if !labels.insert(h.label.as_str()) {
                out.push(Violation::DuplicateLabel { label: h.label.clone() });
            }
            if h.normal.len() != self.ambient_dim {
                out.push(Violation::WrongLength {
                    label: h.label.clone(),
                    len: h.normal.len(),
                    expected: self.ambient_dim,
                });
                continue;
            }
            if let Some(e) = h.normal.iter().find(|e| e.order() != self.field.order()) {
                out.push(Violation::OrderMismatch {
                    label: h.label.clone(),
                    order: e.order(),
                    expected: self.field.order(),
                });
                continue;
            }
            if h.normal.iter().all(CycElem::is_zero) {
                out.push(Violation::ZeroNormal { label: h.label.clone() });
                continue;
            }
            let key = normalize(&self.field, &h.normal);
            if let Some(first) = seen.insert(key, &h.label) {
                out.push(Violation::DuplicateHyperplane { first: first.to_string(), second: h.label.clone() });
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub fn normal_matrix(&self) -> CycMatrix {
        let rows = self.hyperplanes.iter().map(|h| h.normal.clone()).collect();
        CycMatrix::new(self.field.clone(), self.ambient_dim, rows).expect("validated arrangement")
    }

    /// Rank of the span of all normals.
    pub fn rank(&self) -> usize {
        self.normal_matrix().rank()
    }

    /// The subarrangement on the given indices, keeping labels and order.
    pub fn subarrangement(&self, indices: &[usize]) -> Arrangement {
        Arrangement {
            ambient_dim: self.ambient_dim,
            field: self.field.clone(),
            hyperplanes: indices.iter().map(|&i| self.hyperplanes[i].clone()).collect(),
            metadata: Metadata::default(),
        }
    }

    /// Same hyperplanes in a different order; `perm[k]` is the old index of
    /// the new `k`-th hyperplane.
    pub fn permuted(&self, perm: &[usize]) -> Arrangement {
        let mut out = self.subarrangement(perm);
        out.metadata = self.metadata.clone();
        out
    }
}

/// Free-function form of [`Arrangement::validate`].
pub fn validate(arr: &Arrangement) -> std::result::Result<(), Vec<Violation>> {
    arr.validate()
}

/// Free-function form of [`Arrangement::rank`].
pub fn arrangement_rank(arr: &Arrangement) -> usize {
    arr.rank()
}

pub(crate) fn normalize(field: &CyclotomicField, v: &[CycElem]) -> Vec<CycElem> {
    match v.iter().find(|x| !x.is_zero()) {
        None => v.to_vec(),
        Some(lead) => {
            let inv = field.inv(lead).expect("nonzero");
            v.iter().map(|x| field.mul(x, &inv)).collect()
        }
    }
}
