//! JSON encoding of arrangements. Each normal coordinate is written as its
//! integer power-basis coefficients in `Z[zeta_m]`; normals with rational
//! coefficients are scaled to clear denominators first.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Hyperplane, Metadata};
use crate::cyclo::CyclotomicField;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneJson {
    pub label: String,
    pub normal: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementJson {
    pub cyclotomic_order: u32,
    pub ambient_dim: usize,
    pub hyperplanes: Vec<HyperplaneJson>,
    /// Informational only; never makes a loaded arrangement a reflection arrangement.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
}

pub fn to_json(arr: &Arrangement) -> Result<ArrangementJson> {
    let hyperplanes = arr
        .hyperplanes()
        .iter()
        .map(|h| {
            let lcm = h.normal.iter().fold(BigInt::from(1), |acc, c| num_integer::lcm(acc, c.denominator_lcm()));
            let scale = BigRational::from_integer(lcm);
            let normal = h
                .normal
                .iter()
                .map(|c| {
                    c.scale(&scale).to_int_coeffs().ok_or_else(|| {
                        Error::Unsupported(format!("{}: coefficient does not fit in 64 bits", h.label))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(HyperplaneJson { label: h.label.clone(), normal })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ArrangementJson {
        cyclotomic_order: arr.cyclotomic_order(),
        ambient_dim: arr.ambient_dim(),
        hyperplanes,
        family: arr.metadata.family.clone(),
    })
}

pub fn from_json(json: &ArrangementJson) -> Result<Arrangement> {
    let field = CyclotomicField::new(json.cyclotomic_order)?;
    let hyperplanes = json
        .hyperplanes
        .iter()
        .map(|h| {
            let normal = h
                .normal
                .iter()
                .map(|c| field.from_int_coeffs(c))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Parse(format!("{}: {e}", h.label)))?;
            Ok(Hyperplane { label: h.label.clone(), normal })
        })
        .collect::<Result<Vec<_>>>()?;
    let arr = Arrangement::new(field, json.ambient_dim, hyperplanes)?;
    Ok(arr.with_metadata(Metadata { family: json.family.clone(), reflection: false }))
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let json: ArrangementJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    from_json(&json)
}

pub fn arrangement_to_string(arr: &Arrangement) -> Result<String> {
    serde_json::to_string_pretty(&to_json(arr)?).map_err(|e| Error::Internal(e.to_string()))
}

pub fn read_arrangement(path: &Path) -> Result<Arrangement> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_arrangement(&text)
}

pub fn write_arrangement(path: &Path, arr: &Arrangement) -> Result<()> {
    std::fs::write(path, arrangement_to_string(arr)? + "\n")
        .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))
}
