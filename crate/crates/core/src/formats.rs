//! JSON file formats.
//!
//! * set: `{"n": 2, "elements": [[0,0],[1,0],[-1,0]]}`
//! * witness: `{"n": 2, "k": 3, "cells": [{"cell": [0,0], "shift": [0,0]}, …]}`
//!   with every cell listed exactly once
//!
//! [`SymmetricSet`] and [`DiscreteNSet`] (de)serialize through these shapes.
//! Deserializing a `SymmetricSet` requires a symmetric input containing the
//! origin; [`SetFile::into_set`] offers the lenient path.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, SymmetricSet};
use crate::nset::DiscreteNSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetFile {
    pub n: usize,
    pub elements: Vec<LatticeVector>,
}

impl SetFile {
    /// Converts to a set. With `strict`, the elements must already be
    /// symmetric and contain the origin; otherwise they are closed under
    /// negation and the origin is added. The flag in the result tells whether
    /// anything had to be added.
    pub fn into_set(self, strict: bool) -> Result<(SymmetricSet, bool)> {
        let strict_set = SymmetricSet::strict(self.n, &self.elements);
        match strict_set {
            Ok(set) => Ok((set, false)),
            Err(Error::MissingZero | Error::NotSymmetric(_)) if !strict => {
                Ok((SymmetricSet::normalize(self.n, &self.elements)?, true))
            }
            Err(e) => Err(e),
        }
    }
}

impl From<SymmetricSet> for SetFile {
    fn from(set: SymmetricSet) -> Self {
        Self {
            n: set.n(),
            elements: set.iter().cloned().collect(),
        }
    }
}

impl TryFrom<SetFile> for SymmetricSet {
    type Error = Error;

    fn try_from(file: SetFile) -> Result<Self> {
        file.into_set(true).map(|(set, _)| set)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessCell {
    pub cell: Vec<usize>,
    pub shift: LatticeVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub n: usize,
    pub k: usize,
    pub cells: Vec<WitnessCell>,
}

impl From<DiscreteNSet> for WitnessFile {
    fn from(set: DiscreteNSet) -> Self {
        let cells = (0..set.cell_count())
            .map(|i| WitnessCell {
                cell: set.cell_coords(i),
                shift: set.shift(i),
            })
            .collect();
        Self {
            n: set.n(),
            k: set.k(),
            cells,
        }
    }
}

impl TryFrom<WitnessFile> for DiscreteNSet {
    type Error = Error;

    fn try_from(file: WitnessFile) -> Result<Self> {
        // validates n and k before any cell is indexed
        let template = DiscreteNSet::zero(file.n, file.k)?;
        let mut shifts: BTreeMap<usize, LatticeVector> = BTreeMap::new();
        for entry in file.cells {
            let idx = template.cell_index(&entry.cell)?;
            if entry.shift.dim() != file.n {
                return Err(Error::DimensionMismatch {
                    expected: file.n,
                    found: entry.shift.dim(),
                });
            }
            if shifts.insert(idx, entry.shift).is_some() {
                return Err(Error::InvalidWitness(format!("cell {:?} listed twice", entry.cell)));
            }
        }
        if let Some(missing) = (0..template.cell_count()).find(|i| !shifts.contains_key(i)) {
            return Err(Error::InvalidWitness(format!(
                "cell {:?} is missing",
                template.cell_coords(missing)
            )));
        }
        DiscreteNSet::new(file.n, file.k, shifts.into_values().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_round_trip() {
        let json = r#"{"n":1,"elements":[[-2],[0],[2]]}"#;
        let set: SymmetricSet = serde_json::from_str(json).unwrap();
        assert_eq!(serde_json::to_string(&set).unwrap(), json);
        let err = serde_json::from_str::<SymmetricSet>(r#"{"n":1,"elements":[[0],[2]]}"#).unwrap_err();
        assert!(err.to_string().contains("not symmetric"), "{err}");
    }

    #[test]
    fn lenient_sets() {
        let file = SetFile {
            n: 1,
            elements: vec![LatticeVector::from([2])],
        };
        let (set, changed) = file.clone().into_set(false).unwrap();
        assert!(changed);
        assert_eq!(set.len(), 3);
        assert_eq!(file.into_set(true).unwrap_err(), Error::MissingZero);
    }

    #[test]
    fn witness_round_trip() {
        let set = DiscreteNSet::zero(2, 3)
            .unwrap()
            .translate_cell(&[1, 2], &LatticeVector::from([1, -1]))
            .unwrap();
        let json = serde_json::to_string(&set).unwrap();
        assert!(json.starts_with(r#"{"n":2,"k":3,"cells":[{"cell":[0,0],"shift":[0,0]}"#));
        let back: DiscreteNSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, set);
    }

    #[test]
    fn witness_errors() {
        let missing = r#"{"n":1,"k":3,"cells":[{"cell":[0],"shift":[0]},{"cell":[1],"shift":[0]}]}"#;
        let err = serde_json::from_str::<DiscreteNSet>(missing).unwrap_err();
        assert!(err.to_string().contains("cell [2] is missing"), "{err}");
        let dup = r#"{"n":1,"k":3,"cells":[{"cell":[0],"shift":[0]},{"cell":[0],"shift":[1]},{"cell":[1],"shift":[0]}]}"#;
        assert!(serde_json::from_str::<DiscreteNSet>(dup).unwrap_err().to_string().contains("twice"));
        let outside = r#"{"n":1,"k":3,"cells":[{"cell":[3],"shift":[0]}]}"#;
        assert!(serde_json::from_str::<DiscreteNSet>(outside).is_err());
    }
}
