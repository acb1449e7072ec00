//! Achievable sets in `Z^n`.
//!
//! A finite symmetric set `A ⊂ Z^n` is *achievable* when `A = (K - K) ∩ Z^n`
//! for some compact `K ⊂ R^n` with `K + Z^n = R^n`. This crate works with the
//! discretized form of the problem: exactly `k`-discrete N-sets, their edge
//! assignments on the torus grid `G_{n,k}`, structural obstructions derived
//! from the characteristic graph of `A`, an explicit planar construction, and
//! an exhaustive witness search.

pub mod construct;
pub mod error;
pub mod formats;
pub mod ideal;
pub mod lattice;
pub mod nset;
pub mod search;
pub mod structure;
pub mod svg;
pub mod torus;

pub use construct::{build_from_generators, build_general, GeneralConstruction, GeneratorSpec, Sign};
pub use error::{Error, Result};
pub use formats::{SetFile, WitnessFile};
pub use ideal::{achieved_ideal, AchievedIdeal, IdealClass};
pub use lattice::{unimodular_to_basis, LatticeVector, Matrix2, SmithForm, Subgroup, SymmetricSet};
pub use nset::{resolution_cap, DiscreteNSet};
pub use search::{catalog, decide, find_witness, Catalog, CatalogEntry, Mode, SearchConfig, Verdict};
pub use structure::{
    characteristic_graph, components, necessary_report, noncyclic_search, obstruction_search, validate_decomposition,
    CharacteristicGraph, Decomposition, DeltaCondition, NecessaryReport, NecessaryVerdict, Piece,
};
pub use svg::{render_svg, SvgOptions};
pub use torus::{Classification, EdgeAssignment, GridPath, SimpleCycle, TorusGraph};
