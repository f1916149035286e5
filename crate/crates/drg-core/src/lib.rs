//! Effective resistances and commute times on distance-regular resistor
//! networks, computed exactly from intersection arrays.
//!
//! The main path needs nothing but the array `{b_0..b_{d-1}; c_1..c_d}`:
//! [`resistance::resistance_table`] produces every per-stratum resistance
//! `R^(1) < R^(2) < ... < R^(d)` and the matching commute times as reduced
//! rationals. Three independent routes exist to verify any table:
//!
//! * [`spectral`] rebuilds resistances from the eigenvalues and
//!   multiplicities of the network's tridiagonal projection,
//! * [`oracle`] solves Kirchhoff's equations exactly on explicit graphs,
//! * [`walk`] estimates commute times by seeded random walks.
//!
//! [`families`] generates arrays for the supported named families, and
//! [`orthopoly`] holds the three-term recursions and Stieltjes transform the
//! spectral route is built on.

pub mod families;
pub mod format;
pub mod graph;
pub mod intersection;
pub mod oracle;
pub mod orthopoly;
pub mod rational;
pub mod resistance;
pub mod spectral;
pub mod walk;

pub use families::{
    cycle_closed_form, family_array, list_families, verification_catalog, Family, FamilyError,
    FamilySpec, FamilyTemplate,
};
pub use graph::{build_graph, ExplicitGraph, GraphError, Stratification};
pub use intersection::{ArrayError, IntersectionArray};
pub use oracle::{oracle_resistance, verify_graph, OracleError, VerifyReport};
pub use orthopoly::{JacobiData, OrthopolyError};
pub use rational::Rational;
pub use resistance::{
    commute_time, first_stratum_resistance, resistance_increment, resistance_table,
    ResistanceTable, StratumOutOfRange,
};
pub use spectral::{eigenmatrix, resistance_spectral, SpectralData, SpectralError};
pub use walk::{mc_commute_time, WalkEstimate};
