//! Gyrogroups associated to finite groups.
//!
//! For a finite group `(G, ·)` this crate builds the operation
//! `a ⊙ b = a²·b·a⁻¹`, checks the gyrogroup axioms on it exhaustively,
//! computes gyrations from the gyrator identity
//! `gyr[a,b](c) = (a⊙b)′ ⊙ (a ⊙ (b ⊙ c))`, and compares group-theoretic
//! criteria (central-by-2-Engel, cubes central, isomorphism and automorphism
//! sets) against brute-force computations on `(G, ⊙)`.
//!
//! ```
//! use gyrogroup::{build_preset, build_gyrogroup, is_gyrocommutative, Preset};
//!
//! let heisenberg = build_preset(&"heisenberg:3".parse::<Preset>().unwrap()).unwrap();
//! let gyro = build_gyrogroup(&heisenberg).unwrap();
//! assert!(!heisenberg.is_abelian());
//! assert!(is_gyrocommutative(&gyro).holds());
//! ```

pub mod catalog;
pub mod error;
pub mod group;
pub mod gyro;
pub mod io;
pub mod iso;
pub mod predicates;
pub mod table;
pub mod theorems;

pub use catalog::{build_preset, direct_product, parse_preset_list, Preset};
pub use error::{Error, Result};
pub use group::{closure_from_permutations, validate_group, Group};
pub use gyro::{
    associated_gyro, build_gyrogroup, check_gyr_formula, gyration, is_gyrocommutative, verify_gyrogroup,
    Axiom, AxiomReport, Gyrogroup,
};
pub use io::{parse_generators, parse_table, parse_table_any, serialize_table, TableFormat};
pub use iso::{
    enumerate_automorphisms, find_isomorphism, is_homomorphism, Fingerprint, Morphism, SearchLimits,
    SearchStats,
};
pub use predicates::{cubes_central, is_2_engel, is_central_by_2_engel, PredicateResult};
pub use table::{ElementId, OpTable, Permutation};
pub use theorems::{screen, ScreenOptions, Subject, TheoremReport, TheoremTag};
