//! Compiling single-qubit gates into Fibonacci anyon braids using the
//! binary icosahedral group, its {3,3,5} polytope and a braid-labelled mesh
//! of S3.

pub mod anyon;
pub mod atlas;
pub mod braid;
pub mod cli;
pub mod error;
pub mod group;
pub mod hyperdome;
pub mod index;
pub mod io;
pub mod navigator;
pub mod pointset;
pub mod quat;
pub mod symmetry;
pub mod template;

pub use braid::{BraidLetter, BraidWord, FibGenerators, PackedWord, PHI, TAU};
pub use error::{Error, Result};
pub use group::{FiniteQuatGroup, GroupName};
pub use quat::{distance, hopf_map, HopfPoint, Quaternion, Su2Matrix, UnitQuaternion};
pub use symmetry::{Orthoscheme, Polytope335, SymmetryGroup, SymmetryOp};
