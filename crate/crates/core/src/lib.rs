//! Enumeration of superspecial genus-3 curves over `F_{p^2}` by walking the
//! (2,2,2)-isogeny graph of superspecial principally polarized abelian
//! threefolds in squared-theta coordinates.
//!
//! The pipeline is: [`seeds`] builds products of supersingular elliptic
//! null-points, [`symplectic`] and [`theta`] move along isogenies,
//! [`classify`] reads off the variety type, [`reconstruct`] recovers curve
//! equations, [`invariants`] fingerprints isomorphism classes, and
//! [`enumerate`] drives the breadth-first walk. [`verify`] is an
//! independent Cartier–Manin oracle.

pub mod classify;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod reconstruct;
pub mod seeds;
pub mod symplectic;
pub mod theta;
pub mod verify;

pub use classify::{kind_of, vanishing_count, VarietyKind, VarietyType};
pub use enumerate::{
    enumerate_dim2, enumerate_dim3, find_hyperelliptic, EnumConfig, EnumerationResult,
};
pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField};
pub use invariants::{fingerprint, InvariantFingerprint, WeightedTuple};
pub use reconstruct::{CurveModel, HyperellipticModel, QuarticModel};
pub use symplectic::{coset_reps, CosetTable, SymplecticRep};
pub use theta::{isogeny_step, SignPolicy, SquaredThetaNullPoint};
pub use verify::{cartier_manin_hyperelliptic, hasse_witt_quartic, CartierManinMatrix};
