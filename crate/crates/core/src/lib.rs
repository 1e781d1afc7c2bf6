//! Exactly solvable non-central potentials through supersymmetric quantum
//! mechanics.
//!
//! The crate builds superpotentials for shape-invariant families, runs the
//! perturbative decomposition `W + ΔW`, maps the polar equation onto a
//! one-dimensional Schrödinger problem with `θ = 2 arctan(e^z)`, and composes
//! full three-dimensional spectra through an effective angular momentum.
//! Every closed form can be checked against the finite-difference oracle in
//! [`oracle`].
//!
//! Units are ħ = 2m = 1.

// NaN must fail validation, so `!(x > 0.0)` is deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod angular;
pub mod assembler;
pub mod catalog;
pub mod error;
pub mod grid;
pub mod oracle;
pub mod perturbation;
pub mod potential;
pub mod quadrature;
pub mod susy;

pub use angular::{AngularFragment, AngularProblem};
pub use assembler::{FullSpectrumEntry, OracleSettings, VerificationReport, VerifyTolerances};
pub use error::{Error, Result};
pub use grid::{make_grid, Grid1D, GridKind};
pub use oracle::OracleResult;
pub use perturbation::{ExactDelta, PerturbationSeries};
pub use potential::{
    sample_potential, AngularForm, DeltaPotential, FamilyTag, PotentialFamily, PotentialSpec,
    Provenance, QuantumNumbers, QuantumRanges, SampledPotential, SpectrumLevel,
};
pub use susy::{ClosedFormW, Superpotential};
