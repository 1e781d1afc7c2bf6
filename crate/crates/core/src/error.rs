use thiserror::Error;

use crate::grid::GridKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("{family} is not defined on a {kind} grid: {reason}")]
    DomainMismatch {
        family: &'static str,
        kind: GridKind,
        reason: String,
    },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: String,
    },

    #[error("sample length {got} does not match grid size {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("ground state not normalizable: superpotential tends to {limit} at the {end} end")]
    NotNormalizable { end: &'static str, limit: f64 },

    #[error("no analytic ladder for family {0}")]
    UnsupportedFamily(&'static str),

    #[error("unknown family tag `{0}`")]
    UnknownTag(String),

    #[error(
        "not exactly solvable by a {ansatz} ansatz: residual varies by {spread:e} over the grid"
    )]
    NotExactlySolvable {
        ansatz: &'static str,
        spread: f64,
        residual: Vec<f64>,
    },

    #[error("order {order}: correction unbounded at the {end} end (|dW| = {magnitude:e})")]
    UnboundedCorrection {
        order: usize,
        end: &'static str,
        magnitude: f64,
    },

    #[error("no real effective angular momentum: {0}")]
    NoRealEllEff(String),

    #[error("potential falls to the centre faster than -1/(4r^2) (r^2 V = {0})")]
    FallToCenter(f64),
}
