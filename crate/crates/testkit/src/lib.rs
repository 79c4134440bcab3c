//! Ground truth for the rotation: brute-force 4-squares, the extremal point
//! families, and dense orientation sweeps for the optimization problems.

pub mod brute;
pub mod compare;
pub mod gen;
pub mod sweep;

pub use brute::{brute_force_four_squares, OracleSquare};
pub use compare::{compare_traces, OracleReport};
pub use gen::{gen_linear_family, gen_quadratic_family, gen_random_general, lattice, perturb};
pub use sweep::{
    annulus_at, dense_sweep_annulus, dense_sweep_largest_square, largest_square_at, refined_sweep_annulus,
    refined_sweep_largest_square, AnnulusObjective, AnnulusSample, SquareVariant, SweepAnswer,
};

use quadrot_geom::GeomError;
use quadrot_vd::VdError;

#[derive(Debug, thiserror::Error)]
pub enum TestkitError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Vd(#[from] VdError),
    #[error("general position violated: {0}")]
    GeneralPosition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no general-position set after {0} attempts")]
    RetriesExhausted(usize),
}
