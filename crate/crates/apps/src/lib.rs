//! Optimization over all orientations on top of the rotation trace: largest
//! empty squares, the radius envelope and the minimum square annulus.

pub mod annulus;
pub mod classes;
pub mod curves;
pub mod envelope;
pub mod expr;
pub mod les;

pub use annulus::{annulus_at, min_annulus, min_annulus_at_box_events, AnnulusResult, Objective};
pub use classes::{bounding_box_events, boxed_mes_classes, mes_classes, BoxedMesClass, ClassKey, MesClass};
pub use envelope::{class_curves, radius_envelope, EnvPiece, RadiusEnvelope};
pub use les::{largest_centered_at, largest_empty_square_in_box, largest_empty_square_pinned, LesResult, Variant};

use quadrot_geom::GeomError;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("inconsistent trace: {0}")]
    Trace(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
}
