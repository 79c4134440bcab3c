//! Maintaining the diagram while the axes turn through a quarter.
//!
//! Between degenerate orientations the diagram keeps its combinatorial
//! structure. It changes only where a bounded edge shrinks to a point or
//! where two points become axis-aligned. The sweep keeps one queued event
//! per bounded edge plus the hull alignments. At each degenerate orientation
//! it collects the 4-squares and swaps the vertices they end for the ones
//! they start.

mod events;
mod faces;
mod queue;
mod state;
mod trace;

pub use events::{potential_edge_event, square_orientation, transition_sets};
pub use faces::{covering_segments, FaceLists};
pub use queue::{Event, EventQueue};
pub use state::{init_state, run_rotation, run_rotation_with, FoundSquare, KineticConfig, KineticState};
pub use trace::{build_square_adjacency_graph, shift_edge_key, write_jsonl, FourSquareRecord, RotationTrace, SquareGraph, TraceEvent};

use quadrot_geom::GeomError;
use quadrot_vd::VdError;

#[derive(Debug, thiserror::Error)]
pub enum KineticError {
    #[error(transparent)]
    Vd(#[from] VdError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("general position violated near φ={phi}: {detail}")]
    GeneralPosition { phi: f64, detail: String },
    #[error("diagram invariant broken at φ={phi}: {detail}")]
    Structure { phi: f64, detail: String },
}
