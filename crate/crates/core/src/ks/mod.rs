//! Kochen–Specker colorability and Gleason frame-function sampling.

mod contexts;
mod fixtures;
mod gleason;
mod search;
mod vectors;

pub use contexts::{build_contexts, ContextList};
pub use fixtures::{cabello18, fixture};
pub use gleason::{frame_deviation, gleason_frame_check, gleason_frame_check_with};
pub use search::{ks_search, validate_coloring, ColoringOutcome, ColoringStatus, MAX_KS_VECTORS};
pub use vectors::{vector_set_from_json, EntryDoc, VectorSet, VectorSetDoc};
