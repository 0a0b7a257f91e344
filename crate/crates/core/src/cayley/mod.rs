//! Cayley graphs of the two built-in polynomial-growth groups: ℤ^D and the
//! discrete Heisenberg group. Word-metric balls, growth functions and the
//! covering quantities live here.

mod ball;
mod group;
mod growth;

pub use ball::{ball, word_distance, BallLayers, DEFAULT_BALL_CAP};
pub use group::{GroupDescriptor, GroupElement, GroupKind};
pub use growth::{covering_count, covers, discrete_radius, greedy_separated_set, growth_function, GrowthEstimate};
