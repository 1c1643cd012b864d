//! Exact retrodiction of chaotic maps.
//!
//! Iterate a start value forward with fixed-precision decimal arithmetic,
//! enumerate every pre-image of the result, and measure how well a ranking
//! heuristic (digit complexity, nearest-neighbour density or stretch) singles
//! out the true start compared to a uniform guess.

pub mod codes;
pub mod error;
pub mod harness;
pub mod maps;
pub mod numerics;
pub mod preimage;
pub mod rankers;

pub use codes::{cl_harmonic, loglog_code_bits, plain_code_bits, uniform_code_bits, CodeParams};
pub use error::{Result, RetroError};
pub use maps::{MapSpec, Orbit, Point};
pub use numerics::{ComplexValue, DecimalValue, PrecisionConfig};
pub use preimage::{enumerate_candidates, locate_true, CandidateSet, DEFAULT_CANDIDATE_BUDGET};
pub use rankers::{
    complexity_rank, deflate_complexity, density_code_length, density_rank, nn_distances, rank,
    stretch_rank, Method, RankResult,
};
