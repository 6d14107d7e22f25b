//! Moment sequences, reference-measure generators, set descriptions, and
//! their file formats.

mod density;
mod generators;
mod io;
mod sequence;
mod set;

pub use density::{BoxPiece, DensityFn, DensitySpec};
pub use generators::{
    dirac_moments, gaussian_moments, lebesgue_box_moments, standard_normal_moment,
};
pub use io::{
    moments_from_json, moments_to_json, read_moments, read_set, write_moments, write_set,
};
pub use sequence::MomentSequence;
pub use set::SemialgebraicSet;
