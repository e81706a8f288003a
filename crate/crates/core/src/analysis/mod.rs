//! Statistical comparison of run samples and indicator-bias profiles.

mod bias;
mod wilcoxon;

pub use bias::{
    grid_similar_front, mean_eps_profile, profile_argmax, sample_similar_front,
    write_profile_csv, FrontSample, FrontShape, ProfileRow, ShapeKind,
};
pub use wilcoxon::{
    midranks, wilcoxon_rank_sum, ComparisonVerdict, Outcome, DEFAULT_ALPHA, EXACT_MAX_SAMPLE,
};
