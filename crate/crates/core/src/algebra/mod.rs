//! Integer homology and fundamental-group presentations.

pub mod homology;
pub mod matrix;
pub mod presentation;

pub use homology::{
    boundary_matrices, euler_characteristic, euler_characteristic_space, homology, homology_space,
    HomologySummary,
};
pub use matrix::{smith_normal_form, IntegerMatrix, SmithForm};
pub use presentation::{
    edge_path_presentation, free_rank_height1, tietze_simplify, GroupPresentation, Letter, Word,
};
