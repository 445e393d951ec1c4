pub mod error;
pub mod exact_algebra;
pub mod exact_matrices;
pub mod spectrum;
pub mod scheme_builder;
pub mod pointset;
pub mod cli;
