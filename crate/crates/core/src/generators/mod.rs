//! Lower-bound spiral families and random polygons for fuzzing.

mod random;
mod spiral;

pub use random::{random_rectilinear, random_x_monotone};
pub use spiral::{
    bench_polygon, build_spiral, coverage_lengths, coverage_spiral, greedy_cover_spiral, routing_spiral, spiral_widths,
    Spiral, SpiralDecomposition, SpiralKind, SpiralSpec,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("could not generate a polygon with {n} vertices from seed {seed}")]
    GenerationFailed { n: usize, seed: u64 },
    #[error("constraint unsatisfied: {0}")]
    ConstraintUnsatisfied(String),
    #[error("polygon is not a coverage spiral")]
    NotCoverageSpiral,
    #[error(transparent)]
    Polygon(#[from] crate::polygon::PolygonError),
}
