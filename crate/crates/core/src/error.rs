use std::path::PathBuf;

use thiserror::Error;

use crate::geometry::ProlateCoords;

pub type Result<T> = std::result::Result<T, Error>;

/// Why a ground point has no usable prolate chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    /// `alpha * sinh(rho) * sin(theta) < h`: no real coordinate angle.
    NoRealAngle,
    /// The point sits exactly under the midpoint of the two antennas.
    UnderTrack,
    /// A denominator of an identity coefficient fell below tolerance.
    SmallDenominator,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate prolate coordinates ({reason:?})")]
    DegenerateCoordinates {
        reason: Degeneracy,
        /// Best-effort coordinates, present for the under-track branch.
        coords: Option<ProlateCoords>,
    },

    #[error("ambiguous singularity: |det| = {det:e} is below tolerance but x2 = {x2:e} is off the critical set")]
    AmbiguousSingularity { det: f64, x2: f64 },

    #[error("singularity check failed on the critical set: {0}")]
    InconsistentSingularity(String),

    #[error(
        "pulse content up to {max_freq} exceeds the sampling limit {limit} (Nyquist margin 2)"
    )]
    Nyquist { max_freq: f64, limit: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("peak detection failed: {0}")]
    PeakDetection(String),

    #[error("malformed file {path:?}: {reason}")]
    Format { path: PathBuf, reason: String },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
