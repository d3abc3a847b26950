//! Error type shared by all modules of the crate.

/// Errors reported by configuration validation and the numerical routines.
///
/// All fallible operations in this crate return [`Result`]; none of the
/// numerical routines panic on bad input.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An angle vector failed validation (ordering, range, finiteness).
    #[error("invalid angle configuration: {0}")]
    InvalidAngles(String),

    /// A mass vector failed validation (positivity, finiteness, length).
    #[error("invalid mass vector: {0}")]
    InvalidMasses(String),

    /// The potential exponent was not a positive finite number.
    #[error("invalid exponent: {0}")]
    InvalidAlpha(String),

    /// A vertex selection failed validation (size, ordering, bounds).
    #[error("invalid vertex selection: {0}")]
    InvalidSelection(String),

    /// Two circle points were too close for a meaningful chord computation.
    #[error("degenerate geometry: angular separation {separation:.3e} rad is below {threshold:.3e}")]
    DegenerateGeometry {
        /// Circular separation of the offending pair, in radians.
        separation: f64,
        /// Rejection threshold that was violated.
        threshold: f64,
    },

    /// Two arguments that must share a dimension did not.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A symmetry-group element or operation was malformed.
    #[error("invalid group element: {0}")]
    InvalidGroupElement(String),

    /// A scan family description was inconsistent.
    #[error("invalid scan family: {0}")]
    InvalidFamily(String),

    /// A scalar parameter (sample count, vertex count, ...) was out of range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
