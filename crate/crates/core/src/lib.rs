//! Finite-dimensional frame theory laboratory.
//!
//! Every construction works on finite families of complex vectors or on
//! compactly supported sampled functions, so that the classical frame and
//! Gabor identities become checkable numerical properties. Verification
//! routines return an [`AnalysisReport`] with named residuals.

pub mod bspline;
pub mod dilation;
pub mod error;
pub mod exponentials;
pub mod extension;
pub mod frame;
pub mod gabor;
pub mod hiprec;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod quad;
pub mod random;
pub mod rdual;
pub mod report;

pub use error::{FrameError, Result};
pub use frame::{FrameBounds, Mode, VectorSystem};
pub use num_complex::Complex64;
pub use report::{AnalysisReport, Verdict};

/// Tolerance used when a caller does not supply one.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
