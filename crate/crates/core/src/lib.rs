//! Quaternionic numerical toolkit for the symplectic group `Sp(n)` and its
//! quasi-projective subspace `Q_n`.
//!
//! * [`quat`]: quaternion arithmetic, polar form, principal `Log` and `exp`.
//! * [`hmat`]: quaternionic vectors and matrices, `Sp(n)` membership.
//! * [`qproj`]: the map `phi`, point recovery, normal cells, sampling.
//! * [`cover`]: the cover `{O1, O2, O3}` of `Q_n` and its contractions in `Sp(n)`.
//! * [`cli`]: the verification report and command implementations.

pub mod cli;
pub mod cover;
pub mod error;
pub mod hmat;
pub mod qproj;
pub mod quat;

pub use error::{Error, Result};
pub use hmat::{HMatrix, HVector};
pub use qproj::{NormalCell, QPoint};
pub use quat::{PolarForm, Quaternion};
