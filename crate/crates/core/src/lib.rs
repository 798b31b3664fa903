//! Quaternion Hermitian eigenproblems solved through eigenvalues.
//!
//! * [`quat`]: the quaternion scalar.
//! * [`qmatrix`]: dense quaternion matrices, minors, natural submatrices
//!   and the real 4n×4n lift.
//! * [`qdet`]: permutation determinant, row expansion and the quaternion
//!   adjugate.
//! * [`eigen`]: right eigenvalues via the lift, eigenvector moduli from
//!   minor spectra, and eigenvectors rebuilt from the adjugate.
//! * [`oracle`]: Gaussian elimination and determinant identities used to
//!   cross-check the above.
//!
//! ```
//! use qeei_core::{eigen::EigenSystem, QMatrix, Quaternion};
//!
//! let a = QMatrix::from_rows(&[
//!     vec![Quaternion::real(3.0), Quaternion::new(0.0, 1.0, -1.0, 1.0)],
//!     vec![Quaternion::new(0.0, -1.0, 1.0, -1.0), Quaternion::real(2.0)],
//! ])?
//! .validate_hermitian()?;
//! let mut sys = EigenSystem::new(a)?;
//! let top = sys.spectrum().value(2)?;
//! assert!((top - (5.0 + 13f64.sqrt()) / 2.0).abs() < 1e-12);
//! let pair = sys.eigenvector(2)?;
//! assert!(pair.residual < 1e-12);
//! assert!((sys.eei_modulus(2, 1)? - pair.modulus_sq(1)).abs() < 1e-12);
//! # Ok::<(), qeei_core::Error>(())
//! ```

pub mod eigen;
pub mod error;
pub mod oracle;
pub mod qdet;
pub mod qmatrix;
pub mod quat;

pub use error::{Error, Result};
pub use qmatrix::{HermitianQMatrix, QMatrix, RealMatrix, SubmatrixConvention};
pub use quat::Quaternion;
