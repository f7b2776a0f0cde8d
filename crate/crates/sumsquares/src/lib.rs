//! Squares in sumsets: a verification toolkit.
//!
//! If `A, B` are subsets of `{1, ..., N}` with `|A|, |B| >= (3/8 + eps) N`,
//! the sumset `A + B` contains a perfect square. The density threshold `3/8`
//! is sharp: the residue classes `{0, 1, 5}` and `{2, 5, 6}` mod 8 have
//! density exactly `3/8` and their sumset misses every square mod 8.
//!
//! This crate implements the finite, checkable core of that story:
//!
//! * [`ring`]: weights on `Z/qZ`, the quadratic-residue profile, the
//!   discrete Fourier transform, cyclic convolution.
//! * [`modular`]: the spectral split of the square count into a mod-24 main
//!   term and an off-diagonal error, Gauss-sum magnitude bounds, and the
//!   modular lower bound `(eps/sqrt5) q` for dense weights.
//! * [`optimize`]: the 48-variable optimization behind the constant
//!   `16/3`, enumerated exactly over `Q[sqrt 5]`, with a float replica of
//!   the original scan for comparison.
//! * [`search`]: exhaustive search for square-avoiding pairs of residue
//!   sets, certifying that density `3/8` is extremal.
//! * [`integers`]: desk-scale experiments in `[1, N]`: square-pair counts,
//!   piecewise approximants, balanced-function cancellation, and the
//!   four-term convolution decomposition.
//!
//! Quantities that feed verdicts are computed exactly (integer or rational
//! arithmetic, or symbolic `p + r*sqrt(5)`) wherever the statement is an
//! identity; analytic inequalities are checked in `f64` with explicit
//! tolerances recorded in each [`report::VerificationReport`].
//!
//! # Example
//!
//! ```
//! use sumsquares::ring::{Modulus, qr_profile};
//!
//! let profile = qr_profile(Modulus::new(8).unwrap());
//! // squares mod 8 are {0, 1, 4}
//! assert_eq!(profile.counts, vec![2, 4, 0, 0, 2, 0, 0, 0]);
//! assert_eq!(profile.total(), 8);
//! ```

pub mod error;
pub mod integers;
pub mod modular;
pub mod optimize;
pub mod quad;
pub mod report;
pub mod ring;
pub mod sample;
pub mod search;

pub use error::{Error, Result};
pub use quad::{Quad5, Rational};
pub use report::VerificationReport;
pub use ring::{Modulus, QRProfile, ResidueWeight};
pub use sample::DEFAULT_SEED;
