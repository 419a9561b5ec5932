//! Radial kernel toolkit built around the Matérn functions `M_α(z) = K_α(z) z^α`
//! and the inverse multiquadrics `φ_β(r) = (1+r²)^{-β}`.
//!
//! The crate is organised in layers:
//!
//! * [`specfun`] — Gamma/Beta/Pochhammer, Gauss ₂F₁ on the negative axis,
//!   modified Bessel `I_α`/`K_α` with several cross-checking evaluation paths,
//!   the Matérn functions and the normalized Bessel kernels `Ω_λ`.
//! * [`quad`] — adaptive, tanh-sinh and semi-infinite quadrature plus
//!   series acceleration used by every transform.
//! * [`hstransform`] — Hankel–Schoenberg transforms of measures on `[0,∞)`:
//!   forward, inversion, Parseval residuals, order-changing maps and the
//!   catalog of representing densities.
//! * [`kernels`] — the named kernel catalog on ℝⁿ (Bessel potentials `G_α`,
//!   `F_α`, `F_{α,λ}`, inverse multiquadrics) with radial Fourier transforms,
//!   convolution identities and RKHS inner products.
//! * [`schoenberg`] — scattered point sets, Schoenberg/Gramian matrices,
//!   Schur-test norm bounds, invertibility thresholds and Riesz certificates.
//! * [`interpolate`] — Lagrange-type radial basis interpolation over a
//!   certified point set.

// `!(x > 0.0)` is used deliberately throughout: unlike `x <= 0.0`, it also
// rejects NaN inputs at every domain check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod grid;
pub mod hstransform;
pub mod interpolate;
pub mod kernels;
pub mod quad;
pub mod schoenberg;
pub mod specfun;

pub use error::Error;
pub use grid::EvalGrid;
pub use quad::QuadratureConfig;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
