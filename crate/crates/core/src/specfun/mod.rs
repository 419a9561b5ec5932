//! Special-function substrate: Gamma/Beta/Pochhammer, Gauss ₂F₁ on the
//! negative real axis, modified Bessel functions `I_α`/`K_α` with several
//! independent evaluation paths, the Matérn functions and the normalized
//! Bessel kernels `Ω_λ`.

mod bessel;
mod gamma;
mod hyp2f1;
mod matern;
mod omega;

pub use bessel::{bessel_i, bessel_k, bessel_k_with, SeriesPolicy};
pub use gamma::{beta_fn, digamma, gamma_fn, ln_gamma, pochhammer};
pub use hyp2f1::hyp2f1;
pub use matern::{matern, matern_derivative, matern_norm};
pub use omega::{omega, omega_zero};

pub(crate) use gamma::gamma_raw;
pub(crate) use omega::omega_unchecked;
