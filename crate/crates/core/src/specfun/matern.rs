use super::bessel::bessel_k;
use super::gamma::ln_gamma;
use crate::{Error, Result};

/// Matérn function `M_α(z) = K_α(z) z^α`.
///
/// For `α > 0` the origin value is the limit `2^{α-1} Γ(α)`; for `α <= 0`
/// the function diverges at the origin.
pub fn matern(alpha: f64, z: f64) -> Result<f64> {
    if z < 0.0 {
        return Err(Error::domain("matern: need z >= 0"));
    }
    if z == 0.0 {
        if alpha > 0.0 {
            return Ok(((alpha - 1.0) * 2.0f64.ln() + ln_gamma(alpha)).exp());
        }
        return Err(Error::domain("matern: diverges at z = 0 for alpha <= 0"));
    }
    Ok(bessel_k(alpha, z)? * z.powf(alpha))
}

/// Normalized Matérn function `𝓜_α(z) = 2^{1-α}/Γ(α) · K_α(z) z^α`, scaled so
/// `𝓜_α(0) = 1`. Requires `α > 0`.
pub fn matern_norm(alpha: f64, z: f64) -> Result<f64> {
    if alpha <= 0.0 {
        return Err(Error::domain("matern_norm: need alpha > 0"));
    }
    if z < 0.0 {
        return Err(Error::domain("matern_norm: need z >= 0"));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    let scale = ((1.0 - alpha) * 2.0f64.ln() - ln_gamma(alpha)).exp();
    Ok(scale * bessel_k(alpha, z)? * z.powf(alpha))
}

/// `d/dz [K_α(z) z^α] = -K_{α-1}(z) z^α`.
pub fn matern_derivative(alpha: f64, z: f64) -> Result<f64> {
    if z <= 0.0 {
        return Err(Error::domain("matern_derivative: need z > 0"));
    }
    Ok(-bessel_k(alpha - 1.0, z)? * z.powf(alpha))
}
