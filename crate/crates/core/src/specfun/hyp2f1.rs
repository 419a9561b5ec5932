use crate::{Error, Result};

const REL_TOL: f64 = 1e-15;
const MAX_TERMS: usize = 20_000;

fn series(a: f64, b: f64, c: f64, y: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * y;
        sum += term;
        if term.abs() <= REL_TOL * sum.abs().max(1e-300) {
            return Ok(sum);
        }
    }
    Err(Error::Accuracy {
        partial: sum,
        detail: format!("2F1 series did not converge for argument {y}"),
    })
}

/// Gauss hypergeometric function `₂F₁(a, b; c; x)` on the branch `x <= 0`.
///
/// For `x < -1/2` the Pfaff transformation
/// `₂F₁(a,b;c;x) = (1-x)^{-a} ₂F₁(a, c-b; c; x/(x-1))`
/// maps the argument into `[0, 1)` where the defining series converges.
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    if c <= 0.0 && c == c.floor() {
        return Err(Error::domain("2F1: c must not be a nonpositive integer"));
    }
    if x > 0.0 {
        return Err(Error::domain("2F1: only the branch x <= 0 is supported"));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if x >= -0.5 {
        return series(a, b, c, x);
    }
    // Pfaff on the parameter whose companion (c - .) is smaller in magnitude,
    // which keeps the transformed series tame.
    let y = x / (x - 1.0);
    let (e, other) = if (c - b).abs() <= (c - a).abs() {
        (a, c - b)
    } else {
        (b, c - a)
    };
    let f = series(e, other, c, y)?;
    Ok((1.0 - x).powf(-e) * f)
}
