use super::gamma::{beta_fn, ln_gamma};
use crate::quad::tanh_sinh_sided;
use crate::{Error, Result};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// Normalized Bessel kernel `Ω_λ(t) = Γ(λ+1) (t/2)^{-λ} J_λ(t)`.
///
/// Even in `t`, bounded by `Ω_λ(0) = 1`, oscillatory with an infinity of
/// simple zeros. Requires `λ > -1`.
///
/// Evaluation paths: the defining power series for small arguments, exact
/// spherical-Bessel recurrences when `2λ` is an odd integer, Poisson's
/// integral by tanh-sinh quadrature otherwise, and the Hankel asymptotic
/// expansion for large arguments.
pub fn omega(lambda: f64, t: f64) -> Result<f64> {
    if !(lambda > -1.0) {
        return Err(Error::domain("omega: need lambda > -1"));
    }
    let t = t.abs();
    Ok(omega_unchecked(lambda, t))
}

pub(crate) fn omega_unchecked(lambda: f64, t: f64) -> f64 {
    let t = t.abs();
    if t == 0.0 {
        return 1.0;
    }
    if t <= 8.0 {
        return omega_series(lambda, t);
    }
    if t > 25.0 * (lambda + 2.0) {
        return omega_asymptotic(lambda, t);
    }
    // exact closed-form route when 2λ is an odd integer
    let twol = 2.0 * lambda;
    if (twol - twol.round()).abs() < 1e-12 && (twol.round() as i64).rem_euclid(2) != 0 {
        let l = ((twol.round() as i64) - 1) / 2; // λ = l + 1/2
        if l == -1 {
            return t.cos();
        }
        if l >= 0 {
            return omega_spherical(l as usize, lambda, t);
        }
    }
    if lambda > -0.5 {
        omega_poisson(lambda, t)
    } else {
        // Lommel recurrence down from orders above -1/2:
        // Ω_λ = Ω_{λ+1} - t²/(4(λ+1)(λ+2)) Ω_{λ+2}
        let a = omega_unchecked(lambda + 1.0, t);
        let b = omega_unchecked(lambda + 2.0, t);
        a - t * t / (4.0 * (lambda + 1.0) * (lambda + 2.0)) * b
    }
}

/// Power series with Kahan-compensated summation.
fn omega_series(lambda: f64, t: f64) -> f64 {
    let q = 0.25 * t * t;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut comp = 0.0;
    for k in 0..200 {
        let kf = k as f64;
        term *= -q / ((kf + 1.0) * (lambda + kf + 1.0));
        let y = term - comp;
        let t2 = sum + y;
        comp = (t2 - sum) - y;
        sum = t2;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

/// Downward spherical-Bessel recurrence for λ = l + 1/2, normalized by
/// `j_0(t) = sin t / t`.
fn omega_spherical(l: usize, lambda: f64, t: f64) -> f64 {
    let start = l + 25 + (1.2 * t) as usize;
    let mut jp = 0.0; // j_{m+1} (trial scale)
    let mut jc = 1e-300; // j_m, starting at m = start
    let mut jl = 0.0;
    for m in (1..=start).rev() {
        let jm1 = (2.0 * m as f64 + 1.0) / t * jc - jp;
        jp = jc;
        jc = jm1; // j_{m-1}
        if m - 1 == l {
            jl = jc;
        }
        // rescale to avoid overflow
        if jc.abs() > 1e250 {
            jc /= 1e250;
            jp /= 1e250;
            jl /= 1e250;
        }
    }
    // jc now holds the trial value of j_0
    let scale = (t.sin() / t) / jc;
    let jlv = jl * scale;
    // Ω_{l+1/2}(t) = Γ(l+3/2) (t/2)^{-(l+1/2)} sqrt(2t/π) j_l(t)
    let ln_coeff = ln_gamma(l as f64 + 1.5) - lambda * (0.5 * t).ln() + 0.5 * (2.0 * t / PI).ln();
    ln_coeff.exp() * jlv
}

/// Poisson integral path for λ > -1/2.
fn omega_poisson(lambda: f64, t: f64) -> f64 {
    let b = beta_fn(lambda + 0.5, 0.5).expect("beta arguments positive");
    // (1-s²)^{λ-1/2} = (1-s)^{λ-1/2} (1+s)^{λ-1/2}; 1-s comes in as the exact
    // endpoint distance so the singular mass near s = 1 is not lost
    let v = tanh_sinh_sided(
        |s, _da, db| (t * s).cos() * (db * (1.0 + s)).powf(lambda - 0.5),
        0.0,
        1.0,
        1e-14,
    );
    2.0 / b * v
}

/// Hankel asymptotic expansion of `J_λ`, rescaled to `Ω_λ`.
fn omega_asymptotic(lambda: f64, t: f64) -> f64 {
    let mu = 4.0 * lambda * lambda;
    let omega_phase = t - lambda * FRAC_PI_2 - FRAC_PI_4;
    // a_m = Π_{j=1..m} (μ - (2j-1)²) / (m! 8^m), split into P (even) and Q (odd)
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    for m in 1..=8u32 {
        let mf = m as f64;
        a *= (mu - (2.0 * mf - 1.0).powi(2)) / (8.0 * mf);
        let contrib = a / t.powi(m as i32);
        let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if m % 2 == 0 {
            p += sign * contrib;
        } else {
            q += sign * contrib;
        }
        if contrib.abs() < 1e-17 {
            break;
        }
    }
    let j = (2.0 / (PI * t)).sqrt() * (p * omega_phase.cos() - q * omega_phase.sin());
    let ln_coeff = ln_gamma(lambda + 1.0) - lambda * (0.5 * t).ln();
    ln_coeff.exp() * j
}

/// Approximate `k`-th positive zero of `Ω_λ` (equivalently of `J_λ`), from
/// McMahon's asymptotic phase. Used to split oscillatory integrals into
/// panels; a few digits of accuracy are sufficient there.
pub fn omega_zero(lambda: f64, k: usize) -> f64 {
    debug_assert!(k >= 1);
    let mu = 4.0 * lambda * lambda;
    let beta = (k as f64 + 0.5 * lambda - 0.25) * PI;
    let b8 = 8.0 * beta;
    let z = beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3));
    z.max(0.5 * beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::gamma_fn;

    #[test]
    fn half_integer_closed_forms() {
        for &t in &[0.1, 1.0, 3.0, 9.0, 30.0, 55.0] {
            let c = omega(-0.5, t).unwrap();
            assert!((c - t.cos()).abs() < 1e-11, "cos t={t}: {c}");
            let s = omega(0.5, t).unwrap();
            assert!((s - t.sin() / t).abs() < 1e-11, "sinc t={t}: {s}");
        }
    }

    #[test]
    fn unity_at_origin() {
        for &l in &[-0.9, -0.4, 0.0, 0.5, 2.5, 6.0] {
            assert_eq!(omega(l, 0.0).unwrap(), 1.0);
        }
        assert!(omega(-1.0, 1.0).is_err());
    }

    #[test]
    fn even_in_argument() {
        for &l in &[-0.4, 0.0, 1.3] {
            for &t in &[0.7, 5.0, 20.0] {
                assert_eq!(omega(l, t).unwrap(), omega(l, -t).unwrap());
            }
        }
    }

    #[test]
    fn bounded_by_one_on_dense_grid() {
        for &l in &[-0.4, 0.0, 0.5, 1.0, 2.5] {
            let mut t = 0.0;
            while t <= 100.0 {
                let v = omega(l, t).unwrap().abs();
                assert!(v <= 1.0 + 1e-12, "lambda={l} t={t}: {v}");
                t += 0.1;
            }
        }
    }

    #[test]
    fn lommel_recurrence_residual() {
        for &l in &[-0.4, 0.0, 0.5, 1.0, 2.5] {
            let mut t = 0.1;
            while t <= 100.0 {
                // recurrence shifted to order λ+1 so all orders stay > -1:
                // Ω_{λ+1} - Ω_λ = t²/(4(λ+1)(λ+2)) Ω_{λ+2}
                let res = omega(l + 1.0, t).unwrap() - omega(l, t).unwrap()
                    - t * t / (4.0 * (l + 1.0) * (l + 2.0)) * omega(l + 2.0, t).unwrap();
                assert!(res.abs() <= 1e-9, "lambda={l} t={t}: {res}");
                t += 2.3;
            }
        }
    }

    #[test]
    fn poisson_integral_agreement() {
        // independent trapezoid oracle of Poisson's integral (J2), λ > -1/2
        for &l in &[0.0, 0.8, 2.5] {
            for &t in &[0.5, 4.0, 12.0] {
                let b = beta_fn(l + 0.5, 0.5).unwrap();
                // substitution s = sin θ removes the endpoint singularity
                let m = 200_000;
                let h = FRAC_PI_2 / m as f64;
                let mut acc = 0.0;
                for i in 0..=m {
                    let theta = i as f64 * h;
                    let w = if i == 0 || i == m { 0.5 } else { 1.0 };
                    acc += w * (t * theta.sin()).cos() * theta.cos().powf(2.0 * l);
                }
                let oracle = 2.0 / b * acc * h;
                let got = omega(l, t).unwrap();
                assert!((got - oracle).abs() < 1e-10, "l={l} t={t}: {got} vs {oracle}");
            }
        }
    }

    #[test]
    fn asymptotic_regime_matches_leading_order() {
        for &l in &[-0.4, 0.0, 1.0, 2.5] {
            let t = 30.0 * (l + 2.0); // inside the asymptotic window
            let got = omega(l, t).unwrap();
            let amp = gamma_fn(l + 1.0).unwrap() / PI.sqrt() * (0.5 * t).powf(-l - 0.5);
            let lead = amp * (t - (2.0 * l + 1.0) * FRAC_PI_4).cos();
            assert!(
                (got - lead).abs() <= 5.0 / t * amp.abs(),
                "l={l} t={t}: {got} vs {lead}"
            );
        }
    }

    #[test]
    fn mcmahon_zeros_bracket_sign_changes() {
        for &l in &[-0.4, 0.0, 0.5, 1.7] {
            for k in 1..20 {
                let z = omega_zero(l, k);
                let lo = omega(l, z - 0.4).unwrap();
                let hi = omega(l, z + 0.4).unwrap();
                assert!(lo * hi < 0.0, "l={l} k={k} z={z}");
            }
        }
    }

    #[test]
    fn series_matches_quadrature_on_overlap() {
        for &l in &[-0.3, 0.2, 1.1, 2.5] {
            for &t in &[6.0, 7.9] {
                let s = omega_series(l, t);
                let p = omega_poisson(l, t);
                assert!((s - p).abs() < 1e-12, "l={l} t={t}: {s} vs {p}");
            }
        }
    }
}
