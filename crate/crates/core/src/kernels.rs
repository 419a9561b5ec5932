//! The named radial kernel catalog on ℝⁿ: normalized Matérn functions,
//! Bessel potentials `G_α`, the rescaled variants `F_α` and `F_{α,λ}`, and
//! inverse multiquadrics — together with radial Fourier transforms,
//! convolution identities, closed-form RKHS inner products and the Gamma
//! integral lemmas used by the operator certificates.

use crate::hstransform::omega_integral;
use crate::quad::{integrate_semi_infinite, QuadratureConfig};
use crate::specfun::{bessel_k, ln_gamma, matern, matern_norm};
use crate::{Error, Result};
use std::f64::consts::{LN_2, PI};

/// A kernel from the catalog, identified by its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelSpec {
    /// `𝓜_α(z) = 2^{1-α}/Γ(α) K_α(z) z^α`, normalized so `𝓜_α(0) = 1`.
    MaternNorm { alpha: f64 },
    /// Bessel potential `G_α(z) = K_{α-n/2}(z) z^{α-n/2} / (2^{α-1+n/2} π^{n/2} Γ(α))`
    /// on ℝⁿ, with Fourier transform `(1+|ξ|²)^{-α}`.
    BesselPotential { alpha: f64, n: u32 },
    /// `F_α(z) = K_α(z) z^α / (2^{α+n-1} π^{n/2} Γ(α+n/2))` on ℝⁿ;
    /// coincides with `G_{α+n/2}`.
    FKernel { alpha: f64, n: u32 },
    /// `F_{α,λ}`, defined by a one-dimensional integral, with Fourier
    /// transform `(1+|ξ|²)^{-α-λ-1}` on ℝⁿ; requires `λ > (n-2)/2`.
    FAlphaLambda { alpha: f64, lambda: f64, n: u32 },
    /// Inverse multiquadric `φ_β(r) = (1+r²)^{-β}`.
    Imq { beta: f64 },
}

impl KernelSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            KernelSpec::MaternNorm { alpha } => {
                if !(alpha > 0.0) {
                    return Err(Error::domain("matern_norm kernel: need alpha > 0"));
                }
            }
            KernelSpec::BesselPotential { alpha, n } => {
                if n < 1 || !(alpha > 0.0) {
                    return Err(Error::domain("bessel potential: need alpha > 0, n >= 1"));
                }
            }
            KernelSpec::FKernel { alpha, n } => {
                if n < 1 || !(alpha > -(n as f64) / 4.0) {
                    return Err(Error::domain("f kernel: need alpha > -n/4, n >= 1"));
                }
            }
            KernelSpec::FAlphaLambda { alpha, lambda, n } => {
                let nf = n as f64;
                if n < 1 || !(lambda > (nf - 2.0) / 2.0) || !(alpha + lambda + 1.0 > 0.0)
                    || !(alpha > -nf / 2.0)
                {
                    return Err(Error::domain(
                        "f_{alpha,lambda}: need n >= 1, lambda > (n-2)/2, alpha > -n/2, alpha+lambda+1 > 0",
                    ));
                }
            }
            KernelSpec::Imq { beta } => {
                if !(beta > 0.0) {
                    return Err(Error::domain("imq: need beta > 0"));
                }
            }
        }
        Ok(())
    }

    /// The ambient dimension carried by the parameters, if any.
    pub fn dim(&self) -> Option<u32> {
        match *self {
            KernelSpec::BesselPotential { n, .. }
            | KernelSpec::FKernel { n, .. }
            | KernelSpec::FAlphaLambda { n, .. } => Some(n),
            _ => None,
        }
    }

    /// Whether the kernel value at the origin is finite.
    pub fn finite_at_origin(&self) -> bool {
        match *self {
            KernelSpec::MaternNorm { .. } | KernelSpec::Imq { .. } => true,
            KernelSpec::BesselPotential { alpha, n } => alpha > n as f64 / 2.0,
            KernelSpec::FKernel { alpha, .. } => alpha > 0.0,
            KernelSpec::FAlphaLambda { alpha, lambda, n } => {
                // origin value exists iff the defining integral converges at 0
                alpha.min(0.0) + lambda > n as f64 / 2.0 - 1.0
            }
        }
    }
}

/// Pointwise kernel value at radial argument `z >= 0`.
///
/// Kernels that blow up at the origin reject `z = 0` with a domain error.
pub fn kernel_eval(spec: &KernelSpec, z: f64) -> Result<f64> {
    spec.validate()?;
    if !(z >= 0.0) {
        return Err(Error::domain("kernel_eval: need z >= 0"));
    }
    if z == 0.0 && !spec.finite_at_origin() {
        return Err(Error::domain("kernel_eval: kernel is singular at the origin"));
    }
    match *spec {
        KernelSpec::MaternNorm { alpha } => matern_norm(alpha, z),
        KernelSpec::BesselPotential { alpha, n } => {
            let nf = n as f64;
            let ln_c = -((alpha - 1.0 + nf / 2.0) * LN_2 + nf / 2.0 * PI.ln() + ln_gamma(alpha));
            Ok(ln_c.exp() * matern(alpha - nf / 2.0, z)?)
        }
        KernelSpec::FKernel { alpha, n } => {
            let nf = n as f64;
            let ln_c = -((alpha + nf - 1.0) * LN_2 + nf / 2.0 * PI.ln() + ln_gamma(alpha + nf / 2.0));
            Ok(ln_c.exp() * matern(alpha, z)?)
        }
        KernelSpec::FAlphaLambda { alpha, lambda, n } => {
            let nf = n as f64;
            let ln_c = -((alpha + 2.0 * lambda) * LN_2
                + nf / 2.0 * PI.ln()
                + ln_gamma(lambda + 1.0 - nf / 2.0)
                + ln_gamma(alpha + lambda + 1.0));
            // ∫_z^∞ (s²-z²)^{λ-n/2} K_α(s) s^{α+1} ds under s = √(z²+u²)
            // becomes ∫_0^∞ u^{2λ-n+1} K_α(s) s^α du, free of the endpoint
            // singularity at s = z
            let body = integrate_semi_infinite(
                |u| {
                    let s = z.hypot(u);
                    match matern(alpha, s) {
                        Ok(m) => u.powf(2.0 * lambda - nf + 1.0) * m,
                        Err(_) => 0.0,
                    }
                },
                1e-13,
            );
            if !body.is_finite() {
                return Err(Error::Divergence("f_{alpha,lambda}: defining integral diverged".into()));
            }
            Ok(ln_c.exp() * body)
        }
        KernelSpec::Imq { beta } => Ok((1.0 + z * z).powf(-beta)),
    }
}

/// Radial Fourier transform on ℝⁿ:
/// `F̂(ξ) = 2π^{n/2}/Γ(n/2) ∫ Ω_{(n-2)/2}(|ξ|t) f(t) t^{n-1} dt`
/// where `f` is the radial profile of the kernel.
///
/// For kernels whose parameters carry an ambient dimension, `n` must agree
/// with it.
pub fn radial_fourier(spec: &KernelSpec, n: u32, xi: f64, cfg: &QuadratureConfig) -> Result<f64> {
    spec.validate()?;
    if n < 1 {
        return Err(Error::domain("radial_fourier: need n >= 1"));
    }
    if let Some(nk) = spec.dim() {
        if nk != n {
            return Err(Error::validation(
                "radial_fourier: ambient dimension disagrees with the kernel's",
            ));
        }
    }
    if xi < 0.0 {
        return Err(Error::domain("radial_fourier: need |ξ| >= 0"));
    }
    let nf = n as f64;
    let surface = 2.0 * PI.powf(nf / 2.0) / (ln_gamma(nf / 2.0)).exp();
    let spec = *spec;
    let (body, _, _) = omega_integral(
        (nf - 2.0) / 2.0,
        xi,
        |t| kernel_eval(&spec, t).map(|v| v * t.powf(nf - 1.0)).unwrap_or(0.0),
        cfg,
    )?;
    Ok(surface * body)
}

/// Residual of the convolution semigroup identity
/// `(G_α * G_β)(z) = G_{α+β}(z)` on ℝⁿ, with the convolution evaluated on the
/// Fourier side as the inverse transform of `(1+|ξ|²)^{-α-β}`.
pub fn convolution_check(
    alpha: f64,
    beta: f64,
    n: u32,
    z: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::domain("convolution_check: need alpha, beta > 0"));
    }
    let sum = KernelSpec::BesselPotential { alpha: alpha + beta, n };
    let rhs = kernel_eval(&sum, z)?;
    let nf = n as f64;
    let surface = 2.0 * PI.powf(nf / 2.0) / (ln_gamma(nf / 2.0)).exp();
    let (body, _, _) = omega_integral(
        (nf - 2.0) / 2.0,
        z,
        |t| (1.0 + t * t).powf(-alpha - beta) * t.powf(nf - 1.0),
        cfg,
    )?;
    let lhs = (2.0 * PI).powf(-nf) * surface * body;
    Ok((lhs - rhs).abs())
}

/// A Hilbert space in which translates of catalog kernels live.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InnerProductSpace {
    /// `L²(ℝⁿ)`.
    L2 { n: u32 },
    /// Sobolev space `H^α(ℝⁿ)` with reproducing kernel `G_α` (for `α > n/2`).
    Sobolev { alpha: f64, n: u32 },
    /// The space `𝒦_α(ℝⁿ)` with reproducing kernel `φ_{α+n/2}`.
    KSpace { alpha: f64, n: u32 },
}

impl InnerProductSpace {
    pub fn ambient_dim(&self) -> u32 {
        match *self {
            InnerProductSpace::L2 { n }
            | InnerProductSpace::Sobolev { n, .. }
            | InnerProductSpace::KSpace { n, .. } => n,
        }
    }
}

/// Closed-form inner product of two kernel translates,
/// `(K(·-x), K(·-y))_H`, for the catalogued (space, kernel) pairings:
///
/// * `L²` with `G_α` (`α > n/4`): equals `G_{2α}(|x-y|)`;
/// * `L²` with `F_α` (`α > -n/4`): equals `F_{2α+n/2}(|x-y|)`;
/// * `H^α` with `G_α` (`α > n/2`): equals `G_α(|x-y|)` (reproducing kernel);
/// * `𝒦_{β-n/2}` with `φ_β` (`β > n/2`): equals `φ_β(|x-y|)`.
pub fn rkhs_inner(
    space: &InnerProductSpace,
    spec: &KernelSpec,
    x: &[f64],
    y: &[f64],
) -> Result<f64> {
    spec.validate()?;
    let n = space.ambient_dim();
    if n < 1 {
        return Err(Error::domain("rkhs_inner: need n >= 1"));
    }
    if x.len() != n as usize || y.len() != n as usize {
        return Err(Error::validation("rkhs_inner: point length must equal n"));
    }
    if let Some(nk) = spec.dim() {
        if nk != n {
            return Err(Error::validation(
                "rkhs_inner: kernel dimension disagrees with the space's",
            ));
        }
    }
    let z = x
        .iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    let nf = n as f64;
    match (space, spec) {
        (InnerProductSpace::L2 { .. }, &KernelSpec::BesselPotential { alpha, .. }) => {
            if !(alpha > nf / 4.0) {
                return Err(Error::domain("rkhs_inner: G_alpha in L2 needs alpha > n/4"));
            }
            kernel_eval(&KernelSpec::BesselPotential { alpha: 2.0 * alpha, n }, z)
        }
        (InnerProductSpace::L2 { .. }, &KernelSpec::FKernel { alpha, .. }) => {
            kernel_eval(&KernelSpec::FKernel { alpha: 2.0 * alpha + nf / 2.0, n }, z)
        }
        (InnerProductSpace::Sobolev { alpha: a_space, .. }, &KernelSpec::BesselPotential { alpha, .. }) => {
            if (a_space - alpha).abs() > 1e-14 {
                return Err(Error::validation(
                    "rkhs_inner: Sobolev order must match the kernel order",
                ));
            }
            if !(alpha > nf / 2.0) {
                return Err(Error::domain("rkhs_inner: H^alpha pairing needs alpha > n/2"));
            }
            kernel_eval(spec, z)
        }
        (InnerProductSpace::KSpace { alpha: a_space, .. }, &KernelSpec::Imq { beta }) => {
            if !(beta > nf / 2.0) {
                return Err(Error::domain("rkhs_inner: imq pairing needs beta > n/2"));
            }
            if (a_space - (beta - nf / 2.0)).abs() > 1e-14 {
                return Err(Error::validation(
                    "rkhs_inner: K-space order must equal beta - n/2",
                ));
            }
            kernel_eval(spec, z)
        }
        _ => Err(Error::domain(
            "rkhs_inner: no closed-form pairing for this space/kernel combination",
        )),
    }
}

/// `∫_0^∞ [K_α(t) t^α]² t^{2λ+1} dt` by quadrature, for `λ > -1`,
/// `2α + λ + 1 > 0`. Matches [`l2_norm_sq_closed`].
pub fn l2_norm_sq(alpha: f64, lambda: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(lambda > -1.0 && 2.0 * alpha + lambda + 1.0 > 0.0) {
        return Err(Error::domain("l2_norm_sq: need lambda > -1, 2*alpha + lambda + 1 > 0"));
    }
    cfg.validate()?;
    let v = integrate_semi_infinite(
        |t| match matern(alpha, t) {
            Ok(m) => m * m * t.powf(2.0 * lambda + 1.0),
            Err(_) => 0.0,
        },
        cfg.abs_tol.min(cfg.rel_tol),
    );
    if !v.is_finite() {
        return Err(Error::Divergence("l2_norm_sq: integral diverged".into()));
    }
    Ok(v)
}

/// Closed form of [`l2_norm_sq`]:
/// `√π Γ(α+λ+1) Γ(2α+λ+1) Γ(λ+1) / (4 Γ(α+λ+3/2))`.
pub fn l2_norm_sq_closed(alpha: f64, lambda: f64) -> Result<f64> {
    if !(lambda > -1.0 && 2.0 * alpha + lambda + 1.0 > 0.0) {
        return Err(Error::domain("l2_norm_sq: need lambda > -1, 2*alpha + lambda + 1 > 0"));
    }
    Ok((0.5 * PI.ln() + ln_gamma(alpha + lambda + 1.0) + ln_gamma(2.0 * alpha + lambda + 1.0)
        + ln_gamma(lambda + 1.0)
        - 4.0f64.ln()
        - ln_gamma(alpha + lambda + 1.5))
    .exp())
}

/// Moment lemma: `∫_0^∞ K_α(t) t^{β-1} dt = 2^{β-2} Γ((β+α)/2) Γ((β-α)/2)`
/// for `β > |α|`. Closed form.
pub fn moment_integral(alpha: f64, beta: f64) -> Result<f64> {
    if !(beta > alpha.abs()) {
        return Err(Error::domain("moment_integral: need beta > |alpha|"));
    }
    Ok(((beta - 2.0) * LN_2 + ln_gamma(0.5 * (beta + alpha)) + ln_gamma(0.5 * (beta - alpha)))
        .exp())
}

/// Quadrature cross-check of [`moment_integral`].
pub fn moment_integral_quadrature(alpha: f64, beta: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(beta > alpha.abs()) {
        return Err(Error::domain("moment_integral: need beta > |alpha|"));
    }
    cfg.validate()?;
    let v = integrate_semi_infinite(
        |t| match bessel_k(alpha, t) {
            Ok(k) => k * t.powf(beta - 1.0),
            Err(_) => 0.0,
        },
        cfg.abs_tol.min(cfg.rel_tol),
    );
    if !v.is_finite() {
        return Err(Error::Divergence("moment_integral: integral diverged".into()));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma_fn;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn imq_values() {
        let k = KernelSpec::Imq { beta: 1.0 };
        assert_eq!(kernel_eval(&k, 0.0).unwrap(), 1.0);
        assert_eq!(kernel_eval(&k, 1.0).unwrap(), 0.5);
        assert!(kernel_eval(&KernelSpec::Imq { beta: 0.0 }, 1.0).is_err());
    }

    #[test]
    fn bessel_potential_closed_forms_r3() {
        // n = 3: G_1(z) = e^{-z}/(4πz), G_2(z) = e^{-z}/(8π)
        for &z in &[0.3, 1.0, 2.5] {
            let g1 = kernel_eval(&KernelSpec::BesselPotential { alpha: 1.0, n: 3 }, z).unwrap();
            let e1 = (-z).exp() / (4.0 * PI * z);
            assert!((g1 - e1).abs() < 1e-13 * e1, "z={z}: {g1} vs {e1}");
            let g2 = kernel_eval(&KernelSpec::BesselPotential { alpha: 2.0, n: 3 }, z).unwrap();
            let e2 = (-z).exp() / (8.0 * PI);
            assert!((g2 - e2).abs() < 1e-13 * e2, "z={z}: {g2} vs {e2}");
        }
    }

    #[test]
    fn bessel_potential_closed_form_r1() {
        // n = 1: G_1(z) = e^{-z}/2
        for &z in &[0.0, 0.7, 3.0] {
            let g = kernel_eval(&KernelSpec::BesselPotential { alpha: 1.0, n: 1 }, z).unwrap();
            let e = 0.5 * (-z).exp();
            assert!((g - e).abs() < 1e-13 * e, "z={z}: {g} vs {e}");
        }
    }

    #[test]
    fn singular_kernels_reject_origin() {
        assert!(kernel_eval(&KernelSpec::BesselPotential { alpha: 1.0, n: 3 }, 0.0).is_err());
        assert!(kernel_eval(&KernelSpec::FKernel { alpha: -0.2, n: 1 }, 0.0).is_err());
        assert!(kernel_eval(&KernelSpec::BesselPotential { alpha: 2.0, n: 3 }, 0.0).is_ok());
    }

    #[test]
    fn f_kernel_is_shifted_bessel_potential() {
        // F_α = G_{α+n/2} identically
        for &(alpha, n) in &[(0.5f64, 1u32), (1.0, 3), (-0.2, 2)] {
            for &z in &[0.4, 1.0, 2.0] {
                let f = kernel_eval(&KernelSpec::FKernel { alpha, n }, z).unwrap();
                let g = kernel_eval(
                    &KernelSpec::BesselPotential { alpha: alpha + n as f64 / 2.0, n },
                    z,
                )
                .unwrap();
                assert!((f - g).abs() <= 1e-13 * g.abs(), "({alpha},{n}) z={z}");
            }
        }
    }

    #[test]
    fn f_alpha_lambda_equals_shifted_bessel_potential() {
        // same Fourier transform (1+|ξ|²)^{-α-λ-1} forces F_{α,λ} = G_{α+λ+1}
        for &(alpha, lambda, n) in &[(1.0, 0.5, 2u32), (0.5, 1.0, 3), (1.5, 0.0, 1)] {
            for &z in &[0.5, 1.0, 2.0] {
                let f = kernel_eval(&KernelSpec::FAlphaLambda { alpha, lambda, n }, z).unwrap();
                let g = kernel_eval(
                    &KernelSpec::BesselPotential { alpha: alpha + lambda + 1.0, n },
                    z,
                )
                .unwrap();
                assert!(
                    (f - g).abs() <= 1e-9 * g.abs(),
                    "({alpha},{lambda},{n}) z={z}: {f} vs {g}"
                );
            }
        }
    }

    #[test]
    fn fourier_of_bessel_potential_is_binomial() {
        for &(alpha, n) in &[(1.0f64, 1u32), (1.0, 3), (0.8, 2)] {
            let k = KernelSpec::BesselPotential { alpha, n };
            for &xi in &[0.0, 0.5, 1.0, 2.0] {
                let got = radial_fourier(&k, n, xi, &cfg()).unwrap();
                let expect = (1.0 + xi * xi).powf(-alpha);
                assert!(
                    (got - expect).abs() < 1e-7 * expect,
                    "({alpha},{n}) xi={xi}: {got} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn fourier_of_imq_is_scaled_bessel_potential() {
        // φ̂_β = (2π)ⁿ G_β; n = 1, β = 1: π e^{-|ξ|}
        let k = KernelSpec::Imq { beta: 1.0 };
        for &xi in &[0.3, 1.0, 2.0] {
            let got = radial_fourier(&k, 1, xi, &cfg()).unwrap();
            let expect = PI * (-xi).exp();
            assert!((got - expect).abs() < 1e-7 * expect, "xi={xi}: {got} vs {expect}");
        }
    }

    #[test]
    fn fourier_dimension_must_match() {
        let k = KernelSpec::BesselPotential { alpha: 1.0, n: 3 };
        assert!(radial_fourier(&k, 2, 1.0, &cfg()).is_err());
    }

    #[test]
    fn convolution_semigroup_r3() {
        for &z in &[0.5, 1.0, 2.0] {
            let diff = convolution_check(1.0, 1.0, 3, z, &cfg()).unwrap();
            let scale = (-z).exp() / (8.0 * PI);
            assert!(diff < 1e-8 * scale, "z={z}: {diff}");
        }
    }

    #[test]
    fn rkhs_inner_l2_is_doubled_order() {
        // (G_1(·-x), G_1(·-y))_{L²(ℝ³)} = G_2(|x-y|) = e^{-z}/(8π)
        let space = InnerProductSpace::L2 { n: 3 };
        let k = KernelSpec::BesselPotential { alpha: 1.0, n: 3 };
        let x = [0.0, 0.0, 0.0];
        let y = [1.0, 2.0, 2.0]; // |x-y| = 3
        let got = rkhs_inner(&space, &k, &x, &y).unwrap();
        let expect = (-3.0f64).exp() / (8.0 * PI);
        assert!((got - expect).abs() < 1e-13 * expect, "{got} vs {expect}");
    }

    #[test]
    fn rkhs_inner_reproducing_cases() {
        let x = [0.0, 0.0];
        let y = [0.6, 0.8]; // distance 1
        let sob = InnerProductSpace::Sobolev { alpha: 1.5, n: 2 };
        let g = KernelSpec::BesselPotential { alpha: 1.5, n: 2 };
        let got = rkhs_inner(&sob, &g, &x, &y).unwrap();
        let expect = kernel_eval(&g, 1.0).unwrap();
        assert!((got - expect).abs() < 1e-14);

        let ks = InnerProductSpace::KSpace { alpha: 1.0, n: 2 };
        let imq = KernelSpec::Imq { beta: 2.0 };
        let got = rkhs_inner(&ks, &imq, &x, &y).unwrap();
        assert!((got - 0.25).abs() < 1e-14);
    }

    #[test]
    fn rkhs_inner_rejects_uncatalogued_pairs() {
        let space = InnerProductSpace::L2 { n: 2 };
        let imq = KernelSpec::Imq { beta: 2.0 };
        assert!(rkhs_inner(&space, &imq, &[0.0, 0.0], &[1.0, 0.0]).is_err());
        // order mismatch
        let sob = InnerProductSpace::Sobolev { alpha: 1.5, n: 2 };
        let g = KernelSpec::BesselPotential { alpha: 2.0, n: 2 };
        assert!(rkhs_inner(&sob, &g, &[0.0, 0.0], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn l2_norm_matches_closed_form() {
        for &(alpha, lambda) in &[(1.0, 0.0), (0.5, -0.5), (2.0, 0.5), (-0.3, 1.0)] {
            let q = l2_norm_sq(alpha, lambda, &cfg()).unwrap();
            let c = l2_norm_sq_closed(alpha, lambda).unwrap();
            assert!((q - c).abs() <= 1e-8 * c, "({alpha},{lambda}): {q} vs {c}");
        }
    }

    #[test]
    fn moment_integral_cross_check() {
        for &(alpha, beta) in &[(0.5, 2.0), (1.0, 3.0), (0.0, 1.5), (2.0, 4.5)] {
            let c = moment_integral(alpha, beta).unwrap();
            let q = moment_integral_quadrature(alpha, beta, &cfg()).unwrap();
            assert!((q - c).abs() <= 1e-8 * c, "({alpha},{beta}): {q} vs {c}");
        }
        assert!(moment_integral(2.0, 1.0).is_err());
    }

    #[test]
    fn matern_profile_integral_identity() {
        // ∫ 𝓜_α(t) t^{d-1} dt = 2^{d-1} Γ(α+d/2) Γ(d/2) / Γ(α): follows from
        // the moment lemma after normalization
        for &(alpha, d) in &[(1.0f64, 1u32), (0.7, 2), (2.5, 3)] {
            let df = d as f64;
            let norm = (2.0f64).powf(1.0 - alpha) / gamma_fn(alpha).unwrap();
            let got = norm * moment_integral(alpha, alpha + df).unwrap();
            let expect = (2.0f64).powf(df - 1.0) * gamma_fn(alpha + df / 2.0).unwrap()
                * gamma_fn(df / 2.0).unwrap()
                / gamma_fn(alpha).unwrap();
            assert!((got - expect).abs() < 1e-12 * expect, "({alpha},{d})");
        }
    }

    #[test]
    fn complete_monotonicity_finite_differences() {
        // f(s) = 𝓜_α(√s) and (1+s)^{-β} are completely monotone in s = r²:
        // forward differences alternate in sign
        let h = 0.25;
        for kernel in [
            KernelSpec::MaternNorm { alpha: 1.3 },
            KernelSpec::Imq { beta: 2.0 },
        ] {
            let f = |s: f64| kernel_eval(&kernel, s.sqrt()).unwrap();
            let mut s0 = 0.1;
            while s0 <= 3.0 {
                for k in 0..=4u32 {
                    // Σ_j (-1)^j C(k,j) f(s+jh) = (-1)^k Δ^k f ≈ (-h)^k f^{(k)} ≥ 0
                    let mut acc = 0.0;
                    let mut binom = 1.0;
                    for j in 0..=k {
                        acc += binom * f(s0 + j as f64 * h);
                        binom *= -((k - j) as f64) / (j as f64 + 1.0);
                    }
                    assert!(acc >= -1e-12, "{kernel:?} k={k} s0={s0}: {acc}");
                }
                s0 += 0.6;
            }
        }
    }
}
