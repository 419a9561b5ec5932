//! Lagrange-type radial basis interpolation: solve the truncated kernel
//! system for cardinal functions `u_j*` with `u_j*(x_k) = δ_{jk}` and
//! evaluate the interpolating functional `A_X(f) = Σ_j f(x_j) u_j*`.

use crate::kernels::{kernel_eval, KernelSpec};
use crate::schoenberg::{assemble, PointSet, SchoenbergMatrixView};
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Cardinal-function coefficients over a kernel matrix: row `j` of
/// `coefficients` solves `(S + reg·I) c_j = e_j`.
#[derive(Debug, Clone)]
pub struct LagrangeBasis {
    source: SchoenbergMatrixView,
    coefficients: DMatrix<f64>,
    solve_residual: f64,
}

impl LagrangeBasis {
    pub fn source(&self) -> &SchoenbergMatrixView {
        &self.source
    }

    pub fn coefficients(&self) -> &DMatrix<f64> {
        &self.coefficients
    }

    /// `max_j ‖S c_j − e_j‖_∞` over the unregularized matrix.
    pub fn solve_residual(&self) -> f64 {
        self.solve_residual
    }
}

/// Solves the truncated cardinal system for all unit vectors at once.
///
/// Uses a symmetric positive-definite factorization first (the certified
/// matrices are positive definite) and falls back to an LU factorization of
/// the shifted matrix. `reg ≥ 0` is a diagonal shift for matrices whose
/// certificate was not conclusive.
pub fn solve_lagrange(s: &SchoenbergMatrixView, reg: f64) -> Result<LagrangeBasis> {
    if !(reg >= 0.0) {
        return Err(Error::domain("solve_lagrange: need reg >= 0"));
    }
    let n = s.size();
    let mut shifted = s.entries().clone();
    for j in 0..n {
        shifted[(j, j)] += reg;
    }
    let inverse = match shifted.clone().cholesky() {
        Some(chol) => chol.inverse(),
        None => match shifted.clone().lu().try_inverse() {
            Some(inv) => inv,
            None => {
                return Err(Error::Singular(
                    "solve_lagrange: kernel matrix could not be factorized; run the \
                     operator certificate on the point set, or pass reg > 0"
                        .into(),
                ));
            }
        },
    };
    if inverse.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular(
            "solve_lagrange: factorization produced non-finite coefficients; run the \
             operator certificate on the point set, or pass reg > 0"
                .into(),
        ));
    }
    let residual_matrix = s.entries() * &inverse - DMatrix::identity(n, n);
    let solve_residual = residual_matrix.abs().max();
    Ok(LagrangeBasis {
        source: s.clone(),
        // rows of the coefficient matrix are the cardinal coefficient vectors;
        // the inverse is symmetric, so rows and columns agree up to rounding
        coefficients: inverse,
        solve_residual,
    })
}

/// An interpolant `A_X(f)` determined by samples of `f` on the nodes.
#[derive(Debug, Clone)]
pub struct Interpolant {
    basis: LagrangeBasis,
    samples: Vec<f64>,
    kernel: KernelSpec,
    nodes: PointSet,
}

impl Interpolant {
    pub fn basis(&self) -> &LagrangeBasis {
        &self.basis
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn nodes(&self) -> &PointSet {
        &self.nodes
    }
}

/// Bundles a solved basis with node samples into an interpolant.
pub fn make_interpolant(
    basis: LagrangeBasis,
    samples: Vec<f64>,
    nodes: PointSet,
) -> Result<Interpolant> {
    if samples.len() != basis.source.size() || nodes.len() != basis.source.size() {
        return Err(Error::validation(
            "make_interpolant: samples, nodes and matrix size must agree",
        ));
    }
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::validation("make_interpolant: samples must be finite"));
    }
    let kernel = *basis.source.kernel();
    Ok(Interpolant {
        basis,
        samples,
        kernel,
        nodes,
    })
}

/// Evaluates `A_X(f)(x) = Σ_j f(x_j) u_j*(x)` with
/// `u_j*(x) = Σ_k c_{j,k} φ(|x − x_k|)`.
pub fn eval_interpolant(interp: &Interpolant, x: &[f64]) -> Result<f64> {
    let n = interp.nodes.ambient_dim();
    if x.len() != n {
        return Err(Error::validation(
            "eval_interpolant: point dimension must match the nodes'",
        ));
    }
    let phi = DVector::from_iterator(
        interp.nodes.len(),
        interp
            .nodes
            .points()
            .iter()
            .map(|p| {
                let z = p
                    .iter()
                    .zip(x)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                kernel_eval(&interp.kernel, z).unwrap_or(0.0)
            }),
    );
    let f = DVector::from_column_slice(&interp.samples);
    Ok(f.dot(&(interp.basis.coefficients() * phi)))
}

/// `max_{j,k} |u_j*(x_k) − δ_{jk}|` — how close the basis is to cardinal.
pub fn cardinality_check(
    basis: &LagrangeBasis,
    x: &PointSet,
    kernel: &KernelSpec,
) -> Result<f64> {
    let s = assemble(kernel, x)?;
    if s.size() != basis.source.size() {
        return Err(Error::validation(
            "cardinality_check: point set size must match the basis",
        ));
    }
    let dev = basis.coefficients() * s.entries() - DMatrix::identity(s.size(), s.size());
    Ok(dev.abs().max())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schoenberg::build_point_set;

    fn pts1(xs: &[f64]) -> PointSet {
        build_point_set(xs.iter().map(|&x| vec![x]).collect(), 1e-10).unwrap()
    }

    #[test]
    fn scalar_system() {
        let s = SchoenbergMatrixView::from_entries(
            KernelSpec::MaternNorm { alpha: 0.5 },
            DMatrix::from_element(1, 1, 1.0),
        )
        .unwrap();
        let basis = solve_lagrange(&s, 0.0).unwrap();
        assert!((basis.coefficients()[(0, 0)] - 1.0).abs() < 1e-15);
        assert!(basis.solve_residual() < 1e-15);
    }

    #[test]
    fn two_point_hand_case() {
        let x = pts1(&[0.0, 1.0]);
        let kernel = KernelSpec::MaternNorm { alpha: 0.5 };
        let s = assemble(&kernel, &x).unwrap();
        let basis = solve_lagrange(&s, 0.0).unwrap();
        let e = (-1.0f64).exp();
        let den = 1.0 - e * e;
        assert!((basis.coefficients()[(0, 0)] - 1.0 / den).abs() < 1e-13);
        assert!((basis.coefficients()[(0, 1)] + e / den).abs() < 1e-13);
        assert!(cardinality_check(&basis, &x, &kernel).unwrap() < 1e-13);
    }

    #[test]
    fn residual_small_for_separated_sets() {
        let xs: Vec<f64> = (0..200).map(|k| 4.5 * k as f64).collect();
        let x = pts1(&xs);
        let s = assemble(&KernelSpec::MaternNorm { alpha: 0.5 }, &x).unwrap();
        let basis = solve_lagrange(&s, 0.0).unwrap();
        assert!(basis.solve_residual() < 1e-10, "{}", basis.solve_residual());
        // the inverse of a symmetric matrix is symmetric
        let c = basis.coefficients();
        let asym = (c - c.transpose()).abs().max();
        assert!(asym < 1e-9, "{asym}");
    }

    #[test]
    fn node_reproduction_and_constants() {
        let xs: Vec<f64> = (0..40).map(|k| 0.37 * k as f64).collect();
        let x = pts1(&xs);
        let kernel = KernelSpec::MaternNorm { alpha: 1.5 };
        let s = assemble(&kernel, &x).unwrap();
        let basis = solve_lagrange(&s, 0.0).unwrap();
        let samples: Vec<f64> = xs.iter().map(|&t| (0.3 * t).sin()).collect();
        let interp =
            make_interpolant(basis.clone(), samples.clone(), x.clone()).unwrap();
        for (j, &t) in xs.iter().enumerate() {
            let v = eval_interpolant(&interp, &[t]).unwrap();
            assert!((v - samples[j]).abs() < 1e-9, "node {j}: {v} vs {}", samples[j]);
        }
        let ones = make_interpolant(basis, vec![1.0; xs.len()], x).unwrap();
        for &t in &xs {
            let v = eval_interpolant(&ones, &[t]).unwrap();
            assert!((v - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn self_interpolation_error_decreases_under_refinement() {
        // f(x) = kernel(|x - 0.77|) sampled on a refining grid over [0, 4]
        // (0.77 is never a node): the error at a fixed off-node point must
        // go down as the grid refines
        let kernel = KernelSpec::MaternNorm { alpha: 1.0 };
        let target = |t: f64| kernel_eval(&kernel, (t - 0.77).abs()).unwrap();
        let probe = 1.9;
        let mut last_err = f64::INFINITY;
        for &m in &[9usize, 17, 33] {
            let h = 4.0 / (m - 1) as f64;
            let xs: Vec<f64> = (0..m).map(|k| h * k as f64).collect();
            let x = pts1(&xs);
            let s = assemble(&kernel, &x).unwrap();
            let basis = solve_lagrange(&s, 0.0).unwrap();
            let samples: Vec<f64> = xs.iter().map(|&t| target(t)).collect();
            let interp = make_interpolant(basis, samples, x).unwrap();
            let err = (eval_interpolant(&interp, &[probe]).unwrap() - target(probe)).abs();
            assert!(err < last_err, "error did not decrease: {err} vs {last_err}");
            last_err = err;
        }
    }

    #[test]
    fn regularization_trades_cardinality() {
        let x = pts1(&[0.0, 0.8, 1.6, 2.4]);
        let kernel = KernelSpec::Imq { beta: 1.0 };
        let s = assemble(&kernel, &x).unwrap();
        let exact = solve_lagrange(&s, 0.0).unwrap();
        let loose = solve_lagrange(&s, 1e-3).unwrap();
        let looser = solve_lagrange(&s, 1e-1).unwrap();
        let d0 = cardinality_check(&exact, &x, &kernel).unwrap();
        let d1 = cardinality_check(&loose, &x, &kernel).unwrap();
        let d2 = cardinality_check(&looser, &x, &kernel).unwrap();
        assert!(d0 < 1e-12);
        assert!(d1 > d0 && d2 > d1, "{d0} {d1} {d2}");
    }

    #[test]
    fn rejects_mismatched_sizes_and_negative_reg() {
        let x = pts1(&[0.0, 1.0, 2.0]);
        let s = assemble(&KernelSpec::Imq { beta: 1.0 }, &x).unwrap();
        assert!(solve_lagrange(&s, -1.0).is_err());
        let basis = solve_lagrange(&s, 0.0).unwrap();
        assert!(make_interpolant(basis.clone(), vec![1.0, 2.0], x.clone()).is_err());
        assert!(make_interpolant(basis.clone(), vec![1.0, f64::NAN, 3.0], x.clone()).is_err());
        let interp = make_interpolant(basis, vec![1.0, 2.0, 3.0], x).unwrap();
        assert!(eval_interpolant(&interp, &[0.0, 0.0]).is_err());
    }

    #[test]
    fn coefficient_norm_bounded_by_spectral_evidence() {
        let xs: Vec<f64> = (0..60).map(|k| 4.2 * k as f64).collect();
        let x = pts1(&xs);
        let kernel = KernelSpec::MaternNorm { alpha: 0.5 };
        let cert = crate::schoenberg::certify(&kernel, &x, 512).unwrap();
        let (lmin, _) = cert.spectral_evidence.unwrap();
        let s = assemble(&kernel, &x).unwrap();
        let basis = solve_lagrange(&s, 0.0).unwrap();
        // ||S^{-1}||_inf <= sqrt(N) ||S^{-1}||_2 = sqrt(N)/lambda_min
        let inf_norm = (0..xs.len())
            .map(|j| basis.coefficients().row(j).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0f64, f64::max);
        let cap = (xs.len() as f64).sqrt() / lmin;
        assert!(inf_norm <= cap * (1.0 + 1e-12), "{inf_norm} vs {cap}");
    }
}
