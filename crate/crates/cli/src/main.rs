//! `ms` — batch front end for the radial kernel library: evaluation tables,
//! Hankel–Schoenberg transforms, matrix certification, interpolation runs and
//! an identity verification suite, with machine-readable CSV/JSON output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad parameters,
//! 3 input validation failure, 4 solver failure.

// `!(x > 0.0)` is used deliberately: unlike `x <= 0.0` it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use clap::{Args, Parser, Subcommand};
use matern_schoenberg::hstransform::{hs_forward, hs_inverse, RadialDensity};
use matern_schoenberg::interpolate::{eval_interpolant, make_interpolant, solve_lagrange};
use matern_schoenberg::kernels::{
    convolution_check, kernel_eval, l2_norm_sq, l2_norm_sq_closed, moment_integral,
    moment_integral_quadrature, radial_fourier, InnerProductSpace, KernelSpec,
};
use matern_schoenberg::schoenberg::{
    assemble, build_point_set, certify, riesz_certificate, OperatorCertificate, PointSet,
};
use matern_schoenberg::specfun::matern;
use matern_schoenberg::{EvalGrid, QuadratureConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_BAD_PARAMS: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_SOLVER: u8 = 4;

#[derive(Parser)]
#[command(name = "ms", about = "Radial kernel tables, transforms, certificates and interpolation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate kernel values or radial Fourier transforms.
    Eval(EvalArgs),
    /// Forward or inverse Hankel–Schoenberg transform of the Matérn weight.
    Transform(TransformArgs),
    /// Certify boundedness/invertibility of a Schoenberg or Gramian matrix.
    Certify(CertifyArgs),
    /// Solve a Lagrange interpolation problem and tabulate the interpolant.
    Interpolate(InterpolateArgs),
    /// Run the built-in identity suite and report residuals.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct KernelFlags {
    /// Kernel family: matern | matern-norm | g | f | imq.
    #[arg(long)]
    kernel: String,
    /// Order parameter for matern/matern-norm/g/f.
    #[arg(long)]
    alpha: Option<f64>,
    /// Exponent for imq.
    #[arg(long)]
    beta: Option<f64>,
    /// Secondary order; selects the two-parameter f kernel when given.
    #[arg(long)]
    lambda: Option<f64>,
    /// Ambient dimension for g/f kernels.
    #[arg(long, default_value_t = 1)]
    n: u32,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    kernel: KernelFlags,
    /// Evaluation grid lo:hi:step.
    #[arg(long)]
    grid: Option<String>,
    /// Single radial argument.
    #[arg(long)]
    z: Option<f64>,
    /// Tabulate the radial Fourier transform instead of kernel values.
    #[arg(long)]
    fourier: bool,
    /// Single frequency argument (with --fourier).
    #[arg(long)]
    xi: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TransformArgs {
    /// Matérn order of the transform weight.
    #[arg(long)]
    alpha: f64,
    /// Transform order.
    #[arg(long, default_value_t = 0.0)]
    lambda: f64,
    /// Evaluation grid lo:hi:step.
    #[arg(long)]
    grid: String,
    /// Invert the binomial profile back to the weight density instead.
    #[arg(long)]
    inverse: bool,
    /// Quadrature tolerance (relative).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    kernel: KernelFlags,
    /// CSV file of points, one per row, columns = coordinates.
    #[arg(long)]
    points: Option<PathBuf>,
    /// Certify the Riesz property of translates in this space:
    /// l2 | sobolev | kspace.
    #[arg(long)]
    space: Option<String>,
    /// Seed for generating a point set when --points is absent.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Dense spectral evidence is reported for sets up to this size.
    #[arg(long = "spectral-N", default_value_t = 512)]
    spectral_n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InterpolateArgs {
    #[command(flatten)]
    kernel: KernelFlags,
    /// CSV file of interpolation nodes.
    #[arg(long)]
    points: PathBuf,
    /// Single-column CSV of samples aligned with the nodes.
    #[arg(long)]
    samples: PathBuf,
    /// 1-D evaluation grid lo:hi:step (defaults to the nodes themselves).
    #[arg(long)]
    grid: Option<String>,
    /// Diagonal regularization for inconclusively certified systems.
    #[arg(long, default_value_t = 0.0)]
    reg: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Tolerance scale factor applied to every identity (default 1).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure with a dedicated process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn params(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_BAD_PARAMS, message: msg.into() }
    }

    fn input(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: msg.into() }
    }

    fn solver(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_SOLVER, message: msg.into() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Transform(args) => cmd_transform(args),
        Command::Certify(args) => cmd_certify(args),
        Command::Interpolate(args) => cmd_interpolate(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ms: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Quadrature defaults, with `MS_QUAD_MAX_PANELS` overriding the panel cap.
fn quad_config() -> Result<QuadratureConfig, Failure> {
    let mut cfg = QuadratureConfig::default();
    if let Ok(v) = std::env::var("MS_QUAD_MAX_PANELS") {
        cfg.max_panels = v
            .parse()
            .map_err(|_| Failure::params(format!("MS_QUAD_MAX_PANELS: cannot parse '{v}'")))?;
        cfg.validate()
            .map_err(|e| Failure::params(format!("MS_QUAD_MAX_PANELS: {e}")))?;
    }
    Ok(cfg)
}

fn parse_grid(spec: &str) -> Result<EvalGrid, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Failure::params(format!("grid '{spec}': expected lo:hi:step")));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::params(format!("grid '{spec}': {e}")))?;
    EvalGrid::regular(nums[0], nums[1], nums[2])
        .map_err(|e| Failure::params(format!("grid '{spec}': {e}")))
}

/// The raw (unnormalized) Matérn function is exposed under the name
/// `matern`; everything else maps onto the kernel catalog.
enum EvalKernel {
    RawMatern { alpha: f64 },
    Catalog(KernelSpec),
}

fn parse_kernel(flags: &KernelFlags) -> Result<EvalKernel, Failure> {
    let need = |v: Option<f64>, name: &str| {
        v.ok_or_else(|| Failure::params(format!("kernel '{}' requires --{name}", flags.kernel)))
    };
    let spec = match flags.kernel.as_str() {
        "matern" => return Ok(EvalKernel::RawMatern { alpha: need(flags.alpha, "alpha")? }),
        "matern-norm" => KernelSpec::MaternNorm { alpha: need(flags.alpha, "alpha")? },
        "g" => KernelSpec::BesselPotential { alpha: need(flags.alpha, "alpha")?, n: flags.n },
        "f" => match flags.lambda {
            Some(lambda) => KernelSpec::FAlphaLambda {
                alpha: need(flags.alpha, "alpha")?,
                lambda,
                n: flags.n,
            },
            None => KernelSpec::FKernel { alpha: need(flags.alpha, "alpha")?, n: flags.n },
        },
        "imq" => KernelSpec::Imq { beta: need(flags.beta, "beta")? },
        other => {
            return Err(Failure::params(format!(
                "unknown kernel '{other}' (expected matern | matern-norm | g | f | imq)"
            )))
        }
    };
    spec.validate()
        .map_err(|e| Failure::params(format!("{e}")))?;
    Ok(EvalKernel::Catalog(spec))
}

/// Shortest round-trip decimal representation (17 significant digits max).
fn fmt(v: f64) -> String {
    format!("{v:?}")
}

fn write_output(out: &Option<PathBuf>, data: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, data)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            std::io::stdout()
                .write_all(data.as_bytes())
                .map_err(|e| Failure::input(format!("cannot write stdout: {e}")))
        }
    }
}

fn cmd_eval(args: EvalArgs) -> Result<(), Failure> {
    let cfg = quad_config()?;
    let kernel = parse_kernel(&args.kernel)?;
    let points: Vec<f64> = match (&args.grid, args.z, args.xi) {
        (Some(spec), None, None) => parse_grid(spec)?.points().to_vec(),
        (None, Some(z), None) if !args.fourier => vec![z],
        (None, None, Some(xi)) if args.fourier => vec![xi],
        _ => {
            return Err(Failure::params(
                "provide exactly one of --grid, --z (values) or --xi (with --fourier)",
            ))
        }
    };
    let mut csv = String::new();
    if args.fourier {
        let spec = match kernel {
            EvalKernel::Catalog(spec) => spec,
            EvalKernel::RawMatern { .. } => {
                return Err(Failure::params(
                    "--fourier needs a catalog kernel (matern-norm, g, f, imq)",
                ))
            }
        };
        let n = spec.dim().unwrap_or(args.kernel.n);
        csv.push_str("xi,fourier_value\n");
        for xi in points {
            let v = radial_fourier(&spec, n, xi, &cfg)
                .map_err(|e| Failure::params(format!("fourier transform failed: {e}")))?;
            csv.push_str(&format!("{},{}\n", fmt(xi), fmt(v)));
        }
    } else {
        csv.push_str("z,value\n");
        for z in points {
            let v = match &kernel {
                EvalKernel::RawMatern { alpha } => matern(*alpha, z),
                EvalKernel::Catalog(spec) => kernel_eval(spec, z),
            }
            .map_err(|e| Failure::params(format!("evaluation failed at z = {z}: {e}")))?;
            csv.push_str(&format!("{},{}\n", fmt(z), fmt(v)));
        }
    }
    write_output(&args.out, &csv)
}

fn cmd_transform(args: TransformArgs) -> Result<(), Failure> {
    let mut cfg = quad_config()?;
    if let Some(tol) = args.tol {
        if !(tol > 0.0) {
            return Err(Failure::params("--tol must be > 0"));
        }
        cfg.rel_tol = tol;
    }
    let grid = parse_grid(&args.grid)?;
    let mut csv = String::new();
    if args.inverse {
        // invert the binomial profile (1+r^2)^{-alpha-lambda-1}; the result
        // is the Matérn weight density
        let (alpha, lambda) = (args.alpha, args.lambda);
        let grid = EvalGrid::new(grid.points().iter().cloned().filter(|&t| t > 0.0).collect())
            .map_err(|e| Failure::params(format!("{e}")))?;
        let res = hs_inverse(
            move |r: f64| (1.0 + r * r).powf(-alpha - lambda - 1.0),
            lambda,
            &grid,
            &cfg,
        )
        .map_err(|e| Failure::params(format!("inverse transform failed: {e}")))?;
        csv.push_str("t,density\n");
        for (t, v) in res.values {
            csv.push_str(&format!("{},{}\n", fmt(t), fmt(v)));
        }
    } else {
        let nu = RadialDensity::matern_weight(args.alpha, args.lambda)
            .map_err(|e| Failure::params(format!("{e}")))?;
        let res = hs_forward(&nu, args.lambda, &grid, &cfg)
            .map_err(|e| Failure::params(format!("forward transform failed: {e}")))?;
        csv.push_str("r,value\n");
        for (r, v) in res.values {
            csv.push_str(&format!("{},{}\n", fmt(r), fmt(v)));
        }
    }
    write_output(&args.out, &csv)
}

fn read_points(path: &PathBuf) -> Result<Vec<Vec<f64>>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|c| c.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| {
                Failure::input(format!("{}:{}: {e}", path.display(), lineno + 1))
            })?;
        rows.push(row);
    }
    Ok(rows)
}

/// Deterministic jittered-lattice point set used when no points file is given.
fn generated_points(n: u32, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = n.max(1) as usize;
    let side: usize = match dim {
        1 => 64,
        2 => 8,
        _ => 4,
    };
    let total = side.pow(dim as u32);
    (0..total)
        .map(|idx| {
            let mut rem = idx;
            (0..dim)
                .map(|_| {
                    let cell = (rem % side) as f64;
                    rem /= side;
                    cell + rng.gen_range(-0.1..0.1)
                })
                .collect()
        })
        .collect()
}

fn certificate_json(cert: &OperatorCertificate, x: &PointSet) -> Value {
    let (lmin, lmax) = match cert.spectral_evidence {
        Some((a, b)) => (json!(a), json!(b)),
        None => (Value::Null, Value::Null),
    };
    json!({
        "delta": x.separation(),
        "d": x.effective_dim(),
        "n": x.ambient_dim(),
        "size": x.len(),
        "norm_bound": cert.norm_bound,
        "threshold": cert.invertibility_threshold,
        "decision": cert.decision.as_str(),
        "lambda_min": lmin,
        "lambda_max": lmax,
        "rule": cert.basis_for_decision,
    })
}

fn cmd_certify(args: CertifyArgs) -> Result<(), Failure> {
    let kernel = match parse_kernel(&args.kernel)? {
        EvalKernel::Catalog(spec) => spec,
        EvalKernel::RawMatern { .. } => {
            return Err(Failure::params(
                "certify needs a catalog kernel (matern-norm, g, f, imq)",
            ))
        }
    };
    let coords = match &args.points {
        Some(path) => read_points(path)?,
        None => generated_points(args.kernel.n, args.seed),
    };
    let x = build_point_set(coords, 1e-10).map_err(|e| Failure::input(format!("{e}")))?;
    let cert = match &args.space {
        None => certify(&kernel, &x, args.spectral_n),
        Some(name) => {
            let n = x.ambient_dim() as u32;
            let space = match name.as_str() {
                "l2" => InnerProductSpace::L2 { n },
                "sobolev" => match kernel {
                    KernelSpec::BesselPotential { alpha, .. } => {
                        InnerProductSpace::Sobolev { alpha, n }
                    }
                    _ => return Err(Failure::params("--space sobolev needs --kernel g")),
                },
                "kspace" => match kernel {
                    KernelSpec::Imq { beta } => InnerProductSpace::KSpace {
                        alpha: beta - n as f64 / 2.0,
                        n,
                    },
                    _ => return Err(Failure::params("--space kspace needs --kernel imq")),
                },
                other => {
                    return Err(Failure::params(format!(
                        "unknown space '{other}' (expected l2 | sobolev | kspace)"
                    )))
                }
            };
            riesz_certificate(&space, &kernel, &x, args.spectral_n)
        }
    }
    .map_err(|e| Failure::params(format!("{e}")))?;
    let mut text = serde_json::to_string_pretty(&certificate_json(&cert, &x)).unwrap();
    text.push('\n');
    write_output(&args.out, &text)
}

fn cmd_interpolate(args: InterpolateArgs) -> Result<(), Failure> {
    let kernel = match parse_kernel(&args.kernel)? {
        EvalKernel::Catalog(spec) => spec,
        EvalKernel::RawMatern { .. } => {
            return Err(Failure::params(
                "interpolate needs a catalog kernel (matern-norm, g, f, imq)",
            ))
        }
    };
    let coords = read_points(&args.points)?;
    let samples_rows = read_points(&args.samples)?;
    let mut samples = Vec::with_capacity(samples_rows.len());
    for row in &samples_rows {
        if row.len() != 1 {
            return Err(Failure::solver(
                "samples file must have exactly one column",
            ));
        }
        samples.push(row[0]);
    }
    if samples.len() != coords.len() {
        return Err(Failure::solver(format!(
            "{} nodes but {} samples",
            coords.len(),
            samples.len()
        )));
    }
    let x = build_point_set(coords, 1e-10).map_err(|e| Failure::input(format!("{e}")))?;
    let s = assemble(&kernel, &x).map_err(|e| Failure::params(format!("{e}")))?;
    let basis = solve_lagrange(&s, args.reg).map_err(|e| {
        Failure::solver(format!("{e}; run `ms certify` on this point set"))
    })?;
    let solve_residual = basis.solve_residual();
    let interp = make_interpolant(basis, samples, x.clone())
        .map_err(|e| Failure::solver(format!("{e}")))?;
    let eval_points: Vec<Vec<f64>> = match &args.grid {
        Some(spec) => {
            if x.ambient_dim() != 1 {
                return Err(Failure::params(
                    "--grid evaluation requires 1-D nodes; omit it to evaluate at the nodes",
                ));
            }
            parse_grid(spec)?.points().iter().map(|&t| vec![t]).collect()
        }
        None => x.points().to_vec(),
    };
    let mut csv = format!(
        "# kernel={:?} reg={} solve_residual={}\n",
        kernel,
        fmt(args.reg),
        fmt(solve_residual)
    );
    let coord_header: Vec<String> =
        (0..x.ambient_dim()).map(|k| format!("x{k}")).collect();
    csv.push_str(&format!("{},value\n", coord_header.join(",")));
    for p in eval_points {
        let v = eval_interpolant(&interp, &p)
            .map_err(|e| Failure::solver(format!("{e}")))?;
        let coords: Vec<String> = p.iter().map(|&c| fmt(c)).collect();
        csv.push_str(&format!("{},{}\n", coords.join(","), fmt(v)));
    }
    write_output(&args.out, &csv)
}

struct IdentityCheck {
    id: &'static str,
    residual: f64,
    tolerance: f64,
}

fn verify_suite(cfg: &QuadratureConfig) -> Result<Vec<IdentityCheck>, Failure> {
    use matern_schoenberg::hstransform::parseval_residual;
    let fail = |e| Failure::params(format!("verify: {e}"));
    let mut checks = Vec::new();

    // half-integer closed form: M_{1/2}(z) = sqrt(pi/2) e^{-z}
    let mut worst = 0.0f64;
    for k in 1..=40 {
        let z = 0.5 * k as f64;
        let expect = (std::f64::consts::PI / 2.0).sqrt() * (-z).exp();
        let v = matern(0.5, z).map_err(fail)?;
        worst = worst.max((v - expect).abs() / expect);
    }
    checks.push(IdentityCheck { id: "matern-half-integer", residual: worst, tolerance: 1e-12 });

    // forward transform of the Matérn weight is the binomial profile
    let nu = RadialDensity::matern_weight(1.0, 0.0).map_err(fail)?;
    let grid = EvalGrid::new(vec![1.0]).map_err(fail)?;
    let res = hs_forward(&nu, 0.0, &grid, cfg).map_err(fail)?;
    let expect = 0.25;
    checks.push(IdentityCheck {
        id: "transform-forward-binomial",
        residual: (res.values[0].1 - expect).abs() / expect,
        tolerance: 1e-6,
    });

    // inverse transform of the binomial profile recovers the Matérn weight
    // density K_1(t) t^2 / 2
    let grid = EvalGrid::new(vec![1.0]).map_err(fail)?;
    let res = hs_inverse(|r: f64| (1.0 + r * r).powi(-2), 0.0, &grid, cfg).map_err(fail)?;
    let expect = matern(1.0, 1.0).map_err(fail)? / 2.0;
    checks.push(IdentityCheck {
        id: "transform-inverse-matern",
        residual: (res.values[0].1 - expect).abs() / expect,
        tolerance: 1e-5,
    });

    // Fourier transform of the Bessel potential kernel in R^3
    let g1 = KernelSpec::BesselPotential { alpha: 1.0, n: 3 };
    let v = radial_fourier(&g1, 3, 1.0, cfg).map_err(fail)?;
    checks.push(IdentityCheck {
        id: "fourier-bessel-potential",
        residual: (v - 0.5).abs() / 0.5,
        tolerance: 1e-6,
    });

    // Fourier transform of the two-parameter kernel in R^2
    let f11 = KernelSpec::FAlphaLambda { alpha: 1.0, lambda: 1.0, n: 2 };
    let v = radial_fourier(&f11, 2, 1.0, cfg).map_err(fail)?;
    checks.push(IdentityCheck {
        id: "fourier-f-two-parameter",
        residual: (v - 0.125).abs() / 0.125,
        tolerance: 1e-6,
    });

    // Parseval relation for the exponential profile
    let r = parseval_residual(
        |t: f64| (std::f64::consts::PI / 2.0).sqrt() * (-t).exp(),
        |t: f64| (std::f64::consts::PI / 2.0).sqrt() * (-t).exp(),
        -0.5,
        cfg,
    )
    .map_err(fail)?;
    checks.push(IdentityCheck { id: "parseval-exponential", residual: r, tolerance: 1e-6 });

    // convolution semigroup identity in R^3 at z = 1
    let scale = kernel_eval(&KernelSpec::BesselPotential { alpha: 2.0, n: 3 }, 1.0)
        .map_err(fail)?;
    let r = convolution_check(1.0, 1.0, 3, 1.0, cfg).map_err(fail)?;
    checks.push(IdentityCheck {
        id: "convolution-semigroup-r3",
        residual: r / scale,
        tolerance: 1e-6,
    });

    // Gamma moment lemma
    let closed = moment_integral(0.7, 2.4).map_err(fail)?;
    let quad = moment_integral_quadrature(0.7, 2.4, cfg).map_err(fail)?;
    checks.push(IdentityCheck {
        id: "moment-gamma-lemma",
        residual: (quad - closed).abs() / closed,
        tolerance: 1e-8,
    });

    // squared L2 norm lemma
    let closed = l2_norm_sq_closed(1.2, 0.3).map_err(fail)?;
    let quad = l2_norm_sq(1.2, 0.3, cfg).map_err(fail)?;
    checks.push(IdentityCheck {
        id: "l2-norm-gamma-lemma",
        residual: (quad - closed).abs() / closed,
        tolerance: 1e-8,
    });

    Ok(checks)
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let cfg = quad_config()?;
    let scale = match args.tol {
        Some(t) if t > 0.0 => t,
        Some(_) => return Err(Failure::params("--tol must be > 0")),
        None => 1.0,
    };
    let checks = verify_suite(&cfg)?;
    let mut all_pass = true;
    let items: Vec<Value> = checks
        .iter()
        .map(|c| {
            let tol = c.tolerance * scale;
            let pass = c.residual <= tol;
            all_pass &= pass;
            json!({
                "identity": c.id,
                "residual": c.residual,
                "tolerance": tol,
                "pass": pass,
            })
        })
        .collect();
    let report = json!({ "all_pass": all_pass, "checks": items });
    let mut text = serde_json::to_string_pretty(&report).unwrap();
    text.push('\n');
    write_output(&args.out, &text)?;
    if all_pass {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VERIFY_FAILED,
            message: "one or more identities exceeded tolerance".into(),
        })
    }
}
