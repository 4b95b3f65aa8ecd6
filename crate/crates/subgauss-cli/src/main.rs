//! `subgauss` — optimal sub-Gaussian proxy variances from the command line.
//!
//! Exit codes: 0 on success, 1 on usage or domain errors, 2 on numerical
//! or I/O failures (including failed verification checks).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use subgauss::sweep::{run_sweep, Family, GridSpec, SweepSpec};
use subgauss::verify::{verify_bernoulli, verify_beta, verify_dirichlet, VerifyOptions};
use subgauss::{
    bernoulli, beta, dirichlet, BernoulliParams, BetaParams, DirichletParams, Error, SolverConfig,
};

#[derive(Parser)]
#[command(
    name = "subgauss",
    version,
    about = "Optimal sub-Gaussian proxy variances for Beta, Bernoulli and Dirichlet distributions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the optimal proxy variance for one distribution
    Compute {
        /// Distribution spec: beta:A,B | bernoulli:MU | dirichlet:A1,A2,...
        spec: String,
        /// Emit a machine-readable JSON object instead of the table
        #[arg(long)]
        json: bool,
    },
    /// Sweep a parameter grid and write plot-ready CSV
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// α+β for the fixed-sum family
        #[arg(long)]
        fixed_sum: Option<f64>,
        #[arg(long)]
        min: f64,
        #[arg(long)]
        max: f64,
        #[arg(long)]
        count: usize,
        /// Space the grid logarithmically
        #[arg(long)]
        log: bool,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the verification suite against a distribution
    Verify {
        /// Distribution spec: beta:A,B | bernoulli:MU | dirichlet:A1,A2,...
        spec: String,
        /// Include the Monte Carlo checks (1e6 samples)
        #[arg(long)]
        full: bool,
        /// Closed-form and oracle checks only (the default)
        #[arg(long, conflicts_with = "full")]
        fast: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Emit the report as a JSON array of check objects
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// Beta(μS, (1−μ)S) at fixed S, μ on the grid
    BetaFixedSum,
    /// Beta(α, β) over the grid × grid square
    BetaGrid,
    /// Bernoulli(μ), μ on the grid
    Bernoulli,
}

impl From<FamilyArg> for Family {
    fn from(arg: FamilyArg) -> Self {
        match arg {
            FamilyArg::BetaFixedSum => Family::BetaFixedSum,
            FamilyArg::BetaGrid => Family::BetaGrid,
            FamilyArg::Bernoulli => Family::Bernoulli,
        }
    }
}

enum Spec {
    Beta(f64, f64),
    Bernoulli(f64),
    Dirichlet(Vec<f64>),
}

fn parse_spec(text: &str) -> Result<Spec, String> {
    let (name, rest) = text
        .split_once(':')
        .ok_or_else(|| format!("expected NAME:PARAMS, got `{text}`"))?;
    let values: Vec<f64> = rest
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| format!("`{v}` is not a number"))
        })
        .collect::<Result<_, _>>()?;
    match name {
        "beta" => {
            if values.len() != 2 {
                return Err(format!("beta takes 2 parameters, got {}", values.len()));
            }
            Ok(Spec::Beta(values[0], values[1]))
        }
        "bernoulli" => {
            if values.len() != 1 {
                return Err(format!("bernoulli takes 1 parameter, got {}", values.len()));
            }
            Ok(Spec::Bernoulli(values[0]))
        }
        "dirichlet" => {
            if values.len() < 2 {
                return Err(format!(
                    "dirichlet takes at least 2 parameters, got {}",
                    values.len()
                ));
            }
            Ok(Spec::Dirichlet(values))
        }
        other => Err(format!(
            "unknown distribution `{other}` (expected beta, bernoulli or dirichlet)"
        )),
    }
}

/// Everything `compute` prints, for any of the three distributions.
struct ComputedPoint {
    distribution: &'static str,
    label: String,
    json_params: serde_json::Value,
    mu: f64,
    variance: f64,
    sigma2_opt: f64,
    simple_bound: f64,
    kearns_saul: f64,
    x0: f64,
    t_opt: f64,
    branch: String,
    residual: f64,
    iterations: u32,
}

fn compute_point(spec: &Spec) -> Result<ComputedPoint, Error> {
    let cfg = SolverConfig::default();
    match spec {
        Spec::Beta(a, b) => {
            let params = BetaParams::new(*a, *b)?;
            let r = beta::optimal_proxy_variance(&params, &cfg)?;
            Ok(ComputedPoint {
                distribution: "beta",
                label: format!("beta({a}, {b})"),
                json_params: serde_json::json!({ "alpha": a, "beta": b }),
                mu: params.mean(),
                variance: beta::variance(&params),
                sigma2_opt: r.sigma2_opt,
                simple_bound: beta::simple_upper_bound(&params),
                kearns_saul: bernoulli::kearns_saul_proxy(params.mean()),
                x0: r.x0,
                t_opt: r.t_opt,
                branch: branch_name(r.branch).to_string(),
                residual: r.residual,
                iterations: r.iterations,
            })
        }
        Spec::Bernoulli(mu) => {
            let params = BernoulliParams::new(*mu)?;
            let sigma2 = bernoulli::bernoulli_optimal_proxy(&params);
            let mu = params.mu();
            let var = mu * (1.0 - mu);
            let x0 = if (mu - 0.5).abs() < 1e-9 {
                0.0
            } else {
                -2.0 * (mu / (1.0 - mu)).ln()
            };
            let t_opt = if (mu - 0.5).abs() < 1e-9 {
                1.0 / 3.0
            } else {
                (0.25 - sigma2) / (0.25 - var)
            };
            Ok(ComputedPoint {
                distribution: "bernoulli",
                label: format!("bernoulli({mu})"),
                json_params: serde_json::json!({ "mu": mu }),
                mu,
                variance: var,
                sigma2_opt: sigma2,
                simple_bound: 0.25,
                kearns_saul: bernoulli::kearns_saul_proxy(mu),
                x0,
                t_opt,
                branch: "closed_form".to_string(),
                residual: 0.0,
                iterations: 0,
            })
        }
        Spec::Dirichlet(alphas) => {
            let params = DirichletParams::new(alphas.clone())?;
            let reduced = params.reduced_pair()?;
            let r = dirichlet::dirichlet_optimal_proxy(&params, &cfg)?;
            Ok(ComputedPoint {
                distribution: "dirichlet",
                label: format!(
                    "dirichlet({alphas:?}) -> beta({}, {})",
                    reduced.alpha(),
                    reduced.beta()
                ),
                json_params: serde_json::json!({
                    "alphas": alphas,
                    "reduced_alpha": reduced.alpha(),
                    "reduced_beta": reduced.beta(),
                }),
                mu: reduced.mean(),
                variance: beta::variance(&reduced),
                sigma2_opt: r.sigma2_opt,
                simple_bound: beta::simple_upper_bound(&reduced),
                kearns_saul: bernoulli::kearns_saul_proxy(reduced.mean()),
                x0: r.x0,
                t_opt: r.t_opt,
                branch: branch_name(r.branch).to_string(),
                residual: r.residual,
                iterations: r.iterations,
            })
        }
    }
}

fn branch_name(branch: beta::Branch) -> &'static str {
    match branch {
        beta::Branch::Symmetric => "symmetric",
        beta::Branch::Transcendental => "transcendental",
        beta::Branch::BernoulliLimit => "bernoulli_limit",
    }
}

fn print_point(point: &ComputedPoint, json: bool) {
    if json {
        let obj = serde_json::json!({
            "distribution": point.distribution,
            "params": point.json_params,
            "mu": point.mu,
            "variance": point.variance,
            "sigma2_opt": point.sigma2_opt,
            "simple_bound": point.simple_bound,
            "kearns_saul": point.kearns_saul,
            "x0": point.x0,
            "t_opt": point.t_opt,
            "branch": point.branch,
            "residual": point.residual,
            "iterations": point.iterations,
        });
        println!("{obj}");
    } else {
        println!("{:<14} {}", "distribution", point.label);
        println!("{:<14} {:.6}", "mean", point.mu);
        println!("{:<14} {:.6}", "variance", point.variance);
        println!("{:<14} {:.6}", "sigma2_opt", point.sigma2_opt);
        println!("{:<14} {:.6}", "simple_bound", point.simple_bound);
        println!("{:<14} {:.6}", "kearns_saul", point.kearns_saul);
        println!("{:<14} {:.6}", "x0", point.x0);
        println!("{:<14} {:.6}", "t_opt", point.t_opt);
        println!("{:<14} {}", "branch", point.branch);
        println!("{:<14} {:.3e}", "residual", point.residual);
        println!("{:<14} {}", "iterations", point.iterations);
    }
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(1)
}

fn library_error(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    match err {
        Error::InvalidParameter(_) | Error::EmptyOrFullSubset { .. } | Error::NotOnSimplex(_) => {
            ExitCode::from(1)
        }
        Error::NonConvergence { .. }
        | Error::BracketFailure { .. }
        | Error::IterationLimit { .. }
        | Error::BoundaryHit { .. } => ExitCode::from(2),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap's own exit code for bad usage is 2; the contract here is 1
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Compute { spec, json } => {
            let spec = match parse_spec(&spec) {
                Ok(s) => s,
                Err(m) => return usage_error(&m),
            };
            match compute_point(&spec) {
                Ok(point) => {
                    print_point(&point, json);
                    ExitCode::SUCCESS
                }
                Err(err) => library_error(&err),
            }
        }
        Command::Sweep {
            family,
            fixed_sum,
            min,
            max,
            count,
            log,
            out,
        } => {
            let grid = match GridSpec::new(min, max, count, log) {
                Ok(g) => g,
                Err(e) => return library_error(&e),
            };
            let spec = match SweepSpec::new(family.into(), fixed_sum, grid) {
                Ok(s) => s,
                Err(e) => return library_error(&e),
            };
            let result = match run_sweep(&spec, &SolverConfig::default()) {
                Ok(r) => r,
                Err(e) => return library_error(&e),
            };
            for (idx, err) in &result.failures {
                eprintln!("warning: row {idx}: {err}");
            }
            if let Err(err) = std::fs::write(&out, result.to_csv(spec.family())) {
                eprintln!("error: cannot write {}: {err}", out.display());
                return ExitCode::from(2);
            }
            if result.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Command::Verify {
            spec,
            full,
            fast: _,
            seed,
            json,
        } => {
            let spec = match parse_spec(&spec) {
                Ok(s) => s,
                Err(m) => return usage_error(&m),
            };
            let opts = VerifyOptions {
                full,
                seed,
                ..VerifyOptions::default()
            };
            let report = match &spec {
                Spec::Beta(a, b) => BetaParams::new(*a, *b).and_then(|p| verify_beta(&p, &opts)),
                Spec::Bernoulli(mu) => {
                    BernoulliParams::new(*mu).and_then(|p| verify_bernoulli(&p, &opts))
                }
                Spec::Dirichlet(alphas) => {
                    DirichletParams::new(alphas.clone()).and_then(|p| verify_dirichlet(&p, &opts))
                }
            };
            let report = match report {
                Ok(r) => r,
                Err(e) => return library_error(&e),
            };
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
                let total = report.checks().len();
                let failed = report.checks().iter().filter(|c| !c.passed).count();
                if failed == 0 {
                    println!("all {total} checks passed");
                } else {
                    println!("{failed} of {total} checks failed");
                }
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
    }
}
