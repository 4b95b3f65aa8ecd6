//! Parameter sweeps producing deterministic, plot-ready CSV.

use crate::bernoulli::{bernoulli_optimal_proxy, kearns_saul_proxy, BernoulliParams};
use crate::beta::{optimal_proxy_variance, simple_upper_bound, variance, BetaParams, SolverConfig};
use crate::error::{Error, Result};

/// Which family of curves a sweep traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Beta(μS, (1−μ)S) with the sum S fixed, μ sweeping the grid.
    BetaFixedSum,
    /// Beta(α, β) over the grid × grid square.
    BetaGrid,
    /// Bernoulli(μ), μ sweeping the grid.
    Bernoulli,
}

/// One-dimensional range descriptor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub log_scale: bool,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, count: usize, log_scale: bool) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid count must be at least 2, got {count}"
            )));
        }
        if min.is_nan() || max.is_nan() || min >= max {
            return Err(Error::InvalidParameter(format!(
                "grid needs min < max, got [{min}, {max}]"
            )));
        }
        if log_scale && min <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "log-scale grid needs min > 0, got {min}"
            )));
        }
        Ok(Self {
            min,
            max,
            count,
            log_scale,
        })
    }

    /// Grid points inset by half a step from both ends, leaving the open
    /// interval (min, max); μ-sweeps use this since the solver domain
    /// excludes the endpoints.
    pub fn inset_points(&self) -> Vec<f64> {
        let n = self.count as f64;
        if self.log_scale {
            let (lo, hi) = (self.min.ln(), self.max.ln());
            (0..self.count)
                .map(|k| (lo + (k as f64 + 0.5) * (hi - lo) / n).exp())
                .collect()
        } else {
            (0..self.count)
                .map(|k| self.min + (k as f64 + 0.5) * (self.max - self.min) / n)
                .collect()
        }
    }

    /// Endpoint-inclusive grid points for parameter axes.
    pub fn inclusive_points(&self) -> Vec<f64> {
        let n = (self.count - 1) as f64;
        if self.log_scale {
            let (lo, hi) = (self.min.ln(), self.max.ln());
            (0..self.count)
                .map(|k| (lo + k as f64 * (hi - lo) / n).exp())
                .collect()
        } else {
            (0..self.count)
                .map(|k| self.min + k as f64 * (self.max - self.min) / n)
                .collect()
        }
    }
}

/// A validated sweep description.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    family: Family,
    fixed_sum: Option<f64>,
    grid: GridSpec,
}

impl SweepSpec {
    pub fn new(family: Family, fixed_sum: Option<f64>, grid: GridSpec) -> Result<Self> {
        match family {
            Family::BetaFixedSum => match fixed_sum {
                Some(s) if s > 0.0 && s.is_finite() => {}
                Some(s) => {
                    return Err(Error::InvalidParameter(format!(
                        "fixed sum must be positive, got {s}"
                    )))
                }
                None => {
                    return Err(Error::InvalidParameter(
                        "the fixed-sum family needs --fixed-sum".into(),
                    ))
                }
            },
            Family::BetaGrid | Family::Bernoulli => {}
        }
        if matches!(family, Family::BetaFixedSum | Family::Bernoulli)
            && !(grid.min >= 0.0 && grid.max <= 1.0)
        {
            return Err(Error::InvalidParameter(format!(
                "mean sweeps live on [0, 1], got [{}, {}]",
                grid.min, grid.max
            )));
        }
        Ok(Self {
            family,
            fixed_sum,
            grid,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }
}

/// One computed sweep row. `alpha`/`beta` are present for the grid family
/// only; `sigma2_opt` is `None` when the solver failed for that row.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub mu: f64,
    pub variance: f64,
    pub sigma2_opt: Option<f64>,
    pub simple_bound: f64,
    pub kearns_saul: f64,
}

/// Sweep output: rows in grid order plus any per-row solver errors
/// (indexed by row).
#[derive(Debug)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub failures: Vec<(usize, Error)>,
}

impl SweepResult {
    /// Renders the CSV: UTF-8, LF line endings, `.` decimal separator,
    /// shortest round-trip float formatting. Identical specs give
    /// byte-identical output.
    pub fn to_csv(&self, family: Family) -> String {
        let mut out = String::new();
        let grid = matches!(family, Family::BetaGrid);
        if grid {
            out.push_str("alpha,beta,mu,variance,sigma2_opt,simple_bound,kearns_saul\n");
        } else {
            out.push_str("mu,variance,sigma2_opt,simple_bound,kearns_saul\n");
        }
        for row in &self.rows {
            if grid {
                out.push_str(&format!(
                    "{},{},",
                    row.alpha.unwrap_or(f64::NAN),
                    row.beta.unwrap_or(f64::NAN)
                ));
            }
            let sigma2 = match row.sigma2_opt {
                Some(s) => s.to_string(),
                None => String::new(),
            };
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.mu, row.variance, sigma2, row.simple_bound, row.kearns_saul
            ));
        }
        out
    }
}

/// Computes every row of a sweep. Solver failures are recorded per row,
/// not propagated, so a single bad grid point cannot lose the whole sweep.
pub fn run_sweep(spec: &SweepSpec, cfg: &SolverConfig) -> Result<SweepResult> {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    match spec.family {
        Family::BetaFixedSum => {
            let s = spec.fixed_sum.expect("validated at construction");
            for mu in spec.grid.inset_points() {
                let idx = rows.len();
                let params = BetaParams::new(mu * s, (1.0 - mu) * s)?;
                let sigma2 = match optimal_proxy_variance(&params, cfg) {
                    Ok(r) => Some(r.sigma2_opt),
                    Err(e) => {
                        failures.push((idx, e));
                        None
                    }
                };
                rows.push(SweepRow {
                    alpha: None,
                    beta: None,
                    mu,
                    variance: variance(&params),
                    sigma2_opt: sigma2,
                    simple_bound: simple_upper_bound(&params),
                    kearns_saul: kearns_saul_proxy(mu),
                });
            }
        }
        Family::Bernoulli => {
            for mu in spec.grid.inset_points() {
                let params = BernoulliParams::new(mu)?;
                rows.push(SweepRow {
                    alpha: None,
                    beta: None,
                    mu,
                    variance: mu * (1.0 - mu),
                    sigma2_opt: Some(bernoulli_optimal_proxy(&params)),
                    simple_bound: 0.25,
                    kearns_saul: kearns_saul_proxy(mu),
                });
            }
        }
        Family::BetaGrid => {
            let pts = spec.grid.inclusive_points();
            for &alpha in &pts {
                for &beta in &pts {
                    let idx = rows.len();
                    let params = BetaParams::new(alpha, beta)?;
                    let sigma2 = match optimal_proxy_variance(&params, cfg) {
                        Ok(r) => Some(r.sigma2_opt),
                        Err(e) => {
                            failures.push((idx, e));
                            None
                        }
                    };
                    rows.push(SweepRow {
                        alpha: Some(alpha),
                        beta: Some(beta),
                        mu: params.mean(),
                        variance: variance(&params),
                        sigma2_opt: sigma2,
                        simple_bound: simple_upper_bound(&params),
                        kearns_saul: kearns_saul_proxy(params.mean()),
                    });
                }
            }
        }
    }
    Ok(SweepResult { rows, failures })
}
