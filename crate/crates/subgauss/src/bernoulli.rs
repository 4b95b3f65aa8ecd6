//! Closed-form optimal proxy variance for the Bernoulli distribution, the
//! Kearns–Saul bound for \[0,1\]-supported variables, and the Beta → Bernoulli
//! limit check.

use crate::beta::{optimal_proxy_variance, BetaParams, SolverConfig};
use crate::error::{Error, Result};

/// Switch to the Taylor branch this close to μ = 1/2, where the direct
/// quotient loses ~6 digits to cancellation.
const HALF_TOL: f64 = 1e-6;

/// Validated Bernoulli mean μ ∈ (0, 1).
///
/// The endpoints are rejected: the closed forms below are defined on the
/// open interval only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernoulliParams {
    mu: f64,
}

impl BernoulliParams {
    pub fn new(mu: f64) -> Result<Self> {
        if mu.is_nan() || mu <= 0.0 || mu >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "Bernoulli mean must lie strictly inside (0, 1), got {mu}"
            )));
        }
        Ok(Self { mu })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

/// g(μ) = ln((1−μ)/μ) / (1−2μ), the Hoeffding/Kearns–Saul function.
///
/// Evaluated as ln1p((1−2μ)/μ)/(1−2μ) so the removable singularity at
/// μ = 1/2 costs no precision until the final division; inside
/// |μ−1/2| < 1e-6 the Taylor branch 2 + (2/3)(2μ−1)² takes over
/// (g = 2·atanh(δ)/δ in δ = 2μ−1, so the quadratic coefficient is 2/3).
pub fn g_function(mu: f64) -> f64 {
    debug_assert!(mu > 0.0 && mu < 1.0);
    let delta = 2.0 * mu - 1.0;
    if delta.abs() < HALF_TOL {
        return 2.0 + 2.0 / 3.0 * delta * delta;
    }
    let one_minus_2mu = 1.0 - 2.0 * mu;
    (one_minus_2mu / mu).ln_1p() / one_minus_2mu
}

/// The Kearns–Saul proxy variance 1/(2g(μ)), valid for every
/// \[0,1\]-supported random variable with mean μ and optimal for Bernoulli.
/// Never exceeds the Hoeffding constant 1/4.
pub fn kearns_saul_proxy(mu: f64) -> f64 {
    debug_assert!(mu > 0.0 && mu < 1.0);
    1.0 / (2.0 * g_function(mu))
}

/// Optimal proxy variance of Bernoulli(μ): (1−2μ) / (2 ln((1−μ)/μ)).
///
/// Implemented independently of [`g_function`] — the identity
/// σ²_opt(μ) = 1/(2g(μ)) is a cross-check in the test suite, not an
/// implementation shortcut. At μ = 1/2 the limit branch returns exactly
/// 1/4 (Taylor form 1/4 − (2μ−1)²/12).
pub fn bernoulli_optimal_proxy(params: &BernoulliParams) -> f64 {
    bernoulli_proxy_of_mean(params.mu)
}

/// Unchecked-domain core of [`bernoulli_optimal_proxy`], shared with the
/// Beta solver's degenerate-sum branch.
pub(crate) fn bernoulli_proxy_of_mean(mu: f64) -> f64 {
    debug_assert!(mu > 0.0 && mu < 1.0);
    let delta = 2.0 * mu - 1.0;
    if delta.abs() < HALF_TOL {
        return 0.25 - delta * delta / 12.0;
    }
    let one_minus_2mu = 1.0 - 2.0 * mu;
    one_minus_2mu / (2.0 * (one_minus_2mu / mu).ln_1p())
}

/// ln E[e^{λX}] for X ~ Bernoulli(μ), stable across the λ range.
pub fn log_mgf(mu: f64, lambda: f64) -> f64 {
    debug_assert!(mu > 0.0 && mu < 1.0);
    if lambda > 0.0 {
        // λ + ln(μ + (1−μ)e^{−λ}) avoids overflow on the right tail
        lambda + (mu + (1.0 - mu) * (-lambda).exp()).ln()
    } else {
        (mu * lambda.exp_m1()).ln_1p()
    }
}

/// One Beta → Bernoulli comparison point: the Beta solver at
/// (α, β) = (εμ, ε(1−μ)) against the Bernoulli closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitComparison {
    pub beta_value: f64,
    pub bernoulli_value: f64,
    /// beta_value − bernoulli_value; tends to 0 from below as ε → 0.
    pub gap: f64,
}

/// Runs the Beta solver at fixed mean μ with total weight ε and compares
/// with the Bernoulli closed form.
pub fn beta_to_bernoulli_limit(mu: f64, epsilon: f64) -> Result<LimitComparison> {
    if mu.is_nan() || mu <= 0.0 || mu >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "mu must lie in (0, 1), got {mu}"
        )));
    }
    if epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let params = BetaParams::new(epsilon * mu, epsilon * (1.0 - mu))?;
    let beta_value = optimal_proxy_variance(&params, &SolverConfig::default())?.sigma2_opt;
    let bernoulli_value = bernoulli_proxy_of_mean(mu);
    Ok(LimitComparison {
        beta_value,
        bernoulli_value,
        gap: beta_value - bernoulli_value,
    })
}

/// The explicit solution of the α+β → 0 limit of the gap ODE at fixed mean:
/// u(x) = exp(μx + x²/8 − x²(2μ−1)²t/8) − μeˣ + μ − 1, with u(0) = u′(0) = 0.
pub fn limit_gap_solution(mu: f64, t: f64, x: f64) -> f64 {
    let a = gaussian_exponent_coeff(mu, t);
    (mu * x + a * x * x).exp() - mu * x.exp() + mu - 1.0
}

/// Relative residual of the limit ODE
/// u″ − u′ = E(x)·((1−t)(2μ−1)²/4 + 2(2μ−1)Ax + 4A²x²)
/// with E(x) = exp(μx + Ax²), A = (1 − (2μ−1)²t)/8, measured with 5-point
/// central differences of [`limit_gap_solution`] at step `h`.
pub fn limit_ode_residual(mu: f64, t: f64, x: f64, h: f64) -> f64 {
    let u = |y: f64| limit_gap_solution(mu, t, y);
    let (um2, um1, u0, up1, up2) = (u(x - 2.0 * h), u(x - h), u(x), u(x + h), u(x + 2.0 * h));
    let d1 = (-up2 + 8.0 * up1 - 8.0 * um1 + um2) / (12.0 * h);
    let d2 = (-up2 + 16.0 * up1 - 30.0 * u0 + 16.0 * um1 - um2) / (12.0 * h * h);
    let a = gaussian_exponent_coeff(mu, t);
    let delta = 2.0 * mu - 1.0;
    let envelope = (mu * x + a * x * x).exp();
    let rhs =
        envelope * ((1.0 - t) * delta * delta / 4.0 + 2.0 * delta * a * x + 4.0 * a * a * x * x);
    let scale = d2.abs() + d1.abs() + rhs.abs() + 1.0;
    (d2 - d1 - rhs).abs() / scale
}

fn gaussian_exponent_coeff(mu: f64, t: f64) -> f64 {
    let delta = 2.0 * mu - 1.0;
    (1.0 - delta * delta * t) / 8.0
}
