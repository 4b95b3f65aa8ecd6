//! Kummer's confluent hypergeometric function ₁F₁, Pochhammer symbols and
//! Beta-distribution moments.
//!
//! The moment-generating function of a Beta(α, β) variable is
//! ₁F₁(α; α+β; λ), so every solver in this crate bottoms out here. The
//! series is summed with compensated accumulation; negative arguments are
//! routed through the Kummer transformation
//! ₁F₁(a; b; x) = eˣ·₁F₁(b−a; b; −x) so that only the all-positive-term
//! series is ever summed, and a log-domain path covers arguments where the
//! sum would overflow.

use crate::error::{Error, Result};

/// Any intermediate above this switches evaluation to the log-domain path.
const OVERFLOW_GUARD: f64 = 1e300;

/// Arguments for ₁F₁(a; b; x) in the Beta-MGF shape (0 < a < b).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerArgs {
    a: f64,
    b: f64,
    x: f64,
}

impl KummerArgs {
    /// Validates 0 < a < b (the shape taken by every Beta MGF: a = α,
    /// b = α + β). General parameter ranges are out of scope.
    pub fn new(a: f64, b: f64, x: f64) -> Result<Self> {
        if a <= 0.0 || !a.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "a must be positive, got {a}"
            )));
        }
        if b <= a || !b.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "b must exceed a, got a={a}, b={b}"
            )));
        }
        if !x.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "x must be finite, got {x}"
            )));
        }
        Ok(Self { a, b, x })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn x(&self) -> f64 {
        self.x
    }
}

/// Truncation control for the series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    /// Relative truncation tolerance, in (0, 1).
    pub rel_tol: f64,
    /// Term budget before `NonConvergence` is reported.
    pub max_terms: usize,
}

impl SeriesConfig {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if rel_tol.is_nan() || rel_tol <= 0.0 || rel_tol >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "rel_tol must lie in (0, 1), got {rel_tol}"
            )));
        }
        if max_terms < 10 {
            return Err(Error::InvalidParameter(format!(
                "max_terms must be at least 10, got {max_terms}"
            )));
        }
        Ok(Self { rel_tol, max_terms })
    }
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-14,
            max_terms: 10_000,
        }
    }
}

/// Pochhammer symbol (x)_j = x(x+1)···(x+j−1), the rising factorial.
///
/// Exact product for j ≤ 20, exponentiated log-sum above that.
pub fn pochhammer(x: f64, j: u32) -> f64 {
    debug_assert!(x > 0.0);
    if j <= 20 {
        let mut p = 1.0;
        for i in 0..j {
            p *= x + f64::from(i);
        }
        p
    } else {
        ln_pochhammer(x, j).exp()
    }
}

/// ln (x)_j as a sum of logarithms.
pub fn ln_pochhammer(x: f64, j: u32) -> f64 {
    debug_assert!(x > 0.0);
    let mut s = 0.0;
    for i in 0..j {
        s += (x + f64::from(i)).ln();
    }
    s
}

/// Outcome of a raw series accumulation, before overflow fallback.
enum SeriesOutcome {
    Value(f64),
    Overflow,
}

/// Sums Σⱼ (a)ⱼ/((b)ⱼ j!) xʲ with Kahan compensation.
///
/// Stops once three consecutive terms each fall below `rel_tol` times the
/// running sum (a single small term can be an artefact of a term passing
/// through zero for alternating input, so one test is not trusted).
fn series_kahan(a: f64, b: f64, x: f64, cfg: &SeriesConfig) -> Result<SeriesOutcome> {
    let mut sum = 1.0_f64;
    let mut comp = 0.0_f64;
    let mut term = 1.0_f64;
    let mut small_streak = 0u32;
    for j in 0..cfg.max_terms {
        let jf = j as f64;
        term *= (a + jf) * x / ((b + jf) * (jf + 1.0));
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if !sum.is_finite() || sum.abs() > OVERFLOW_GUARD || term.abs() > OVERFLOW_GUARD {
            return Ok(SeriesOutcome::Overflow);
        }
        if term.abs() < cfg.rel_tol * sum.abs() {
            small_streak += 1;
            if small_streak >= 3 {
                return Ok(SeriesOutcome::Value(sum));
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::NonConvergence {
        a,
        b,
        x,
        max_terms: cfg.max_terms,
    })
}

/// ln Σⱼ (a)ⱼ/((b)ⱼ j!) xʲ for x ≥ 0, by streaming log-sum-exp.
///
/// Every term is positive, so the sum is perfectly conditioned; only its
/// magnitude needs taming.
fn log_series(a: f64, b: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    debug_assert!(x >= 0.0);
    let mut log_term = 0.0_f64; // ln t_j, t_0 = 1
    let mut max_log = 0.0_f64;
    let mut scaled_sum = 1.0_f64; // Σ exp(ln t_j − max_log)
    let ln_tol = cfg.rel_tol.ln();
    let mut small_streak = 0u32;
    for j in 0..cfg.max_terms {
        let jf = j as f64;
        log_term += ((a + jf) * x / ((b + jf) * (jf + 1.0))).ln();
        if log_term > max_log {
            scaled_sum = scaled_sum * (max_log - log_term).exp() + 1.0;
            max_log = log_term;
        } else {
            scaled_sum += (log_term - max_log).exp();
        }
        if log_term - max_log - scaled_sum.ln() < ln_tol {
            small_streak += 1;
            if small_streak >= 3 {
                return Ok(max_log + scaled_sum.ln());
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::NonConvergence {
        a,
        b,
        x,
        max_terms: cfg.max_terms,
    })
}

/// Raw alternating-series evaluation, kept only as a cross-check for the
/// Kummer transformation on moderately negative arguments. Catastrophic
/// cancellation makes it useless below x ≈ −15.
#[cfg(test)]
fn series_raw_alternating(a: f64, b: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    match series_kahan(a, b, x, cfg)? {
        SeriesOutcome::Value(v) => Ok(v),
        SeriesOutcome::Overflow => Err(Error::NonConvergence {
            a,
            b,
            x,
            max_terms: cfg.max_terms,
        }),
    }
}

/// ₁F₁(a; b; x), the Beta(α, β) moment-generating function at λ = x when
/// a = α and b = α + β.
///
/// Negative arguments go through ₁F₁(a; b; x) = eˣ·₁F₁(b−a; b; −x) so the
/// alternating series is never summed directly.
pub fn kummer_1f1(args: &KummerArgs, cfg: &SeriesConfig) -> Result<f64> {
    let KummerArgs { a, b, x } = *args;
    if x < 0.0 {
        let y = -x;
        if x < -600.0 {
            // e^x underflows before the transformed series overflows; pair
            // them in log domain.
            return Ok((x + log_series(b - a, b, y, cfg)?).exp());
        }
        return match series_kahan(b - a, b, y, cfg)? {
            SeriesOutcome::Value(s) => Ok(x.exp() * s),
            SeriesOutcome::Overflow => Ok((x + log_series(b - a, b, y, cfg)?).exp()),
        };
    }
    match series_kahan(a, b, x, cfg)? {
        SeriesOutcome::Value(s) => Ok(s),
        SeriesOutcome::Overflow => Ok(log_series(a, b, x, cfg)?.exp()),
    }
}

/// ln ₁F₁(a; b; x), stable for arguments far beyond f64 overflow.
pub fn log_kummer_1f1(args: &KummerArgs, cfg: &SeriesConfig) -> Result<f64> {
    let KummerArgs { a, b, x } = *args;
    if x < 0.0 {
        // ln 1F1(a;b;x) = x + ln 1F1(b−a;b;−x), the transformation in log form.
        return Ok(x + log_series(b - a, b, -x, cfg)?);
    }
    if x <= 30.0 {
        // The direct sum is at most ~e^30; ln of the compensated sum is
        // cheaper and just as accurate.
        return match series_kahan(a, b, x, cfg)? {
            SeriesOutcome::Value(s) => Ok(s.ln()),
            SeriesOutcome::Overflow => unreachable!("no overflow possible for x <= 30"),
        };
    }
    log_series(a, b, x, cfg)
}

/// j-th raw moment of Beta(α, β): (α)ⱼ/(α+β)ⱼ.
pub fn beta_raw_moment(alpha: f64, beta: f64, j: u32) -> f64 {
    debug_assert!(alpha > 0.0 && beta > 0.0);
    if j <= 20 {
        let mut m = 1.0;
        let b = alpha + beta;
        for i in 0..j {
            m *= (alpha + f64::from(i)) / (b + f64::from(i));
        }
        m
    } else {
        (ln_pochhammer(alpha, j) - ln_pochhammer(alpha + beta, j)).exp()
    }
}

/// Even central moment E[(X − 1/2)^{2j}] of the symmetric Beta(α, α):
/// (2j)!/(2^{2j} j!) · (α)ⱼ/(2α)_{2j}.
pub fn beta_central_even_moment(alpha: f64, j: u32) -> f64 {
    debug_assert!(alpha > 0.0);
    debug_assert!(j >= 1);
    if j <= 10 {
        let mut v = 1.0;
        // (2j)!/(2^{2j} j!) = Π_{l=1..j} (2l−1)/2, interleaved with the
        // Pochhammer ratio to keep intermediates balanced.
        for l in 1..=j {
            v *= (2.0 * f64::from(l) - 1.0) / 2.0;
        }
        v * pochhammer(alpha, j) / pochhammer(2.0 * alpha, 2 * j)
    } else {
        let mut log_v = 0.0;
        for l in 1..=j {
            log_v += ((2.0 * f64::from(l) - 1.0) / 2.0).ln();
        }
        (log_v + ln_pochhammer(alpha, j) - ln_pochhammer(2.0 * alpha, 2 * j)).exp()
    }
}

/// First six cumulants κ₁..κ₆ of Beta(α, β), indexed 1..=6 (slot 0 unused).
///
/// Built from the raw moments (α)ⱼ/(α+β)ⱼ via central moments. These feed
/// the small-argument expansions of ln ₁F₁ and its derived quantities,
/// where direct evaluation cancels.
pub fn beta_cumulants(alpha: f64, beta: f64) -> [f64; 7] {
    let m: Vec<f64> = (0..=6).map(|j| beta_raw_moment(alpha, beta, j)).collect();
    let mu = m[1];
    // central moments by binomial expansion
    let mut mc = [0.0_f64; 7];
    for (j, mcj) in mc.iter_mut().enumerate() {
        let mut s = 0.0;
        let mut binom = 1.0;
        for (k, &mk) in m.iter().enumerate().take(j + 1) {
            s += binom * mk * (-mu).powi((j - k) as i32);
            binom *= (j - k) as f64 / (k + 1) as f64;
        }
        *mcj = s;
    }
    let mut kappa = [0.0_f64; 7];
    kappa[1] = mu;
    kappa[2] = mc[2];
    kappa[3] = mc[3];
    kappa[4] = mc[4] - 3.0 * mc[2] * mc[2];
    kappa[5] = mc[5] - 10.0 * mc[3] * mc[2];
    kappa[6] = mc[6] - 15.0 * mc[4] * mc[2] - 10.0 * mc[3] * mc[3] + 30.0 * mc[2] * mc[2] * mc[2];
    kappa
}
