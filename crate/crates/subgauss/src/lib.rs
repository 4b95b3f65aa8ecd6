//! # subgauss
//!
//! Optimal sub-Gaussian proxy variances for the Beta, Bernoulli and
//! Dirichlet distributions, with independent verification oracles.
//!
//! A random variable X with mean μ is σ²-sub-Gaussian when
//! E[e^{λ(X−μ)}] ≤ e^{λ²σ²/2} for every real λ; the optimal proxy variance
//! is the smallest such σ². For Beta(α, β) it is the variance itself when
//! α = β, and otherwise the solution of a transcendental system built on
//! Kummer's confluent hypergeometric function ₁F₁ (the Beta MGF). The
//! Dirichlet case reduces to the Beta pair (α_max, ᾱ − α_max), and the
//! Bernoulli case has the closed form (1−2μ)/(2 ln((1−μ)/μ)).
//!
//! | Module | Provides |
//! |--------|----------|
//! | [`kummer`] | ₁F₁ series, Pochhammer symbols, Beta moments/cumulants |
//! | [`beta`] | the transcendental solver and classification |
//! | [`bernoulli`] | closed forms, Kearns–Saul bound, Beta→Bernoulli limit |
//! | [`dirichlet`] | α_max reduction, moments, covariance, product bounds |
//! | [`verify`] | sup-ratio oracle, ODE residuals, sign structure, Monte Carlo tails |
//! | [`sweep`] | deterministic CSV parameter sweeps |
//!
//! ```
//! use subgauss::{optimal_proxy_variance, BetaParams, SolverConfig};
//!
//! let params = BetaParams::new(1.0, 2.0).unwrap();
//! let result = optimal_proxy_variance(&params, &SolverConfig::default()).unwrap();
//! assert!(result.sigma2_opt > 1.0 / 18.0 && result.sigma2_opt < 1.0 / 16.0);
//! ```

pub mod bernoulli;
pub mod beta;
pub mod dirichlet;
pub mod error;
pub mod kummer;
pub mod sweep;
pub mod verify;

pub use bernoulli::{
    bernoulli_optimal_proxy, beta_to_bernoulli_limit, g_function, kearns_saul_proxy,
    BernoulliParams,
};
pub use beta::{
    is_strictly_subgaussian, optimal_proxy_variance, simple_upper_bound, transcendental_system,
    variance, BetaParams, Branch, ProxyResult, SolverConfig,
};
pub use dirichlet::{
    directional_proxy, dirichlet_covariance, dirichlet_moment, dirichlet_optimal_proxy,
    is_strictly_subgaussian_dirichlet, marginal_beta, DirichletParams, MultiIndex,
};
pub use error::{Error, Result};
pub use kummer::{kummer_1f1, log_kummer_1f1, pochhammer, KummerArgs, SeriesConfig};
pub use verify::{
    chernoff_tail_check, mgf_domination_margin, ode_residual, sign_structure_check,
    sup_ratio_oracle, u_t, v_t, verify_bernoulli, verify_beta, verify_dirichlet, Check,
    DifferenceFunctionSpec, SupRatioResult, TailSampler, VerifyOptions, VerifyReport,
};
