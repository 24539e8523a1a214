#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "mdingarch/linalg.hpp"
#include "mdingarch/model.hpp"

namespace mdingarch {

struct BlockConvergence {
    int iterations = 0;
    double gradient_norm = 0.0;  // sup-norm of the block score at the estimate
    bool converged = false;
};

// Estimates with the sandwich covariance blocks. sigma_hat is the
// block-diagonal diag(Pi^-1, J1^-1 I1 J1^-1, J2^-1 I2 J2^-1); standard errors
// are sqrt(diag(sigma_hat)/n). A singular block leaves its standard errors as
// NaN with block_se_ok flagged false.
struct FitReport {
    Theta theta_hat;
    std::vector<double> se;
    Matrix pi_hat;  // 3x3
    Matrix j1_hat, i1_hat;  // (p+q+1) x (p+q+1)
    Matrix j2_hat, i2_hat;
    Matrix sigma_hat;  // d x d
    double loglik = 0.0;                 // average quasi-log-likelihood, constants dropped
    double loglik_with_constants = 0.0;  // including the log-factorial terms
    std::array<BlockConvergence, 3> blocks;  // phi, psi1, psi2
    std::array<bool, 3> block_se_ok = {false, false, false};
    std::size_t n = 0;
    InitPolicy init = InitPolicy::StationaryFixedPoint;
};

struct FitOptions {
    double tol = 1e-8;
    int max_iterations = 500;
    int multistarts = 5;
    InitPolicy init = InitPolicy::StationaryFixedPoint;
    // compact parameter-space box
    double alpha_beta_cap = 0.999;
    double omega_cap_factor = 10.0;  // omega <= factor * max|Y|
    bool compute_covariance = true;
};

// Average mixed Poisson quasi-log-likelihood (1/n) sum l_t(theta). The
// log-factorial terms do not depend on theta and are dropped unless
// with_constants is set.
double quasi_loglik(const SeriesZ& series, const Theta& theta,
                    InitPolicy init = InitPolicy::StationaryFixedPoint,
                    bool with_constants = false);

// Score vector (1/n) sum d l_t / d theta in the flat theta layout. Cross
// blocks of the Hessian are structurally zero, so the score splits into the
// three independent blocks used by fit().
std::vector<double> score(const SeriesZ& series, const Theta& theta,
                          InitPolicy init = InitPolicy::StationaryFixedPoint);

// Per-observation score contributions, n x d (needed by the bootstrap and the
// C-hat matrix of the portmanteau test).
std::vector<std::vector<double>> score_contributions(const SeriesZ& series, const Theta& theta,
                                                     InitPolicy init = InitPolicy::StationaryFixedPoint);

// Three independent box-constrained block maximizations with analytic
// gradients and deterministic multistarts. Throws std::invalid_argument on
// degenerate data (all observations of one sign, or n too small).
FitReport fit(const SeriesZ& series, const ModelOrder& order, const FitOptions& opts = {});

// Sign-block-only fit (the phi maximization of fit()); used by the expanding
// window sign forecasts, which never need the intensity blocks. Throws on a
// one-sign prefix.
PhiParams fit_phi(const SeriesZ& series, const FitOptions& opts = {});

// Plug-in empirical estimators of Pi, J1, I1, J2, I2 at theta_hat; fills the
// covariance blocks and standard errors of the report.
void asymptotic_covariance(const SeriesZ& series, FitReport& report);

struct DispersionEstimates {
    double r1 = 0.0;
    double r2 = 0.0;
    bool r1_finite = true;  // false flags Poisson-or-thinner data (no excess variance)
    bool r2_finite = true;
};

// Moment-based negative binomial dispersion estimators evaluated at the
// fitted paths.
DispersionEstimates estimate_dispersion(const SeriesZ& series, const FitReport& fit);

}  // namespace mdingarch
