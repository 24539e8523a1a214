#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdingarch/estimate.hpp"
#include "mdingarch/linalg.hpp"
#include "mdingarch/model.hpp"

namespace mdingarch {

// Residuals eps_t = Y_t - 1{Y_t>=0} lam1_t + 1{Y_t<0} lam2_t with the
// zero-padding convention eps_t = 0 outside 1..n.
struct ResidualSeries {
    std::vector<double> eps;
    double gamma0 = 0.0;  // (1/n) sum eps_t^2
};

ResidualSeries residuals(const SeriesZ& series, const FitReport& fit);

// rho_h = gamma_h / gamma_0, gamma_h = (1/n) sum_t eps_t eps_{t-h} with
// missing early terms zero. Throws on gamma0 == 0.
std::vector<double> residual_acf(const ResidualSeries& res, int k);

// Plug-in estimator of the asymptotic covariance of sqrt(n) * rho_hat:
// V = gamma0^-2 (E + C J^-1 D' + D J^-1 C' + D Sigma D'), symmetrized.
Matrix v_hat(const SeriesZ& series, const FitReport& fit, const ResidualSeries& res, int k);

// p = 1 - chi2_cdf(n rho' V^-1 rho, k); falls back to a pseudo-inverse when V
// is numerically singular (flagged via *pseudo_inverse_used if given).
double portmanteau_p1(const std::vector<double>& rho, const Matrix& v, std::size_t n,
                      bool* pseudo_inverse_used = nullptr);

struct BootstrapResult {
    double p2 = 0.0;
    Matrix v_star;  // empirical variance of sqrt(n) rho* across replicates
    bool ok = false;
    std::string note;
};

// Bootstrap weight law: standard exponential by default; the degenerate
// all-ones law collapses every replicate onto the original estimate (useful
// as a sanity check, p2 = 0 under the strict inequality).
enum class BootstrapWeights { Exponential, DegenerateOne };

// Random-weighting bootstrap with the one-step Newton update of theta per
// replicate. Replicates use RNG streams derived from (seed, replicate), so
// the result is independent of thread scheduling.
BootstrapResult rw_bootstrap(const SeriesZ& series, const FitReport& fit,
                             const ResidualSeries& res, int k, int B, std::uint64_t seed,
                             int threads = 1,
                             BootstrapWeights weights = BootstrapWeights::Exponential);

struct GofReport {
    int k = 10;
    std::vector<double> rho_hat;
    Matrix v_hat;          // plug-in estimator
    Matrix v_star;         // bootstrap variance of sqrt(n) rho*
    double stat = 0.0;     // n rho' Vstar^-1 rho (the default p1 statistic)
    double stat_plugin = 0.0;
    double p1 = 1.0;         // bootstrap-variance variant (default)
    double p1_plugin = 1.0;  // plug-in V variant
    double p2 = 1.0;
    int B = 500;
    std::string weight_dist = "exponential(1)";
    std::uint64_t seed = 0;
    bool bootstrap_ok = false;
    bool pseudo_inverse_used = false;
    std::size_t n = 0;
};

// Full goodness-of-fit pipeline: residuals, ACF, plug-in V, bootstrap, and
// both portmanteau p-values.
GofReport run_gof(const SeriesZ& series, const FitReport& fit, int k = 10, int B = 500,
                  std::uint64_t seed = 0, int threads = 1);

}  // namespace mdingarch
