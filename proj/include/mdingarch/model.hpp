#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mdingarch/dists.hpp"
#include "mdingarch/rng.hpp"

namespace mdingarch {

// Lag orders: p intensity-feedback lags, q observation lags.
struct ModelOrder {
    int p = 1;
    int q = 1;

    int max_lag() const { return p > q ? p : q; }
    // per-side psi dimension (omega, alpha_1..q, beta_1..p)
    int psi_dim() const { return 1 + p + q; }
    // full theta dimension: 3 sign parameters plus two psi blocks
    int theta_dim() const { return 3 + 2 * psi_dim(); }

    void validate() const;
};

// Bernoulli INGARCH(1,1) sign-process coefficients: pi_t = c + a B_{t-1} + b pi_{t-1}.
struct PhiParams {
    double c = 0.2;
    double a = 0.2;
    double b = 0.2;

    void validate() const;  // c > 0, a,b >= 0, a + b + c < 1
};

enum class PsiSide { Positive, Negative };

// One intensity equation: lambda_t = omega + sum alpha_i |Y_{t-i}| + sum beta_j lambda_{t-j}.
struct PsiParams {
    double omega = 1.0;
    std::vector<double> alpha;  // size q
    std::vector<double> beta;   // size p

    double beta_sum() const;
    // Positive side requires omega > 0; negative side requires
    // 0 < 1 - sum(beta) < omega, which keeps lambda_2t > 1 along the filter.
    void validate(const ModelOrder& order, PsiSide side) const;
};

struct Theta {
    PhiParams phi;
    PsiParams psi1;  // positive side
    PsiParams psi2;  // negative side
    ModelOrder order;

    void validate() const;
    int dim() const { return order.theta_dim(); }

    // flat layout (c, a, b, omega1, alpha1.., beta1.., omega2, alpha2.., beta2..)
    std::vector<double> flatten() const;
    static Theta unflatten(const std::vector<double>& v, const ModelOrder& order);
};

// Observed Z-valued series with derived sign indicators b_t = 1{y_t >= 0}.
struct SeriesZ {
    std::vector<std::int64_t> y;
    std::vector<int> b;

    static SeriesZ from(std::vector<std::int64_t> values);
    std::size_t size() const { return y.size(); }
};

enum class InitPolicy {
    StationaryFixedPoint,  // lambda_s0 = omega_s/(1-sum beta), pi_0 = c/(1-b)
    SampleMean,            // lambda_s0 = side sample mean of |Y|, pi_0 = mean of B
};

// Filtered paths of pi_t, lambda_1t, lambda_2t with parameter gradients.
// Gradient layouts: dpi w.r.t. (c,a,b); dlam w.r.t. (omega, alpha.., beta..).
struct FilterPath {
    std::vector<double> pi;
    std::vector<double> lam1;
    std::vector<double> lam2;
    std::vector<std::array<double, 3>> dpi;
    std::vector<std::vector<double>> dlam1;
    std::vector<std::vector<double>> dlam2;
};

// Guards applied before anything enters a log.
inline constexpr double kProbClamp = 1e-10;
inline constexpr double kLambdaShiftFloor = 1e-10;

FilterPath filter(const SeriesZ& series, const Theta& theta,
                  InitPolicy init = InitPolicy::StationaryFixedPoint);

// Single-recursion variants used by the block-wise estimator: the three
// likelihood blocks only ever need their own path.
struct PiPath {
    std::vector<double> pi;
    std::vector<std::array<double, 3>> dpi;
};
PiPath filter_sign(const SeriesZ& series, const PhiParams& phi,
                   InitPolicy init = InitPolicy::StationaryFixedPoint);

struct LambdaPath {
    std::vector<double> lam;
    std::vector<std::vector<double>> dlam;
};
LambdaPath filter_intensity(const SeriesZ& series, const PsiParams& psi, const ModelOrder& order,
                            PsiSide side, InitPolicy init = InitPolicy::StationaryFixedPoint);

// Conditional family of the magnitude draws in a DGP.
struct DgpFamily {
    enum class Kind {
        Poisson,
        NegBinomialFixedR,  // NB with fixed dispersions (r1, r2), means lambda_st
        NegBinomialFixedP,  // NB with fixed success prob p: r_st = p*lambda_st/(1-p)
    };
    Kind kind = Kind::Poisson;
    double r1 = 1.0;
    double r2 = 1.0;
    double p = 0.5;

    static DgpFamily poisson() { return {}; }
    static DgpFamily nb_fixed_r(double r1, double r2) {
        return {Kind::NegBinomialFixedR, r1, r2, 0.5};
    }
    static DgpFamily nb_fixed_p(double p) { return {Kind::NegBinomialFixedP, 1.0, 1.0, p}; }
};

enum class Linkage { Linear, LogLinear };

struct SignSpec {
    enum class Kind { IidBernoulli, BernoulliIngarch };
    Kind kind = Kind::BernoulliIngarch;
    double pi = 0.5;  // IidBernoulli only

    static SignSpec iid(double pi) { return {Kind::IidBernoulli, pi}; }
    static SignSpec ingarch() { return {Kind::BernoulliIngarch, 0.5}; }
};

struct DgpSpec {
    Theta theta;
    DgpFamily family;
    Linkage linkage = Linkage::Linear;
    SignSpec sign;
};

// Draws a trajectory of length n after discarding burn_in observations.
// Throws std::runtime_error (simulation diverged) if an intensity becomes
// non-finite, which can happen for explosive log-linear specs.
SeriesZ simulate(const DgpSpec& spec, std::size_t n, std::size_t burn_in, RngStream& rng);

// Conditional mean and variance of Y_t given the filtered path at index t.
struct ConditionalMoments {
    double mean;
    double variance;
};
ConditionalMoments conditional_moments(const FilterPath& path, std::size_t t,
                                       const DgpFamily& family);

}  // namespace mdingarch
