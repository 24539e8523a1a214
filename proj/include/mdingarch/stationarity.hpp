#pragma once

#include <optional>
#include <string>

#include "mdingarch/linalg.hpp"
#include "mdingarch/model.hpp"

namespace mdingarch {

// How the sign-process bounds (pi_1^+, pi_0^+) entering the stability matrix
// are obtained.
struct SignMode {
    enum class Kind { Bounds, Iid, MarkovChain, BernoulliIngarch };
    Kind kind = Kind::BernoulliIngarch;
    double pi1_plus = 0.0, pi0_plus = 0.0;        // Bounds
    double pi = 0.5;                              // Iid
    double p00 = 0.5, p01 = 0.5, p10 = 0.5, p11 = 0.5;  // MarkovChain

    static SignMode bounds(double pi1_plus, double pi0_plus);
    static SignMode iid(double pi);
    static SignMode markov(double p00, double p01, double p10, double p11);
    static SignMode bernoulli_ingarch();
};

// Companion-form stability matrix built from the per-lag 2x2 blocks.
struct StabilityMatrix {
    int r = 1;  // max(p, q)
    std::vector<Matrix> blocks;
    Matrix companion;  // 2r x 2r
    double pi1_plus = 0.0;
    double pi0_plus = 0.0;
};

StabilityMatrix build_matrix(const Theta& theta, const SignMode& mode);

// Spectral radius by power iteration with a deflation fallback; accurate to
// 1e-10 on the nonnegative matrices this module produces.
double spectral_radius(const Matrix& m);

// Closed form for p = q = 1 with an i.i.d. sign of parameter pi.
double closed_form_rho(const Theta& theta, double pi);

struct ConditionReport {
    double rho = 0.0;
    bool sufficient_spectral = false;   // rho(A) < 1
    bool necessary_betas = false;   // sum(beta_s) < 1 on both sides
    std::optional<bool> necessary_persistence;  // i.i.d. sign only
    bool inconclusive = false;    // sufficient fails while necessary ones hold (non-iid sign)
    std::string note;
};

ConditionReport check_conditions(const Theta& theta, const SignMode& mode);

struct StationaryMean {
    double e_abs_y;
    double e_y;
};

// Stationary means under an i.i.d. sign with parameter pi; requires the
// necessary conditions to hold, otherwise throws std::domain_error.
StationaryMean stationary_mean(const Theta& theta, double pi);

}  // namespace mdingarch
