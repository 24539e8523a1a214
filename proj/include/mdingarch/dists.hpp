#pragma once

#include <cstdint>

#include "mdingarch/rng.hpp"

namespace mdingarch {

// Centralized numerical tolerances for the distribution kernels.
inline constexpr double kPmfNormalizationTol = 1e-9;
inline constexpr double kCdfTerminalTol = 1e-12;

enum class DistKind {
    Poisson,             // support {0,1,...}, mean lambda > 0
    ShiftedPoisson,      // support {1,2,...}, 1 + Poisson(lambda - 1), lambda > 1
    NegBinomial,         // support {0,1,...}, successes r > 0, mean lambda > 0
    ShiftedNegBinomial,  // support {1,2,...}, 1 + NegBinomial(r, lambda - 1), lambda > 1
};

// A count distribution used as one side of the mixed difference. Negative
// binomial kinds are stored as (r, mean) and converted internally to the
// success probability r / (r + mean).
struct PosDist {
    DistKind kind = DistKind::Poisson;
    double mean = 1.0;
    double r = 0.0;  // dispersion, negative binomial kinds only

    static PosDist poisson(double mean) { return {DistKind::Poisson, mean, 0.0}; }
    static PosDist shifted_poisson(double mean) { return {DistKind::ShiftedPoisson, mean, 0.0}; }
    static PosDist neg_binomial(double r, double mean) {
        return {DistKind::NegBinomial, mean, r};
    }
    static PosDist shifted_neg_binomial(double r, double mean) {
        return {DistKind::ShiftedNegBinomial, mean, r};
    }

    bool shifted() const {
        return kind == DistKind::ShiftedPoisson || kind == DistKind::ShiftedNegBinomial;
    }
    // smallest support point: 0 for base kinds, 1 for shifted kinds
    std::int64_t support_min() const { return shifted() ? 1 : 0; }

    // Throws std::domain_error when the parameters are outside the family's
    // domain (mean <= 0, mean <= 1 for shifted kinds, r <= 0).
    void validate() const;
};

double log_pmf(const PosDist& dist, std::int64_t k);
double pmf(const PosDist& dist, std::int64_t k);

// P(X <= k); exact summation of the pmf recurrence, terminated once the
// remaining tail mass is below kCdfTerminalTol.
double cdf(const PosDist& dist, std::int64_t k);

// Generalized inverse F^-(u) = min{k : cdf(k) >= u}, u in (0,1). Monotone in
// both u and the mean parameter, which is what makes inverse-transform
// sampling a monotone coupling across mean values.
std::int64_t quantile(const PosDist& dist, double u);

std::int64_t sample(const PosDist& dist, RngStream& rng);

// Two-sided mixture: P(Y = y) = pi * f_pos(y) for y >= 0 and
// (1 - pi) * f_neg(-y) for y < 0. `neg` lives on {1,2,...} and is negated.
struct MixedDifferenceLaw {
    double pi = 0.5;
    PosDist pos;  // support {0,1,...}
    PosDist neg;  // support {1,2,...}

    void validate() const;

    double mean() const { return pi * pos.mean - (1.0 - pi) * neg.mean; }
};

double mixed_pmf(const MixedDifferenceLaw& law, std::int64_t y);

// P(Y <= y) under the mixture.
double mixed_cdf(const MixedDifferenceLaw& law, std::int64_t y);

}  // namespace mdingarch
