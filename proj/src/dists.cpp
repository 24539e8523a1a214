#include "mdingarch/dists.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mdingarch {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct BaseParams {
    bool negbin;
    double mean;     // base-distribution mean
    double r;        // negbin only
    double log_p;    // negbin: log success probability
    double log_1mp;  // negbin: log failure probability
};

// Strip the +1 shift: the shifted kinds are 1 + base(mean - 1).
BaseParams base_params(const PosDist& dist) {
    BaseParams b{};
    b.negbin = dist.kind == DistKind::NegBinomial || dist.kind == DistKind::ShiftedNegBinomial;
    b.mean = dist.shifted() ? dist.mean - 1.0 : dist.mean;
    if (b.negbin) {
        b.r = dist.r;
        const double p = dist.r / (dist.r + b.mean);
        b.log_p = std::log(p);
        b.log_1mp = std::log1p(-p);
    }
    return b;
}

double base_log_pmf(const BaseParams& b, std::int64_t k) {
    if (k < 0) return kNegInf;
    const double kd = static_cast<double>(k);
    if (!b.negbin) return kd * std::log(b.mean) - b.mean - std::lgamma(kd + 1.0);
    return std::lgamma(kd + b.r) - std::lgamma(b.r) - std::lgamma(kd + 1.0) + b.r * b.log_p +
           kd * b.log_1mp;
}

// log pmf(k+1) - log pmf(k) for the base distribution
double base_log_ratio(const BaseParams& b, std::int64_t k) {
    const double kd = static_cast<double>(k);
    if (!b.negbin) return std::log(b.mean) - std::log(kd + 1.0);
    return std::log(kd + b.r) - std::log(kd + 1.0) + b.log_1mp;
}

}  // namespace

void PosDist::validate() const {
    switch (kind) {
        case DistKind::Poisson:
            if (!(mean > 0.0)) throw std::domain_error("Poisson: mean must be > 0");
            break;
        case DistKind::ShiftedPoisson:
            if (!(mean > 1.0)) throw std::domain_error("ShiftedPoisson: mean must be > 1");
            break;
        case DistKind::NegBinomial:
            if (!(r > 0.0)) throw std::domain_error("NegBinomial: r must be > 0");
            if (!(mean > 0.0)) throw std::domain_error("NegBinomial: mean must be > 0");
            break;
        case DistKind::ShiftedNegBinomial:
            if (!(r > 0.0)) throw std::domain_error("ShiftedNegBinomial: r must be > 0");
            if (!(mean > 1.0)) throw std::domain_error("ShiftedNegBinomial: mean must be > 1");
            break;
    }
    if (!std::isfinite(mean)) throw std::domain_error("PosDist: mean must be finite");
}

double log_pmf(const PosDist& dist, std::int64_t k) {
    dist.validate();
    if (k < dist.support_min()) return kNegInf;
    return base_log_pmf(base_params(dist), k - dist.support_min());
}

double pmf(const PosDist& dist, std::int64_t k) {
    const double lp = log_pmf(dist, k);
    return lp == kNegInf ? 0.0 : std::exp(lp);
}

double cdf(const PosDist& dist, std::int64_t k) {
    dist.validate();
    const std::int64_t kb = k - dist.support_min();
    if (kb < 0) return 0.0;
    const BaseParams b = base_params(dist);
    double log_pk = base_log_pmf(b, 0);
    double cum = std::exp(log_pk);
    for (std::int64_t i = 0; i < kb; ++i) {
        // the remaining tail is negligible once past the mean with a tiny term
        if (static_cast<double>(i) > b.mean && std::exp(log_pk) < 1e-18) break;
        log_pk += base_log_ratio(b, i);
        cum += std::exp(log_pk);
    }
    return cum > 1.0 ? 1.0 : cum;
}

std::int64_t quantile(const PosDist& dist, double u) {
    dist.validate();
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("quantile: u must be in (0,1)");
    const BaseParams b = base_params(dist);
    double log_pk = base_log_pmf(b, 0);
    double cum = std::exp(log_pk);
    std::int64_t k = 0;
    // F^-(u) = min{k : cdf(k) >= u}; the scan terminates since cdf -> 1
    while (cum < u) {
        // far past the mean the accumulated mass is within rounding of 1
        if (static_cast<double>(k) > b.mean + 10.0 && std::exp(log_pk) < 1e-300) break;
        log_pk += base_log_ratio(b, k);
        cum += std::exp(log_pk);
        ++k;
    }
    return k + dist.support_min();
}

std::int64_t sample(const PosDist& dist, RngStream& rng) {
    return quantile(dist, rng.uniform());
}

void MixedDifferenceLaw::validate() const {
    if (!(pi > 0.0 && pi < 1.0))
        throw std::domain_error("MixedDifferenceLaw: pi must be in (0,1)");
    pos.validate();
    neg.validate();
    if (pos.shifted()) throw std::domain_error("MixedDifferenceLaw: pos must have support {0,1,...}");
    if (!neg.shifted()) throw std::domain_error("MixedDifferenceLaw: neg must have support {1,2,...}");
}

double mixed_pmf(const MixedDifferenceLaw& law, std::int64_t y) {
    law.validate();
    if (y >= 0) return law.pi * pmf(law.pos, y);
    return (1.0 - law.pi) * pmf(law.neg, -y);
}

double mixed_cdf(const MixedDifferenceLaw& law, std::int64_t y) {
    law.validate();
    if (y >= 0) return (1.0 - law.pi) + law.pi * cdf(law.pos, y);
    // P(Y <= y) = (1 - pi) P(X2 >= -y) for y < 0
    return (1.0 - law.pi) * (1.0 - cdf(law.neg, -y - 1));
}

}  // namespace mdingarch
