#pragma once

#include <cstddef>
#include <vector>

#include "mdingarch/estimate.hpp"
#include "mdingarch/model.hpp"

namespace mdingarch {

// Conditional family used to evaluate predictive distributions.
struct PitFamily {
    bool neg_binomial = false;
    double r1 = 1.0;  // positive-side dispersion (NB only)
    double r2 = 1.0;  // negative-side dispersion (NB only)

    static PitFamily poisson() { return {}; }
    static PitFamily nb(double r1, double r2) { return {true, r1, r2}; }
};

struct PitHistogram {
    int J = 10;
    std::vector<double> heights;  // sums to 1
    double band_low = 0.0;   // 1/J - 1.96 sqrt((1/J)(1-1/J)/n)
    double band_high = 0.0;
    std::size_t n = 0;
    PitFamily family;
    std::size_t zero_mass_count = 0;  // observations where P+ == P- (step contribution)
};

// Non-randomized PIT histogram: mean piecewise-linear per-observation PIT cdf
// F(u) = (1/n) sum clamp((u - P-_t)/(P+_t - P-_t), 0, 1) evaluated on a J-bin
// grid; heights are its increments.
PitHistogram pit_histogram(const SeriesZ& series, const FitReport& fit, const PitFamily& family,
                           int J = 10);

// Histogram from precomputed per-observation cdf brackets P-_t = P(Y < y_t),
// P+_t = P(Y <= y_t). Zero-mass observations (P+ == P-) contribute a step
// indicator. pit_histogram delegates here after evaluating the fitted law.
PitHistogram pit_from_brackets(const std::vector<double>& p_lo, const std::vector<double>& p_hi,
                               int J = 10);

struct DmResult {
    double stat = 0.0;
    double p = 1.0;  // one-sided lower-tail p-value, H1: E(loss_a - loss_b) < 0
    bool degenerate = false;
};

// Diebold-Mariano test with a Bartlett-kernel long-run variance, bandwidth
// floor(T^(1/3)). Identical losses yield the degenerate flag and p = 1.
DmResult diebold_mariano(const std::vector<double>& loss_a, const std::vector<double>& loss_b);

struct SignEvalReport {
    std::size_t m = 0;   // training size
    double mae1 = 0.0;   // model forecast pi_t from the expanding-window phi fit
    double mae2 = 0.5;   // constant 0.5 benchmark
    double mae3 = 0.0;   // expanding sample mean of B benchmark
    double dm_p_mae2 = 1.0;
    double dm_p_mae3 = 1.0;
    bool dm2_degenerate = false;
    bool dm3_degenerate = false;
};

struct SignEvalOptions {
    int refit_cadence = 1;  // refit phi every this many steps (1 = every step)
    FitOptions fit;
    int threads = 1;
};

// Out-of-sample one-step-ahead sign forecasting for each training size m:
// expanding-window refits of the sign block, MAE of the three forecasters,
// and one-sided DM comparisons of the model against the two benchmarks.
std::vector<SignEvalReport> sign_forecast_eval(const SeriesZ& series,
                                               const std::vector<std::size_t>& m_values,
                                               const SignEvalOptions& opts = {});

}  // namespace mdingarch
