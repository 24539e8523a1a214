#include "mdingarch/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mdingarch/dists.hpp"
#include "mdingarch/special.hpp"

namespace mdingarch {

namespace {

MixedDifferenceLaw law_at(const FilterPath& path, std::size_t t, const PitFamily& family) {
    MixedDifferenceLaw law;
    law.pi = path.pi[t];
    if (family.neg_binomial) {
        law.pos = PosDist::neg_binomial(family.r1, path.lam1[t]);
        law.neg = PosDist::shifted_neg_binomial(family.r2, path.lam2[t]);
    } else {
        law.pos = PosDist::poisson(path.lam1[t]);
        law.neg = PosDist::shifted_poisson(path.lam2[t]);
    }
    return law;
}

}  // namespace

PitHistogram pit_histogram(const SeriesZ& series, const FitReport& fit, const PitFamily& family,
                           int J) {
    if (J < 2) throw std::invalid_argument("pit_histogram: J must be >= 2");
    const std::size_t n = series.size();
    if (n == 0) throw std::invalid_argument("pit_histogram: empty series");
    const FilterPath path = filter(series, fit.theta_hat, fit.init);

    // per-observation conditional cdf brackets P- = P(Y < y), P+ = P(Y <= y)
    std::vector<double> p_lo(n), p_hi(n);
    for (std::size_t t = 0; t < n; ++t) {
        const MixedDifferenceLaw law = law_at(path, t, family);
        p_hi[t] = mixed_cdf(law, series.y[t]);
        p_lo[t] = mixed_cdf(law, series.y[t] - 1);
    }
    PitHistogram hist = pit_from_brackets(p_lo, p_hi, J);
    hist.family = family;
    return hist;
}

PitHistogram pit_from_brackets(const std::vector<double>& p_lo, const std::vector<double>& p_hi,
                               int J) {
    if (J < 2) throw std::invalid_argument("pit_from_brackets: J must be >= 2");
    const std::size_t n = p_lo.size();
    if (n == 0 || p_hi.size() != n)
        throw std::invalid_argument("pit_from_brackets: bracket vectors empty or mismatched");

    std::size_t zero_mass = 0;
    for (std::size_t t = 0; t < n; ++t)
        if (!(p_hi[t] > p_lo[t])) ++zero_mass;

    const auto mean_pit_cdf = [&](double u) {
        double acc = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            if (p_hi[t] > p_lo[t])
                acc += std::clamp((u - p_lo[t]) / (p_hi[t] - p_lo[t]), 0.0, 1.0);
            else
                acc += u >= p_hi[t] ? 1.0 : 0.0;
        }
        return acc / static_cast<double>(n);
    };

    PitHistogram hist;
    hist.J = J;
    hist.n = n;
    hist.zero_mass_count = zero_mass;
    hist.heights.resize(J);
    double prev = 0.0;  // F(0) = 0 since every P- >= 0
    for (int j = 1; j <= J; ++j) {
        const double cur = j == J ? 1.0 : mean_pit_cdf(static_cast<double>(j) / J);
        hist.heights[j - 1] = cur - prev;
        prev = cur;
    }
    const double p = 1.0 / static_cast<double>(J);
    const double half = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    hist.band_low = p - half;
    hist.band_high = p + half;
    return hist;
}

DmResult diebold_mariano(const std::vector<double>& loss_a, const std::vector<double>& loss_b) {
    if (loss_a.size() != loss_b.size())
        throw std::invalid_argument("diebold_mariano: loss vectors differ in length");
    const std::size_t T = loss_a.size();
    if (T < 30) throw std::invalid_argument("diebold_mariano: need at least 30 losses");

    std::vector<double> d(T);
    double mean = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        d[t] = loss_a[t] - loss_b[t];
        mean += d[t];
    }
    mean /= static_cast<double>(T);

    // Bartlett-kernel long-run variance, bandwidth floor(T^(1/3))
    const int H = static_cast<int>(std::floor(std::cbrt(static_cast<double>(T))));
    double lrv = 0.0;
    for (int h = 0; h <= H; ++h) {
        double gamma = 0.0;
        for (std::size_t t = h; t < T; ++t) gamma += (d[t] - mean) * (d[t - h] - mean);
        gamma /= static_cast<double>(T);
        lrv += h == 0 ? gamma : 2.0 * (1.0 - static_cast<double>(h) / (H + 1)) * gamma;
    }

    DmResult result;
    if (!(lrv > 0.0)) {
        result.degenerate = true;
        result.p = 1.0;
        return result;
    }
    result.stat = mean / std::sqrt(lrv / static_cast<double>(T));
    result.p = normal_cdf(result.stat);
    return result;
}

std::vector<SignEvalReport> sign_forecast_eval(const SeriesZ& series,
                                               const std::vector<std::size_t>& m_values,
                                               const SignEvalOptions& opts) {
    const std::size_t n = series.size();
    if (opts.refit_cadence < 1)
        throw std::invalid_argument("sign_forecast_eval: refit cadence must be >= 1");

    std::vector<SignEvalReport> reports;
    reports.reserve(m_values.size());
    for (std::size_t m : m_values) {
        if (m < 30 || m >= n)
            throw std::invalid_argument("sign_forecast_eval: need 30 <= m < n");
        std::size_t ones = 0;
        for (std::size_t t = 0; t < m; ++t) ones += series.b[t];
        if (ones == 0 || ones == m)
            throw std::invalid_argument("sign_forecast_eval: one-sign training window");

        const std::size_t horizon = n - m;
        std::vector<double> loss1(horizon), loss2(horizon, 0.5), loss3(horizon);

        PhiParams phi{};
        double pi_prev = 0.5;
        std::size_t b_sum = ones;
        for (std::size_t t = m; t < n; ++t) {
            if ((t - m) % static_cast<std::size_t>(opts.refit_cadence) == 0) {
                // refit on the prefix and replay the sign filter under the
                // new phi so pi_prev becomes pi_{t-1}
                SeriesZ prefix = SeriesZ::from(
                    std::vector<std::int64_t>(series.y.begin(), series.y.begin() + t));
                phi = fit_phi(prefix, opts.fit);
                const PiPath path = filter_sign(prefix, phi, opts.fit.init);
                pi_prev = path.pi[t - 1];
            }
            // one-step-ahead forecasts of B_t
            const double pi_t =
                std::clamp(phi.c + phi.a * series.b[t - 1] + phi.b * pi_prev, 0.0, 1.0);
            const double forecast1 = pi_t;
            const double forecast3 = static_cast<double>(b_sum) / static_cast<double>(t);
            const double b_t = static_cast<double>(series.b[t]);
            loss1[t - m] = std::fabs(b_t - forecast1);
            loss3[t - m] = std::fabs(b_t - forecast3);
            b_sum += series.b[t];
            pi_prev = pi_t;
        }

        SignEvalReport report;
        report.m = m;
        double s1 = 0.0, s3 = 0.0;
        for (std::size_t i = 0; i < horizon; ++i) {
            s1 += loss1[i];
            s3 += loss3[i];
        }
        report.mae1 = s1 / static_cast<double>(horizon);
        report.mae2 = 0.5;
        report.mae3 = s3 / static_cast<double>(horizon);
        const DmResult dm2 = diebold_mariano(loss1, loss2);
        const DmResult dm3 = diebold_mariano(loss1, loss3);
        report.dm_p_mae2 = dm2.p;
        report.dm_p_mae3 = dm3.p;
        report.dm2_degenerate = dm2.degenerate;
        report.dm3_degenerate = dm3.degenerate;
        reports.push_back(report);
    }
    return reports;
}

}  // namespace mdingarch
