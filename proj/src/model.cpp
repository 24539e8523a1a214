#include "mdingarch/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mdingarch {

void ModelOrder::validate() const {
    if (p < 0 || q < 0 || p + q < 1)
        throw std::domain_error("ModelOrder: need p >= 0, q >= 0, p + q >= 1");
}

void PhiParams::validate() const {
    if (!(c > 0.0)) throw std::domain_error("PhiParams: c must be > 0");
    if (a < 0.0 || b < 0.0) throw std::domain_error("PhiParams: a, b must be >= 0");
    if (!(a + b + c < 1.0)) throw std::domain_error("PhiParams: a + b + c must be < 1");
}

double PsiParams::beta_sum() const {
    return std::accumulate(beta.begin(), beta.end(), 0.0);
}

void PsiParams::validate(const ModelOrder& order, PsiSide side) const {
    if (static_cast<int>(alpha.size()) != order.q || static_cast<int>(beta.size()) != order.p)
        throw std::domain_error("PsiParams: alpha/beta sizes must match (q, p)");
    for (double a : alpha)
        if (a < 0.0) throw std::domain_error("PsiParams: alpha must be >= 0");
    for (double b : beta)
        if (b < 0.0) throw std::domain_error("PsiParams: beta must be >= 0");
    const double bsum = beta_sum();
    if (!(bsum < 1.0)) throw std::domain_error("PsiParams: sum(beta) must be < 1");
    if (side == PsiSide::Positive) {
        if (!(omega > 0.0)) throw std::domain_error("PsiParams: omega must be > 0");
    } else {
        // 0 < 1 - sum(beta) < omega forces lambda_2t > 1 along the recursion
        if (!(1.0 - bsum < omega))
            throw std::domain_error("PsiParams: negative side needs omega > 1 - sum(beta)");
    }
}

void Theta::validate() const {
    order.validate();
    phi.validate();
    psi1.validate(order, PsiSide::Positive);
    psi2.validate(order, PsiSide::Negative);
}

std::vector<double> Theta::flatten() const {
    std::vector<double> v;
    v.reserve(dim());
    v.push_back(phi.c);
    v.push_back(phi.a);
    v.push_back(phi.b);
    for (const PsiParams* psi : {&psi1, &psi2}) {
        v.push_back(psi->omega);
        v.insert(v.end(), psi->alpha.begin(), psi->alpha.end());
        v.insert(v.end(), psi->beta.begin(), psi->beta.end());
    }
    return v;
}

Theta Theta::unflatten(const std::vector<double>& v, const ModelOrder& order) {
    if (static_cast<int>(v.size()) != order.theta_dim())
        throw std::invalid_argument("Theta::unflatten: size mismatch");
    Theta t;
    t.order = order;
    t.phi = {v[0], v[1], v[2]};
    std::size_t idx = 3;
    for (PsiParams* psi : {&t.psi1, &t.psi2}) {
        psi->omega = v[idx++];
        psi->alpha.assign(v.begin() + idx, v.begin() + idx + order.q);
        idx += order.q;
        psi->beta.assign(v.begin() + idx, v.begin() + idx + order.p);
        idx += order.p;
    }
    return t;
}

SeriesZ SeriesZ::from(std::vector<std::int64_t> values) {
    SeriesZ s;
    s.y = std::move(values);
    s.b.resize(s.y.size());
    for (std::size_t i = 0; i < s.y.size(); ++i) s.b[i] = s.y[i] >= 0 ? 1 : 0;
    return s;
}

namespace {

struct PsiInit {
    double lambda;
    std::vector<double> dlambda;  // gradient of the starting value
};

PsiInit psi_init(const PsiParams& psi, const ModelOrder& order, InitPolicy policy,
                 double sample_abs_mean) {
    PsiInit init;
    init.dlambda.assign(order.psi_dim(), 0.0);
    if (policy == InitPolicy::SampleMean) {
        init.lambda = std::max(sample_abs_mean, 1e-3);
        return init;
    }
    const double denom = 1.0 - psi.beta_sum();
    init.lambda = psi.omega / denom;
    init.dlambda[0] = 1.0 / denom;
    for (int j = 0; j < order.p; ++j)
        init.dlambda[1 + order.q + j] = psi.omega / (denom * denom);
    return init;
}

// one intensity recursion with its gradient path
void run_lambda_filter(const SeriesZ& series, const PsiParams& psi, const ModelOrder& order,
                       const PsiInit& init, std::vector<double>& lam,
                       std::vector<std::vector<double>>& dlam) {
    const std::size_t n = series.size();
    const int dim = order.psi_dim();
    lam.resize(n);
    dlam.assign(n, std::vector<double>(dim, 0.0));
    for (std::size_t t = 0; t < n; ++t) {
        double value = psi.omega;
        std::vector<double>& grad = dlam[t];
        grad[0] = 1.0;
        for (int i = 1; i <= order.q; ++i) {
            // Y_{t-i} with prehistory zeros
            const double abs_y =
                t >= static_cast<std::size_t>(i)
                    ? static_cast<double>(std::llabs(series.y[t - i]))
                    : 0.0;
            value += psi.alpha[i - 1] * abs_y;
            grad[i] = abs_y;
        }
        for (int j = 1; j <= order.p; ++j) {
            const double prev_lam = t >= static_cast<std::size_t>(j) ? lam[t - j] : init.lambda;
            const std::vector<double>& prev_grad =
                t >= static_cast<std::size_t>(j) ? dlam[t - j] : init.dlambda;
            value += psi.beta[j - 1] * prev_lam;
            grad[order.q + j] += prev_lam;
            for (int m = 0; m < dim; ++m) grad[m] += psi.beta[j - 1] * prev_grad[m];
        }
        lam[t] = value;
    }
}

}  // namespace

PiPath filter_sign(const SeriesZ& series, const PhiParams& phi, InitPolicy init) {
    phi.validate();
    const std::size_t n = series.size();
    if (n == 0) throw std::invalid_argument("filter_sign: empty series");
    PiPath path;
    path.pi.resize(n);
    path.dpi.assign(n, {0.0, 0.0, 0.0});

    // sign-probability recursion: pi_t = c + a B_{t-1} + b pi_{t-1}, B_0 = 1
    double prev_pi;
    std::array<double, 3> prev_dpi;
    if (init == InitPolicy::SampleMean) {
        double b_mean =
            std::accumulate(series.b.begin(), series.b.end(), 0.0) / static_cast<double>(n);
        prev_pi = std::clamp(b_mean, kProbClamp, 1.0 - kProbClamp);
        prev_dpi = {0.0, 0.0, 0.0};
    } else {
        prev_pi = phi.c / (1.0 - phi.b);
        prev_dpi = {1.0 / (1.0 - phi.b), 0.0, phi.c / ((1.0 - phi.b) * (1.0 - phi.b))};
    }
    for (std::size_t t = 0; t < n; ++t) {
        const double prev_b = t == 0 ? 1.0 : static_cast<double>(series.b[t - 1]);
        double pi_t = phi.c + phi.a * prev_b + phi.b * prev_pi;
        const std::array<double, 3> dpi_t = {1.0 + phi.b * prev_dpi[0],
                                             prev_b + phi.b * prev_dpi[1],
                                             prev_pi + phi.b * prev_dpi[2]};
        pi_t = std::clamp(pi_t, kProbClamp, 1.0 - kProbClamp);
        path.pi[t] = pi_t;
        path.dpi[t] = dpi_t;
        prev_pi = pi_t;
        prev_dpi = dpi_t;
    }
    return path;
}

LambdaPath filter_intensity(const SeriesZ& series, const PsiParams& psi, const ModelOrder& order,
                            PsiSide side, InitPolicy init) {
    order.validate();
    psi.validate(order, side);
    if (series.size() == 0) throw std::invalid_argument("filter_intensity: empty series");
    double abs_mean = 0.0;
    if (init == InitPolicy::SampleMean) {
        for (std::int64_t y : series.y) abs_mean += static_cast<double>(std::llabs(y));
        abs_mean /= static_cast<double>(series.size());
    }
    PsiInit pi = psi_init(psi, order, init, abs_mean);
    if (side == PsiSide::Negative && pi.lambda <= 1.0)
        pi.lambda = 1.0 + kLambdaShiftFloor;  // SampleMean guard
    LambdaPath path;
    run_lambda_filter(series, psi, order, pi, path.lam, path.dlam);
    return path;
}

FilterPath filter(const SeriesZ& series, const Theta& theta, InitPolicy init) {
    theta.validate();
    PiPath sign = filter_sign(series, theta.phi, init);
    LambdaPath l1 = filter_intensity(series, theta.psi1, theta.order, PsiSide::Positive, init);
    LambdaPath l2 = filter_intensity(series, theta.psi2, theta.order, PsiSide::Negative, init);
    FilterPath path;
    path.pi = std::move(sign.pi);
    path.dpi = std::move(sign.dpi);
    path.lam1 = std::move(l1.lam);
    path.dlam1 = std::move(l1.dlam);
    path.lam2 = std::move(l2.lam);
    path.dlam2 = std::move(l2.dlam);
    return path;
}

SeriesZ simulate(const DgpSpec& spec, std::size_t n, std::size_t burn_in, RngStream& rng) {
    spec.theta.validate();
    const ModelOrder& order = spec.theta.order;
    const std::size_t total = n + burn_in;

    const auto init_lambda = [&](const PsiParams& psi) {
        const double fp = psi.omega / (1.0 - psi.beta_sum());
        return spec.linkage == Linkage::Linear ? fp : std::exp(fp);
    };

    std::vector<double> lam1_hist(std::max(order.p, 1), init_lambda(spec.theta.psi1));
    std::vector<double> lam2_hist(std::max(order.p, 1),
                                  std::max(init_lambda(spec.theta.psi2), 1.0 + 1e-9));
    std::vector<std::int64_t> y_hist(std::max(order.q, 1), 0);
    double pi_prev = spec.sign.kind == SignSpec::Kind::IidBernoulli
                         ? spec.sign.pi
                         : spec.theta.phi.c / (1.0 - spec.theta.phi.b);
    int b_prev = 1;

    const auto step_lambda = [&](const PsiParams& psi, const std::vector<double>& lam_hist) {
        if (spec.linkage == Linkage::Linear) {
            double v = psi.omega;
            for (int i = 0; i < order.q; ++i)
                v += psi.alpha[i] * static_cast<double>(std::llabs(y_hist[i]));
            for (int j = 0; j < order.p; ++j) v += psi.beta[j] * lam_hist[j];
            return v;
        }
        double e = psi.omega;
        for (int i = 0; i < order.q; ++i)
            e += psi.alpha[i] * std::log(static_cast<double>(std::llabs(y_hist[i])) + 1.0);
        for (int j = 0; j < order.p; ++j) e += psi.beta[j] * std::log(lam_hist[j]);
        return std::exp(e);
    };

    std::vector<std::int64_t> out;
    out.reserve(n);
    for (std::size_t t = 0; t < total; ++t) {
        const double lam1 = step_lambda(spec.theta.psi1, lam1_hist);
        double lam2 = step_lambda(spec.theta.psi2, lam2_hist);
        if (!std::isfinite(lam1) || !std::isfinite(lam2) || lam1 > 1e12 || lam2 > 1e12)
            throw std::runtime_error("simulate: intensity diverged at t=" + std::to_string(t));
        if (lam2 <= 1.0) lam2 = 1.0 + 1e-9;

        double pi_t;
        if (spec.sign.kind == SignSpec::Kind::IidBernoulli) {
            pi_t = spec.sign.pi;
        } else {
            pi_t = spec.theta.phi.c + spec.theta.phi.a * b_prev + spec.theta.phi.b * pi_prev;
        }
        const int b_t = rng.bernoulli(pi_t) ? 1 : 0;

        PosDist dist;
        switch (spec.family.kind) {
            case DgpFamily::Kind::Poisson:
                dist = b_t ? PosDist::poisson(lam1) : PosDist::shifted_poisson(lam2);
                break;
            case DgpFamily::Kind::NegBinomialFixedR:
                dist = b_t ? PosDist::neg_binomial(spec.family.r1, lam1)
                           : PosDist::shifted_neg_binomial(spec.family.r2, lam2);
                break;
            case DgpFamily::Kind::NegBinomialFixedP: {
                const double p = spec.family.p;
                dist = b_t ? PosDist::neg_binomial(p * lam1 / (1.0 - p), lam1)
                           : PosDist::shifted_neg_binomial(p * (lam2 - 1.0) / (1.0 - p), lam2);
                break;
            }
        }
        const std::int64_t x = sample(dist, rng);
        const std::int64_t y_t = b_t ? x : -x;

        // shift histories (newest first)
        for (int j = static_cast<int>(lam1_hist.size()) - 1; j > 0; --j) {
            lam1_hist[j] = lam1_hist[j - 1];
            lam2_hist[j] = lam2_hist[j - 1];
        }
        lam1_hist[0] = lam1;
        lam2_hist[0] = lam2;
        for (int i = static_cast<int>(y_hist.size()) - 1; i > 0; --i) y_hist[i] = y_hist[i - 1];
        y_hist[0] = y_t;
        pi_prev = pi_t;
        b_prev = b_t;

        if (t >= burn_in) out.push_back(y_t);
    }
    return SeriesZ::from(std::move(out));
}

ConditionalMoments conditional_moments(const FilterPath& path, std::size_t t,
                                       const DgpFamily& family) {
    if (t >= path.pi.size()) throw std::out_of_range("conditional_moments: index out of range");
    const double pi = path.pi[t];
    const double lam1 = path.lam1[t];
    const double lam2 = path.lam2[t];

    double var1 = lam1;
    double var2 = lam2 - 1.0;
    switch (family.kind) {
        case DgpFamily::Kind::Poisson:
            break;
        case DgpFamily::Kind::NegBinomialFixedR:
            var1 += lam1 * lam1 / family.r1;
            var2 += (lam2 - 1.0) * (lam2 - 1.0) / family.r2;
            break;
        case DgpFamily::Kind::NegBinomialFixedP:
            var1 = lam1 / family.p;
            var2 = (lam2 - 1.0) / family.p;
            break;
    }
    ConditionalMoments m;
    m.mean = pi * lam1 - (1.0 - pi) * lam2;
    m.variance = pi * var1 + (1.0 - pi) * var2 + pi * (1.0 - pi) * (lam1 + lam2) * (lam1 + lam2);
    return m;
}

}  // namespace mdingarch
