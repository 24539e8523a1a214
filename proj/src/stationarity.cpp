#include "mdingarch/stationarity.hpp"

#include <cmath>
#include <stdexcept>

namespace mdingarch {

SignMode SignMode::bounds(double pi1_plus, double pi0_plus) {
    SignMode m;
    m.kind = Kind::Bounds;
    m.pi1_plus = pi1_plus;
    m.pi0_plus = pi0_plus;
    return m;
}

SignMode SignMode::iid(double pi) {
    SignMode m;
    m.kind = Kind::Iid;
    m.pi = pi;
    return m;
}

SignMode SignMode::markov(double p00, double p01, double p10, double p11) {
    SignMode m;
    m.kind = Kind::MarkovChain;
    m.p00 = p00;
    m.p01 = p01;
    m.p10 = p10;
    m.p11 = p11;
    return m;
}

SignMode SignMode::bernoulli_ingarch() {
    SignMode m;
    m.kind = Kind::BernoulliIngarch;
    return m;
}

namespace {

// resolve (pi_1^+, pi_0^+) for the chosen sign mode
std::pair<double, double> sign_bounds(const Theta& theta, const SignMode& mode) {
    switch (mode.kind) {
        case SignMode::Kind::Bounds:
            return {mode.pi1_plus, mode.pi0_plus};
        case SignMode::Kind::Iid:
            if (!(mode.pi > 0.0 && mode.pi < 1.0))
                throw std::domain_error("SignMode: iid pi must be in (0,1)");
            return {mode.pi, 1.0 - mode.pi};
        case SignMode::Kind::MarkovChain:
            return {std::max(mode.p01, mode.p11), std::max(mode.p10, mode.p00)};
        case SignMode::Kind::BernoulliIngarch:
            return {theta.phi.a + theta.phi.b + theta.phi.c, 1.0 - theta.phi.c};
    }
    throw std::logic_error("unreachable");
}

double alpha_at(const PsiParams& psi, int lag, int q) {
    return lag <= q ? psi.alpha[lag - 1] : 0.0;
}

double beta_at(const PsiParams& psi, int lag, int p) {
    return lag <= p ? psi.beta[lag - 1] : 0.0;
}

}  // namespace

StabilityMatrix build_matrix(const Theta& theta, const SignMode& mode) {
    theta.order.validate();
    const auto [pi1, pi0] = sign_bounds(theta, mode);
    if (!(pi1 > 0.0 && pi1 < 1.0) || !(pi0 >= 1.0 - pi1 && pi0 < 1.0))
        throw std::domain_error(
            "build_matrix: bounds must satisfy pi1+ in (0,1), pi0+ in [1-pi1+, 1)");

    StabilityMatrix sm;
    sm.r = theta.order.max_lag();
    sm.pi1_plus = pi1;
    sm.pi0_plus = pi0;
    const int p = theta.order.p, q = theta.order.q;
    for (int l = 1; l <= sm.r; ++l) {
        Matrix blk(2, 2);
        blk(0, 0) = alpha_at(theta.psi1, l, q) * pi1 + beta_at(theta.psi1, l, p);
        blk(0, 1) = alpha_at(theta.psi1, l, q) * pi0;
        blk(1, 0) = alpha_at(theta.psi2, l, q) * pi1;
        blk(1, 1) = alpha_at(theta.psi2, l, q) * pi0 + beta_at(theta.psi2, l, p);
        sm.blocks.push_back(blk);
    }
    // block row of A^(l) over shifted identities
    sm.companion = Matrix(2 * sm.r, 2 * sm.r);
    for (int l = 0; l < sm.r; ++l)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) sm.companion(i, 2 * l + j) = sm.blocks[l](i, j);
    for (int l = 1; l < sm.r; ++l) {
        sm.companion(2 * l, 2 * (l - 1)) = 1.0;
        sm.companion(2 * l + 1, 2 * (l - 1) + 1) = 1.0;
    }
    return sm;
}

namespace {

double max_abs(const Matrix& m) {
    double v = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v = std::max(v, std::fabs(m(i, j)));
    return v;
}

// Gelfand limit by repeated squaring with rescaling; handles the periodic
// companion structures where plain power iteration stalls.
double rho_by_squaring(Matrix m) {
    double log_rho = 0.0;
    double weight = 1.0;
    const double n0 = max_abs(m);
    if (n0 == 0.0) return 0.0;
    log_rho = std::log(n0);
    m = m.scaled(1.0 / n0);
    for (int i = 0; i < 64; ++i) {
        m = m * m;
        weight *= 0.5;
        const double nb = max_abs(m);
        if (nb == 0.0) return 0.0;  // nilpotent
        log_rho += weight * std::log(nb);
        m = m.scaled(1.0 / nb);
    }
    return std::exp(log_rho);
}

}  // namespace

double spectral_radius(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("spectral_radius: not square");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!std::isfinite(m(i, j)))
                throw std::invalid_argument("spectral_radius: non-finite entry");
    const std::size_t n = m.rows();
    if (max_abs(m) == 0.0) return 0.0;

    // power iteration with Rayleigh-quotient convergence test
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double rho = 0.0;
    bool converged = false;
    for (int it = 0; it < 10000; ++it) {
        std::vector<double> w = m.mat_vec(v);
        double norm = 0.0, dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            norm += w[i] * w[i];
            dot += w[i] * v[i];
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        const double rho_new = dot;  // Rayleigh quotient, ||v|| = 1
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
        if (it > 2 && std::fabs(rho_new - rho) < 1e-13 * std::max(1.0, std::fabs(rho_new))) {
            rho = rho_new;
            // residual check: ||Av - rho v||
            std::vector<double> av = m.mat_vec(v);
            double res = 0.0;
            for (std::size_t i = 0; i < n; ++i) res += (av[i] - rho * v[i]) * (av[i] - rho * v[i]);
            if (std::sqrt(res) < 1e-10 * (1.0 + std::fabs(rho))) converged = true;
            break;
        }
        rho = rho_new;
    }
    if (converged) return std::fabs(rho);
    return rho_by_squaring(m);
}

double closed_form_rho(const Theta& theta, double pi) {
    if (theta.order.p != 1 || theta.order.q != 1)
        throw std::invalid_argument("closed_form_rho: requires p = q = 1");
    if (!(pi > 0.0 && pi < 1.0)) throw std::domain_error("closed_form_rho: pi must be in (0,1)");
    const double a1 = theta.psi1.alpha[0], b1 = theta.psi1.beta[0];
    const double a2 = theta.psi2.alpha[0], b2 = theta.psi2.beta[0];
    const double sum = a1 * pi + b1 + a2 * (1.0 - pi) + b2;
    const double diff = a1 * pi + b1 - a2 * (1.0 - pi) - b2;
    return 0.5 * (sum + std::sqrt(diff * diff + 4.0 * a1 * a2 * pi * (1.0 - pi)));
}

ConditionReport check_conditions(const Theta& theta, const SignMode& mode) {
    ConditionReport report;
    const StabilityMatrix sm = build_matrix(theta, mode);
    report.rho = spectral_radius(sm.companion);
    report.sufficient_spectral = report.rho < 1.0;
    report.necessary_betas = theta.psi1.beta_sum() < 1.0 && theta.psi2.beta_sum() < 1.0;
    if (mode.kind == SignMode::Kind::Iid) {
        double sa1 = 0.0, sa2 = 0.0;
        for (double a : theta.psi1.alpha) sa1 += a;
        for (double a : theta.psi2.alpha) sa2 += a;
        const double persistence = mode.pi * sa1 / (1.0 - theta.psi1.beta_sum()) +
                                   (1.0 - mode.pi) * sa2 / (1.0 - theta.psi2.beta_sum());
        report.necessary_persistence = report.necessary_betas && persistence < 1.0;
        if (theta.order.p == 1 && theta.order.q == 1)
            report.note = "p=q=1 iid sign: necessary conditions are also sufficient";
    } else if (!report.sufficient_spectral && report.necessary_betas) {
        // the sufficient condition is generally conservative for non-iid signs
        report.inconclusive = true;
        report.note = "sufficient condition fails but necessary conditions hold; inconclusive";
    }
    return report;
}

StationaryMean stationary_mean(const Theta& theta, double pi) {
    theta.validate();
    if (!(pi > 0.0 && pi < 1.0)) throw std::domain_error("stationary_mean: pi must be in (0,1)");
    double sa1 = 0.0, sa2 = 0.0;
    for (double a : theta.psi1.alpha) sa1 += a;
    for (double a : theta.psi2.alpha) sa2 += a;
    const double d1 = 1.0 - theta.psi1.beta_sum();
    const double d2 = 1.0 - theta.psi2.beta_sum();
    const double persistence = pi * sa1 / d1 + (1.0 - pi) * sa2 / d2;
    if (!(d1 > 0.0 && d2 > 0.0 && persistence < 1.0))
        throw std::domain_error("stationary_mean: parameters violate the stationarity conditions");
    const double e_abs = (pi * theta.psi1.omega / d1 + (1.0 - pi) * theta.psi2.omega / d2) /
                         (1.0 - persistence);
    const double e_y = pi * (theta.psi1.omega + sa1 * e_abs) / d1 -
                       (1.0 - pi) * (theta.psi2.omega + sa2 * e_abs) / d2;
    return {e_abs, e_y};
}

}  // namespace mdingarch
