#include "mdingarch/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mdingarch/optimize.hpp"

namespace mdingarch {

namespace {

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double logit(double p) { return std::log(p / (1.0 - p)); }

// per-observation score factors
double phi_factor(int b, double pi) {
    return b ? 1.0 / pi : -1.0 / (1.0 - pi);
}

double psi1_factor(std::int64_t y, double lam1) { return static_cast<double>(y) / lam1 - 1.0; }

double psi2_factor(std::int64_t y, double lam2) {
    const double shift = std::max(lam2 - 1.0, kLambdaShiftFloor);
    return -(static_cast<double>(y) + 1.0) / shift - 1.0;
}

// ---- unconstrained reparameterizations ---------------------------------
//
// phi: (c, a, b) = softmax(u, slack logit fixed at 0), so the simplex
// constraint c + a + b < 1 with positive slack holds by construction.
//
// psi (either side): omega = omega_cap * sigmoid(u0) on the positive side,
// omega = (1 - sum beta) + omega_cap * sigmoid(u0) on the negative side;
// alpha_i = cap * sigmoid(u_{1+i}); beta_j = cap * e^{v_j} / (1 + sum e^v),
// which bounds sum beta < cap < 1. All maps are smooth bijections onto the
// open feasible box, so BFGS runs unconstrained.

PhiParams phi_from_u(const std::vector<double>& u) {
    // max-shifted softmax over (u0, u1, u2, 0) so extreme logits cannot
    // overflow; tiny clamps keep the result strictly interior
    double mx = 0.0;
    for (int i = 0; i < 3; ++i) mx = std::max(mx, u[i]);
    double denom = std::exp(-mx);
    double e[3];
    for (int i = 0; i < 3; ++i) {
        e[i] = std::exp(u[i] - mx);
        denom += e[i];
    }
    PhiParams phi{e[0] / denom, e[1] / denom, e[2] / denom};
    constexpr double tiny = 1e-12;
    phi.c = std::max(phi.c, tiny);
    phi.a = std::max(phi.a, 0.0);
    phi.b = std::max(phi.b, 0.0);
    const double s = phi.c + phi.a + phi.b;
    if (s >= 1.0 - tiny) {
        const double scale = (1.0 - 2.0 * tiny) / s;
        phi.c *= scale;
        phi.a *= scale;
        phi.b *= scale;
    }
    return phi;
}

std::vector<double> phi_to_u(const PhiParams& phi) {
    const double slack = 1.0 - phi.c - phi.a - phi.b;
    return {std::log(phi.c / slack), std::log(phi.a / slack), std::log(phi.b / slack)};
}

// chain rule: grad_u[j] = sum_i g_i * p_i (delta_ij - p_j)
void phi_chain(const PhiParams& phi, const std::array<double, 3>& g, std::vector<double>& gu) {
    const double p[3] = {phi.c, phi.a, phi.b};
    double gp = 0.0;
    for (int i = 0; i < 3; ++i) gp += g[i] * p[i];
    for (int j = 0; j < 3; ++j) gu[j] = p[j] * (g[j] - gp);
}

struct PsiBox {
    double cap = 0.999;    // bound on each alpha_i and on sum beta
    double omega_cap = 10.0;
    PsiSide side = PsiSide::Positive;
};

PsiParams psi_from_u(const std::vector<double>& u, const ModelOrder& order, const PsiBox& box) {
    PsiParams psi;
    psi.alpha.resize(order.q);
    psi.beta.resize(order.p);
    for (int i = 0; i < order.q; ++i) psi.alpha[i] = box.cap * sigmoid(u[1 + i]);
    // max-shifted softmax over (v_1..v_p, 0), scaled by cap
    double mx = 0.0;
    for (int j = 0; j < order.p; ++j) mx = std::max(mx, u[1 + order.q + j]);
    double denom = std::exp(-mx);
    std::vector<double> ev(order.p);
    for (int j = 0; j < order.p; ++j) {
        ev[j] = std::exp(u[1 + order.q + j] - mx);
        denom += ev[j];
    }
    for (int j = 0; j < order.p; ++j) psi.beta[j] = box.cap * ev[j] / denom;
    const double base = std::max(box.omega_cap * sigmoid(u[0]), 1e-12);
    psi.omega = box.side == PsiSide::Positive ? base : (1.0 - psi.beta_sum()) + base;
    return psi;
}

std::vector<double> psi_to_u(const PsiParams& psi, const ModelOrder& order, const PsiBox& box) {
    std::vector<double> u(order.psi_dim());
    const double bsum = psi.beta_sum();
    const double base =
        box.side == PsiSide::Positive ? psi.omega : psi.omega - (1.0 - bsum);
    u[0] = logit(std::clamp(base / box.omega_cap, 1e-8, 1.0 - 1e-8));
    for (int i = 0; i < order.q; ++i)
        u[1 + i] = logit(std::clamp(psi.alpha[i] / box.cap, 1e-8, 1.0 - 1e-8));
    const double slack = 1.0 - bsum / box.cap;
    for (int j = 0; j < order.p; ++j) {
        const double w = std::max(psi.beta[j] / box.cap, 1e-12);
        u[1 + order.q + j] = std::log(w / slack);
    }
    return u;
}

// chain rule for the psi map; g is the gradient in (omega, alpha, beta)
void psi_chain(const PsiParams& psi, const ModelOrder& order, const PsiBox& box,
               const std::vector<double>& u, const std::vector<double>& g,
               std::vector<double>& gu) {
    const double s0 = sigmoid(u[0]);
    gu[0] = g[0] * box.omega_cap * s0 * (1.0 - s0);
    for (int i = 0; i < order.q; ++i) {
        const double s = sigmoid(u[1 + i]);
        gu[1 + i] = g[1 + i] * box.cap * s * (1.0 - s);
    }
    const double bsum = psi.beta_sum();
    for (int k = 0; k < order.p; ++k) {
        // d beta_j / d v_k = beta_j delta_jk - beta_j beta_k / cap
        double acc = 0.0;
        for (int j = 0; j < order.p; ++j) {
            const double jac = (j == k ? psi.beta[j] : 0.0) - psi.beta[j] * psi.beta[k] / box.cap;
            acc += g[1 + order.q + j] * jac;
        }
        if (box.side == PsiSide::Negative) {
            // omega = (1 - sum beta) + base couples omega to the beta logits
            const double domega = -(psi.beta[k] - bsum * psi.beta[k] / box.cap);
            acc += g[0] * domega;
        }
        gu[1 + order.q + k] = acc;
    }
}

// ---- block objectives ---------------------------------------------------

// average sign log-likelihood and its (c,a,b) gradient
double phi_loglik(const SeriesZ& series, const PhiParams& phi, InitPolicy init,
                  std::array<double, 3>* grad) {
    const PiPath path = filter_sign(series, phi, init);
    const std::size_t n = series.size();
    double ll = 0.0;
    if (grad) *grad = {0.0, 0.0, 0.0};
    for (std::size_t t = 0; t < n; ++t) {
        const double pi = path.pi[t];
        ll += series.b[t] ? std::log(pi) : std::log(1.0 - pi);
        if (grad) {
            const double f = phi_factor(series.b[t], pi);
            for (int k = 0; k < 3; ++k) (*grad)[k] += f * path.dpi[t][k];
        }
    }
    ll /= static_cast<double>(n);
    if (grad)
        for (int k = 0; k < 3; ++k) (*grad)[k] /= static_cast<double>(n);
    return ll;
}

// average intensity block log-likelihood over its own sign set
double psi_loglik(const SeriesZ& series, const PsiParams& psi, const ModelOrder& order,
                  PsiSide side, InitPolicy init, std::vector<double>* grad) {
    const LambdaPath path = filter_intensity(series, psi, order, side, init);
    const std::size_t n = series.size();
    const int dim = order.psi_dim();
    double ll = 0.0;
    if (grad) grad->assign(dim, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        const std::int64_t y = series.y[t];
        if (side == PsiSide::Positive) {
            if (y < 0) continue;
            const double lam = path.lam[t];
            ll += -lam + static_cast<double>(y) * std::log(lam);
            if (grad) {
                const double f = psi1_factor(y, lam);
                for (int k = 0; k < dim; ++k) (*grad)[k] += f * path.dlam[t][k];
            }
        } else {
            if (y >= 0) continue;
            const double lam = path.lam[t];
            const double shift = std::max(lam - 1.0, kLambdaShiftFloor);
            ll += -lam - (static_cast<double>(y) + 1.0) * std::log(shift);
            if (grad) {
                const double f = psi2_factor(y, lam);
                for (int k = 0; k < dim; ++k) (*grad)[k] += f * path.dlam[t][k];
            }
        }
    }
    ll /= static_cast<double>(n);
    if (grad)
        for (int k = 0; k < dim; ++k) (*grad)[k] /= static_cast<double>(n);
    return ll;
}

std::vector<PhiParams> phi_starts(const SeriesZ& series) {
    double b_mean = 0.0;
    for (int b : series.b) b_mean += b;
    b_mean = std::clamp(b_mean / static_cast<double>(series.size()), 0.05, 0.95);
    const double pairs[5][2] = {{0.1, 0.1}, {0.3, 0.3}, {0.05, 0.6}, {0.5, 0.1}, {0.2, 0.5}};
    std::vector<PhiParams> starts;
    for (const auto& ab : pairs) {
        // choose c so the implied stationary mean c/(1-a-b) matches mean(B)
        double c = b_mean * (1.0 - ab[0] - ab[1]);
        c = std::clamp(c, 0.01, 0.98 - ab[0] - ab[1]);
        starts.push_back({c, ab[0], ab[1]});
    }
    return starts;
}

std::vector<PsiParams> psi_starts(const SeriesZ& series, const ModelOrder& order, PsiSide side) {
    double mean = 0.0;
    std::size_t count = 0;
    for (std::int64_t y : series.y) {
        const bool pos = y >= 0;
        if ((side == PsiSide::Positive) == pos) {
            mean += static_cast<double>(std::llabs(y));
            ++count;
        }
    }
    mean = count > 0 ? mean / static_cast<double>(count) : 1.0;
    if (side == PsiSide::Negative) mean = std::max(mean, 1.05);

    const double pairs[5][2] = {{0.2, 0.2}, {0.4, 0.4}, {0.1, 0.7}, {0.6, 0.1}, {0.3, 0.5}};
    std::vector<PsiParams> starts;
    for (const auto& ab : pairs) {
        PsiParams psi;
        psi.alpha.assign(order.q, ab[0] / order.q);
        psi.beta.assign(order.p, ab[1] / order.p);
        const double margin = std::max(1.0 - ab[0] - ab[1], 0.05);
        if (side == PsiSide::Positive) {
            psi.omega = std::max(mean * margin, 0.05);
        } else {
            psi.omega = (1.0 - ab[1]) + std::max((mean - 1.0) * margin, 0.05);
        }
        starts.push_back(std::move(psi));
    }
    return starts;
}

PhiParams fit_phi_block(const SeriesZ& series, const FitOptions& opts, BlockConvergence* conv) {
    const OptimOptions oo{opts.tol, opts.max_iterations};
    const auto objective = [&](const std::vector<double>& u, std::vector<double>& gu) {
        const PhiParams phi = phi_from_u(u);
        std::array<double, 3> g;
        const double ll = phi_loglik(series, phi, opts.init, &g);
        for (double& v : g) v = -v;
        phi_chain(phi, g, gu);
        return -ll;
    };
    OptimResult best;
    best.value = std::numeric_limits<double>::infinity();
    int count = 0;
    for (const PhiParams& start : phi_starts(series)) {
        if (++count > opts.multistarts) break;
        const OptimResult r = minimize_bfgs(objective, phi_to_u(start), oo);
        if (r.value < best.value) best = r;
    }
    const PhiParams phi = phi_from_u(best.x);
    if (conv) {
        std::array<double, 3> g;
        phi_loglik(series, phi, opts.init, &g);
        *conv = {best.iterations,
                 std::max({std::fabs(g[0]), std::fabs(g[1]), std::fabs(g[2])}), best.converged};
    }
    return phi;
}

}  // namespace

PhiParams fit_phi(const SeriesZ& series, const FitOptions& opts) {
    std::size_t n_pos = 0;
    for (int b : series.b) n_pos += b;
    if (series.size() < 8 || n_pos == 0 || n_pos == series.size())
        throw std::invalid_argument("fit_phi: degenerate sign sequence");
    return fit_phi_block(series, opts, nullptr);
}

double quasi_loglik(const SeriesZ& series, const Theta& theta, InitPolicy init,
                    bool with_constants) {
    if (series.size() == 0) throw std::invalid_argument("quasi_loglik: empty series");
    double ll = phi_loglik(series, theta.phi, init, nullptr) +
                psi_loglik(series, theta.psi1, theta.order, PsiSide::Positive, init, nullptr) +
                psi_loglik(series, theta.psi2, theta.order, PsiSide::Negative, init, nullptr);
    if (with_constants) {
        double c = 0.0;
        for (std::int64_t y : series.y) {
            if (y >= 0)
                c -= std::lgamma(static_cast<double>(y) + 1.0);
            else
                c += 1.0 - std::lgamma(static_cast<double>(-y));
        }
        ll += c / static_cast<double>(series.size());
    }
    return ll;
}

std::vector<double> score(const SeriesZ& series, const Theta& theta, InitPolicy init) {
    std::array<double, 3> gphi;
    std::vector<double> g1, g2;
    phi_loglik(series, theta.phi, init, &gphi);
    psi_loglik(series, theta.psi1, theta.order, PsiSide::Positive, init, &g1);
    psi_loglik(series, theta.psi2, theta.order, PsiSide::Negative, init, &g2);
    std::vector<double> s;
    s.reserve(theta.dim());
    s.insert(s.end(), gphi.begin(), gphi.end());
    s.insert(s.end(), g1.begin(), g1.end());
    s.insert(s.end(), g2.begin(), g2.end());
    return s;
}

std::vector<std::vector<double>> score_contributions(const SeriesZ& series, const Theta& theta,
                                                     InitPolicy init) {
    const FilterPath path = filter(series, theta, init);
    const std::size_t n = series.size();
    const int k = theta.order.psi_dim();
    const int d = theta.dim();
    std::vector<std::vector<double>> rows(n, std::vector<double>(d, 0.0));
    for (std::size_t t = 0; t < n; ++t) {
        std::vector<double>& row = rows[t];
        const double fphi = phi_factor(series.b[t], path.pi[t]);
        for (int j = 0; j < 3; ++j) row[j] = fphi * path.dpi[t][j];
        if (series.y[t] >= 0) {
            const double f = psi1_factor(series.y[t], path.lam1[t]);
            for (int j = 0; j < k; ++j) row[3 + j] = f * path.dlam1[t][j];
        } else {
            const double f = psi2_factor(series.y[t], path.lam2[t]);
            for (int j = 0; j < k; ++j) row[3 + k + j] = f * path.dlam2[t][j];
        }
    }
    return rows;
}

FitReport fit(const SeriesZ& series, const ModelOrder& order, const FitOptions& opts) {
    order.validate();
    const std::size_t n = series.size();
    if (n < static_cast<std::size_t>(2 * order.theta_dim()))
        throw std::invalid_argument("fit: series too short for the requested order");
    std::size_t n_pos = 0;
    std::int64_t max_abs = 1;
    for (std::int64_t y : series.y) {
        if (y >= 0) ++n_pos;
        max_abs = std::max<std::int64_t>(max_abs, std::llabs(y));
    }
    if (n_pos == 0 || n_pos == n)
        throw std::invalid_argument("fit: all observations have the same sign");

    FitReport report;
    report.n = n;
    report.init = opts.init;
    report.theta_hat.order = order;

    const OptimOptions oo{opts.tol, opts.max_iterations};
    const double omega_cap =
        std::max(opts.omega_cap_factor * static_cast<double>(max_abs), opts.omega_cap_factor);

    // phi block
    report.theta_hat.phi = fit_phi_block(series, opts, &report.blocks[0]);

    // psi blocks
    for (int block = 0; block < 2; ++block) {
        const PsiSide side = block == 0 ? PsiSide::Positive : PsiSide::Negative;
        const PsiBox box{opts.alpha_beta_cap, omega_cap, side};
        const auto objective = [&](const std::vector<double>& u, std::vector<double>& gu) {
            const PsiParams psi = psi_from_u(u, order, box);
            std::vector<double> g;
            const double ll = psi_loglik(series, psi, order, side, opts.init, &g);
            for (double& v : g) v = -v;
            psi_chain(psi, order, box, u, g, gu);
            return -ll;
        };
        OptimResult best;
        best.value = std::numeric_limits<double>::infinity();
        int count = 0;
        for (const PsiParams& start : psi_starts(series, order, side)) {
            if (++count > opts.multistarts) break;
            const OptimResult r = minimize_bfgs(objective, psi_to_u(start, order, box), oo);
            if (r.value < best.value) best = r;
        }
        PsiParams& target = side == PsiSide::Positive ? report.theta_hat.psi1 : report.theta_hat.psi2;
        target = psi_from_u(best.x, order, box);
        std::vector<double> g;
        psi_loglik(series, target, order, side, opts.init, &g);
        double gn = 0.0;
        for (double v : g) gn = std::max(gn, std::fabs(v));
        report.blocks[block + 1] = {best.iterations, gn, best.converged};
    }

    report.loglik = quasi_loglik(series, report.theta_hat, opts.init, false);
    report.loglik_with_constants = quasi_loglik(series, report.theta_hat, opts.init, true);
    if (opts.compute_covariance) asymptotic_covariance(series, report);
    return report;
}

void asymptotic_covariance(const SeriesZ& series, FitReport& report) {
    const Theta& theta = report.theta_hat;
    const ModelOrder& order = theta.order;
    const FilterPath path = filter(series, theta, report.init);
    const std::size_t n = series.size();
    const int k = order.psi_dim();
    const int d = order.theta_dim();

    Matrix pi_mat(3, 3), j1(k, k), i1(k, k), j2(k, k), i2(k, k);
    for (std::size_t t = 0; t < n; ++t) {
        const double pi = path.pi[t];
        const double wpi = 1.0 / (pi * (1.0 - pi));
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) pi_mat(r, c) += wpi * path.dpi[t][r] * path.dpi[t][c];

        const std::int64_t y = series.y[t];
        if (y >= 0) {
            const double lam = path.lam1[t];
            const double wj = static_cast<double>(y) / (lam * lam);
            const double si = psi1_factor(y, lam);
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) {
                    const double outer = path.dlam1[t][r] * path.dlam1[t][c];
                    j1(r, c) += wj * outer;
                    i1(r, c) += si * si * outer;
                }
        } else {
            const double lam = path.lam2[t];
            const double shift = std::max(lam - 1.0, kLambdaShiftFloor);
            const double wj = -(static_cast<double>(y) + 1.0) / (shift * shift);
            const double si = psi2_factor(y, lam);
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) {
                    const double outer = path.dlam2[t][r] * path.dlam2[t][c];
                    j2(r, c) += wj * outer;
                    i2(r, c) += si * si * outer;
                }
        }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    report.pi_hat = pi_mat.scaled(inv_n);
    report.j1_hat = j1.scaled(inv_n);
    report.i1_hat = i1.scaled(inv_n);
    report.j2_hat = j2.scaled(inv_n);
    report.i2_hat = i2.scaled(inv_n);

    report.sigma_hat = Matrix(d, d);
    report.se.assign(d, std::numeric_limits<double>::quiet_NaN());

    const auto fill_block = [&](int offset, const Matrix& cov, int idx) {
        const int m = static_cast<int>(cov.rows());
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) report.sigma_hat(offset + r, offset + c) = cov(r, c);
        bool ok = true;
        for (int r = 0; r < m; ++r) {
            const double v = cov(r, r) * inv_n;
            if (v >= 0.0 && std::isfinite(v))
                report.se[offset + r] = std::sqrt(v);
            else
                ok = false;
        }
        report.block_se_ok[idx] = ok;
    };

    Matrix pi_inv, j1_inv, j2_inv;
    if (try_inverse(report.pi_hat, pi_inv)) {
        fill_block(0, pi_inv, 0);
    }
    if (try_inverse(report.j1_hat, j1_inv)) {
        fill_block(3, j1_inv * report.i1_hat * j1_inv, 1);
    }
    if (try_inverse(report.j2_hat, j2_inv)) {
        fill_block(3 + k, j2_inv * report.i2_hat * j2_inv, 2);
    }
}

DispersionEstimates estimate_dispersion(const SeriesZ& series, const FitReport& fit) {
    const FilterPath path = filter(series, fit.theta_hat, fit.init);
    const std::size_t n = series.size();
    double acc1 = 0.0, acc2 = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double pi = path.pi[t];
        const double lam1 = path.lam1[t];
        const double lam2 = path.lam2[t];
        const double y = static_cast<double>(series.y[t]);
        const double pos_sq = series.y[t] >= 0 ? (y - lam1) * (y - lam1) : 0.0;
        acc1 += (pos_sq - pi * lam1) / (pi * lam1 * lam1);
        const double shift = std::max(lam2 - 1.0, kLambdaShiftFloor);
        const double neg_sq = series.y[t] < 0 ? (-y - lam2) * (-y - lam2) : 0.0;
        acc2 += (neg_sq - (1.0 - pi) * shift) / ((1.0 - pi) * shift * shift);
    }
    DispersionEstimates est;
    est.r1_finite = acc1 > 0.0;
    est.r2_finite = acc2 > 0.0;
    est.r1 = est.r1_finite ? static_cast<double>(n) / acc1
                           : std::numeric_limits<double>::infinity();
    est.r2 = est.r2_finite ? static_cast<double>(n) / acc2
                           : std::numeric_limits<double>::infinity();
    return est;
}

}  // namespace mdingarch
