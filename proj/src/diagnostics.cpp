#include "mdingarch/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mdingarch/rng.hpp"
#include "mdingarch/special.hpp"

namespace mdingarch {

namespace {

// block-diagonal J = diag(Pi, J1, J2) and its inverse
bool j_matrix_inverse(const FitReport& fit, Matrix& out) {
    const int k = fit.theta_hat.order.psi_dim();
    const int d = fit.theta_hat.order.theta_dim();
    Matrix pi_inv, j1_inv, j2_inv;
    if (!try_inverse(fit.pi_hat, pi_inv) || !try_inverse(fit.j1_hat, j1_inv) ||
        !try_inverse(fit.j2_hat, j2_inv))
        return false;
    out = Matrix(d, d);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out(r, c) = pi_inv(r, c);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) {
            out(3 + r, 3 + c) = j1_inv(r, c);
            out(3 + k + r, 3 + k + c) = j2_inv(r, c);
        }
    return true;
}

// d eps_t / d theta rows from the filtered gradient paths; the sign block
// does not enter the residual.
std::vector<std::vector<double>> residual_gradients(const SeriesZ& series, const FilterPath& path,
                                                    const ModelOrder& order) {
    const std::size_t n = series.size();
    const int k = order.psi_dim();
    const int d = order.theta_dim();
    std::vector<std::vector<double>> rows(n, std::vector<double>(d, 0.0));
    for (std::size_t t = 0; t < n; ++t) {
        if (series.y[t] >= 0) {
            for (int j = 0; j < k; ++j) rows[t][3 + j] = -path.dlam1[t][j];
        } else {
            for (int j = 0; j < k; ++j) rows[t][3 + k + j] = path.dlam2[t][j];
        }
    }
    return rows;
}

// keep a Newton-stepped theta inside the feasible region; the step is
// O(1/sqrt(n)) so the projection is almost always inactive
Theta project_theta(const Theta& theta) {
    Theta t = theta;
    const double eps = 1e-8;
    t.phi.c = std::max(t.phi.c, eps);
    t.phi.a = std::max(t.phi.a, 0.0);
    t.phi.b = std::max(t.phi.b, 0.0);
    const double s = t.phi.c + t.phi.a + t.phi.b;
    if (s >= 1.0 - eps) {
        const double scale = (1.0 - 2.0 * eps) / s;
        t.phi.c *= scale;
        t.phi.a *= scale;
        t.phi.b *= scale;
    }
    for (PsiParams* psi : {&t.psi1, &t.psi2}) {
        for (double& a : psi->alpha) a = std::max(a, 0.0);
        for (double& b : psi->beta) b = std::max(b, 0.0);
        double bsum = psi->beta_sum();
        if (bsum >= 1.0 - eps) {
            const double scale = (1.0 - 2.0 * eps) / bsum;
            for (double& b : psi->beta) b *= scale;
            bsum = psi->beta_sum();
        }
        if (psi == &t.psi1)
            psi->omega = std::max(psi->omega, eps);
        else
            psi->omega = std::max(psi->omega, 1.0 - bsum + eps);
    }
    return t;
}

}  // namespace

ResidualSeries residuals(const SeriesZ& series, const FitReport& fit) {
    const FilterPath path = filter(series, fit.theta_hat, fit.init);
    const std::size_t n = series.size();
    ResidualSeries res;
    res.eps.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double y = static_cast<double>(series.y[t]);
        res.eps[t] = series.y[t] >= 0 ? y - path.lam1[t] : y + path.lam2[t];
        res.gamma0 += res.eps[t] * res.eps[t];
    }
    res.gamma0 /= static_cast<double>(n);
    return res;
}

std::vector<double> residual_acf(const ResidualSeries& res, int k) {
    const std::size_t n = res.eps.size();
    if (k < 1 || static_cast<std::size_t>(k) >= n)
        throw std::invalid_argument("residual_acf: need 1 <= k < n");
    if (!(res.gamma0 > 0.0)) throw std::runtime_error("residual_acf: degenerate residuals");
    std::vector<double> rho(k, 0.0);
    for (int h = 1; h <= k; ++h) {
        double g = 0.0;
        for (std::size_t t = h; t < n; ++t) g += res.eps[t] * res.eps[t - h];
        rho[h - 1] = g / static_cast<double>(n) / res.gamma0;
    }
    return rho;
}

Matrix v_hat(const SeriesZ& series, const FitReport& fit, const ResidualSeries& res, int k) {
    const std::size_t n = series.size();
    const int d = fit.theta_hat.order.theta_dim();
    const FilterPath path = filter(series, fit.theta_hat, fit.init);
    const std::vector<std::vector<double>> deps =
        residual_gradients(series, path, fit.theta_hat.order);
    const std::vector<std::vector<double>> scores =
        score_contributions(series, fit.theta_hat, fit.init);

    const auto eps = [&](std::ptrdiff_t t) {
        return t >= 0 && t < static_cast<std::ptrdiff_t>(n) ? res.eps[t] : 0.0;
    };

    Matrix e_mat(k, k), d_mat(k, d), c_mat(k, d);
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) {
            double acc = 0.0;
            for (std::size_t t = 0; t < n; ++t)
                acc += res.eps[t] * res.eps[t] * eps(static_cast<std::ptrdiff_t>(t) - i) *
                       eps(static_cast<std::ptrdiff_t>(t) - j);
            e_mat(i - 1, j - 1) = acc / static_cast<double>(n);
        }
        for (int j = 0; j < d; ++j) {
            double acc_d = 0.0, acc_c = 0.0;
            for (std::size_t t = 0; t < n; ++t) {
                // D: forward index eps_t * d eps_{t+i}, truncated at n
                if (t + i < n) acc_d += res.eps[t] * deps[t + i][j];
                acc_c += res.eps[t] * eps(static_cast<std::ptrdiff_t>(t) - i) * scores[t][j];
            }
            d_mat(i - 1, j) = acc_d / static_cast<double>(n);
            c_mat(i - 1, j) = acc_c / static_cast<double>(n);
        }
    }

    Matrix j_inv;
    Matrix v(k, k);
    if (j_matrix_inverse(fit, j_inv)) {
        v = e_mat + c_mat * j_inv * d_mat.transpose() + d_mat * j_inv * c_mat.transpose() +
            d_mat * fit.sigma_hat * d_mat.transpose();
    } else {
        v = e_mat;  // degenerate-information fallback; flagged downstream via p1
    }
    v = v.scaled(1.0 / (res.gamma0 * res.gamma0));
    v.symmetrize();
    return v;
}

double portmanteau_p1(const std::vector<double>& rho, const Matrix& v, std::size_t n,
                      bool* pseudo_inverse_used) {
    Matrix v_inv;
    bool pseudo = false;
    if (!try_inverse(v, v_inv)) {
        v_inv = symmetric_pseudo_inverse(v);
        pseudo = true;
    }
    if (pseudo_inverse_used) *pseudo_inverse_used = pseudo;
    const double stat = static_cast<double>(n) * quadratic_form(rho, v_inv);
    return 1.0 - chi_square_cdf(std::max(stat, 0.0), static_cast<int>(rho.size()));
}

BootstrapResult rw_bootstrap(const SeriesZ& series, const FitReport& fit,
                             const ResidualSeries& res, int k, int B, std::uint64_t seed,
                             int threads, BootstrapWeights weights) {
    BootstrapResult result;
    if (B < 1) throw std::invalid_argument("rw_bootstrap: B must be >= 1");
    Matrix j_inv;
    if (!j_matrix_inverse(fit, j_inv)) {
        result.note = "J matrix singular; bootstrap unavailable";
        return result;
    }
    const std::size_t n = series.size();
    const int d = fit.theta_hat.order.theta_dim();
    const std::vector<double> rho = residual_acf(res, k);
    const std::vector<double> theta_flat = fit.theta_hat.flatten();
    const std::vector<std::vector<double>> scores =
        score_contributions(series, fit.theta_hat, fit.init);

    std::vector<std::vector<double>> rho_star(B);
    const auto run_replicate = [&](int rep) {
        RngStream rng = RngStream::derived(seed, static_cast<std::uint64_t>(rep));
        std::vector<double> w(n, 1.0);
        if (weights == BootstrapWeights::Exponential)
            for (std::size_t t = 0; t < n; ++t) w[t] = rng.exponential();

        // Newton step theta* = theta_hat + J^-1 (1/n) sum (w_t - 1) s_t
        std::vector<double> g(d, 0.0);
        for (std::size_t t = 0; t < n; ++t)
            for (int j = 0; j < d; ++j) g[j] += (w[t] - 1.0) * scores[t][j];
        for (double& v : g) v /= static_cast<double>(n);
        const std::vector<double> step = j_inv.mat_vec(g);
        std::vector<double> theta_star_flat(theta_flat);
        for (int j = 0; j < d; ++j) theta_star_flat[j] += step[j];
        const Theta theta_star =
            project_theta(Theta::unflatten(theta_star_flat, fit.theta_hat.order));

        // weighted residual autocovariances at theta*, over the unweighted gamma0
        const FilterPath path = filter(series, theta_star, fit.init);
        std::vector<double> eps(n);
        for (std::size_t t = 0; t < n; ++t) {
            const double y = static_cast<double>(series.y[t]);
            eps[t] = series.y[t] >= 0 ? y - path.lam1[t] : y + path.lam2[t];
        }
        std::vector<double> rs(k);
        for (int h = 1; h <= k; ++h) {
            double gamma = 0.0;
            for (std::size_t t = h; t < n; ++t) gamma += w[t] * eps[t] * eps[t - h];
            rs[h - 1] = gamma / static_cast<double>(n) / res.gamma0 - rho[h - 1];
        }
        rho_star[rep] = std::move(rs);
    };

    threads = std::max(threads, 1);
    if (threads == 1) {
        for (int rep = 0; rep < B; ++rep) run_replicate(rep);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w)
            pool.emplace_back([&, w]() {
                for (int rep = w; rep < B; rep += threads) run_replicate(rep);
            });
        for (std::thread& t : pool) t.join();
    }

    double rho_sq = 0.0;
    for (double r : rho) rho_sq += r * r;
    int exceed = 0;
    std::vector<double> mean(k, 0.0);
    for (int rep = 0; rep < B; ++rep) {
        double sq = 0.0;
        for (int h = 0; h < k; ++h) {
            sq += rho_star[rep][h] * rho_star[rep][h];
            mean[h] += rho_star[rep][h];
        }
        if (sq > rho_sq) ++exceed;
    }
    for (double& m : mean) m /= static_cast<double>(B);

    result.p2 = static_cast<double>(exceed) / static_cast<double>(B);
    result.v_star = Matrix(k, k);
    for (int rep = 0; rep < B; ++rep)
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                result.v_star(i, j) +=
                    (rho_star[rep][i] - mean[i]) * (rho_star[rep][j] - mean[j]);
    result.v_star = result.v_star.scaled(static_cast<double>(n) / static_cast<double>(B));
    result.ok = true;
    return result;
}

GofReport run_gof(const SeriesZ& series, const FitReport& fit, int k, int B, std::uint64_t seed,
                  int threads) {
    GofReport report;
    report.k = k;
    report.B = B;
    report.seed = seed;
    report.n = series.size();

    const ResidualSeries res = residuals(series, fit);
    report.rho_hat = residual_acf(res, k);
    report.v_hat = v_hat(series, fit, res, k);
    report.p1_plugin = portmanteau_p1(report.rho_hat, report.v_hat, report.n,
                                      &report.pseudo_inverse_used);
    {
        Matrix v_inv;
        if (!try_inverse(report.v_hat, v_inv)) v_inv = symmetric_pseudo_inverse(report.v_hat);
        report.stat_plugin = static_cast<double>(report.n) * quadratic_form(report.rho_hat, v_inv);
    }

    const BootstrapResult boot = rw_bootstrap(series, fit, res, k, B, seed, threads);
    report.bootstrap_ok = boot.ok;
    if (boot.ok) {
        report.v_star = boot.v_star;
        report.p2 = boot.p2;
        bool pseudo = false;
        report.p1 = portmanteau_p1(report.rho_hat, report.v_star, report.n, &pseudo);
        report.pseudo_inverse_used = report.pseudo_inverse_used || pseudo;
        Matrix v_inv;
        if (!try_inverse(report.v_star, v_inv)) v_inv = symmetric_pseudo_inverse(report.v_star);
        report.stat = static_cast<double>(report.n) * quadratic_form(report.rho_hat, v_inv);
    } else {
        // bootstrap unavailable: fall back to the plug-in variant
        report.p1 = report.p1_plugin;
        report.stat = report.stat_plugin;
    }
    return report;
}

}  // namespace mdingarch
