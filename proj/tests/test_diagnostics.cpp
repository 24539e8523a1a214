#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "mdingarch/diagnostics.hpp"
#include "mdingarch/model.hpp"
#include "mdingarch/rng.hpp"
#include "mdingarch/special.hpp"

using namespace mdingarch;

namespace {

Theta benchmark_theta() {
    Theta theta;
    theta.phi = {0.2, 0.2, 0.2};
    theta.psi1.omega = 1.0;
    theta.psi1.alpha = {0.3};
    theta.psi1.beta = {0.3};
    theta.psi2.omega = 2.0;
    theta.psi2.alpha = {0.3};
    theta.psi2.beta = {0.3};
    return theta;
}

SeriesZ simulate_benchmark(std::size_t n, std::uint64_t seed) {
    DgpSpec spec;
    spec.theta = benchmark_theta();
    RngStream rng(seed);
    return simulate(spec, n, 500, rng);
}

}  // namespace

TEST_CASE("residual branches match hand arithmetic") {
    // zero-dynamics parameters pin the fitted intensities at their omegas
    FitReport fit;
    fit.theta_hat = benchmark_theta();
    fit.theta_hat.phi = {0.5, 0.0, 0.0};
    fit.theta_hat.psi1 = {2.5, {0.0}, {0.0}};
    fit.theta_hat.psi2 = {1.5, {0.0}, {0.0}};

    const SeriesZ series = SeriesZ::from({3, -2});
    const ResidualSeries res = residuals(series, fit);
    REQUIRE(res.eps.size() == 2);
    CHECK(res.eps[0] == doctest::Approx(0.5).epsilon(1e-12));   // 3 - 2.5
    CHECK(res.eps[1] == doctest::Approx(-0.5).epsilon(1e-12));  // -2 + 1.5
    CHECK(res.gamma0 == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("residual acf follows the zero-padding convention") {
    const int n = 50;
    ResidualSeries constant;
    constant.eps.assign(n, 2.0);
    constant.gamma0 = 4.0;
    const std::vector<double> rho = residual_acf(constant, 5);
    for (int h = 1; h <= 5; ++h)
        CHECK(rho[h - 1] == doctest::Approx(static_cast<double>(n - h) / n).epsilon(1e-12));

    ResidualSeries alternating;
    for (int t = 0; t < n; ++t) alternating.eps.push_back(t % 2 == 0 ? 1.0 : -1.0);
    alternating.gamma0 = 1.0;
    const std::vector<double> rho2 = residual_acf(alternating, 2);
    CHECK(rho2[0] == doctest::Approx(-static_cast<double>(n - 1) / n).epsilon(1e-12));
    CHECK(rho2[1] == doctest::Approx(static_cast<double>(n - 2) / n).epsilon(1e-12));

    ResidualSeries degenerate;
    degenerate.eps.assign(n, 0.0);
    degenerate.gamma0 = 0.0;
    CHECK_THROWS(residual_acf(degenerate, 3));
}

TEST_CASE("residuals of a correct model are small-acf white noise") {
    const SeriesZ series = simulate_benchmark(20000, 51);
    FitReport fitted = fit(series, ModelOrder{});
    const ResidualSeries res = residuals(series, fitted);
    double mean = 0.0;
    for (double e : res.eps) mean += e;
    mean /= static_cast<double>(res.eps.size());
    CHECK(std::fabs(mean) < 0.05);
    const std::vector<double> rho = residual_acf(res, 10);
    const double bound = 4.0 / std::sqrt(static_cast<double>(series.size()));
    for (double r : rho) CHECK(std::fabs(r) < bound);
}

TEST_CASE("portmanteau p1 matches the chi-square tail") {
    const int k = 10;
    const std::size_t n = 1000;
    CHECK(portmanteau_p1(std::vector<double>(k, 0.0), Matrix::identity(k), n) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // rho and V rigged so the statistic is the chi2_10 95th percentile 18.307
    std::vector<double> rho(k, 0.0);
    rho[0] = std::sqrt(18.307 / static_cast<double>(n));
    CHECK(portmanteau_p1(rho, Matrix::identity(k), n) ==
          doctest::Approx(0.05000058909139812).epsilon(1e-6));
    CHECK(chi_square_cdf(18.307, 10) == doctest::Approx(0.95).epsilon(1e-4));

    // numerically singular V falls back to the pseudo-inverse and flags it
    Matrix singular(k, k);
    singular(0, 0) = 1.0;  // rank one
    bool pseudo = false;
    const double p = portmanteau_p1(rho, singular, n, &pseudo);
    CHECK(pseudo);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
}

TEST_CASE("v_hat is symmetric and positive semidefinite") {
    const SeriesZ series = simulate_benchmark(1500, 52);
    FitReport fitted = fit(series, ModelOrder{});
    const ResidualSeries res = residuals(series, fitted);
    const int k = 6;
    const Matrix v = v_hat(series, fitted, res, k);
    REQUIRE(v.rows() == static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) CHECK(v(i, j) == doctest::Approx(v(j, i)).epsilon(1e-12));
    CHECK(min_symmetric_eigenvalue(v) > -1e-8);
    for (int i = 0; i < k; ++i) CHECK(v(i, i) > 0.0);
}

TEST_CASE("degenerate bootstrap weights collapse every replicate") {
    const SeriesZ series = simulate_benchmark(600, 53);
    FitReport fitted = fit(series, ModelOrder{});
    const ResidualSeries res = residuals(series, fitted);
    const BootstrapResult boot = rw_bootstrap(series, fitted, res, 10, 100, 7, 1,
                                              BootstrapWeights::DegenerateOne);
    REQUIRE(boot.ok);
    CHECK(boot.p2 == 0.0);  // strict inequality never fires on rho* = 0
    for (std::size_t i = 0; i < boot.v_star.rows(); ++i)
        for (std::size_t j = 0; j < boot.v_star.cols(); ++j)
            CHECK(std::fabs(boot.v_star(i, j)) < 1e-18);
}

TEST_CASE("bootstrap is deterministic across thread counts") {
    const SeriesZ series = simulate_benchmark(600, 54);
    FitReport fitted = fit(series, ModelOrder{});
    const ResidualSeries res = residuals(series, fitted);
    const BootstrapResult one = rw_bootstrap(series, fitted, res, 10, 200, 99, 1);
    const BootstrapResult four = rw_bootstrap(series, fitted, res, 10, 200, 99, 4);
    REQUIRE(one.ok);
    REQUIRE(four.ok);
    CHECK(one.p2 == four.p2);
    for (std::size_t i = 0; i < one.v_star.rows(); ++i)
        for (std::size_t j = 0; j < one.v_star.cols(); ++j)
            CHECK(one.v_star(i, j) == four.v_star(i, j));

    // different seeds move the replicate cloud
    const BootstrapResult other = rw_bootstrap(series, fitted, res, 10, 200, 100, 1);
    bool any_diff = other.p2 != one.p2;
    for (std::size_t i = 0; i < one.v_star.rows() && !any_diff; ++i)
        any_diff = other.v_star(i, 0) != one.v_star(i, 0);
    CHECK(any_diff);
}

TEST_CASE("full gof pipeline on a correct model") {
    const SeriesZ series = simulate_benchmark(800, 55);
    FitReport fitted = fit(series, ModelOrder{});
    const GofReport gof = run_gof(series, fitted, 10, 200, 5, 2);
    CHECK(gof.k == 10);
    CHECK(gof.n == series.size());
    CHECK(gof.B == 200);
    CHECK(gof.bootstrap_ok);
    REQUIRE(gof.rho_hat.size() == 10);
    CHECK(gof.stat >= 0.0);
    CHECK(gof.stat_plugin >= 0.0);
    for (double p : {gof.p1, gof.p1_plugin, gof.p2}) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
    // a correct model at these sizes should not be rejected overwhelmingly
    CHECK(gof.p1 > 0.001);
}
