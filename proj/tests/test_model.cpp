#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "mdingarch/model.hpp"
#include "mdingarch/rng.hpp"
#include "mdingarch/stationarity.hpp"

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

}  // namespace

TEST_CASE("theta flatten/unflatten round trip") {
    const Theta theta = benchmark_theta();
    const std::vector<double> flat = theta.flatten();
    REQUIRE(static_cast<int>(flat.size()) == theta.dim());
    CHECK(theta.dim() == 9);
    const Theta back = Theta::unflatten(flat, theta.order);
    CHECK(back.flatten() == flat);
    CHECK(flat[0] == 0.2);  // c
    CHECK(flat[3] == 1.0);  // omega1
    CHECK(flat[6] == 2.0);  // omega2
}

TEST_CASE("parameter validation rejects invalid blocks") {
    Theta theta = benchmark_theta();
    CHECK_NOTHROW(theta.validate());
    theta.phi = {0.4, 0.4, 0.3};  // a + b + c >= 1
    CHECK_THROWS(theta.validate());
    theta = benchmark_theta();
    theta.psi1.omega = 0.0;
    CHECK_THROWS(theta.validate());
    theta = benchmark_theta();
    theta.psi2.omega = 0.5;  // violates omega2 > 1 - sum(beta2) = 0.7
    CHECK_THROWS(theta.validate());
    theta = benchmark_theta();
    theta.psi2.omega = 0.8;  // 0.8 > 0.7: feasible for the negative side
    CHECK_NOTHROW(theta.validate());
}

TEST_CASE("filter one-step recursions match hand arithmetic") {
    const Theta theta = benchmark_theta();
    const SeriesZ series = SeriesZ::from({2, -1, 3});
    const FilterPath path = filter(series, theta, InitPolicy::StationaryFixedPoint);

    // start values: pi_0 = c/(1-b) = 0.25, lam_s0 = omega_s/(1-beta)
    // sign recursion seeds with B_{t-1} = 1 and the fixed-point pi:
    // pi_1 = 0.2 + 0.2*1 + 0.2*0.25 = 0.45
    CHECK(path.pi[0] == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(path.lam1[0] == doctest::Approx(1.0 + 0.3 * 0.0 + 0.3 * (1.0 / 0.7)).epsilon(1e-12));
    CHECK(path.lam2[0] == doctest::Approx(2.0 + 0.3 * 0.0 + 0.3 * (2.0 / 0.7)).epsilon(1e-12));
    // t=1 uses Y_0 = 2 (B_0 = 1)
    CHECK(path.pi[1] == doctest::Approx(0.2 + 0.2 * 1.0 + 0.2 * 0.45).epsilon(1e-12));
    CHECK(path.lam1[1] == doctest::Approx(1.0 + 0.3 * 2.0 + 0.3 * path.lam1[0]).epsilon(1e-12));
    CHECK(path.lam2[1] == doctest::Approx(2.0 + 0.3 * 2.0 + 0.3 * path.lam2[0]).epsilon(1e-12));
    // t=2 uses Y_1 = -1 (B_1 = 0, |Y_1| = 1)
    CHECK(path.pi[2] == doctest::Approx(0.2 + 0.2 * 0.0 + 0.2 * path.pi[1]).epsilon(1e-12));
    CHECK(path.lam1[2] == doctest::Approx(1.0 + 0.3 * 1.0 + 0.3 * path.lam1[1]).epsilon(1e-12));
}

TEST_CASE("one-step arithmetic of the recursion displays") {
    // pi = c + a B + b pi_prev with (0.2,0.2,0.2), B=1, pi_prev=0.25 -> 0.45
    CHECK(0.2 + 0.2 * 1.0 + 0.2 * 0.25 == doctest::Approx(0.45));
    // lambda = omega + alpha |Y| + beta lam_prev with (1,0.3,0.3), |Y|=2, lam_prev=1.5 -> 2.05
    CHECK(1.0 + 0.3 * 2.0 + 0.3 * 1.5 == doctest::Approx(2.05));
}

TEST_CASE("filter gradients match central finite differences") {
    const Theta theta = benchmark_theta();
    RngStream rng(314);
    DgpSpec spec;
    spec.theta = theta;
    const SeriesZ series = simulate(spec, 120, 100, rng);
    const FilterPath path = filter(series, theta);
    const std::size_t t = series.size() - 1;

    const double h = 1e-6;
    std::vector<double> flat = theta.flatten();
    for (int j = 0; j < theta.dim(); ++j) {
        std::vector<double> up = flat, dn = flat;
        up[j] += h;
        dn[j] -= h;
        const FilterPath pu = filter(series, Theta::unflatten(up, theta.order));
        const FilterPath pd = filter(series, Theta::unflatten(dn, theta.order));
        const double fd_pi = (pu.pi[t] - pd.pi[t]) / (2 * h);
        const double fd_l1 = (pu.lam1[t] - pd.lam1[t]) / (2 * h);
        const double fd_l2 = (pu.lam2[t] - pd.lam2[t]) / (2 * h);
        double an_pi = 0.0, an_l1 = 0.0, an_l2 = 0.0;
        if (j < 3) an_pi = path.dpi[t][j];
        else if (j < 6) an_l1 = path.dlam1[t][j - 3];
        else an_l2 = path.dlam2[t][j - 6];
        CHECK(fd_pi == doctest::Approx(an_pi).epsilon(1e-5).scale(1.0));
        CHECK(fd_l1 == doctest::Approx(an_l1).epsilon(1e-5).scale(1.0));
        CHECK(fd_l2 == doctest::Approx(an_l2).epsilon(1e-5).scale(1.0));
    }
}

TEST_CASE("simulation is deterministic given the seed") {
    DgpSpec spec;
    spec.theta = benchmark_theta();
    RngStream a(99), b(99), c(100);
    const SeriesZ sa = simulate(spec, 50, 10, a);
    const SeriesZ sb = simulate(spec, 50, 10, b);
    const SeriesZ sc = simulate(spec, 50, 10, c);
    CHECK(sa.y == sb.y);
    CHECK(sa.y != sc.y);
    CHECK(sa.size() == 50);
    for (std::size_t t = 0; t < sa.size(); ++t) CHECK(sa.b[t] == (sa.y[t] >= 0 ? 1 : 0));
}

TEST_CASE("iid sign with symmetric intensities balances the signs") {
    DgpSpec spec;
    spec.theta = benchmark_theta();
    spec.theta.psi1.omega = 2.0;  // make both sides identical
    spec.sign = SignSpec::iid(0.5);
    RngStream rng(7);
    const SeriesZ series = simulate(spec, 100000, 500, rng);
    double mean_b = 0.0;
    for (int bt : series.b) mean_b += bt;
    mean_b /= static_cast<double>(series.size());
    CHECK(std::fabs(mean_b - 0.5) < 0.01);
}

TEST_CASE("simulated |Y| mean matches the stationary formula") {
    DgpSpec spec;
    spec.theta = benchmark_theta();
    spec.sign = SignSpec::iid(0.5);
    RngStream rng(123);
    const std::size_t n = 200000;
    const SeriesZ series = simulate(spec, n, 1000, rng);
    const StationaryMean sm = stationary_mean(spec.theta, 0.5);
    CHECK(sm.e_abs_y == doctest::Approx(3.75).epsilon(1e-12));
    double mean_abs = 0.0, mean_y = 0.0;
    for (std::int64_t y : series.y) {
        mean_abs += std::llabs(y);
        mean_y += y;
    }
    mean_abs /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    // generous 6-sigma-ish tolerance; serial dependence inflates the MC error
    CHECK(std::fabs(mean_abs - sm.e_abs_y) < 0.1);
    CHECK(std::fabs(mean_y - sm.e_y) < 0.15);
}

TEST_CASE("conditional moments match the mixture displays") {
    // craft a path with pi=0.5, lam1=1, lam2=2
    FilterPath path;
    path.pi = {0.5};
    path.lam1 = {1.0};
    path.lam2 = {2.0};
    const ConditionalMoments cm = conditional_moments(path, 0, DgpFamily::poisson());
    CHECK(cm.mean == doctest::Approx(-0.5).epsilon(1e-12));
    // 0.5*1 + 0.5*(2-1) + 0.25*(1+2)^2 = 3.25
    CHECK(cm.variance == doctest::Approx(3.25).epsilon(1e-12));

    // pi -> 1 limit: variance reduces to the positive-side variance
    FilterPath degenerate;
    degenerate.pi = {1.0};
    degenerate.lam1 = {1.7};
    degenerate.lam2 = {2.0};
    const ConditionalMoments cm1 = conditional_moments(degenerate, 0, DgpFamily::poisson());
    CHECK(cm1.mean == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(cm1.variance == doctest::Approx(1.7).epsilon(1e-12));
}

TEST_CASE("explosive log-linear simulation raises a diverged error") {
    DgpSpec spec;
    spec.theta = benchmark_theta();
    spec.linkage = Linkage::LogLinear;
    spec.theta.psi1.omega = 5.0;
    spec.theta.psi1.alpha = {2.0};
    spec.theta.psi1.beta = {0.9};
    spec.theta.psi2.omega = 5.0;
    spec.theta.psi2.alpha = {2.0};
    spec.theta.psi2.beta = {0.9};
    RngStream rng(5);
    CHECK_THROWS_AS(simulate(spec, 2000, 0, rng), std::runtime_error);
}
