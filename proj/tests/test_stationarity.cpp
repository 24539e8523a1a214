#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

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

Theta random_theta_pq1(RngStream& rng) {
    Theta theta = benchmark_theta();
    theta.psi1.alpha = {rng.uniform() * 0.9};
    theta.psi1.beta = {rng.uniform() * 0.9};
    theta.psi2.alpha = {rng.uniform() * 0.9};
    theta.psi2.beta = {rng.uniform() * 0.9};
    theta.psi1.omega = 0.5 + rng.uniform();
    theta.psi2.omega = (1.0 - theta.psi2.beta_sum()) + 0.5 + rng.uniform();
    return theta;
}

}  // namespace

TEST_CASE("iid stability block matches hand substitution") {
    const Theta theta = benchmark_theta();
    const StabilityMatrix sm = build_matrix(theta, SignMode::iid(0.4));
    REQUIRE(sm.r == 1);
    const Matrix& a = sm.blocks[0];
    CHECK(a(0, 0) == doctest::Approx(0.42).epsilon(1e-14));
    CHECK(a(0, 1) == doctest::Approx(0.18).epsilon(1e-14));
    CHECK(a(1, 0) == doctest::Approx(0.12).epsilon(1e-14));
    CHECK(a(1, 1) == doctest::Approx(0.48).epsilon(1e-14));
}

TEST_CASE("sign-process bounds per mode") {
    const Theta theta = benchmark_theta();
    const StabilityMatrix ingarch = build_matrix(theta, SignMode::bernoulli_ingarch());
    CHECK(ingarch.pi1_plus == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(ingarch.pi0_plus == doctest::Approx(0.8).epsilon(1e-14));

    const StabilityMatrix markov = build_matrix(theta, SignMode::markov(0.3, 0.7, 0.4, 0.6));
    CHECK(markov.pi1_plus == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(markov.pi0_plus == doctest::Approx(0.4).epsilon(1e-14));

    // infeasible bounds rejected
    CHECK_THROWS_AS(build_matrix(theta, SignMode::bounds(0.5, 0.3)), std::domain_error);
    // iid bounds are on the feasibility boundary and allowed
    CHECK_NOTHROW(build_matrix(theta, SignMode::iid(0.5)));
}

TEST_CASE("zero alpha gives a diagonal stability matrix") {
    Theta theta = benchmark_theta();
    theta.psi1.alpha = {0.0};
    theta.psi2.alpha = {0.0};
    const StabilityMatrix sm = build_matrix(theta, SignMode::iid(0.4));
    CHECK(sm.blocks[0](0, 1) == 0.0);
    CHECK(sm.blocks[0](1, 0) == 0.0);
    CHECK(spectral_radius(sm.companion) == doctest::Approx(0.3).epsilon(1e-10));
}

TEST_CASE("spectral radius basics") {
    CHECK(spectral_radius(Matrix::identity(2)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spectral_radius(Matrix(3, 3)) == 0.0);
    Matrix a(2, 2);
    a(0, 0) = 0.42;
    a(0, 1) = 0.18;
    a(1, 0) = 0.12;
    a(1, 1) = 0.48;
    // trace 0.9, det 0.18: rho = (0.9 + sqrt(0.81 - 0.72)) / 2 = 0.6
    CHECK(spectral_radius(a) == doctest::Approx(0.6).epsilon(1e-10));
    Matrix bad(2, 3);
    CHECK_THROWS_AS(spectral_radius(bad), std::invalid_argument);
}

TEST_CASE("closed form rho: benchmark and degenerate cases") {
    Theta theta = benchmark_theta();
    for (double pi : {0.2, 0.5, 0.8})
        CHECK(closed_form_rho(theta, pi) == doctest::Approx(0.6).epsilon(1e-12));
    theta.psi1.alpha = {0.0};
    theta.psi2.alpha = {0.0};
    theta.psi1.beta = {0.4};
    theta.psi2.beta = {0.7};
    CHECK(closed_form_rho(theta, 0.3) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("closed form agrees with power iteration on random draws") {
    RngStream rng(555);
    for (int i = 0; i < 2000; ++i) {
        const Theta theta = random_theta_pq1(rng);
        const double pi = 0.05 + 0.9 * rng.uniform();
        const double rho_cf = closed_form_rho(theta, pi);
        const double rho_pi = spectral_radius(build_matrix(theta, SignMode::iid(pi)).companion);
        CHECK(rho_cf == doctest::Approx(rho_pi).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("rho is monotone in alpha and beta") {
    RngStream rng(556);
    for (int i = 0; i < 200; ++i) {
        Theta theta = random_theta_pq1(rng);
        const double pi = 0.05 + 0.9 * rng.uniform();
        const double base = closed_form_rho(theta, pi);
        Theta up = theta;
        up.psi1.alpha[0] += 0.01;
        CHECK(closed_form_rho(up, pi) >= base - 1e-14);
        up = theta;
        up.psi2.beta[0] += 0.01;
        CHECK(closed_form_rho(up, pi) >= base - 1e-14);
    }
}

TEST_CASE("necessary and sufficient conditions agree for p=q=1 iid signs") {
    RngStream rng(557);
    for (int i = 0; i < 5000; ++i) {
        Theta theta = random_theta_pq1(rng);
        // widen the scan so both stationary and nonstationary draws occur
        theta.psi1.alpha[0] *= 1.5;
        theta.psi2.alpha[0] *= 1.5;
        const double pi = 0.05 + 0.9 * rng.uniform();
        const ConditionReport report = check_conditions(theta, SignMode::iid(pi));
        REQUIRE(report.necessary_persistence.has_value());
        CHECK((report.necessary_betas && *report.necessary_persistence) == report.sufficient_spectral);
    }
}

TEST_CASE("condition report flags and notes") {
    const Theta theta = benchmark_theta();
    const ConditionReport ok = check_conditions(theta, SignMode::iid(0.5));
    CHECK(ok.rho == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(ok.sufficient_spectral);
    CHECK(ok.necessary_betas);
    CHECK(*ok.necessary_persistence);
    CHECK_FALSE(ok.inconclusive);

    // strong alphas: sufficient condition fails under conservative ingarch
    // bounds while the necessary conditions still hold -> inconclusive
    Theta strong = benchmark_theta();
    strong.psi1.alpha = {0.8};
    strong.psi2.alpha = {0.8};
    strong.psi1.beta = {0.15};
    strong.psi2.beta = {0.15};
    const ConditionReport report = check_conditions(strong, SignMode::bernoulli_ingarch());
    CHECK_FALSE(report.sufficient_spectral);
    CHECK(report.necessary_betas);
    CHECK(report.inconclusive);
}

TEST_CASE("higher-order companion structure") {
    Theta theta;
    theta.order = {2, 2};
    theta.phi = {0.2, 0.2, 0.2};
    theta.psi1 = {1.0, {0.2, 0.1}, {0.2, 0.1}};
    theta.psi2 = {2.0, {0.2, 0.1}, {0.2, 0.1}};
    const StabilityMatrix sm = build_matrix(theta, SignMode::iid(0.5));
    CHECK(sm.r == 2);
    CHECK(sm.companion.rows() == 4);
    // shifted-identity row below the block row
    CHECK(sm.companion(2, 0) == 1.0);
    CHECK(sm.companion(3, 1) == 1.0);
    CHECK(sm.companion(2, 2) == 0.0);
    const double rho = spectral_radius(sm.companion);
    CHECK(rho > 0.0);
    CHECK(rho < 1.0);
    // weighted persistence: 0.5*0.3/0.7 + 0.5*0.3/0.7 < 1
    const ConditionReport report = check_conditions(theta, SignMode::iid(0.5));
    CHECK(*report.necessary_persistence);
}

TEST_CASE("stationary means match the closed-form displays") {
    const Theta theta = benchmark_theta();
    const StationaryMean sm = stationary_mean(theta, 0.5);
    CHECK(sm.e_abs_y == doctest::Approx(3.75).epsilon(1e-12));
    CHECK(sm.e_y == doctest::Approx(-5.0 / 7.0).epsilon(1e-12));

    Theta bad = benchmark_theta();
    bad.psi1.alpha = {0.95};
    bad.psi2.alpha = {0.95};
    CHECK_THROWS_AS(stationary_mean(bad, 0.5), std::domain_error);
    CHECK_THROWS_AS(stationary_mean(theta, 0.0), std::domain_error);
}
