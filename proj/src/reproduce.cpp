#include "mdingarch/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "mdingarch/diagnostics.hpp"
#include "mdingarch/dists.hpp"
#include "mdingarch/estimate.hpp"
#include "mdingarch/evaluate.hpp"
#include "mdingarch/model.hpp"
#include "mdingarch/stationarity.hpp"

namespace mdingarch {

namespace {

Theta bench_theta() {
    Theta t;
    t.order = {1, 1};
    t.phi = {0.2, 0.2, 0.2};
    t.psi1 = {1.0, {0.3}, {0.3}};
    t.psi2 = {2.0, {0.3}, {0.3}};
    return t;
}

DgpSpec bench_poisson() {
    DgpSpec spec;
    spec.theta = bench_theta();
    spec.family = DgpFamily::poisson();
    spec.sign = SignSpec::ingarch();
    return spec;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::max(threads, 1);
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&, w]() {
            for (int i = w; i < count; i += threads) fn(i);
        });
    for (std::thread& t : pool) t.join();
}

std::string format(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

// replication summary shared by the bias and SE-calibration criteria
struct RepSet {
    std::vector<std::vector<double>> theta;  // flattened estimates
    std::vector<std::vector<double>> se;
    int failures = 0;
};

RepSet run_replications(const DgpSpec& spec, std::size_t n, int reps, std::uint64_t seed_base,
                        int threads) {
    RepSet out;
    out.theta.resize(reps);
    out.se.resize(reps);
    std::vector<int> fail(reps, 0);
    parallel_for(reps, threads, [&](int r) {
        try {
            RngStream rng = RngStream::derived(seed_base, static_cast<std::uint64_t>(r));
            SeriesZ s = simulate(spec, n, 500, rng);
            FitReport fr = fit(s, spec.theta.order);
            out.theta[r] = fr.theta_hat.flatten();
            out.se[r] = fr.se;
        } catch (...) {
            fail[r] = 1;
        }
    });
    for (int f : fail) out.failures += f;
    out.theta.erase(std::remove_if(out.theta.begin(), out.theta.end(),
                                   [](const std::vector<double>& v) { return v.empty(); }),
                    out.theta.end());
    out.se.erase(std::remove_if(out.se.begin(), out.se.end(),
                                [](const std::vector<double>& v) { return v.empty(); }),
                 out.se.end());
    return out;
}

std::vector<double> column_rmse(const RepSet& set, const std::vector<double>& truth) {
    const int d = static_cast<int>(truth.size());
    std::vector<double> rmse(d, 0.0);
    for (const std::vector<double>& est : set.theta)
        for (int j = 0; j < d; ++j) rmse[j] += (est[j] - truth[j]) * (est[j] - truth[j]);
    for (double& v : rmse) v = std::sqrt(v / static_cast<double>(set.theta.size()));
    return rmse;
}

// ---------------- criteria ----------------

CriterionResult criterion_stationarity_oracle() {
    CriterionResult res{1, "stationarity closed form vs spectral radius and NSC equivalence"};
    RngStream rng(20240901);
    double worst = 0.0;
    int mismatches = 0;
    for (int i = 0; i < 10000; ++i) {
        Theta t;
        t.order = {1, 1};
        t.phi = {0.2, 0.2, 0.2};
        t.psi1 = {0.1 + 4.9 * rng.uniform(), {1.5 * rng.uniform()}, {0.95 * rng.uniform()}};
        const double b2 = 0.95 * rng.uniform();
        t.psi2 = {(1.0 - b2) + 0.05 + 2.95 * rng.uniform(), {1.5 * rng.uniform()}, {b2}};
        const double pi = 0.05 + 0.9 * rng.uniform();

        const double rho_closed = closed_form_rho(t, pi);
        const StabilityMatrix sm = build_matrix(t, SignMode::iid(pi));
        const double rho_power = spectral_radius(sm.companion);
        worst = std::max(worst, std::fabs(rho_closed - rho_power));

        const ConditionReport report = check_conditions(t, SignMode::iid(pi));
        const bool nsc = report.necessary_betas && report.necessary_persistence.value_or(false);
        if (nsc != (rho_closed < 1.0)) ++mismatches;
    }
    res.pass = worst <= 1e-10 && mismatches == 0;
    res.detail = format("max |closed-power| = %.3e, NSC mismatches = %d", worst, mismatches);
    return res;
}

CriterionResult criterion_mean_formula() {
    CriterionResult res{2, "stationary mean formula vs simulation"};
    DgpSpec spec;
    spec.theta = bench_theta();
    spec.family = DgpFamily::poisson();
    spec.sign = SignSpec::iid(0.5);
    const std::size_t n = 1000000;
    RngStream rng = RngStream::derived(77, 0);
    SeriesZ s = simulate(spec, n, 1000, rng);
    double mean = 0.0, sq = 0.0;
    for (std::int64_t y : s.y) {
        const double a = static_cast<double>(std::llabs(y));
        mean += a;
        sq += a * a;
    }
    mean /= static_cast<double>(n);
    const double sd = std::sqrt(sq / static_cast<double>(n) - mean * mean);
    const double mc_se = sd / std::sqrt(static_cast<double>(n));
    const double target = stationary_mean(spec.theta, 0.5).e_abs_y;
    res.pass = std::fabs(mean - target) <= 3.0 * mc_se;
    res.detail = format("sample mean |Y| = %.5f vs E|Y| = %.5f (3 MC se = %.5f)", mean, target,
                        3.0 * mc_se);
    return res;
}

CriterionResult criterion_estimator_bias(const RepSet& set3600, int threads) {
    CriterionResult res{3, "estimator bias and RMSE shrinkage"};
    const DgpSpec spec = bench_poisson();
    const std::vector<double> truth = spec.theta.flatten();
    const int d = static_cast<int>(truth.size());

    double max_bias = 0.0;
    for (int j = 0; j < d; ++j) {
        double bias = 0.0;
        for (const std::vector<double>& est : set3600.theta) bias += est[j] - truth[j];
        bias /= static_cast<double>(set3600.theta.size());
        max_bias = std::max(max_bias, std::fabs(bias));
    }

    const RepSet set1800 = run_replications(spec, 1800, 100, 311, threads);
    const RepSet set7200 = run_replications(spec, 7200, 100, 312, threads);
    const std::vector<double> rmse_small = column_rmse(set1800, truth);
    const std::vector<double> rmse_large = column_rmse(set7200, truth);
    bool shrinks = true;
    for (int j = 0; j < d; ++j) shrinks = shrinks && rmse_large[j] < rmse_small[j];

    res.pass = max_bias < 0.05 && shrinks &&
               set3600.failures + set1800.failures + set7200.failures == 0;
    res.detail = format("max |bias| = %.4f (n=3600, %zu reps), RMSE shrinks for all %d params: %s",
                        max_bias, set3600.theta.size(), d, shrinks ? "yes" : "no");
    return res;
}

CriterionResult criterion_se_calibration(const RepSet& set3600) {
    CriterionResult res{4, "standard error calibration"};
    const int d = static_cast<int>(bench_theta().flatten().size());
    const std::size_t reps = set3600.theta.size();

    double ratio_lo = 1e9, ratio_hi = 0.0;
    for (int j = 0; j < d; ++j) {
        double mean = 0.0, sq = 0.0, mean_se = 0.0;
        for (std::size_t r = 0; r < reps; ++r) {
            mean += set3600.theta[r][j];
            sq += set3600.theta[r][j] * set3600.theta[r][j];
            mean_se += set3600.se[r][j];
        }
        mean /= static_cast<double>(reps);
        mean_se /= static_cast<double>(reps);
        const double emp_sd = std::sqrt(sq / static_cast<double>(reps) - mean * mean);
        const double ratio = mean_se / emp_sd;
        ratio_lo = std::min(ratio_lo, ratio);
        ratio_hi = std::max(ratio_hi, ratio);
    }
    res.pass = ratio_lo >= 0.7 && ratio_hi <= 1.4;
    res.detail = format("mean-SE / empirical-SD ratios in [%.3f, %.3f]", ratio_lo, ratio_hi);
    return res;
}

CriterionResult criterion_poisson_efficiency() {
    CriterionResult res{5, "Poisson efficiency equalities I = J"};
    const DgpSpec spec = bench_poisson();
    RngStream rng = RngStream::derived(515, 0);
    SeriesZ s = simulate(spec, 7200, 500, rng);
    const FitReport fr = fit(s, spec.theta.order);

    const auto rel_frobenius = [](const Matrix& a, const Matrix& b) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) {
                num += (a(i, j) - b(i, j)) * (a(i, j) - b(i, j));
                den += b(i, j) * b(i, j);
            }
        return std::sqrt(num / den);
    };
    const double d1 = rel_frobenius(fr.i1_hat, fr.j1_hat);
    const double d2 = rel_frobenius(fr.i2_hat, fr.j2_hat);
    res.pass = d1 < 0.1 && d2 < 0.1;
    res.detail = format("relative Frobenius distances: side1 = %.4f, side2 = %.4f", d1, d2);
    return res;
}

CriterionResult criterion_portmanteau(int threads) {
    CriterionResult res{6, "portmanteau size and power"};
    const int R = 300, B = 500, k = 10;

    const auto rejection_rates = [&](const DgpSpec& spec, std::size_t n, std::uint64_t seed,
                                     int& failures) {
        std::vector<int> rej1(R, 0), rej2(R, 0), fail(R, 0);
        parallel_for(R, threads, [&](int r) {
            try {
                RngStream rng = RngStream::derived(seed, static_cast<std::uint64_t>(r));
                SeriesZ s = simulate(spec, n, 500, rng);
                FitReport fr = fit(s, spec.theta.order);
                GofReport g = run_gof(s, fr, k, B, seed + 1000 + r, 1);
                rej1[r] = g.p1 < 0.05;
                rej2[r] = g.p2 < 0.05;
            } catch (...) {
                fail[r] = 1;
            }
        });
        double s1 = 0, s2 = 0;
        for (int r = 0; r < R; ++r) {
            s1 += rej1[r];
            s2 += rej2[r];
            failures += fail[r];
        }
        return std::pair<double, double>{s1 / R, s2 / R};
    };

    int failures = 0;
    const auto [size1, size2] = rejection_rates(bench_poisson(), 600, 61001, failures);

    DgpSpec alt;
    alt.theta = bench_theta();
    alt.theta.psi1 = {1.0, {0.2}, {0.2}};
    alt.theta.psi2 = {2.0, {0.2}, {0.2}};
    alt.family = DgpFamily::poisson();
    alt.sign = SignSpec::ingarch();
    alt.linkage = Linkage::LogLinear;
    const auto [pow1, pow2] = rejection_rates(alt, 900, 62001, failures);

    res.pass = size1 >= 0.02 && size1 <= 0.09 && size2 <= 0.07 && pow1 >= size1 + 0.10 &&
               pow2 >= size2 + 0.10 && failures == 0;
    res.detail = format("size p1 = %.3f p2 = %.3f; power p1 = %.3f p2 = %.3f; failures = %d",
                        size1, size2, pow1, pow2, failures);
    return res;
}

CriterionResult criterion_gradients() {
    CriterionResult res{7, "analytic score vs finite differences"};
    RngStream rng(70707);
    double worst = 0.0;
    double worst_cross = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        // random moderately-persistent parameter point
        Theta t;
        t.order = {1, 1};
        const double a = 0.05 + 0.4 * rng.uniform(), b = 0.05 + 0.4 * rng.uniform();
        t.phi = {0.05 + (0.85 - a - b) * rng.uniform(), a, b};
        t.psi1 = {0.3 + 2.0 * rng.uniform(), {0.1 + 0.4 * rng.uniform()},
                  {0.1 + 0.4 * rng.uniform()}};
        const double b2 = 0.1 + 0.4 * rng.uniform();
        t.psi2 = {(1.0 - b2) + 0.3 + 1.5 * rng.uniform(), {0.1 + 0.4 * rng.uniform()}, {b2}};

        DgpSpec spec;
        spec.theta = t;
        spec.family = DgpFamily::poisson();
        spec.sign = SignSpec::ingarch();
        RngStream sim_rng = RngStream::derived(909, trial);
        SeriesZ s = simulate(spec, 300, 200, sim_rng);

        const std::vector<double> g = score(s, t);
        std::vector<double> flat = t.flatten();
        const int d = static_cast<int>(flat.size());
        for (int j = 0; j < d; ++j) {
            const double h = 1e-6 * std::max(1.0, std::fabs(flat[j]));
            std::vector<double> up = flat, dn = flat;
            up[j] += h;
            dn[j] -= h;
            const double fd = (quasi_loglik(s, Theta::unflatten(up, t.order)) -
                               quasi_loglik(s, Theta::unflatten(dn, t.order))) /
                              (2.0 * h);
            worst = std::max(worst, std::fabs(fd - g[j]) / std::max(1.0, std::fabs(g[j])));
        }

        // cross-block independence: perturbing one block leaves the other
        // blocks' scores bitwise unchanged
        std::vector<double> bumped = flat;
        bumped[4] += 0.01;  // alpha1
        bumped[t.order.psi_dim() + 3] += 0.01;  // omega2
        const std::vector<double> g2 = score(s, Theta::unflatten(bumped, t.order));
        for (int j = 0; j < 3; ++j) worst_cross = std::max(worst_cross, std::fabs(g2[j] - g[j]));
        std::vector<double> bumped_phi = flat;
        bumped_phi[1] += 0.01;
        const std::vector<double> g3 = score(s, Theta::unflatten(bumped_phi, t.order));
        for (int j = 3; j < d; ++j) worst_cross = std::max(worst_cross, std::fabs(g3[j] - g[j]));
    }
    res.pass = worst <= 1e-5 && worst_cross == 0.0;
    res.detail = format("max relative FD error = %.3e, max cross-block coupling = %.3e", worst,
                        worst_cross);
    return res;
}

CriterionResult criterion_dist_properties() {
    CriterionResult res{8, "distribution kernel property suite"};
    std::string failure;

    const std::vector<PosDist> dists = {
        PosDist::poisson(0.3), PosDist::poisson(1.0), PosDist::poisson(10.0),
        PosDist::shifted_poisson(1.3), PosDist::shifted_poisson(2.0), PosDist::shifted_poisson(9.0),
        PosDist::neg_binomial(0.5, 0.7), PosDist::neg_binomial(1.0, 3.0),
        PosDist::neg_binomial(2.7, 10.0),
        PosDist::shifted_neg_binomial(0.5, 1.7), PosDist::shifted_neg_binomial(1.0, 3.0),
        PosDist::shifted_neg_binomial(2.7, 8.0)};

    for (const PosDist& dist : dists) {
        double total = 0.0;
        for (int y = 0; y <= 4000; ++y) {
            const double p = pmf(dist, y);
            total += p;
            if (y > 4 * dist.mean + 50 && p < 1e-18) break;
        }
        if (std::fabs(total - 1.0) > 1e-9) {
            failure = format("normalization off by %.2e", std::fabs(total - 1.0));
            break;
        }
        for (double u : {0.001, 0.1, 0.5, 0.9, 0.999}) {
            const std::int64_t y = quantile(dist, u);
            const double lo = y > 0 ? cdf(dist, y - 1) : 0.0;
            if (!(cdf(dist, y) >= u - 1e-12 && lo < u + 1e-12)) {
                failure = format("quantile/cdf round trip failed at u=%.3f", u);
                break;
            }
        }
        if (!failure.empty()) break;
    }

    // stochastic order in the mean over lambda grids, all kinds
    if (failure.empty()) {
        for (int kindcase = 0; kindcase < 4 && failure.empty(); ++kindcase) {
            const std::vector<double> grid = kindcase == 1 || kindcase == 3
                                                 ? std::vector<double>{1.2, 1.8, 3.0, 6.0, 12.0}
                                                 : std::vector<double>{0.2, 0.8, 2.0, 5.0, 11.0};
            for (double u : {0.05, 0.3, 0.5, 0.7, 0.95}) {
                std::int64_t prev = -1;
                for (double lam : grid) {
                    PosDist dist;
                    switch (kindcase) {
                        case 0: dist = PosDist::poisson(lam); break;
                        case 1: dist = PosDist::shifted_poisson(lam); break;
                        case 2: dist = PosDist::neg_binomial(1.3, lam); break;
                        default: dist = PosDist::shifted_neg_binomial(1.3, lam); break;
                    }
                    const std::int64_t y = quantile(dist, u);
                    if (y < prev) {
                        failure = format("stochastic order violated (kind %d, u=%.2f)", kindcase, u);
                        break;
                    }
                    prev = y;
                }
                if (!failure.empty()) break;
            }
        }
    }

    // mixture mean identity
    if (failure.empty()) {
        MixedDifferenceLaw law;
        law.pi = 0.35;
        law.pos = PosDist::poisson(2.5);
        law.neg = PosDist::shifted_poisson(3.5);
        double mean = 0.0;
        for (std::int64_t y = -300; y <= 300; ++y) mean += static_cast<double>(y) * mixed_pmf(law, y);
        const double target = law.pi * 2.5 - (1.0 - law.pi) * 3.5;
        if (std::fabs(mean - target) > 1e-8) failure = format("mixture mean off by %.2e", std::fabs(mean - target));
    }

    res.pass = failure.empty();
    res.detail = failure.empty() ? "normalization, round trip, stochastic order, mixture mean all hold"
                                 : failure;
    return res;
}

CriterionResult criterion_pit() {
    CriterionResult res{9, "PIT calibration and overdispersion detection"};
    const std::size_t n = 100000;

    DgpSpec spec = bench_poisson();
    RngStream rng = RngStream::derived(919, 0);
    SeriesZ s = simulate(spec, n, 500, rng);

    FitReport truth;
    truth.theta_hat = spec.theta;
    truth.init = InitPolicy::StationaryFixedPoint;
    const PitHistogram calib = pit_histogram(s, truth, PitFamily::poisson(), 10);
    bool all_in = true;
    for (double h : calib.heights)
        all_in = all_in && h >= calib.band_low && h <= calib.band_high;

    DgpSpec nb = spec;
    nb.family = DgpFamily::nb_fixed_r(0.8, 0.8);
    RngStream rng2 = RngStream::derived(919, 1);
    SeriesZ s_nb = simulate(nb, n, 500, rng2);
    const FitReport fr = fit(s_nb, nb.theta.order);
    const PitHistogram miss = pit_histogram(s_nb, fr, PitFamily::poisson(), 10);
    int outside = 0;
    for (double h : miss.heights)
        if (h < miss.band_low || h > miss.band_high) ++outside;

    res.pass = all_in && outside >= 1;
    res.detail = format("true model: all 10 bins in band = %s; Poisson on NB data: %d bins outside",
                        all_in ? "yes" : "no", outside);
    return res;
}

CriterionResult criterion_sign_forecast(int threads) {
    CriterionResult res{10, "sign forecast DM power against the 0.5 benchmark"};
    const int R = 100;
    DgpSpec spec;
    spec.theta = bench_theta();
    spec.theta.phi = {0.1, 0.6, 0.2};
    spec.family = DgpFamily::poisson();
    spec.sign = SignSpec::ingarch();

    std::vector<int> rejects(R, 0), fail(R, 0);
    parallel_for(R, threads, [&](int r) {
        try {
            RngStream rng = RngStream::derived(1010, static_cast<std::uint64_t>(r));
            SeriesZ s = simulate(spec, 2000, 500, rng);
            SignEvalOptions opts;
            opts.refit_cadence = 25;
            const std::vector<SignEvalReport> reports = sign_forecast_eval(s, {500}, opts);
            rejects[r] = reports[0].dm_p_mae2 < 0.05;
        } catch (...) {
            fail[r] = 1;
        }
    });
    int total = 0, failures = 0;
    for (int r = 0; r < R; ++r) {
        total += rejects[r];
        failures += fail[r];
    }
    const double rate = static_cast<double>(total) / R;
    res.pass = rate >= 0.90 && failures == 0;
    res.detail = format("DM rejection rate vs 0.5 benchmark = %.2f (failures = %d)", rate, failures);
    return res;
}

bool same_bytes(const std::string& a, const std::string& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    std::ostringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return sa.str() == sb.str();
}

CriterionResult criterion_cli_determinism(const std::string& cli) {
    CriterionResult res{11, "CLI determinism across reruns and thread counts"};
    if (cli.empty()) {
        res.detail = "no CLI binary path provided";
        return res;
    }
    char tmpl[] = "/tmp/mdingarch-repro-XXXXXX";
    const char* dir = mkdtemp(tmpl);
    if (!dir) {
        res.detail = "mkdtemp failed";
        return res;
    }
    const std::string d(dir);
    const auto run = [&](const std::string& args) {
        const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };

    std::string failure;
    const auto check_pair = [&](const std::string& label, const std::string& args_a,
                                const std::string& args_b, const std::string& file_a,
                                const std::string& file_b) {
        if (!failure.empty()) return;
        if (!run(args_a) || !run(args_b)) {
            failure = label + ": nonzero exit";
            return;
        }
        if (!same_bytes(file_a, file_b)) failure = label + ": outputs differ";
    };

    check_pair("simulate",
               "simulate --preset bench-pois --n 600 --seed 7 --out " + d + "/s1.csv",
               "simulate --preset bench-pois --n 600 --seed 7 --out " + d + "/s2.csv",
               d + "/s1.csv", d + "/s2.csv");
    check_pair("fit", "fit --input " + d + "/s1.csv --out " + d + "/f1.json",
               "fit --input " + d + "/s1.csv --out " + d + "/f2.json", d + "/f1.json",
               d + "/f2.json");
    check_pair("gof",
               "gof --input " + d + "/s1.csv --lags 10 --bootstrap 100 --seed 3 --threads 1 --out " +
                   d + "/g1.json",
               "gof --input " + d + "/s1.csv --lags 10 --bootstrap 100 --seed 3 --threads 4 --out " +
                   d + "/g2.json",
               d + "/g1.json", d + "/g2.json");
    check_pair("pit", "pit --input " + d + "/s1.csv --bins 10 --family pois --out " + d + "/p1.json",
               "pit --input " + d + "/s1.csv --bins 10 --family pois --out " + d + "/p2.json",
               d + "/p1.json", d + "/p2.json");
    check_pair("eval-sign",
               "eval-sign --input " + d + "/s1.csv --m 300 --refit-cadence 25 --out " + d + "/e1.json",
               "eval-sign --input " + d + "/s1.csv --m 300 --refit-cadence 25 --out " + d + "/e2.json",
               d + "/e1.json", d + "/e2.json");
    check_pair("stationarity",
               "stationarity --preset bench-pois --sign iid --pi 0.5 --out " + d + "/t1.json",
               "stationarity --preset bench-pois --sign iid --pi 0.5 --out " + d + "/t2.json",
               d + "/t1.json", d + "/t2.json");

    res.pass = failure.empty();
    res.detail = failure.empty() ? "all subcommands byte-identical across reruns and --threads"
                                 : failure;
    return res;
}

}  // namespace

std::vector<CriterionResult> run_criteria(const ReproduceOptions& opts) {
    int threads = opts.threads;
    if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const auto wanted = [&](int id) {
        return opts.only.empty() ||
               std::find(opts.only.begin(), opts.only.end(), id) != opts.only.end();
    };

    std::vector<CriterionResult> results;
    const auto add = [&](CriterionResult r, std::chrono::steady_clock::time_point start) {
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results.push_back(std::move(r));
    };

    if (wanted(1)) {
        const auto t0 = std::chrono::steady_clock::now();
        add(criterion_stationarity_oracle(), t0);
    }
    if (wanted(2)) {
        const auto t0 = std::chrono::steady_clock::now();
        add(criterion_mean_formula(), t0);
    }
    if (wanted(3) || wanted(4)) {
        const auto t0 = std::chrono::steady_clock::now();
        const RepSet set3600 = run_replications(bench_poisson(), 3600, 200, 310, threads);
        if (wanted(3)) add(criterion_estimator_bias(set3600, threads), t0);
        if (wanted(4)) {
            const auto t1 = std::chrono::steady_clock::now();
            add(criterion_se_calibration(set3600), wanted(3) ? t1 : t0);
        }
    }
    if (wanted(5)) {
        const auto t0 = std::chrono::steady_clock::now();
        add(criterion_poisson_efficiency(), t0);
    }
    if (wanted(6)) {
        const auto t0 = std::chrono::steady_clock::now();
        add(criterion_portmanteau(threads), t0);
    }
    if (wanted(7)) {
        const auto t0 = std::chrono::steady_clock::now();
        add(criterion_gradients(), t0);
    }
    if (wanted(8)) {
        const auto t0 = std::chrono::steady_clock::now();
        add(criterion_dist_properties(), t0);
    }
    if (wanted(9)) {
        const auto t0 = std::chrono::steady_clock::now();
        add(criterion_pit(), t0);
    }
    if (wanted(10)) {
        const auto t0 = std::chrono::steady_clock::now();
        add(criterion_sign_forecast(threads), t0);
    }
    if (wanted(11)) {
        const auto t0 = std::chrono::steady_clock::now();
        add(criterion_cli_determinism(opts.cli_path), t0);
    }
    return results;
}

}  // namespace mdingarch
