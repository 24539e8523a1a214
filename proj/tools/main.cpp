// Batch front end for the mdingarch library: simulation, fitting,
// goodness-of-fit, PIT calibration, sign-forecast evaluation, stationarity
// analysis, and the desk-scale reproduction suite.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mdingarch/diagnostics.hpp"
#include "mdingarch/estimate.hpp"
#include "mdingarch/evaluate.hpp"
#include "mdingarch/model.hpp"
#include "mdingarch/reproduce.hpp"
#include "mdingarch/stationarity.hpp"

namespace {

using nlohmann::ordered_json;
using namespace mdingarch;

constexpr int kSchemaVersion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("MDINGARCH_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw DataError("MDINGARCH_SEED is not a valid unsigned integer");
        }
    }
    return 0;
}

SeriesZ read_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open input file: " + path);
    std::vector<std::int64_t> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line == "y") continue;  // optional header
        try {
            std::size_t used = 0;
            const long long v = std::stoll(line, &used);
            if (used != line.size()) throw std::invalid_argument("trailing characters");
            values.push_back(v);
        } catch (...) {
            throw DataError(path + ":" + std::to_string(line_no) + ": not an integer: '" + line +
                            "'");
        }
    }
    if (values.empty()) throw DataError(path + ": no observations");
    return SeriesZ::from(std::move(values));
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open output file: " + path);
    out << content;
}

void write_json(const std::string& path, const ordered_json& j) {
    write_text(path, j.dump(2) + "\n");
}

ordered_json matrix_json(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

std::vector<std::string> param_names(const ModelOrder& order) {
    std::vector<std::string> names = {"c", "a", "b"};
    for (int side = 1; side <= 2; ++side) {
        const std::string s = std::to_string(side);
        names.push_back("omega" + s);
        for (int i = 1; i <= order.q; ++i) names.push_back("alpha" + s + "_" + std::to_string(i));
        for (int j = 1; j <= order.p; ++j) names.push_back("beta" + s + "_" + std::to_string(j));
    }
    return names;
}

// ---- DGP specs from presets or a JSON params file ----------------------

DgpSpec preset_spec(const std::string& name) {
    DgpSpec spec;
    spec.theta.order = {1, 1};
    spec.theta.phi = {0.2, 0.2, 0.2};
    spec.theta.psi1 = {1.0, {0.3}, {0.3}};
    spec.theta.psi2 = {2.0, {0.3}, {0.3}};
    spec.sign = SignSpec::ingarch();
    if (name == "bench-pois") {
        spec.family = DgpFamily::poisson();
    } else if (name == "bench-nb") {
        spec.family = DgpFamily::nb_fixed_p(0.5);
    } else if (name == "bench-loglinear") {
        spec.theta.psi1 = {1.0, {0.2}, {0.2}};
        spec.theta.psi2 = {2.0, {0.2}, {0.2}};
        spec.family = DgpFamily::poisson();
        spec.linkage = Linkage::LogLinear;
    } else {
        throw CLI::ValidationError("--preset", "unknown preset: " + name);
    }
    return spec;
}

PsiParams psi_from_json(const ordered_json& j) {
    PsiParams psi;
    psi.omega = j.at("omega").get<double>();
    psi.alpha = j.at("alpha").get<std::vector<double>>();
    psi.beta = j.at("beta").get<std::vector<double>>();
    return psi;
}

DgpSpec spec_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open params file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw DataError(path + ": JSON parse error: " + e.what());
    }
    try {
        DgpSpec spec;
        spec.theta.order = {j.value("p", 1), j.value("q", 1)};
        const ordered_json& phi = j.at("phi");
        spec.theta.phi = {phi.at("c").get<double>(), phi.at("a").get<double>(),
                          phi.at("b").get<double>()};
        spec.theta.psi1 = psi_from_json(j.at("psi1"));
        spec.theta.psi2 = psi_from_json(j.at("psi2"));
        if (j.contains("family")) {
            const ordered_json& f = j.at("family");
            const std::string kind = f.value("kind", "poisson");
            if (kind == "poisson")
                spec.family = DgpFamily::poisson();
            else if (kind == "nb_fixed_r")
                spec.family = DgpFamily::nb_fixed_r(f.at("r1").get<double>(),
                                                    f.at("r2").get<double>());
            else if (kind == "nb_fixed_p")
                spec.family = DgpFamily::nb_fixed_p(f.at("p").get<double>());
            else
                throw DataError("unknown family kind: " + kind);
        }
        const std::string linkage = j.value("linkage", "linear");
        if (linkage == "loglinear")
            spec.linkage = Linkage::LogLinear;
        else if (linkage != "linear")
            throw DataError("unknown linkage: " + linkage);
        if (j.contains("sign")) {
            const ordered_json& s = j.at("sign");
            const std::string kind = s.value("kind", "ingarch");
            if (kind == "iid")
                spec.sign = SignSpec::iid(s.at("pi").get<double>());
            else if (kind == "ingarch")
                spec.sign = SignSpec::ingarch();
            else
                throw DataError("unknown sign kind: " + kind);
        }
        return spec;
    } catch (const DataError&) {
        throw;
    } catch (const std::exception& e) {
        throw DataError(path + ": invalid params: " + e.what());
    }
}

ordered_json spec_json(const DgpSpec& spec) {
    ordered_json j;
    j["p"] = spec.theta.order.p;
    j["q"] = spec.theta.order.q;
    j["phi"] = {{"c", spec.theta.phi.c}, {"a", spec.theta.phi.a}, {"b", spec.theta.phi.b}};
    j["psi1"] = {{"omega", spec.theta.psi1.omega},
                 {"alpha", spec.theta.psi1.alpha},
                 {"beta", spec.theta.psi1.beta}};
    j["psi2"] = {{"omega", spec.theta.psi2.omega},
                 {"alpha", spec.theta.psi2.alpha},
                 {"beta", spec.theta.psi2.beta}};
    switch (spec.family.kind) {
        case DgpFamily::Kind::Poisson:
            j["family"] = {{"kind", "poisson"}};
            break;
        case DgpFamily::Kind::NegBinomialFixedR:
            j["family"] = {{"kind", "nb_fixed_r"}, {"r1", spec.family.r1}, {"r2", spec.family.r2}};
            break;
        case DgpFamily::Kind::NegBinomialFixedP:
            j["family"] = {{"kind", "nb_fixed_p"}, {"p", spec.family.p}};
            break;
    }
    j["linkage"] = spec.linkage == Linkage::Linear ? "linear" : "loglinear";
    if (spec.sign.kind == SignSpec::Kind::IidBernoulli)
        j["sign"] = {{"kind", "iid"}, {"pi", spec.sign.pi}};
    else
        j["sign"] = {{"kind", "ingarch"}};
    return j;
}

ordered_json fit_json(const SeriesZ& series, const FitReport& fr) {
    const std::vector<double> flat = fr.theta_hat.flatten();
    const std::vector<std::string> names = param_names(fr.theta_hat.order);
    double pers_pos = 0.0, pers_neg = 0.0;
    for (double a : fr.theta_hat.psi1.alpha) pers_pos += a;
    for (double b : fr.theta_hat.psi1.beta) pers_pos += b;
    for (double a : fr.theta_hat.psi2.alpha) pers_neg += a;
    for (double b : fr.theta_hat.psi2.beta) pers_neg += b;

    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = fr.n;
    j["order"] = {{"p", fr.theta_hat.order.p}, {"q", fr.theta_hat.order.q}};
    j["param_names"] = names;
    j["theta_hat"] = flat;
    ordered_json se = ordered_json::array();
    for (double s : fr.se) se.push_back(finite_or_null(s));
    j["se"] = se;
    j["loglik"] = fr.loglik;
    j["loglik_with_constants"] = fr.loglik_with_constants;
    j["persistence_pos"] = pers_pos;
    j["persistence_neg"] = pers_neg;
    ordered_json blocks = ordered_json::array();
    const char* block_names[] = {"phi", "psi1", "psi2"};
    for (int b = 0; b < 3; ++b)
        blocks.push_back({{"block", block_names[b]},
                          {"iterations", fr.blocks[b].iterations},
                          {"gradient_norm", fr.blocks[b].gradient_norm},
                          {"converged", fr.blocks[b].converged},
                          {"se_ok", fr.block_se_ok[b]}});
    j["blocks"] = blocks;
    j["covariance"] = {{"pi_hat", matrix_json(fr.pi_hat)},   {"j1_hat", matrix_json(fr.j1_hat)},
                       {"i1_hat", matrix_json(fr.i1_hat)},   {"j2_hat", matrix_json(fr.j2_hat)},
                       {"i2_hat", matrix_json(fr.i2_hat)},   {"sigma_hat", matrix_json(fr.sigma_hat)}};
    const DispersionEstimates disp = estimate_dispersion(series, fr);
    j["dispersion"] = {{"r1", finite_or_null(disp.r1)},
                       {"r2", finite_or_null(disp.r2)},
                       {"r1_finite", disp.r1_finite},
                       {"r2_finite", disp.r2_finite}};
    return j;
}

// ---- subcommands --------------------------------------------------------

int cmd_simulate(const std::string& preset, const std::string& params_file, std::size_t n,
                 std::size_t burn_in, const std::optional<std::uint64_t>& seed_flag,
                 const std::string& out) {
    const DgpSpec spec = params_file.empty() ? preset_spec(preset) : spec_from_file(params_file);
    spec.theta.validate();
    const std::uint64_t seed = resolve_seed(seed_flag);

    std::string warning;
    if (spec.linkage == Linkage::Linear) {
        const SignMode mode = spec.sign.kind == SignSpec::Kind::IidBernoulli
                                  ? SignMode::iid(spec.sign.pi)
                                  : SignMode::bernoulli_ingarch();
        const ConditionReport cond = check_conditions(spec.theta, mode);
        if (!cond.necessary_betas || (cond.necessary_persistence && !*cond.necessary_persistence))
            throw std::runtime_error("necessary stationarity conditions fail; refusing to simulate");
        if (!cond.sufficient_spectral) {
            warning = "sufficient stationarity condition fails (rho = " +
                      std::to_string(cond.rho) + "); trajectory may be explosive";
            std::cerr << "warning: " << warning << "\n";
        }
    }

    RngStream rng = RngStream::derived(seed, 0);
    const SeriesZ series = simulate(spec, n, burn_in, rng);

    std::string csv = "y\n";
    for (std::int64_t y : series.y) csv += std::to_string(y) + "\n";
    write_text(out, csv);

    ordered_json meta;
    meta["schema_version"] = kSchemaVersion;
    meta["n"] = n;
    meta["burn_in"] = burn_in;
    meta["seed"] = seed;
    meta["spec"] = spec_json(spec);
    if (!warning.empty()) meta["warning"] = warning;
    if (!out.empty() && out != "-") write_json(out + ".meta.json", meta);
    return 0;
}

int cmd_fit(const std::string& input, int p, int q, const std::string& out) {
    const SeriesZ series = read_series(input);
    FitOptions opts;
    const FitReport fr = fit(series, {p, q}, opts);
    write_json(out, fit_json(series, fr));
    return 0;
}

int cmd_gof(const std::string& input, int p, int q, int lags, int bootstrap,
            const std::optional<std::uint64_t>& seed_flag, int threads, const std::string& out) {
    const SeriesZ series = read_series(input);
    const std::uint64_t seed = resolve_seed(seed_flag);
    const FitReport fr = fit(series, {p, q});
    const GofReport g = run_gof(series, fr, lags, bootstrap, seed, threads);

    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = g.n;
    j["k"] = g.k;
    j["B"] = g.B;
    j["seed"] = g.seed;
    j["weight_dist"] = g.weight_dist;
    j["rho_hat"] = g.rho_hat;
    j["stat"] = g.stat;
    j["stat_plugin"] = g.stat_plugin;
    j["p1"] = g.p1;
    j["p1_plugin"] = g.p1_plugin;
    j["p2"] = g.p2;
    j["bootstrap_ok"] = g.bootstrap_ok;
    j["pseudo_inverse_used"] = g.pseudo_inverse_used;
    j["v_hat"] = matrix_json(g.v_hat);
    j["v_star"] = g.bootstrap_ok ? matrix_json(g.v_star) : ordered_json(nullptr);
    j["fit"] = fit_json(series, fr);
    write_json(out, j);
    return 0;
}

int cmd_pit(const std::string& input, int p, int q, int bins, const std::string& family,
            const std::string& out) {
    const SeriesZ series = read_series(input);
    const FitReport fr = fit(series, {p, q});
    PitFamily fam = PitFamily::poisson();
    ordered_json fam_json = {{"kind", "poisson"}};
    if (family == "nb") {
        const DispersionEstimates disp = estimate_dispersion(series, fr);
        if (!disp.r1_finite || !disp.r2_finite)
            throw std::runtime_error(
                "dispersion estimate is not finite (no overdispersion); use --family pois");
        fam = PitFamily::nb(disp.r1, disp.r2);
        fam_json = {{"kind", "nb"}, {"r1", disp.r1}, {"r2", disp.r2}};
    } else if (family != "pois") {
        throw CLI::ValidationError("--family", "must be pois or nb");
    }
    const PitHistogram hist = pit_histogram(series, fr, fam, bins);

    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = hist.n;
    j["J"] = hist.J;
    j["family"] = fam_json;
    j["band_low"] = hist.band_low;
    j["band_high"] = hist.band_high;
    j["zero_mass_count"] = hist.zero_mass_count;
    ordered_json rows = ordered_json::array();
    for (int b = 0; b < hist.J; ++b)
        rows.push_back({{"bin", b + 1},
                        {"lower", static_cast<double>(b) / hist.J},
                        {"upper", static_cast<double>(b + 1) / hist.J},
                        {"height", hist.heights[b]}});
    j["bins"] = rows;
    write_json(out, j);
    return 0;
}

int cmd_eval_sign(const std::string& input, std::vector<std::size_t> m_values, int cadence,
                  const std::string& out) {
    const SeriesZ series = read_series(input);
    SignEvalOptions opts;
    opts.refit_cadence = cadence;
    const std::vector<SignEvalReport> reports = sign_forecast_eval(series, m_values, opts);

    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = series.size();
    j["refit_cadence"] = cadence;
    ordered_json rows = ordered_json::array();
    for (const SignEvalReport& r : reports)
        rows.push_back({{"m", r.m},
                        {"mae1", r.mae1},
                        {"mae2", r.mae2},
                        {"mae3", r.mae3},
                        {"dm_p_mae2", r.dm_p_mae2},
                        {"dm_p_mae3", r.dm_p_mae3},
                        {"dm2_degenerate", r.dm2_degenerate},
                        {"dm3_degenerate", r.dm3_degenerate}});
    j["evaluations"] = rows;
    write_json(out, j);
    return 0;
}

int cmd_stationarity(const std::string& preset, const std::string& params_file,
                     const std::string& sign, double pi, std::vector<double> markov,
                     std::vector<double> bounds, const std::string& out) {
    const DgpSpec spec = params_file.empty() ? preset_spec(preset) : spec_from_file(params_file);
    SignMode mode = SignMode::bernoulli_ingarch();
    if (sign == "iid") {
        mode = SignMode::iid(pi);
    } else if (sign == "markov") {
        if (markov.size() != 4)
            throw CLI::ValidationError("--markov", "needs four probabilities p00 p01 p10 p11");
        mode = SignMode::markov(markov[0], markov[1], markov[2], markov[3]);
    } else if (sign == "bounds") {
        if (bounds.size() != 2)
            throw CLI::ValidationError("--bounds", "needs two values pi1+ pi0+");
        mode = SignMode::bounds(bounds[0], bounds[1]);
    } else if (sign != "ingarch") {
        throw CLI::ValidationError("--sign", "must be one of ingarch, iid, markov, bounds");
    }

    const ConditionReport cond = check_conditions(spec.theta, mode);
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["sign"] = sign;
    j["rho"] = cond.rho;
    j["sufficient_spectral"] = cond.sufficient_spectral;
    j["necessary_betas"] = cond.necessary_betas;
    j["necessary_persistence"] = cond.necessary_persistence ? ordered_json(*cond.necessary_persistence)
                                            : ordered_json(nullptr);
    j["inconclusive"] = cond.inconclusive;
    j["note"] = cond.note;
    if (sign == "iid" && cond.necessary_persistence.value_or(false)) {
        const StationaryMean mean = stationary_mean(spec.theta, pi);
        j["e_abs_y"] = mean.e_abs_y;
        j["e_y"] = mean.e_y;
    } else {
        j["e_abs_y"] = nullptr;
        j["e_y"] = nullptr;
    }
    write_json(out, j);
    return 0;
}

int cmd_reproduce(int threads, std::vector<int> only, const std::string& cli_path) {
    ReproduceOptions opts;
    opts.threads = threads;
    opts.only = std::move(only);
    opts.cli_path = cli_path;
    const std::vector<CriterionResult> results = run_criteria(opts);
    bool all = true;
    for (const CriterionResult& r : results) {
        std::printf("%s  criterion %2d  %-55s  %7.1fs  %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds, r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%s (%zu criteria)\n", all ? "ALL PASS" : "FAILURES PRESENT", results.size());
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mixed-difference INGARCH modeling toolkit for integer-valued time series"};
    app.require_subcommand(1);

    // shared flag storage
    std::string input, out, preset, params_file;
    std::optional<std::uint64_t> seed;
    int p = 1, q = 1, lags = 10, bootstrap = 500, bins = 10, threads = 1, cadence = 1;
    std::size_t n = 0, burn_in = 500;
    std::string family = "pois", sign = "ingarch";
    double pi = 0.5;
    std::vector<double> markov, bounds;
    std::vector<std::size_t> m_values;
    std::vector<int> criteria;
    int repro_threads = 0;
    std::string cli_path = argv[0];

    CLI::App* sim = app.add_subcommand("simulate", "Draw a trajectory from a model spec");
    sim->add_option("--preset", preset, "Built-in spec: bench-pois, bench-nb, bench-loglinear");
    sim->add_option("--params", params_file, "JSON spec file");
    sim->add_option("--n", n, "Series length")->required();
    sim->add_option("--burn-in", burn_in, "Discarded warm-up draws")->capture_default_str();
    sim->add_option("--seed", seed, "RNG seed (default: MDINGARCH_SEED env or 0)");
    sim->add_option("--out", out, "Output CSV path")->required();

    CLI::App* fit_cmd = app.add_subcommand("fit", "Fit the model to a CSV series");
    fit_cmd->add_option("--input", input, "Single-column integer CSV")->required();
    fit_cmd->add_option("--p", p, "Intensity feedback lags")->capture_default_str();
    fit_cmd->add_option("--q", q, "Observation lags")->capture_default_str();
    fit_cmd->add_option("--out", out, "Output JSON path (default stdout)");

    CLI::App* gof = app.add_subcommand("gof", "Portmanteau goodness-of-fit tests");
    gof->add_option("--input", input, "Single-column integer CSV")->required();
    gof->add_option("--p", p, "Intensity feedback lags")->capture_default_str();
    gof->add_option("--q", q, "Observation lags")->capture_default_str();
    gof->add_option("--lags", lags, "Residual autocorrelation lags k")->capture_default_str();
    gof->add_option("--bootstrap", bootstrap, "Bootstrap replicates B")->capture_default_str();
    gof->add_option("--seed", seed, "RNG seed (default: MDINGARCH_SEED env or 0)");
    gof->add_option("--threads", threads, "Worker threads (does not affect results)")->capture_default_str();
    gof->add_option("--out", out, "Output JSON path (default stdout)");

    CLI::App* pit = app.add_subcommand("pit", "PIT calibration histogram");
    pit->add_option("--input", input, "Single-column integer CSV")->required();
    pit->add_option("--p", p, "Intensity feedback lags")->capture_default_str();
    pit->add_option("--q", q, "Observation lags")->capture_default_str();
    pit->add_option("--bins", bins, "Histogram bins J")->capture_default_str();
    pit->add_option("--family", family, "Conditional family: pois or nb")->capture_default_str();
    pit->add_option("--out", out, "Output JSON path (default stdout)");

    CLI::App* ev = app.add_subcommand("eval-sign", "Out-of-sample sign forecast evaluation");
    ev->add_option("--input", input, "Single-column integer CSV")->required();
    ev->add_option("--m", m_values, "Training sizes (repeatable)")->required();
    ev->add_option("--refit-cadence", cadence, "Refit the sign block every this many steps")->capture_default_str();
    ev->add_option("--out", out, "Output JSON path (default stdout)");

    CLI::App* st = app.add_subcommand("stationarity", "Stability matrix and stationarity report");
    st->add_option("--preset", preset, "Built-in spec: bench-pois, bench-nb, bench-loglinear");
    st->add_option("--params", params_file, "JSON spec file");
    st->add_option("--sign", sign, "Sign mode: ingarch, iid, markov, bounds")->capture_default_str();
    st->add_option("--pi", pi, "i.i.d. sign probability")->capture_default_str();
    st->add_option("--markov", markov, "Markov transition probabilities p00 p01 p10 p11");
    st->add_option("--bounds", bounds, "Explicit bounds pi1+ pi0+");
    st->add_option("--out", out, "Output JSON path (default stdout)");

    CLI::App* rp = app.add_subcommand("reproduce", "Run the desk-scale verification suite");
    rp->add_option("--threads", repro_threads, "Worker threads (0 = all cores)")->capture_default_str();
    rp->add_option("--criteria", criteria, "Criterion ids to run (default all)");
    rp->add_option("--cli", cli_path, "CLI binary path for the determinism criterion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (sim->parsed()) {
            if (preset.empty() == params_file.empty())
                throw CLI::ValidationError("simulate", "give exactly one of --preset/--params");
            return cmd_simulate(preset, params_file, n, burn_in, seed, out);
        }
        if (fit_cmd->parsed()) return cmd_fit(input, p, q, out);
        if (gof->parsed()) return cmd_gof(input, p, q, lags, bootstrap, seed, threads, out);
        if (pit->parsed()) return cmd_pit(input, p, q, bins, family, out);
        if (ev->parsed()) return cmd_eval_sign(input, m_values, cadence, out);
        if (st->parsed()) {
            if (preset.empty() == params_file.empty())
                throw CLI::ValidationError("stationarity", "give exactly one of --preset/--params");
            return cmd_stationarity(preset, params_file, sign, pi, markov, bounds, out);
        }
        if (rp->parsed()) return cmd_reproduce(repro_threads, criteria, cli_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
