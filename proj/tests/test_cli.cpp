#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_path() {
    const char* env = std::getenv("MDINGARCH_CLI");
    REQUIRE_MESSAGE(env != nullptr, "MDINGARCH_CLI must point at the cli binary");
    return env;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string run_stderr(const std::string& args, int* exit_code) {
    const std::string cmd = cli_path() + " " + args + " 2>&1 1>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    if (exit_code) *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

fs::path temp_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "mdingarch-cli-test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

const fs::path kSeries = temp_dir() / "series.csv";

void ensure_series() {
    static bool done = [] {
        const RunResult r = run("simulate --preset bench-pois --n 800 --seed 42 --out " +
                                kSeries.string());
        REQUIRE(r.exit_code == 0);
        return true;
    }();
    (void)done;
}

}  // namespace

TEST_CASE("simulate writes a reproducible csv with header and sidecar") {
    ensure_series();
    const std::string first = slurp(kSeries);
    REQUIRE_FALSE(first.empty());
    CHECK(first.substr(0, 2) == "y\n");
    // 800 values + header
    CHECK(std::count(first.begin(), first.end(), '\n') == 801);
    REQUIRE(fs::exists(kSeries.string() + ".meta.json"));
    const json meta = json::parse(slurp(kSeries.string() + ".meta.json"));
    CHECK(meta.at("seed") == 42);
    CHECK(meta.at("n") == 800);

    const fs::path again = temp_dir() / "series2.csv";
    const RunResult r = run("simulate --preset bench-pois --n 800 --seed 42 --out " +
                            again.string());
    REQUIRE(r.exit_code == 0);
    CHECK(slurp(again) == first);

    const fs::path other = temp_dir() / "series3.csv";
    run("simulate --preset bench-pois --n 800 --seed 43 --out " + other.string());
    CHECK(slurp(other) != first);
}

TEST_CASE("seed falls back to the environment variable") {
    const fs::path a = temp_dir() / "env_a.csv";
    const fs::path b = temp_dir() / "env_b.csv";
    const std::string prefix = "MDINGARCH_SEED=77 ";
    const std::string base = cli_path() + " simulate --preset bench-pois --n 50 --out ";
    CHECK(std::system((prefix + base + a.string() + " >/dev/null 2>&1").c_str()) == 0);
    CHECK(std::system((prefix + base + b.string() + " >/dev/null 2>&1").c_str()) == 0);
    CHECK(slurp(a) == slurp(b));
    const json meta = json::parse(slurp(a.string() + ".meta.json"));
    CHECK(meta.at("seed") == 77);
}

TEST_CASE("fit emits the versioned report schema") {
    ensure_series();
    const RunResult r = run("fit --input " + kSeries.string());
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.out);
    CHECK(report.at("schema_version") == 1);
    CHECK(report.at("n") == 800);
    const auto names = report.at("param_names").get<std::vector<std::string>>();
    REQUIRE(names.size() == 9);
    CHECK(names[0] == "c");
    CHECK(names[3] == "omega1");
    CHECK(report.at("theta_hat").size() == 9);
    CHECK(report.at("se").size() == 9);
    const double a1 = report.at("theta_hat")[4].get<double>();
    const double b1 = report.at("theta_hat")[5].get<double>();
    CHECK(report.at("persistence_pos").get<double>() == doctest::Approx(a1 + b1).epsilon(1e-12));
    CHECK(report.at("blocks").size() == 3);
    for (const auto& blk : report.at("blocks")) CHECK(blk.at("converged") == true);

    // byte-identical rerun
    const RunResult r2 = run("fit --input " + kSeries.string());
    CHECK(r2.out == r.out);
}

TEST_CASE("gof is deterministic across thread counts") {
    ensure_series();
    const std::string base = "gof --input " + kSeries.string() + " --bootstrap 100 --seed 5";
    const RunResult one = run(base + " --threads 1");
    const RunResult four = run(base + " --threads 4");
    REQUIRE(one.exit_code == 0);
    CHECK(one.out == four.out);
    const json report = json::parse(one.out);
    CHECK(report.at("rho_hat").size() == 10);
    const double p1 = report.at("p1").get<double>();
    const double p2 = report.at("p2").get<double>();
    CHECK(p1 >= 0.0);
    CHECK(p1 <= 1.0);
    CHECK(p2 >= 0.0);
    CHECK(p2 <= 1.0);
    CHECK(report.at("bootstrap_ok") == true);
}

TEST_CASE("pit, eval-sign, and stationarity wrappers") {
    ensure_series();
    const RunResult pit = run("pit --input " + kSeries.string() + " --bins 10");
    REQUIRE(pit.exit_code == 0);
    const json pit_report = json::parse(pit.out);
    REQUIRE(pit_report.at("bins").size() == 10);
    double total = 0.0;
    for (const auto& bin : pit_report.at("bins")) total += bin.at("height").get<double>();
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pit_report.at("band_low").get<double>() < pit_report.at("band_high").get<double>());

    const RunResult sign = run("eval-sign --input " + kSeries.string() +
                               " --m 400 --refit-cadence 50");
    REQUIRE(sign.exit_code == 0);
    const json sign_report = json::parse(sign.out);
    REQUIRE(sign_report.at("evaluations").size() == 1);
    CHECK(sign_report.at("evaluations")[0].at("mae2") == 0.5);

    const RunResult st = run("stationarity --preset bench-pois --sign iid --pi 0.5");
    REQUIRE(st.exit_code == 0);
    const json st_report = json::parse(st.out);
    CHECK(st_report.at("rho").get<double>() == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(st_report.at("e_abs_y").get<double>() == doctest::Approx(3.75).epsilon(1e-10));
    CHECK(st_report.at("sufficient_spectral") == true);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("fit --no-such-flag").exit_code == 2);
    CHECK(run("no-such-subcommand").exit_code == 2);
    CHECK(run("simulate --preset bench-pois --n 10 --seed 1").exit_code == 2);  // missing --out
    CHECK(run("stationarity --preset bench-pois --sign nonsense").exit_code == 2);
    CHECK(run("simulate --n 10 --out /dev/null").exit_code == 2);  // no preset or params
}

TEST_CASE("data errors exit with code 3 and carry line numbers") {
    const fs::path bad = temp_dir() / "bad.csv";
    write_file(bad, "y\n3\n-1\nfoo\n2\n");
    int code = 0;
    const std::string err = run_stderr("fit --input " + bad.string(), &code);
    CHECK(code == 3);
    CHECK(err.find(":4:") != std::string::npos);  // offending line number

    const fs::path one_sign = temp_dir() / "one_sign.csv";
    std::string content = "y\n";
    for (int i = 0; i < 200; ++i) content += "3\n";
    write_file(one_sign, content);
    CHECK(run("fit --input " + one_sign.string()).exit_code == 3);

    CHECK(run("fit --input " + (temp_dir() / "does_not_exist.csv").string()).exit_code == 3);
    ensure_series();
    CHECK(run("pit --input " + kSeries.string() + " --bins 1").exit_code == 3);
}

TEST_CASE("csv parser accepts headerless files") {
    ensure_series();
    // strip the header off an existing simulated series
    const std::string with_header = slurp(kSeries);
    const fs::path plain = temp_dir() / "plain.csv";
    write_file(plain, with_header.substr(2));
    const RunResult r = run("fit --input " + plain.string());
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out).at("n") == 800);
}
