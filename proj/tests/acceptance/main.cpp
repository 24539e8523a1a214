// Acceptance suite driver: runs every verification criterion and prints one
// pass/fail line per criterion. Exits nonzero if any criterion fails.
//
// Usage: acceptance --cli /path/to/mdingarch-cli [--threads N] [--criteria 1 2 ...]

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "mdingarch/reproduce.hpp"

int main(int argc, char** argv) {
    mdingarch::ReproduceOptions opts;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--cli" && i + 1 < argc) {
            opts.cli_path = argv[++i];
        } else if (arg == "--threads" && i + 1 < argc) {
            opts.threads = std::atoi(argv[++i]);
        } else if (arg == "--criteria") {
            while (i + 1 < argc && argv[i + 1][0] != '-') opts.only.push_back(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr,
                         "usage: %s --cli PATH [--threads N] [--criteria id ...]\n", argv[0]);
            return 2;
        }
    }
    if (opts.cli_path.empty()) {
        std::fprintf(stderr, "error: --cli PATH is required\n");
        return 2;
    }

    const std::vector<mdingarch::CriterionResult> results = mdingarch::run_criteria(opts);
    bool all_pass = true;
    for (const mdingarch::CriterionResult& r : results) {
        std::printf("%s  criterion %2d  %-55s  %7.1fs  %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && r.pass;
    }
    std::printf("%s (%zu criteria)\n", all_pass ? "ALL PASS" : "FAILURES PRESENT",
                results.size());
    return all_pass ? 0 : 1;
}
