#pragma once

#include <functional>
#include <vector>

namespace mdingarch {

struct OptimResult {
    std::vector<double> x;
    double value = 0.0;           // objective at x
    double gradient_norm = 0.0;   // sup-norm of the gradient at x
    int iterations = 0;
    bool converged = false;
};

struct OptimOptions {
    double gradient_tol = 1e-8;
    int max_iterations = 500;
};

// Objective returning f(x) and writing the gradient in-place.
using GradObjective = std::function<double(const std::vector<double>&, std::vector<double>&)>;

// Dense BFGS minimizer with backtracking Armijo line search. Dimensions in
// this project are tiny (<= 6 per block), so no limited-memory variant is
// needed.
OptimResult minimize_bfgs(const GradObjective& objective, std::vector<double> x0,
                          const OptimOptions& opts = {});

}  // namespace mdingarch
