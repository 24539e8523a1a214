#include "mdingarch/optimize.hpp"

#include <cmath>
#include <limits>

namespace mdingarch {

namespace {

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

OptimResult minimize_bfgs(const GradObjective& objective, std::vector<double> x0,
                          const OptimOptions& opts) {
    const std::size_t n = x0.size();
    OptimResult result;
    result.x = std::move(x0);

    std::vector<double> grad(n), grad_new(n);
    double f = objective(result.x, grad);

    // inverse Hessian approximation, dense
    std::vector<std::vector<double>> h(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) h[i][i] = 1.0;

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        result.iterations = iter + 1;
        if (sup_norm(grad) < opts.gradient_tol) {
            result.converged = true;
            break;
        }

        std::vector<double> dir(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) dir[i] -= h[i][j] * grad[j];

        double slope = dot(dir, grad);
        if (!(slope < 0.0)) {
            // reset to steepest descent when curvature information degrades
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) h[i][j] = i == j ? 1.0 : 0.0;
                dir[i] = -grad[i];
            }
            slope = dot(dir, grad);
            if (!(slope < 0.0)) break;
        }

        // backtracking Armijo search
        double step = 1.0;
        double f_new = std::numeric_limits<double>::infinity();
        std::vector<double> x_new(n);
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < n; ++i) x_new[i] = result.x[i] + step * dir[i];
            f_new = objective(x_new, grad_new);
            if (std::isfinite(f_new) && f_new <= f + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;

        // BFGS update of the inverse Hessian
        std::vector<double> s(n), yv(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = x_new[i] - result.x[i];
            yv[i] = grad_new[i] - grad[i];
        }
        const double sy = dot(s, yv);
        if (sy > 1e-12 * sup_norm(s) * sup_norm(yv) && sy > 0.0) {
            std::vector<double> hy(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) hy[i] += h[i][j] * yv[j];
            const double yhy = dot(yv, hy);
            const double c1 = (sy + yhy) / (sy * sy);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    h[i][j] += c1 * s[i] * s[j] - (hy[i] * s[j] + s[i] * hy[j]) / sy;
        }

        result.x = x_new;
        f = f_new;
        grad = grad_new;
    }

    result.value = f;
    result.gradient_norm = sup_norm(grad);
    if (result.gradient_norm < opts.gradient_tol) result.converged = true;
    return result;
}

}  // namespace mdingarch
