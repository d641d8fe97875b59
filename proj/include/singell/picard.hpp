#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "singell/assembly.hpp"
#include "singell/mesh.hpp"
#include "singell/norms.hpp"
#include "singell/tridiagonal.hpp"

namespace singell {

struct SolverOptions {
    double tol_fix = 1e-10;  // relative sup-norm tolerance of the fixed point
    int max_iter = 500;
    double damping = 1.0;  // halved on residual increase, floored at 1/16

    void validate() const {
        if (!(tol_fix > 0.0)) throw std::invalid_argument("options: tol_fix must be > 0");
        if (max_iter < 1) throw std::invalid_argument("options: max_iter must be >= 1");
        if (!(damping > 0.0) || !(damping <= 1.0))
            throw std::invalid_argument("options: damping must lie in (0,1]");
    }
};

struct NonConvergenceError : std::runtime_error {
    int level;
    double last_change;
    NonConvergenceError(int level_, double last_change_)
        : std::runtime_error("picard: no convergence at level " + std::to_string(level_) +
                             ", last change " + std::to_string(last_change_)),
          level(level_),
          last_change(last_change_) {}
};

/// One solution of the level-n approximating problem with diagnostics.
struct SolveOutcome {
    DiscreteField field;
    int level = 0;
    int iterations = 0;
    double final_change = 0.0;
    bool truncation_active = false;  // max u >= n, or T_n clipped a source cell average
    double interior_min = 0.0;       // at the default window rho = 0.8
};

namespace detail {
inline double relative_sup_change(const std::vector<double>& a, const std::vector<double>& b) {
    double diff = 0.0, mag = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        diff = std::max(diff, std::abs(a[i] - b[i]));
        mag = std::max(mag, std::abs(b[i]));
    }
    return diff / (1.0 + mag);
}
}  // namespace detail

/// Damped fixed-point iteration on the frozen-coefficient system:
/// u <- (1-lambda) u + lambda A(u)^{-1} b(u). The M-matrix structure keeps
/// every inner solve non-negative, so the safety clamp stays inactive; it is
/// still asserted at the final iterate.
inline SolveOutcome picard_solve(const MeshPtr& mesh, const ProblemSpec& spec, int n,
                                 const DiscreteField& init, const SolverOptions& opts) {
    opts.validate();
    if (n < 1) throw std::invalid_argument("picard: level must be >= 1");
    if (!init.mesh || !init.mesh->same_grid(*mesh))
        throw std::invalid_argument("picard: init lives on a different mesh");
    for (double v : init.values)
        if (v < 0.0) throw std::invalid_argument("picard: init must be non-negative");

    std::vector<double> u = init.values;
    u.back() = 0.0;  // Dirichlet datum
    double lambda = opts.damping;
    double prev_change = std::numeric_limits<double>::infinity();
    bool clamp_active = false;
    int iterations = 0;
    double change = 0.0;
    bool converged = false;

    for (int k = 0; k < opts.max_iter; ++k) {
        DiscreteField frozen(mesh, u);
        const auto sys = assemble_frozen_system(*mesh, spec, n, frozen);
        const auto w = solve_tridiagonal(sys);

        std::vector<double> next(u.size());
        clamp_active = false;
        for (size_t i = 0; i + 1 < next.size(); ++i) {
            next[i] = (1.0 - lambda) * u[i] + lambda * w[i];
            if (next[i] < 0.0) {
                next[i] = 0.0;
                clamp_active = true;
            }
        }
        next.back() = 0.0;

        change = detail::relative_sup_change(next, u);
        iterations = k + 1;
        u = std::move(next);
        if (change <= opts.tol_fix) {
            converged = true;
            break;
        }
        if (change > prev_change) lambda = std::max(0.5 * lambda, 1.0 / 16.0);
        prev_change = change;
    }
    if (!converged) throw NonConvergenceError(n, change);
    if (clamp_active)
        throw std::runtime_error("picard: negativity clamp active at the final iterate");

    SolveOutcome out;
    out.field = DiscreteField(mesh, std::move(u));
    out.level = n;
    out.iterations = iterations;
    out.final_change = change;
    out.interior_min = singell::interior_min(out.field, 0.8);

    const double level = static_cast<double>(n);
    bool active = linf_norm(out.field) >= level;
    if (!active) {
        const auto source = cell_source_integrals(*mesh, spec, n);
        for (int i = 0; i < mesh->node_count() && !active; ++i)
            if (source[i] / mesh->cell_volumes[i] > level) active = true;
    }
    out.truncation_active = active;
    return out;
}

}  // namespace singell
