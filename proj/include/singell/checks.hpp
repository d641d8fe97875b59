#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "singell/norms.hpp"
#include "singell/picard.hpp"
#include "singell/trace.hpp"

namespace singell {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double bound = 0.0;
    double tolerance = 0.0;
    std::string detail;
    bool mandatory = true;
};

/// Quantitative form of the gamma > p+1 energy estimate:
///   (4 alpha gamma / (gamma+1-p)^2) ||grad(u^{(gamma+1-p)/2})||_{L2}^2
///        <= (1+tol) * integral |f|.
inline CheckResult check_energy_inequality(const MeshPtr& mesh, const ProblemSpec& spec,
                                           const SolveOutcome& outcome, double tol = 0.05) {
    if (!(spec.gamma > spec.p + 1.0 + 1e-12))
        throw std::invalid_argument("energy check: requires gamma > p+1");
    const double power = 0.5 * (spec.gamma + 1.0 - spec.p);
    auto v = DiscreteField::zeros(mesh);
    for (int i = 0; i < mesh->node_count(); ++i)
        v.values[i] = std::pow(outcome.field.values[i], power);
    const double seminorm = grad_lp_seminorm(v, 2.0, 1.0);
    const double lhs = 4.0 * spec.coeff.alpha * spec.gamma /
                       ((spec.gamma + 1.0 - spec.p) * (spec.gamma + 1.0 - spec.p)) * seminorm *
                       seminorm;
    const double rhs = source_total_integral(*mesh, spec, outcome.level);

    CheckResult r;
    r.name = "energy_inequality";
    r.measured = lhs;
    r.bound = rhs;
    r.tolerance = tol;
    r.passed = lhs <= (1.0 + tol) * rhs;
    r.detail = "4*alpha*gamma/(gamma+1-p)^2 * |grad u^" + std::to_string(power) +
               "|^2 vs integral of f at level " + std::to_string(outcome.level);
    return r;
}

/// Discrete counterpart of the monotone approximating sequence:
/// u_n <= u_{n+1} + tol*(1 + ||u_{n+1}||_inf) nodewise, per consecutive pair.
inline CheckResult check_monotonicity(const std::vector<SolveOutcome>& outcomes,
                                      double tol = 1e-6) {
    if (outcomes.size() < 2)
        throw std::invalid_argument("monotonicity check: need at least 2 outcomes");
    for (size_t i = 1; i < outcomes.size(); ++i) {
        if (!outcomes[i].field.mesh->same_grid(*outcomes[i - 1].field.mesh))
            throw std::invalid_argument("monotonicity check: outcomes live on different meshes");
        if (outcomes[i].level <= outcomes[i - 1].level)
            throw std::invalid_argument("monotonicity check: levels must increase");
    }
    double worst = -std::numeric_limits<double>::infinity();
    int worst_level = outcomes.front().level;
    for (size_t i = 1; i < outcomes.size(); ++i) {
        const auto& lo = outcomes[i - 1].field.values;
        const auto& hi = outcomes[i].field.values;
        const double slack = tol * (1.0 + linf_norm(outcomes[i].field));
        for (size_t j = 0; j < lo.size(); ++j) {
            const double excess = lo[j] - hi[j] - slack;
            if (excess > worst) {
                worst = excess;
                worst_level = outcomes[i].level;
            }
        }
    }
    CheckResult r;
    r.name = "monotone_in_n";
    r.measured = worst;
    r.bound = 0.0;
    r.tolerance = tol;
    r.passed = worst <= 0.0;
    r.detail = "worst nodewise excess of u_n over u_{n+1} (level " + std::to_string(worst_level) +
               ")";
    return r;
}

/// Default family of interior hat-function centers: nodes nearest to evenly
/// spaced radii, supports confined to {r <= rmax}.
inline std::vector<int> default_hat_nodes(const RadialMesh& mesh, int count = 5,
                                          double rmax = 0.9) {
    std::vector<int> nodes;
    for (int j = 1; j <= count; ++j) {
        const double target = rmax * 0.85 * j / count;
        int best = 1;
        double dist = 2.0;
        for (int i = 1; i + 1 < mesh.node_count(); ++i) {
            if (mesh.nodes[i + 1] > rmax) break;
            const double d = std::abs(mesh.nodes[i] - target);
            if (d < dist) {
                dist = d;
                best = i;
            }
        }
        if (nodes.empty() || nodes.back() != best) nodes.push_back(best);
    }
    return nodes;
}

/// Normalized residual of the weak form against piecewise-linear interior hat
/// functions: each hat centered at node j reproduces row j of the discrete
/// system, so for a converged field the residual is bounded by solver
/// tolerance. Guards assembly/normalization consistency.
inline double weak_residual(const MeshPtr& mesh, const ProblemSpec& spec,
                            const DiscreteField& field, int n,
                            const std::vector<int>& hat_nodes) {
    if (hat_nodes.empty()) throw std::invalid_argument("weak_residual: no test functions");
    for (int j : hat_nodes) {
        if (j < 1 || j + 1 >= mesh->node_count())
            throw std::invalid_argument("weak_residual: hat node out of range");
        if (mesh->nodes[j + 1] > 0.9 + 1e-12)
            throw std::invalid_argument("weak_residual: support must stay inside r <= 0.9");
        for (int i = j - 1; i <= j + 1; ++i)
            if (field.values[i] < 1e-12)
                throw std::runtime_error(
                    "weak_residual: field below positivity floor on a test-function support");
    }
    const auto source = cell_source_integrals(*mesh, spec, n);
    const double shift = 1.0 / n;
    double worst = 0.0;
    for (int j : hat_nodes) {
        // gradient side: the two faces of the hat
        double lhs = 0.0;
        for (int k : {j - 1, j}) {
            const double uslope = (field.values[k + 1] - field.values[k]) / mesh->spacings[k];
            const double phislope = (k == j - 1 ? 1.0 : -1.0) / mesh->spacings[k];
            const double ubar = 0.5 * (field.values[k] + field.values[k + 1]);
            lhs += spec.coeff(mesh->faces[k]) * uslope * phislope /
                   std::pow(1.0 + truncate(ubar, n), spec.p) * mesh->face_areas[k] *
                   mesh->spacings[k];
        }
        // source side: the hat is 1 at node j and 0 at every other node
        const double favg = source[j] / mesh->cell_volumes[j];
        const double rhs = mesh->cell_volumes[j] * std::min(favg, static_cast<double>(n)) /
                           std::pow(field.values[j] + shift, spec.gamma);
        const double scale = std::max(std::abs(lhs), std::abs(rhs));
        if (scale > 0.0) worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

inline double weak_residual(const MeshPtr& mesh, const ProblemSpec& spec,
                            const DiscreteField& field, int n) {
    return weak_residual(mesh, spec, field, n, default_hat_nodes(*mesh));
}

}  // namespace singell
