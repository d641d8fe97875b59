#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "singell/exponents.hpp"
#include "singell/norms.hpp"
#include "singell/picard.hpp"

namespace singell {

/// Per-level record of every tracked norm. Entries whose exponent is not
/// defined for the regime (Lmss, gradient-L^sigma, power-H1) are stored as 0.
struct TraceRow {
    int level = 0;
    int cells = 0;
    double l2 = 0.0;
    double linf = 0.0;
    double lmss = 0.0;          // L^{m**(gamma+1-p)} norm
    double h1 = 0.0;            // global gradient L^2 seminorm
    double grad_lsigma = 0.0;   // gradient L^sigma seminorm
    double h1_interior = 0.0;   // gradient L^2 seminorm over {r <= window}
    double power_h1 = 0.0;      // gradient L^2 seminorm of u^{(gamma+1-p)/2}
    double delta_power_h1 = 0.0;  // diagnostic: grad L^2 of (1+u)^{(-p+delta+1)/2}
    double int_f = 0.0;           // integral of |f|
    double int_trunc_f = 0.0;     // integral of the level-truncated cell averages
    double interior_min = 0.0;
    bool truncation_active = false;
    int iterations = 0;
};

struct NormTrace {
    std::vector<TraceRow> rows;
};

enum class TraceKey { L2, Linf, Lmss, H1, GradLsigma, H1Interior, PowerH1 };

inline const char* to_string(TraceKey k) {
    switch (k) {
        case TraceKey::L2: return "L2";
        case TraceKey::Linf: return "Linf";
        case TraceKey::Lmss: return "Lmss";
        case TraceKey::H1: return "H1";
        case TraceKey::GradLsigma: return "LsigmaGrad";
        case TraceKey::H1Interior: return "H1interior";
        case TraceKey::PowerH1: return "PowerH1";
    }
    return "?";
}

inline double trace_value(const TraceRow& row, TraceKey key) {
    switch (key) {
        case TraceKey::L2: return row.l2;
        case TraceKey::Linf: return row.linf;
        case TraceKey::Lmss: return row.lmss;
        case TraceKey::H1: return row.h1;
        case TraceKey::GradLsigma: return row.grad_lsigma;
        case TraceKey::H1Interior: return row.h1_interior;
        case TraceKey::PowerH1: return row.power_h1;
    }
    return 0.0;
}

inline TraceRow record_trace_row(const MeshPtr& mesh, const ProblemSpec& spec,
                                 const ExponentTable& table, const SolveOutcome& outcome,
                                 double window) {
    TraceRow row;
    row.level = outcome.level;
    row.cells = mesh->cells();
    const DiscreteField& u = outcome.field;
    row.l2 = lp_norm(u, 2.0);
    row.linf = linf_norm(u);
    row.h1 = grad_lp_seminorm(u, 2.0, 1.0);
    row.h1_interior = grad_lp_seminorm(u, 2.0, window);

    const double power = spec.gamma + 1.0 - spec.p;
    if (power > 0.0) {
        auto v = DiscreteField::zeros(mesh);
        for (int i = 0; i < mesh->node_count(); ++i)
            v.values[i] = std::pow(u.values[i], 0.5 * power);
        row.power_h1 = grad_lp_seminorm(v, 2.0, 1.0);
        if (table.m_double_star) {
            const double s = *table.m_double_star * power;
            if (s >= 1.0) row.lmss = lp_norm(u, s);
        }
    }
    if (table.sigma && *table.sigma >= 1.0)
        row.grad_lsigma = grad_lp_seminorm(u, *table.sigma, 1.0);
    if (table.delta) {
        const double e = 0.5 * (-spec.p + *table.delta + 1.0);
        if (e > 0.0) {
            auto w = DiscreteField::zeros(mesh);
            for (int i = 0; i < mesh->node_count(); ++i)
                w.values[i] = std::pow(1.0 + u.values[i], e);
            row.delta_power_h1 = grad_lp_seminorm(w, 2.0, 1.0);
        }
    }

    row.int_f = source_total_integral(*mesh, spec, outcome.level);
    const auto source = cell_source_integrals(*mesh, spec, outcome.level);
    double trunc_total = 0.0;
    for (int i = 0; i < mesh->node_count(); ++i)
        trunc_total += mesh->cell_volumes[i] *
                       std::min(source[i] / mesh->cell_volumes[i],
                                static_cast<double>(outcome.level));
    row.int_trunc_f = trunc_total;
    row.interior_min = outcome.interior_min;
    row.truncation_active = outcome.truncation_active;
    row.iterations = outcome.iterations;
    return row;
}

enum class TraceVerdict { Stabilized, Growing, Inconclusive };

inline const char* to_string(TraceVerdict v) {
    switch (v) {
        case TraceVerdict::Stabilized: return "Stabilized";
        case TraceVerdict::Growing: return "Growing";
        case TraceVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

/// Least-squares slope of log(norm) against log(n) over the last three rows.
inline double trace_slope(const NormTrace& trace, TraceKey key) {
    if (trace.rows.size() < 4)
        throw std::invalid_argument("classify_trace: need at least 4 rows");
    const size_t k = trace.rows.size();
    double x[3], y[3];
    double ymax = 0.0;
    for (int j = 0; j < 3; ++j) ymax = std::max(ymax, trace_value(trace.rows[k - 3 + j], key));
    if (ymax <= 1e-14) return 0.0;  // identically-zero trace counts as flat
    for (int j = 0; j < 3; ++j) {
        const TraceRow& row = trace.rows[k - 3 + j];
        x[j] = std::log(static_cast<double>(row.level));
        y[j] = std::log(std::max(trace_value(row, key), 1e-300));
    }
    const double xbar = (x[0] + x[1] + x[2]) / 3.0, ybar = (y[0] + y[1] + y[2]) / 3.0;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < 3; ++j) {
        num += (x[j] - xbar) * (y[j] - ybar);
        den += (x[j] - xbar) * (x[j] - xbar);
    }
    return num / den;
}

inline TraceVerdict classify_trace(const NormTrace& trace, TraceKey key,
                                   double slope_stabilized = 0.05, double slope_growing = 0.3) {
    const double slope = trace_slope(trace, key);
    if (slope < slope_stabilized) return TraceVerdict::Stabilized;
    if (slope > slope_growing) return TraceVerdict::Growing;
    return TraceVerdict::Inconclusive;
}

/// Solves the schedule of levels with warm starts (the discrete counterpart
/// of the monotone approximating sequence) and records one trace row per
/// level.
struct ContinuationResult {
    std::vector<SolveOutcome> outcomes;
    NormTrace trace;
};

inline ContinuationResult continuation_sequence(const MeshPtr& mesh, const ProblemSpec& spec,
                                                const std::vector<int>& n_schedule,
                                                const SolverOptions& opts, double window = 0.8) {
    if (n_schedule.empty() || n_schedule.front() < 1)
        throw std::invalid_argument("continuation: schedule must start at level >= 1");
    for (size_t i = 1; i < n_schedule.size(); ++i)
        if (n_schedule[i] <= n_schedule[i - 1])
            throw std::invalid_argument("continuation: schedule must be strictly increasing");

    const auto table = exponent_table(spec.dimension, spec.p, spec.gamma, spec.m);
    ContinuationResult result;
    DiscreteField init = DiscreteField::zeros(mesh);
    for (int level : n_schedule) {
        SolveOutcome out = picard_solve(mesh, spec, level, init, opts);
        result.trace.rows.push_back(record_trace_row(mesh, spec, table, out, window));
        init = out.field;
        result.outcomes.push_back(std::move(out));
    }
    return result;
}

}  // namespace singell
