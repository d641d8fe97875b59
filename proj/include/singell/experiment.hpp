#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "singell/checks.hpp"
#include "singell/exponents.hpp"
#include "singell/trace.hpp"

namespace singell {

/// Experiment protocol: continuation schedule, mesh family and thresholds.
/// Slope/consistency thresholds are artifact choices (the paper asserts
/// uniform bounds, not rates); they are echoed into every report.
struct Protocol {
    std::vector<int> n_schedule = {1, 2, 4, 8, 16, 32, 64};
    std::vector<int> meshes = {256, 512};
    double grading = 1.0;
    double window = 0.8;
    SolverOptions solver;
    double slope_stabilized = 0.05;
    double slope_growing = 0.3;
    double cross_mesh_tol = 0.05;
    double energy_tol = 0.05;
    double interior_floor = 1e-6;
    double interior_drop_tol = 1e-8;
    double monotonicity_tol = 1e-6;
    double residual_bound = 1e-8;

    void validate() const {
        solver.validate();
        if (n_schedule.size() < 1 || n_schedule.front() < 1)
            throw std::invalid_argument("protocol: schedule must start at level >= 1");
        for (size_t i = 1; i < n_schedule.size(); ++i)
            if (n_schedule[i] <= n_schedule[i - 1])
                throw std::invalid_argument("protocol: schedule must be strictly increasing");
        if (meshes.empty()) throw std::invalid_argument("protocol: need at least one mesh");
        for (size_t i = 0; i < meshes.size(); ++i) {
            if (meshes[i] < 8) throw std::invalid_argument("protocol: meshes need >= 8 cells");
            if (i > 0 && meshes[i] <= meshes[i - 1])
                throw std::invalid_argument("protocol: mesh sizes must be strictly increasing");
        }
        if (!(grading > 0.0)) throw std::invalid_argument("protocol: grading must be > 0");
        if (!(window > 0.0) || !(window < 1.0))
            throw std::invalid_argument("protocol: window must lie in (0,1)");
    }
};

struct VerdictReport {
    ProblemSpec spec;
    ExponentTable table;
    RegimePrediction regime;
    Protocol protocol;
    std::vector<CheckResult> checks;
    bool overall = true;
};

struct ExperimentResult {
    VerdictReport report;
    std::vector<NormTrace> traces;  // one per protocol mesh, in protocol order
};

namespace detail {

inline void push_check(VerdictReport& report, CheckResult check, bool mandatory) {
    check.mandatory = mandatory;
    if (mandatory && !check.passed) report.overall = false;
    report.checks.push_back(std::move(check));
}

inline CheckResult stabilization_check(const NormTrace& trace, TraceKey key,
                                       const Protocol& proto, const std::string& name) {
    CheckResult r;
    r.name = name;
    r.measured = trace_slope(trace, key);
    r.bound = proto.slope_stabilized;
    const auto verdict = classify_trace(trace, key, proto.slope_stabilized, proto.slope_growing);
    r.passed = verdict == TraceVerdict::Stabilized;
    r.detail = std::string(to_string(key)) + " trace " + to_string(verdict) +
               ", log-log slope over last three levels";
    return r;
}

inline CheckResult cross_mesh_check(const NormTrace& fine, const NormTrace& coarse, TraceKey key,
                                    double tol) {
    const double a = trace_value(fine.rows.back(), key);
    const double b = trace_value(coarse.rows.back(), key);
    CheckResult r;
    r.name = std::string("cross_mesh_") + to_string(key);
    r.measured = a > 0.0 ? std::abs(a - b) / a : std::abs(a - b);
    r.bound = tol;
    r.tolerance = tol;
    r.passed = r.measured <= tol;
    r.detail = "final-level relative gap between the two finest meshes";
    return r;
}

}  // namespace detail

/// Runs the continuation protocol on every mesh, evaluates the regime's
/// claim set on the finest mesh, and always checks monotonicity,
/// non-negativity, interior positivity and cross-mesh consistency. For
/// OutOfTheorem data every check is informational (the theorem predicts
/// nothing).
inline ExperimentResult run_experiment(const ProblemSpec& spec, const Protocol& proto) {
    proto.validate();
    ExperimentResult result{
        VerdictReport{spec, exponent_table(spec.dimension, spec.p, spec.gamma, spec.m),
                      classify_regime(spec), proto, {}, true},
        {}};
    VerdictReport& report = result.report;
    const bool in_theorem = report.regime.case_id != RegimeCase::OutOfTheorem;

    std::vector<ContinuationResult> runs;
    std::vector<MeshPtr> mesh_ptrs;
    for (int cells : proto.meshes) {
        auto mesh = build_radial_mesh(spec.dimension, cells, proto.grading);
        runs.push_back(continuation_sequence(mesh, spec, proto.n_schedule, proto.solver,
                                             proto.window));
        mesh_ptrs.push_back(mesh);
        result.traces.push_back(runs.back().trace);
    }
    const size_t finest = runs.size() - 1;
    const NormTrace& trace = runs[finest].trace;
    const auto& outcomes = runs[finest].outcomes;
    const MeshPtr& mesh = mesh_ptrs[finest];
    const bool zero_source = trace.rows.back().int_f <= 0.0;
    const bool enough_rows = trace.rows.size() >= 4;

    // claim set on the finest mesh
    std::vector<TraceKey> claimed_keys;
    for (const Claim& claim : report.regime.claims) {
        switch (claim.kind) {
            case ClaimKind::GlobalH1:
                claimed_keys.push_back(TraceKey::H1);
                if (enough_rows)
                    detail::push_check(
                        report, detail::stabilization_check(trace, TraceKey::H1, proto,
                                                            "stabilized_h1"),
                        in_theorem);
                break;
            case ClaimKind::LmDoubleStarPower:
                claimed_keys.push_back(TraceKey::Lmss);
                if (enough_rows)
                    detail::push_check(
                        report, detail::stabilization_check(trace, TraceKey::Lmss, proto,
                                                            "stabilized_lmss"),
                        in_theorem);
                break;
            case ClaimKind::W1Sigma:
                claimed_keys.push_back(TraceKey::GradLsigma);
                if (enough_rows)
                    detail::push_check(
                        report, detail::stabilization_check(trace, TraceKey::GradLsigma, proto,
                                                            "stabilized_grad_lsigma"),
                        in_theorem);
                break;
            case ClaimKind::LocalH1PlusPowerH1:
                claimed_keys.push_back(TraceKey::H1Interior);
                claimed_keys.push_back(TraceKey::PowerH1);
                if (enough_rows) {
                    detail::push_check(
                        report, detail::stabilization_check(trace, TraceKey::H1Interior, proto,
                                                            "stabilized_h1_interior"),
                        in_theorem);
                    detail::push_check(
                        report, detail::stabilization_check(trace, TraceKey::PowerH1, proto,
                                                            "stabilized_power_h1"),
                        in_theorem);
                }
                detail::push_check(report,
                                   check_energy_inequality(mesh, spec, outcomes.back(),
                                                           proto.energy_tol),
                                   in_theorem);
                break;
            case ClaimKind::LInfinity:
                claimed_keys.push_back(TraceKey::Linf);
                if (enough_rows)
                    detail::push_check(
                        report, detail::stabilization_check(trace, TraceKey::Linf, proto,
                                                            "stabilized_linf"),
                        in_theorem);
                break;
        }
    }

    // always-run checks (per mesh for monotonicity/non-negativity)
    for (size_t mi = 0; mi < runs.size(); ++mi) {
        if (runs[mi].outcomes.size() >= 2) {
            CheckResult mono = check_monotonicity(runs[mi].outcomes, proto.monotonicity_tol);
            mono.name += "_" + std::to_string(proto.meshes[mi]);
            detail::push_check(report, std::move(mono), in_theorem);
        }
        double least = 0.0;
        for (const auto& out : runs[mi].outcomes)
            for (double v : out.field.values) least = std::min(least, v);
        CheckResult nn;
        nn.name = "nonnegative_" + std::to_string(proto.meshes[mi]);
        nn.measured = least;
        nn.bound = 0.0;
        nn.passed = least >= 0.0;
        nn.detail = "least nodal value over all levels";
        detail::push_check(report, std::move(nn), in_theorem);
    }

    {
        CheckResult ip;
        ip.name = "interior_positivity";
        double least = std::numeric_limits<double>::infinity();
        double worst_drop = 0.0;
        for (size_t i = 0; i < trace.rows.size(); ++i) {
            least = std::min(least, trace.rows[i].interior_min);
            if (i > 0)
                worst_drop = std::max(worst_drop, trace.rows[i - 1].interior_min -
                                                      trace.rows[i].interior_min);
        }
        ip.measured = least;
        ip.bound = proto.interior_floor;
        ip.tolerance = proto.interior_drop_tol;
        ip.passed = least >= proto.interior_floor && worst_drop <= proto.interior_drop_tol;
        ip.detail = "least interior minimum over levels; worst drop " + std::to_string(worst_drop);
        detail::push_check(report, std::move(ip), in_theorem && !zero_source);
    }

    // cross-mesh consistency of the claimed norms between the two finest meshes
    if (runs.size() >= 2) {
        std::sort(claimed_keys.begin(), claimed_keys.end());
        claimed_keys.erase(std::unique(claimed_keys.begin(), claimed_keys.end()),
                           claimed_keys.end());
        for (TraceKey key : claimed_keys)
            detail::push_check(report,
                               detail::cross_mesh_check(runs[finest].trace,
                                                        runs[finest - 1].trace, key,
                                                        proto.cross_mesh_tol),
                               in_theorem);
    }

    // weak-form residual at the largest level with the solution untruncated
    {
        int pick = -1;
        for (size_t i = trace.rows.size(); i-- > 0;) {
            if (trace.rows[i].linf < static_cast<double>(trace.rows[i].level)) {
                pick = static_cast<int>(i);
                break;
            }
        }
        CheckResult wr;
        wr.name = "weak_residual";
        wr.bound = proto.residual_bound;
        if (pick >= 0 && !zero_source) {
            wr.measured = weak_residual(mesh, spec, outcomes[pick].field,
                                        outcomes[pick].level);
            wr.passed = wr.measured <= proto.residual_bound;
            wr.detail = "normalized hat-function residual at level " +
                        std::to_string(outcomes[pick].level);
            detail::push_check(report, std::move(wr), in_theorem);
        } else {
            wr.passed = true;
            wr.detail = zero_source ? "skipped: zero source"
                                    : "skipped: solution truncation active at every level";
            detail::push_check(report, std::move(wr), false);
        }
    }

    return result;
}

}  // namespace singell
