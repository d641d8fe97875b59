// Command-line front end: experiment orchestration and bit-stable CSV/JSON
// emission. Exit codes: 0 success, 1 failed verdict, 2 config error,
// 3 solver non-convergence.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "singell/singell.hpp"

namespace fs = std::filesystem;
using namespace singell;

namespace {

constexpr int kExitVerdictFail = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNonConvergence = 3;

void print_checks(const VerdictReport& report) {
    for (const auto& c : report.checks) {
        std::printf("  [%s]%s %-28s measured=%-22s bound=%s\n", c.passed ? "PASS" : "FAIL",
                    c.mandatory ? "" : " (info)", c.name.c_str(), fmt17(c.measured).c_str(),
                    fmt17(c.bound).c_str());
    }
    std::printf("regime: %s  overall: %s\n", to_string(report.regime.case_id),
                report.overall ? "PASS" : "FAIL");
}

std::string source_label(const SourceSpec& s) {
    switch (s.kind) {
        case SourceKind::Constant: return "constant:" + fmt17(s.amplitude);
        case SourceKind::RadialPower:
            return "radial_power:" + fmt17(s.amplitude) + ":" + fmt17(s.a_exp);
        case SourceKind::Manufactured: return "manufactured:" + std::to_string(s.level);
    }
    return "?";
}

bool check_passed(const VerdictReport& report, const std::string& name) {
    for (const auto& c : report.checks)
        if (c.name == name) return c.passed;
    return false;
}

std::string claim_verdict(const VerdictReport& report, ClaimKind kind) {
    std::vector<std::string> names;
    switch (kind) {
        case ClaimKind::GlobalH1: names = {"stabilized_h1", "cross_mesh_H1"}; break;
        case ClaimKind::LmDoubleStarPower: names = {"stabilized_lmss", "cross_mesh_Lmss"}; break;
        case ClaimKind::W1Sigma:
            names = {"stabilized_grad_lsigma", "cross_mesh_LsigmaGrad"};
            break;
        case ClaimKind::LocalH1PlusPowerH1:
            names = {"stabilized_h1_interior", "stabilized_power_h1", "energy_inequality",
                     "cross_mesh_H1interior", "cross_mesh_PowerH1"};
            break;
        case ClaimKind::LInfinity: names = {"stabilized_linf", "cross_mesh_Linf"}; break;
    }
    if (!report.regime.has(kind)) return "na";
    bool seen = false;
    for (const auto& c : report.checks) {
        for (const auto& n : names) {
            if (c.name == n) {
                seen = true;
                if (!c.passed) return "fail";
            }
        }
    }
    return seen ? "pass" : "na";
}

struct SweepRow {
    std::string line;
    bool ok = false;
};

std::string summary_header() {
    return "case,dimension,p,gamma,m,source,regime,overall,c_global_h1,c_lmss,c_w1sigma,"
           "c_local_power_h1,c_linf,L2,Linf,H1,H1interior,PowerH1,InteriorMin\n";
}

std::string summary_row(const std::string& case_id, const RunConfig& cfg,
                        const ExperimentResult& result) {
    const VerdictReport& r = result.report;
    const TraceRow& fin = result.traces.back().rows.back();
    std::string s = case_id;
    s += ',' + std::to_string(cfg.spec.dimension);
    s += ',' + fmt17(cfg.spec.p);
    s += ',' + fmt17(cfg.spec.gamma);
    s += ',' + (std::isfinite(cfg.spec.m) ? fmt17(cfg.spec.m) : std::string("inf"));
    s += ',' + source_label(cfg.spec.source);
    s += ',' + std::string(to_string(r.regime.case_id));
    s += ',' + std::string(r.overall ? "pass" : "fail");
    s += ',' + claim_verdict(r, ClaimKind::GlobalH1);
    s += ',' + claim_verdict(r, ClaimKind::LmDoubleStarPower);
    s += ',' + claim_verdict(r, ClaimKind::W1Sigma);
    s += ',' + claim_verdict(r, ClaimKind::LocalH1PlusPowerH1);
    s += ',' + claim_verdict(r, ClaimKind::LInfinity);
    s += ',' + fmt17(fin.l2);
    s += ',' + fmt17(fin.linf);
    s += ',' + fmt17(fin.h1);
    s += ',' + fmt17(fin.h1_interior);
    s += ',' + fmt17(fin.power_h1);
    s += ',' + fmt17(fin.interior_min);
    s += '\n';
    return s;
}

std::string error_row(const std::string& case_id, const nlohmann::json& case_json,
                      const std::string& what) {
    auto get = [&](const char* key) -> std::string {
        try {
            return fmt17(case_json.at("problem").at(key).get<double>());
        } catch (...) {
            return "0";
        }
    };
    std::string s = case_id + ",0," + get("p") + ',' + get("gamma") + ',' + get("m") +
                    ",error,error,fail,na,na,na,na,na,0,0,0,0,0,0\n";
    (void)what;
    return s;
}

int cmd_solve(const std::string& config_path, const std::string& out_override) {
    std::optional<RunConfig> parsed;
    try {
        parsed = load_run_config(config_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    }
    const RunConfig& cfg = *parsed;
    const std::string out_dir = out_override.empty() ? cfg.output_dir : out_override;
    try {
        fs::create_directories(out_dir);
        ExperimentResult result = run_experiment(cfg.spec, cfg.protocol);
        write_file((fs::path(out_dir) / "trace.csv").string(), trace_csv(result.traces));
        write_file((fs::path(out_dir) / "report.json").string(), report_json(result.report));
        print_checks(result.report);
        std::printf("wrote %s/{report.json,trace.csv}\n", out_dir.c_str());
        return result.report.overall ? 0 : kExitVerdictFail;
    } catch (const NonConvergenceError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return kExitNonConvergence;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    }
}

int cmd_sweep(const std::string& config_path, int jobs) {
    SweepConfig sweep;
    std::string out_dir;
    size_t total = 0;
    try {
        sweep = parse_sweep_config(load_json_file(config_path));
        out_dir = parse_run_config(sweep.base).output_dir;
        total = sweep_case_count(sweep);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    }

    fs::create_directories(out_dir);
    std::vector<SweepRow> rows(total);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
            char id[16];
            std::snprintf(id, sizeof(id), "case_%04zu", i);
            const nlohmann::json case_json = sweep_case_json(sweep, i);
            try {
                RunConfig cfg = parse_run_config(case_json);
                ExperimentResult result = run_experiment(cfg.spec, cfg.protocol);
                const fs::path case_dir = fs::path(out_dir) / id;
                fs::create_directories(case_dir);
                write_file((case_dir / "trace.csv").string(), trace_csv(result.traces));
                write_file((case_dir / "report.json").string(), report_json(result.report));
                rows[i] = {summary_row(id, cfg, result), result.report.overall};
            } catch (const std::exception& e) {
                rows[i] = {error_row(id, case_json, e.what()), false};
            }
        }
    };
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(total)));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::string summary = summary_header();
    bool all_ok = true;
    for (const auto& row : rows) {
        summary += row.line;
        all_ok = all_ok && row.ok;
    }
    write_file((fs::path(out_dir) / "summary.csv").string(), summary);
    std::printf("%zu cases -> %s/summary.csv\n", total, out_dir.c_str());
    return all_ok ? 0 : kExitVerdictFail;
}

int cmd_manufactured(int dim, double p, double gamma, std::vector<int> cells, int level,
                     double grading, const std::string& out_dir) {
    if (cells.size() < 3) {
        std::fprintf(stderr, "config error: need at least 3 mesh sizes\n");
        return kExitConfigError;
    }
    for (size_t i = 1; i < cells.size(); ++i)
        if (cells[i] <= cells[i - 1]) {
            std::fprintf(stderr, "config error: mesh sizes must increase\n");
            return kExitConfigError;
        }
    std::vector<double> errors;
    try {
        const ProblemSpec spec(dim, p, gamma, CoefficientSpec::constant(1.0),
                               SourceSpec::manufactured(level), 10.0);
        manufactured_case(dim, p, gamma, level);  // validates sup f_n < n
        for (int c : cells) {
            auto mesh = build_radial_mesh(dim, c, grading);
            SolveOutcome out =
                picard_solve(mesh, spec, level, DiscreteField::zeros(mesh), SolverOptions{});
            double err = 0.0;
            for (int i = 0; i < mesh->node_count(); ++i)
                err = std::max(err,
                               std::abs(out.field.values[i] -
                                        (1.0 - mesh->nodes[i] * mesh->nodes[i])));
            errors.push_back(err);
        }
    } catch (const NonConvergenceError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return kExitNonConvergence;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    }

    std::string csv = "cells,sup_error,order\n";
    double last_order = 0.0;
    bool have_order = false;
    for (size_t i = 0; i < cells.size(); ++i) {
        std::string order = "na";
        if (i > 0 && errors[i] > 0.0 && errors[i - 1] > errors[i]) {
            last_order = std::log2(errors[i - 1] / errors[i]);
            order = fmt17(last_order);
            have_order = true;
        }
        csv += std::to_string(cells[i]) + ',' + fmt17(errors[i]) + ',' + order + '\n';
        std::printf("cells=%-6d sup_error=%-22s order=%s\n", cells[i], fmt17(errors[i]).c_str(),
                    order.c_str());
    }
    fs::create_directories(out_dir);
    write_file((fs::path(out_dir) / "mms.csv").string(), csv);
    if (errors.size() >= 3) {
        try {
            auto est = convergence_order(errors[errors.size() - 3], errors[errors.size() - 2],
                                         errors.back());
            if (est) {
                last_order = est->fine_pair;
                have_order = true;
            } else {
                have_order = false;
            }
        } catch (const std::exception&) {
            have_order = false;
        }
    }
    std::printf("observed order: %s\n", have_order ? fmt17(last_order).c_str() : "inconclusive");
    return (have_order && last_order >= 1.8) ? 0 : kExitVerdictFail;
}

int cmd_report(const std::string& in_dir) {
    nlohmann::json j;
    try {
        j = load_json_file((fs::path(in_dir) / "report.json").string());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    }
    try {
        const auto& problem = j.at("problem");
        std::printf("problem: N=%d p=%s gamma=%s m=%s\n", problem.at("dimension").get<int>(),
                    problem.at("p").dump().c_str(), problem.at("gamma").dump().c_str(),
                    problem.at("m").dump().c_str());
        std::printf("regime: %s (bounded: %s)\n",
                    j.at("regime").at("case").get<std::string>().c_str(),
                    j.at("regime").at("bounded").get<bool>() ? "yes" : "no");
        std::printf("checks:\n");
        for (const auto& c : j.at("checks")) {
            std::printf("  [%s]%s %-28s measured=%-22s bound=%s\n",
                        c.at("passed").get<bool>() ? "PASS" : "FAIL",
                        c.at("mandatory").get<bool>() ? "" : " (info)",
                        c.at("name").get<std::string>().c_str(),
                        c.at("measured").dump().c_str(), c.at("bound").dump().c_str());
        }
        std::printf("overall: %s\n", j.at("overall").get<bool>() ? "PASS" : "FAIL");
        return 0;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "error: malformed report: %s\n", e.what());
        return kExitConfigError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for a degenerate-coercive elliptic problem with a "
                 "singular right-hand side"};
    app.require_subcommand(1);

    std::string config_path, out_dir, in_dir;
    int jobs = 1;
    int dim = 3, level = 1000;
    double p = 1.0, gamma = 2.0, grading = 1.0;
    std::vector<int> cells;
    std::string mms_out = ".";

    auto* solve = app.add_subcommand("solve", "run one experiment from a config file");
    solve->add_option("--config", config_path, "run config (JSON)")->required();
    solve->add_option("--out", out_dir, "output directory (overrides config)");

    auto* sweep = app.add_subcommand("sweep", "run a cross-product parameter sweep");
    sweep->add_option("--config", config_path, "sweep config (JSON)")->required();
    sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* mms = app.add_subcommand("manufactured", "manufactured-solution convergence study");
    mms->add_option("--dim", dim, "space dimension")->required();
    mms->add_option("--p", p, "degeneracy exponent")->required();
    mms->add_option("--gamma", gamma, "singularity exponent")->required();
    mms->add_option("--cells", cells, "mesh sizes (at least 3)")->required()->delimiter(',');
    mms->add_option("--level", level, "truncation level");
    mms->add_option("--grading", grading, "mesh grading");
    mms->add_option("--out", mms_out, "output directory");

    auto* rep = app.add_subcommand("report", "pretty-print a stored report");
    rep->add_option("--in", in_dir, "directory containing report.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    if (solve->parsed()) return cmd_solve(config_path, out_dir);
    if (sweep->parsed()) return cmd_sweep(config_path, jobs);
    if (mms->parsed()) return cmd_manufactured(dim, p, gamma, cells, level, grading, mms_out);
    if (rep->parsed()) return cmd_report(in_dir);
    return kExitConfigError;
}
