#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "singell/experiment.hpp"
#include "singell/problem.hpp"

namespace singell {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    ProblemSpec spec;
    Protocol protocol;
    std::string output_dir = "out";
};

/// Cross-product sweep: fields sorted by name, values in listed order, the
/// last field varying fastest. Enumeration order is part of the contract.
struct SweepConfig {
    nlohmann::json base;
    std::map<std::string, std::vector<double>> sweep;  // ordered by field name
    size_t case_cap = 10000;
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& known,
                                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
}

inline double number_or_inf(const nlohmann::json& v, const std::string& where) {
    if (v.is_string() && v.get<std::string>() == "inf")
        return std::numeric_limits<double>::infinity();
    if (!v.is_number()) throw ConfigError("config: " + where + " must be a number or \"inf\"");
    return v.get<double>();
}

}  // namespace detail

inline ProblemSpec parse_problem(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config: 'problem' must be an object");
    detail::reject_unknown_keys(j, {"dimension", "p", "gamma", "m", "coeff", "source"},
                                "problem");
    for (const char* key : {"dimension", "p", "gamma", "m", "coeff", "source"})
        if (!j.contains(key)) throw ConfigError(std::string("config: problem.") + key + " missing");

    CoefficientSpec coeff = CoefficientSpec::constant(1.0);
    {
        const auto& c = j.at("coeff");
        detail::reject_unknown_keys(c, {"profile", "alpha", "beta"}, "problem.coeff");
        const std::string profile = c.at("profile").get<std::string>();
        const double alpha = c.at("alpha").get<double>();
        const double beta = c.value("beta", alpha);
        if (profile == "constant") {
            if (c.contains("beta") && beta != alpha)
                throw ConfigError("config: constant profile requires beta == alpha");
            coeff = CoefficientSpec::constant(alpha);
        } else if (profile == "linear") {
            coeff = CoefficientSpec::linear(alpha, beta);
        } else if (profile == "cosine") {
            coeff = CoefficientSpec::cosine(alpha, beta);
        } else {
            throw ConfigError("config: unknown coeff profile '" + profile + "'");
        }
    }

    SourceSpec source = SourceSpec::constant(0.0);
    {
        const auto& s = j.at("source");
        detail::reject_unknown_keys(s, {"kind", "amplitude", "a_exp", "level"}, "problem.source");
        const std::string kind = s.at("kind").get<std::string>();
        if (kind == "constant") {
            source = SourceSpec::constant(s.at("amplitude").get<double>());
        } else if (kind == "radial_power") {
            source = SourceSpec::radial_power(s.at("amplitude").get<double>(),
                                              s.at("a_exp").get<double>());
        } else if (kind == "manufactured") {
            source = SourceSpec::manufactured(s.at("level").get<int>());
        } else {
            throw ConfigError("config: unknown source kind '" + kind + "'");
        }
    }

    try {
        return ProblemSpec(j.at("dimension").get<int>(), j.at("p").get<double>(),
                           j.at("gamma").get<double>(), coeff, source,
                           detail::number_or_inf(j.at("m"), "problem.m"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

inline Protocol parse_protocol(const nlohmann::json& j) {
    Protocol proto;
    if (j.is_null()) return proto;
    if (!j.is_object()) throw ConfigError("config: 'protocol' must be an object");
    detail::reject_unknown_keys(
        j,
        {"n_schedule", "cells", "grading", "window", "tol_fix", "max_iter", "damping",
         "slope_stabilized", "slope_growing", "cross_mesh_tol", "energy_tol", "interior_floor"},
        "protocol");
    if (j.contains("n_schedule")) proto.n_schedule = j.at("n_schedule").get<std::vector<int>>();
    if (j.contains("cells")) proto.meshes = j.at("cells").get<std::vector<int>>();
    proto.grading = j.value("grading", proto.grading);
    proto.window = j.value("window", proto.window);
    proto.solver.tol_fix = j.value("tol_fix", proto.solver.tol_fix);
    proto.solver.max_iter = j.value("max_iter", proto.solver.max_iter);
    proto.solver.damping = j.value("damping", proto.solver.damping);
    proto.slope_stabilized = j.value("slope_stabilized", proto.slope_stabilized);
    proto.slope_growing = j.value("slope_growing", proto.slope_growing);
    proto.cross_mesh_tol = j.value("cross_mesh_tol", proto.cross_mesh_tol);
    proto.energy_tol = j.value("energy_tol", proto.energy_tol);
    proto.interior_floor = j.value("interior_floor", proto.interior_floor);
    try {
        proto.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return proto;
}

inline RunConfig parse_run_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    detail::reject_unknown_keys(j, {"problem", "protocol", "output_dir"}, "top level");
    if (!j.contains("problem")) throw ConfigError("config: 'problem' missing");
    RunConfig cfg{parse_problem(j.at("problem")),
                  parse_protocol(j.contains("protocol") ? j.at("protocol") : nlohmann::json()),
                  j.value("output_dir", std::string("out"))};
    if (cfg.spec.source.kind == SourceKind::Manufactured &&
        (cfg.protocol.n_schedule.size() != 1 ||
         cfg.protocol.n_schedule.front() != cfg.spec.source.level))
        throw ConfigError("config: a manufactured source requires n_schedule == [level]");
    return cfg;
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: parse error: ") + e.what());
    }
    return j;
}

inline RunConfig load_run_config(const std::string& path) {
    return parse_run_config(load_json_file(path));
}

inline const std::set<std::string>& sweepable_fields() {
    static const std::set<std::string> fields = {"dimension", "p",        "gamma",
                                                 "m",         "amplitude", "a_exp"};
    return fields;
}

inline SweepConfig parse_sweep_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    detail::reject_unknown_keys(j, {"base", "sweep", "case_cap"}, "sweep top level");
    if (!j.contains("base") || !j.contains("sweep"))
        throw ConfigError("config: sweep needs 'base' and 'sweep'");
    SweepConfig cfg;
    cfg.base = j.at("base");
    parse_run_config(cfg.base);  // the base must itself be valid
    cfg.case_cap = j.value("case_cap", cfg.case_cap);
    const auto& sweep = j.at("sweep");
    if (!sweep.is_object() || sweep.empty())
        throw ConfigError("config: 'sweep' must be a non-empty object");
    size_t total = 1;
    for (auto it = sweep.begin(); it != sweep.end(); ++it) {
        if (!sweepable_fields().count(it.key()))
            throw ConfigError("config: field '" + it.key() + "' is not sweepable");
        const auto values = it.value().get<std::vector<double>>();
        if (values.empty())
            throw ConfigError("config: sweep list for '" + it.key() + "' is empty");
        cfg.sweep[it.key()] = values;
        total *= values.size();
        if (total > cfg.case_cap)
            throw ConfigError("config: sweep exceeds the case cap of " +
                              std::to_string(cfg.case_cap));
    }
    return cfg;
}

/// Materializes case i of the cross product as a patched run-config JSON.
inline nlohmann::json sweep_case_json(const SweepConfig& cfg, size_t index) {
    nlohmann::json j = cfg.base;
    // decode index against the odometer (last field fastest)
    std::vector<std::pair<std::string, double>> assignment;
    size_t rest = index;
    for (auto it = cfg.sweep.rbegin(); it != cfg.sweep.rend(); ++it) {
        const size_t k = rest % it->second.size();
        rest /= it->second.size();
        assignment.emplace_back(it->first, it->second[k]);
    }
    for (const auto& [field, value] : assignment) {
        if (field == "dimension")
            j["problem"]["dimension"] = static_cast<int>(value);
        else if (field == "p")
            j["problem"]["p"] = value;
        else if (field == "gamma")
            j["problem"]["gamma"] = value;
        else if (field == "m")
            j["problem"]["m"] = value;
        else if (field == "amplitude")
            j["problem"]["source"]["amplitude"] = value;
        else if (field == "a_exp")
            j["problem"]["source"]["a_exp"] = value;
    }
    return j;
}

inline size_t sweep_case_count(const SweepConfig& cfg) {
    size_t total = 1;
    for (const auto& [_, values] : cfg.sweep) total *= values.size();
    return total;
}

}  // namespace singell
