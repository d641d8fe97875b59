#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "singell/experiment.hpp"

namespace singell {

/// Fixed float formatting for every emitted file: 17 significant digits,
/// '.' decimal separator (C locale), no locale dependence. Identical inputs
/// produce identical bytes.
inline std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string opt17(const std::optional<double>& v) {
    return v ? fmt17(*v) : std::string("null");
}

}  // namespace detail

inline const char* to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::Constant: return "constant";
        case ProfileKind::Linear: return "linear";
        case ProfileKind::Cosine: return "cosine";
    }
    return "?";
}

inline const char* to_string(SourceKind k) {
    switch (k) {
        case SourceKind::Constant: return "constant";
        case SourceKind::RadialPower: return "radial_power";
        case SourceKind::Manufactured: return "manufactured";
    }
    return "?";
}

/// Fixed column order:
/// n,cells,L2,Linf,Lmss,H1,LsigmaGrad,H1interior,PowerH1,IntF,InteriorMin,TruncActive,Iters
inline std::string trace_csv(const std::vector<NormTrace>& traces) {
    std::string out =
        "n,cells,L2,Linf,Lmss,H1,LsigmaGrad,H1interior,PowerH1,IntF,InteriorMin,TruncActive,"
        "Iters\n";
    for (const auto& trace : traces) {
        for (const auto& r : trace.rows) {
            out += std::to_string(r.level) + ',' + std::to_string(r.cells) + ',' + fmt17(r.l2) +
                   ',' + fmt17(r.linf) + ',' + fmt17(r.lmss) + ',' + fmt17(r.h1) + ',' +
                   fmt17(r.grad_lsigma) + ',' + fmt17(r.h1_interior) + ',' + fmt17(r.power_h1) +
                   ',' + fmt17(r.int_f) + ',' + fmt17(r.interior_min) + ',' +
                   (r.truncation_active ? "1" : "0") + ',' + std::to_string(r.iterations) + '\n';
        }
    }
    return out;
}

inline std::string report_json(const VerdictReport& report) {
    std::string s = "{\n";
    const ProblemSpec& spec = report.spec;
    s += "  \"problem\": {";
    s += "\"dimension\": " + std::to_string(spec.dimension);
    s += ", \"p\": " + fmt17(spec.p);
    s += ", \"gamma\": " + fmt17(spec.gamma);
    s += ", \"m\": " + (std::isfinite(spec.m) ? fmt17(spec.m) : std::string("\"inf\""));
    s += ", \"coeff\": {\"profile\": \"" + std::string(to_string(spec.coeff.kind)) +
         "\", \"alpha\": " + fmt17(spec.coeff.alpha) + ", \"beta\": " + fmt17(spec.coeff.beta) +
         "}";
    s += ", \"source\": {\"kind\": \"" + std::string(to_string(spec.source.kind)) + "\"";
    if (spec.source.kind == SourceKind::Manufactured)
        s += ", \"level\": " + std::to_string(spec.source.level);
    else
        s += ", \"amplitude\": " + fmt17(spec.source.amplitude) +
             (spec.source.kind == SourceKind::RadialPower
                  ? ", \"a_exp\": " + fmt17(spec.source.a_exp)
                  : "");
    s += "}},\n";

    const ExponentTable& t = report.table;
    s += "  \"exponents\": {";
    s += "\"two_star\": " + fmt17(t.two_star);
    s += ", \"one_star\": " + fmt17(t.one_star);
    s += ", \"m_double_star\": " + detail::opt17(t.m_double_star);
    s += ", \"sigma\": " + detail::opt17(t.sigma);
    s += ", \"m_hi\": " + fmt17(t.m_hi);
    s += ", \"m_lo\": " + fmt17(t.m_lo);
    s += ", \"delta\": " + detail::opt17(t.delta);
    s += ", \"theta\": " + detail::opt17(t.theta);
    s += "},\n";

    s += "  \"regime\": {\"case\": \"" + std::string(to_string(report.regime.case_id)) + "\"";
    s += ", \"bounded\": " + std::string(report.regime.bounded ? "true" : "false");
    s += ", \"claims\": [";
    for (size_t i = 0; i < report.regime.claims.size(); ++i) {
        const Claim& c = report.regime.claims[i];
        if (i) s += ", ";
        s += "{\"kind\": \"" + std::string(to_string(c.kind)) + "\"";
        if (c.kind == ClaimKind::W1Sigma || c.kind == ClaimKind::LmDoubleStarPower ||
            c.kind == ClaimKind::LocalH1PlusPowerH1)
            s += ", \"exponent\": " + fmt17(c.exponent);
        s += "}";
    }
    s += "]},\n";

    const Protocol& proto = report.protocol;
    s += "  \"protocol\": {\"n_schedule\": [";
    for (size_t i = 0; i < proto.n_schedule.size(); ++i)
        s += (i ? ", " : "") + std::to_string(proto.n_schedule[i]);
    s += "], \"meshes\": [";
    for (size_t i = 0; i < proto.meshes.size(); ++i)
        s += (i ? ", " : "") + std::to_string(proto.meshes[i]);
    s += "], \"grading\": " + fmt17(proto.grading);
    s += ", \"window\": " + fmt17(proto.window);
    s += ", \"tol_fix\": " + fmt17(proto.solver.tol_fix);
    s += ", \"max_iter\": " + std::to_string(proto.solver.max_iter);
    s += ", \"damping\": " + fmt17(proto.solver.damping);
    s += ", \"slope_stabilized\": " + fmt17(proto.slope_stabilized);
    s += ", \"slope_growing\": " + fmt17(proto.slope_growing);
    s += ", \"cross_mesh_tol\": " + fmt17(proto.cross_mesh_tol);
    s += ", \"energy_tol\": " + fmt17(proto.energy_tol);
    s += ", \"interior_floor\": " + fmt17(proto.interior_floor);
    s += "},\n";

    s += "  \"checks\": [\n";
    for (size_t i = 0; i < report.checks.size(); ++i) {
        const CheckResult& c = report.checks[i];
        s += "    {\"name\": \"" + detail::json_escape(c.name) + "\"";
        s += ", \"passed\": " + std::string(c.passed ? "true" : "false");
        s += ", \"mandatory\": " + std::string(c.mandatory ? "true" : "false");
        s += ", \"measured\": " + fmt17(c.measured);
        s += ", \"bound\": " + fmt17(c.bound);
        s += ", \"tolerance\": " + fmt17(c.tolerance);
        s += ", \"detail\": \"" + detail::json_escape(c.detail) + "\"}";
        s += (i + 1 < report.checks.size()) ? ",\n" : "\n";
    }
    s += "  ],\n";
    s += "  \"overall\": " + std::string(report.overall ? "true" : "false") + "\n";
    s += "}\n";
    return s;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace singell
