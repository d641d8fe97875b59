#pragma once

#include <cmath>
#include <stdexcept>

#include "singell/mesh.hpp"

namespace singell {

/// Composite nodal rule: (sum_i |u_i|^s V_i)^{1/s} with exact r^{N-1} cell
/// weights.
inline double lp_norm(const DiscreteField& field, double s) {
    if (!(s >= 1.0)) throw std::invalid_argument("lp_norm: need s >= 1");
    const RadialMesh& mesh = *field.mesh;
    double acc = 0.0;
    for (int i = 0; i < mesh.node_count(); ++i)
        acc += std::pow(std::abs(field.values[i]), s) * mesh.cell_volumes[i];
    return std::pow(acc, 1.0 / s);
}

inline double linf_norm(const DiscreteField& field) {
    double m = 0.0;
    for (double v : field.values) m = std::max(m, std::abs(v));
    return m;
}

/// Face-based gradient seminorm over {r_f <= window}:
/// (sum_f |(u_{k+1}-u_k)/h_k|^s * omega r_f^{N-1} h_k)^{1/s}.
inline double grad_lp_seminorm(const DiscreteField& field, double s, double window) {
    if (!(s >= 1.0)) throw std::invalid_argument("grad_lp_seminorm: need s >= 1");
    if (!(window > 0.0)) throw std::invalid_argument("grad_lp_seminorm: window must be > 0");
    const RadialMesh& mesh = *field.mesh;
    double acc = 0.0;
    for (int k = 0; k < mesh.cells(); ++k) {
        if (mesh.faces[k] > window) break;  // faces are increasing
        const double slope = (field.values[k + 1] - field.values[k]) / mesh.spacings[k];
        acc += std::pow(std::abs(slope), s) * mesh.face_areas[k] * mesh.spacings[k];
    }
    return std::pow(acc, 1.0 / s);
}

/// Minimum nodal value over the centered window {r_i <= rho}; the discrete
/// stand-in for the interior lower bound c_omega.
inline double interior_min(const DiscreteField& field, double rho) {
    if (!(rho > 0.0) || !(rho < 1.0))
        throw std::invalid_argument("interior_min: rho must lie in (0,1)");
    const RadialMesh& mesh = *field.mesh;
    double m = field.values[0];
    for (int i = 0; i < mesh.node_count() && mesh.nodes[i] <= rho; ++i)
        m = std::min(m, field.values[i]);
    return m;
}

}  // namespace singell
