#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "singell/constants.hpp"
#include "singell/manufactured.hpp"
#include "singell/problem.hpp"

namespace singell {

/// Graded radial grid on the unit ball in R^N.
///
/// Nodes 0 = r_0 < ... < r_M = 1. Face k sits at the midpoint between nodes
/// k and k+1. The control volume of node i runs between the adjacent faces
/// (clipped to [0,1] at the ends), so the M+1 cell volumes tile the ball
/// exactly; volumes carry the full r^{N-1} weight in closed form.
struct RadialMesh {
    int dimension = 3;
    std::vector<double> nodes;         // size M+1
    std::vector<double> faces;         // size M, faces[k] between nodes k,k+1
    std::vector<double> spacings;      // size M, nodes[k+1]-nodes[k]
    std::vector<double> face_areas;    // size M, omega_{N-1} * r_f^{N-1}
    std::vector<double> cell_volumes;  // size M+1, node-centered control volumes

    int cells() const { return static_cast<int>(faces.size()); }
    int node_count() const { return static_cast<int>(nodes.size()); }

    double cell_lo(int i) const { return i == 0 ? 0.0 : faces[i - 1]; }
    double cell_hi(int i) const { return i == cells() ? 1.0 : faces[i]; }

    double total_volume() const {
        double v = 0.0;
        for (double c : cell_volumes) v += c;
        return v;
    }

    bool same_grid(const RadialMesh& other) const {
        return dimension == other.dimension && nodes == other.nodes;
    }
};

using MeshPtr = std::shared_ptr<const RadialMesh>;

/// Nodes r_i = (i/M)^grading; grading > 1 refines near the origin,
/// grading < 1 near the boundary.
inline MeshPtr build_radial_mesh(int dimension, int cells, double grading) {
    if (dimension < 3) throw std::invalid_argument("mesh: dimension must be >= 3");
    if (cells < 8) throw std::invalid_argument("mesh: need at least 8 cells");
    if (!(grading > 0.0)) throw std::invalid_argument("mesh: grading must be > 0");

    auto mesh = std::make_shared<RadialMesh>();
    mesh->dimension = dimension;
    const int M = cells;
    mesh->nodes.resize(M + 1);
    for (int i = 0; i <= M; ++i)
        mesh->nodes[i] = std::pow(static_cast<double>(i) / M, grading);
    mesh->nodes.front() = 0.0;
    mesh->nodes.back() = 1.0;

    const double omega = unit_sphere_area(dimension);
    mesh->faces.resize(M);
    mesh->spacings.resize(M);
    mesh->face_areas.resize(M);
    for (int k = 0; k < M; ++k) {
        mesh->faces[k] = 0.5 * (mesh->nodes[k] + mesh->nodes[k + 1]);
        mesh->spacings[k] = mesh->nodes[k + 1] - mesh->nodes[k];
        if (!(mesh->spacings[k] > 0.0)) throw std::invalid_argument("mesh: nodes not increasing");
        mesh->face_areas[k] = omega * std::pow(mesh->faces[k], dimension - 1);
    }
    mesh->cell_volumes.resize(M + 1);
    for (int i = 0; i <= M; ++i) {
        const double lo = mesh->cell_lo(i), hi = mesh->cell_hi(i);
        mesh->cell_volumes[i] =
            omega * (std::pow(hi, dimension) - std::pow(lo, dimension)) / dimension;
    }
    return mesh;
}

/// Nodal values on a mesh; the last node carries the Dirichlet datum.
struct DiscreteField {
    MeshPtr mesh;
    std::vector<double> values;

    DiscreteField() = default;
    DiscreteField(MeshPtr m, std::vector<double> v) : mesh(std::move(m)), values(std::move(v)) {
        if (!mesh || static_cast<int>(values.size()) != mesh->node_count())
            throw std::invalid_argument("field: value count must match node count");
        for (double x : values)
            if (!std::isfinite(x)) throw std::invalid_argument("field: values must be finite");
    }

    static DiscreteField zeros(MeshPtr m) {
        std::vector<double> v(m->node_count(), 0.0);
        return DiscreteField(std::move(m), std::move(v));
    }

    /// Samples a closed-form radial function at the nodes.
    template <class F>
    static DiscreteField sample(MeshPtr m, F&& f) {
        std::vector<double> v(m->node_count());
        for (int i = 0; i < m->node_count(); ++i) v[i] = f(m->nodes[i]);
        return DiscreteField(std::move(m), std::move(v));
    }
};

/// Exact per-cell integrals of amplitude * r^{-a_exp} against the r^{N-1}
/// measure. Closed form everywhere including the origin cell, so the L^m
/// class of the source survives discretization.
inline std::vector<double> integrate_power_source(const RadialMesh& mesh, double amplitude,
                                                  double a_exp) {
    const double N = static_cast<double>(mesh.dimension);
    if (!(a_exp < N)) throw std::invalid_argument("source: a_exp must be < N for f in L^1");
    const double omega = unit_sphere_area(mesh.dimension);
    const double q = N - a_exp;  // > 0
    std::vector<double> out(mesh.cell_volumes.size());
    for (int i = 0; i < static_cast<int>(out.size()); ++i) {
        const double lo = mesh.cell_lo(i), hi = mesh.cell_hi(i);
        out[i] = amplitude * omega * (std::pow(hi, q) - std::pow(lo, q)) / q;
    }
    return out;
}

namespace detail {
// 5-point Gauss-Legendre on [-1,1]
inline constexpr double gl_x[5] = {-0.90617984593866399280, -0.53846931010568309104, 0.0,
                                   0.53846931010568309104, 0.90617984593866399280};
inline constexpr double gl_w[5] = {0.23692688505618908751, 0.47862867049936646804,
                                   0.56888888888888888889, 0.47862867049936646804,
                                   0.23692688505618908751};
}  // namespace detail

/// Per-cell integrals of the problem's source against the r^{N-1} measure at
/// truncation level n. Constant and power sources are exact; the smooth
/// manufactured source uses per-cell Gauss quadrature (well beyond scheme
/// order).
inline std::vector<double> cell_source_integrals(const RadialMesh& mesh, const ProblemSpec& spec,
                                                 int level) {
    switch (spec.source.kind) {
        case SourceKind::Constant:
            return integrate_power_source(mesh, spec.source.amplitude, 0.0);
        case SourceKind::RadialPower:
            return integrate_power_source(mesh, spec.source.amplitude, spec.source.a_exp);
        case SourceKind::Manufactured: {
            ManufacturedCase mc{mesh.dimension, spec.p, spec.gamma,
                                spec.source.level > 0 ? spec.source.level : level};
            const double omega = unit_sphere_area(mesh.dimension);
            std::vector<double> out(mesh.cell_volumes.size(), 0.0);
            for (int i = 0; i < static_cast<int>(out.size()); ++i) {
                const double lo = mesh.cell_lo(i), hi = mesh.cell_hi(i);
                const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
                double acc = 0.0;
                for (int g = 0; g < 5; ++g) {
                    const double r = mid + half * detail::gl_x[g];
                    acc += detail::gl_w[g] * mc.source(r) *
                           std::pow(r, mesh.dimension - 1);
                }
                out[i] = omega * half * acc;
            }
            return out;
        }
    }
    throw std::logic_error("unreachable source kind");
}

/// Integral of |f| over the ball (untruncated source).
inline double source_total_integral(const RadialMesh& mesh, const ProblemSpec& spec, int level) {
    double total = 0.0;
    for (double s : cell_source_integrals(mesh, spec, level)) total += s;
    return total;
}

}  // namespace singell
