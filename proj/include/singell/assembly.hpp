#pragma once

#include <cmath>
#include <stdexcept>

#include "singell/mesh.hpp"
#include "singell/problem.hpp"
#include "singell/tridiagonal.hpp"

namespace singell {

/// Finite-volume discretization of the level-n problem with both
/// nonlinearities frozen at `frozen`:
///
///   -(1/r^{N-1}) ( r^{N-1} a(r) u' / (1+T_n(frozen))^p )' =
///        T_n(f-cell-average) / (frozen + 1/n)^gamma.
///
/// Flux coefficient per face: a(r_f) * omega r_f^{N-1} / (h (1+T_n(ubar))^p)
/// with ubar the arithmetic face average of frozen. The origin row carries
/// zero flux through r = 0 (symmetry); the last node is eliminated by the
/// Dirichlet condition u(1) = 0. The right-hand side uses the exact per-cell
/// source integrals.
inline TridiagonalSystem assemble_frozen_system(const RadialMesh& mesh, const ProblemSpec& spec,
                                                int n, const DiscreteField& frozen) {
    if (n < 1) throw std::invalid_argument("assemble: level must be >= 1");
    if (!frozen.mesh || !frozen.mesh->same_grid(mesh))
        throw std::invalid_argument("assemble: frozen field lives on a different mesh");
    for (double v : frozen.values)
        if (v < 0.0) throw std::invalid_argument("assemble: frozen field must be non-negative");

    const int M = mesh.cells();  // unknowns at nodes 0..M-1
    const auto source = cell_source_integrals(mesh, spec, n);
    const double shift = 1.0 / n;

    std::vector<double> flux(M);  // a * area / (h * (1+T_n(ubar))^p) per face
    for (int k = 0; k < M; ++k) {
        const double ubar = 0.5 * (frozen.values[k] + frozen.values[k + 1]);
        const double denom = std::pow(1.0 + truncate(ubar, n), spec.p);
        flux[k] = spec.coeff(mesh.faces[k]) * mesh.face_areas[k] / (mesh.spacings[k] * denom);
    }

    TridiagonalSystem sys;
    sys.sub.assign(M, 0.0);
    sys.diag.assign(M, 0.0);
    sys.super.assign(M, 0.0);
    sys.rhs.assign(M, 0.0);
    for (int i = 0; i < M; ++i) {
        double d = flux[i];  // right face; for i = M-1 this couples to u(1) = 0
        if (i > 0) {
            d += flux[i - 1];
            sys.sub[i] = -flux[i - 1];
        }
        if (i + 1 < M) sys.super[i] = -flux[i];
        sys.diag[i] = d;

        const double favg = source[i] / mesh.cell_volumes[i];
        sys.rhs[i] = mesh.cell_volumes[i] * std::min(favg, static_cast<double>(n)) /
                     std::pow(frozen.values[i] + shift, spec.gamma);
    }
    return sys;
}

}  // namespace singell
