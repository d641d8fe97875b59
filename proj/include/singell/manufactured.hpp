#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

namespace singell {

/// Smooth reference case with exact solution u*(r) = 1 - r^2 and unit
/// coefficient. The radial flux is g(r) = -2r (2-r^2)^{-p}, so applying the
/// operator gives
///   L(u*)(r) = 2 (2-r^2)^{-p} [ N + 2p r^2 / (2-r^2) ],
/// and the level-n source f_n = (u* + 1/n)^gamma * L(u*) makes u* the exact
/// solution of the level-n problem as long as neither u* nor f_n is clipped.
struct ManufacturedCase {
    int dimension;
    double p;
    double gamma;
    int level;

    double exact(double r) const { return 1.0 - r * r; }

    double operator_value(double r) const {
        const double w = 2.0 - r * r;
        return 2.0 * std::pow(w, -p) * (dimension + 2.0 * p * r * r / w);
    }

    double source(double r) const {
        return std::pow(exact(r) + 1.0 / level, gamma) * operator_value(r);
    }

    /// sup of f_n over [0,1] by dense sampling; f_n is smooth on [0,1].
    double source_sup() const {
        const int samples = 4096;
        double sup = 0.0;
        for (int i = 0; i <= samples; ++i)
            sup = std::max(sup, source(static_cast<double>(i) / samples));
        return sup;
    }
};

/// Builds the reference case for level n; rejects levels at which the
/// truncation would clip the manufactured source (that would corrupt the
/// exactness of u*).
inline ManufacturedCase manufactured_case(int dimension, double p, double gamma, int n) {
    if (dimension < 3) throw std::invalid_argument("manufactured_case: dimension must be >= 3");
    if (!(p >= 0.0) || !(gamma > 0.0))
        throw std::invalid_argument("manufactured_case: need p >= 0 and gamma > 0");
    if (n < 1) throw std::invalid_argument("manufactured_case: level must be >= 1");
    ManufacturedCase c{dimension, p, gamma, n};
    if (!(c.source_sup() < static_cast<double>(n)))
        throw std::invalid_argument("manufactured_case: level is below sup f_n, T_n would clip");
    return c;
}

/// Observed order of accuracy from errors at h, h/2, h/4. Returns the order
/// of the finest pair; nullopt if the triple is not strictly decreasing.
struct OrderEstimate {
    double coarse_pair;  // log2(e_h / e_{h/2})
    double fine_pair;    // log2(e_{h/2} / e_{h/4}); the observed order
};

inline std::optional<OrderEstimate> convergence_order(double e0, double e1, double e2) {
    if (!(e0 > 0.0) || !(e1 > 0.0) || !(e2 > 0.0))
        throw std::invalid_argument("convergence_order: errors must be positive");
    if (!(e0 > e1) || !(e1 > e2)) return std::nullopt;
    return OrderEstimate{std::log2(e0 / e1), std::log2(e1 / e2)};
}

}  // namespace singell
