#pragma once

#include <cmath>

namespace singell {

inline constexpr double pi = 3.14159265358979323846264338328;

/// Surface measure of the unit sphere S^{N-1}: 2 pi^{N/2} / Gamma(N/2).
inline double unit_sphere_area(int dimension) {
    return 2.0 * std::pow(pi, 0.5 * dimension) / std::tgamma(0.5 * dimension);
}

/// Volume of the unit ball in R^N: pi^{N/2} / Gamma(N/2 + 1).
inline double unit_ball_volume(int dimension) {
    return std::pow(pi, 0.5 * dimension) / std::tgamma(0.5 * dimension + 1.0);
}

}  // namespace singell
