#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "singell/problem.hpp"

namespace singell {

/// Derived Sobolev/Lebesgue exponents and regime thresholds for data
/// (N, p, gamma, m). Fields whose defining formula degenerates (vanishing
/// denominator, non-positive value, infinite m) are left unset instead of
/// being returned as signed infinities.
struct ExponentTable {
    double two_star = 0.0;  // 2N/(N-2)
    double one_star = 0.0;  // N/(N-1)
    std::optional<double> m_double_star;  // Nm/(N-2m), only for m < N/2
    std::optional<double> sigma;          // Nm(gamma+1-p)/(N-m(p+1-gamma))
    double m_hi = 0.0;  // 2*/(2*-p-1+gamma)
    double m_lo = 0.0;  // max{1, 1*/(2*1*-p-1+gamma)}
    std::optional<double> delta;  // ((1-p)N(m-1)+gamma*m(N-2))/(N-2m)
    std::optional<double> theta;  // ((p-1)N(m-1)-gamma*m(N-2))/(2m-N), same rational function
};

inline ExponentTable exponent_table(int dimension, double p, double gamma, double m) {
    if (dimension < 3) throw std::invalid_argument("exponent_table: dimension must be >= 3");
    if (!(p >= 0.0) || !(gamma > 0.0) || !(m >= 1.0))
        throw std::invalid_argument("exponent_table: need p >= 0, gamma > 0, m >= 1");
    const double N = static_cast<double>(dimension);
    ExponentTable t;
    t.two_star = 2.0 * N / (N - 2.0);
    t.one_star = N / (N - 1.0);
    t.m_hi = t.two_star / (t.two_star - p - 1.0 + gamma);
    t.m_lo = std::max(1.0, t.one_star / (2.0 * t.one_star - p - 1.0 + gamma));
    if (std::isfinite(m)) {
        if (m < 0.5 * N) t.m_double_star = N * m / (N - 2.0 * m);
        const double sigma_den = N - m * (p + 1.0 - gamma);
        if (sigma_den > 0.0) {
            const double s = N * m * (gamma + 1.0 - p) / sigma_den;
            if (s > 0.0) t.sigma = s;
        }
        if (m != 0.5 * N) {
            const double d = ((1.0 - p) * N * (m - 1.0) + gamma * m * (N - 2.0)) / (N - 2.0 * m);
            t.delta = d;
            t.theta = d;  // ((p-1)N(m-1)-gamma m(N-2))/(2m-N) is the same rational function
        }
    }
    return t;
}

enum class RegimeCase { Case1a, Case1b, Case2, Case3, OutOfTheorem };

enum class ClaimKind {
    GlobalH1,            // u in H^1_0
    LmDoubleStarPower,   // u in L^{m**(gamma+1-p)}
    W1Sigma,             // u in W^{1,sigma}_0
    LocalH1PlusPowerH1,  // u in H^1_loc and u^{(gamma+1-p)/2} in H^1_0
    LInfinity,           // u bounded
};

struct Claim {
    ClaimKind kind;
    double exponent = 0.0;  // sigma, m**(gamma+1-p) or (gamma+1-p)/2 where applicable
};

struct RegimePrediction {
    RegimeCase case_id = RegimeCase::OutOfTheorem;
    bool bounded = false;
    std::vector<Claim> claims;

    bool has(ClaimKind k) const {
        for (const auto& c : claims)
            if (c.kind == k) return true;
        return false;
    }
};

/// Dispatch over the theorem's cases. Equality gamma = p+1 is decided with
/// absolute tolerance 1e-12 so regime dispatch is deterministic in floating
/// point; other range bounds follow the theorem's strict/non-strict placement.
inline RegimePrediction classify_regime(const ProblemSpec& spec) {
    const auto t = exponent_table(spec.dimension, spec.p, spec.gamma, spec.m);
    const double N = static_cast<double>(spec.dimension);
    RegimePrediction out;
    out.bounded = spec.m > 0.5 * N;

    const double gp = spec.gamma - (spec.p + 1.0);
    if (std::abs(gp) <= 1e-12) {
        out.case_id = RegimeCase::Case2;
        out.claims.push_back({ClaimKind::GlobalH1});
    } else if (gp > 0.0) {
        out.case_id = RegimeCase::Case3;
        out.claims.push_back({ClaimKind::LocalH1PlusPowerH1, 0.5 * (spec.gamma + 1.0 - spec.p)});
    } else if (spec.gamma >= spec.p - 1.0) {
        if (spec.m >= t.m_hi) {
            out.case_id = RegimeCase::Case1a;
            out.claims.push_back({ClaimKind::GlobalH1});
            if (spec.m < 0.5 * N && t.m_double_star)
                out.claims.push_back(
                    {ClaimKind::LmDoubleStarPower, *t.m_double_star * (spec.gamma + 1.0 - spec.p)});
        } else if (spec.m > t.m_lo) {
            out.case_id = RegimeCase::Case1b;
            out.claims.push_back({ClaimKind::W1Sigma, t.sigma.value()});
        } else {
            out.case_id = RegimeCase::OutOfTheorem;  // m too small for the theorem
            return out;                              // no predicted claims
        }
    } else {
        out.case_id = RegimeCase::OutOfTheorem;  // gamma < p-1 is not covered
        return out;
    }
    if (out.bounded) out.claims.push_back({ClaimKind::LInfinity});
    return out;
}

inline const char* to_string(RegimeCase c) {
    switch (c) {
        case RegimeCase::Case1a: return "Case1a";
        case RegimeCase::Case1b: return "Case1b";
        case RegimeCase::Case2: return "Case2";
        case RegimeCase::Case3: return "Case3";
        case RegimeCase::OutOfTheorem: return "OutOfTheorem";
    }
    return "?";
}

inline const char* to_string(ClaimKind k) {
    switch (k) {
        case ClaimKind::GlobalH1: return "GlobalH1";
        case ClaimKind::LmDoubleStarPower: return "LmDoubleStarPower";
        case ClaimKind::W1Sigma: return "W1Sigma";
        case ClaimKind::LocalH1PlusPowerH1: return "LocalH1PlusPowerH1";
        case ClaimKind::LInfinity: return "LInfinity";
    }
    return "?";
}

}  // namespace singell
