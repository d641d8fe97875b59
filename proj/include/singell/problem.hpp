#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "singell/constants.hpp"

namespace singell {

/// Level-n clamp of a real value to [-n, n]. Total, monotone, 1-Lipschitz.
inline double truncate(double s, int n) {
    if (n < 1) throw std::invalid_argument("truncate: level must be >= 1");
    const double level = static_cast<double>(n);
    return std::clamp(s, -level, level);
}

enum class ProfileKind { Constant, Linear, Cosine };

/// Radial diffusion profile a(r) with bounds 0 < alpha <= a(r) <= beta.
struct CoefficientSpec {
    ProfileKind kind = ProfileKind::Constant;
    double alpha = 1.0;
    double beta = 1.0;

    static CoefficientSpec constant(double value) {
        return validated({ProfileKind::Constant, value, value});
    }
    static CoefficientSpec linear(double alpha, double beta) {
        return validated({ProfileKind::Linear, alpha, beta});
    }
    static CoefficientSpec cosine(double alpha, double beta) {
        return validated({ProfileKind::Cosine, alpha, beta});
    }

    double operator()(double r) const {
        switch (kind) {
            case ProfileKind::Constant: return alpha;
            case ProfileKind::Linear: return alpha + (beta - alpha) * r;
            case ProfileKind::Cosine:
                return alpha + (beta - alpha) * 0.5 * (1.0 - std::cos(pi * r));
        }
        return alpha;
    }

    static CoefficientSpec validated(CoefficientSpec c) {
        if (!(c.alpha > 0.0)) throw std::invalid_argument("coefficient: alpha must be > 0");
        if (!(c.beta >= c.alpha)) throw std::invalid_argument("coefficient: beta must be >= alpha");
        // bound check by sampling; profiles are closed-form but the contract is on values
        const int samples = 1024;
        for (int i = 0; i <= samples; ++i) {
            const double r = static_cast<double>(i) / samples;
            const double v = c(r);
            if (!(v >= c.alpha * (1.0 - 1e-12)) || !(v <= c.beta * (1.0 + 1e-12)))
                throw std::invalid_argument("coefficient: profile leaves [alpha, beta]");
        }
        return c;
    }
};

enum class SourceKind { Constant, RadialPower, Manufactured };

/// Non-negative radial source f. RadialPower is amplitude * r^{-a_exp};
/// Manufactured is the level-dependent source of the smooth reference case.
struct SourceSpec {
    SourceKind kind = SourceKind::Constant;
    double amplitude = 1.0;
    double a_exp = 0.0;
    int level = 0;  // Manufactured only: the truncation level the source is built for

    static SourceSpec constant(double c) {
        if (!(c >= 0.0)) throw std::invalid_argument("source: constant must be >= 0");
        return {SourceKind::Constant, c, 0.0, 0};
    }
    static SourceSpec radial_power(double amplitude, double a_exp) {
        if (!(amplitude >= 0.0)) throw std::invalid_argument("source: amplitude must be >= 0");
        if (!(a_exp >= 0.0)) throw std::invalid_argument("source: a_exp must be >= 0");
        return {SourceKind::RadialPower, amplitude, a_exp, 0};
    }
    static SourceSpec manufactured(int level) {
        if (level < 1) throw std::invalid_argument("source: manufactured level must be >= 1");
        return {SourceKind::Manufactured, 1.0, 0.0, level};
    }
};

/// The continuous Dirichlet problem on the unit ball:
///   -div(a(r) grad u / (1+|u|)^p) = f / u^gamma,  u = 0 on r = 1.
struct ProblemSpec {
    int dimension;
    double p;
    double gamma;
    CoefficientSpec coeff;
    SourceSpec source;
    double m;             // claimed Lebesgue summability of f
    double radius = 1.0;  // fixed: the domain is the unit ball

    ProblemSpec(int dimension_, double p_, double gamma_, CoefficientSpec coeff_,
                SourceSpec source_, double m_)
        : dimension(dimension_), p(p_), gamma(gamma_), coeff(coeff_), source(source_), m(m_) {
        if (dimension < 3) throw std::invalid_argument("problem: dimension must be >= 3");
        if (!(p >= 0.0)) throw std::invalid_argument("problem: p must be >= 0");
        if (!(gamma > 0.0)) throw std::invalid_argument("problem: gamma must be > 0");
        if (!(m >= 1.0)) throw std::invalid_argument("problem: m must be >= 1");
        if (source.kind == SourceKind::RadialPower && source.a_exp > 0.0) {
            if (!std::isfinite(m))
                throw std::invalid_argument("problem: power source is unbounded, m must be finite");
            // f = r^{-a} lies in L^m(B_1) iff a*m < N
            if (!(source.a_exp * m < static_cast<double>(dimension)))
                throw std::invalid_argument("problem: r^{-a_exp} is not in L^m (need a_exp*m < N)");
        }
    }
};

}  // namespace singell
