#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace singell {

/// Tridiagonal linear system. Assembly guarantees an M-matrix (non-positive
/// off-diagonals, weak diagonal dominance with one strictly dominant row), so
/// a non-negative right-hand side yields a non-negative solution.
struct TridiagonalSystem {
    std::vector<double> sub;    // size M, sub[0] unused
    std::vector<double> diag;   // size M
    std::vector<double> super;  // size M, super[M-1] unused
    std::vector<double> rhs;    // size M

    int size() const { return static_cast<int>(diag.size()); }
};

struct SingularSystemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thomas algorithm (forward elimination, back substitution).
inline std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys) {
    const int n = sys.size();
    std::vector<double> c(n), d(n);
    double pivot = sys.diag[0];
    if (std::abs(pivot) < 1e-300) throw SingularSystemError("tridiagonal: singular pivot");
    c[0] = (n > 1 ? sys.super[0] : 0.0) / pivot;
    d[0] = sys.rhs[0] / pivot;
    for (int i = 1; i < n; ++i) {
        pivot = sys.diag[i] - sys.sub[i] * c[i - 1];
        if (std::abs(pivot) < 1e-300) throw SingularSystemError("tridiagonal: singular pivot");
        c[i] = (i + 1 < n ? sys.super[i] : 0.0) / pivot;
        d[i] = (sys.rhs[i] - sys.sub[i] * d[i - 1]) / pivot;
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

}  // namespace singell
