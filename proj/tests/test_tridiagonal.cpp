#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "singell/tridiagonal.hpp"

using namespace singell;

namespace {

// independent oracle: dense Gaussian elimination with partial pivoting
std::vector<double> dense_solve(std::vector<std::vector<double>> A, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < n; ++r) {
            const double f = A[r][col] / A[col][col];
            for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= A[r][c] * x[c];
        x[r] = s / A[r][r];
    }
    return x;
}

TridiagonalSystem random_m_matrix(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> off(0.1, 3.0), slackd(0.0, 1.0), rhsd(0.0, 5.0);
    TridiagonalSystem sys;
    sys.sub.assign(n, 0.0);
    sys.super.assign(n, 0.0);
    sys.diag.assign(n, 0.0);
    sys.rhs.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double lo = i > 0 ? off(rng) : 0.0;
        const double hi = i + 1 < n ? off(rng) : 0.0;
        sys.sub[i] = -lo;
        sys.super[i] = -hi;
        sys.diag[i] = lo + hi + (i == n - 1 ? 1.0 + slackd(rng) : slackd(rng) * 0.1);
        sys.rhs[i] = rhsd(rng);
    }
    return sys;
}

}  // namespace

TEST_CASE("tridiagonal solve: direct examples") {
    SECTION("identity diagonal returns the right-hand side") {
        TridiagonalSystem sys;
        sys.sub = {0, 0, 0, 0};
        sys.diag = {1, 1, 1, 1};
        sys.super = {0, 0, 0, 0};
        sys.rhs = {2.5, -1.0, 0.0, 7.0};
        const auto x = solve_tridiagonal(sys);
        for (int i = 0; i < 4; ++i) CHECK(x[i] == Catch::Approx(sys.rhs[i]).margin(1e-15));
    }
    SECTION("3x3 {diag 2, off -1} with rhs (1,1,1) gives (1.5, 2, 1.5)") {
        TridiagonalSystem sys;
        sys.sub = {0, -1, -1};
        sys.diag = {2, 2, 2};
        sys.super = {-1, -1, 0};
        sys.rhs = {1, 1, 1};
        const auto x = solve_tridiagonal(sys);
        CHECK(x[0] == Catch::Approx(1.5).margin(1e-14));
        CHECK(x[1] == Catch::Approx(2.0).margin(1e-14));
        CHECK(x[2] == Catch::Approx(1.5).margin(1e-14));
    }
    SECTION("zero right-hand side yields the zero solution") {
        std::mt19937_64 rng(11);
        auto sys = random_m_matrix(rng, 12);
        sys.rhs.assign(12, 0.0);
        for (double v : solve_tridiagonal(sys)) CHECK(v == 0.0);
    }
    SECTION("singular pivot is signalled") {
        TridiagonalSystem sys;
        sys.sub = {0, 0};
        sys.diag = {0, 1};
        sys.super = {0, 0};
        sys.rhs = {1, 1};
        CHECK_THROWS_AS(solve_tridiagonal(sys), SingularSystemError);
    }
}

TEST_CASE("M-matrix systems: non-negative solutions, agreement with dense elimination") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> size(2, 40);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = size(rng);
        const auto sys = random_m_matrix(rng, n);
        const auto x = solve_tridiagonal(sys);

        // discrete maximum principle: rhs >= 0 implies solution >= 0
        for (double v : x) CHECK(v >= -1e-13);

        std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) {
            A[i][i] = sys.diag[i];
            if (i > 0) A[i][i - 1] = sys.sub[i];
            if (i + 1 < n) A[i][i + 1] = sys.super[i];
        }
        const auto ref = dense_solve(A, sys.rhs);
        for (int i = 0; i < n; ++i) CHECK(x[i] == Catch::Approx(ref[i]).margin(1e-10));
    }
}
