#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "singell/assembly.hpp"

using namespace singell;

namespace {
ProblemSpec make_spec(int N, double p, double gamma, SourceSpec source, double m = 10.0) {
    return ProblemSpec(N, p, gamma, CoefficientSpec::constant(1.0), source, m);
}
}  // namespace

TEST_CASE("assembly against a hand-built finite-volume stencil (N=3, a=1, p=0)") {
    auto mesh = build_radial_mesh(3, 8, 1.0);
    const auto frozen = DiscreteField::zeros(mesh);
    const auto sys = assemble_frozen_system(*mesh, make_spec(3, 0.0, 1.0, SourceSpec::constant(2.0)), 1, frozen);
    REQUIRE(sys.size() == 8);

    // flux coefficient through face k: 4 pi r_f^2 / h, r_f = (2k+1)/16, h = 1/8
    const double fourpi = 4.0 * pi;
    auto coef = [&](int k) {
        const double rf = (2.0 * k + 1.0) / 16.0;
        return fourpi * rf * rf * 8.0;
    };
    for (int i = 0; i < 8; ++i) {
        const double expected_diag = (i > 0 ? coef(i - 1) : 0.0) + coef(i);
        CHECK(sys.diag[i] == Catch::Approx(expected_diag).epsilon(1e-13));
        if (i > 0) CHECK(sys.sub[i] == Catch::Approx(-coef(i - 1)).epsilon(1e-13));
        if (i < 7) CHECK(sys.super[i] == Catch::Approx(-coef(i)).epsilon(1e-13));
    }
    // last row couples to the eliminated boundary node: strictly dominant
    CHECK(sys.diag[7] + sys.sub[7] == Catch::Approx(coef(7)).epsilon(1e-12));

    // rhs at frozen = 0, n = 1: T_1(f) * V_i / (0 + 1)^gamma = min(2,1) * V_i
    for (int i = 0; i < 8; ++i)
        CHECK(sys.rhs[i] == Catch::Approx(mesh->cell_volumes[i]).epsilon(1e-13));
}

TEST_CASE("frozen = 0 makes the operator independent of p") {
    auto mesh = build_radial_mesh(3, 32, 1.0);
    const auto frozen = DiscreteField::zeros(mesh);
    const auto base = assemble_frozen_system(*mesh, make_spec(3, 0.0, 1.5, SourceSpec::constant(1.0)), 2, frozen);
    for (double p : {0.5, 1.0, 2.3}) {
        const auto sys = assemble_frozen_system(*mesh, make_spec(3, p, 1.5, SourceSpec::constant(1.0)), 2, frozen);
        CHECK(sys.diag == base.diag);
        CHECK(sys.sub == base.sub);
        CHECK(sys.super == base.super);
    }
}

TEST_CASE("inactive truncation assembles bit-identically to the identity formulas") {
    auto mesh = build_radial_mesh(3, 16, 1.2);
    const auto spec = make_spec(3, 0.8, 1.3, SourceSpec::constant(3.0));
    auto frozen = DiscreteField::sample(mesh, [](double r) { return 2.0 * (1.0 - r * r); });
    const int n = 5;  // max frozen = 2 < 5 and f = 3 < 5: T_n is the identity

    const auto sys = assemble_frozen_system(*mesh, spec, n, frozen);
    const auto source = cell_source_integrals(*mesh, spec, n);
    const int M = mesh->cells();
    std::vector<double> flux(M);
    for (int k = 0; k < M; ++k) {
        const double ubar = 0.5 * (frozen.values[k] + frozen.values[k + 1]);
        flux[k] = spec.coeff(mesh->faces[k]) * mesh->face_areas[k] /
                  (mesh->spacings[k] * std::pow(1.0 + ubar, spec.p));
    }
    for (int i = 0; i < M; ++i) {
        const double diag = (i > 0 ? flux[i - 1] : 0.0) + flux[i];
        CHECK(sys.diag[i] == diag);
        if (i > 0) CHECK(sys.sub[i] == -flux[i - 1]);
        if (i + 1 < M) CHECK(sys.super[i] == -flux[i]);
        const double rhs = mesh->cell_volumes[i] * (source[i] / mesh->cell_volumes[i]) /
                           std::pow(frozen.values[i] + 1.0 / n, spec.gamma);
        CHECK(sys.rhs[i] == rhs);
    }
}

TEST_CASE("assembly rejects invalid input") {
    auto mesh = build_radial_mesh(3, 16, 1.0);
    const auto spec = make_spec(3, 1.0, 1.0, SourceSpec::constant(1.0));
    auto frozen = DiscreteField::zeros(mesh);
    frozen.values[4] = -0.1;
    CHECK_THROWS_AS(assemble_frozen_system(*mesh, spec, 1, frozen), std::invalid_argument);
    CHECK_THROWS_AS(assemble_frozen_system(*mesh, spec, 0, DiscreteField::zeros(mesh)),
                    std::invalid_argument);
    auto other = build_radial_mesh(3, 24, 1.0);
    CHECK_THROWS_AS(assemble_frozen_system(*other, spec, 1, DiscreteField::zeros(mesh)),
                    std::invalid_argument);
}

TEST_CASE("assembled rows are weakly diagonally dominant M-matrix rows") {
    auto mesh = build_radial_mesh(4, 48, 0.8);
    const auto spec = make_spec(4, 1.4, 2.2, SourceSpec::radial_power(1.0, 2.0), 1.8);
    auto frozen = DiscreteField::sample(mesh, [](double r) { return 3.0 * (1.0 - r); });
    const auto sys = assemble_frozen_system(*mesh, spec, 3, frozen);
    for (int i = 0; i < sys.size(); ++i) {
        CHECK(sys.sub[i] <= 0.0);
        CHECK(sys.super[i] <= 0.0);
        CHECK(sys.diag[i] + sys.sub[i] + sys.super[i] >= -1e-12 * sys.diag[i]);
        CHECK(sys.rhs[i] >= 0.0);
    }
    // boundary row strictly dominant (Dirichlet elimination)
    const int last = sys.size() - 1;
    CHECK(sys.diag[last] + sys.sub[last] > 0.0);
}
