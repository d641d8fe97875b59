#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "singell/checks.hpp"
#include "singell/experiment.hpp"
#include "singell/manufactured.hpp"

using namespace singell;

namespace {
ProblemSpec make_spec(int N, double p, double gamma, SourceSpec source, double m = 10.0) {
    return ProblemSpec(N, p, gamma, CoefficientSpec::constant(1.0), source, m);
}
}  // namespace

TEST_CASE("manufactured case: closed-form operator values") {
    const auto mc = manufactured_case(3, 1.0, 2.0, 1000);
    CHECK(mc.operator_value(0.0) == Catch::Approx(3.0).epsilon(1e-14));
    CHECK(mc.operator_value(1.0) == Catch::Approx(10.0).epsilon(1e-14));
    CHECK(mc.operator_value(0.5) == Catch::Approx(184.0 / 49.0).epsilon(1e-14));
    // u*(1) = 0, so f_n(1) = (1/n)^gamma * 10
    CHECK(mc.source(1.0) == Catch::Approx(1e-6 * 10.0).epsilon(1e-12));

    // p = 0 collapses to the constant Laplacian value 2N
    const auto flat = manufactured_case(4, 0.0, 1.0, 50);
    for (double r : {0.0, 0.3, 0.7, 1.0})
        CHECK(flat.operator_value(r) == Catch::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("manufactured operator matches a finite-difference derivative of the flux") {
    // independent oracle: L(u*) = -(1/r^{N-1}) d/dr [ r^{N-1} g(r) ],
    // g = -2r (2-r^2)^{-p}, by central differences
    for (double p : {0.5, 1.0, 2.0}) {
        const ManufacturedCase mc{3, p, 1.0, 100000};
        auto flux = [&](double r) { return -2.0 * r * std::pow(2.0 - r * r, -p); };
        const double h = 1e-6;
        for (double r : {0.2, 0.5, 0.8}) {
            const double d = (std::pow(r + h, 2.0) * flux(r + h) -
                              std::pow(r - h, 2.0) * flux(r - h)) /
                             (2.0 * h);
            CHECK(mc.operator_value(r) == Catch::Approx(-d / (r * r)).epsilon(1e-8));
        }
    }
}

TEST_CASE("manufactured case rejects levels that the truncation would clip") {
    // sup f_1 = 12 for N=3, p=1, gamma=2
    CHECK_THROWS_AS(manufactured_case(3, 1.0, 2.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(manufactured_case(3, 1.0, 2.0, 12), std::invalid_argument);
    CHECK_NOTHROW(manufactured_case(3, 1.0, 2.0, 13));
}

TEST_CASE("convergence_order on canonical triples") {
    const auto quad = convergence_order(4e-2, 1e-2, 2.5e-3);
    REQUIRE(quad.has_value());
    CHECK(quad->fine_pair == Catch::Approx(2.0).epsilon(1e-14));
    const auto lin = convergence_order(1e-2, 5e-3, 2.5e-3);
    REQUIRE(lin.has_value());
    CHECK(lin->fine_pair == Catch::Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(convergence_order(1e-3, 1e-3, 1e-3).has_value());
    CHECK_THROWS_AS(convergence_order(0.0, 1e-3, 1e-4), std::invalid_argument);
}

TEST_CASE("energy inequality check (gamma > p+1)") {
    const auto spec = make_spec(3, 0.5, 2.0, SourceSpec::radial_power(1.0, 2.5), 1.15);
    auto mesh = build_radial_mesh(3, 64, 1.0);
    const auto chain = continuation_sequence(mesh, spec, {1, 2, 4, 8}, SolverOptions{});

    SECTION("holds on a converged run") {
        const auto r = check_energy_inequality(mesh, spec, chain.outcomes.back());
        CHECK(r.passed);
        CHECK(r.measured <= 1.05 * r.bound);
    }
    SECTION("negative control: a field scaled by 10 violates the bound") {
        SolveOutcome scaled = chain.outcomes.back();
        for (double& v : scaled.field.values) v *= 10.0;
        const auto r = check_energy_inequality(mesh, spec, scaled);
        CHECK_FALSE(r.passed);
    }
    SECTION("zero source passes trivially") {
        const auto zspec = make_spec(3, 0.5, 2.0, SourceSpec::constant(0.0));
        const auto out =
            picard_solve(mesh, zspec, 4, DiscreteField::zeros(mesh), SolverOptions{});
        const auto r = check_energy_inequality(mesh, zspec, out);
        CHECK(r.passed);
        CHECK(r.measured == 0.0);
    }
    SECTION("wrong regime is rejected") {
        const auto bad = make_spec(3, 1.0, 2.0, SourceSpec::constant(1.0), 1.0);
        CHECK_THROWS_AS(
            check_energy_inequality(mesh, bad, chain.outcomes.back()),
            std::invalid_argument);
    }
}

TEST_CASE("monotonicity check") {
    auto mesh = build_radial_mesh(3, 64, 1.0);
    const auto spec = make_spec(3, 1.0, 2.0, SourceSpec::constant(1.0), 1.0);
    auto chain = continuation_sequence(mesh, spec, {1, 2, 4, 8}, SolverOptions{});

    SECTION("passes on a continuation run") {
        CHECK(check_monotonicity(chain.outcomes).passed);
    }
    SECTION("two zero fields pass") {
        const auto zspec = make_spec(3, 1.0, 2.0, SourceSpec::constant(0.0));
        const auto z = continuation_sequence(mesh, zspec, {1, 2}, SolverOptions{});
        CHECK(check_monotonicity(z.outcomes).passed);
    }
    SECTION("negative control: reversed order fails") {
        std::vector<SolveOutcome> reversed(chain.outcomes.rbegin(), chain.outcomes.rend());
        for (size_t i = 0; i < reversed.size(); ++i) reversed[i].level = 1 << i;
        CHECK_FALSE(check_monotonicity(reversed).passed);
    }
    SECTION("mesh mismatch is an error") {
        auto other = build_radial_mesh(3, 32, 1.0);
        auto alt = chain.outcomes;
        alt[1] = picard_solve(other, spec, 2, DiscreteField::zeros(other), SolverOptions{});
        CHECK_THROWS_AS(check_monotonicity(alt), std::invalid_argument);
    }
}

TEST_CASE("weak-form residual") {
    auto mesh = build_radial_mesh(3, 128, 1.0);
    const auto spec = make_spec(3, 1.0, 2.0, SourceSpec::constant(1.0), 1.0);
    const auto out = picard_solve(mesh, spec, 4, DiscreteField::zeros(mesh), SolverOptions{});

    SECTION("converged fields have residual at solver tolerance") {
        CHECK(weak_residual(mesh, spec, out.field, 4) <= 1e-8);
    }
    SECTION("a single-node perturbation raises the residual by >= 1e5 x") {
        const auto hats = default_hat_nodes(*mesh);
        REQUIRE(hats.size() >= 5);
        const double base = weak_residual(mesh, spec, out.field, 4, hats);
        DiscreteField bumped = out.field;
        bumped.values[hats[2]] += 0.1;
        const double prodded = weak_residual(mesh, spec, bumped, 4, hats);
        CHECK(prodded > 1e-3);
        CHECK(prodded >= 1e5 * base);
    }
    SECTION("the positivity guard trips on vanishing fields") {
        CHECK_THROWS_AS(weak_residual(mesh, spec, DiscreteField::zeros(mesh), 1),
                        std::runtime_error);
    }
}

TEST_CASE("trace classification by log-log slope") {
    auto make_trace = [](std::vector<double> values) {
        NormTrace t;
        int level = 8;
        for (double v : values) {
            TraceRow row;
            row.level = level;
            row.h1 = v;
            t.rows.push_back(row);
            level *= 2;
        }
        return t;
    };
    CHECK(classify_trace(make_trace({5.0, 5.0, 5.0, 5.0}), TraceKey::H1) ==
          TraceVerdict::Stabilized);
    // norms ~ n^{1/2}
    CHECK(classify_trace(make_trace({std::sqrt(8.0), std::sqrt(16.0), std::sqrt(32.0),
                                     std::sqrt(64.0)}),
                         TraceKey::H1) == TraceVerdict::Growing);
    // norms ~ n^{0.1}: between the thresholds
    CHECK(classify_trace(make_trace({std::pow(8.0, 0.1), std::pow(16.0, 0.1),
                                     std::pow(32.0, 0.1), std::pow(64.0, 0.1)}),
                         TraceKey::H1) == TraceVerdict::Inconclusive);
    CHECK_THROWS_AS(classify_trace(make_trace({1.0, 1.0, 1.0}), TraceKey::H1),
                    std::invalid_argument);
    // identically-zero traces are flat
    CHECK(classify_trace(make_trace({0.0, 0.0, 0.0, 0.0}), TraceKey::H1) ==
          TraceVerdict::Stabilized);
}

TEST_CASE("run_experiment assembles a verdict report") {
    Protocol proto;
    proto.n_schedule = {1, 2, 4, 8};
    proto.meshes = {48, 96};

    SECTION("bounded Case1a spec earns H1 + Linf claims and passes") {
        const auto spec = make_spec(3, 0.5, 0.5, SourceSpec::constant(1.0), 10.0);
        const auto result = run_experiment(spec, proto);
        CHECK(result.report.regime.case_id == RegimeCase::Case1a);
        CHECK(result.report.regime.has(ClaimKind::GlobalH1));
        CHECK(result.report.regime.has(ClaimKind::LInfinity));
        CHECK(result.report.overall);
        CHECK(result.traces.size() == 2);
        CHECK(result.traces[1].rows.size() == 4);
    }
    SECTION("OutOfTheorem specs carry no mandatory checks") {
        const auto spec = make_spec(3, 2.5, 0.4, SourceSpec::constant(1.0), 2.0);
        const auto result = run_experiment(spec, proto);
        CHECK(result.report.regime.case_id == RegimeCase::OutOfTheorem);
        CHECK(result.report.overall);
        for (const auto& c : result.report.checks) CHECK_FALSE(c.mandatory);
    }
    SECTION("zero sources demote interior positivity to informational") {
        const auto spec = make_spec(3, 1.0, 2.0, SourceSpec::constant(0.0));
        const auto result = run_experiment(spec, proto);
        CHECK(result.report.overall);
        for (const auto& c : result.report.checks)
            if (c.name == "interior_positivity") CHECK_FALSE(c.mandatory);
    }
}
