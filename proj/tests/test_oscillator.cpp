#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dho/invariants1d.hpp"
#include "dho/oscillator.hpp"
#include "oracles.hpp"

using namespace dho;

TEST_CASE("params validation") {
    CHECK_THROWS_AS(OscParams(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(OscParams(-1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(OscParams(1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(OscParams(Vec(), 0.1), std::invalid_argument);
    CHECK(OscParams(1.0, 0.0).dim() == 1);
}

TEST_CASE("regime classification at the figure parameters") {
    CHECK(classify_regime(OscParams(1.0, 0.1)) == DampingRegime::Underdamped);
    CHECK(classify_regime(OscParams(1.0, 1.1)) == DampingRegime::Overdamped);
    CHECK(classify_regime(OscParams(1.0, 1.0)) == DampingRegime::Critical);
    // The critical band is relative to omega0.
    CHECK(classify_regime(OscParams(1.0, 1.0 + 5e-13)) == DampingRegime::Critical);
    CHECK(classify_regime(OscParams(1.0, 1.0 + 1e-11)) == DampingRegime::Overdamped);
}

TEST_CASE("derived frequency values") {
    CHECK(derived_frequency(OscParams(1.0, 0.0)).value == 1.0);
    CHECK(derived_frequency(OscParams(1.0, 0.1)).value ==
          doctest::Approx(0.99498743710661995).epsilon(1e-15));
    CHECK(derived_frequency(OscParams(1.0, 1.1)).value ==
          doctest::Approx(0.458257569495584).epsilon(1e-15));
    CHECK(derived_frequency(OscParams(1.0, 1.0)).value == 0.0);

    // value^2 with the regime-appropriate sign of gamma^2 recovers omega0^2.
    std::mt19937 rng(7);
    for (auto regime : {DampingRegime::Underdamped, DampingRegime::Overdamped}) {
        for (int i = 0; i < 200; ++i) {
            const auto rp = oracles::random_params(rng, regime);
            const DerivedFreq df = derived_frequency(rp.params);
            const double g = rp.params.gamma();
            const double w0sq = rp.params.omega0(0) * rp.params.omega0(0);
            const double recovered = regime == DampingRegime::Underdamped
                                         ? df.value * df.value + g * g
                                         : g * g - df.value * df.value;
            CHECK(recovered == doctest::Approx(w0sq).epsilon(1e-14));
            CHECK(df.value >= 0.0);
        }
    }
}

TEST_CASE("solution coefficients from initial conditions") {
    SUBCASE("undamped cosine") {
        const auto sol = exact_solution_from_initial(OscParams(1.0, 0.0), Vec::Constant(1, 1.0),
                                                     Vec::Constant(1, 0.0));
        CHECK(sol.axes[0].a == 1.0);
        CHECK(sol.axes[0].b == 0.0);
    }
    SUBCASE("underdamped figure point") {
        const auto sol = exact_solution_from_initial(OscParams(1.0, 0.1), Vec::Constant(1, 1.5),
                                                     Vec::Constant(1, -2.5827));
        CHECK(sol.axes[0].a == 1.5);
        CHECK(sol.axes[0].b == doctest::Approx(-2.4449554931810852).epsilon(1e-15));
    }
    SUBCASE("critical figure point") {
        const auto sol = exact_solution_from_initial(OscParams(1.0, 1.0), Vec::Constant(1, -1.58),
                                                     Vec::Constant(1, -3.99));
        CHECK(sol.axes[0].a == -1.58);
        CHECK(sol.axes[0].b == doctest::Approx(-5.57).epsilon(1e-15));
    }
    CHECK_THROWS_AS(
        exact_solution_from_initial(OscParams(1.0, 0.0), Vec::Constant(2, 1.0), Vec::Constant(1, 0.0)),
        std::invalid_argument);
}

TEST_CASE("evaluate_exact recovers the initial state at t = 0") {
    std::mt19937 rng(11);
    for (auto regime :
         {DampingRegime::Underdamped, DampingRegime::Overdamped, DampingRegime::Critical}) {
        for (int i = 0; i < 300; ++i) {
            const auto rp = oracles::random_params(rng, regime);
            const auto sol = exact_solution_from_initial(rp.params, rp.u0, rp.v0);
            const State s0 = evaluate_exact(sol, 0.0);
            CHECK(s0.u(0) == doctest::Approx(rp.u0(0)).epsilon(1e-12));
            CHECK(s0.v(0) == doctest::Approx(rp.v0(0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("evaluate_exact spot values") {
    SUBCASE("quarter period of the undamped cosine") {
        const auto sol = exact_solution_from_initial(OscParams(1.0, 0.0), Vec::Constant(1, 1.0),
                                                     Vec::Constant(1, 0.0));
        const State s = evaluate_exact(sol, std::numbers::pi / 2.0);
        CHECK(s.u(0) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(s.v(0) == doctest::Approx(-1.0).epsilon(1e-15));
    }
    SUBCASE("critical identity gamma*u + v = B e^{-gamma t}") {
        const auto sol = exact_solution_from_initial(OscParams(1.0, 1.0), Vec::Constant(1, -1.58),
                                                     Vec::Constant(1, -3.99));
        const State s = evaluate_exact(sol, 1.0);
        CHECK(s.u(0) + s.v(0) == doctest::Approx(-2.0490884873249337).epsilon(1e-14));
    }
    CHECK_THROWS_AS(evaluate_exact(exact_solution_from_initial(OscParams(1.0, 0.0),
                                                               Vec::Constant(1, 1.0),
                                                               Vec::Constant(1, 0.0)),
                                   std::nan("")),
                    std::invalid_argument);
}

TEST_CASE("underdamped on-shell phase is -omega t + beta") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rp = oracles::random_params(rng, DampingRegime::Underdamped);
        const auto sol = exact_solution_from_initial(rp.params, rp.u0, rp.v0);
        const double omega = derived_frequency(rp.params).value;
        const double beta = sol.axes[0].beta;
        const double period = 2.0 * std::numbers::pi / omega;
        const double dt = 10.0 * period / 1000.0;

        UnwrappedPhase phase{};
        for (int i = 0; i < 1000; ++i) {
            const double t = i * dt;
            const State s = evaluate_exact(sol, t);
            const double raw = phase_raw(rp.params, s.u(0), s.v(0));
            phase = (i == 0) ? UnwrappedPhase{raw, 0} : unwrap(phase, raw);
            CHECK(phase.unwrapped() == doctest::Approx(-omega * t + beta).epsilon(1e-10));
        }
    }
}

TEST_CASE("equation-of-motion residual of the analytic second derivative") {
    std::mt19937 rng(17);
    for (auto regime :
         {DampingRegime::Underdamped, DampingRegime::Overdamped, DampingRegime::Critical}) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto rp = oracles::random_params(rng, regime);
            const auto sol = exact_solution_from_initial(rp.params, rp.u0, rp.v0);
            const auto& ax = sol.axes[0];
            const auto [da, db] = oracles::differentiate_coeffs(ax, ax.a, ax.b);
            const auto [dda, ddb] = oracles::differentiate_coeffs(ax, da, db);
            const double g = rp.params.gamma();
            const double w0sq = rp.params.omega0(0) * rp.params.omega0(0);
            for (int i = 0; i <= 50; ++i) {
                const double t = 0.2 * i;
                const double u = oracles::eval_axis(ax, ax.a, ax.b, t);
                const double du = oracles::eval_axis(ax, da, db, t);
                const double ddu = oracles::eval_axis(ax, dda, ddb, t);
                const double residual = ddu + 2.0 * g * du + w0sq * u;
                CHECK(std::abs(residual) <= 1e-10 * std::max(std::abs(w0sq * u), 1e-30) + 1e-13);

                // And the library's v matches the oracle derivative.
                const State s = evaluate_exact(sol, t);
                CHECK(s.v(0) == doctest::Approx(du).epsilon(1e-12));
            }
        }
    }
}
