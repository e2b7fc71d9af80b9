#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dho/invariants_nd.hpp"
#include "dho/trajectory.hpp"
#include "dho/verify.hpp"
#include "oracles.hpp"

using namespace dho;

namespace {

Vec make_vec(std::initializer_list<double> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

double column_spread(const std::vector<double>& xs) {
    double lo = xs[0], hi = xs[0];
    for (double x : xs) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return hi - lo;
}

// States at least 0.1 away from both axes' branch cuts (the rays u_k < 0,
// gamma u_k + v_k = 0) and from the origin.
State safe_random_state(std::mt19937& rng, const OscParams& params) {
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    while (true) {
        State s{Vec(params.dim()), Vec(params.dim())};
        bool ok = true;
        for (Eigen::Index k = 0; k < params.dim(); ++k) {
            s.u(k) = coord(rng);
            s.v(k) = coord(rng);
            const double w = params.gamma() * s.u(k) + s.v(k);
            if (std::hypot(s.u(k), s.v(k)) < 0.3 || (s.u(k) < 0.1 && std::abs(w) < 0.1)) ok = false;
        }
        if (ok) return s;
    }
}

}  // namespace

TEST_CASE("mode quantities basics") {
    SUBCASE("undamped symmetric state") {
        const OscParams params(make_vec({1.0, 1.0}), 0.0);
        const auto modes = mode_quantities(params, State{make_vec({1.0, 1.0}), make_vec({0.0, 0.0})});
        CHECK(modes.phase[0].phi_raw == 0.0);
        CHECK(modes.phase[1].phi_raw == 0.0);
        CHECK(modes.pseudo_energy(0) == 0.5);
        CHECK(modes.pseudo_energy(1) == 0.5);
    }
    SUBCASE("axis at the origin") {
        const OscParams params(make_vec({1.0, 1.0}), 0.0);
        CHECK_THROWS_AS(
            mode_quantities(params, State{make_vec({1.0, 0.0}), make_vec({0.0, 0.0})}),
            std::domain_error);
    }
    SUBCASE("mixed regimes rejected") {
        const OscParams params(make_vec({1.0, 2.0}), 1.05);
        CHECK_THROWS_WITH_AS(
            mode_quantities(params, State{make_vec({1.0, 1.0}), make_vec({1.0, 1.0})}),
            doctest::Contains("underdamped"), std::domain_error);
    }
}

TEST_CASE("pseudo-energy decay and on-shell phases for damped modes") {
    const OscParams params(make_vec({1.0, 1.3}), 0.1);
    const Vec u0 = make_vec({1.2, -0.6});
    const Vec v0 = make_vec({0.4, 0.9});
    const Trajectory traj = sample_exact(params, u0, v0, 0.05, 1000);
    const auto modes = mode_series(params, traj);
    const auto sol = exact_solution_from_initial(params, u0, v0);

    for (Eigen::Index k = 0; k < 2; ++k) {
        const double omega = derived_frequency(params, k).value;
        const double beta = sol.axes[static_cast<std::size_t>(k)].beta;
        std::vector<double> scaled;
        for (std::size_t i = 0; i < modes.size(); ++i) {
            const double t = traj.t(static_cast<Eigen::Index>(i));
            scaled.push_back(modes[i].pseudo_energy(k) * std::exp(2.0 * params.gamma() * t));
            const double expected_phi = -omega * t + beta;
            CHECK(modes[i].phase[static_cast<std::size_t>(k)].unwrapped() ==
                  doctest::Approx(expected_phi).epsilon(1e-10));
        }
        CHECK(column_spread(scaled) < 1e-10 * std::abs(scaled[0]));
    }
}

TEST_CASE("undamped anisotropic C_R") {
    const OscParams params(make_vec({1.0, std::numbers::sqrt2}), 0.0);
    const Vec u0 = make_vec({1.1, -0.4});
    const Vec v0 = make_vec({-0.3, 0.8});
    const Trajectory traj = sample_exact(params, u0, v0, 0.1, 1000);
    const auto modes = mode_series(params, traj);
    const auto sol = exact_solution_from_initial(params, u0, v0);
    const double beta1 = sol.axes[0].beta, beta2 = sol.axes[1].beta;

    std::vector<double> values;
    for (const auto& m : modes) values.push_back(c_r_undamped(m));
    CHECK(values[0] == doctest::Approx(beta2 - std::numbers::sqrt2 * beta1).epsilon(1e-12));
    CHECK(column_spread(values) < 1e-9 * std::abs(values[0]));

    SUBCASE("isotropic equal phase gives zero") {
        const OscParams iso(make_vec({1.0, 1.0}), 0.0);
        const auto m = mode_quantities(iso, State{make_vec({0.7, 0.7}), make_vec({0.2, 0.2})});
        CHECK(c_r_undamped(m) == 0.0);
    }
    SUBCASE("gamma != 0 is rejected") {
        const OscParams damped(make_vec({1.0, 1.3}), 0.1);
        const auto m =
            mode_quantities(damped, State{make_vec({1.0, 1.0}), make_vec({0.0, 0.0})});
        CHECK_THROWS_AS(c_r_undamped(m), std::domain_error);
    }
}

TEST_CASE("numerical Poisson bracket {C_R, H_2} vanishes at safe states") {
    const OscParams params(make_vec({1.0, std::numbers::sqrt2}), 0.0);
    const StateFn c_r = [&](const State& s) { return c_r_undamped(mode_quantities(params, s)); };
    const StateFn hamiltonian = [&](const State& s) {
        double h = 0.0;
        for (Eigen::Index k = 0; k < 2; ++k)
            h += 0.5 * (params.omega0(k) * params.omega0(k) * s.u(k) * s.u(k) + s.v(k) * s.v(k));
        return h;
    };
    std::mt19937 rng(59);
    for (int i = 0; i < 100; ++i) {
        const State s = safe_random_state(rng, params);
        CHECK(std::abs(poisson_bracket(c_r, hamiltonian, s)) < 1e-6);
    }
}

TEST_CASE("undamped C_I") {
    const OscParams params(make_vec({1.0, 1.0}), 0.0);
    SUBCASE("unit energies give zero") {
        const auto m = mode_quantities(params, State{make_vec({1.0, 0.0}), make_vec({0.0, 1.0})});
        CHECK(c_i_undamped(m) == 0.0);
    }
    SUBCASE("constant along trajectories") {
        const OscParams aniso(make_vec({1.0, std::numbers::sqrt2}), 0.0);
        const Trajectory traj =
            sample_exact(aniso, make_vec({1.1, -0.4}), make_vec({-0.3, 0.8}), 0.1, 500);
        std::vector<double> values;
        for (const auto& m : mode_series(aniso, traj)) values.push_back(c_i_undamped(m));
        CHECK(column_spread(values) < 1e-12);
    }
    SUBCASE("doubling both amplitudes shifts by -(w10 + w20) log 2") {
        const OscParams aniso(make_vec({1.0, std::numbers::sqrt2}), 0.0);
        const auto m1 =
            mode_quantities(aniso, State{make_vec({0.9, 0.5}), make_vec({0.2, -0.7})});
        const auto m2 =
            mode_quantities(aniso, State{make_vec({1.8, 1.0}), make_vec({0.4, -1.4})});
        const double shift = -(1.0 + std::numbers::sqrt2) * std::log(2.0);
        CHECK(c_i_undamped(m2) - c_i_undamped(m1) == doctest::Approx(shift).epsilon(1e-12));
    }
}

TEST_CASE("isotropic projections") {
    SUBCASE("canonical undamped state") {
        const OscParams params(make_vec({1.0, 1.0}), 0.0);
        const auto m = mode_quantities(params, State{make_vec({1.0, 0.0}), make_vec({0.0, 1.0})});
        const IsoProjections p = iso_projections(m, c_r_undamped(m));
        CHECK(p.sin_poly == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(p.cos_poly == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(p.sin_phase == doctest::Approx(p.sin_poly).epsilon(1e-12));
        // 4 E1 E2 identity at this state: 4 * 1/2 * 1/2 = 1 = 1^2 + 0^2.
        CHECK(4.0 * m.pseudo_energy(0) * m.pseudo_energy(1) == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("phase route equals polynomial route along an undamped trajectory") {
        const OscParams params(make_vec({1.0, 1.0}), 0.0);
        const Trajectory traj =
            sample_exact(params, make_vec({1.0, 0.4}), make_vec({-0.5, 0.9}), 0.1, 500);
        for (const auto& m : mode_series(params, traj)) {
            const IsoProjections p = iso_projections(m, c_r_undamped(m));
            CHECK(p.sin_phase == doctest::Approx(p.sin_poly).epsilon(1e-12));
            CHECK(p.cos_phase == doctest::Approx(p.cos_poly).epsilon(1e-12));
        }
    }
    SUBCASE("damped isotropic: both sides of the pseudo-energy identity decay together") {
        const OscParams params(make_vec({1.0, 1.0}), 0.1);
        const Trajectory traj =
            sample_exact(params, make_vec({1.0, 0.4}), make_vec({-0.5, 0.9}), 0.1, 500);
        const auto modes = mode_series(params, traj);
        std::vector<double> lhs_over_decay, ratio;
        for (std::size_t i = 0; i < modes.size(); ++i) {
            const auto& m = modes[i];
            const double lhs = 4.0 * m.pseudo_energy(0) * m.pseudo_energy(1);
            const double omega = m.omega(0);
            const double w1 = m.gamma * m.state.u(0) + m.state.v(0);
            const double w2 = m.gamma * m.state.u(1) + m.state.v(1);
            const double sin_num = omega * (m.state.u(0) * m.state.v(1) - m.state.u(1) * m.state.v(0));
            const double cos_num = omega * omega * m.state.u(0) * m.state.u(1) + w1 * w2;
            const double rhs = sin_num * sin_num + cos_num * cos_num;
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            ratio.push_back(lhs / rhs);
            const double t = traj.t(static_cast<Eigen::Index>(i));
            // E~ products decay as e^{-4 gamma t} (each factor as e^{-2 gamma t}).
            lhs_over_decay.push_back(lhs * std::exp(4.0 * params.gamma() * t));
            const IsoProjections p = iso_projections(m, c_b_damped(m));
            CHECK(p.sin_phase == doctest::Approx(p.sin_poly).epsilon(1e-10));
            CHECK(p.cos_phase == doctest::Approx(p.cos_poly).epsilon(1e-10));
        }
        CHECK(column_spread(ratio) < 1e-10);
        CHECK(column_spread(lhs_over_decay) < 1e-9 * std::abs(lhs_over_decay[0]));
    }
    SUBCASE("anisotropic params are rejected") {
        const OscParams params(make_vec({1.0, 1.5}), 0.0);
        const auto m = mode_quantities(params, State{make_vec({1.0, 1.0}), make_vec({0.0, 0.0})});
        CHECK_THROWS_AS(iso_projections(m, 0.0), std::domain_error);
    }
}

TEST_CASE("damped anisotropic constants C_A and C_B") {
    const OscParams params(make_vec({1.0, 1.3}), 0.1);
    const Vec u0 = make_vec({1.2, -0.6});
    const Vec v0 = make_vec({0.4, 0.9});
    const Trajectory traj = sample_exact(params, u0, v0, 0.05, 1000);
    std::vector<double> as, bs;
    for (const auto& m : mode_series(params, traj)) {
        as.push_back(c_a_damped(m));
        bs.push_back(c_b_damped(m));
    }
    CHECK(column_spread(as) < 1e-9 * std::max(std::abs(as[0]), 1.0));
    CHECK(column_spread(bs) < 1e-9 * std::abs(bs[0]));

    SUBCASE("equal pseudo-energies give C_A = 0") {
        const OscParams iso(make_vec({1.0, 1.0}), 0.1);
        const auto m = mode_quantities(iso, State{make_vec({1.0, 1.0}), make_vec({0.0, 0.0})});
        CHECK(c_a_damped(m) == 0.0);
    }
    SUBCASE("C_B tends to C_R as gamma -> 0") {
        const OscParams aniso0(make_vec({1.0, 1.3}), 0.0);
        const OscParams aniso_eps(make_vec({1.0, 1.3}), 1e-8);
        const State s{make_vec({1.1, -0.4}), make_vec({-0.3, 0.8})};
        const double cr = c_r_undamped(mode_quantities(aniso0, s));
        const double cb = c_b_damped(mode_quantities(aniso_eps, s));
        CHECK(std::abs(cb - cr) < 1e-6);
    }
}

TEST_CASE("commensurate invariants") {
    SUBCASE("(1,2) undamped polynomial equals the phase route and sin(beta2 - 2 beta1)") {
        const OscParams params(make_vec({1.0, 2.0}), 0.0);
        const Vec u0 = make_vec({1.0, -0.5});
        const Vec v0 = make_vec({0.4, 0.7});
        const auto sol = exact_solution_from_initial(params, u0, v0);
        const double expected = std::sin(sol.axes[1].beta - 2.0 * sol.axes[0].beta);
        const Trajectory traj = sample_exact(params, u0, v0, 0.05, 1000);
        for (const auto& m : mode_series(params, traj)) {
            const CommensurateInvariant inv = commensurate_invariant(m, 1, 2, 1.0);
            REQUIRE(inv.polynomial_route.has_value());
            CHECK(*inv.polynomial_route == doctest::Approx(inv.phase_route).epsilon(1e-10));
            CHECK(*inv.polynomial_route == doctest::Approx(expected).epsilon(1e-10));
        }
    }
    SUBCASE("(1,1) collapses to the isotropic sin projection") {
        const OscParams params(make_vec({1.0, 1.0}), 0.0);
        const auto m = mode_quantities(params, State{make_vec({0.8, -0.3}), make_vec({0.5, 0.6})});
        const CommensurateInvariant inv = commensurate_invariant(m, 1, 1, 1.0);
        REQUIRE(inv.polynomial_route.has_value());
        const IsoProjections p = iso_projections(m, c_r_undamped(m));
        CHECK(*inv.polynomial_route == doctest::Approx(p.sin_poly).epsilon(1e-14));
        CHECK(inv.phase_route == doctest::Approx(p.sin_phase).epsilon(1e-14));
    }
    SUBCASE("damped variant with commensurate damped frequencies") {
        const double gamma = 0.1;
        const OscParams params(
            make_vec({std::sqrt(1.0 + gamma * gamma), std::sqrt(4.0 + gamma * gamma)}), gamma);
        // Damped frequencies are exactly (1, 2).
        const Trajectory traj =
            sample_exact(params, make_vec({1.0, -0.5}), make_vec({0.4, 0.7}), 0.05, 1000);
        std::vector<double> values;
        for (const auto& m : mode_series(params, traj)) {
            const CommensurateInvariant inv = commensurate_invariant(m, 1, 2, 1.0);
            REQUIRE(inv.polynomial_route.has_value());
            CHECK(*inv.polynomial_route == doctest::Approx(inv.phase_route).epsilon(1e-9));
            values.push_back(*inv.polynomial_route);
        }
        CHECK(column_spread(values) < 1e-9);
    }
    SUBCASE("argument validation") {
        const OscParams params(make_vec({1.0, 2.0}), 0.0);
        const auto m = mode_quantities(params, State{make_vec({1.0, 1.0}), make_vec({0.0, 0.0})});
        CHECK_THROWS_WITH_AS(commensurate_invariant(m, 2, 4, 0.5), doctest::Contains("coprime"),
                             std::invalid_argument);
        CHECK_THROWS_AS(commensurate_invariant(m, 1, 3, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(commensurate_invariant(m, 0, 1, 1.0), std::invalid_argument);
    }
}

TEST_CASE("generalized angular momentum") {
    SUBCASE("equals L at isotropy") {
        const OscParams params(make_vec({1.0, 1.0}), 0.0);
        std::mt19937 rng(61);
        std::uniform_real_distribution<double> coord(-2.0, 2.0);
        for (int i = 0; i < 100; ++i) {
            const State s{make_vec({coord(rng), coord(rng)}), make_vec({coord(rng), coord(rng)})};
            if (std::hypot(s.u(0), s.v(0)) < 1e-2 || std::hypot(s.u(1), s.v(1)) < 1e-2) continue;
            const double l = s.u(0) * s.v(1) - s.u(1) * s.v(0);
            CHECK(generalized_angular_momentum(mode_quantities(params, s)) ==
                  doctest::Approx(l).epsilon(1e-12));
        }
    }
    SUBCASE("constant at irrational ratio while L drifts") {
        const OscParams params(make_vec({1.0, std::numbers::sqrt2}), 0.0);
        const Trajectory traj =
            sample_exact(params, make_vec({1.0, 0.5}), make_vec({0.3, -0.2}), 0.05, 126);
        std::vector<double> cprime, l;
        for (const auto& m : mode_series(params, traj)) {
            cprime.push_back(generalized_angular_momentum(m));
            l.push_back(m.state.u(0) * m.state.v(1) - m.state.u(1) * m.state.v(0));
        }
        CHECK(column_spread(cprime) < 1e-9 * std::abs(cprime[0]));
        CHECK(column_spread(l) > 1e-3);
    }
    SUBCASE("ratio 1/2 matches the table polynomial over omega10 sqrt(2 E1)") {
        const OscParams params(make_vec({1.0, 2.0}), 0.0);
        const Trajectory traj =
            sample_exact(params, make_vec({1.0, -0.5}), make_vec({0.4, 0.7}), 0.05, 200);
        for (const auto& m : mode_series(params, traj)) {
            const double w10 = 1.0;
            const auto& u = m.state.u;
            const auto& v = m.state.v;
            const double poly = w10 * w10 * u(0) * u(0) * v(1) - v(0) * v(0) * v(1) -
                                4.0 * w10 * w10 * u(0) * u(1) * v(0);
            const double expected = poly / (w10 * std::sqrt(2.0 * m.pseudo_energy(0))) / w10;
            CHECK(generalized_angular_momentum(m) == doctest::Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("wedge constants") {
    SUBCASE("N = 2 collapses to C_B") {
        const OscParams params(make_vec({1.0, 1.3}), 0.1);
        const auto m = mode_quantities(params, State{make_vec({1.2, -0.6}), make_vec({0.4, 0.9})});
        CHECK(wedge_constants(m)(0, 1) == doctest::Approx(c_b_damped(m)).epsilon(1e-15));
    }
    SUBCASE("N = 3 damped: all entries constant, antisymmetry exact") {
        const OscParams params(make_vec({1.0, std::numbers::sqrt2, std::numbers::sqrt3}), 0.05);
        const Trajectory traj = sample_exact(params, make_vec({1.2, -0.7, 0.4}),
                                             make_vec({0.3, 0.9, -1.1}), 0.05, 1000);
        const auto series = wedge_series(params, traj);
        for (Eigen::Index i = 0; i < 3; ++i)
            for (Eigen::Index j = i + 1; j < 3; ++j) {
                std::vector<double> values;
                for (const auto& w : series) values.push_back(w(i, j));
                CHECK(column_spread(values) < 1e-9 * std::abs(values[0]));
            }
        for (const auto& w : series) {
            CHECK((w.c + w.c.transpose()).cwiseAbs().maxCoeff() == 0.0);
            CHECK(w.c.diagonal().cwiseAbs().maxCoeff() == 0.0);
        }
    }
    SUBCASE("on-shell form phi ^ phidot with phidot = -omega matches") {
        const OscParams params(make_vec({1.0, std::numbers::sqrt2}), 0.0);
        const auto m = mode_quantities(params, State{make_vec({1.0, 0.5}), make_vec({0.3, -0.2})});
        const Mat lhs = wedge(m.unwrapped_phases(), (-m.omega).eval());
        CHECK((lhs - wedge_constants(m).c).cwiseAbs().maxCoeff() < 1e-15);
    }
}
