#include "dho/invariants_nd.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace dho {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_all_underdamped(const OscParams& params, const char* op) {
    for (Eigen::Index k = 0; k < params.dim(); ++k) {
        const DampingRegime regime = classify_regime(params, k);
        if (regime != DampingRegime::Underdamped)
            throw std::domain_error(std::string(op) + ": axis " + std::to_string(k + 1) + " is " +
                                    to_string(regime) +
                                    "; every axis must be underdamped (or gamma = 0)");
    }
}

void require_dim2(const ModeQuantities& modes, const char* op) {
    if (modes.dim() != 2)
        throw std::invalid_argument(std::string(op) + ": requires 2 axes, got " +
                                    std::to_string(modes.dim()));
}

void require_undamped(const ModeQuantities& modes, const char* op) {
    if (modes.gamma != 0.0)
        throw std::domain_error(std::string(op) + ": requires gamma = 0, got gamma = " +
                                std::to_string(modes.gamma));
}

double require_isotropic(const ModeQuantities& modes, const char* op) {
    const double w1 = modes.omega(0), w2 = modes.omega(1);
    if (std::abs(w1 - w2) > 1e-12 * std::max(w1, w2))
        throw std::domain_error(std::string(op) + ": requires omega_1 = omega_2");
    return w1;
}

}  // namespace

Vec ModeQuantities::unwrapped_phases() const {
    Vec out(dim());
    for (Eigen::Index k = 0; k < dim(); ++k)
        out(k) = phase[static_cast<std::size_t>(k)].unwrapped();
    return out;
}

ModeQuantities mode_quantities(const OscParams& params, const State& state,
                               const std::vector<UnwrappedPhase>* prev) {
    require_all_underdamped(params, "mode_quantities");
    if (state.dim() != params.dim())
        throw std::invalid_argument("mode_quantities: state dim must equal params dim");
    if (prev && prev->size() != static_cast<std::size_t>(params.dim()))
        throw std::invalid_argument("mode_quantities: prev phase count must equal dim");

    ModeQuantities modes;
    modes.gamma = params.gamma();
    modes.omega0 = params.omega0();
    modes.omega.resize(params.dim());
    modes.pseudo_energy.resize(params.dim());
    modes.state = state;
    modes.phase.reserve(static_cast<std::size_t>(params.dim()));
    for (Eigen::Index k = 0; k < params.dim(); ++k) {
        const double omega = derived_frequency(params, k).value;
        const double w = params.gamma() * state.u(k) + state.v(k);
        modes.omega(k) = omega;
        modes.pseudo_energy(k) = 0.5 * (omega * omega * state.u(k) * state.u(k) + w * w);
        const double raw = phase_raw(params, state.u(k), state.v(k), k);
        modes.phase.push_back(prev ? unwrap((*prev)[static_cast<std::size_t>(k)], raw)
                                   : UnwrappedPhase{raw, 0});
    }
    return modes;
}

std::vector<ModeQuantities> mode_series(const OscParams& params, const Trajectory& traj) {
    require_all_underdamped(params, "mode_series");
    if (traj.dim() != params.dim())
        throw std::invalid_argument("mode_series: trajectory dim must equal params dim");
    for (Eigen::Index k = 0; k < params.dim(); ++k)
        if (!(traj.dt * derived_frequency(params, k).value < 0.5 * std::numbers::pi))
            throw std::runtime_error("mode_series: dt * omega_" + std::to_string(k + 1) +
                                     " must be < pi/2 for sheet tracking");

    std::vector<ModeQuantities> out;
    out.reserve(static_cast<std::size_t>(traj.n_samples()));
    for (Eigen::Index i = 0; i < traj.n_samples(); ++i)
        out.push_back(mode_quantities(params, traj.state(i), out.empty() ? nullptr : &out.back().phase));
    return out;
}

double c_r_undamped(const ModeQuantities& modes) {
    require_dim2(modes, "c_r_undamped");
    require_undamped(modes, "c_r_undamped");
    const Vec phi = modes.unwrapped_phases();
    return modes.omega(0) * phi(1) - modes.omega(1) * phi(0);
}

double c_i_undamped(const ModeQuantities& modes) {
    require_dim2(modes, "c_i_undamped");
    require_undamped(modes, "c_i_undamped");
    for (Eigen::Index k = 0; k < 2; ++k)
        if (!(modes.pseudo_energy(k) > 0.0))
            throw std::domain_error("c_i_undamped: zero energy on axis " + std::to_string(k + 1));
    return -modes.omega(1) * std::log(std::sqrt(2.0 * modes.pseudo_energy(0))) -
           modes.omega(0) * std::log(std::sqrt(2.0 * modes.pseudo_energy(1)));
}

double c_a_damped(const ModeQuantities& modes) {
    require_dim2(modes, "c_a_damped");
    for (Eigen::Index k = 0; k < 2; ++k)
        if (!(modes.pseudo_energy(k) > 0.0))
            throw std::domain_error("c_a_damped: zero pseudo-energy on axis " + std::to_string(k + 1));
    return modes.gamma * std::log(modes.pseudo_energy(1) / modes.pseudo_energy(0));
}

double c_b_damped(const ModeQuantities& modes) {
    require_dim2(modes, "c_b_damped");
    const Vec phi = modes.unwrapped_phases();
    return modes.omega(0) * phi(1) - modes.omega(1) * phi(0);
}

IsoProjections iso_projections(const ModeQuantities& modes, double c) {
    require_dim2(modes, "iso_projections");
    const double omega = require_isotropic(modes, "iso_projections");
    const double e1 = modes.pseudo_energy(0), e2 = modes.pseudo_energy(1);
    if (!(e1 > 0.0) || !(e2 > 0.0))
        throw std::domain_error("iso_projections: zero pseudo-energy");

    const double norm = 2.0 * std::sqrt(e1 * e2);
    const auto& u = modes.state.u;
    const auto& v = modes.state.v;
    const double w1 = modes.gamma * u(0) + v(0);
    const double w2 = modes.gamma * u(1) + v(1);

    IsoProjections p{};
    p.sin_phase = std::sin(c / omega);
    p.cos_phase = std::cos(c / omega);
    p.sin_poly = omega * (u(0) * v(1) - u(1) * v(0)) / norm;
    p.cos_poly = (omega * omega * u(0) * u(1) + w1 * w2) / norm;
    return p;
}

CommensurateInvariant commensurate_invariant(const ModeQuantities& modes, int a, int b,
                                             double omega_bar) {
    require_dim2(modes, "commensurate_invariant");
    if (a < 1 || b < 1)
        throw std::invalid_argument("commensurate_invariant: a, b must be positive integers");
    if (std::gcd(a, b) != 1)
        throw std::invalid_argument("commensurate_invariant: a and b must be coprime, got (" +
                                    std::to_string(a) + ", " + std::to_string(b) + ")");
    if (!(omega_bar > 0.0))
        throw std::invalid_argument("commensurate_invariant: omega_bar must be > 0");
    for (Eigen::Index k = 0; k < 2; ++k) {
        const double expected = omega_bar * (k == 0 ? a : b);
        if (std::abs(modes.omega(k) - expected) > 1e-9 * expected)
            throw std::invalid_argument("commensurate_invariant: omega_" + std::to_string(k + 1) +
                                        " does not match " + std::to_string(k == 0 ? a : b) +
                                        " * omega_bar to 1e-9 relative");
    }

    const Vec phi = modes.unwrapped_phases();
    CommensurateInvariant inv{};
    inv.phase_route = std::sin(static_cast<double>(a) * phi(1) - static_cast<double>(b) * phi(0));

    const double e1 = modes.pseudo_energy(0), e2 = modes.pseudo_energy(1);
    const auto& u = modes.state.u;
    const auto& v = modes.state.v;
    const double w1 = modes.gamma * u(0) + v(0);
    const double w2 = modes.gamma * u(1) + v(1);
    if (a == 1 && b == 1) {
        inv.polynomial_route = omega_bar * (u(0) * v(1) - u(1) * v(0)) / (2.0 * std::sqrt(e1 * e2));
    } else if (a == 1 && b == 2) {
        // sin(phi2 - 2 phi1) expanded over the axis phases:
        //   [w2 (omega_bar^2 u1^2 - w1^2) - 4 omega_bar^2 u1 u2 w1] / sqrt(8 E1^2 E2)
        // which at gamma = 0 is the printed polynomial
        //   [omega_bar^2 u1^2 v2 - v1^2 v2 - 4 omega_bar^2 u1 u2 v1] / sqrt(8 E1^2 E2).
        const double numer = w2 * (omega_bar * omega_bar * u(0) * u(0) - w1 * w1) -
                             4.0 * omega_bar * omega_bar * u(0) * u(1) * w1;
        inv.polynomial_route = numer / std::sqrt(8.0 * e1 * e1 * e2);
    }
    return inv;
}

double generalized_angular_momentum(const ModeQuantities& modes) {
    require_dim2(modes, "generalized_angular_momentum");
    require_undamped(modes, "generalized_angular_momentum");
    const double e1 = modes.pseudo_energy(0), e2 = modes.pseudo_energy(1);
    if (!(e1 > 0.0) || !(e2 > 0.0))
        throw std::domain_error("generalized_angular_momentum: zero energy axis");
    const double big_phi = c_r_undamped(modes) / modes.omega(0);
    return 2.0 / modes.omega(0) * std::sqrt(e1 * e2) * std::sin(big_phi);
}

Mat wedge(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("wedge: size mismatch");
    return a * b.transpose() - b * a.transpose();
}

WedgeConstants wedge_constants(const ModeQuantities& modes) {
    if (modes.dim() < 2)
        throw std::invalid_argument("wedge_constants: requires >= 2 axes");
    return {wedge(modes.omega, modes.unwrapped_phases())};
}

std::vector<WedgeConstants> wedge_series(const OscParams& params, const Trajectory& traj) {
    std::vector<WedgeConstants> out;
    for (const auto& modes : mode_series(params, traj)) out.push_back(wedge_constants(modes));
    return out;
}

}  // namespace dho
