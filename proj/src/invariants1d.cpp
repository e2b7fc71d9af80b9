#include "dho/invariants1d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dho {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double require_underdamped(const OscParams& params, Eigen::Index axis, const char* op) {
    const DerivedFreq df = derived_frequency(params, axis);
    if (df.regime != DampingRegime::Underdamped)
        throw std::domain_error(std::string(op) + ": axis " + std::to_string(axis + 1) +
                                " is " + to_string(df.regime) + ", requires underdamped");
    return df.value;
}

double require_overdamped(const OscParams& params, Eigen::Index axis, const char* op) {
    const DerivedFreq df = derived_frequency(params, axis);
    if (df.regime != DampingRegime::Overdamped)
        throw std::domain_error(std::string(op) + ": axis " + std::to_string(axis + 1) +
                                " is " + to_string(df.regime) + ", requires overdamped");
    return df.value;
}

void require_critical(const OscParams& params, Eigen::Index axis, const char* op) {
    const DampingRegime regime = classify_regime(params, axis);
    if (regime != DampingRegime::Critical)
        throw std::domain_error(std::string(op) + ": axis " + std::to_string(axis + 1) +
                                " is " + to_string(regime) + ", requires critical");
}

}  // namespace

double UnwrappedPhase::unwrapped() const { return phi_raw - kTwoPi * static_cast<double>(sheet); }

double phase_raw(const OscParams& params, double u, double v, Eigen::Index axis) {
    const double omega = require_underdamped(params, axis, "phase_raw");
    const double w = params.gamma() * u + v;
    const double x = omega * u;
    if (w == 0.0 && x == 0.0)
        throw std::domain_error("phase_raw: phase undefined at the origin (u = v = 0)");
    const double phi = std::atan2(w, x);
    return phi == -kPi ? kPi : phi;
}

UnwrappedPhase unwrap(const UnwrappedPhase& prev, double raw) {
    if (!(std::abs(raw) <= kPi))
        throw std::invalid_argument("unwrap: raw phase must lie in (-pi, pi]");
    const double jump = raw - prev.phi_raw;
    const double mag = std::abs(jump);
    if (mag < kPi) return {raw, prev.sheet};
    if (mag > 1.5 * kPi) return {raw, prev.sheet + (jump > 0.0 ? 1 : -1)};
    throw std::runtime_error("unwrap: ambiguous phase jump of " + std::to_string(mag) +
                             " rad; sample the trajectory more finely");
}

std::vector<UnwrappedPhase> unwrap_series(const std::vector<double>& raw) {
    std::vector<UnwrappedPhase> out;
    out.reserve(raw.size());
    for (double phi : raw)
        out.push_back(out.empty() ? UnwrappedPhase{phi, 0} : unwrap(out.back(), phi));
    return out;
}

double r_underdamped(const OscParams& params, double u, double v, long long sheet,
                     Eigen::Index axis) {
    const double omega = require_underdamped(params, axis, "r_underdamped");
    const double g = params.gamma();
    const double w = g * u + v;
    const double sq = omega * omega * u * u + w * w;
    if (sq == 0.0)
        throw std::domain_error("r_underdamped: undefined at the origin (u = v = 0)");
    const double phi = phase_raw(params, u, v, axis);
    return std::log(sq) - 2.0 * (g / omega) * (phi - kTwoPi * static_cast<double>(sheet));
}

double r_prime_underdamped(const OscParams& params, double u, double v, long long sheet,
                           Eigen::Index axis) {
    return std::exp(r_underdamped(params, u, v, sheet, axis));
}

double r_overdamped(const OscParams& params, double u, double v, Eigen::Index axis) {
    const double zeta = require_overdamped(params, axis, "r_overdamped");
    const double g = params.gamma();
    const double w = g * u + v;
    const double plus = zeta * u + w;
    const double minus = zeta * u - w;
    if (plus == 0.0)
        throw std::domain_error("r_overdamped: state lies on the boundary zeta*u + (gamma*u + v) = 0");
    if (minus == 0.0)
        throw std::domain_error("r_overdamped: state lies on the boundary zeta*u - (gamma*u + v) = 0");
    return -(zeta + g) * std::log(std::abs(plus)) - (zeta - g) * std::log(std::abs(minus));
}

double r_critical(const OscParams& params, double u, double v, Eigen::Index axis) {
    require_critical(params, axis, "r_critical");
    const double g = params.gamma();
    const double w = g * u + v;
    if (w == 0.0)
        throw std::domain_error("r_critical: state lies on the singular line gamma*u + v = 0");
    return std::log(std::abs(w)) + g * u / w;
}

double integrating_factor(const OscParams& params, double u, double v, Eigen::Index axis) {
    const double w0 = params.omega0(axis);
    const double g = params.gamma();
    const double w = g * u + v;
    const double denom = (w0 * w0 - g * g) * u * u + w * w;
    if (denom == 0.0)
        throw std::domain_error("integrating_factor: zero denominator (singular set)");
    return 1.0 / denom;
}

double r_alternative(const OscParams& params, double u, double v, double t, Eigen::Index axis) {
    const double w0 = params.omega0(axis);
    const double g = params.gamma();
    const double w = g * u + v;
    return 0.5 * ((w0 * w0 - g * g) * u * u + w * w) * std::exp(2.0 * g * t);
}

std::string to_string(RegionQuadrant q) {
    switch (q) {
        case RegionQuadrant::PlusPlus: return "(+,+)";
        case RegionQuadrant::PlusMinus: return "(+,-)";
        case RegionQuadrant::MinusPlus: return "(-,+)";
        case RegionQuadrant::MinusMinus: return "(-,-)";
    }
    return "?";
}

std::pair<double, double> region_coords(const OscParams& params, double u, double v,
                                        Eigen::Index axis) {
    const double zeta = require_overdamped(params, axis, "region_coords");
    const double g = params.gamma();
    return {((g + zeta) * u + v) / (2.0 * zeta), ((zeta - g) * u - v) / (2.0 * zeta)};
}

std::pair<double, double> state_from_region_coords(const OscParams& params, double u_tilde,
                                                   double v_tilde, Eigen::Index axis) {
    const double zeta = require_overdamped(params, axis, "state_from_region_coords");
    const double g = params.gamma();
    const double u = u_tilde + v_tilde;
    const double v = (zeta - g) * u_tilde - (zeta + g) * v_tilde;
    return {u, v};
}

RegionQuadrant region(const OscParams& params, double u, double v, Eigen::Index axis) {
    const auto [ut, vt] = region_coords(params, u, v, axis);
    if (ut == 0.0)
        throw std::domain_error("region: state lies on the boundary zeta*u + (gamma*u + v) = 0");
    if (vt == 0.0)
        throw std::domain_error("region: state lies on the boundary zeta*u - (gamma*u + v) = 0");
    if (ut > 0.0) return vt > 0.0 ? RegionQuadrant::PlusPlus : RegionQuadrant::PlusMinus;
    return vt > 0.0 ? RegionQuadrant::MinusPlus : RegionQuadrant::MinusMinus;
}

std::vector<UnwrappedPhase> phase_series(const OscParams& params, const Trajectory& traj,
                                         Eigen::Index axis) {
    const double omega = require_underdamped(params, axis, "phase_series");
    if (!(traj.dt * omega < 0.5 * kPi))
        throw std::runtime_error("phase_series: dt * omega must be < pi/2 for sheet tracking");
    std::vector<UnwrappedPhase> out;
    out.reserve(static_cast<std::size_t>(traj.n_samples()));
    for (Eigen::Index i = 0; i < traj.n_samples(); ++i) {
        const double raw = phase_raw(params, traj.u(i, axis), traj.v(i, axis), axis);
        out.push_back(out.empty() ? UnwrappedPhase{raw, 0} : unwrap(out.back(), raw));
    }
    return out;
}

std::vector<double> r_series(const OscParams& params, const Trajectory& traj) {
    if (traj.dim() != 1 || params.dim() != 1)
        throw std::invalid_argument("r_series: expects a 1D trajectory");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(traj.n_samples()));
    switch (classify_regime(params, 0)) {
        case DampingRegime::Underdamped: {
            const auto phases = phase_series(params, traj, 0);
            for (Eigen::Index i = 0; i < traj.n_samples(); ++i)
                out.push_back(r_underdamped(params, traj.u(i, 0), traj.v(i, 0),
                                            phases[static_cast<std::size_t>(i)].sheet));
            break;
        }
        case DampingRegime::Overdamped:
            for (Eigen::Index i = 0; i < traj.n_samples(); ++i)
                out.push_back(r_overdamped(params, traj.u(i, 0), traj.v(i, 0)));
            break;
        case DampingRegime::Critical:
            for (Eigen::Index i = 0; i < traj.n_samples(); ++i)
                out.push_back(r_critical(params, traj.u(i, 0), traj.v(i, 0)));
            break;
    }
    return out;
}

}  // namespace dho
