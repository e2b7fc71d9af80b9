#pragma once

#include <utility>
#include <vector>

#include "dho/oscillator.hpp"
#include "dho/trajectory.hpp"
#include "dho/types.hpp"

namespace dho {

/// Principal phase in (-pi, pi] plus the Riemann sheet number n. The
/// single-valued phase along a trajectory is phi_raw - 2*pi*n.
struct UnwrappedPhase {
    double phi_raw = 0.0;
    long long sheet = 0;

    double unwrapped() const;
};

/// Raw phase phi = atan2(gamma*u + v, omega*u) of an underdamped axis.
double phase_raw(const OscParams& params, double u, double v, Eigen::Index axis = 0);

/// Continue a phase sequence across the branch cut. The raw jump between
/// consecutive samples must stay below pi (same sheet) or exceed 3*pi/2
/// (cut crossing); magnitudes in between are ambiguous and rejected.
UnwrappedPhase unwrap(const UnwrappedPhase& prev, double raw);

std::vector<UnwrappedPhase> unwrap_series(const std::vector<double>& raw);

/// Underdamped constant of motion
///   r = log[omega^2 u^2 + (gamma u + v)^2] - 2 (gamma/omega) (phi - 2 pi n).
double r_underdamped(const OscParams& params, double u, double v, long long sheet = 0,
                     Eigen::Index axis = 0);

/// The companion constant r' = e^r. At gamma = 0 the energy is r'/2.
double r_prime_underdamped(const OscParams& params, double u, double v, long long sheet = 0,
                           Eigen::Index axis = 0);

/// Overdamped constant of motion
///   r = -(zeta+gamma) log|zeta u + (gamma u + v)| - (zeta-gamma) log|zeta u - (gamma u + v)|
/// (additive constant 2 zeta log 2 zeta dropped).
double r_overdamped(const OscParams& params, double u, double v, Eigen::Index axis = 0);

/// Critically damped constant of motion  r = log|gamma u + v| + gamma u / (gamma u + v).
double r_critical(const OscParams& params, double u, double v, Eigen::Index axis = 0);

/// Integrating factor rho = 1 / [(omega0^2 - gamma^2) u^2 + (gamma u + v)^2]
/// making rho [(omega0^2 u + 2 gamma v) du + v dv] exact.
double integrating_factor(const OscParams& params, double u, double v, Eigen::Index axis = 0);

/// Time-explicit constant r' = (1/2) [(omega0^2 - gamma^2) u^2 + (gamma u + v)^2] e^{2 gamma t},
/// valid in all three regimes. Reduces to the energy at gamma = 0.
double r_alternative(const OscParams& params, double u, double v, double t, Eigen::Index axis = 0);

/// Quadrant of the overdamped plane by signs of (u~, v~); the natural
/// boundaries are the lines zeta u +- (gamma u + v) = 0.
enum class RegionQuadrant { PlusPlus, PlusMinus, MinusPlus, MinusMinus };

std::string to_string(RegionQuadrant q);

/// Decoupling coordinates u~ = [(gamma+zeta) u + v]/(2 zeta),
/// v~ = [(zeta-gamma) u - v]/(2 zeta) of the overdamped axis.
std::pair<double, double> region_coords(const OscParams& params, double u, double v,
                                        Eigen::Index axis = 0);

/// Inverse of region_coords: the (u, v) state with the given (u~, v~).
std::pair<double, double> state_from_region_coords(const OscParams& params, double u_tilde,
                                                   double v_tilde, Eigen::Index axis = 0);

RegionQuadrant region(const OscParams& params, double u, double v, Eigen::Index axis = 0);

/// Per-sample values of the regime's constant of motion along a 1D
/// trajectory, with sheet tracking applied in the underdamped case.
/// Requires dt * omega < pi/2 when unwrapping is involved.
std::vector<double> r_series(const OscParams& params, const Trajectory& traj);

/// Sheet-tracked phases along a 1D underdamped trajectory.
std::vector<UnwrappedPhase> phase_series(const OscParams& params, const Trajectory& traj,
                                         Eigen::Index axis = 0);

}  // namespace dho
