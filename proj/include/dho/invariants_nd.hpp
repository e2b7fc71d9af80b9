#pragma once

#include <optional>
#include <vector>

#include "dho/invariants1d.hpp"
#include "dho/oscillator.hpp"
#include "dho/trajectory.hpp"
#include "dho/types.hpp"

namespace dho {

/// Per-axis quantities feeding every 2D/N-D constant: damped frequencies
/// omega_k, sheet-tracked phases phi_k, and the pseudo-energies
/// E~_k = (1/2)[(omega_k u_k)^2 + (gamma u_k + v_k)^2]. E~_k equals the axis
/// energy at gamma = 0 and decays as e^{-2 gamma t} otherwise.
struct ModeQuantities {
    Vec omega;    // damped frequency per axis
    Vec omega0;   // natural frequency per axis
    double gamma = 0.0;
    std::vector<UnwrappedPhase> phase;
    Vec pseudo_energy;
    State state;

    Eigen::Index dim() const { return omega.size(); }
    Vec unwrapped_phases() const;
};

/// Requires every axis underdamped (gamma = 0 included); phases are unwrapped
/// per axis against prev (pass nullptr at the first sample).
ModeQuantities mode_quantities(const OscParams& params, const State& state,
                               const std::vector<UnwrappedPhase>* prev = nullptr);

/// Sheet-tracked mode quantities along a trajectory.
/// Requires dt * max_k omega_k < pi/2.
std::vector<ModeQuantities> mode_series(const OscParams& params, const Trajectory& traj);

/// Undamped anisotropic constant
///   C_R = omega10 phi2 - omega20 phi1 - 2 pi (n2 omega10 - n1 omega20).
double c_r_undamped(const ModeQuantities& modes);

/// Undamped companion constant C_I = -omega20 log sqrt(2 E1) - omega10 log sqrt(2 E2).
double c_i_undamped(const ModeQuantities& modes);

/// Damped anisotropic constants C_A = gamma log(E~2 / E~1) and
/// C_B = omega1 phi2 - omega2 phi1 - 2 pi (n2 omega1 - n1 omega2).
double c_a_damped(const ModeQuantities& modes);
double c_b_damped(const ModeQuantities& modes);

/// sin(c/omega), cos(c/omega) of an isotropic constant, evaluated two ways:
/// from the phase difference and from the state polynomials
///   sin: omega (u1 v2 - u2 v1) / (2 sqrt(E~1 E~2))
///   cos: [omega^2 u1 u2 + (gamma u1 + v1)(gamma u2 + v2)] / (2 sqrt(E~1 E~2)).
/// The two routes agree pointwise, and (sin)^2 + (cos)^2 = 1 is the identity
/// 4 E~1 E~2 = [omega (u1 v2 - u2 v1)]^2 + [...]^2.
struct IsoProjections {
    double sin_phase;
    double cos_phase;
    double sin_poly;
    double cos_poly;
};

IsoProjections iso_projections(const ModeQuantities& modes, double c);

/// Commensurate invariant sin(C/omega_bar) for omega_1 = a omega_bar,
/// omega_2 = b omega_bar with coprime a, b. The polynomial route is the
/// printed closed form, available for (a,b) = (1,1) and (1,2).
struct CommensurateInvariant {
    double phase_route;
    std::optional<double> polynomial_route;
};

CommensurateInvariant commensurate_invariant(const ModeQuantities& modes, int a, int b,
                                             double omega_bar);

/// C' = (2/omega10) sqrt(E1 E2) sin Phi with Phi = (omega10 phi2 - omega20 phi1)/omega10.
/// Constant for every frequency ratio; equals the angular momentum
/// L = u1 v2 - u2 v1 at isotropy.
double generalized_angular_momentum(const ModeQuantities& modes);

/// Exterior product of two vectors: (a ^ b)(i,j) = a_i b_j - a_j b_i.
Mat wedge(const Vec& a, const Vec& b);

/// Antisymmetric table C(i,j) = omega_i phi_j - omega_j phi_i over unwrapped
/// phases; N(N-1)/2 independent constants. On shell it equals phi ^ phidot
/// with phidot_k = -omega_k.
struct WedgeConstants {
    Mat c;

    Eigen::Index dim() const { return c.rows(); }
    double operator()(Eigen::Index i, Eigen::Index j) const { return c(i, j); }
};

WedgeConstants wedge_constants(const ModeQuantities& modes);

std::vector<WedgeConstants> wedge_series(const OscParams& params, const Trajectory& traj);

}  // namespace dho
