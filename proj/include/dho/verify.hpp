#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "dho/oscillator.hpp"
#include "dho/trajectory.hpp"
#include "dho/types.hpp"

namespace dho {

/// Summary of how constant a sampled invariant actually is.
struct ConstancyReport {
    Eigen::Index n_samples = 0;
    double mean = 0.0;
    double max_abs_deviation = 0.0;
    double relative_spread = 0.0;  // (max - min) / |mean|, 0 when max == min
    std::optional<Eigen::Index> first_violation_index;
};

ConstancyReport constancy(const std::vector<double>& values,
                          std::optional<double> tolerance = std::nullopt);

nlohmann::json to_json(const ConstancyReport& report);

using StateFn = std::function<double(const State&)>;

/// Central-difference Poisson bracket
///   {f, g} = sum_k (df/du_k dg/dv_k - df/dv_k dg/du_k)
/// with step h; f and g must be evaluable across the whole stencil.
double poisson_bracket(const StateFn& f, const StateFn& g, const State& at, double h = 1e-5);

/// On-shell energy budget dE + dW = 0: the per-sample residual
/// sum_k [omega_k0^2 u_k v_k + v_k vdot_k + 2 gamma v_k^2] is the algebraic
/// zero of the model equations. W accumulates dW = 2 gamma |v|^2 dt by the
/// trapezoid rule.
struct EnergyBudgetReport {
    double max_residual = 0.0;  // normalized by state scale
    Vec energy;                 // E per sample
    Vec work;                   // accumulated W per sample
    double ew_drift = 0.0;      // max |E + W - E_0| / |E_0|
};

EnergyBudgetReport energy_budget(const Trajectory& traj, const OscParams& params);

using RhoFn = std::function<double(double u, double v)>;

/// Integrating factor scaled so that rho [(omega0^2 u + 2 gamma v) du + v dv]
/// is exactly dr of the printed closed form for the params' regime.
RhoFn scaled_integrating_factor(const OscParams& params, Eigen::Index axis = 0);

/// Numerically integrate rho [(omega0^2 u + 2 gamma v) du + v dv] along a
/// polyline of 1D states, starting from r0. Adaptive midpoint quadrature,
/// subdividing until successive estimates differ by < 1e-9 per segment.
/// Paths must not cross a natural boundary.
double reconstruct_r_by_path_integral(const OscParams& params,
                                      const std::vector<Eigen::Vector2d>& path, const RhoFn& rho,
                                      double r0 = 0.0);

}  // namespace dho
