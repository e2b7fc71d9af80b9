#pragma once

#include <optional>
#include <string>

#include "dho/oscillator.hpp"
#include "dho/types.hpp"

namespace dho {

enum class GridTransform { Identity, Exp };

/// Phase-plane evaluation window for the 1D constants. Clamping keeps the
/// logarithmic singularities plottable; defaults follow the damping regime
/// (0.001 overdamped, 0.01 critical, none underdamped).
struct GridSpec {
    double u_min = -5.0, u_max = 5.0;
    double v_min = -5.0, v_max = 5.0;
    int nu = 500, nv = 500;
    std::optional<double> clamp_threshold;
    long long sheet = 0;  // underdamped only
    GridTransform transform = GridTransform::Identity;
};

struct GridData {
    Vec u;      // nu axis values
    Vec v;      // nv axis values
    Mat value;  // nv x nu, value(iv, iu)
};

/// Evaluate the regime's constant of motion over the window.
GridData evaluate_grid(const OscParams& params, const GridSpec& spec);

/// Long-format CSV `u,v,value`, v-outer row ordering.
void write_grid_csv(const GridData& grid, const std::string& path);

/// Bilinear interpolation inside the window.
double interpolate(const GridData& grid, double u, double v);

}  // namespace dho
