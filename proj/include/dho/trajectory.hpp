#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dho/oscillator.hpp"
#include "dho/types.hpp"

namespace dho {

/// Uniformly sampled phase-space time series. Rows of u/v are samples,
/// columns are axes. Trajectories loaded from CSV carry no params.
struct Trajectory {
    double dt = 0.0;
    Vec t;
    Mat u;
    Mat v;
    std::optional<OscParams> params;

    Eigen::Index n_samples() const { return t.size(); }
    Eigen::Index dim() const { return u.cols(); }
    State state(Eigen::Index i) const { return {u.row(i).transpose(), v.row(i).transpose()}; }
};

/// Optional additive Gaussian noise applied to sampled states.
struct NoiseSpec {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

Trajectory sample_exact(const OscParams& params, const Vec& u0, const Vec& v0, double dt,
                        int n_steps, const NoiseSpec& noise = {});

/// Classical fixed-step RK4 on du/dt = v, dv/dt = -omega0^2 u - 2 gamma v,
/// used to cross-validate the closed forms.
Trajectory integrate_rk4(const OscParams& params, const Vec& u0, const Vec& v0, double dt,
                         int n_steps);

/// Finite-step updates Delta u = u(t + eps) - u(t) over eps = stride * dt.
/// Time is dropped from the rows; the dynamics are autonomous.
struct DeltaDataset {
    double eps = 0.0;
    Mat u;
    Mat v;
    Mat du;
    Mat dv;

    Eigen::Index n_rows() const { return u.rows(); }
    Eigen::Index dim() const { return u.cols(); }
};

DeltaDataset build_delta_dataset(const Trajectory& traj, int stride);

/// CSV persistence. Header `t,u1,v1[,u2,v2,...]`, one row per sample,
/// floats written with the shortest representation that round-trips binary64.
void write_csv(const Trajectory& traj, const std::string& path);
Trajectory read_csv(const std::string& path);

/// Simulation config consumed by the CLI (JSON keys: omega0, gamma, u0, v0,
/// dt, n_steps, optional noise_sigma, seed).
struct SimConfig {
    Vec omega0;
    double gamma = 0.0;
    Vec u0;
    Vec v0;
    double dt = 0.0;
    int n_steps = 0;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

SimConfig load_sim_config(const std::string& path);
Trajectory simulate(const SimConfig& cfg);

}  // namespace dho
