#include "dho/series.hpp"

#include <stdexcept>

#include "dho/invariants1d.hpp"
#include "dho/invariants_nd.hpp"

namespace dho {

InvariantKind invariant_kind_from_string(const std::string& name) {
    if (name == "under1d") return InvariantKind::Under1D;
    if (name == "over1d") return InvariantKind::Over1D;
    if (name == "crit1d") return InvariantKind::Crit1D;
    if (name == "ralt") return InvariantKind::RAlt;
    if (name == "cr") return InvariantKind::CR;
    if (name == "ci") return InvariantKind::CI;
    if (name == "ca") return InvariantKind::CA;
    if (name == "cb") return InvariantKind::CB;
    if (name == "comm") return InvariantKind::Comm;
    if (name == "gam") return InvariantKind::GAM;
    if (name == "wedge") return InvariantKind::Wedge;
    throw std::invalid_argument("unknown invariant kind '" + name + "'");
}

std::string to_string(InvariantKind kind) {
    switch (kind) {
        case InvariantKind::Under1D: return "under1d";
        case InvariantKind::Over1D: return "over1d";
        case InvariantKind::Crit1D: return "crit1d";
        case InvariantKind::RAlt: return "ralt";
        case InvariantKind::CR: return "cr";
        case InvariantKind::CI: return "ci";
        case InvariantKind::CA: return "ca";
        case InvariantKind::CB: return "cb";
        case InvariantKind::Comm: return "comm";
        case InvariantKind::GAM: return "gam";
        case InvariantKind::Wedge: return "wedge";
    }
    return "?";
}

namespace {

void require_dim(const OscParams& params, const Trajectory& traj, Eigen::Index dim,
                 InvariantKind kind) {
    if (params.dim() != dim || traj.dim() != dim)
        throw std::invalid_argument("invariant kind '" + to_string(kind) + "' requires dim " +
                                    std::to_string(dim) + ", got params dim " +
                                    std::to_string(params.dim()) + " and trajectory dim " +
                                    std::to_string(traj.dim()));
}

void require_regime(const OscParams& params, DampingRegime want, InvariantKind kind) {
    const DampingRegime got = classify_regime(params, 0);
    if (got != want)
        throw std::invalid_argument("invariant kind '" + to_string(kind) + "' requires " +
                                    to_string(want) + " regime, got " + to_string(got));
}

void require_undamped(const OscParams& params, InvariantKind kind) {
    if (params.gamma() != 0.0)
        throw std::invalid_argument("invariant kind '" + to_string(kind) +
                                    "' requires gamma = 0, got gamma = " +
                                    std::to_string(params.gamma()));
}

}  // namespace

InvariantSeries invariant_series(const OscParams& params, const Trajectory& traj,
                                 InvariantKind kind, const std::optional<CommensurateArgs>& comm) {
    if (params.dim() != traj.dim())
        throw std::invalid_argument("invariant_series: params dim must equal trajectory dim");

    const Eigen::Index n = traj.n_samples();
    InvariantSeries series;

    auto single = [&](const char* name, auto&& fn) {
        series.columns = {name};
        series.values.resize(n, 1);
        for (Eigen::Index i = 0; i < n; ++i) series.values(i, 0) = fn(i);
    };

    switch (kind) {
        case InvariantKind::Under1D: {
            require_dim(params, traj, 1, kind);
            require_regime(params, DampingRegime::Underdamped, kind);
            const auto values = r_series(params, traj);
            single("r", [&](Eigen::Index i) { return values[static_cast<std::size_t>(i)]; });
            break;
        }
        case InvariantKind::Over1D: {
            require_dim(params, traj, 1, kind);
            require_regime(params, DampingRegime::Overdamped, kind);
            const auto values = r_series(params, traj);
            single("r", [&](Eigen::Index i) { return values[static_cast<std::size_t>(i)]; });
            break;
        }
        case InvariantKind::Crit1D: {
            require_dim(params, traj, 1, kind);
            require_regime(params, DampingRegime::Critical, kind);
            const auto values = r_series(params, traj);
            single("r", [&](Eigen::Index i) { return values[static_cast<std::size_t>(i)]; });
            break;
        }
        case InvariantKind::RAlt: {
            require_dim(params, traj, 1, kind);
            single("r_prime", [&](Eigen::Index i) {
                return r_alternative(params, traj.u(i, 0), traj.v(i, 0), traj.t(i));
            });
            break;
        }
        case InvariantKind::CR: {
            require_dim(params, traj, 2, kind);
            require_undamped(params, kind);
            const auto modes = mode_series(params, traj);
            single("c_r", [&](Eigen::Index i) { return c_r_undamped(modes[static_cast<std::size_t>(i)]); });
            break;
        }
        case InvariantKind::CI: {
            require_dim(params, traj, 2, kind);
            require_undamped(params, kind);
            const auto modes = mode_series(params, traj);
            single("c_i", [&](Eigen::Index i) { return c_i_undamped(modes[static_cast<std::size_t>(i)]); });
            break;
        }
        case InvariantKind::CA: {
            require_dim(params, traj, 2, kind);
            const auto modes = mode_series(params, traj);
            single("c_a", [&](Eigen::Index i) { return c_a_damped(modes[static_cast<std::size_t>(i)]); });
            break;
        }
        case InvariantKind::CB: {
            require_dim(params, traj, 2, kind);
            const auto modes = mode_series(params, traj);
            single("c_b", [&](Eigen::Index i) { return c_b_damped(modes[static_cast<std::size_t>(i)]); });
            break;
        }
        case InvariantKind::Comm: {
            require_dim(params, traj, 2, kind);
            if (!comm)
                throw std::invalid_argument("invariant kind 'comm' requires a, b and omega_bar");
            const auto modes = mode_series(params, traj);
            single("sin_c_over_omega_bar", [&](Eigen::Index i) {
                return commensurate_invariant(modes[static_cast<std::size_t>(i)], comm->a, comm->b,
                                              comm->omega_bar)
                    .phase_route;
            });
            break;
        }
        case InvariantKind::GAM: {
            require_dim(params, traj, 2, kind);
            require_undamped(params, kind);
            const auto modes = mode_series(params, traj);
            single("c_prime", [&](Eigen::Index i) {
                return generalized_angular_momentum(modes[static_cast<std::size_t>(i)]);
            });
            break;
        }
        case InvariantKind::Wedge: {
            if (params.dim() < 2 || traj.dim() < 2)
                throw std::invalid_argument("invariant kind 'wedge' requires dim >= 2");
            const auto modes = mode_series(params, traj);
            const Eigen::Index d = params.dim();
            for (Eigen::Index i = 0; i < d; ++i)
                for (Eigen::Index j = i + 1; j < d; ++j)
                    series.columns.push_back("c" + std::to_string(i + 1) + std::to_string(j + 1));
            series.values.resize(n, static_cast<Eigen::Index>(series.columns.size()));
            for (Eigen::Index s = 0; s < n; ++s) {
                const WedgeConstants w = wedge_constants(modes[static_cast<std::size_t>(s)]);
                Eigen::Index col = 0;
                for (Eigen::Index i = 0; i < d; ++i)
                    for (Eigen::Index j = i + 1; j < d; ++j) series.values(s, col++) = w(i, j);
            }
            break;
        }
    }
    return series;
}

}  // namespace dho
