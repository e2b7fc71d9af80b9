#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dho/oscillator.hpp"
#include "dho/trajectory.hpp"
#include "dho/types.hpp"

namespace dho {

/// Named invariant kinds the CLI can evaluate along a trajectory.
enum class InvariantKind { Under1D, Over1D, Crit1D, RAlt, CR, CI, CA, CB, Comm, GAM, Wedge };

InvariantKind invariant_kind_from_string(const std::string& name);
std::string to_string(InvariantKind kind);

/// Extra arguments for the commensurate invariant.
struct CommensurateArgs {
    int a = 0;
    int b = 0;
    double omega_bar = 0.0;
};

/// Per-sample invariant values (one column per constant, e.g. the wedge
/// table's pairs) with sheet tracking applied.
struct InvariantSeries {
    std::vector<std::string> columns;
    Mat values;  // n_samples x n_columns
};

InvariantSeries invariant_series(const OscParams& params, const Trajectory& traj,
                                 InvariantKind kind,
                                 const std::optional<CommensurateArgs>& comm = std::nullopt);

}  // namespace dho
