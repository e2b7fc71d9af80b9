// Command-line front end: simulate trajectories, fit the update models,
// evaluate constants of motion, run verification checks, and emit
// phase-plane grids of the 1D constants.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dho/fjet.hpp"
#include "dho/grid.hpp"
#include "dho/invariants1d.hpp"
#include "dho/oscillator.hpp"
#include "dho/series.hpp"
#include "dho/trajectory.hpp"
#include "dho/verify.hpp"

namespace {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::vector<int> parse_strides(const std::vector<std::string>& tokens) {
    std::vector<int> strides;
    for (const auto& tok : tokens) {
        const auto dash = tok.find('-', 1);
        if (dash != std::string::npos) {
            const int lo = std::stoi(tok.substr(0, dash));
            const int hi = std::stoi(tok.substr(dash + 1));
            if (lo < 1 || hi < lo) throw std::invalid_argument("bad stride range '" + tok + "'");
            for (int s = lo; s <= hi; ++s) strides.push_back(s);
        } else {
            strides.push_back(std::stoi(tok));
        }
    }
    return strides;
}

dho::OscParams params_from_flags(const std::vector<double>& omega0, double gamma) {
    if (omega0.empty()) throw std::invalid_argument("--omega0 is required");
    dho::Vec w(static_cast<Eigen::Index>(omega0.size()));
    for (std::size_t i = 0; i < omega0.size(); ++i) w(static_cast<Eigen::Index>(i)) = omega0[i];
    return dho::OscParams(w, gamma);
}

void write_series_csv(const dho::Trajectory& traj, const dho::InvariantSeries& series,
                      const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "'");
    out << "t";
    for (const auto& col : series.columns) out << "," << col;
    out << "\n";
    for (Eigen::Index i = 0; i < traj.n_samples(); ++i) {
        out << format_double(traj.t(i));
        for (Eigen::Index c = 0; c < series.values.cols(); ++c)
            out << "," << format_double(series.values(i, c));
        out << "\n";
    }
}

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 std::optional<std::uint64_t> seed) {
    dho::SimConfig cfg = dho::load_sim_config(config_path);
    if (seed) cfg.seed = *seed;
    const dho::OscParams params(cfg.omega0, cfg.gamma);
    const dho::Trajectory traj = dho::simulate(cfg);
    dho::write_csv(traj, out_path);
    for (Eigen::Index k = 0; k < params.dim(); ++k)
        std::cout << "axis " << (k + 1) << ": " << dho::to_string(dho::classify_regime(params, k))
                  << "\n";
    std::cout << "wrote " << traj.n_samples() << " samples to " << out_path << "\n";
    return 0;
}

int cmd_fit(const std::string& traj_path, const std::vector<std::string>& stride_tokens,
            const std::string& out_path) {
    const std::vector<int> strides = parse_strides(stride_tokens);
    if (strides.size() < 3)
        throw std::invalid_argument("fit: need at least 3 strides, got " +
                                    std::to_string(strides.size()));
    const dho::Trajectory traj = dho::read_csv(traj_path);
    const auto models = dho::fit_over_strides(traj, strides);
    const auto estimate = dho::extrapolate_to_zero(models);
    const nlohmann::json report = dho::fit_report_json(models, estimate);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open '" + out_path + "'");
    out << report.dump(2) << "\n";
    for (Eigen::Index k = 0; k < estimate.omega0_sq_hat.size(); ++k)
        std::cout << "axis " << (k + 1) << ": omega0_sq=" << format_double(estimate.omega0_sq_hat(k))
                  << " two_gamma=" << format_double(estimate.two_gamma_hat(k))
                  << " h1_v=" << format_double(estimate.h1_v_check(k)) << "\n";
    if (estimate.flagged) std::cout << "warning: recovered omega0_sq not positive\n";
    return 0;
}

int cmd_invariant(const std::string& traj_path, const std::string& kind_name,
                  const std::vector<double>& omega0, double gamma, int a, int b, double omega_bar,
                  const std::string& out_path) {
    const dho::Trajectory traj = dho::read_csv(traj_path);
    const dho::OscParams params = params_from_flags(omega0, gamma);
    const dho::InvariantKind kind = dho::invariant_kind_from_string(kind_name);
    std::optional<dho::CommensurateArgs> comm;
    if (kind == dho::InvariantKind::Comm) {
        if (a < 1 || b < 1 || !(omega_bar > 0.0))
            throw std::invalid_argument("kind 'comm' requires --a, --b and --omega-bar");
        comm = dho::CommensurateArgs{a, b, omega_bar};
    }
    const dho::InvariantSeries series = dho::invariant_series(params, traj, kind, comm);
    write_series_csv(traj, series, out_path);
    for (Eigen::Index c = 0; c < series.values.cols(); ++c) {
        std::vector<double> col(series.values.col(c).data(),
                                series.values.col(c).data() + series.values.rows());
        const dho::ConstancyReport rep = dho::constancy(col);
        std::cout << "constancy " << series.columns[static_cast<std::size_t>(c)]
                  << " n=" << rep.n_samples << " mean=" << format_double(rep.mean)
                  << " max_abs_dev=" << format_double(rep.max_abs_deviation)
                  << " relative_spread=" << format_double(rep.relative_spread) << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& traj_path, const std::vector<double>& omega0, double gamma,
               std::uint64_t seed, const std::string& out_path) {
    const dho::Trajectory traj = dho::read_csv(traj_path);
    const dho::OscParams params = params_from_flags(omega0, gamma);
    nlohmann::json report;
    bool ok = true;

    const auto budget = dho::energy_budget(traj, params);
    const bool budget_ok = budget.max_residual < 1e-12;
    report["energy_budget"] = {{"max_residual", budget.max_residual},
                               {"ew_drift", budget.ew_drift},
                               {"pass", budget_ok}};
    ok = ok && budget_ok;

    if (params.dim() == 1) {
        dho::InvariantKind kind = dho::InvariantKind::Under1D;
        switch (dho::classify_regime(params, 0)) {
            case dho::DampingRegime::Underdamped: kind = dho::InvariantKind::Under1D; break;
            case dho::DampingRegime::Overdamped: kind = dho::InvariantKind::Over1D; break;
            case dho::DampingRegime::Critical: kind = dho::InvariantKind::Crit1D; break;
        }
        const auto series = dho::invariant_series(params, traj, kind);
        std::vector<double> col(series.values.col(0).data(),
                                series.values.col(0).data() + series.values.rows());
        const auto rep = dho::constancy(col);
        const bool const_ok = rep.relative_spread < 1e-9;
        report["constancy"] = dho::to_json(rep);
        report["constancy"]["kind"] = dho::to_string(kind);
        report["constancy"]["pass"] = const_ok;
        ok = ok && const_ok;

        // Mixed-partial exactness of rho[(w0^2 u + 2 g v) du + v dv] at
        // random states away from the singular set.
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> coord(-2.0, 2.0);
        const double w0 = params.omega0(0);
        const double h = 1e-5;
        double worst = 0.0;
        int kept = 0;
        while (kept < 100) {
            const double u = coord(rng), v = coord(rng);
            const double denom = (w0 * w0 - gamma * gamma) * u * u + (gamma * u + v) * (gamma * u + v);
            if (std::abs(denom) < 0.75) continue;
            ++kept;
            auto rho_m = [&](double uu, double vv) {
                return dho::integrating_factor(params, uu, vv) * (w0 * w0 * uu + 2.0 * gamma * vv);
            };
            auto rho_n = [&](double uu, double vv) {
                return dho::integrating_factor(params, uu, vv) * vv;
            };
            const double d_dv = (rho_m(u, v + h) - rho_m(u, v - h)) / (2.0 * h);
            const double d_du = (rho_n(u + h, v) - rho_n(u - h, v)) / (2.0 * h);
            worst = std::max(worst, std::abs(d_dv - d_du));
        }
        const bool exact_ok = worst < 1e-8;
        report["integrating_factor_exactness"] = {{"max_mixed_partial_residual", worst},
                                                  {"pass", exact_ok}};
        ok = ok && exact_ok;
    }

    report["pass"] = ok;
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open '" + out_path + "'");
        out << text;
        std::cout << (ok ? "verify: pass" : "verify: fail") << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_grid(const std::string& kind_name, const std::vector<double>& omega0, double gamma,
             long long sheet, const std::string& transform, std::optional<double> clamp,
             const std::vector<double>& window, const std::vector<int>& res,
             const std::string& out_path) {
    const dho::OscParams params = params_from_flags(omega0, gamma);

    const dho::DampingRegime regime = dho::classify_regime(params, 0);
    const dho::InvariantKind kind = dho::invariant_kind_from_string(kind_name);
    const bool kind_matches =
        (kind == dho::InvariantKind::Under1D && regime == dho::DampingRegime::Underdamped) ||
        (kind == dho::InvariantKind::Over1D && regime == dho::DampingRegime::Overdamped) ||
        (kind == dho::InvariantKind::Crit1D && regime == dho::DampingRegime::Critical);
    if (!kind_matches)
        throw std::invalid_argument("grid kind '" + kind_name + "' does not match the " +
                                    dho::to_string(regime) + " regime of the given params");

    dho::GridSpec spec;
    if (!window.empty()) {
        if (window.size() != 4)
            throw std::invalid_argument("--window expects umin,umax,vmin,vmax");
        spec.u_min = window[0];
        spec.u_max = window[1];
        spec.v_min = window[2];
        spec.v_max = window[3];
    }
    if (!res.empty()) {
        spec.nu = res[0];
        spec.nv = res.size() > 1 ? res[1] : res[0];
    }
    spec.clamp_threshold = clamp;
    spec.sheet = sheet;
    if (transform == "exp")
        spec.transform = dho::GridTransform::Exp;
    else if (transform != "identity")
        throw std::invalid_argument("--transform must be 'identity' or 'exp'");

    const dho::GridData grid = dho::evaluate_grid(params, spec);
    dho::write_grid_csv(grid, out_path);
    std::cout << "wrote " << spec.nu << "x" << spec.nv << " grid to " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"damped harmonic oscillator: trajectories, model fits and constants of motion"};
    app.require_subcommand(1);

    std::string config_path, traj_path, out_path, kind, transform = "identity";
    std::vector<std::string> stride_tokens;
    std::vector<double> omega0, window;
    std::vector<int> res;
    double gamma = 0.0, omega_bar = 0.0;
    int comm_a = 0, comm_b = 0;
    long long sheet = 0;
    std::optional<double> clamp;
    std::optional<std::uint64_t> seed_opt;
    std::uint64_t verify_seed = 12345;

    auto* sim = app.add_subcommand("simulate", "sample the exact solution into a trajectory CSV");
    sim->add_option("--config", config_path, "config JSON path")->required();
    sim->add_option("--out", out_path, "output trajectory CSV")->required();
    sim->add_option("--seed", seed_opt, "override the config noise seed");

    auto* fit = app.add_subcommand("fit", "fit update models over strides and extrapolate to eps=0");
    fit->add_option("--traj", traj_path, "trajectory CSV")->required();
    fit->add_option("--strides", stride_tokens, "stride list, e.g. 1,2,3 or 1-10")
        ->required()
        ->delimiter(',');
    fit->add_option("--out", out_path, "output report JSON")->required();

    auto* inv = app.add_subcommand("invariant", "evaluate a constant of motion along a trajectory");
    inv->add_option("--traj", traj_path, "trajectory CSV")->required();
    inv->add_option("--kind", kind,
                    "one of under1d, over1d, crit1d, ralt, cr, ci, ca, cb, comm, gam, wedge")
        ->required();
    inv->add_option("--omega0", omega0, "natural frequency per axis")->required()->delimiter(',');
    inv->add_option("--gamma", gamma, "damping coefficient")->required();
    inv->add_option("--a", comm_a, "commensurate integer a");
    inv->add_option("--b", comm_b, "commensurate integer b");
    inv->add_option("--omega-bar", omega_bar, "commensurate base frequency");
    inv->add_option("--out", out_path, "output CSV of per-sample values")->required();

    auto* ver = app.add_subcommand("verify", "run numerical verification checks on a trajectory");
    ver->add_option("--traj", traj_path, "trajectory CSV")->required();
    ver->add_option("--omega0", omega0, "natural frequency per axis")->required()->delimiter(',');
    ver->add_option("--gamma", gamma, "damping coefficient")->required();
    ver->add_option("--seed", verify_seed, "seed for the random verification states");
    ver->add_option("--out", out_path, "report JSON path (stdout when omitted)");

    auto* grd = app.add_subcommand("grid", "emit a phase-plane grid CSV of the 1D constant");
    grd->add_option("--kind", kind, "one of under1d, over1d, crit1d")->required();
    grd->add_option("--omega0", omega0, "natural frequency")->required()->delimiter(',');
    grd->add_option("--gamma", gamma, "damping coefficient")->required();
    grd->add_option("--sheet", sheet, "Riemann sheet (underdamped)");
    grd->add_option("--transform", transform, "identity or exp");
    grd->add_option("--clamp", clamp, "singularity clamp threshold");
    grd->add_option("--window", window, "umin,umax,vmin,vmax (default -5,5,-5,5)")->delimiter(',');
    grd->add_option("--res", res, "nu[,nv] (default 500)")->delimiter(',');
    grd->add_option("--out", out_path, "output grid CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(config_path, out_path, seed_opt);
        if (fit->parsed()) return cmd_fit(traj_path, stride_tokens, out_path);
        if (inv->parsed())
            return cmd_invariant(traj_path, kind, omega0, gamma, comm_a, comm_b, omega_bar, out_path);
        if (ver->parsed()) return cmd_verify(traj_path, omega0, gamma, verify_seed, out_path);
        if (grd->parsed())
            return cmd_grid(kind, omega0, gamma, sheet, transform, clamp, window, res, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
