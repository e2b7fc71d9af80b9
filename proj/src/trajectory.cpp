#include "dho/trajectory.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

namespace dho {

namespace {

// line_offset maps sample index to a CSV line number (header + 1-origin);
// zero when validating in-memory trajectories.
void check_spacing(const Trajectory& traj, Eigen::Index line_offset = 0) {
    const char* where = line_offset > 0 ? "line " : "sample ";
    for (Eigen::Index i = 0; i + 1 < traj.n_samples(); ++i) {
        const double gap = traj.t(i + 1) - traj.t(i);
        if (!(gap > 0.0))
            throw std::runtime_error("trajectory: timestamps must be strictly increasing at " +
                                     std::string(where) + std::to_string(i + 1 + line_offset));
        const double tol = 1e-12 * std::max(traj.dt, std::abs(traj.t(i + 1)));
        if (std::abs(gap - traj.dt) > tol)
            throw std::runtime_error("trajectory: non-uniform time step at " + std::string(where) +
                                     std::to_string(i + 1 + line_offset));
    }
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& field, std::size_t line_no) {
    double out = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last)
        throw std::runtime_error("csv parse error: bad number '" + field + "' at line " +
                                 std::to_string(line_no));
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

Trajectory sample_exact(const OscParams& params, const Vec& u0, const Vec& v0, double dt,
                        int n_steps, const NoiseSpec& noise) {
    if (!(dt > 0.0)) throw std::invalid_argument("sample_exact: dt must be > 0");
    if (n_steps < 1) throw std::invalid_argument("sample_exact: n_steps must be >= 1");

    const ExactSolution sol = exact_solution_from_initial(params, u0, v0);
    const Eigen::Index n = n_steps + 1;
    Trajectory traj;
    traj.dt = dt;
    traj.params = params;
    traj.t.resize(n);
    traj.u.resize(n, params.dim());
    traj.v.resize(n, params.dim());
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        const State s = evaluate_exact(sol, t);
        traj.t(i) = t;
        traj.u.row(i) = s.u.transpose();
        traj.v.row(i) = s.v.transpose();
    }
    if (noise.sigma > 0.0) {
        std::mt19937_64 rng(noise.seed);
        std::normal_distribution<double> gauss(0.0, noise.sigma);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index k = 0; k < params.dim(); ++k) {
                traj.u(i, k) += gauss(rng);
                traj.v(i, k) += gauss(rng);
            }
    }
    return traj;
}

Trajectory integrate_rk4(const OscParams& params, const Vec& u0, const Vec& v0, double dt,
                         int n_steps) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_rk4: dt must be > 0");
    if (n_steps < 0) throw std::invalid_argument("integrate_rk4: n_steps must be >= 0");
    if (u0.size() != params.dim() || v0.size() != params.dim())
        throw std::invalid_argument("integrate_rk4: u0/v0 length must equal dim");

    const Vec w0sq = params.omega0().array().square();
    const double g2 = 2.0 * params.gamma();
    auto accel = [&](const Vec& u, const Vec& v) -> Vec {
        return (-(w0sq.array() * u.array()) - g2 * v.array()).matrix();
    };

    const Eigen::Index n = n_steps + 1;
    Trajectory traj;
    traj.dt = dt;
    traj.params = params;
    traj.t.resize(n);
    traj.u.resize(n, params.dim());
    traj.v.resize(n, params.dim());

    Vec u = u0, v = v0;
    traj.t(0) = 0.0;
    traj.u.row(0) = u.transpose();
    traj.v.row(0) = v.transpose();
    for (int i = 1; i <= n_steps; ++i) {
        const Vec k1u = v, k1v = accel(u, v);
        const Vec k2u = v + 0.5 * dt * k1v, k2v = accel(u + 0.5 * dt * k1u, v + 0.5 * dt * k1v);
        const Vec k3u = v + 0.5 * dt * k2v, k3v = accel(u + 0.5 * dt * k2u, v + 0.5 * dt * k2v);
        const Vec k4u = v + dt * k3v, k4v = accel(u + dt * k3u, v + dt * k3v);
        u += dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        traj.t(i) = static_cast<double>(i) * dt;
        traj.u.row(i) = u.transpose();
        traj.v.row(i) = v.transpose();
    }
    return traj;
}

DeltaDataset build_delta_dataset(const Trajectory& traj, int stride) {
    if (stride < 1 || stride >= traj.n_samples())
        throw std::invalid_argument("build_delta_dataset: stride must be in [1, n_samples)");

    const Eigen::Index rows = traj.n_samples() - stride;
    DeltaDataset ds;
    ds.eps = static_cast<double>(stride) * traj.dt;
    ds.u = traj.u.topRows(rows);
    ds.v = traj.v.topRows(rows);
    ds.du = traj.u.bottomRows(rows) - traj.u.topRows(rows);
    ds.dv = traj.v.bottomRows(rows) - traj.v.topRows(rows);
    return ds;
}

void write_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open '" + path + "'");
    out << "t";
    for (Eigen::Index k = 0; k < traj.dim(); ++k)
        out << ",u" << (k + 1) << ",v" << (k + 1);
    out << "\n";
    for (Eigen::Index i = 0; i < traj.n_samples(); ++i) {
        out << format_double(traj.t(i));
        for (Eigen::Index k = 0; k < traj.dim(); ++k)
            out << "," << format_double(traj.u(i, k)) << "," << format_double(traj.v(i, k));
        out << "\n";
    }
    if (!out) throw std::runtime_error("write_csv: write failed for '" + path + "'");
}

Trajectory read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_csv: cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty file '" + path + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split_csv(line);
    if (header.size() < 3 || header[0] != "t" || header.size() % 2 == 0)
        throw std::runtime_error("read_csv: malformed header at line 1: '" + line + "'");
    const Eigen::Index dim = static_cast<Eigen::Index>((header.size() - 1) / 2);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const std::string uk = "u" + std::to_string(k + 1);
        const std::string vk = "v" + std::to_string(k + 1);
        if (header[static_cast<std::size_t>(2 * k + 1)] != uk ||
            header[static_cast<std::size_t>(2 * k + 2)] != vk)
            throw std::runtime_error("read_csv: malformed header at line 1: expected " + uk + "," +
                                     vk);
    }

    std::vector<double> ts;
    std::vector<std::vector<double>> us, vs;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != header.size())
            throw std::runtime_error("read_csv: ragged row at line " + std::to_string(line_no) +
                                     " (expected " + std::to_string(header.size()) + " fields)");
        ts.push_back(parse_double(fields[0], line_no));
        std::vector<double> ur(static_cast<std::size_t>(dim)), vr(static_cast<std::size_t>(dim));
        for (Eigen::Index k = 0; k < dim; ++k) {
            ur[static_cast<std::size_t>(k)] = parse_double(fields[static_cast<std::size_t>(2 * k + 1)], line_no);
            vr[static_cast<std::size_t>(k)] = parse_double(fields[static_cast<std::size_t>(2 * k + 2)], line_no);
        }
        us.push_back(std::move(ur));
        vs.push_back(std::move(vr));
    }
    if (ts.size() < 2) throw std::runtime_error("read_csv: need at least 2 samples in '" + path + "'");

    Trajectory traj;
    const Eigen::Index n = static_cast<Eigen::Index>(ts.size());
    traj.t.resize(n);
    traj.u.resize(n, dim);
    traj.v.resize(n, dim);
    for (Eigen::Index i = 0; i < n; ++i) {
        traj.t(i) = ts[static_cast<std::size_t>(i)];
        for (Eigen::Index k = 0; k < dim; ++k) {
            traj.u(i, k) = us[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            traj.v(i, k) = vs[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        }
    }
    traj.dt = traj.t(1) - traj.t(0);
    check_spacing(traj, 2);
    return traj;
}

SimConfig load_sim_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("config: invalid JSON in '" + path + "': " + e.what());
    }

    auto require = [&](const char* key) {
        if (!j.contains(key)) throw std::runtime_error(std::string("config: missing key '") + key + "'");
        return j.at(key);
    };
    auto to_vec = [](const nlohmann::json& arr, const char* key) {
        if (!arr.is_array() || arr.empty())
            throw std::runtime_error(std::string("config: '") + key + "' must be a non-empty array");
        Vec out(static_cast<Eigen::Index>(arr.size()));
        for (std::size_t i = 0; i < arr.size(); ++i) out(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
        return out;
    };

    SimConfig cfg;
    cfg.omega0 = to_vec(require("omega0"), "omega0");
    cfg.gamma = require("gamma").get<double>();
    cfg.u0 = to_vec(require("u0"), "u0");
    cfg.v0 = to_vec(require("v0"), "v0");
    cfg.dt = require("dt").get<double>();
    cfg.n_steps = require("n_steps").get<int>();
    cfg.noise_sigma = j.value("noise_sigma", 0.0);
    cfg.seed = j.value("seed", std::uint64_t{0});
    return cfg;
}

Trajectory simulate(const SimConfig& cfg) {
    const OscParams params(cfg.omega0, cfg.gamma);
    return sample_exact(params, cfg.u0, cfg.v0, cfg.dt, cfg.n_steps,
                        NoiseSpec{cfg.noise_sigma, cfg.seed});
}

}  // namespace dho
