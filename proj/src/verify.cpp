#include "dho/verify.hpp"

#include <cmath>
#include <stdexcept>

#include "dho/invariants1d.hpp"

namespace dho {

ConstancyReport constancy(const std::vector<double>& values, std::optional<double> tolerance) {
    if (values.size() < 2)
        throw std::invalid_argument("constancy: need at least 2 values, got " +
                                    std::to_string(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("constancy: non-finite value at index " + std::to_string(i));

    ConstancyReport report;
    report.n_samples = static_cast<Eigen::Index>(values.size());
    double sum = 0.0, lo = values[0], hi = values[0];
    for (double x : values) {
        sum += x;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    report.mean = sum / static_cast<double>(values.size());
    for (double x : values)
        report.max_abs_deviation = std::max(report.max_abs_deviation, std::abs(x - report.mean));
    report.relative_spread = (hi == lo) ? 0.0 : (hi - lo) / std::abs(report.mean);

    if (tolerance) {
        const double scale = std::abs(report.mean) > 0.0 ? std::abs(report.mean) : 1.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (std::abs(values[i] - report.mean) / scale > *tolerance) {
                report.first_violation_index = static_cast<Eigen::Index>(i);
                break;
            }
        }
    }
    return report;
}

nlohmann::json to_json(const ConstancyReport& report) {
    nlohmann::json j{{"n_samples", report.n_samples},
                     {"mean", report.mean},
                     {"max_abs_deviation", report.max_abs_deviation},
                     {"relative_spread", report.relative_spread}};
    if (report.first_violation_index)
        j["first_violation_index"] = *report.first_violation_index;
    else
        j["first_violation_index"] = nullptr;
    return j;
}

namespace {

double eval_checked(const StateFn& f, const State& s, const char* which) {
    double val = 0.0;
    try {
        val = f(s);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("poisson_bracket: ") + which +
                                 " failed inside the stencil: " + e.what());
    }
    if (!std::isfinite(val))
        throw std::runtime_error(std::string("poisson_bracket: ") + which +
                                 " returned a non-finite value inside the stencil");
    return val;
}

}  // namespace

double poisson_bracket(const StateFn& f, const StateFn& g, const State& at, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("poisson_bracket: h must be > 0");
    const Eigen::Index n = at.dim();
    double acc = 0.0;
    State s = at;
    auto partial = [&](const StateFn& fn, const char* which, bool wrt_u, Eigen::Index k) {
        double& coord = wrt_u ? s.u(k) : s.v(k);
        const double saved = coord;
        coord = saved + h;
        const double hi = eval_checked(fn, s, which);
        coord = saved - h;
        const double lo = eval_checked(fn, s, which);
        coord = saved;
        return (hi - lo) / (2.0 * h);
    };
    for (Eigen::Index k = 0; k < n; ++k) {
        const double fu = partial(f, "f", true, k);
        const double fv = partial(f, "f", false, k);
        const double gu = partial(g, "g", true, k);
        const double gv = partial(g, "g", false, k);
        acc += fu * gv - fv * gu;
    }
    return acc;
}

EnergyBudgetReport energy_budget(const Trajectory& traj, const OscParams& params) {
    if (traj.dim() != params.dim())
        throw std::invalid_argument("energy_budget: trajectory dim must equal params dim");

    const Eigen::Index n = traj.n_samples();
    const double g = params.gamma();
    const Vec w0sq = params.omega0().array().square();
    const double freq_scale = std::max(params.omega0().maxCoeff(), g);

    EnergyBudgetReport report;
    report.energy.resize(n);
    report.work.resize(n);

    double w_acc = 0.0, prev_rate = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double energy = 0.0, residual = 0.0, scale = 0.0, rate = 0.0;
        for (Eigen::Index k = 0; k < traj.dim(); ++k) {
            const double u = traj.u(i, k), v = traj.v(i, k);
            const double vdot = -w0sq(k) * u - 2.0 * g * v;
            residual += w0sq(k) * u * v + v * vdot + 2.0 * g * v * v;
            energy += 0.5 * (w0sq(k) * u * u + v * v);
            scale += w0sq(k) * u * u + v * v;
            rate += 2.0 * g * v * v;
        }
        const double norm = scale * freq_scale;
        report.max_residual =
            std::max(report.max_residual, norm > 0.0 ? std::abs(residual) / norm : std::abs(residual));
        report.energy(i) = energy;
        if (i > 0) w_acc += 0.5 * (prev_rate + rate) * traj.dt;
        report.work(i) = w_acc;
        prev_rate = rate;
    }
    const double e0 = report.energy(0);
    for (Eigen::Index i = 0; i < n; ++i)
        report.ew_drift = std::max(report.ew_drift,
                                   std::abs(report.energy(i) + report.work(i) - e0) /
                                       (std::abs(e0) > 0.0 ? std::abs(e0) : 1.0));
    return report;
}

RhoFn scaled_integrating_factor(const OscParams& params, Eigen::Index axis) {
    // The printed constants absorb regime-dependent overall factors; scale
    // rho so the one-form integrates to dr of the printed closed form.
    const DerivedFreq df = derived_frequency(params, axis);
    double scale = 1.0;
    switch (df.regime) {
        case DampingRegime::Underdamped: scale = 2.0; break;
        case DampingRegime::Overdamped: scale = -2.0 * df.value; break;
        case DampingRegime::Critical: scale = 1.0; break;
    }
    const OscParams p = params;
    return [p, axis, scale](double u, double v) {
        return scale * integrating_factor(p, u, v, axis);
    };
}

namespace {

// Natural-boundary linear forms whose zero sets integration paths must not
// cross; empty in the underdamped case (origin handled separately).
std::vector<std::function<double(double, double)>> boundary_forms(const OscParams& params) {
    const DerivedFreq df = derived_frequency(params, 0);
    const double g = params.gamma();
    std::vector<std::function<double(double, double)>> forms;
    if (df.regime == DampingRegime::Overdamped) {
        const double z = df.value;
        forms.push_back([z, g](double u, double v) { return z * u + (g * u + v); });
        forms.push_back([z, g](double u, double v) { return z * u - (g * u + v); });
    } else if (df.regime == DampingRegime::Critical) {
        forms.push_back([g](double u, double v) { return g * u + v; });
    }
    return forms;
}

}  // namespace

double reconstruct_r_by_path_integral(const OscParams& params,
                                      const std::vector<Eigen::Vector2d>& path, const RhoFn& rho,
                                      double r0) {
    if (path.empty()) throw std::invalid_argument("reconstruct_r: empty path");
    if (params.dim() != 1) throw std::invalid_argument("reconstruct_r: expects 1D params");

    const double w0 = params.omega0(0);
    const double g = params.gamma();
    const auto forms = boundary_forms(params);
    const bool underdamped = classify_regime(params, 0) == DampingRegime::Underdamped;

    double total = r0;
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
        const Eigen::Vector2d a = path[s], b = path[s + 1];
        for (const auto& form : forms) {
            const double fa = form(a.x(), a.y()), fb = form(b.x(), b.y());
            if (fa == 0.0 || fb == 0.0 || (fa > 0.0) != (fb > 0.0))
                throw std::runtime_error("reconstruct_r: segment " + std::to_string(s) +
                                         " crosses a natural boundary");
        }
        if (underdamped) {
            // Reject segments passing through (or ending at) the origin.
            const Eigen::Vector2d d = b - a;
            const double len2 = d.squaredNorm();
            const double proj = len2 > 0.0 ? std::clamp(-a.dot(d) / len2, 0.0, 1.0) : 0.0;
            if ((a + proj * d).norm() < 1e-12)
                throw std::runtime_error("reconstruct_r: segment " + std::to_string(s) +
                                         " passes through the origin");
        }

        const double du = b.x() - a.x();
        const double dv = b.y() - a.y();
        auto integrand = [&](double tau) {
            const double u = a.x() + tau * du;
            const double v = a.y() + tau * dv;
            return rho(u, v) * ((w0 * w0 * u + 2.0 * g * v) * du + v * dv);
        };

        // Composite midpoint rule, doubling the panel count until stable.
        double prev = integrand(0.5);
        for (int n = 2;; n *= 2) {
            double acc = 0.0;
            const double width = 1.0 / static_cast<double>(n);
            for (int i = 0; i < n; ++i) acc += integrand((i + 0.5) * width);
            acc *= width;
            if (std::abs(acc - prev) < 1e-9) {
                prev = acc;
                break;
            }
            prev = acc;
            if (n > (1 << 22))
                throw std::runtime_error("reconstruct_r: quadrature failed to converge on segment " +
                                         std::to_string(s));
        }
        total += prev;
    }
    return total;
}

}  // namespace dho
