#include "dho/oscillator.hpp"

#include <cmath>
#include <stdexcept>

namespace dho {

std::string to_string(DampingRegime regime) {
    switch (regime) {
        case DampingRegime::Underdamped: return "underdamped";
        case DampingRegime::Overdamped: return "overdamped";
        case DampingRegime::Critical: return "critical";
    }
    return "unknown";
}

OscParams::OscParams(Vec omega0, double gamma) : omega0_(std::move(omega0)), gamma_(gamma) {
    if (omega0_.size() < 1)
        throw std::invalid_argument("OscParams: dim must be >= 1");
    for (Eigen::Index k = 0; k < omega0_.size(); ++k) {
        if (!(omega0_(k) > 0.0) || !std::isfinite(omega0_(k)))
            throw std::invalid_argument("OscParams: omega0 must be > 0 on every axis");
    }
    if (!(gamma_ >= 0.0) || !std::isfinite(gamma_))
        throw std::invalid_argument("OscParams: gamma must be >= 0");
}

OscParams::OscParams(double omega0, double gamma) : OscParams(Vec::Constant(1, omega0), gamma) {}

DampingRegime classify_regime(const OscParams& params, Eigen::Index axis) {
    const double w0 = params.omega0(axis);
    const double g = params.gamma();
    if (std::abs(g - w0) <= kCriticalBand * w0) return DampingRegime::Critical;
    return g < w0 ? DampingRegime::Underdamped : DampingRegime::Overdamped;
}

DerivedFreq derived_frequency(const OscParams& params, Eigen::Index axis) {
    const double w0 = params.omega0(axis);
    const double g = params.gamma();
    switch (classify_regime(params, axis)) {
        case DampingRegime::Underdamped:
            return {DampingRegime::Underdamped, std::sqrt((w0 - g) * (w0 + g))};
        case DampingRegime::Overdamped:
            return {DampingRegime::Overdamped, std::sqrt((g - w0) * (g + w0))};
        case DampingRegime::Critical:
        default:
            return {DampingRegime::Critical, 0.0};
    }
}

ExactSolution exact_solution_from_initial(const OscParams& params, const Vec& u0, const Vec& v0) {
    if (u0.size() != params.dim() || v0.size() != params.dim())
        throw std::invalid_argument("exact_solution_from_initial: u0/v0 length must equal dim");

    ExactSolution sol{params, {}};
    sol.axes.reserve(static_cast<std::size_t>(params.dim()));
    const double g = params.gamma();
    for (Eigen::Index k = 0; k < params.dim(); ++k) {
        const DerivedFreq df = derived_frequency(params, k);
        AxisSolution ax;
        ax.regime = df.regime;
        ax.omega0 = params.omega0(k);
        ax.gamma = g;
        ax.freq = df.value;
        const double w = g * u0(k) + v0(k);
        switch (df.regime) {
            case DampingRegime::Underdamped:
                ax.a = u0(k);
                ax.b = w / df.value;
                ax.amplitude = std::hypot(ax.a, ax.b);
                ax.beta = std::atan2(w, df.value * u0(k));
                break;
            case DampingRegime::Overdamped:
                ax.a = (df.value * u0(k) + w) / (2.0 * df.value);
                ax.b = (df.value * u0(k) - w) / (2.0 * df.value);
                break;
            case DampingRegime::Critical:
                ax.a = u0(k);
                ax.b = w;
                break;
        }
        sol.axes.push_back(ax);
    }
    return sol;
}

State evaluate_exact(const ExactSolution& sol, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("evaluate_exact: t must be finite");
    const Eigen::Index n = sol.params.dim();
    State s{Vec(n), Vec(n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        const AxisSolution& ax = sol.axes[static_cast<std::size_t>(k)];
        const double g = ax.gamma;
        const double decay = std::exp(-g * t);
        switch (ax.regime) {
            case DampingRegime::Underdamped: {
                const double c = std::cos(ax.freq * t);
                const double sn = std::sin(ax.freq * t);
                s.u(k) = decay * (ax.a * c + ax.b * sn);
                s.v(k) = decay * ((-g * ax.a + ax.freq * ax.b) * c +
                                  (-g * ax.b - ax.freq * ax.a) * sn);
                break;
            }
            case DampingRegime::Overdamped: {
                const double ep = std::exp((-g + ax.freq) * t);
                const double em = std::exp((-g - ax.freq) * t);
                s.u(k) = ax.a * ep + ax.b * em;
                s.v(k) = ax.a * (-g + ax.freq) * ep + ax.b * (-g - ax.freq) * em;
                break;
            }
            case DampingRegime::Critical: {
                s.u(k) = (ax.a + ax.b * t) * decay;
                s.v(k) = (ax.b - g * ax.a - g * ax.b * t) * decay;
                break;
            }
        }
    }
    return s;
}

}  // namespace dho
