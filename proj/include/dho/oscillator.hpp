#pragma once

#include <string>
#include <vector>

#include "dho/types.hpp"

namespace dho {

enum class DampingRegime { Underdamped, Overdamped, Critical };

std::string to_string(DampingRegime regime);

/// Relative half-width of the band around gamma == omega0 that is classified
/// as critically damped. Float inputs need a band; the critical closed forms
/// diverge when evaluated on the wrong branch.
inline constexpr double kCriticalBand = 1e-12;

/// Oscillator parameters: per-axis natural frequencies omega0 > 0 (rad/time)
/// and one damping coefficient gamma >= 0 (1/time) shared by all axes.
class OscParams {
public:
    OscParams(Vec omega0, double gamma);
    OscParams(double omega0, double gamma);

    const Vec& omega0() const { return omega0_; }
    double omega0(Eigen::Index axis) const { return omega0_(axis); }
    double gamma() const { return gamma_; }
    Eigen::Index dim() const { return omega0_.size(); }

private:
    Vec omega0_;
    double gamma_;
};

DampingRegime classify_regime(const OscParams& params, Eigen::Index axis = 0);

/// Regime-dependent derived frequency: omega = sqrt(omega0^2 - gamma^2) when
/// underdamped, zeta = sqrt(gamma^2 - omega0^2) when overdamped, 0 at the
/// critical point.
struct DerivedFreq {
    DampingRegime regime;
    double value;
};

DerivedFreq derived_frequency(const OscParams& params, Eigen::Index axis = 0);

/// Closed-form solution coefficients for one axis.
///
/// underdamped:  u = e^{-gamma t} [a cos(freq t) + b sin(freq t)]
/// overdamped:   u = a e^{(-gamma+freq) t} + b e^{(-gamma-freq) t}
/// critical:     u = (a + b t) e^{-gamma t}
///
/// For the underdamped case the equivalent amplitude/phase form
/// u = e^{-gamma t} amplitude cos(freq t - beta) is stored as well.
struct AxisSolution {
    DampingRegime regime;
    double omega0;
    double gamma;
    double freq;
    double a;
    double b;
    double amplitude = 0.0;
    double beta = 0.0;
};

struct ExactSolution {
    OscParams params;
    std::vector<AxisSolution> axes;
};

ExactSolution exact_solution_from_initial(const OscParams& params, const Vec& u0, const Vec& v0);

/// Evaluate the closed form at time t; the velocity is the analytic
/// derivative, never a finite difference.
State evaluate_exact(const ExactSolution& sol, double t);

}  // namespace dho
