#include "dho/grid.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace dho {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate(const GridSpec& spec) {
    if (spec.nu < 2 || spec.nv < 2)
        throw std::invalid_argument("grid: resolution must be >= 2 on both axes");
    if (!(spec.u_min < spec.u_max) || !(spec.v_min < spec.v_max))
        throw std::invalid_argument("grid: window min must be < max on both axes");
    if (spec.clamp_threshold && !(*spec.clamp_threshold > 0.0))
        throw std::invalid_argument("grid: clamp threshold must be > 0");
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

}  // namespace

GridData evaluate_grid(const OscParams& params, const GridSpec& spec) {
    validate(spec);
    if (params.dim() != 1) throw std::invalid_argument("grid: expects 1D params");

    const DerivedFreq df = derived_frequency(params, 0);
    const double g = params.gamma();

    double clamp = 0.0;
    switch (df.regime) {
        case DampingRegime::Underdamped: clamp = spec.clamp_threshold.value_or(0.0); break;
        case DampingRegime::Overdamped: clamp = spec.clamp_threshold.value_or(0.001); break;
        case DampingRegime::Critical: clamp = spec.clamp_threshold.value_or(0.01); break;
    }

    auto cell = [&](double u, double v) -> double {
        const double w = g * u + v;
        double r = 0.0;
        switch (df.regime) {
            case DampingRegime::Underdamped: {
                const double omega = df.value;
                const double sq = std::max(omega * omega * u * u + w * w, clamp * clamp);
                const double phi = std::atan2(w, omega * u);
                r = std::log(sq) - 2.0 * (g / omega) * (phi - kTwoPi * static_cast<double>(spec.sheet));
                break;
            }
            case DampingRegime::Overdamped: {
                const double zeta = df.value;
                const double plus = std::max(std::abs(zeta * u + w), clamp);
                const double minus = std::max(std::abs(zeta * u - w), clamp);
                r = -(zeta + g) * std::log(plus) - (zeta - g) * std::log(minus);
                break;
            }
            case DampingRegime::Critical: {
                const double mag = std::max(std::abs(w), clamp);
                const double wc = (w < 0.0 ? -mag : mag);
                r = std::log(mag) + g * u / wc;
                break;
            }
        }
        return spec.transform == GridTransform::Exp ? std::exp(r) : r;
    };

    GridData grid;
    grid.u = Vec::LinSpaced(spec.nu, spec.u_min, spec.u_max);
    grid.v = Vec::LinSpaced(spec.nv, spec.v_min, spec.v_max);
    grid.value.resize(spec.nv, spec.nu);
    for (Eigen::Index iv = 0; iv < spec.nv; ++iv)
        for (Eigen::Index iu = 0; iu < spec.nu; ++iu)
            grid.value(iv, iu) = cell(grid.u(iu), grid.v(iv));
    return grid;
}

void write_grid_csv(const GridData& grid, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_grid_csv: cannot open '" + path + "'");
    out << "u,v,value\n";
    for (Eigen::Index iv = 0; iv < grid.v.size(); ++iv)
        for (Eigen::Index iu = 0; iu < grid.u.size(); ++iu)
            out << format_double(grid.u(iu)) << "," << format_double(grid.v(iv)) << ","
                << format_double(grid.value(iv, iu)) << "\n";
    if (!out) throw std::runtime_error("write_grid_csv: write failed for '" + path + "'");
}

double interpolate(const GridData& grid, double u, double v) {
    const auto locate = [](const Vec& axis, double x) -> std::pair<Eigen::Index, double> {
        if (x < axis(0) || x > axis(axis.size() - 1))
            throw std::domain_error("interpolate: point outside the grid window");
        const double step = axis(1) - axis(0);
        Eigen::Index i = static_cast<Eigen::Index>((x - axis(0)) / step);
        i = std::min(i, axis.size() - 2);
        return {i, (x - axis(i)) / step};
    };
    const auto [iu, fu] = locate(grid.u, u);
    const auto [iv, fv] = locate(grid.v, v);
    return (1.0 - fv) * ((1.0 - fu) * grid.value(iv, iu) + fu * grid.value(iv, iu + 1)) +
           fv * ((1.0 - fu) * grid.value(iv + 1, iu) + fu * grid.value(iv + 1, iu + 1));
}

}  // namespace dho
