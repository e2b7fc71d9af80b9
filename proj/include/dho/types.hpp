#pragma once

#include <Eigen/Core>

namespace dho {

template <class Scalar>
using vec_t = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using mat_t = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vec = vec_t<double>;
using Mat = mat_t<double>;

/// Phase-space point: position u and velocity v, one entry per axis.
struct State {
    Vec u;
    Vec v;

    State() = default;
    State(Vec u_, Vec v_) : u(std::move(u_)), v(std::move(v_)) {}
    State(double u1, double v1) : u(1), v(1) { u(0) = u1; v(0) = v1; }

    Eigen::Index dim() const { return u.size(); }
};

}  // namespace dho
