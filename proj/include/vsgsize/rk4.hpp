#pragma once

#include <Eigen/Core>

namespace vsgsize {

/// One classical fourth-order Runge-Kutta step of dx/dt = rhs(x) for any Eigen
/// column vector. `rhs` must return something assignable to `Vector`.
template <typename Vector, typename Rhs>
Vector step_rk4(const Eigen::MatrixBase<Vector>& x, typename Vector::Scalar dt, Rhs&& rhs) {
    using Scalar = typename Vector::Scalar;
    const Scalar half = dt / Scalar(2);
    const Vector k1 = rhs(x.derived());
    const Vector k2 = rhs(Vector(x + half * k1));
    const Vector k3 = rhs(Vector(x + half * k2));
    const Vector k4 = rhs(Vector(x + dt * k3));
    return x + (dt / Scalar(6)) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
}

}  // namespace vsgsize
