#pragma once

#include <span>
#include <vector>

#include "fpeit/common.hpp"

namespace fpeit {

enum class Quadrature {
  trapezoid,  // composite trapezoid, second order
  hermite,    // trapezoid plus cubic-Hermite end corrections, fourth order on smooth data
};

// Running integral I_s = \int_{t_0}^{t_s} f(t) dt of nodal samples f_s; I_0 = 0.
//
// The Hermite rule integrates the cubic Hermite interpolant on each interval,
// with nodal derivatives from three-point differences (one-sided at the ends).
std::vector<Complex> cumulative_integral(std::span<const Complex> f, std::span<const double> t,
                                         Quadrature rule);

}  // namespace fpeit
