#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fpeit/conductivity.hpp"

namespace fpeit {

using LongField = std::function<long double(long double x, long double y)>;

/// Conductivity with a known solution of div(sigma grad u) = 0.
///
/// The closed forms are kept in long double so the difference oracle can run
/// at small h without drowning in round-off.
struct ExactCase {
  std::string name;
  ConductivityField sigma = ConductivityField::uniform();
  LongField sigma_exact;
  LongField u_exact;
  double parameter = 0.0;
  std::string notes;

  double u(double x, double y) const { return static_cast<double>(u_exact(x, y)); }
};

// sigma = (2 + cos wx)(2 + sin wy). u is the continuous branch on the closed
// disk. With `epsilon_fallback` the case is built at w - epsilon from the
// plain arctan(tan(.)) formulas instead, for cross-checking the limit w -> pi.
// Throws ValidationError unless 0 < w <= pi.
ExactCase sinusoidal_case(double omega, bool epsilon_fallback = false, double epsilon = 1e-6);

// sigma = ((x - beta)^2 + 0.1)^-1 (y^2 + 0.1)^-1,
// u = ((x - beta)^3 + y^3) / 3 + 0.1 (x - beta + y).
ExactCase lorentzian_case(double beta);

// ((x - shift)^3 + y^3) / 3 + 0.1 (x - shift + y), the cubic trace reused by
// the geometric scenes.
double cubic_trace(double x, double y, double shift = 0.0);

struct DivergenceResult {
  double max_residual = 0.0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;  // points closer than 2h to the circle
};

// max |sigma Lap u + grad sigma . grad u| over `points` with second-order
// central differences of spacing h, in long double.
DivergenceResult divergence_residual(const LongField& sigma, const LongField& u, std::span<const Complex> points,
                                     double h = 1e-4);

// Uniformly distributed points in the disk of the given radius.
std::vector<Complex> random_interior_points(std::size_t count, double radius = 0.99, std::uint64_t seed = 0);

}  // namespace fpeit
