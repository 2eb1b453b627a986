#include "fpeit/verification.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "fpeit/log.hpp"

namespace fpeit {
namespace {

constexpr long double kSqrt3 = std::numbers::sqrt3_v<long double>;

}  // namespace

ExactCase sinusoidal_case(double omega, bool epsilon_fallback, double epsilon) {
  if (!(omega > 0.0 && omega <= kPi)) throw ValidationError("sinusoidal case: omega must lie in (0, pi]");
  ExactCase c;
  c.name = "sinusoidal";
  c.parameter = omega;
  const long double w = epsilon_fallback && omega == kPi ? static_cast<long double>(omega) - epsilon
                                                         : static_cast<long double>(omega);
  c.sigma_exact = [w](long double x, long double y) { return (2.0L + std::cos(w * x)) * (2.0L + std::sin(w * y)); };
  if (epsilon_fallback) {
    c.u_exact = [w](long double x, long double y) {
      return 2.0L / kSqrt3 * std::atan(std::tan(w * x / 2.0L) / kSqrt3) +
             2.0L / kSqrt3 * std::atan((1.0L + 2.0L * std::tan(w * y / 2.0L)) / kSqrt3);
    };
    c.notes = "plain arctan(tan) formulas at omega - epsilon";
  } else {
    // arctan(tan(a) / k) == atan2(sin a, k cos a) while cos a > 0; the atan2
    // form stays continuous up to |a| = pi / 2.
    c.u_exact = [w](long double x, long double y) {
      const long double a = w * x / 2.0L;
      const long double b = w * y / 2.0L;
      return 2.0L / kSqrt3 * std::atan2(std::sin(a), kSqrt3 * std::cos(a)) +
             2.0L / kSqrt3 * std::atan2(std::cos(b) + 2.0L * std::sin(b), kSqrt3 * std::cos(b));
    };
    c.notes = "continuous branch on the closed disk";
  }
  const double wd = static_cast<double>(w);
  c.sigma = ConductivityField::separable([wd](double x) { return 2.0 + std::cos(wd * x); },
                                         [wd](double y) { return 2.0 + std::sin(wd * y); }, "sinusoidal");
  return c;
}

ExactCase lorentzian_case(double beta) {
  ExactCase c;
  c.name = "lorentzian";
  c.parameter = beta;
  const long double bl = beta;
  c.sigma_exact = [bl](long double x, long double y) {
    return 1.0L / ((x - bl) * (x - bl) + 0.1L) / (y * y + 0.1L);
  };
  c.u_exact = [bl](long double x, long double y) {
    const long double s = x - bl;
    return (s * s * s + y * y * y) / 3.0L + 0.1L * (s + y);
  };
  c.sigma = ConductivityField::separable([beta](double x) { return 1.0 / ((x - beta) * (x - beta) + 0.1); },
                                         [](double y) { return 1.0 / (y * y + 0.1); }, "lorentzian");
  c.notes = "beta = " + std::to_string(beta);
  return c;
}

double cubic_trace(double x, double y, double shift) {
  const double s = x - shift;
  return (s * s * s + y * y * y) / 3.0 + 0.1 * (s + y);
}

DivergenceResult divergence_residual(const LongField& sigma, const LongField& u, std::span<const Complex> points,
                                     double h) {
  if (!(h > 0.0)) throw ValidationError("divergence_residual: h must be positive");
  DivergenceResult result;
  const long double hl = h;
  for (Complex z : points) {
    if (std::abs(z) > 1.0 - 2.0 * h) {
      ++result.skipped;
      continue;
    }
    const long double x = z.real();
    const long double y = z.imag();
    const long double u0 = u(x, y);
    const long double ue = u(x + hl, y), uw = u(x - hl, y), un = u(x, y + hl), us = u(x, y - hl);
    const long double lap = (ue - 2.0L * u0 + uw + un - 2.0L * u0 + us) / (hl * hl);
    const long double ux = (ue - uw) / (2.0L * hl);
    const long double uy = (un - us) / (2.0L * hl);
    const long double sx = (sigma(x + hl, y) - sigma(x - hl, y)) / (2.0L * hl);
    const long double sy = (sigma(x, y + hl) - sigma(x, y - hl)) / (2.0L * hl);
    const long double r = sigma(x, y) * lap + sx * ux + sy * uy;
    result.max_residual = std::max(result.max_residual, static_cast<double>(std::fabs(r)));
    ++result.evaluated;
  }
  if (result.skipped > 0) {
    log::warn("divergence_residual: skipped " + std::to_string(result.skipped) + " points within 2h of the circle");
  }
  return result;
}

std::vector<Complex> random_interior_points(std::size_t count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = radius * std::sqrt(unit(rng));
    points.push_back(std::polar(r, kTwoPi * unit(rng)));
  }
  return points;
}

}  // namespace fpeit
