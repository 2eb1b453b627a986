#pragma once

#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fpeit {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Slack allowed when testing membership of the closed unit disk.
inline constexpr double kDomainTolerance = 1e-12;

using RealFn = std::function<double(double)>;
using ScalarField = std::function<double(double x, double y)>;
using ComplexField = std::function<Complex(Complex z)>;

// Point outside the closed unit disk, or a parameter outside its admissible range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or inconsistent input (non-positive conductivity, bad config, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Breakdown of a numerical procedure (singular system, non-finite value).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool inside_unit_disk(double x, double y, double tol = kDomainTolerance) {
  return x * x + y * y <= 1.0 + tol;
}

inline bool inside_unit_disk(Complex z, double tol = kDomainTolerance) {
  return inside_unit_disk(z.real(), z.imag(), tol);
}

}  // namespace fpeit
