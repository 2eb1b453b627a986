#pragma once

// Reference values computed independently of the library code paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

// z^n by repeated multiplication in long double.
inline Complex power(Complex z, int n) {
  std::complex<long double> acc(1.0L, 0.0L);
  const std::complex<long double> w(z.real(), z.imag());
  for (int k = 0; k < n; ++k) acc *= w;
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

// Sinusoidal exact potential written straight from the arctan(tan) form,
// valid where cos(w x / 2) > 0 and cos(w y / 2) > 0.
inline double sinusoidal_u(double x, double y, double w) {
  const double s3 = std::sqrt(3.0);
  return 2.0 / s3 * std::atan(std::tan(w * x / 2.0) / s3) + 2.0 / s3 * std::atan((1.0 + 2.0 * std::tan(w * y / 2.0)) / s3);
}

inline double lorentzian_u(double x, double y, double beta) {
  const double s = x - beta;
  return (s * s * s + y * y * y) / 3.0 + 0.1 * (s + y);
}

inline double lorentzian_sigma(double x, double y, double beta) {
  return 1.0 / ((x - beta) * (x - beta) + 0.1) / (y * y + 0.1);
}

// Plain cumulative trapezoid in long double.
inline std::vector<Complex> trapezoid(const std::vector<Complex>& f, const std::vector<double>& t) {
  std::vector<Complex> out(f.size());
  std::complex<long double> acc(0.0L, 0.0L);
  for (std::size_t i = 1; i < f.size(); ++i) {
    const long double h = static_cast<long double>(t[i]) - t[i - 1];
    acc += h * 0.5L * (std::complex<long double>(f[i].real(), f[i].imag()) +
                       std::complex<long double>(f[i - 1].real(), f[i - 1].imag()));
    out[i] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  return out;
}

// Pseudoanalytic functions for the pair (p, i/p) with p = e^x, written as
// W = phi F + psi G with real phi, psi satisfying p^2 phi_x = psi_y and
// p^2 phi_y = -psi_x:
//   phi = c0 + c1 y - c2 e^{-2x} / 2,  psi = c3 - c1 e^{2x} / 2 + c2 y.
struct ExpPairFunction {
  double c[4];

  double phi(double x, double y) const { return c[0] + c[1] * y - 0.5 * c[2] * std::exp(-2.0 * x); }
  double psi(double x, double y) const { return c[3] - 0.5 * c[1] * std::exp(2.0 * x) + c[2] * y; }
  // phi_z = phi_x - i phi_y, and likewise for psi.
  Complex phi_z(double x, double) const { return {c[2] * std::exp(-2.0 * x), -c[1]}; }
  Complex psi_z(double x, double) const { return {-c[1] * std::exp(2.0 * x), -c[2]}; }

  static double p(double x, double) { return std::exp(x); }
  Complex W(Complex z) const {
    const double x = z.real(), y = z.imag();
    return phi(x, y) * p(x, y) + Complex(0.0, psi(x, y) / p(x, y));
  }
  // The (F,G)-derivative phi_z F + psi_z G.
  Complex derivative(Complex z) const {
    const double x = z.real(), y = z.imag();
    return phi_z(x, y) * p(x, y) + psi_z(x, y) * Complex(0.0, 1.0 / p(x, y));
  }
};

// Indices of strict local maxima of a periodic sequence, largest first.
inline std::vector<std::size_t> periodic_peaks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = v[(i + n - 1) % n];
    const double next = v[(i + 1) % n];
    if (v[i] > prev && v[i] >= next) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return peaks;
}

// Shortest angular distance.
inline double angle_gap(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 2.0 * pi);
  return std::min(d, 2.0 * pi - d);
}

// Least-squares slope of log(err) against log(n), negated: the convergence order.
inline double order(const std::vector<double>& n, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double x = std::log(n[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return -(m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace oracle
