#include "fpeit/quadrature.hpp"

#include <string>

namespace fpeit {
namespace {

// Second-order derivative estimates on a possibly non-uniform grid.
std::vector<Complex> nodal_derivatives(std::span<const Complex> f, std::span<const double> t) {
  const std::size_t n = f.size();
  std::vector<Complex> d(n);
  if (n == 2) {
    d[0] = d[1] = (f[1] - f[0]) / (t[1] - t[0]);
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = t[i] - t[i - 1];
    const double h1 = t[i + 1] - t[i];
    d[i] = (-h1 / (h0 * (h0 + h1))) * f[i - 1] + ((h1 - h0) / (h0 * h1)) * f[i] +
           (h0 / (h1 * (h0 + h1))) * f[i + 1];
  }
  {
    const double h0 = t[1] - t[0];
    const double h1 = t[2] - t[1];
    d[0] = (-(2 * h0 + h1) / (h0 * (h0 + h1))) * f[0] + ((h0 + h1) / (h0 * h1)) * f[1] -
           (h0 / (h1 * (h0 + h1))) * f[2];
  }
  {
    const double h0 = t[n - 2] - t[n - 3];
    const double h1 = t[n - 1] - t[n - 2];
    d[n - 1] = (h1 / (h0 * (h0 + h1))) * f[n - 3] - ((h0 + h1) / (h0 * h1)) * f[n - 2] +
               ((2 * h1 + h0) / (h1 * (h0 + h1))) * f[n - 1];
  }
  return d;
}

}  // namespace

std::vector<Complex> cumulative_integral(std::span<const Complex> f, std::span<const double> t,
                                         Quadrature rule) {
  if (f.size() != t.size()) {
    throw ValidationError("cumulative_integral: " + std::to_string(f.size()) + " samples for " +
                          std::to_string(t.size()) + " nodes");
  }
  for (std::size_t s = 1; s < t.size(); ++s) {
    if (!(t[s] > t[s - 1])) throw ValidationError("cumulative_integral: nodes must be strictly increasing");
  }
  std::vector<Complex> out(f.size(), Complex(0.0));
  if (f.size() < 2) return out;

  std::vector<Complex> d;
  if (rule == Quadrature::hermite) d = nodal_derivatives(f, t);

  Complex sum(0.0);
  for (std::size_t s = 0; s + 1 < f.size(); ++s) {
    const double h = t[s + 1] - t[s];
    sum += 0.5 * h * (f[s] + f[s + 1]);
    if (rule == Quadrature::hermite) sum += (h * h / 12.0) * (d[s] - d[s + 1]);
    out[s + 1] = sum;
  }
  return out;
}

}  // namespace fpeit
