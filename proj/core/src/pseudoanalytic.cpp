#include "fpeit/pseudoanalytic.hpp"

#include <cmath>
#include <string>

namespace fpeit {
namespace {

constexpr Complex kI(0.0, 1.0);

// Derivative of f at z along the unit vector `dir`.
Complex directional_difference(const ComplexField& f, Complex z, Complex dir, double h) {
  const Complex step = h * dir;
  const bool ahead = inside_unit_disk(z + step);
  const bool behind = inside_unit_disk(z - step);
  if (ahead && behind) return (f(z + step) - f(z - step)) / (2.0 * h);
  if (behind && inside_unit_disk(z - 2.0 * step)) {
    return (3.0 * f(z) - 4.0 * f(z - step) + f(z - 2.0 * step)) / (2.0 * h);
  }
  if (ahead && inside_unit_disk(z + 2.0 * step)) {
    return (-3.0 * f(z) + 4.0 * f(z + step) - f(z + 2.0 * step)) / (2.0 * h);
  }
  throw NumericalError("finite-difference stencil does not fit inside the disk at (" +
                       std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
}

}  // namespace

GeneratingPair GeneratingPair::from_p(ScalarField p) {
  GeneratingPair pair;
  pair.F = [p](Complex z) { return Complex(p(z.real(), z.imag()), 0.0); };
  pair.G = [p](Complex z) { return kI / p(z.real(), z.imag()); };
  return pair;
}

GeneratingPairField pair_from_p(std::span<const double> p) {
  GeneratingPairField pair;
  pair.F.reserve(p.size());
  pair.G.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p[i]) || p[i] <= 0.0) {
      throw ValidationError("pair_from_p: p must be positive and finite (node " + std::to_string(i) + ")");
    }
    pair.F.emplace_back(p[i], 0.0);
    pair.G.push_back(kI / p[i]);
  }
  return pair;
}

void validate_pair(const GeneratingPairField& pair) {
  if (pair.F.size() != pair.G.size()) throw ValidationError("generating pair: F and G differ in length");
  for (std::size_t i = 0; i < pair.F.size(); ++i) {
    const double condition = (std::conj(pair.F[i]) * pair.G[i]).imag();
    if (!(condition > 0.0) || !std::isfinite(condition)) {
      throw ValidationError("generating pair violates Im(conj(F) G) > 0 at node " + std::to_string(i));
    }
  }
}

GeneratingPairField adjoint(const GeneratingPairField& pair) {
  GeneratingPairField out;
  out.F.reserve(pair.size());
  out.G.reserve(pair.size());
  for (std::size_t i = 0; i < pair.size(); ++i) {
    out.F.push_back(-kI * pair.F[i]);
    out.G.push_back(-kI * pair.G[i]);
  }
  return out;
}

GeneratingPair adjoint(const GeneratingPair& pair) {
  return GeneratingPair{[F = pair.F](Complex z) { return -kI * F(z); },
                        [G = pair.G](Complex z) { return -kI * G(z); }};
}

WirtingerDerivatives wirtinger(const ComplexField& f, Complex z, double h) {
  const Complex fx = directional_difference(f, z, Complex(1.0, 0.0), h);
  const Complex fy = directional_difference(f, z, Complex(0.0, 1.0), h);
  return {fx - kI * fy, fx + kI * fy};
}

CharacteristicCoefficients characteristic_coefficients(const GeneratingPair& pair, Complex z, double h) {
  const Complex F = pair.F(z);
  const Complex G = pair.G(z);
  const auto dF = wirtinger(pair.F, z, h);
  const auto dG = wirtinger(pair.G, z, h);
  const Complex denom = F * std::conj(G) - G * std::conj(F);
  if (std::abs(denom) == 0.0 || !std::isfinite(std::abs(denom))) {
    throw NumericalError("characteristic coefficients: degenerate pair at (" + std::to_string(z.real()) +
                         ", " + std::to_string(z.imag()) + ")");
  }
  CharacteristicCoefficients c;
  c.A = (std::conj(F) * dG.dz - std::conj(G) * dF.dz) / denom;
  c.a = -(std::conj(F) * dG.dzbar - std::conj(G) * dF.dzbar) / denom;
  c.B = (F * dG.dz - G * dF.dz) / denom;
  c.b = -(G * dF.dzbar - F * dG.dzbar) / denom;
  return c;
}

std::vector<CharacteristicCoefficients> characteristic_coefficients(const GeneratingPair& pair,
                                                                    std::span<const Complex> points,
                                                                    double h) {
  std::vector<CharacteristicCoefficients> out;
  out.reserve(points.size());
  for (Complex z : points) out.push_back(characteristic_coefficients(pair, z, h));
  return out;
}

CharacteristicCoefficients coefficients_of_p(const ScalarField& p, Complex z, double h) {
  const ComplexField pc = [&p](Complex w) { return Complex(p(w.real(), w.imag()), 0.0); };
  const auto d = wirtinger(pc, z, h);
  const double value = p(z.real(), z.imag());
  return {Complex(0.0), d.dz / value, Complex(0.0), d.dzbar / value};
}

Complex fg_derivative(const ComplexField& W, const GeneratingPair& pair, Complex z, double h) {
  const auto c = characteristic_coefficients(pair, z, h);
  const Complex w = W(z);
  return wirtinger(W, z, h).dz - c.A * w - c.B * std::conj(w);
}

std::vector<Complex> fg_derivative(const ComplexField& W, const GeneratingPair& pair,
                                   std::span<const Complex> points, double h) {
  std::vector<Complex> out;
  out.reserve(points.size());
  for (Complex z : points) out.push_back(fg_derivative(W, pair, z, h));
  return out;
}

double vekua_residual(const ComplexField& W, const ScalarField& p, Complex z, double h) {
  const auto c = coefficients_of_p(p, z, h);
  return std::abs(wirtinger(W, z, h).dzbar - c.b * std::conj(W(z)));
}

std::vector<double> vekua_residual(const ComplexField& W, const ScalarField& p,
                                   std::span<const Complex> points, double h) {
  std::vector<double> out;
  out.reserve(points.size());
  for (Complex z : points) out.push_back(vekua_residual(W, p, z, h));
  return out;
}

std::vector<Complex> fg_integral(std::span<const Complex> W, const GeneratingPairField& pair,
                                 const Ray& ray, Quadrature rule) {
  const std::size_t n = ray.size();
  if (W.size() != n || pair.size() != n) {
    throw ValidationError("fg_integral: W, pair and ray must have the same number of nodes");
  }
  std::vector<Complex> with_g(n), with_f(n);
  for (std::size_t s = 0; s < n; ++s) {
    // dz = direction * dt along the straight ray.
    with_g[s] = -kI * pair.G[s] * W[s] * ray.direction;
    with_f[s] = -kI * pair.F[s] * W[s] * ray.direction;
  }
  const auto int_g = cumulative_integral(with_g, ray.t, rule);
  const auto int_f = cumulative_integral(with_f, ray.t, rule);
  std::vector<Complex> out(n);
  for (std::size_t s = 0; s < n; ++s) {
    out[s] = pair.F[s] * int_g[s].real() + pair.G[s] * int_f[s].real();
  }
  return out;
}

GeneratingSequence::GeneratingSequence(std::vector<ScalarField> factors) : factors_(std::move(factors)) {
  if (factors_.empty() || factors_.size() > 2) {
    throw ValidationError("generating sequences of period 1 or 2 are supported");
  }
}

const ScalarField& GeneratingSequence::factor(int m) const {
  const int k = period();
  return factors_[static_cast<std::size_t>(((m % k) + k) % k)];
}

GeneratingPairField GeneratingSequence::sample(int m, std::span<const Complex> nodes) const {
  const auto& p = factor(m);
  std::vector<double> values(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = p(nodes[i].real(), nodes[i].imag());
  auto pair = pair_from_p(values);
  validate_pair(pair);
  return pair;
}

GeneratingSequence build_sequence(const ConductivityField& field, SequenceMode mode) {
  if (field.is_uniform()) {
    return GeneratingSequence({[](double, double) { return 1.0; }});
  }
  if (mode == SequenceMode::automatic && field.is_separable()) {
    // Even index: p2 / p1 = sqrt(sigma2 / sigma1); odd index: p1 * p2 = sqrt(sigma).
    ScalarField even = [field](double x, double y) {
      const auto f = field.separable_factors(x, y);
      return std::sqrt(f.sigma2 / f.sigma1);
    };
    ScalarField odd = [field](double x, double y) {
      const auto f = field.separable_factors(x, y);
      return std::sqrt(f.sigma1 * f.sigma2);
    };
    return GeneratingSequence({std::move(even), std::move(odd)});
  }
  return GeneratingSequence({[field](double x, double y) { return std::sqrt(field.evaluate(x, y)); }});
}

double successor_residual(const GeneratingSequence& sequence, int m, std::span<const Complex> points,
                          double h) {
  // The closed form keeps the O(h^2) difference error visible. The general
  // formula cancels exactly for separable pairs and would only show round-off.
  const auto& current = sequence.factor(m);
  const auto& next = sequence.factor(m + 1);
  double worst = 0.0;
  for (Complex z : points) {
    const auto c0 = coefficients_of_p(current, z, h);
    const auto c1 = coefficients_of_p(next, z, h);
    worst = std::max(worst, std::abs(c1.B + c0.b));
  }
  return worst;
}

}  // namespace fpeit
