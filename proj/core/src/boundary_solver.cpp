#include "fpeit/boundary_solver.hpp"

#include <algorithm>
#include <cmath>

#include "fpeit/log.hpp"
#include "fpeit/parallel.hpp"

namespace fpeit {

double inner_product(std::span<const double> f, std::span<const double> g, std::span<const double> weights) {
  if (f.size() != g.size() || f.size() != weights.size()) {
    throw ValidationError("inner_product: functions and weights must share the same boundary nodes");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * g[i] * weights[i];
  return sum;
}

std::vector<std::vector<double>> boundary_traces(const FormalPowerTable& table) {
  const int N = table.max_degree();
  std::vector<std::vector<double>> traces;
  traces.reserve(2 * static_cast<std::size_t>(N) + 2);
  for (int n = 0; n <= N; ++n) traces.push_back(table.boundary_trace(Seed::one, n));
  for (int n = 0; n <= N; ++n) traces.push_back(table.boundary_trace(Seed::i, n));
  // Re(i * lambda F + ...) at degree zero vanishes identically; remove round-off.
  std::ranges::fill(traces[static_cast<std::size_t>(N) + 1], 0.0);
  return traces;
}

std::vector<std::vector<double>> boundary_traces(const GeneratingSequence& sequence, const RadialMesh& mesh,
                                                 int max_degree, const PowerOptions& options) {
  const auto N = static_cast<std::size_t>(max_degree);
  std::vector<std::vector<double>> traces(2 * N + 2, std::vector<double>(mesh.ray_count(), 0.0));
  parallel_for(mesh.ray_count(), static_cast<unsigned>(std::max(options.threads, 0)), [&](std::size_t r) {
    const Ray ray = mesh.ray(r);
    for (Seed seed : {Seed::one, Seed::i}) {
      const auto values = powers_on_ray(sequence, ray, max_degree, seed_value(seed), options.quadrature);
      const std::size_t base = seed == Seed::one ? 0 : N + 1;
      for (std::size_t n = 0; n <= N; ++n) traces[base + n][r] = values[n].back().real();
    }
  });
  std::ranges::fill(traces[N + 1], 0.0);
  return traces;
}

BoundarySystem assemble_system(const FormalPowerTable& table) {
  BoundarySystem system;
  system.max_degree = table.max_degree();
  system.angles = table.mesh().boundary_angles();
  system.weights = table.mesh().boundary_weights();
  system.traces = boundary_traces(table);
  return system;
}

OrthonormalBasis orthonormalize(const BoundarySystem& system, double drop_tol) {
  const auto& w = system.weights;
  const std::size_t slots = system.slot_count();
  if (system.angles.size() < slots - 1) {
    log::warn("only " + std::to_string(system.angles.size()) + " boundary nodes for " +
              std::to_string(slots - 1) + " functions; expect dropped functions");
  }
  OrthonormalBasis basis;
  for (std::size_t slot = 0; slot < slots; ++slot) {
    if (static_cast<int>(slot) == system.excluded_slot()) continue;
    std::vector<double> v = system.traces[slot];
    if (v.size() != w.size()) throw ValidationError("orthonormalize: trace length differs from node count");
    std::vector<double> coeffs(slots, 0.0);
    coeffs[slot] = 1.0;
    const double original = std::sqrt(inner_product(v, v, w));
    if (original == 0.0) {
      basis.dropped.push_back({static_cast<int>(slot), 0.0});
      log::info("dropped alpha=" + std::to_string(slot) + " (zero trace)");
      continue;
    }
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < basis.size(); ++k) {
        const double a = inner_product(v, basis.functions[k], w);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= a * basis.functions[k][i];
        for (std::size_t j = 0; j < slots; ++j) coeffs[j] -= a * basis.transform[k][j];
      }
    }
    const double norm = std::sqrt(inner_product(v, v, w));
    if (!(norm >= drop_tol * original)) {
      basis.dropped.push_back({static_cast<int>(slot), norm / original});
      log::info("dropped alpha=" + std::to_string(slot) + " (residual ratio " + std::to_string(norm / original) + ")");
      continue;
    }
    for (double& x : v) x /= norm;
    for (double& c : coeffs) c /= norm;
    basis.functions.push_back(std::move(v));
    basis.transform.push_back(std::move(coeffs));
    basis.alpha.push_back(static_cast<int>(slot));
  }
  return basis;
}

double orthonormality_defect(const OrthonormalBasis& basis, std::span<const double> weights) {
  double worst = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = a; b < basis.size(); ++b) {
      const double g = inner_product(basis.functions[a], basis.functions[b], weights);
      worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

FitResult fit(const OrthonormalBasis& basis, std::span<const double> weights, std::span<const double> data) {
  FitResult result;
  result.alpha = basis.alpha;
  result.fitted.assign(data.size(), 0.0);
  for (const auto& u : basis.functions) {
    const double b = inner_product(data, u, weights);
    result.b.push_back(b);
    for (std::size_t i = 0; i < data.size(); ++i) result.fitted[i] += b * u[i];
  }
  result.residual.resize(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) result.residual[i] = data[i] - result.fitted[i];
  result.nodal_error = std::sqrt(inner_product(result.residual, result.residual, weights));
  return result;
}

double error_norm(std::span<const double> data, std::span<const double> fitted) {
  if (data.size() != fitted.size() || data.empty()) {
    throw ValidationError("error_norm: data and fit must be non-empty and of equal length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) sum += (data[i] - fitted[i]) * (data[i] - fitted[i]);
  return std::sqrt(sum * kTwoPi / static_cast<double>(data.size()));
}

std::vector<double> periodic_linear(std::span<const double> angles, std::span<const double> values,
                                    std::span<const double> targets) {
  if (angles.size() != values.size() || angles.empty()) {
    throw ValidationError("periodic_linear: angles and values must be non-empty and of equal length");
  }
  const std::size_t n = angles.size();
  std::vector<double> out(targets.size());
  for (std::size_t k = 0; k < targets.size(); ++k) {
    double theta = std::fmod(targets[k], kTwoPi);
    if (theta < 0.0) theta += kTwoPi;
    // Last node with angle <= theta, wrapping to the final node below angles[0].
    const auto it = std::upper_bound(angles.begin(), angles.end(), theta);
    const std::size_t hi = static_cast<std::size_t>(it - angles.begin()) % n;
    const std::size_t lo = (hi + n - 1) % n;
    double a0 = angles[lo];
    double a1 = angles[hi];
    if (a1 <= a0) a1 += kTwoPi;
    if (theta < a0) theta += kTwoPi;
    const double s = a1 > a0 ? (theta - a0) / (a1 - a0) : 0.0;
    out[k] = (1.0 - s) * values[lo] + s * values[hi];
  }
  return out;
}

std::vector<double> combine(const OrthonormalBasis& basis, std::span<const double> b,
                            const std::vector<std::vector<double>>& raw) {
  if (b.size() != basis.size()) throw ValidationError("combine: one coefficient per basis function expected");
  const std::size_t slots = basis.transform.empty() ? 0 : basis.transform.front().size();
  if (raw.size() != slots) throw ValidationError("combine: raw trace count differs from the basis slots");
  // Collapse the coefficients onto raw slots first.
  std::vector<double> weights(slots, 0.0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    for (std::size_t j = 0; j < slots; ++j) weights[j] += b[k] * basis.transform[k][j];
  }
  const std::size_t points = slots ? raw.front().size() : 0;
  std::vector<double> out(points, 0.0);
  for (std::size_t j = 0; j < slots; ++j) {
    if (weights[j] == 0.0) continue;
    for (std::size_t i = 0; i < points; ++i) out[i] += weights[j] * raw[j][i];
  }
  return out;
}

std::vector<double> reconstruct_interior(const FormalPowerTable& table, const OrthonormalBasis& basis,
                                         std::span<const double> b) {
  const int N = table.max_degree();
  std::vector<std::vector<double>> raw;
  raw.reserve(2 * static_cast<std::size_t>(N) + 2);
  for (Seed seed : {Seed::one, Seed::i}) {
    for (int n = 0; n <= N; ++n) {
      const auto values = table.degree(seed, n);
      std::vector<double> re(values.size());
      for (std::size_t i = 0; i < values.size(); ++i) re[i] = values[i].real();
      raw.push_back(std::move(re));
    }
  }
  return combine(basis, b, raw);
}

}  // namespace fpeit
