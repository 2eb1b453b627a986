#include "fpeit/formal_powers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fpeit/csv.hpp"
#include "fpeit/parallel.hpp"

namespace fpeit {
namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

std::vector<Complex> ray_nodes(const Ray& ray) {
  std::vector<Complex> nodes(ray.size());
  for (std::size_t s = 0; s < ray.size(); ++s) nodes[s] = ray.node(s);
  return nodes;
}

// Chain s0 starts from pair s0 and the integration producing degree j uses
// pair (s0 + j) mod k, so every degree j = s0 (mod k) ends on pair 0.
std::vector<std::vector<Complex>> chain_powers(const GeneratingSequence& sequence, const Ray& ray,
                                               int max_degree, Complex seed, Quadrature rule,
                                               std::size_t ray_index) {
  const int k = sequence.period();
  const auto nodes = ray_nodes(ray);
  std::vector<GeneratingPairField> pairs;
  pairs.reserve(static_cast<std::size_t>(k));
  for (int m = 0; m < k; ++m) pairs.push_back(sequence.sample(m, nodes));

  std::vector<std::vector<Complex>> out(static_cast<std::size_t>(max_degree) + 1);
  for (int s0 = 0; s0 < std::min(k, max_degree + 1); ++s0) {
    auto W = degree_zero(pairs[static_cast<std::size_t>(s0)], seed, 0);
    if (s0 == 0) out[0] = W;
    for (int j = 1; j <= max_degree; ++j) {
      W = fg_integral(W, pairs[static_cast<std::size_t>((s0 + j) % k)], ray, rule);
      for (std::size_t s = 0; s < W.size(); ++s) {
        W[s] *= static_cast<double>(j);
        if (!finite(W[s])) {
          throw NumericalError("non-finite formal power value at degree " + std::to_string(j) + ", ray " +
                               std::to_string(ray_index) + ", step " + std::to_string(s));
        }
      }
      if (j % k == s0) out[static_cast<std::size_t>(j)] = W;
    }
  }
  return out;
}

}  // namespace

DegreeZeroCoefficients degree_zero_coefficients(Complex F0, Complex G0, Complex a0) {
  // [Re F  Re G] [lambda]   [Re a0]
  // [Im F  Im G] [mu    ] = [Im a0],  determinant Im(conj(F) G).
  const double det = F0.real() * G0.imag() - G0.real() * F0.imag();
  if (!(std::abs(det) > 0.0) || !std::isfinite(det)) {
    throw NumericalError("degree-zero system is singular: Im(conj(F) G) = 0 at the center");
  }
  return {(a0.real() * G0.imag() - G0.real() * a0.imag()) / det,
          (F0.real() * a0.imag() - a0.real() * F0.imag()) / det};
}

std::vector<Complex> degree_zero(const GeneratingPairField& pair, Complex a0, std::size_t center) {
  if (center >= pair.size()) throw ValidationError("degree_zero: center index out of range");
  const auto c = degree_zero_coefficients(pair.F[center], pair.G[center], a0);
  std::vector<Complex> out(pair.size());
  for (std::size_t i = 0; i < pair.size(); ++i) out[i] = c.lambda * pair.F[i] + c.mu * pair.G[i];
  out[center] = a0;
  return out;
}

FormalPowerTable::FormalPowerTable(int max_degree, RadialMesh mesh)
    : max_degree_(max_degree), mesh_(std::move(mesh)) {
  if (max_degree < 0) throw ValidationError("formal power table: degree must be non-negative");
  const std::size_t total = static_cast<std::size_t>(max_degree + 1) * mesh_.node_count();
  one_.assign(total, Complex(0.0));
  i_.assign(total, Complex(0.0));
}

std::vector<double> FormalPowerTable::boundary_trace(Seed seed, int n) const {
  std::vector<double> trace(mesh_.ray_count());
  for (std::size_t r = 0; r < trace.size(); ++r) trace[r] = value(seed, n, r, mesh_.step_count()).real();
  return trace;
}

std::vector<std::vector<Complex>> powers_on_ray(const GeneratingSequence& sequence, const Ray& ray,
                                                int max_degree, Complex seed, Quadrature rule) {
  if (max_degree < 0) throw ValidationError("powers_on_ray: degree must be non-negative");
  return chain_powers(sequence, ray, max_degree, seed, rule, 0);
}

FormalPowerTable build_table(const GeneratingSequence& sequence, const RadialMesh& mesh, int max_degree,
                             const PowerOptions& options) {
  FormalPowerTable table(max_degree, mesh);
  parallel_for(mesh.ray_count(), static_cast<unsigned>(std::max(options.threads, 0)), [&](std::size_t r) {
    const Ray ray = table.mesh().ray(r);
    for (Seed seed : {Seed::one, Seed::i}) {
      const auto values = chain_powers(sequence, ray, max_degree, seed_value(seed), options.quadrature, r);
      for (int n = 0; n <= max_degree; ++n) {
        std::ranges::copy(values[static_cast<std::size_t>(n)], table.mutable_ray(seed, n, r).begin());
      }
    }
  });
  return table;
}

PointPowers evaluate_at(const GeneratingSequence& sequence, Complex z, int max_degree, int steps,
                        Quadrature rule) {
  if (steps < 1) throw ValidationError("evaluate_at: steps must be positive");
  if (!inside_unit_disk(z)) throw DomainError("evaluate_at: point outside the unit disk");
  std::vector<double> t(static_cast<std::size_t>(steps) + 1);
  for (int s = 0; s <= steps; ++s) t[static_cast<std::size_t>(s)] = static_cast<double>(s) / steps;
  const Ray ray{Complex(0.0), z, t};
  PointPowers out;
  for (Seed seed : {Seed::one, Seed::i}) {
    const auto values = chain_powers(sequence, ray, max_degree, seed_value(seed), rule, 0);
    auto& target = seed == Seed::one ? out.one : out.i;
    for (const auto& v : values) target.push_back(v.back());
  }
  return out;
}

std::vector<double> pseudoanalyticity_check(const FormalPowerTable& table, const GeneratingSequence& sequence,
                                            const PseudoanalyticityOptions& options) {
  const auto& mesh = table.mesh();
  const double h = options.h;
  const int N = table.max_degree();

  auto near_jump = [&](Complex z) {
    if (options.field == nullptr) return false;
    const double base = options.field->evaluate(z.real(), z.imag());
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        const Complex w = z + 2.0 * h * Complex(dx, dy);
        if (!inside_unit_disk(w)) return true;
        if (std::abs(options.field->evaluate(w.real(), w.imag()) - base) > 0.01 * base) return true;
      }
    }
    return false;
  };

  std::vector<Complex> candidates;
  for (std::size_t r = 0; r < mesh.ray_count(); ++r) {
    for (std::size_t s = 1; s < mesh.step_count(); ++s) {
      const Complex z = mesh.node(r, s);
      if (std::abs(z) <= 1.0 - 3.0 * h) candidates.push_back(z);
    }
  }
  std::vector<Complex> points;
  const std::size_t limit = std::max<std::size_t>(options.max_points, 1);
  const std::size_t stride = std::max<std::size_t>(1, (candidates.size() + limit - 1) / limit);
  for (std::size_t i = 0; i < candidates.size(); i += stride) {
    if (!near_jump(candidates[i])) points.push_back(candidates[i]);
  }

  const ScalarField& p0 = sequence.factor(0);
  std::vector<std::vector<double>> per_point(points.size(), std::vector<double>(static_cast<std::size_t>(N) + 1, 0.0));
  parallel_for(points.size(), static_cast<unsigned>(std::max(options.threads, 0)), [&](std::size_t i) {
    const Complex z = points[i];
    const auto centre = evaluate_at(sequence, z, N, options.steps, options.quadrature);
    const auto east = evaluate_at(sequence, z + h, N, options.steps, options.quadrature);
    const auto west = evaluate_at(sequence, z - h, N, options.steps, options.quadrature);
    const auto north = evaluate_at(sequence, z + Complex(0.0, h), N, options.steps, options.quadrature);
    const auto south = evaluate_at(sequence, z - Complex(0.0, h), N, options.steps, options.quadrature);
    const Complex b = coefficients_of_p(p0, z, h).b;
    for (int n = 0; n <= N; ++n) {
      const auto k = static_cast<std::size_t>(n);
      double worst = 0.0;
      for (auto field : {&PointPowers::one, &PointPowers::i}) {
        const Complex fx = ((east.*field)[k] - (west.*field)[k]) / (2.0 * h);
        const Complex fy = ((north.*field)[k] - (south.*field)[k]) / (2.0 * h);
        const Complex dzbar = fx + Complex(0.0, 1.0) * fy;
        worst = std::max(worst, std::abs(dzbar - b * std::conj((centre.*field)[k])));
      }
      per_point[i][k] = worst;
    }
  });

  std::vector<double> result(static_cast<std::size_t>(N) + 1, 0.0);
  for (const auto& row : per_point) {
    for (std::size_t n = 0; n < row.size(); ++n) result[n] = std::max(result[n], row[n]);
  }
  return result;
}

void write_powers_csv(const FormalPowerTable& table, const std::filesystem::path& path) {
  csv::Writer out(path, {"degree", "seed", "ray", "step", "x", "y", "ReZ", "ImZ"});
  const auto& mesh = table.mesh();
  for (int n = 0; n <= table.max_degree(); ++n) {
    for (Seed seed : {Seed::one, Seed::i}) {
      const char* label = seed == Seed::one ? "1" : "i";
      for (std::size_t r = 0; r < mesh.ray_count(); ++r) {
        for (std::size_t s = 0; s < mesh.nodes_per_ray(); ++s) {
          const Complex z = mesh.node(r, s);
          const Complex v = table.value(seed, n, r, s);
          out.row(n, label, r, s, z.real(), z.imag(), v.real(), v.imag());
        }
      }
    }
  }
}

}  // namespace fpeit
