#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "fpeit/conductivity.hpp"
#include "fpeit/mesh.hpp"
#include "fpeit/pseudoanalytic.hpp"
#include "fpeit/quadrature.hpp"

namespace fpeit {

enum class Seed { one, i };

inline Complex seed_value(Seed seed) { return seed == Seed::one ? Complex(1.0, 0.0) : Complex(0.0, 1.0); }

struct PowerOptions {
  Quadrature quadrature = Quadrature::hermite;
  int threads = 0;  // 0 = all cores
};

struct DegreeZeroCoefficients {
  double lambda;
  double mu;
};

// Real lambda, mu with lambda F0 + mu G0 = a0. Throws NumericalError when
// Im(conj(F0) G0) vanishes.
DegreeZeroCoefficients degree_zero_coefficients(Complex F0, Complex G0, Complex a0);

// lambda F + mu G over all nodes of `pair`, with lambda, mu solved at node
// `center` so that the result equals a0 there.
std::vector<Complex> degree_zero(const GeneratingPairField& pair, Complex a0, std::size_t center = 0);

/// Formal powers Z^(n)(1, z; z0) and Z^(n)(i, z; z0), n = 0..N, at every
/// node of a radial mesh. Immutable once built.
class FormalPowerTable {
 public:
  FormalPowerTable(int max_degree, RadialMesh mesh);

  int max_degree() const { return max_degree_; }
  const RadialMesh& mesh() const { return mesh_; }

  Complex value(Seed seed, int n, std::size_t ray, std::size_t step) const {
    return data(seed)[offset(n) + mesh_.index(ray, step)];
  }
  // All nodes of degree n, ray-major.
  std::span<const Complex> degree(Seed seed, int n) const {
    return std::span<const Complex>(data(seed)).subspan(offset(n), mesh_.node_count());
  }
  std::span<const Complex> ray_values(Seed seed, int n, std::size_t ray) const {
    return degree(seed, n).subspan(mesh_.index(ray, 0), mesh_.nodes_per_ray());
  }
  // Re Z^(n) at the ray endpoints on the unit circle.
  std::vector<double> boundary_trace(Seed seed, int n) const;

  std::span<Complex> mutable_ray(Seed seed, int n, std::size_t ray) {
    return std::span<Complex>(data(seed)).subspan(offset(n) + mesh_.index(ray, 0), mesh_.nodes_per_ray());
  }

 private:
  std::size_t offset(int n) const { return static_cast<std::size_t>(n) * mesh_.node_count(); }
  const std::vector<Complex>& data(Seed seed) const { return seed == Seed::one ? one_ : i_; }
  std::vector<Complex>& data(Seed seed) { return seed == Seed::one ? one_ : i_; }

  int max_degree_;
  RadialMesh mesh_;
  std::vector<Complex> one_;
  std::vector<Complex> i_;
};

// Powers for an arbitrary complex seed along one ray: out[n][s].
std::vector<std::vector<Complex>> powers_on_ray(const GeneratingSequence& sequence, const Ray& ray,
                                                int max_degree, Complex seed,
                                                Quadrature rule = Quadrature::hermite);

FormalPowerTable build_table(const GeneratingSequence& sequence, const RadialMesh& mesh, int max_degree,
                             const PowerOptions& options = {});

struct PointPowers {
  std::vector<Complex> one;  // Z^(n)(1, z; 0), n = 0..N
  std::vector<Complex> i;    // Z^(n)(i, z; 0)
};

// Powers at a single point z, integrating along the segment [0, z] with
// `steps` uniform steps.
PointPowers evaluate_at(const GeneratingSequence& sequence, Complex z, int max_degree, int steps,
                        Quadrature rule = Quadrature::hermite);

struct PseudoanalyticityOptions {
  double h = 1e-4;
  int steps = 400;
  std::size_t max_points = 200;
  Quadrature quadrature = Quadrature::hermite;
  // Nodes where this field changes by more than 1% within a 2h box are skipped.
  const ConductivityField* field = nullptr;
  int threads = 0;
};

// Max Vekua residual of Z^(n) against p_0 per degree, over interior mesh
// nodes of the table (both seeds). Each node's stencil values come from
// fresh segment integrations with `steps` steps.
std::vector<double> pseudoanalyticity_check(const FormalPowerTable& table, const GeneratingSequence& sequence,
                                            const PseudoanalyticityOptions& options = {});

// CSV with header degree,seed,ray,step,x,y,ReZ,ImZ.
void write_powers_csv(const FormalPowerTable& table, const std::filesystem::path& path);

}  // namespace fpeit
