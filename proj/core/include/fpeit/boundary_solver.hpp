#pragma once

#include <span>
#include <vector>

#include "fpeit/formal_powers.hpp"

namespace fpeit {

/// Real parts of the formal powers on the boundary nodes.
///
/// Slots follow the coefficient index alpha: slot n holds Re Z^(n)(1) and slot
/// N+1+n holds Re Z^(n)(i), n = 0..N. Slot N+1 (Re Z^(0)(i), identically zero
/// on the circle) is kept for index alignment but never enters the basis.
struct BoundarySystem {
  int max_degree = 0;
  std::vector<double> angles;
  std::vector<double> weights;
  std::vector<std::vector<double>> traces;

  std::size_t slot_count() const { return traces.size(); }
  int excluded_slot() const { return max_degree + 1; }
};

// sum_i f_i g_i w_i. Throws ValidationError on mismatched lengths.
double inner_product(std::span<const double> f, std::span<const double> g, std::span<const double> weights);

BoundarySystem assemble_system(const FormalPowerTable& table);

// Slot traces of a table, without weights: traces[alpha][ray].
std::vector<std::vector<double>> boundary_traces(const FormalPowerTable& table);

// Same slot layout, computed ray by ray without storing interior values; for
// meshes too large to tabulate (the dense error evaluation).
std::vector<std::vector<double>> boundary_traces(const GeneratingSequence& sequence, const RadialMesh& mesh,
                                                 int max_degree, const PowerOptions& options = {});

struct DroppedFunction {
  int alpha;
  double residual_ratio;  // post-projection norm / original norm
};

struct OrthonormalBasis {
  std::vector<std::vector<double>> functions;  // u_k at the boundary nodes
  std::vector<int> alpha;                      // raw slot of each kept function
  // transform[k][slot]: u_k = sum_slot transform[k][slot] * trace_slot.
  std::vector<std::vector<double>> transform;
  std::vector<DroppedFunction> dropped;

  std::size_t size() const { return functions.size(); }
};

// Modified Gram-Schmidt with one re-orthogonalization pass, in slot order. A
// function whose residual norm falls below drop_tol times its original norm
// is dropped and logged.
OrthonormalBasis orthonormalize(const BoundarySystem& system, double drop_tol = 1e-10);

// max |<u_a, u_b> - delta_ab|.
double orthonormality_defect(const OrthonormalBasis& basis, std::span<const double> weights);

struct FitResult {
  std::vector<double> b;      // one per basis function, basis order
  std::vector<int> alpha;     // slot of each coefficient
  std::vector<double> fitted; // at the system's boundary nodes
  std::vector<double> residual;
  double nodal_error = 0.0;   // sqrt(sum residual^2 w)
};

FitResult fit(const OrthonormalBasis& basis, std::span<const double> weights, std::span<const double> data);

// sqrt(2 pi / Q * sum (data - fitted)^2) over Q equally spaced boundary points.
double error_norm(std::span<const double> data, std::span<const double> fitted);

// Periodic piecewise-linear interpolation in theta of samples at sorted
// `angles` onto `targets`.
std::vector<double> periodic_linear(std::span<const double> angles, std::span<const double> values,
                                    std::span<const double> targets);

// sum_k b_k sum_slot transform[k][slot] * raw[slot][i] for raw traces sampled
// at any set of points.
std::vector<double> combine(const OrthonormalBasis& basis, std::span<const double> b,
                            const std::vector<std::vector<double>>& raw);

// The fitted combination at every mesh node of the table, ray-major.
std::vector<double> reconstruct_interior(const FormalPowerTable& table, const OrthonormalBasis& basis,
                                         std::span<const double> b);

}  // namespace fpeit
