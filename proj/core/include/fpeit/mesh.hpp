#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fpeit/common.hpp"

namespace fpeit {

/// A straight path z(t) = origin + t * direction, sampled at parameters t_s.
struct Ray {
  Complex origin;
  Complex direction;
  std::span<const double> t;

  Complex node(std::size_t s) const { return origin + t[s] * direction; }
  std::size_t size() const { return t.size(); }
};

/// Rays from an interior center to the unit circle, each sampled at the same
/// radial parameters 0 = t_0 < ... < t_S = 1.
///
/// Node (r, s) = center + t_s * rho_r * e^{i theta_r}, where rho_r is the
/// distance from the center to the unit circle along theta_r, so node (r, S)
/// lies on the circle.
class RadialMesh {
 public:
  // Uniform angles 2 pi r / P. `grading` < 1 refines geometrically toward the
  // circle (step ratio between consecutive intervals); 1 means uniform steps.
  RadialMesh(int rays, int steps, Complex center = 0.0, double grading = 1.0);

  // Explicit ray angles in [0, 2 pi), strictly increasing.
  static RadialMesh with_angles(std::vector<double> angles, int steps, Complex center = 0.0,
                                double grading = 1.0);

  std::size_t ray_count() const { return angles_.size(); }
  std::size_t step_count() const { return t_.size() - 1; }
  std::size_t nodes_per_ray() const { return t_.size(); }
  std::size_t node_count() const { return ray_count() * nodes_per_ray(); }
  std::size_t index(std::size_t ray, std::size_t step) const { return ray * nodes_per_ray() + step; }

  Complex center() const { return center_; }
  double angle(std::size_t ray) const { return angles_[ray]; }
  std::span<const double> angles() const { return angles_; }
  std::span<const double> radial_parameters() const { return t_; }
  double grading() const { return grading_; }

  Ray ray(std::size_t r) const { return Ray{center_, directions_[r], t_}; }
  Complex node(std::size_t r, std::size_t s) const { return center_ + t_[s] * directions_[r]; }
  Complex boundary_node(std::size_t r) const { return node(r, step_count()); }

  // Polar angle of each boundary node on the unit circle.
  std::vector<double> boundary_angles() const;
  // Closed-curve trapezoid weights: half the sum of the two adjacent arc gaps.
  std::vector<double> boundary_weights() const;

 private:
  RadialMesh(std::vector<double> angles, int steps, Complex center, double grading, bool);

  std::vector<double> angles_;
  std::vector<double> t_;
  std::vector<Complex> directions_;
  Complex center_;
  double grading_ = 1.0;
};

// Uniform angles with the nearest ray moved onto each target angle (polygon
// vertices seen from the center). Returns the sorted angle list.
std::vector<double> snapped_angles(int rays, std::span<const double> targets);

// Arc-length weights of the closed-curve trapezoid rule for sorted angles.
std::vector<double> arc_weights(std::span<const double> sorted_angles);

}  // namespace fpeit
