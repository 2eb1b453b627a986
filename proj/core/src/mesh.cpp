#include "fpeit/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fpeit {
namespace {

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

std::vector<double> uniform_angles(int rays) {
  std::vector<double> angles(static_cast<std::size_t>(rays));
  for (int r = 0; r < rays; ++r) angles[r] = kTwoPi * r / rays;
  return angles;
}

}  // namespace

RadialMesh::RadialMesh(int rays, int steps, Complex center, double grading)
    : RadialMesh(rays >= 1 ? uniform_angles(rays) : std::vector<double>{}, steps, center, grading, true) {}

RadialMesh RadialMesh::with_angles(std::vector<double> angles, int steps, Complex center, double grading) {
  return RadialMesh(std::move(angles), steps, center, grading, true);
}

RadialMesh::RadialMesh(std::vector<double> angles, int steps, Complex center, double grading, bool)
    : angles_(std::move(angles)), center_(center), grading_(grading) {
  if (angles_.empty()) throw ValidationError("radial mesh needs at least one ray");
  if (steps < 1) throw ValidationError("radial mesh needs at least one radial step");
  if (!(grading > 0.0 && grading <= 1.0)) throw ValidationError("radial grading must lie in (0, 1]");
  if (!(std::norm(center) < 1.0 - kDomainTolerance)) {
    throw ValidationError("mesh center must lie strictly inside the unit disk");
  }
  for (std::size_t r = 0; r < angles_.size(); ++r) {
    if (!(angles_[r] >= 0.0 && angles_[r] < kTwoPi) || (r > 0 && angles_[r] <= angles_[r - 1])) {
      throw ValidationError("ray angles must be strictly increasing in [0, 2 pi)");
    }
  }

  t_.resize(static_cast<std::size_t>(steps) + 1);
  if (grading == 1.0) {
    for (int s = 0; s <= steps; ++s) t_[s] = static_cast<double>(s) / steps;
  } else {
    // Interval s has length proportional to grading^s.
    const double total = (1.0 - std::pow(grading, steps)) / (1.0 - grading);
    for (int s = 0; s <= steps; ++s) t_[s] = (1.0 - std::pow(grading, s)) / (1.0 - grading) / total;
  }
  t_.back() = 1.0;

  directions_.reserve(angles_.size());
  for (double theta : angles_) {
    const Complex e = std::polar(1.0, theta);
    // |center + rho e| = 1 with rho > 0.
    const double b = (std::conj(center) * e).real();
    const double rho = -b + std::sqrt(b * b + 1.0 - std::norm(center));
    directions_.push_back(rho * e);
  }
}

std::vector<double> RadialMesh::boundary_angles() const {
  std::vector<double> out(ray_count());
  for (std::size_t r = 0; r < ray_count(); ++r) out[r] = wrap_angle(std::arg(boundary_node(r)));
  return out;
}

std::vector<double> RadialMesh::boundary_weights() const {
  if (center_ == Complex(0.0)) return arc_weights(angles_);
  return arc_weights(boundary_angles());
}

std::vector<double> arc_weights(std::span<const double> sorted_angles) {
  const std::size_t n = sorted_angles.size();
  std::vector<double> weights(n, kTwoPi);
  if (n < 2) return weights;
  auto gap = [&](std::size_t i) {  // arc from angle i to angle i+1
    const double next = (i + 1 < n) ? sorted_angles[i + 1] : sorted_angles[0] + kTwoPi;
    return next - sorted_angles[i];
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double before = gap(i == 0 ? n - 1 : i - 1);
    weights[i] = 0.5 * (before + gap(i));
  }
  return weights;
}

std::vector<double> snapped_angles(int rays, std::span<const double> targets) {
  auto angles = uniform_angles(rays);
  std::vector<bool> taken(angles.size(), false);
  for (double raw : targets) {
    const double target = wrap_angle(raw);
    std::size_t best = 0;
    double best_distance = kTwoPi;
    for (std::size_t r = 0; r < angles.size(); ++r) {
      if (taken[r]) continue;
      const double d = std::abs(std::remainder(angles[r] - target, kTwoPi));
      if (d < best_distance) {
        best_distance = d;
        best = r;
      }
    }
    if (best_distance == kTwoPi) throw ValidationError("more snap targets than rays");
    angles[best] = target;
    taken[best] = true;
  }
  std::sort(angles.begin(), angles.end());
  if (std::adjacent_find(angles.begin(), angles.end()) != angles.end()) {
    throw ValidationError("snapped ray angles coincide; increase the ray count");
  }
  return angles;
}

}  // namespace fpeit
