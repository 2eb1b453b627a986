#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fpeit/common.hpp"

namespace fpeit {

enum class InterpolantKind { linear, spline };

/// One-dimensional interpolant through (y, value) samples.
///
/// Outside the sampled range the endpoint values are returned. The linear
/// variant preserves positivity of positive samples; the natural cubic spline
/// does not, so callers relying on positivity should stay with `linear`.
class Interpolant1D {
 public:
  Interpolant1D() = default;
  Interpolant1D(std::vector<double> abscissae, std::vector<double> values,
                InterpolantKind kind = InterpolantKind::linear);

  double operator()(double y) const;

  std::span<const double> abscissae() const { return y_; }
  std::span<const double> values() const { return v_; }
  InterpolantKind kind() const { return kind_; }

 private:
  std::vector<double> y_;
  std::vector<double> v_;
  std::vector<double> curvature_;  // spline second derivatives
  InterpolantKind kind_ = InterpolantKind::linear;
};

struct AnalyticSeparable {
  RealFn sigma1;  // factor in x
  RealFn sigma2;  // factor in y
  bool uniform = false;
};

// sigma(x, y) = ((x + K) / (chi + K)) * profile(y) for x in [x_lo, x_hi).
struct Slab {
  double x_lo = -1.0;
  double x_hi = 1.0;
  double chi = 0.0;
  double K = 2.0;
  Interpolant1D profile;

  double x_factor(double x) const { return (x + K) / (chi + K); }
};

struct PiecewiseSeparable {
  std::vector<Slab> slabs;

  // Half-open slabs [x_lo, x_hi); the last slab is closed on the right.
  const Slab& slab_at(double x) const;
};

struct LimitCase {
  ScalarField sampler;
};

struct DiskShape {
  double cx = 0.0;
  double cy = 0.0;
  double r2 = 0.0;  // squared radius
};

struct AnnulusShape {
  double cx = 0.0;
  double cy = 0.0;
  double r2_inner = 0.0;
  double r2_outer = 0.0;
};

struct PolygonShape {
  std::vector<Complex> vertices;
};

struct Shape {
  std::variant<DiskShape, AnnulusShape, PolygonShape> geometry;
  double value = 1.0;

  // Closed membership: the boundary belongs to the shape.
  bool contains(double x, double y) const;
};

struct GeometricScene {
  double background = 1.0;
  std::vector<Shape> shapes;

  // The last listed shape containing (x, y) wins.
  double value_at(double x, double y) const;
};

/// A positive conductivity on the closed unit disk.
///
/// Immutable after construction; evaluation is pure and thread-safe.
class ConductivityField {
 public:
  using Variant = std::variant<AnalyticSeparable, PiecewiseSeparable, LimitCase, GeometricScene>;

  struct Factors {
    double sigma1;
    double sigma2;
  };

  static ConductivityField uniform(double value = 1.0);
  static ConductivityField separable(RealFn sigma1, RealFn sigma2, std::string name = "separable");
  static ConductivityField piecewise(PiecewiseSeparable field, std::string name = "piecewise");
  static ConductivityField limit_case(ScalarField sampler, std::string name = "limit");
  static ConductivityField scene(GeometricScene scene, std::string name = "scene");

  // Throws DomainError outside the disk and ValidationError for a
  // non-positive or non-finite value.
  double evaluate(double x, double y) const;
  double operator()(double x, double y) const { return evaluate(x, y); }

  // Product form sigma1(x) * sigma2(y) of the separable variants (per slab
  // for piecewise fields). Throws ValidationError for other variants.
  Factors separable_factors(double x, double y) const;

  bool is_separable() const;
  bool is_uniform() const;

  const Variant& variant() const { return variant_; }
  const std::string& name() const { return name_; }
  std::pair<double, double> bounds() const { return bounds_; }

 private:
  ConductivityField(Variant variant, std::string name);
  double raw_value(double x, double y) const;
  void compute_bounds();

  Variant variant_;
  std::string name_;
  std::pair<double, double> bounds_{0.0, 0.0};
};

struct SlabSamples {
  double chi = 0.0;
  std::vector<std::pair<double, double>> points;  // (y, sigma), y strictly increasing
};

PiecewiseSeparable build_piecewise(std::span<const SlabSamples> samples,
                                   std::span<const double> slab_edges, double K = 2.0,
                                   InterpolantKind kind = InterpolantKind::linear);

// Samples `sigma` on the midline of M equal-width slabs of [-1, 1], q points
// per midline chord inside the disk, and builds the piecewise field.
PiecewiseSeparable sample_piecewise(const ScalarField& sigma, int slabs, int samples_per_slab,
                                    double K = 2.0, InterpolantKind kind = InterpolantKind::linear);

// Concentric rings: 100, 30, 20, 15, 30 on [0,.2), [.2,.4), [.4,.6), [.6,.8), [.8,1].
double eval_radial_piecewise(double r);
ConductivityField radial_rings_field();

GeometricScene scene_from_json(std::string_view json_text);

/// Conductivity sampled on a rectilinear grid (CSV header `x,y,sigma`).
/// Bilinear inside grid cells, clamped to the nearest cell outside the hull.
class GriddedConductivity {
 public:
  GriddedConductivity(std::vector<double> xs, std::vector<double> ys, std::vector<double> values);

  static GriddedConductivity from_csv(const std::filesystem::path& path);

  double operator()(double x, double y) const;

  std::span<const double> xs() const { return xs_; }
  std::span<const double> ys() const { return ys_; }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> values_;  // row-major: values_[iy * xs_.size() + ix]
};

}  // namespace fpeit
