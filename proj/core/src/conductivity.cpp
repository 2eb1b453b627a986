#include "fpeit/conductivity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>

#include <json.hpp>

#include "fpeit/csv.hpp"

namespace fpeit {
namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

// Natural cubic spline second derivatives (tridiagonal Thomas sweep).
std::vector<double> natural_spline_curvature(const std::vector<double>& y, const std::vector<double>& v) {
  const std::size_t n = y.size();
  std::vector<double> m(n, 0.0);
  if (n < 3) return m;
  std::vector<double> diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = y[i] - y[i - 1];
    const double h1 = y[i + 1] - y[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((v[i + 1] - v[i]) / h1 - (v[i] - v[i - 1]) / h0);
  }
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double lower = y[i] - y[i - 1];
    const double w = lower / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
    if (i == 1) break;
  }
  return m;
}

bool on_segment(Complex p, Complex a, Complex b, double tol) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a) <= tol;
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab)) <= tol;
}

bool polygon_contains(const PolygonShape& polygon, double x, double y) {
  const auto& v = polygon.vertices;
  const Complex p(x, y);
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if (on_segment(p, v[j], v[i], kDomainTolerance)) return true;
    const double yi = v[i].imag(), yj = v[j].imag();
    if ((yi > y) != (yj > y)) {
      const double x_cross = v[j].real() + (y - yj) * (v[i].real() - v[j].real()) / (yi - yj);
      if (x < x_cross) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

Interpolant1D::Interpolant1D(std::vector<double> abscissae, std::vector<double> values,
                             InterpolantKind kind)
    : y_(std::move(abscissae)), v_(std::move(values)), kind_(kind) {
  require(y_.size() == v_.size(), "interpolant: abscissae and values differ in length");
  require(y_.size() >= 2, "interpolant: at least two samples are required");
  for (std::size_t i = 1; i < y_.size(); ++i) {
    require(y_[i] > y_[i - 1], "interpolant: sample ordinates must be strictly increasing");
  }
  if (kind_ == InterpolantKind::spline) curvature_ = natural_spline_curvature(y_, v_);
}

double Interpolant1D::operator()(double y) const {
  if (y <= y_.front()) return v_.front();
  if (y >= y_.back()) return v_.back();
  const auto it = std::upper_bound(y_.begin(), y_.end(), y);
  const std::size_t hi = static_cast<std::size_t>(it - y_.begin());
  const std::size_t lo = hi - 1;
  const double h = y_[hi] - y_[lo];
  const double a = (y_[hi] - y) / h;
  const double b = (y - y_[lo]) / h;
  double value = a * v_[lo] + b * v_[hi];
  if (kind_ == InterpolantKind::spline) {
    value += ((a * a * a - a) * curvature_[lo] + (b * b * b - b) * curvature_[hi]) * h * h / 6.0;
  }
  return value;
}

const Slab& PiecewiseSeparable::slab_at(double x) const {
  if (slabs.empty()) throw ValidationError("piecewise field has no slabs");
  const auto it = std::upper_bound(slabs.begin(), slabs.end(), x,
                                   [](double value, const Slab& s) { return value < s.x_hi; });
  return it == slabs.end() ? slabs.back() : *it;
}

bool Shape::contains(double x, double y) const {
  return std::visit(
      [&](const auto& g) -> bool {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, DiskShape>) {
          const double d2 = (x - g.cx) * (x - g.cx) + (y - g.cy) * (y - g.cy);
          return d2 <= g.r2 + kDomainTolerance;
        } else if constexpr (std::is_same_v<T, AnnulusShape>) {
          const double d2 = (x - g.cx) * (x - g.cx) + (y - g.cy) * (y - g.cy);
          return d2 >= g.r2_inner - kDomainTolerance && d2 <= g.r2_outer + kDomainTolerance;
        } else {
          return polygon_contains(g, x, y);
        }
      },
      geometry);
}

double GeometricScene::value_at(double x, double y) const {
  double value = background;
  for (const auto& shape : shapes) {
    if (shape.contains(x, y)) value = shape.value;
  }
  return value;
}

ConductivityField::ConductivityField(Variant variant, std::string name)
    : variant_(std::move(variant)), name_(std::move(name)) {
  compute_bounds();
}

ConductivityField ConductivityField::uniform(double value) {
  require(std::isfinite(value) && value > 0.0, "uniform conductivity must be positive");
  AnalyticSeparable field{[value](double) { return value; }, [](double) { return 1.0; }, true};
  return ConductivityField(std::move(field), "uniform");
}

ConductivityField ConductivityField::separable(RealFn sigma1, RealFn sigma2, std::string name) {
  require(static_cast<bool>(sigma1) && static_cast<bool>(sigma2), "separable factors must be set");
  for (int i = 0; i <= 200; ++i) {
    const double t = -1.0 + 2.0 * i / 200.0;
    require(sigma1(t) > 0.0 && sigma2(t) > 0.0,
            "separable factors must be positive on [-1, 1] (" + name + ")");
  }
  return ConductivityField(AnalyticSeparable{std::move(sigma1), std::move(sigma2), false},
                           std::move(name));
}

ConductivityField ConductivityField::piecewise(PiecewiseSeparable field, std::string name) {
  require(!field.slabs.empty(), "piecewise field has no slabs");
  return ConductivityField(std::move(field), std::move(name));
}

ConductivityField ConductivityField::limit_case(ScalarField sampler, std::string name) {
  require(static_cast<bool>(sampler), "limit-case sampler must be set");
  return ConductivityField(LimitCase{std::move(sampler)}, std::move(name));
}

ConductivityField ConductivityField::scene(GeometricScene scene, std::string name) {
  require(scene.background > 0.0, "scene background must be positive");
  for (const auto& shape : scene.shapes) require(shape.value > 0.0, "scene shape values must be positive");
  return ConductivityField(std::move(scene), std::move(name));
}

double ConductivityField::raw_value(double x, double y) const {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AnalyticSeparable>) {
          return v.sigma1(x) * v.sigma2(y);
        } else if constexpr (std::is_same_v<T, PiecewiseSeparable>) {
          const Slab& slab = v.slab_at(x);
          return slab.x_factor(x) * slab.profile(y);
        } else if constexpr (std::is_same_v<T, LimitCase>) {
          return v.sampler(x, y);
        } else {
          return v.value_at(x, y);
        }
      },
      variant_);
}

double ConductivityField::evaluate(double x, double y) const {
  if (!inside_unit_disk(x, y)) {
    throw DomainError("conductivity evaluated outside the unit disk at (" + std::to_string(x) + ", " +
                      std::to_string(y) + ")");
  }
  const double value = raw_value(x, y);
  if (!std::isfinite(value) || value <= 0.0) {
    throw ValidationError("conductivity '" + name_ + "' is not positive at (" + std::to_string(x) +
                          ", " + std::to_string(y) + ")");
  }
  return value;
}

ConductivityField::Factors ConductivityField::separable_factors(double x, double y) const {
  if (const auto* a = std::get_if<AnalyticSeparable>(&variant_)) return {a->sigma1(x), a->sigma2(y)};
  if (const auto* p = std::get_if<PiecewiseSeparable>(&variant_)) {
    const Slab& slab = p->slab_at(x);
    return {slab.x_factor(x), slab.profile(y)};
  }
  throw ValidationError("conductivity '" + name_ + "' has no separable factorization");
}

bool ConductivityField::is_separable() const {
  return std::holds_alternative<AnalyticSeparable>(variant_) ||
         std::holds_alternative<PiecewiseSeparable>(variant_);
}

bool ConductivityField::is_uniform() const {
  const auto* a = std::get_if<AnalyticSeparable>(&variant_);
  return a != nullptr && a->uniform;
}

void ConductivityField::compute_bounds() {
  if (const auto* scene = std::get_if<GeometricScene>(&variant_)) {
    double lo = scene->background, hi = scene->background;
    for (const auto& shape : scene->shapes) {
      lo = std::min(lo, shape.value);
      hi = std::max(hi, shape.value);
    }
    bounds_ = {lo, hi};
    return;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  constexpr int kRadii = 48;
  constexpr int kAngles = 96;
  for (int i = 0; i <= kRadii; ++i) {
    const double r = static_cast<double>(i) / kRadii;
    for (int j = 0; j < (i == 0 ? 1 : kAngles); ++j) {
      const double theta = kTwoPi * j / kAngles;
      const double value = evaluate(r * std::cos(theta), r * std::sin(theta));
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
  }
  bounds_ = {lo, hi};
}

PiecewiseSeparable build_piecewise(std::span<const SlabSamples> samples,
                                   std::span<const double> slab_edges, double K,
                                   InterpolantKind kind) {
  require(!samples.empty(), "build_piecewise: no slabs");
  require(slab_edges.size() == samples.size() + 1, "build_piecewise: need M+1 slab edges for M slabs");
  require(std::abs(slab_edges.front() + 1.0) <= kDomainTolerance &&
              std::abs(slab_edges.back() - 1.0) <= kDomainTolerance,
          "build_piecewise: slab edges must span [-1, 1]");
  require(std::isfinite(K) && K > 1.0, "build_piecewise: K must keep x + K > 0 on [-1, 1]");

  PiecewiseSeparable field;
  field.slabs.reserve(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const double lo = slab_edges[j];
    const double hi = slab_edges[j + 1];
    require(hi > lo, "build_piecewise: slab edges must be strictly increasing");
    const auto& slab = samples[j];
    require(slab.chi >= lo && slab.chi <= hi,
            "build_piecewise: sampling line of slab " + std::to_string(j + 1) + " lies outside it");
    require(slab.points.size() >= 2,
            "build_piecewise: slab " + std::to_string(j + 1) + " needs at least two samples");
    std::vector<double> ys, values;
    for (const auto& [y, sigma] : slab.points) {
      require(std::isfinite(sigma) && sigma > 0.0, "build_piecewise: conductivity samples must be positive");
      require(ys.empty() || y > ys.back(), "build_piecewise: sample ordinates must be strictly increasing");
      ys.push_back(y);
      values.push_back(sigma);
    }
    field.slabs.push_back(Slab{lo, hi, slab.chi, K, Interpolant1D(std::move(ys), std::move(values), kind)});
  }
  return field;
}

PiecewiseSeparable sample_piecewise(const ScalarField& sigma, int slabs, int samples_per_slab, double K,
                                    InterpolantKind kind) {
  require(slabs >= 1 && samples_per_slab >= 2, "sample_piecewise: need M >= 1 and q >= 2");
  std::vector<double> edges(static_cast<std::size_t>(slabs) + 1);
  for (int j = 0; j <= slabs; ++j) edges[j] = -1.0 + 2.0 * j / slabs;
  edges.back() = 1.0;

  std::vector<SlabSamples> samples(static_cast<std::size_t>(slabs));
  for (int j = 0; j < slabs; ++j) {
    const double chi = 0.5 * (edges[j] + edges[j + 1]);
    const double half_chord = std::sqrt(std::max(0.0, 1.0 - chi * chi));
    auto& slab = samples[j];
    slab.chi = chi;
    for (int k = 0; k < samples_per_slab; ++k) {
      const double y = -half_chord + 2.0 * half_chord * k / (samples_per_slab - 1);
      slab.points.emplace_back(y, sigma(chi, y));
    }
  }
  return build_piecewise(samples, edges, K, kind);
}

double eval_radial_piecewise(double r) {
  if (!(r >= -kDomainTolerance && r <= 1.0 + kDomainTolerance)) {
    throw DomainError("radial conductivity needs 0 <= r <= 1, got " + std::to_string(r));
  }
  static constexpr std::array<double, 4> kEdges{0.2, 0.4, 0.6, 0.8};
  static constexpr std::array<double, 5> kValues{100.0, 30.0, 20.0, 15.0, 30.0};
  // Radii within rounding of a ring edge count as the edge itself so that
  // every ray direction sees the same profile.
  for (double edge : kEdges) {
    if (std::abs(r - edge) <= kDomainTolerance) r = edge;
  }
  std::size_t ring = 0;
  while (ring < kEdges.size() && r >= kEdges[ring]) ++ring;
  return kValues[ring];
}

ConductivityField radial_rings_field() {
  return ConductivityField::limit_case(
      [](double x, double y) { return eval_radial_piecewise(std::hypot(x, y)); }, "radial-rings");
}

GeometricScene scene_from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("scene JSON: ") + e.what());
  }
  GeometricScene scene;
  try {
    scene.background = doc.at("background").get<double>();
    for (const auto& item : doc.value("shapes", nlohmann::json::array())) {
      const auto kind = item.at("kind").get<std::string>();
      Shape shape;
      shape.value = item.at("value").get<double>();
      if (kind == "disk") {
        shape.geometry = DiskShape{item.value("cx", 0.0), item.value("cy", 0.0), item.at("r2").get<double>()};
      } else if (kind == "annulus") {
        shape.geometry = AnnulusShape{item.value("cx", 0.0), item.value("cy", 0.0),
                                      item.at("r2_inner").get<double>(), item.at("r2_outer").get<double>()};
      } else if (kind == "polygon") {
        PolygonShape polygon;
        for (const auto& v : item.at("vertices")) polygon.vertices.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        require(polygon.vertices.size() >= 3, "scene JSON: polygon needs at least three vertices");
        shape.geometry = std::move(polygon);
      } else {
        throw ValidationError("scene JSON: unknown shape kind '" + kind + "'");
      }
      require(shape.value > 0.0, "scene JSON: shape value must be positive");
      scene.shapes.push_back(std::move(shape));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("scene JSON: ") + e.what());
  }
  require(scene.background > 0.0, "scene JSON: background must be positive");
  return scene;
}

GriddedConductivity::GriddedConductivity(std::vector<double> xs, std::vector<double> ys,
                                         std::vector<double> values)
    : xs_(std::move(xs)), ys_(std::move(ys)), values_(std::move(values)) {
  require(xs_.size() >= 2 && ys_.size() >= 2, "conductivity grid needs at least 2x2 nodes");
  require(values_.size() == xs_.size() * ys_.size(), "conductivity grid is incomplete");
  require(std::is_sorted(xs_.begin(), xs_.end()) && std::is_sorted(ys_.begin(), ys_.end()),
          "conductivity grid axes must be increasing");
  for (double v : values_) require(std::isfinite(v) && v > 0.0, "conductivity grid values must be positive");
}

GriddedConductivity GriddedConductivity::from_csv(const std::filesystem::path& path) {
  const auto table = csv::read(path, {"x", "y", "sigma"});
  const auto& x = table.column("x");
  const auto& y = table.column("y");
  const auto& s = table.column("sigma");

  std::vector<double> xs(x), ys(y);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  require(xs.size() * ys.size() == table.rows(),
          "conductivity CSV '" + path.string() + "' is not a complete rectilinear grid");

  std::vector<double> values(table.rows(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < table.rows(); ++i) {
    const auto ix = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x[i]) - xs.begin());
    const auto iy = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), y[i]) - ys.begin());
    values[iy * xs.size() + ix] = s[i];
  }
  for (double v : values) {
    require(!std::isnan(v), "conductivity CSV '" + path.string() + "' repeats a grid node");
  }
  return GriddedConductivity(std::move(xs), std::move(ys), std::move(values));
}

double GriddedConductivity::operator()(double x, double y) const {
  auto locate = [](std::span<const double> axis, double v, double& frac) {
    if (v <= axis.front()) {
      frac = 0.0;
      return std::size_t{0};
    }
    if (v >= axis.back()) {
      frac = 1.0;
      return axis.size() - 2;
    }
    const auto hi = static_cast<std::size_t>(std::upper_bound(axis.begin(), axis.end(), v) - axis.begin());
    const std::size_t lo = hi - 1;
    frac = (v - axis[lo]) / (axis[hi] - axis[lo]);
    return lo;
  };
  double fx = 0.0, fy = 0.0;
  const std::size_t ix = locate(xs_, x, fx);
  const std::size_t iy = locate(ys_, y, fy);
  const std::size_t nx = xs_.size();
  const double v00 = values_[iy * nx + ix];
  const double v10 = values_[iy * nx + ix + 1];
  const double v01 = values_[(iy + 1) * nx + ix];
  const double v11 = values_[(iy + 1) * nx + ix + 1];
  return (1 - fx) * (1 - fy) * v00 + fx * (1 - fy) * v10 + (1 - fx) * fy * v01 + fx * fy * v11;
}

}  // namespace fpeit
