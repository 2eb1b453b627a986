#include "fpeit/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fpeit/boundary_solver.hpp"
#include "fpeit/csv.hpp"
#include "fpeit/log.hpp"

namespace fpeit {
namespace {

using nlohmann::json;

template <class T>
void read(const json& j, const char* key, T& target, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    target = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError("config field '" + where + key + "' has the wrong type");
  }
}

void warn_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) log::warn("config: ignoring unknown field '" + where + key + "'");
  }
}

std::filesystem::path resolve(const std::string& file, const std::filesystem::path& base) {
  std::filesystem::path p(file);
  return p.is_relative() && !base.empty() ? base / p : p;
}

ConductivitySpec parse_conductivity(const json& j, const std::filesystem::path& base, const std::string& where) {
  if (!j.is_object()) throw ValidationError("config field '" + where + "' must be an object");
  ConductivitySpec spec;
  read(j, "type", spec.type, where);
  if (spec.type == "sinusoidal") {
    read(j, "omega", spec.omega, where);
    read(j, "epsilon_fallback", spec.epsilon_fallback, where);
    warn_unknown(j, {"type", "omega", "epsilon_fallback"}, where);
  } else if (spec.type == "lorentzian") {
    read(j, "beta", spec.beta, where);
    warn_unknown(j, {"type", "beta"}, where);
  } else if (spec.type == "uniform") {
    read(j, "value", spec.value, where);
    if (!(spec.value > 0.0)) throw ValidationError("config field '" + where + "value' must be positive");
    warn_unknown(j, {"type", "value"}, where);
  } else if (spec.type == "radial_rings") {
    warn_unknown(j, {"type"}, where);
  } else if (spec.type == "scene") {
    json scene = json::object();
    scene["background"] = j.value("background", 1.0);
    scene["shapes"] = j.value("shapes", json::array());
    spec.scene_json = scene.dump();
    scene_from_json(spec.scene_json);  // validates
    warn_unknown(j, {"type", "background", "shapes"}, where);
  } else if (spec.type == "grid_csv") {
    std::string file;
    read(j, "file", file, where);
    if (file.empty()) throw ValidationError("config field '" + where + "file' is required for grid_csv");
    spec.file = resolve(file, base);
    warn_unknown(j, {"type", "file"}, where);
  } else if (spec.type == "piecewise") {
    if (!j.contains("source")) throw ValidationError("config field '" + where + "source' is required for piecewise");
    auto source = parse_conductivity(j.at("source"), base, where + "source.");
    if (source.type == "piecewise") throw ValidationError("config field '" + where + "source' cannot be piecewise");
    spec.source = std::make_shared<const ConductivitySpec>(std::move(source));
    read(j, "slabs", spec.slabs, where);
    read(j, "samples", spec.samples, where);
    read(j, "K", spec.K, where);
    std::string interpolant = "linear";
    read(j, "interpolant", interpolant, where);
    if (interpolant == "linear") {
      spec.interpolant = InterpolantKind::linear;
    } else if (interpolant == "spline") {
      spec.interpolant = InterpolantKind::spline;
    } else {
      throw ValidationError("config field '" + where + "interpolant' must be linear or spline");
    }
    warn_unknown(j, {"type", "source", "slabs", "samples", "K", "interpolant"}, where);
  } else {
    throw ValidationError("config field '" + where + "type' has unknown value '" + spec.type + "'");
  }
  return spec;
}

BoundarySpec parse_boundary(const json& j, const std::filesystem::path& base) {
  const std::string where = "boundary.";
  if (!j.is_object()) throw ValidationError("config field 'boundary' must be an object");
  BoundarySpec spec;
  read(j, "type", spec.type, where);
  if (spec.type == "exact") {
    warn_unknown(j, {"type"}, where);
  } else if (spec.type == "cubic") {
    read(j, "shift", spec.shift, where);
    warn_unknown(j, {"type", "shift"}, where);
  } else if (spec.type == "harmonic") {
    read(j, "degree", spec.degree, where);
    std::string part = "re";
    read(j, "part", part, where);
    if (part != "re" && part != "im") throw ValidationError("config field 'boundary.part' must be re or im");
    spec.imaginary = part == "im";
    if (spec.degree < 0) throw ValidationError("config field 'boundary.degree' must be non-negative");
    warn_unknown(j, {"type", "degree", "part"}, where);
  } else if (spec.type == "csv") {
    std::string file;
    read(j, "file", file, where);
    if (file.empty()) throw ValidationError("config field 'boundary.file' is required for csv data");
    spec.file = resolve(file, base);
    warn_unknown(j, {"type", "file"}, where);
  } else {
    throw ValidationError("config field 'boundary.type' has unknown value '" + spec.type + "'");
  }
  return spec;
}

json conductivity_json(const ConductivitySpec& spec) {
  json j;
  j["type"] = spec.type;
  if (spec.type == "sinusoidal") {
    j["omega"] = spec.omega;
    j["epsilon_fallback"] = spec.epsilon_fallback;
  } else if (spec.type == "lorentzian") {
    j["beta"] = spec.beta;
  } else if (spec.type == "uniform") {
    j["value"] = spec.value;
  } else if (spec.type == "scene") {
    const json scene = json::parse(spec.scene_json);
    j["background"] = scene.at("background");
    j["shapes"] = scene.at("shapes");
  } else if (spec.type == "grid_csv") {
    j["file"] = spec.file.string();
  } else if (spec.type == "piecewise") {
    j["source"] = conductivity_json(*spec.source);
    j["slabs"] = spec.slabs;
    j["samples"] = spec.samples;
    j["K"] = spec.K;
    j["interpolant"] = spec.interpolant == InterpolantKind::linear ? "linear" : "spline";
  }
  return j;
}

json boundary_json(const BoundarySpec& spec) {
  json j;
  j["type"] = spec.type;
  if (spec.type == "cubic") j["shift"] = spec.shift;
  if (spec.type == "harmonic") {
    j["degree"] = spec.degree;
    j["part"] = spec.imaginary ? "im" : "re";
  }
  if (spec.type == "csv") j["file"] = spec.file.string();
  return j;
}

void apply(const json& j, RunConfig& config, const std::filesystem::path& base) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  if (j.contains("conductivity")) config.conductivity = parse_conductivity(j.at("conductivity"), base, "conductivity.");
  if (j.contains("boundary")) config.boundary = parse_boundary(j.at("boundary"), base);
  if (j.contains("sequence")) {
    std::string mode;
    read(j, "sequence", mode, "");
    if (mode == "auto") {
      config.sequence = SequenceMode::automatic;
    } else if (mode == "limit") {
      config.sequence = SequenceMode::limit;
    } else {
      throw ValidationError("config field 'sequence' must be auto or limit");
    }
  }
  if (j.contains("quadrature")) {
    std::string rule;
    read(j, "quadrature", rule, "");
    if (rule == "hermite") {
      config.quadrature = Quadrature::hermite;
    } else if (rule == "trapezoid") {
      config.quadrature = Quadrature::trapezoid;
    } else {
      throw ValidationError("config field 'quadrature' must be hermite or trapezoid");
    }
  }
  read(j, "N", config.N, "");
  read(j, "P", config.P, "");
  read(j, "S", config.S, "");
  read(j, "Q", config.Q, "");
  read(j, "grading", config.grading, "");
  read(j, "drop_tol", config.drop_tol, "");
  read(j, "h", config.h, "");
  read(j, "threads", config.threads, "");
  read(j, "dense_error", config.dense_error, "");
  read(j, "corner_snap", config.corner_snap, "");
  read(j, "dump_powers", config.dump_powers, "");
  read(j, "interior", config.interior, "");
  if (j.contains("verify")) {
    const auto& v = j.at("verify");
    if (!v.is_object()) throw ValidationError("config field 'verify' must be an object");
    read(v, "divergence_threshold", config.verify.divergence_threshold, "verify.");
    read(v, "vekua_threshold", config.verify.vekua_threshold, "verify.");
    read(v, "successor_threshold", config.verify.successor_threshold, "verify.");
    read(v, "divergence_points", config.verify.divergence_points, "verify.");
    read(v, "vekua_points", config.verify.vekua_points, "verify.");
    read(v, "successor_points", config.verify.successor_points, "verify.");
    read(v, "seed", config.verify.seed, "verify.");
    warn_unknown(v,
                 {"divergence_threshold", "vekua_threshold", "successor_threshold", "divergence_points",
                  "vekua_points", "successor_points", "seed"},
                 "verify.");
  }
  warn_unknown(j,
               {"preset", "conductivity", "boundary", "sequence", "quadrature", "N", "P", "S", "Q", "grading",
                "drop_tol", "h", "threads", "dense_error", "corner_snap", "dump_powers", "interior", "verify"},
               "");
}

json disk_scene(double cx) {
  return {{"type", "scene"},
          {"background", 10.0},
          {"shapes", json::array({{{"kind", "disk"}, {"cx", cx}, {"cy", 0.0}, {"r2", 0.2}, {"value", 100.0}}})}};
}

json triangle_scene() {
  // Apexes toward theta = pi/4 and 5 pi/4; the third vertex sits off the diagonal.
  json vertices = json::array();
  for (auto [r, theta] : {std::pair{0.9, kPi / 4.0}, std::pair{0.4, 3.0 * kPi / 4.0}, std::pair{0.9, 5.0 * kPi / 4.0}}) {
    vertices.push_back({r * std::cos(theta), r * std::sin(theta)});
  }
  return {{"type", "scene"},
          {"background", 10.0},
          {"shapes", json::array({{{"kind", "polygon"}, {"vertices", vertices}, {"value", 100.0}}})}};
}

json preset_json(std::string_view name) {
  const json exact = {{"type", "exact"}};
  auto cubic = [](double shift) { return json{{"type", "cubic"}, {"shift", shift}}; };
  json j;
  if (name == "uniform") {
    j = {{"conductivity", {{"type", "uniform"}, {"value", 1.0}}},
         {"boundary", {{"type", "harmonic"}, {"degree", 2}, {"part", "re"}}},
         {"N", 10},
         {"P", 360}};
  } else if (name == "sinusoidal") {
    j = {{"conductivity", {{"type", "sinusoidal"}, {"omega", kPi}}}, {"boundary", exact}};
  } else if (name == "lorentzian-0" || name == "lorentzian-0.5" || name == "lorentzian-1") {
    const double beta = name == "lorentzian-0" ? 0.0 : name == "lorentzian-0.5" ? 0.5 : 1.0;
    j = {{"conductivity", {{"type", "lorentzian"}, {"beta", beta}}}, {"boundary", exact}};
  } else if (name == "radial-rings") {
    j = {{"conductivity", {{"type", "radial_rings"}}}, {"boundary", cubic(0.0)}};
  } else if (name == "disk-center") {
    j = {{"conductivity", disk_scene(0.0)}, {"boundary", cubic(0.0)}};
  } else if (name == "disk-0.6") {
    j = {{"conductivity", disk_scene(0.6)}, {"boundary", cubic(0.6)}};
  } else if (name == "disk-0.79") {
    j = {{"conductivity", disk_scene(0.79)}, {"boundary", cubic(0.79)}};
  } else if (name == "triangle") {
    j = {{"conductivity", triangle_scene()}, {"boundary", cubic(0.6)}, {"N", 30}, {"P", 61}, {"corner_snap", true}};
  } else {
    throw ValidationError("unknown preset '" + std::string(name) + "'");
  }
  j["dense_error"] = true;
  return j;
}

}  // namespace

RunConfig preset(std::string_view name) {
  RunConfig config;
  apply(preset_json(name), config, {});
  config.preset = std::string(name);
  return config;
}

std::vector<std::string> preset_names() {
  return {"uniform",     "sinusoidal", "lorentzian-0", "lorentzian-0.5", "lorentzian-1",
          "radial-rings", "disk-center", "disk-0.6",   "disk-0.79",      "triangle"};
}

RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  RunConfig config;
  if (j.contains("preset")) {
    std::string name;
    read(j, "preset", name, "");
    config = preset(name);
  }
  apply(j, config, base_dir);
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.parent_path());
}

void validate(const RunConfig& c) {
  auto fail = [](const std::string& message) { throw ValidationError("config: " + message); };
  if (c.N < 1) fail("N must be at least 1");
  if (c.P < 1) fail("P must be positive");
  if (c.S < 50) fail("S must be at least 50");
  if (c.Q < c.P) fail("Q must be at least P");
  if (!(c.grading > 0.0 && c.grading <= 1.0)) fail("grading must lie in (0, 1]");
  if (!(c.drop_tol > 0.0 && c.drop_tol < 1.0)) fail("drop_tol must lie in (0, 1)");
  if (!(c.h > 0.0 && c.h < 0.1)) fail("h must lie in (0, 0.1)");
  if (c.threads < 0) fail("threads must be non-negative");
  if (c.P < 2 * c.N + 1) {
    log::warn("P = " + std::to_string(c.P) + " is below 2N+1 = " + std::to_string(2 * c.N + 1) +
              "; some formal powers will be dropped");
  }
  if (c.corner_snap && c.conductivity.type != "scene") log::warn("corner_snap has no effect without a scene");
}

std::string to_json(const RunConfig& c) {
  json j;
  if (!c.preset.empty()) j["preset"] = c.preset;
  j["conductivity"] = conductivity_json(c.conductivity);
  j["boundary"] = boundary_json(c.boundary);
  j["sequence"] = c.sequence == SequenceMode::automatic ? "auto" : "limit";
  j["N"] = c.N;
  j["P"] = c.P;
  j["S"] = c.S;
  j["Q"] = c.Q;
  j["grading"] = c.grading;
  j["quadrature"] = c.quadrature == Quadrature::hermite ? "hermite" : "trapezoid";
  j["drop_tol"] = c.drop_tol;
  j["h"] = c.h;
  j["threads"] = c.threads;
  j["dense_error"] = c.dense_error;
  j["corner_snap"] = c.corner_snap;
  j["dump_powers"] = c.dump_powers;
  j["interior"] = c.interior;
  j["verify"] = {{"divergence_threshold", c.verify.divergence_threshold},
                 {"vekua_threshold", c.verify.vekua_threshold},
                 {"successor_threshold", c.verify.successor_threshold},
                 {"divergence_points", c.verify.divergence_points},
                 {"vekua_points", c.verify.vekua_points},
                 {"successor_points", c.verify.successor_points},
                 {"seed", c.verify.seed}};
  return j.dump(2);
}

ConductivityField make_conductivity(const ConductivitySpec& spec) {
  if (spec.type == "sinusoidal") return sinusoidal_case(spec.omega, spec.epsilon_fallback).sigma;
  if (spec.type == "lorentzian") return lorentzian_case(spec.beta).sigma;
  if (spec.type == "uniform") return ConductivityField::uniform(spec.value);
  if (spec.type == "radial_rings") return radial_rings_field();
  if (spec.type == "scene") return ConductivityField::scene(scene_from_json(spec.scene_json));
  if (spec.type == "grid_csv") {
    auto grid = std::make_shared<const GriddedConductivity>(GriddedConductivity::from_csv(spec.file));
    return ConductivityField::limit_case([grid](double x, double y) { return (*grid)(x, y); }, "grid_csv");
  }
  if (spec.type == "piecewise") {
    const auto source = make_conductivity(*spec.source);
    return ConductivityField::piecewise(
        sample_piecewise([source](double x, double y) { return source.evaluate(x, y); }, spec.slabs, spec.samples,
                         spec.K, spec.interpolant));
  }
  throw ValidationError("unknown conductivity type '" + spec.type + "'");
}

std::optional<ExactCase> exact_case(const ConductivitySpec& spec) {
  if (spec.type == "sinusoidal") return sinusoidal_case(spec.omega, spec.epsilon_fallback);
  if (spec.type == "lorentzian") return lorentzian_case(spec.beta);
  return std::nullopt;
}

std::function<double(double)> make_boundary_data(const RunConfig& config) {
  const auto& b = config.boundary;
  if (b.type == "exact") {
    auto exact = exact_case(config.conductivity);
    if (!exact) throw ValidationError("boundary type 'exact' needs a sinusoidal or lorentzian conductivity");
    return [u = exact->u_exact](double theta) { return static_cast<double>(u(std::cos(theta), std::sin(theta))); };
  }
  if (b.type == "cubic") {
    return [shift = b.shift](double theta) { return cubic_trace(std::cos(theta), std::sin(theta), shift); };
  }
  if (b.type == "harmonic") {
    return [n = b.degree, im = b.imaginary](double theta) { return im ? std::sin(n * theta) : std::cos(n * theta); };
  }
  if (b.type == "csv") {
    const auto table = csv::read(b.file, {"theta", "u"});
    const auto& theta = table.column("theta");
    const auto& u = table.column("u");
    if (theta.size() < 2) throw ValidationError("boundary csv '" + b.file.string() + "' needs at least two rows");
    std::vector<std::pair<double, double>> rows;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      double t = std::fmod(theta[i], kTwoPi);
      if (t < 0.0) t += kTwoPi;
      rows.emplace_back(t, u[i]);
    }
    std::ranges::sort(rows);
    std::vector<double> angles, values;
    for (const auto& [t, v] : rows) {
      if (!angles.empty() && t <= angles.back()) {
        throw ValidationError("boundary csv '" + b.file.string() + "' repeats an angle");
      }
      angles.push_back(t);
      values.push_back(v);
    }
    return [angles, values](double theta) {
      const double target[1] = {theta};
      return periodic_linear(angles, values, target)[0];
    };
  }
  throw ValidationError("unknown boundary type '" + b.type + "'");
}

std::optional<LongField> exact_potential(const RunConfig& config) {
  if (config.boundary.type == "exact") {
    if (auto exact = exact_case(config.conductivity)) return exact->u_exact;
    return std::nullopt;
  }
  if (config.boundary.type == "harmonic" && config.conductivity.type == "uniform") {
    return [n = config.boundary.degree, im = config.boundary.imaginary](long double x, long double y) {
      const std::complex<long double> w = std::pow(std::complex<long double>(x, y), n);
      return im ? w.imag() : w.real();
    };
  }
  return std::nullopt;
}

std::vector<double> corner_angles(const ConductivitySpec& spec) {
  std::vector<double> angles;
  if (spec.type != "scene") return angles;
  for (const auto& shape : scene_from_json(spec.scene_json).shapes) {
    if (const auto* polygon = std::get_if<PolygonShape>(&shape.geometry)) {
      for (Complex v : polygon->vertices) {
        double a = std::arg(v);
        if (a < 0.0) a += kTwoPi;
        angles.push_back(a);
      }
    }
  }
  return angles;
}

}  // namespace fpeit
