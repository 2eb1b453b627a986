#pragma once

#include <filesystem>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpeit/conductivity.hpp"
#include "fpeit/pseudoanalytic.hpp"
#include "fpeit/quadrature.hpp"
#include "fpeit/verification.hpp"

namespace fpeit {

struct ConductivitySpec {
  // sinusoidal | lorentzian | uniform | radial_rings | scene | grid_csv | piecewise
  std::string type = "uniform";
  double omega = kPi;
  bool epsilon_fallback = false;
  double beta = 0.0;
  double value = 1.0;
  std::string scene_json;        // {"background": ..., "shapes": [...]}
  std::filesystem::path file;    // grid_csv
  // piecewise: sampled from `source` on `slabs` midlines with `samples` points each
  std::shared_ptr<const ConductivitySpec> source;
  int slabs = 32;
  int samples = 32;
  double K = 2.0;
  InterpolantKind interpolant = InterpolantKind::linear;
};

struct BoundarySpec {
  // exact | cubic | harmonic | csv
  std::string type = "harmonic";
  double shift = 0.0;            // cubic
  int degree = 2;                // harmonic
  bool imaginary = false;        // harmonic: Im z^n instead of Re z^n
  std::filesystem::path file;    // csv with header theta,u
};

struct VerifySettings {
  double divergence_threshold = 1e-4;
  double vekua_threshold = 1e-3;
  double successor_threshold = 1e-4;
  std::size_t divergence_points = 200;
  std::size_t vekua_points = 40;
  std::size_t successor_points = 50;
  std::uint64_t seed = 0;
};

struct RunConfig {
  std::string preset;  // empty when built from scratch
  ConductivitySpec conductivity;
  BoundarySpec boundary;
  SequenceMode sequence = SequenceMode::automatic;
  int N = 17;
  int P = 35;
  int S = 400;
  int Q = 1000;
  double grading = 1.0;
  Quadrature quadrature = Quadrature::hermite;
  double drop_tol = 1e-10;
  double h = 1e-4;
  int threads = 0;
  bool dense_error = false;
  bool corner_snap = false;
  bool dump_powers = false;
  bool interior = false;
  VerifySettings verify;
};

// Parses a JSON config. A "preset" key starts from that preset and the other
// keys override it; "conductivity" and "boundary" objects replace the preset's
// whole block. Relative file paths resolve against `base_dir`. Throws
// ValidationError naming the offending field.
RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

RunConfig preset(std::string_view name);
std::vector<std::string> preset_names();

// N >= 1, S >= 50, Q >= P, positive sizes. Warns when P < 2N + 1.
void validate(const RunConfig& config);

// Full config as JSON text (the provenance echo in reports).
std::string to_json(const RunConfig& config);

ConductivityField make_conductivity(const ConductivitySpec& spec);

// The exact case behind a sinusoidal or lorentzian conductivity.
std::optional<ExactCase> exact_case(const ConductivitySpec& spec);

// Boundary data as a function of the polar angle on the unit circle.
std::function<double(double)> make_boundary_data(const RunConfig& config);

// Exact potential in the disk when one is known (exact cases, or harmonic
// data with a uniform conductivity).
std::optional<LongField> exact_potential(const RunConfig& config);

// Polar angles (from the origin) of every polygon vertex in a scene.
std::vector<double> corner_angles(const ConductivitySpec& spec);

}  // namespace fpeit
