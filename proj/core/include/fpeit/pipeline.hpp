#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "fpeit/boundary_solver.hpp"
#include "fpeit/config.hpp"
#include "fpeit/formal_powers.hpp"

namespace fpeit {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitValidation = 2,
  kExitNumerical = 3,
};

struct SolveTimings {
  double powers = 0.0;
  double fit = 0.0;
  double error = 0.0;
  double total = 0.0;
};

/// Everything a solve produces, before anything is written to disk.
struct SolveResult {
  explicit SolveResult(FormalPowerTable powers) : table(std::move(powers)) {}

  FormalPowerTable table;
  BoundarySystem system;
  OrthonormalBasis basis;
  std::vector<double> data;  // boundary data at the ray endpoints
  FitResult fit;
  std::vector<double> error_theta;  // Q equally spaced angles
  std::vector<double> error_data;
  std::vector<double> error_fit;
  double E = 0.0;
  SolveTimings timings;
};

// Runs the pipeline in memory. Throws ValidationError / NumericalError.
SolveResult solve(const RunConfig& config);

// Mesh used for a config: uniform rays, or snapped onto polygon corners.
RadialMesh make_mesh(const RunConfig& config);

struct VerifyReport {
  std::optional<double> divergence;       // absent without a known potential
  std::vector<double> vekua;              // per degree
  bool vekua_gated = true;                // false for fields with jumps
  std::vector<double> successor;          // per sequence index
  bool passed = true;
  std::vector<std::string> failures;
};

VerifyReport verify(const RunConfig& config);

// File-writing front ends; return an ExitCode and never throw.
int run_solve(const RunConfig& config, const std::filesystem::path& out_dir);
int run_verify(const RunConfig& config, const std::filesystem::path& out_file);
int run_powers(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace fpeit
