#include "fpeit/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "fpeit/csv.hpp"
#include "fpeit/log.hpp"
#include "fpeit/verification.hpp"

namespace fpeit {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

PowerOptions power_options(const RunConfig& config) { return {config.quadrature, config.threads}; }

// Significance cut used when listing coefficients in the report.
constexpr double kSignificant = 1e-3;

template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    log::error(e.what());
    return kExitValidation;
  } catch (const DomainError& e) {
    log::error(e.what());
    return kExitValidation;
  } catch (const NumericalError& e) {
    log::error(e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    log::error(e.what());
    return kExitNumerical;
  }
}

void prepare_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ValidationError("output directory '" + dir.string() + "' is not writable");
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << text << '\n';
}

}  // namespace

RadialMesh make_mesh(const RunConfig& config) {
  if (config.corner_snap) {
    const auto corners = corner_angles(config.conductivity);
    if (!corners.empty()) {
      return RadialMesh::with_angles(snapped_angles(config.P, corners), config.S, 0.0, config.grading);
    }
  }
  return RadialMesh(config.P, config.S, 0.0, config.grading);
}

SolveResult solve(const RunConfig& config) {
  validate(config);
  const auto start = Clock::now();
  const auto field = make_conductivity(config.conductivity);
  const auto sequence = build_sequence(field, config.sequence);
  const auto boundary = make_boundary_data(config);

  SolveResult result(build_table(sequence, make_mesh(config), config.N, power_options(config)));
  result.timings.powers = seconds_since(start);
  log::info("formal powers built: N=" + std::to_string(config.N) + ", P=" + std::to_string(config.P) +
            ", S=" + std::to_string(config.S) + ", period " + std::to_string(sequence.period()));

  const auto fit_start = Clock::now();
  result.system = assemble_system(result.table);
  result.basis = orthonormalize(result.system, config.drop_tol);
  result.data.reserve(result.system.angles.size());
  for (double theta : result.system.angles) result.data.push_back(boundary(theta));
  result.fit = fit(result.basis, result.system.weights, result.data);
  result.timings.fit = seconds_since(fit_start);

  const auto error_start = Clock::now();
  const auto Q = static_cast<std::size_t>(config.Q);
  result.error_theta.resize(Q);
  for (std::size_t q = 0; q < Q; ++q) result.error_theta[q] = kTwoPi * static_cast<double>(q) / config.Q;
  result.error_data.reserve(Q);
  for (double theta : result.error_theta) result.error_data.push_back(boundary(theta));
  if (config.dense_error) {
    const RadialMesh dense(config.Q, config.S, 0.0, config.grading);
    const auto raw = boundary_traces(sequence, dense, config.N, power_options(config));
    result.error_fit = combine(result.basis, result.fit.b, raw);
  } else {
    result.error_fit = periodic_linear(result.system.angles, result.fit.fitted, result.error_theta);
  }
  result.E = error_norm(result.error_data, result.error_fit);
  result.timings.error = seconds_since(error_start);
  result.timings.total = seconds_since(start);
  log::info("E = " + csv::format(result.E) + ", basis size " + std::to_string(result.basis.size()));
  return result;
}

VerifyReport verify(const RunConfig& config) {
  validate(config);
  VerifyReport report;
  const auto& v = config.verify;
  const auto field = make_conductivity(config.conductivity);
  const auto sequence = build_sequence(field, config.sequence);

  if (auto u = exact_potential(config)) {
    LongField sigma;
    if (auto exact = exact_case(config.conductivity)) {
      sigma = exact->sigma_exact;
    } else {
      sigma = [field](long double x, long double y) {
        return static_cast<long double>(field.evaluate(static_cast<double>(x), static_cast<double>(y)));
      };
    }
    const auto points = random_interior_points(v.divergence_points, 0.99, v.seed);
    report.divergence = divergence_residual(sigma, *u, points, config.h).max_residual;
    if (*report.divergence > v.divergence_threshold) {
      report.failures.push_back("divergence residual " + csv::format(*report.divergence) + " exceeds " +
                                csv::format(v.divergence_threshold));
    }
  }

  const auto table = build_table(sequence, make_mesh(config), config.N, power_options(config));
  PseudoanalyticityOptions options;
  options.h = config.h;
  options.steps = config.S;
  options.max_points = v.vekua_points;
  options.quadrature = config.quadrature;
  options.field = &field;
  options.threads = config.threads;
  report.vekua = pseudoanalyticity_check(table, sequence, options);
  // Radial paths to neighbouring points cross a jump at different places, so
  // the powers are not smooth there and the residual is informational only.
  const auto& type = config.conductivity.type;
  report.vekua_gated = type != "scene" && type != "radial_rings" && type != "piecewise";
  if (!report.vekua_gated) log::warn("conductivity has jumps; Vekua residuals are reported but not checked");
  for (std::size_t n = 0; report.vekua_gated && n < report.vekua.size(); ++n) {
    if (report.vekua[n] > v.vekua_threshold) {
      report.failures.push_back("Vekua residual of degree " + std::to_string(n) + " is " +
                                csv::format(report.vekua[n]) + ", above " + csv::format(v.vekua_threshold));
    }
  }

  // Successor checks away from jumps and the rim, where differences are meaningful.
  std::vector<Complex> points;
  for (Complex z : random_interior_points(4 * v.successor_points, 0.9, v.seed + 1)) {
    if (points.size() == v.successor_points) break;
    const double base = field.evaluate(z.real(), z.imag());
    bool smooth = true;
    for (int dx = -1; dx <= 1 && smooth; ++dx) {
      for (int dy = -1; dy <= 1 && smooth; ++dy) {
        const Complex w = z + 2.0 * config.h * Complex(dx, dy);
        smooth = std::abs(field.evaluate(w.real(), w.imag()) - base) <= 0.01 * base;
      }
    }
    if (smooth) points.push_back(z);
  }
  for (int m = 0; m < sequence.period(); ++m) {
    report.successor.push_back(successor_residual(sequence, m, points, config.h));
    if (report.successor.back() > v.successor_threshold) {
      report.failures.push_back("successor residual for pair " + std::to_string(m) + " is " +
                                csv::format(report.successor.back()) + ", above " +
                                csv::format(v.successor_threshold));
    }
  }
  report.passed = report.failures.empty();
  return report;
}

int run_solve(const RunConfig& config, const std::filesystem::path& out_dir) {
  return guarded([&] {
    prepare_directory(out_dir);
    const auto result = solve(config);

    {
      csv::Writer out(out_dir / "coefficients.csv", {"alpha", "b"});
      for (std::size_t k = 0; k < result.fit.b.size(); ++k) out.row(result.fit.alpha[k], result.fit.b[k]);
    }
    {
      csv::Writer out(out_dir / "boundary_fit.csv", {"theta", "l", "data", "fit", "residual"});
      for (std::size_t q = 0; q < result.error_theta.size(); ++q) {
        const double theta = result.error_theta[q];
        out.row(theta, theta, result.error_data[q], result.error_fit[q], result.error_data[q] - result.error_fit[q]);
      }
    }
    if (config.interior) {
      const auto u = reconstruct_interior(result.table, result.basis, result.fit.b);
      const auto& mesh = result.table.mesh();
      csv::Writer out(out_dir / "interior.csv", {"x", "y", "u"});
      for (std::size_t r = 0; r < mesh.ray_count(); ++r) {
        for (std::size_t s = 0; s < mesh.nodes_per_ray(); ++s) {
          // The center is shared by every ray; write it once.
          if (s == 0 && r > 0) continue;
          const Complex z = mesh.node(r, s);
          out.row(z.real(), z.imag(), u[mesh.index(r, s)]);
        }
      }
    }
    if (config.dump_powers) write_powers_csv(result.table, out_dir / "powers.csv");

    nlohmann::json report;
    report["E"] = result.E;
    report["nodal_error"] = result.fit.nodal_error;
    report["basis_size"] = result.basis.size();
    report["raw_functions"] = 2 * config.N + 1;
    report["dropped"] = nlohmann::json::array();
    for (const auto& d : result.basis.dropped) {
      report["dropped"].push_back({{"alpha", d.alpha}, {"residual_ratio", d.residual_ratio}});
    }
    const double scale = std::sqrt(config.Q / kTwoPi);
    report["coefficients"] = nlohmann::json::array();
    report["significant_alpha"] = nlohmann::json::array();
    for (std::size_t k = 0; k < result.fit.b.size(); ++k) {
      report["coefficients"].push_back(
          {{"alpha", result.fit.alpha[k]}, {"b", result.fit.b[k]}, {"b_unweighted_scale", result.fit.b[k] * scale}});
      if (std::abs(result.fit.b[k]) > kSignificant) report["significant_alpha"].push_back(result.fit.alpha[k]);
    }
    report["timing_seconds"] = {{"powers", result.timings.powers},
                                {"fit", result.timings.fit},
                                {"error", result.timings.error},
                                {"total", result.timings.total}};
    report["config"] = nlohmann::json::parse(to_json(config));
    write_text(out_dir / "report.json", report.dump(2));
    return static_cast<int>(kExitOk);
  });
}

int run_verify(const RunConfig& config, const std::filesystem::path& out_file) {
  return guarded([&] {
    const auto report = verify(config);
    nlohmann::json j;
    j["divergence_residual"] = report.divergence ? nlohmann::json(*report.divergence) : nlohmann::json(nullptr);
    j["vekua_residual_per_degree"] = report.vekua;
    j["vekua_checked"] = report.vekua_gated;
    j["successor_residual_per_pair"] = report.successor;
    j["thresholds"] = {{"divergence", config.verify.divergence_threshold},
                       {"vekua", config.verify.vekua_threshold},
                       {"successor", config.verify.successor_threshold}};
    j["passed"] = report.passed;
    j["failures"] = report.failures;
    j["config"] = nlohmann::json::parse(to_json(config));
    if (out_file.has_parent_path()) prepare_directory(out_file.parent_path());
    write_text(out_file, j.dump(2));
    for (const auto& failure : report.failures) log::error("check failed: " + failure);
    return static_cast<int>(report.passed ? kExitOk : kExitCheckFailed);
  });
}

int run_powers(const RunConfig& config, const std::filesystem::path& out_dir) {
  return guarded([&] {
    validate(config);
    prepare_directory(out_dir);
    const auto field = make_conductivity(config.conductivity);
    const auto sequence = build_sequence(field, config.sequence);
    const auto table = build_table(sequence, make_mesh(config), config.N, power_options(config));
    write_powers_csv(table, out_dir / "powers.csv");
    return static_cast<int>(kExitOk);
  });
}

}  // namespace fpeit
