#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "fpeit/boundary_solver.hpp"
#include "fpeit/pipeline.hpp"
#include "fpeit/verification.hpp"
#include "oracles.hpp"

using namespace fpeit;

namespace {

std::vector<double> sample(const RadialMesh& mesh, double (*f)(double)) {
  std::vector<double> out;
  for (double th : mesh.boundary_angles()) out.push_back(f(th));
  return out;
}

double one(double) { return 1.0; }
double cos1(double t) { return std::cos(t); }
double sin1(double t) { return std::sin(t); }
double cos2(double t) { return std::cos(2.0 * t); }

struct UniformFixture {
  RadialMesh mesh{35, 400};
  FormalPowerTable table = build_table(build_sequence(ConductivityField::uniform()), mesh, 17);
  BoundarySystem system = assemble_system(table);
};

}  // namespace

TEST_CASE("inner product") {
  const std::vector<double> f = {1.0, 2.0, 3.0}, g = {4.0, 5.0, 6.0}, w = {0.5, 1.0, 2.0};
  CHECK(inner_product(f, g, w) == doctest::Approx(2.0 + 10.0 + 36.0));
  const std::vector<double> short_w = {1.0};
  CHECK_THROWS_AS(inner_product(f, g, short_w), ValidationError);

  const RadialMesh mesh(64, 10);
  const auto w64 = mesh.boundary_weights();
  const auto c = sample(mesh, cos1), s = sample(mesh, sin1);
  CHECK(inner_product(c, c, w64) == doctest::Approx(oracle::pi));
  CHECK(std::abs(inner_product(c, s, w64)) < 1e-14);
}

TEST_CASE("orthonormalizing 1, cos, sin") {
  const RadialMesh mesh(40, 10);
  BoundarySystem sys;
  sys.max_degree = 1;
  sys.angles = mesh.boundary_angles();
  sys.weights = mesh.boundary_weights();
  sys.traces = {sample(mesh, one), sample(mesh, cos1), std::vector<double>(40, 0.0), sample(mesh, sin1)};
  const auto basis = orthonormalize(sys);
  REQUIRE(basis.size() == 3);
  CHECK(basis.alpha == std::vector<int>{0, 1, 3});
  CHECK(basis.dropped.empty());
  for (std::size_t i = 0; i < 40; ++i) {
    const double th = sys.angles[i];
    CHECK(basis.functions[0][i] == doctest::Approx(1.0 / std::sqrt(2.0 * oracle::pi)));
    CHECK(basis.functions[1][i] == doctest::Approx(std::cos(th) / std::sqrt(oracle::pi)));
    CHECK(basis.functions[2][i] == doctest::Approx(std::sin(th) / std::sqrt(oracle::pi)));
  }
  CHECK(orthonormality_defect(basis, sys.weights) <= 1e-12);

  SUBCASE("a duplicated trace is dropped") {
    sys.traces[3] = sys.traces[1];
    const auto dup = orthonormalize(sys);
    CHECK(dup.size() == 2);
    REQUIRE(dup.dropped.size() == 1);
    CHECK(dup.dropped[0].alpha == 3);
    CHECK(dup.dropped[0].residual_ratio < 1e-10);
  }
  SUBCASE("a zero trace is dropped") {
    sys.traces[0].assign(40, 0.0);
    const auto z = orthonormalize(sys);
    CHECK(z.size() == 2);
    CHECK(z.dropped[0].alpha == 0);
  }
}

TEST_CASE("uniform conductivity: full rank on 35 nodes") {
  UniformFixture fx;
  CHECK(fx.system.slot_count() == 36);
  const auto basis = orthonormalize(fx.system, 1e-10);
  CHECK(basis.size() == 35);
  CHECK(basis.dropped.empty());
  CHECK(orthonormality_defect(basis, fx.system.weights) <= 1e-10);

  // Gram matrix of the raw traces without the excluded slot: positive definite.
  std::vector<std::size_t> kept;
  for (std::size_t s = 0; s < fx.system.slot_count(); ++s)
    if (static_cast<int>(s) != fx.system.excluded_slot()) kept.push_back(s);
  const auto m = static_cast<Eigen::Index>(kept.size());
  const auto P = static_cast<Eigen::Index>(fx.system.angles.size());
  Eigen::MatrixXd A(P, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < P; ++i)
      A(i, j) = fx.system.traces[kept[j]][i] * std::sqrt(fx.system.weights[i]);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A.transpose() * A);
  CHECK(eig.eigenvalues().minCoeff() > 1e-12 * eig.eigenvalues().maxCoeff());

  // Projection of random data agrees with an independent least-squares fit.
  std::mt19937_64 rng(3);
  std::normal_distribution<double> N01;
  std::vector<double> data(fx.system.angles.size());
  for (double& d : data) d = N01(rng);
  const auto result = fit(basis, fx.system.weights, data);
  Eigen::VectorXd rhs(P);
  for (Eigen::Index i = 0; i < P; ++i) rhs(i) = data[i] * std::sqrt(fx.system.weights[i]);
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(rhs);
  const Eigen::VectorXd fitted = A * c;
  for (Eigen::Index i = 0; i < P; ++i)
    CHECK(result.fitted[i] == doctest::Approx(fitted(i) / std::sqrt(fx.system.weights[i])).epsilon(1e-8));
}

TEST_CASE("fitting harmonic data") {
  UniformFixture fx;
  const auto basis = orthonormalize(fx.system);

  const std::vector<double> zeros(35, 0.0);
  const auto zero_fit = fit(basis, fx.system.weights, zeros);
  for (double b : zero_fit.b) CHECK(b == 0.0);
  CHECK(zero_fit.nodal_error == 0.0);

  const auto data = sample(fx.mesh, cos2);
  const auto result = fit(basis, fx.system.weights, data);
  CHECK(result.nodal_error <= 1e-8);
  // The dominant coefficient in raw-slot terms sits on Re z^2.
  const auto raw = combine(basis, result.b, fx.system.traces);
  CHECK(raw.size() == 35);
  std::vector<double> slot_weight(fx.system.slot_count(), 0.0);
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t j = 0; j < slot_weight.size(); ++j) slot_weight[j] += result.b[k] * basis.transform[k][j];
  const auto top = std::max_element(slot_weight.begin(), slot_weight.end(),
                                    [](double a, double b) { return std::abs(a) < std::abs(b); });
  CHECK(top - slot_weight.begin() == 2);
  CHECK(*top == doctest::Approx(1.0).epsilon(1e-8));
  std::size_t largest_b = 0;
  for (std::size_t k = 1; k < result.b.size(); ++k)
    if (std::abs(result.b[k]) > std::abs(result.b[largest_b])) largest_b = k;
  CHECK(result.alpha[largest_b] == 2);

  // Dense error on the exact trace.
  std::vector<double> theta(1000), exact(1000);
  for (std::size_t q = 0; q < theta.size(); ++q) {
    theta[q] = 2.0 * oracle::pi * static_cast<double>(q) / 1000.0;
    exact[q] = std::cos(2.0 * theta[q]);
  }
  const auto traces = boundary_traces(build_sequence(ConductivityField::uniform()), RadialMesh(1000, 400), 17);
  CHECK(error_norm(exact, combine(basis, result.b, traces)) <= 1e-8);
}

TEST_CASE("projection optimality") {
  const auto seq = build_sequence(sinusoidal_case(oracle::pi).sigma);
  const RadialMesh mesh(35, 200);
  const auto sys = assemble_system(build_table(seq, mesh, 10));
  const auto basis = orthonormalize(sys);
  CHECK(orthonormality_defect(basis, sys.weights) <= 1e-10);
  std::vector<double> data;
  for (double th : sys.angles) data.push_back(std::exp(std::cos(th)) * std::sin(3.0 * th + 0.2));
  const auto best = fit(basis, sys.weights, data);
  for (const auto& u : basis.functions) CHECK(std::abs(inner_product(best.residual, u, sys.weights)) < 1e-12);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> N01;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> perturbed = best.fitted;
    for (const auto& u : basis.functions) {
      const double d = 1e-3 * N01(rng);
      for (std::size_t i = 0; i < perturbed.size(); ++i) perturbed[i] += d * u[i];
    }
    std::vector<double> r(data.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = data[i] - perturbed[i];
    CHECK(std::sqrt(inner_product(r, r, sys.weights)) > best.nodal_error);
  }
}

TEST_CASE("error norm and periodic interpolation") {
  const std::vector<double> a = {1.0, 1.0, 1.0, 1.0}, b = {0.0, 0.0, 0.0, 0.0};
  CHECK(error_norm(a, a) == 0.0);
  CHECK(error_norm(a, b) == doctest::Approx(std::sqrt(2.0 * oracle::pi)));
  const std::vector<double> empty;
  CHECK_THROWS_AS(error_norm(empty, empty), ValidationError);
  CHECK_THROWS_AS(error_norm(a, std::vector<double>{1.0}), ValidationError);

  const std::vector<double> angles = {0.0, oracle::pi / 2, oracle::pi, 3 * oracle::pi / 2};
  const std::vector<double> values = {0.0, 1.0, 2.0, 3.0};
  const std::vector<double> targets = {oracle::pi / 4, 7 * oracle::pi / 4, 2 * oracle::pi, -oracle::pi / 2};
  const auto out = periodic_linear(angles, values, targets);
  CHECK(out[0] == doctest::Approx(0.5));
  CHECK(out[1] == doctest::Approx(1.5));  // wraps from 3 back to 0
  CHECK(out[2] == doctest::Approx(0.0));
  CHECK(out[3] == doctest::Approx(3.0));
}

TEST_CASE("interior reconstruction") {
  UniformFixture fx;
  const auto basis = orthonormalize(fx.system);
  const auto data = sample(fx.mesh, cos2);
  const auto result = fit(basis, fx.system.weights, data);
  const auto u = reconstruct_interior(fx.table, basis, result.b);
  REQUIRE(u.size() == fx.mesh.node_count());
  double worst = 0.0;
  for (std::size_t r = 0; r < fx.mesh.ray_count(); ++r) {
    for (std::size_t s = 0; s < fx.mesh.nodes_per_ray(); ++s) {
      const Complex z = fx.mesh.node(r, s);
      worst = std::max(worst, std::abs(u[fx.mesh.index(r, s)] - (z.real() * z.real() - z.imag() * z.imag())));
    }
    CHECK(u[fx.mesh.index(r, fx.mesh.step_count())] == doctest::Approx(result.fitted[r]).epsilon(1e-12));
  }
  CHECK(worst <= 1e-6);

  const std::vector<double> zero_b(basis.size(), 0.0);
  for (double v : reconstruct_interior(fx.table, basis, zero_b)) CHECK(v == 0.0);
}

// Known failure, kept visible. Re Z of the (p, i/p) pair is not itself a
// solution of the conductivity equation, so the interior combination only
// matches u where the pair happens to make it so. The error at this point is
// about 0.06 and does not shrink with N (0.076 at N = 10, 17 and 25).
TEST_CASE("sinusoidal reconstruction near (0.3, 0.3)" * doctest::may_fail()) {
  const auto exact = sinusoidal_case(oracle::pi);
  const auto seq = build_sequence(exact.sigma);
  const RadialMesh mesh(40, 400);  // ray 5 points along pi / 4
  const auto table = build_table(seq, mesh, 17);
  const auto sys = assemble_system(table);
  const auto basis = orthonormalize(sys);
  std::vector<double> data;
  for (std::size_t r = 0; r < mesh.ray_count(); ++r) {
    const Complex z = mesh.boundary_node(r);
    data.push_back(exact.u(z.real(), z.imag()));
  }
  const auto result = fit(basis, sys.weights, data);
  const auto u = reconstruct_interior(table, basis, result.b);
  const auto t = mesh.radial_parameters();
  std::size_t s = 0;
  for (std::size_t k = 0; k < t.size(); ++k)
    if (std::abs(t[k] - 0.3 * std::sqrt(2.0)) < std::abs(t[s] - 0.3 * std::sqrt(2.0))) s = k;
  const Complex z = mesh.node(5, s);
  CHECK(std::abs(z - Complex(0.3, 0.3)) < 3e-3);
  CHECK(std::abs(u[mesh.index(5, s)] - oracle::sinusoidal_u(z.real(), z.imag(), oracle::pi)) <= 5e-2);
}

TEST_CASE("error decreases with N and runs are deterministic") {
  auto config = preset("sinusoidal");
  config.dense_error = false;
  config.P = 35;
  double previous = 1e300;
  for (int N : {5, 10, 17}) {
    config.N = N;
    const auto result = solve(config);
    INFO("N = ", N, " E = ", result.E);
    CHECK(result.E < previous);
    previous = result.E;
  }
  const auto a = solve(config);
  const auto b = solve(config);
  CHECK(a.fit.b == b.fit.b);
  CHECK(a.E == b.E);
}

TEST_CASE("triangle with N = 32 on 61 nodes is underdetermined") {
  // 65 candidate functions on 61 nodes: at most 61 survive and the fit
  // interpolates the nodes while the dense error stays large.
  auto config = preset("triangle");
  config.N = 32;
  const auto result = solve(config);
  CHECK(result.basis.size() <= 61);
  CHECK(result.fit.nodal_error < 1e-6);
  MESSAGE("triangle N=32, P=61: basis ", result.basis.size(), ", E = ", result.E);
}
