#include <doctest.h>

#include <cmath>
#include <random>

#include "fpeit/pseudoanalytic.hpp"
#include "fpeit/verification.hpp"
#include "oracles.hpp"

using namespace fpeit;

namespace {

const Complex I(0.0, 1.0);

ScalarField constant(double c) {
  return [c](double, double) { return c; };
}

}  // namespace

TEST_CASE("pairs built from p") {
  const std::vector<double> p = {2.0, 0.5};
  const auto pair = pair_from_p(p);
  CHECK(pair.F[0] == Complex(2.0, 0.0));
  CHECK(pair.G[0] == Complex(0.0, 0.5));
  CHECK(pair.G[1] == Complex(0.0, 2.0));
  CHECK_NOTHROW(validate_pair(pair));

  const std::vector<double> bad = {1.0, 0.0};
  CHECK_THROWS_AS(pair_from_p(bad), ValidationError);
  const std::vector<double> nan = {std::nan("")};
  CHECK_THROWS_AS(pair_from_p(nan), ValidationError);

  // (1, -i) has Im(conj F G) < 0.
  GeneratingPairField flipped{{Complex(1.0)}, {Complex(0.0, -1.0)}};
  CHECK_THROWS_AS(validate_pair(flipped), ValidationError);
}

TEST_CASE("adjoint pair") {
  GeneratingPairField pair{{Complex(1.0)}, {I}};
  const auto adj = adjoint(pair);
  CHECK(adj.F[0] == -I);
  CHECK(adj.G[0] == Complex(1.0));
}

TEST_CASE("sinusoidal sequence at the origin") {
  const auto field = sinusoidal_case(oracle::pi).sigma;
  const auto seq = build_sequence(field);
  CHECK(seq.period() == 2);
  // sigma1(0) = 3, sigma2(0) = 2.
  CHECK(seq.factor(0)(0.0, 0.0) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
  CHECK(seq.factor(1)(0.0, 0.0) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
  CHECK(seq.factor(2)(0.3, -0.1) == seq.factor(0)(0.3, -0.1));
  CHECK(seq.factor(-1)(0.3, -0.1) == seq.factor(1)(0.3, -0.1));

  const auto limit = build_sequence(field, SequenceMode::limit);
  CHECK(limit.period() == 1);
  CHECK(limit.factor(0)(0.2, 0.4) == doctest::Approx(std::sqrt(field(0.2, 0.4))));
}

TEST_CASE("sequences for uniform and ring fields") {
  const auto u = build_sequence(ConductivityField::uniform(7.0));
  CHECK(u.period() == 1);
  CHECK(u.factor(0)(0.1, 0.2) == 1.0);

  const auto rings = build_sequence(radial_rings_field());
  CHECK(rings.period() == 1);
  CHECK(rings.factor(0)(0.0, 0.0) == doctest::Approx(10.0));
  CHECK(rings.factor(5)(0.9, 0.0) == doctest::Approx(std::sqrt(30.0)));

  CHECK_THROWS_AS(GeneratingSequence({}), ValidationError);
  CHECK_THROWS_AS(GeneratingSequence({constant(1), constant(1), constant(1)}), ValidationError);
}

TEST_CASE("characteristic coefficients") {
  SUBCASE("p = 1 gives zero coefficients") {
    const auto c = coefficients_of_p(constant(1.0), Complex(0.2, 0.1), 1e-4);
    CHECK(std::abs(c.A) == 0.0);
    CHECK(std::abs(c.B) == 0.0);
    CHECK(std::abs(c.a) == 0.0);
    CHECK(std::abs(c.b) == 0.0);
  }
  SUBCASE("p = e^x gives B = b = 1") {
    ScalarField p = [](double x, double) { return std::exp(x); };
    const auto c = coefficients_of_p(p, Complex(0.3, -0.4), 1e-4);
    CHECK(std::abs(c.B - 1.0) < 1e-7);
    CHECK(std::abs(c.b - 1.0) < 1e-7);
  }
  SUBCASE("general formula against the closed form and the analytic values") {
    // p = exp(x + y^2 / 2): B = 1 - i y, b = 1 + i y.
    ScalarField p = [](double x, double y) { return std::exp(x + 0.5 * y * y); };
    const auto pair = GeneratingPair::from_p(p);
    for (Complex z : {Complex(0.0, 0.0), Complex(0.3, 0.5), Complex(-0.6, -0.2)}) {
      const auto general = characteristic_coefficients(pair, z, 1e-4);
      const auto closed = coefficients_of_p(p, z, 1e-4);
      const Complex B_exact(1.0, -z.imag());
      const Complex b_exact(1.0, z.imag());
      CHECK(std::abs(general.A) < 1e-7);
      CHECK(std::abs(general.a) < 1e-7);
      CHECK(std::abs(general.B - B_exact) < 1e-6);
      CHECK(std::abs(general.b - b_exact) < 1e-6);
      CHECK(std::abs(general.B - closed.B) <= 10 * 1e-8 * std::abs(B_exact));
      CHECK(std::abs(general.b - closed.b) <= 10 * 1e-8 * std::abs(b_exact));
    }
  }
  SUBCASE("degenerate pair") {
    GeneratingPair pair{[](Complex) { return Complex(1.0); }, [](Complex) { return Complex(2.0); }};
    CHECK_THROWS_AS(characteristic_coefficients(pair, Complex(0.1, 0.1), 1e-4), NumericalError);
  }
}

TEST_CASE("one-sided differences near the circle") {
  ComplexField f = [](Complex z) { return z * z; };
  // Derivative of z^2 under the factorless convention is 4z.
  const Complex z = std::polar(1.0, 0.7);
  const auto d = wirtinger(f, z, 1e-4);
  CHECK(std::abs(d.dz - 4.0 * z) < 1e-6);
  CHECK(std::abs(d.dzbar) < 1e-6);
}

TEST_CASE("(F,G)-derivative") {
  const auto field = sinusoidal_case(oracle::pi).sigma;
  const auto pair = build_sequence(field).pair_for(0);
  for (Complex z : {Complex(0.1, 0.2), Complex(-0.5, 0.3)}) {
    CHECK(std::abs(fg_derivative(pair.F, pair, z, 1e-4)) < 1e-6);
    CHECK(std::abs(fg_derivative(pair.G, pair, z, 1e-4)) < 1e-6);
  }
  const auto unit = GeneratingPair::from_p(constant(1.0));
  const Complex z(0.3, -0.4);
  CHECK(std::abs(fg_derivative([](Complex w) { return w * w; }, unit, z, 1e-4) - 4.0 * z) < 1e-7);
}

TEST_CASE("Vekua residual examples") {
  const auto one = constant(1.0);
  const Complex z(0.2, 0.3);
  CHECK(vekua_residual([](Complex w) { return std::conj(w); }, one, z, 1e-4) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(vekua_residual([](Complex w) { return w; }, one, z, 1e-4) < 1e-10);
  ScalarField p = [](double x, double y) { return 2.0 + std::sin(x) * std::cos(y); };
  ComplexField P = [&](Complex w) { return Complex(p(w.real(), w.imag())); };
  CHECK(vekua_residual(P, p, z, 1e-4) < 1e-7);
}

TEST_CASE("(F,G)-integral examples") {
  std::vector<double> t(101);
  for (std::size_t s = 0; s < t.size(); ++s) t[s] = static_cast<double>(s) / 100.0;
  const Ray ray{0.0, 1.0, t};
  const auto pair = pair_from_p(std::vector<double>(t.size(), 1.0));

  std::vector<Complex> ones(t.size(), 1.0), zs(t.size());
  for (std::size_t s = 0; s < t.size(); ++s) zs[s] = ray.node(s);
  CHECK(std::abs(fg_integral(ones, pair, ray).back() - 1.0) < 1e-14);
  CHECK(std::abs(fg_integral(zs, pair, ray).back() - 0.5) < 1e-14);
  CHECK(fg_integral(zs, pair, ray).front() == Complex(0.0));
}

TEST_CASE("(F,G)-integral matches an independent trapezoid") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> t(61);
  for (std::size_t s = 0; s < t.size(); ++s) t[s] = std::pow(static_cast<double>(s) / 60.0, 1.2);
  const Ray ray{Complex(0.1, -0.1), std::polar(0.8, 2.0), t};
  std::vector<double> p(t.size());
  std::vector<Complex> W(t.size());
  for (std::size_t s = 0; s < t.size(); ++s) {
    p[s] = 1.5 + 0.5 * U(rng);
    W[s] = Complex(U(rng), U(rng));
  }
  const auto pair = pair_from_p(p);
  const auto got = fg_integral(W, pair, ray, Quadrature::trapezoid);

  std::vector<Complex> gw(t.size()), fw(t.size());
  for (std::size_t s = 0; s < t.size(); ++s) {
    gw[s] = -I * pair.G[s] * W[s] * ray.direction;
    fw[s] = -I * pair.F[s] * W[s] * ray.direction;
  }
  const auto ig = oracle::trapezoid(gw, t);
  const auto iF = oracle::trapezoid(fw, t);
  for (std::size_t s = 0; s < t.size(); ++s) {
    const Complex expect = pair.F[s] * ig[s].real() + pair.G[s] * iF[s].real();
    CHECK(std::abs(got[s] - expect) < 1e-14);
  }
}

TEST_CASE("round trip: integral of the (F,G)-derivative") {
  // For pseudoanalytic W = phi F + psi G the (F,G)-derivative is
  // phi_z F + psi_z G, and integrating it from z0 gives
  // 2 (W - phi(z0) F - psi(z0) G).
  const ScalarField p = oracle::ExpPairFunction::p;
  const auto pair_fn = GeneratingPair::from_p(p);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);

  for (int trial = 0; trial < 10; ++trial) {
    const oracle::ExpPairFunction w{{U(rng), U(rng), U(rng), U(rng)}};
    ComplexField W = [&](Complex z) { return w.W(z); };
    for (Complex z : {Complex(0.2, -0.1), Complex(-0.5, 0.4)}) {
      CHECK(vekua_residual(W, p, z, 1e-4) < 1e-7);
      CHECK(std::abs(fg_derivative(W, pair_fn, z, 1e-4) - w.derivative(z)) < 1e-6);
    }

    const Complex origin(0.1 * U(rng), 0.1 * U(rng));
    const Complex direction = std::polar(0.8, oracle::pi * U(rng));
    std::vector<double> sizes, err_exact, err_fd;
    for (int S : {40, 80, 160, 320}) {
      std::vector<double> t(static_cast<std::size_t>(S) + 1);
      for (int s = 0; s <= S; ++s) t[s] = static_cast<double>(s) / S;
      const Ray ray{origin, direction, t};
      std::vector<double> pv(t.size());
      std::vector<Complex> exact(t.size()), nodes(t.size());
      for (std::size_t s = 0; s < t.size(); ++s) {
        nodes[s] = ray.node(s);
        pv[s] = p(nodes[s].real(), nodes[s].imag());
        exact[s] = w.derivative(nodes[s]);
      }
      const auto pair = pair_from_p(pv);
      const auto fd = fg_derivative(W, pair_fn, nodes, 1e-5);
      const auto I_exact = fg_integral(exact, pair, ray, Quadrature::trapezoid);
      const auto I_fd = fg_integral(fd, pair, ray, Quadrature::trapezoid);
      const Complex zS = nodes.back();
      const Complex target = 2.0 * (w.W(zS) - w.phi(origin.real(), origin.imag()) * pair_fn.F(zS) -
                                    w.psi(origin.real(), origin.imag()) * pair_fn.G(zS));
      sizes.push_back(S);
      err_exact.push_back(std::abs(I_exact.back() - target));
      err_fd.push_back(std::abs(I_fd.back() - target));
    }
    INFO("errors ", err_exact[0], " .. ", err_exact[3]);
    CHECK(oracle::order(sizes, err_exact) >= 1.8);
    CHECK(oracle::order(sizes, err_fd) >= 1.8);
    // The Hermite rule reaches the same target much faster.
    std::vector<double> t(161);
    for (std::size_t s = 0; s < t.size(); ++s) t[s] = static_cast<double>(s) / 160.0;
    const Ray ray{origin, direction, t};
    std::vector<double> pv(t.size());
    std::vector<Complex> exact(t.size());
    for (std::size_t s = 0; s < t.size(); ++s) {
      const Complex z = ray.node(s);
      pv[s] = p(z.real(), z.imag());
      exact[s] = w.derivative(z);
    }
    const auto I = fg_integral(exact, pair_from_p(pv), ray, Quadrature::hermite);
    CHECK(std::abs(I.back() - 2.0 * (w.W(ray.node(160)) - w.phi(origin.real(), origin.imag()) * pair_fn.F(ray.node(160)) -
                                     w.psi(origin.real(), origin.imag()) * pair_fn.G(ray.node(160)))) < 1e-7);
  }
}

TEST_CASE("successor residual shrinks with the stencil") {
  const auto field = sinusoidal_case(oracle::pi).sigma;
  const auto seq = build_sequence(field);
  const std::vector<Complex> pts = {Complex(0.1, 0.2), Complex(-0.4, 0.3), Complex(0.5, -0.5)};
  const double coarse = successor_residual(seq, 0, pts, 1e-2);
  const double fine = successor_residual(seq, 0, pts, 1e-3);
  CHECK(fine < coarse / 50.0);
  CHECK(fine < 1e-4);
  CHECK(successor_residual(seq, 1, pts, 1e-3) < 1e-4);

  // Through the general formula the successor relation holds exactly even
  // at a coarse stencil: both pairs see the same difference ratios.
  for (Complex z : pts) {
    const auto c0 = characteristic_coefficients(seq.pair_for(0), z, 1e-2);
    const auto c1 = characteristic_coefficients(seq.pair_for(1), z, 1e-2);
    CHECK(std::abs(c1.B + c0.b) < 1e-12);
  }
}
