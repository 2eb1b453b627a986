#pragma once

#include <span>
#include <vector>

#include "fpeit/common.hpp"
#include "fpeit/conductivity.hpp"
#include "fpeit/mesh.hpp"
#include "fpeit/quadrature.hpp"

// Bers' calculus of generating pairs. Derivatives follow the factorless
// convention d_z = d_x - i d_y, d_zbar = d_x + i d_y throughout; with it the
// (F,G)-integral inverts one half of the (F,G)-derivative.
namespace fpeit {

/// Generating pair as evaluable functions; required wherever derivatives are
/// taken by finite differences at arbitrary points.
struct GeneratingPair {
  ComplexField F;
  ComplexField G;

  // (p, i/p); p must be positive wherever it is evaluated.
  static GeneratingPair from_p(ScalarField p);
};

/// Generating pair sampled at a list of nodes (a mesh or a single ray).
struct GeneratingPairField {
  std::vector<Complex> F;
  std::vector<Complex> G;

  std::size_t size() const { return F.size(); }
};

struct CharacteristicCoefficients {
  Complex A;
  Complex B;
  Complex a;
  Complex b;
};

struct WirtingerDerivatives {
  Complex dz;
  Complex dzbar;
};

// F = p, G = i/p. Throws ValidationError for non-positive or non-finite p.
GeneratingPairField pair_from_p(std::span<const double> p);

// Throws ValidationError unless Im(conj(F) G) > 0 at every node.
void validate_pair(const GeneratingPairField& pair);

// (F*, G*) = (-iF, -iG).
GeneratingPairField adjoint(const GeneratingPairField& pair);
GeneratingPair adjoint(const GeneratingPair& pair);

// Centered differences with spacing h; one-sided second-order differences
// when a centered stencil point would leave the closed unit disk.
WirtingerDerivatives wirtinger(const ComplexField& f, Complex z, double h);

// General formula from F, G and their derivatives.
CharacteristicCoefficients characteristic_coefficients(const GeneratingPair& pair, Complex z, double h);
std::vector<CharacteristicCoefficients> characteristic_coefficients(const GeneratingPair& pair,
                                                                    std::span<const Complex> points,
                                                                    double h);

// Closed form for pairs (p, i/p): A = a = 0, B = d_z p / p, b = d_zbar p / p.
CharacteristicCoefficients coefficients_of_p(const ScalarField& p, Complex z, double h);

// d_(F,G) W = d_z W - A W - B conj(W).
Complex fg_derivative(const ComplexField& W, const GeneratingPair& pair, Complex z, double h);
std::vector<Complex> fg_derivative(const ComplexField& W, const GeneratingPair& pair,
                                   std::span<const Complex> points, double h);

// |d_zbar W - (d_zbar p / p) conj(W)|.
double vekua_residual(const ComplexField& W, const ScalarField& p, Complex z, double h);
std::vector<double> vekua_residual(const ComplexField& W, const ScalarField& p,
                                   std::span<const Complex> points, double h);

/// Cumulative (F,G)-integral of W along a ray:
///   out_s = F_s Re \int_{z_0}^{z_s} G* W dz + G_s Re \int_{z_0}^{z_s} F* W dz,
/// with out_0 = 0. `pair` holds the pair sampled at the ray nodes.
std::vector<Complex> fg_integral(std::span<const Complex> W, const GeneratingPairField& pair,
                                 const Ray& ray, Quadrature rule = Quadrature::hermite);

/// Periodic generating sequence of pairs (p_m, i/p_m), period 1 or 2.
class GeneratingSequence {
 public:
  explicit GeneratingSequence(std::vector<ScalarField> factors);

  int period() const { return static_cast<int>(factors_.size()); }

  // p_m with F_m = p_m, G_m = i / p_m; the index is taken modulo the period.
  const ScalarField& factor(int m) const;
  GeneratingPair pair_for(int m) const { return GeneratingPair::from_p(factor(m)); }

  // Pair m sampled at `nodes`; validated.
  GeneratingPairField sample(int m, std::span<const Complex> nodes) const;

 private:
  std::vector<ScalarField> factors_;
};

enum class SequenceMode {
  automatic,  // separable fields: period 2 from sigma1, sigma2; others: period 1, p = sqrt(sigma)
  limit,      // period 1 with p = sqrt(sigma) for every field
};

GeneratingSequence build_sequence(const ConductivityField& field, SequenceMode mode = SequenceMode::automatic);

// max over points of |B_(m+1) + b_(m)| with the closed-form coefficients of
// each p, the successor condition residual.
double successor_residual(const GeneratingSequence& sequence, int m, std::span<const Complex> points,
                          double h);

}  // namespace fpeit
