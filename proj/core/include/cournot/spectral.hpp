#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

#include "cournot/params.hpp"
#include "cournot/polynomial.hpp"

namespace cournot {

/// Coefficients of the reduced characteristic equation at E+:
///   eps0 = n delta^2 / 2,  eps1 = alpha K - 1,  eps2 = (n-1) delta / 2,
/// with K = ([2+(n-1)delta] a0 - n delta a1) / (2 + (n-1)delta - n delta^2).
struct EpsilonTriple {
  double eps0 = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
};

/// K, the factor linking eps1 + 1 to alpha (equals b q0* at E+).
double adjustment_gain(const MarketParams& p);

EpsilonTriple epsilon_triple(const MarketParams& p);

enum class PolyKind { Reduced, FullPositive, Boundary, NoPublicFirm };

std::string_view to_string(PolyKind kind);

/// One factor of a characteristic polynomial, raised to `multiplicity`.
struct PolyFactor {
  poly::Coefficients coeffs;
  int multiplicity = 1;
};

/// Characteristic polynomial in the root variable lambda, ascending degree.
/// `factors`, when present, multiply out to `coeffs`; root extraction uses
/// them so repeated factors do not degrade accuracy.
struct CharPoly {
  poly::Coefficients coeffs;
  PolyKind kind = PolyKind::Reduced;
  DelayConfig delays;
  std::vector<PolyFactor> factors;

  int degree() const { return poly::degree(coeffs); }
  std::complex<double> evaluate(std::complex<double> lambda) const {
    return poly::evaluate(coeffs, lambda);
  }
};

enum class Stability { AsymptoticallyStable, NonHyperbolic, Unstable, Saddle };

std::string_view to_string(Stability s);

inline constexpr double kOnCircleTolerance = 1e-7;

struct SpectrumReport {
  /// Nonzero roots first, then `zero_roots` exact zeros.
  std::vector<std::complex<double>> roots;
  std::vector<double> moduli;
  std::size_t zero_roots = 0;
  double max_modulus = 0.0;
  double max_nonzero_modulus = 0.0;
  std::size_t on_circle_count = 0;
  Stability classification = Stability::AsymptoticallyStable;

  std::vector<std::complex<double>> nonzero_roots() const;
  /// Root of largest modulus among the nonzero ones.
  std::complex<double> dominant_root() const;
};

/// Classification of a root set by modulus. A saddle has roots strictly on
/// both sides of the unit circle and none on it.
Stability classify(const std::vector<double>& moduli, double tol);

/// eps0 (eps1+1) lambda^{tau2} - (lambda + eps1)(lambda^{tau2+1} + eps2)
/// lambda^{tau0+tau1}, leading coefficient -1. The lambda = 0 roots created
/// by clearing negative powers are kept.
CharPoly reduced_char_poly(const EpsilonTriple& eps, const DelayConfig& d);

enum class EquilibriumChoice { Boundary, Positive };

/// Positive: (lambda^{tau2+1} - delta/2)^{n-1} times the reduced polynomial.
/// Boundary: (lambda^{tau2+1} - delta/2)^{n-1} (lambda - 1 - alpha M)
///           (lambda^{tau2+1} + (n-1) delta/2).
/// Both require A.1; Positive also requires A.2.
CharPoly full_char_poly(const MarketParams& p, const DelayConfig& d,
                        EquilibriumChoice which);

SpectrumReport poly_roots(const CharPoly& cp,
                          double on_circle_tol = kOnCircleTolerance);

struct DelayFreeVerdict {
  bool stable = false;
  double eps2_margin = 0.0;  ///< 1 - eps2
  double eps1_margin = 0.0;  ///< (1-eps2-eps0)/(1-eps2+eps0) - eps1
};

/// Schur-Cohn region for zero delays: eps2 < 1 and
/// eps1 < (1 - eps2 - eps0) / (1 - eps2 + eps0).
DelayFreeVerdict delay_free_stable(const EpsilonTriple& eps);

/// alpha at which the delay-free eps1 margin vanishes. Throws
/// ValidationError when eps2 >= 1 (empty region) or A.1 fails.
double delay_free_threshold(const MarketParams& p);

enum class DelayIndependentVerdict {
  ApplicableStable,
  ApplicableUnknown,
  NotApplicable
};

std::string_view to_string(DelayIndependentVerdict v);

/// The delay-free region is delay-independent when tau2 = 0 or
/// tau0 + tau1 = tau2. Outside the region nothing is concluded.
DelayIndependentVerdict delay_independent_verdict(const EpsilonTriple& eps,
                                                  const DelayConfig& d);

/// Spectrum of the private-firm system without a public firm:
/// (lambda^{tau2+1} - delta/2)^{n-1} (lambda^{tau2+1} + (n-1) delta/2).
SpectrumReport no_public_firm_spectrum(const MarketParams& p, int tau2);

/// Evaluates the reduced equation in its rational form,
/// eps0 (eps1+1) lambda^{-(tau0+tau1)} - (lambda + eps1)(lambda + eps2 lambda^{-tau2}).
std::complex<double> reduced_char_residual(const EpsilonTriple& eps,
                                           const DelayConfig& d,
                                           std::complex<double> lambda);

}  // namespace cournot
