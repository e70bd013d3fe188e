#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cournot/params.hpp"
#include "cournot/spectral.hpp"

namespace cournot {

/// Parities of tau0 + tau1 and tau2; they fix the signs (-1)^{tau0+tau1}
/// and (-1)^{tau2} in the flip condition.
struct ParityCase {
  bool sum_even = true;
  bool tau2_even = true;

  static ParityCase of(const DelayConfig& d) noexcept {
    return {d.tau_sum() % 2 == 0, d.tau2 % 2 == 0};
  }
  int sum_sign() const noexcept { return sum_even ? 1 : -1; }
  int tau2_sign() const noexcept { return tau2_even ? 1 : -1; }
};

enum class BifurcationKind { Flip, NeimarkSacker };

std::string_view to_string(BifurcationKind k);

struct BifurcationPoint {
  double alpha = 0.0;
  BifurcationKind kind = BifurcationKind::Flip;
  double theta = 0.0;     ///< argument of the critical root, in [0, pi]
  double residual = 0.0;  ///< |characteristic equation| at the critical root
  double eps1 = 0.0;
};

/// eps1 at which lambda = -1 solves the reduced equation:
///   (1 - eps2 s2 - eps0 s) / (1 - eps2 s2 + eps0 s),  s = (-1)^{tau0+tau1},
///   s2 = (-1)^{tau2}.
/// Throws NumericalError for a vanishing denominator or alpha <= 0, and
/// AssumptionError when A.1 fails.
BifurcationPoint flip_boundary(const MarketParams& p, const DelayConfig& d);

/// Imaginary-part condition for a root lambda = e^{i theta} of the reduced
/// equation (divided through by 2 sin(theta/2)):
///   eps0 [cos((tau+3/2)theta) + eps2 cos((tau-tau2+1/2)theta)]
///     - cos(theta/2) [1 + eps2^2 + 2 eps2 cos((tau2+1)theta)],
/// tau = tau0 + tau1.
double ns_imaginary_condition(double theta, double eps0, double eps2, int tau,
                              int tau2);

/// eps1 placing e^{i theta} on the reduced spectrum, from the real part.
double ns_eps1(double theta, double eps0, double eps2, int tau, int tau2);

struct NsScanOptions {
  std::size_t scan_points = 4096;
  double theta_min = 1e-3;
  double theta_tol = 1e-10;
  double residual_tol = 1e-8;
};

/// All Neimark-Sacker candidates for the delays in `d`, ordered by theta.
/// Each returned point is a verified unit-circle root of the reduced
/// equation with alpha > 0.
std::vector<BifurcationPoint> ns_boundary(const MarketParams& p,
                                          const DelayConfig& d,
                                          const NsScanOptions& opts = {});

struct AlphaRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct CriticalAlphaOptions {
  std::size_t scan_points = 200;
  double alpha_tol = 1e-4;
  double flip_angle_tol = 1e-3;
};

/// Largest nonzero root modulus of the reduced polynomial at `alpha`.
double reduced_spectral_radius(const MarketParams& p, const DelayConfig& d,
                               double alpha);

/// First alpha in `range` where the reduced spectrum leaves the unit disk,
/// located by a coarse scan followed by bisection. Throws NumericalError if
/// E+ is not stable at range.lo or no crossing occurs.
BifurcationPoint critical_alpha(const MarketParams& p, const DelayConfig& d,
                                AlphaRange range,
                                const CriticalAlphaOptions& opts = {});

/// The three stability thresholds one can quote for a delay set: the
/// delay-free bound, the closed-form flip value for the delay parities, and
/// the numerically detected first crossing.
struct StabilityLossReport {
  BifurcationPoint detected;
  std::optional<double> delay_free_alpha;
  std::optional<BifurcationPoint> flip_closed_form;
  /// Whether the closed-form flip value coincides (to 1e-3) with the first
  /// crossing.
  bool flip_is_first_crossing = false;
};

StabilityLossReport stability_loss_report(const MarketParams& p,
                                          const DelayConfig& d,
                                          AlphaRange range,
                                          const CriticalAlphaOptions& opts = {});

struct StabilityRegionRow {
  double delta = 0.0;
  std::optional<double> alpha_max;
  bool a1_holds = false;
  bool a2_holds = false;

  bool feasible() const noexcept { return a1_holds && a2_holds; }
};

/// Upper alpha boundary of the delay-free (and, for tau2 = 0 or
/// tau0 + tau1 = tau2, delay-independent) stability region for each delta.
/// alpha_max is absent where eps2 >= 1 or A.1 fails.
std::vector<StabilityRegionRow> stability_region(
    const MarketParams& base, int n, std::span<const double> delta_grid);

}  // namespace cournot
