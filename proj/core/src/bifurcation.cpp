#include "cournot/bifurcation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cournot/equilibria.hpp"
#include "cournot/errors.hpp"

namespace cournot {

std::string_view to_string(BifurcationKind k) {
  return k == BifurcationKind::Flip ? "Flip" : "NeimarkSacker";
}

BifurcationPoint flip_boundary(const MarketParams& p, const DelayConfig& d) {
  validate(d);
  if (!check_assumptions(p).a1_holds) require_assumptions(p);
  EpsilonTriple eps = epsilon_triple(p);
  const ParityCase parity = ParityCase::of(d);
  const double s = parity.sum_sign();
  const double s2 = parity.tau2_sign();
  const double denom = 1.0 - eps.eps2 * s2 + eps.eps0 * s;
  if (std::abs(denom) < 1e-14) {
    throw NumericalError("flip condition is degenerate for these delays");
  }
  eps.eps1 = (1.0 - eps.eps2 * s2 - eps.eps0 * s) / denom;
  const double alpha = (eps.eps1 + 1.0) / adjustment_gain(p);
  if (!(alpha > 0.0)) {
    std::ostringstream os;
    os << "flip condition gives nonpositive alpha " << alpha;
    throw NumericalError(os.str());
  }
  BifurcationPoint bp;
  bp.alpha = alpha;
  bp.kind = BifurcationKind::Flip;
  bp.theta = std::numbers::pi;
  bp.eps1 = eps.eps1;
  bp.residual = std::abs(reduced_char_residual(eps, d, -1.0));
  return bp;
}

double ns_imaginary_condition(double theta, double eps0, double eps2, int tau,
                              int tau2) {
  const double modulus_sq =
      1.0 + eps2 * eps2 + 2.0 * eps2 * std::cos((tau2 + 1) * theta);
  return eps0 * (std::cos((tau + 1.5) * theta) +
                 eps2 * std::cos((tau - tau2 + 0.5) * theta)) -
         std::cos(0.5 * theta) * modulus_sq;
}

double ns_eps1(double theta, double eps0, double eps2, int tau, int tau2) {
  // |H|^2 with H = e^{i tau theta}(e^{i theta} + eps2 e^{-i tau2 theta})
  const double modulus_sq =
      1.0 + eps2 * eps2 + 2.0 * eps2 * std::cos((tau2 + 1) * theta);
  const double num =
      2.0 * std::cos(0.5 * theta) * eps0 *
          (std::cos((tau + 1.5) * theta) +
           eps2 * std::cos((tau - tau2 + 0.5) * theta)) -
      std::cos(theta) * modulus_sq - eps0 * eps0;
  const double den = eps0 * eps0 + modulus_sq -
                     2.0 * eps0 * std::cos((tau + 1) * theta) -
                     2.0 * eps0 * eps2 * std::cos((tau - tau2) * theta);
  return num / den;
}

std::vector<BifurcationPoint> ns_boundary(const MarketParams& p,
                                          const DelayConfig& d,
                                          const NsScanOptions& opts) {
  validate(d);
  if (!check_assumptions(p).a1_holds) require_assumptions(p);
  const EpsilonTriple base = epsilon_triple(p);
  const double gain = adjustment_gain(p);
  const int tau = d.tau_sum();
  const int tau2 = d.tau2;
  auto g = [&](double th) {
    return ns_imaginary_condition(th, base.eps0, base.eps2, tau, tau2);
  };

  const double lo = opts.theta_min;
  const double hi = std::numbers::pi - opts.theta_min;
  const std::size_t count = std::max<std::size_t>(opts.scan_points, 2);
  const double h = (hi - lo) / static_cast<double>(count - 1);

  std::vector<BifurcationPoint> out;
  double prev_theta = lo;
  double prev_val = g(lo);
  for (std::size_t k = 1; k < count; ++k) {
    const double theta = lo + h * static_cast<double>(k);
    const double val = g(theta);
    double root;
    if (val == 0.0) {
      root = theta;
    } else if (prev_val * val < 0.0) {
      double a = prev_theta, b = theta, ga = prev_val;
      while (b - a > opts.theta_tol) {
        const double mid = 0.5 * (a + b);
        const double gm = g(mid);
        if ((gm < 0.0) == (ga < 0.0)) {
          a = mid;
          ga = gm;
        } else {
          b = mid;
        }
      }
      root = 0.5 * (a + b);
    } else {
      prev_theta = theta;
      prev_val = val;
      continue;
    }
    prev_theta = theta;
    prev_val = val;

    EpsilonTriple eps = base;
    eps.eps1 = ns_eps1(root, eps.eps0, eps.eps2, tau, tau2);
    const double alpha = (eps.eps1 + 1.0) / gain;
    if (!(alpha > 0.0)) continue;
    const double residual =
        std::abs(reduced_char_residual(eps, d, std::polar(1.0, root)));
    if (!(residual < opts.residual_tol)) continue;
    out.push_back({alpha, BifurcationKind::NeimarkSacker, root, residual,
                   eps.eps1});
  }
  return out;
}

double reduced_spectral_radius(const MarketParams& p, const DelayConfig& d,
                               double alpha) {
  const CharPoly cp = reduced_char_poly(epsilon_triple(p.with_alpha(alpha)), d);
  return poly_roots(cp).max_nonzero_modulus;
}

BifurcationPoint critical_alpha(const MarketParams& p, const DelayConfig& d,
                                AlphaRange range,
                                const CriticalAlphaOptions& opts) {
  validate(d);
  require_assumptions(p);
  if (!(range.hi > range.lo)) {
    throw ValidationError("alpha range must satisfy lo < hi");
  }
  auto radius = [&](double a) { return reduced_spectral_radius(p, d, a); };

  if (!(radius(range.lo) < 1.0)) {
    std::ostringstream os;
    os << "E+ is not stable at the start of the alpha range (" << range.lo
       << ")";
    throw NumericalError(os.str());
  }
  const std::size_t count = std::max<std::size_t>(opts.scan_points, 2);
  const double h = (range.hi - range.lo) / static_cast<double>(count - 1);
  double stable_alpha = range.lo;
  std::optional<double> unstable_alpha;
  for (std::size_t k = 1; k < count; ++k) {
    const double a = range.lo + h * static_cast<double>(k);
    if (radius(a) >= 1.0) {
      unstable_alpha = a;
      break;
    }
    stable_alpha = a;
  }
  if (!unstable_alpha) {
    std::ostringstream os;
    os << "no stability loss in alpha bracket [" << range.lo << ", "
       << range.hi << "]";
    throw NumericalError(os.str());
  }
  double a = stable_alpha, b = *unstable_alpha;
  while (b - a > opts.alpha_tol) {
    const double mid = 0.5 * (a + b);
    (radius(mid) < 1.0 ? a : b) = mid;
  }

  // The root that has left the disk at the unstable end identifies the type.
  const EpsilonTriple eps = epsilon_triple(p.with_alpha(b));
  const CharPoly cp = reduced_char_poly(eps, d);
  const std::complex<double> lead = poly_roots(cp).dominant_root();

  BifurcationPoint bp;
  bp.alpha = 0.5 * (a + b);
  bp.theta = std::abs(std::arg(lead));
  bp.kind = std::abs(bp.theta - std::numbers::pi) < opts.flip_angle_tol
                ? BifurcationKind::Flip
                : BifurcationKind::NeimarkSacker;
  bp.residual = std::abs(cp.evaluate(lead));
  bp.eps1 = epsilon_triple(p.with_alpha(bp.alpha)).eps1;
  return bp;
}

StabilityLossReport stability_loss_report(const MarketParams& p,
                                          const DelayConfig& d,
                                          AlphaRange range,
                                          const CriticalAlphaOptions& opts) {
  StabilityLossReport report;
  report.detected = critical_alpha(p, d, range, opts);
  if (epsilon_triple(p).eps2 < 1.0) report.delay_free_alpha = delay_free_threshold(p);
  try {
    report.flip_closed_form = flip_boundary(p, d);
  } catch (const NumericalError&) {
    report.flip_closed_form.reset();
  }
  report.flip_is_first_crossing =
      report.flip_closed_form &&
      std::abs(report.flip_closed_form->alpha - report.detected.alpha) < 1e-3;
  return report;
}

std::vector<StabilityRegionRow> stability_region(
    const MarketParams& base, int n, std::span<const double> delta_grid) {
  std::vector<StabilityRegionRow> rows;
  rows.reserve(delta_grid.size());
  for (double delta : delta_grid) {
    MarketParams p = base.with_delta(delta);
    p.n = n;
    StabilityRegionRow row;
    row.delta = delta;
    const AssumptionReport r = check_assumptions(p);
    row.a1_holds = r.a1_holds;
    row.a2_holds = r.a2_holds;
    if (delta > 0.0 && delta < 1.0 && r.a1_holds &&
        epsilon_triple(p).eps2 < 1.0) {
      row.alpha_max = delay_free_threshold(p);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cournot
