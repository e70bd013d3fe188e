#include "cournot/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cournot/equilibria.hpp"
#include "cournot/errors.hpp"

namespace cournot {

double adjustment_gain(const MarketParams& p) {
  return check_assumptions(p).a1_margin / p.equilibrium_denominator();
}

EpsilonTriple epsilon_triple(const MarketParams& p) {
  return {0.5 * p.n * p.delta * p.delta, p.alpha * adjustment_gain(p) - 1.0,
          0.5 * (p.n - 1) * p.delta};
}

std::string_view to_string(PolyKind kind) {
  switch (kind) {
    case PolyKind::Reduced: return "Reduced";
    case PolyKind::FullPositive: return "FullPositive";
    case PolyKind::Boundary: return "Boundary";
    case PolyKind::NoPublicFirm: return "NoPublicFirm";
  }
  return "?";
}

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::AsymptoticallyStable: return "AsymptoticallyStable";
    case Stability::NonHyperbolic: return "NonHyperbolic";
    case Stability::Unstable: return "Unstable";
    case Stability::Saddle: return "Saddle";
  }
  return "?";
}

std::string_view to_string(DelayIndependentVerdict v) {
  switch (v) {
    case DelayIndependentVerdict::ApplicableStable: return "ApplicableStable";
    case DelayIndependentVerdict::ApplicableUnknown: return "ApplicableUnknown";
    case DelayIndependentVerdict::NotApplicable: return "NotApplicable";
  }
  return "?";
}

std::vector<std::complex<double>> SpectrumReport::nonzero_roots() const {
  return {roots.begin(), roots.end() - static_cast<std::ptrdiff_t>(zero_roots)};
}

std::complex<double> SpectrumReport::dominant_root() const {
  const auto nz = nonzero_roots();
  if (nz.empty()) return 0.0;
  return *std::max_element(nz.begin(), nz.end(), [](auto lhs, auto rhs) {
    return std::abs(lhs) < std::abs(rhs);
  });
}

Stability classify(const std::vector<double>& moduli, double tol) {
  bool inside = false, on = false, outside = false;
  for (double m : moduli) {
    if (m > 1.0 + tol) {
      outside = true;
    } else if (m < 1.0 - tol) {
      inside = true;
    } else {
      on = true;
    }
  }
  if (outside) return (inside && !on) ? Stability::Saddle : Stability::Unstable;
  if (on) return Stability::NonHyperbolic;
  return Stability::AsymptoticallyStable;
}

namespace {

// lambda^{k} + c
poly::Coefficients shifted_monomial(int k, double c) {
  poly::Coefficients f(static_cast<std::size_t>(k) + 1, 0.0);
  f[0] = c;
  f[static_cast<std::size_t>(k)] += 1.0;
  return f;
}

CharPoly assemble(PolyKind kind, const DelayConfig& d,
                  std::vector<PolyFactor> factors) {
  CharPoly cp;
  cp.kind = kind;
  cp.delays = d;
  cp.coeffs = {1.0};
  for (const auto& f : factors) {
    cp.coeffs = poly::multiply(cp.coeffs, poly::power(f.coeffs, f.multiplicity));
  }
  std::erase_if(factors, [](const PolyFactor& f) { return f.multiplicity == 0; });
  cp.factors = std::move(factors);
  return cp;
}

}  // namespace

CharPoly reduced_char_poly(const EpsilonTriple& eps, const DelayConfig& d) {
  const auto tau = static_cast<std::size_t>(d.tau_sum());
  const auto tau2 = static_cast<std::size_t>(d.tau2);
  poly::Coefficients c(tau + tau2 + 3, 0.0);
  c[tau2] += eps.eps0 * (eps.eps1 + 1.0);
  c[tau + tau2 + 2] -= 1.0;
  c[tau + tau2 + 1] -= eps.eps1;
  c[tau + 1] -= eps.eps2;
  c[tau] -= eps.eps1 * eps.eps2;
  CharPoly cp;
  cp.coeffs = std::move(c);
  cp.kind = PolyKind::Reduced;
  cp.delays = d;
  return cp;
}

CharPoly full_char_poly(const MarketParams& p, const DelayConfig& d,
                        EquilibriumChoice which) {
  validate(d);
  const int k = d.tau2 + 1;
  PolyFactor antisymmetric{shifted_monomial(k, -0.5 * p.delta), p.n - 1};

  if (which == EquilibriumChoice::Positive) {
    require_assumptions(p);
    PolyFactor reduced{reduced_char_poly(epsilon_triple(p), d).coeffs, 1};
    return assemble(PolyKind::FullPositive, d, {antisymmetric, reduced});
  }

  const AssumptionReport r = check_assumptions(p);
  if (!r.a1_holds) require_assumptions(p);
  const double m = r.a1_margin / p.best_response_denominator();
  PolyFactor public_mode{{-1.0 - p.alpha * m, 1.0}, 1};
  PolyFactor symmetric{shifted_monomial(k, 0.5 * (p.n - 1) * p.delta), 1};
  return assemble(PolyKind::Boundary, d, {antisymmetric, public_mode, symmetric});
}

SpectrumReport poly_roots(const CharPoly& cp, double on_circle_tol) {
  if (cp.degree() < 1) {
    throw ValidationError("characteristic polynomial has degree 0");
  }
  SpectrumReport report;
  if (cp.factors.empty()) {
    auto r = poly::roots(cp.coeffs);
    report.roots = std::move(r.nonzero);
    report.zero_roots = r.zero_count;
  } else {
    for (const auto& f : cp.factors) {
      if (poly::degree(f.coeffs) < 1) continue;
      const auto r = poly::roots(f.coeffs);
      for (int m = 0; m < f.multiplicity; ++m) {
        report.roots.insert(report.roots.end(), r.nonzero.begin(), r.nonzero.end());
        report.zero_roots += r.zero_count;
      }
    }
  }
  const std::size_t nonzero = report.roots.size();
  report.roots.resize(nonzero + report.zero_roots, 0.0);

  report.moduli.reserve(report.roots.size());
  for (std::size_t i = 0; i < report.roots.size(); ++i) {
    const double m = std::abs(report.roots[i]);
    report.moduli.push_back(m);
    report.max_modulus = std::max(report.max_modulus, m);
    if (i < nonzero) {
      report.max_nonzero_modulus = std::max(report.max_nonzero_modulus, m);
    }
    if (std::abs(m - 1.0) < on_circle_tol) ++report.on_circle_count;
  }
  report.classification = classify(report.moduli, on_circle_tol);
  return report;
}

DelayFreeVerdict delay_free_stable(const EpsilonTriple& eps) {
  DelayFreeVerdict v;
  v.eps2_margin = 1.0 - eps.eps2;
  const double denom = 1.0 - eps.eps2 + eps.eps0;
  v.eps1_margin = denom > 0.0
                      ? (1.0 - eps.eps2 - eps.eps0) / denom - eps.eps1
                      : -std::numeric_limits<double>::infinity();
  v.stable = v.eps2_margin > 0.0 && v.eps1_margin > 0.0;
  return v;
}

double delay_free_threshold(const MarketParams& p) {
  const AssumptionReport r = check_assumptions(p);
  if (!r.a1_holds) require_assumptions(p);
  const EpsilonTriple eps = epsilon_triple(p);
  if (eps.eps2 >= 1.0) {
    throw ValidationError("delay-free stability region is empty (eps2 >= 1)");
  }
  const double bound =
      (1.0 - eps.eps2 - eps.eps0) / (1.0 - eps.eps2 + eps.eps0);
  return (1.0 + bound) / adjustment_gain(p);
}

DelayIndependentVerdict delay_independent_verdict(const EpsilonTriple& eps,
                                                  const DelayConfig& d) {
  const bool applicable = d.tau2 == 0 || d.tau_sum() == d.tau2;
  if (!applicable) return DelayIndependentVerdict::NotApplicable;
  return delay_free_stable(eps).stable
             ? DelayIndependentVerdict::ApplicableStable
             : DelayIndependentVerdict::ApplicableUnknown;
}

SpectrumReport no_public_firm_spectrum(const MarketParams& p, int tau2) {
  if (p.n < 2) {
    throw ValidationError("the reduced system needs at least two private firms");
  }
  if (tau2 < 0) throw ValidationError("tau2 must be nonnegative");
  const int k = tau2 + 1;
  const CharPoly cp = assemble(
      PolyKind::NoPublicFirm, DelayConfig{0, 0, tau2},
      {{shifted_monomial(k, -0.5 * p.delta), p.n - 1},
       {shifted_monomial(k, 0.5 * (p.n - 1) * p.delta), 1}});
  return poly_roots(cp);
}

std::complex<double> reduced_char_residual(const EpsilonTriple& eps,
                                           const DelayConfig& d,
                                           std::complex<double> lambda) {
  const std::complex<double> lag = std::pow(lambda, -d.tau_sum());
  const std::complex<double> lag2 = std::pow(lambda, -d.tau2);
  return eps.eps0 * (eps.eps1 + 1.0) * lag -
         (lambda + eps.eps1) * (lambda + eps.eps2 * lag2);
}

}  // namespace cournot
