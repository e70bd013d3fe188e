#include "cournot/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cournot/errors.hpp"

namespace cournot {

MarketParams MarketParams::from_primitives(double a, double b, double c0,
                                           double c, double delta,
                                           double alpha, int n) {
  MarketParams p;
  p.b = b;
  p.delta = delta;
  p.alpha = alpha;
  p.n = n;
  p.a0 = a - c0;
  p.a1 = a - c;
  p.primitives = Primitives{a, c0, c};
  return p;
}

MarketParams MarketParams::from_intercepts(double a0, double a1, double b,
                                           double delta, double alpha, int n) {
  MarketParams p;
  p.b = b;
  p.delta = delta;
  p.alpha = alpha;
  p.n = n;
  p.a0 = a0;
  p.a1 = a1;
  return p;
}

MarketParams MarketParams::with_alpha(double new_alpha) const {
  MarketParams p = *this;
  p.alpha = new_alpha;
  return p;
}

MarketParams MarketParams::with_delta(double new_delta) const {
  MarketParams p = *this;
  p.delta = new_delta;
  return p;
}

double MarketParams::best_response_denominator() const noexcept {
  return 2.0 + (n - 1) * delta;
}

double MarketParams::equilibrium_denominator() const noexcept {
  return 2.0 + (n - 1) * delta - n * delta * delta;
}

namespace {

[[noreturn]] void fail(const std::string& what) { throw ValidationError(what); }

}  // namespace

void validate(const MarketParams& p) {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(p.b) || p.b <= 0.0) fail("b must be positive");
  if (!finite(p.alpha) || p.alpha <= 0.0) fail("alpha must be positive");
  if (p.n < 1) fail("n must be at least 1");
  if (!finite(p.delta) || p.delta <= 0.0 || p.delta >= 1.0) {
    std::ostringstream os;
    os << "delta must lie in (0, 1), got " << p.delta;
    fail(os.str());
  }
  if (!finite(p.a0) || p.a0 <= 0.0) fail("a0 = a - c0 must be positive");
  if (!finite(p.a1) || p.a1 <= 0.0) fail("a1 = a - c must be positive");
  if (p.primitives) {
    const auto& pr = *p.primitives;
    if (!(pr.a > pr.c0 && pr.c0 >= pr.c && pr.c >= 0.0)) {
      fail("primitives must satisfy a > c0 >= c >= 0");
    }
    if (std::abs((pr.a - pr.c0) - p.a0) > 1e-12 ||
        std::abs((pr.a - pr.c) - p.a1) > 1e-12) {
      fail("intercepts a0, a1 inconsistent with a, c0, c");
    }
  }
}

int DelayConfig::tau_max() const noexcept {
  return std::max({tau0, tau1, tau2});
}

void validate(const DelayConfig& d) {
  if (d.tau0 < 0 || d.tau1 < 0 || d.tau2 < 0) {
    throw ValidationError("delays must be nonnegative");
  }
}

}  // namespace cournot
