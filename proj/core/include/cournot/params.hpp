#pragma once

#include <optional>

namespace cournot {

/// Primitive demand/cost data. Only needed for prices, profits and surplus;
/// the dynamics depend on the intercept gaps alone.
struct Primitives {
  double a = 0.0;   ///< demand intercept
  double c0 = 0.0;  ///< public-firm marginal cost
  double c = 0.0;   ///< private-firm marginal cost
};

/// Economic parameters of the mixed oligopoly: one public firm (index 0)
/// and `n` identical private firms.
struct MarketParams {
  double b = 1.0;      ///< demand slope
  double delta = 0.5;  ///< product differentiation degree, in (0, 1)
  double alpha = 1.0;  ///< public-firm adjustment speed
  int n = 1;           ///< number of private firms
  double a0 = 1.0;     ///< a - c0
  double a1 = 1.0;     ///< a - c
  std::optional<Primitives> primitives;

  static MarketParams from_primitives(double a, double b, double c0, double c,
                                      double delta, double alpha, int n);
  static MarketParams from_intercepts(double a0, double a1, double b,
                                      double delta, double alpha, int n);

  MarketParams with_alpha(double new_alpha) const;
  MarketParams with_delta(double new_delta) const;

  /// 2 + (n-1) delta
  double best_response_denominator() const noexcept;
  /// 2 + (n-1) delta - n delta^2
  double equilibrium_denominator() const noexcept;
};

/// Throws ValidationError unless b > 0, alpha > 0, n >= 1, 0 < delta < 1,
/// a0 > 0, a1 > 0 and, when primitives are present, a > c0 >= c >= 0 with
/// consistent intercepts.
void validate(const MarketParams& p);

/// The three information lags: public firm sees private outputs with lag
/// tau1; private firms see the public output with lag tau0 and each other
/// with lag tau2.
struct DelayConfig {
  int tau0 = 0;
  int tau1 = 0;
  int tau2 = 0;

  int tau_max() const noexcept;
  int tau_sum() const noexcept { return tau0 + tau1; }
  /// Number of stored output vectors needed to iterate the map.
  int depth() const noexcept { return tau_max() + 1; }

  friend bool operator==(const DelayConfig&, const DelayConfig&) = default;
};

void validate(const DelayConfig& d);

}  // namespace cournot
