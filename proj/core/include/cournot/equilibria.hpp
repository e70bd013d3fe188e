#pragma once

#include "cournot/history.hpp"
#include "cournot/params.hpp"

namespace cournot {

enum class EquilibriumKind { Boundary, Positive, ReducedSymmetric };

struct Equilibrium {
  EquilibriumKind kind;
  /// n+1 outputs for Boundary/Positive; n private outputs for
  /// ReducedSymmetric.
  OutputVector point;
  /// max |F(E) - E| of the relevant map.
  double residual = 0.0;
};

/// Signed gaps of the positivity conditions
///   (A.1) [2+(n-1)delta] a0 > n delta a1,   (A.2) a1 > delta a0.
struct AssumptionReport {
  bool a1_holds = false;
  bool a2_holds = false;
  double a1_margin = 0.0;
  double a2_margin = 0.0;

  bool all_hold() const noexcept { return a1_holds && a2_holds; }
};

AssumptionReport check_assumptions(const MarketParams& p);

/// Throws AssumptionError naming the failing condition(s).
void require_assumptions(const MarketParams& p);

/// E0 = (0, q*, ..., q*) with q* = a1 / (b [2 + (n-1) delta]).
Equilibrium boundary_equilibrium(const MarketParams& p);

/// E+ = (q0*, q1*, ..., q1*); requires A.1 and A.2.
Equilibrium positive_equilibrium(const MarketParams& p);

/// Unique fixed point of the private-firm map without a public firm; every
/// coordinate equals a1 / (b [2 + (n-1) delta]). Requires n >= 2.
Equilibrium reduced_fixed_point(const MarketParams& p);

}  // namespace cournot
