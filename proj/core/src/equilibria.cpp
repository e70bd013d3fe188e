#include "cournot/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cournot/errors.hpp"
#include "cournot/model.hpp"

namespace cournot {

namespace {

double fixed_point_defect(const OutputVector& point, const MarketParams& p) {
  const DelayConfig no_delay{};
  const HistoryState h = HistoryState::constant(no_delay, point);
  return (step(h, p, no_delay) - point).cwiseAbs().maxCoeff();
}

}  // namespace

AssumptionReport check_assumptions(const MarketParams& p) {
  AssumptionReport r;
  r.a1_margin = p.best_response_denominator() * p.a0 - p.n * p.delta * p.a1;
  r.a2_margin = p.a1 - p.delta * p.a0;
  r.a1_holds = r.a1_margin > 0.0;
  r.a2_holds = r.a2_margin > 0.0;
  return r;
}

void require_assumptions(const MarketParams& p) {
  const AssumptionReport r = check_assumptions(p);
  if (r.all_hold()) return;
  std::ostringstream os;
  AssumptionError::Which which;
  if (!r.a1_holds && !r.a2_holds) {
    which = AssumptionError::Which::Both;
    os << "assumptions A.1 ([2+(n-1)delta]a0 > n delta a1, margin "
       << r.a1_margin << ") and A.2 (a1 > delta a0, margin " << r.a2_margin
       << ") fail";
  } else if (!r.a1_holds) {
    which = AssumptionError::Which::A1;
    os << "assumption A.1 fails: [2+(n-1)delta]a0 - n delta a1 = "
       << r.a1_margin << " <= 0";
  } else {
    which = AssumptionError::Which::A2;
    os << "assumption A.2 fails: a1 - delta a0 = " << r.a2_margin << " <= 0";
  }
  throw AssumptionError(which, os.str());
}

Equilibrium boundary_equilibrium(const MarketParams& p) {
  const double q_star = p.a1 / (p.b * p.best_response_denominator());
  OutputVector point = OutputVector::Constant(p.n + 1, q_star);
  point[0] = 0.0;
  return {EquilibriumKind::Boundary, point, fixed_point_defect(point, p)};
}

Equilibrium positive_equilibrium(const MarketParams& p) {
  require_assumptions(p);
  const AssumptionReport r = check_assumptions(p);
  const double denom = p.b * p.equilibrium_denominator();
  OutputVector point = OutputVector::Constant(p.n + 1, r.a2_margin / denom);
  point[0] = r.a1_margin / denom;
  return {EquilibriumKind::Positive, point, fixed_point_defect(point, p)};
}

Equilibrium reduced_fixed_point(const MarketParams& p) {
  if (p.n < 2) {
    throw ValidationError("the reduced system needs at least two private firms");
  }
  const double x = p.a1 / (p.b * p.best_response_denominator());
  OutputVector point = OutputVector::Constant(p.n, x);
  // Without the public firm the map is the full map restricted to q0 = 0.
  OutputVector embedded(p.n + 1);
  embedded << 0.0, point;
  const DelayConfig no_delay{};
  const OutputVector image =
      step(HistoryState::constant(no_delay, embedded), p, no_delay);
  const double residual = (image.tail(p.n) - point).cwiseAbs().maxCoeff();
  return {EquilibriumKind::ReducedSymmetric, point, residual};
}

}  // namespace cournot
