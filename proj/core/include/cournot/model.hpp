#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "cournot/history.hpp"
#include "cournot/params.hpp"

namespace cournot {

inline constexpr double kDefaultBlowupBound = 1e6;

/// One iteration of the delayed map:
///   q0(t+1) = q0(t) + alpha q0(t) [a0 - b q0(t) - b delta sum_i qi(t-tau1)]
///   qj(t+1) = a1/(2b) - delta/2 q0(t-tau0) - delta/2 sum_{i!=j} qi(t-tau2)
/// Outputs are not clamped at zero.
OutputVector step(const HistoryState& history, const MarketParams& p,
                  const DelayConfig& d);

/// Allocation-free variant of step(); `out` is resized if needed.
void step_into(const HistoryState& history, const MarketParams& p,
               const DelayConfig& d, OutputVector& out);

/// Iterates `history` in place. Returns true if some coordinate left
/// [-bound, bound] or became non-finite, in which case iteration stops.
bool advance(HistoryState& history, const MarketParams& p,
             const DelayConfig& d, std::size_t steps,
             double blowup_bound = kDefaultBlowupBound);

struct Trajectory {
  long start_time = 0;               ///< time index of points.front()
  std::vector<OutputVector> points;  ///< q(start_time), q(start_time+1), ...
  bool diverged = false;
};

/// Records `steps` iterates after `init`. Stops early with `diverged` set
/// once a coordinate exceeds the bound in magnitude.
Trajectory simulate(const MarketParams& p, const DelayConfig& d,
                    HistoryState init, std::size_t steps,
                    double blowup_bound = kDefaultBlowupBound);

/// Coefficient matrices of the linearization at the current history point,
///   y(t+1) = A y(t) - B0 y(t-tau0) - B1 y(t-tau1) - B2 y(t-tau2).
struct JacobianBlocks {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b0;
  Eigen::MatrixXd b1;
  Eigen::MatrixXd b2;
};

JacobianBlocks jacobian_blocks(const HistoryState& point,
                               const MarketParams& p, const DelayConfig& d);

/// Block-companion Jacobian of the lag-free map on the stacked state
/// (y(t), y(t-1), ..., y(t-tau_max)). Size (n+1)(tau_max+1).
Eigen::MatrixXd embedded_jacobian(const HistoryState& point,
                                  const MarketParams& p, const DelayConfig& d);

/// Top block of embedded_jacobian(point) applied to the stacked tangent
/// held in `tangent`; the remaining blocks are a shift, which the caller
/// realises by pushing the result onto `tangent`.
void tangent_step_into(const HistoryState& point, const HistoryState& tangent,
                       const MarketParams& p, const DelayConfig& d,
                       OutputVector& out);

/// Representative-consumer utility U(q).
double utility(const OutputVector& q, const MarketParams& p);

struct EconomicReport {
  Eigen::VectorXd prices;
  Eigen::VectorXd profits;
  double social_surplus = 0.0;
};

/// Prices, profits and social surplus at output level q. Requires the
/// primitive parameters (a, c0, c); throws ValidationError otherwise.
EconomicReport economic_report(const OutputVector& q, const MarketParams& p);

}  // namespace cournot
