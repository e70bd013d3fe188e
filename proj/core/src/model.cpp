#include "cournot/model.hpp"

#include <cmath>

#include "cournot/errors.hpp"

namespace cournot {

void step_into(const HistoryState& history, const MarketParams& p,
               const DelayConfig& d, OutputVector& out) {
  history.require_shape(d, p.n);
  const Eigen::Index n = p.n;
  const OutputVector& now = history.lookback(0);
  const OutputVector& lag0 = history.lookback(static_cast<std::size_t>(d.tau0));
  const OutputVector& lag1 = history.lookback(static_cast<std::size_t>(d.tau1));
  const OutputVector& lag2 = history.lookback(static_cast<std::size_t>(d.tau2));

  out.resize(n + 1);
  const double q0 = now[0];
  const double rivals = lag1.tail(n).sum();
  out[0] = q0 + p.alpha * q0 * (p.a0 - p.b * q0 - p.b * p.delta * rivals);

  const double half = 0.5 * p.delta;
  const double base = p.a1 / (2.0 * p.b) - half * lag0[0];
  const double others = lag2.tail(n).sum();
  for (Eigen::Index j = 1; j <= n; ++j) {
    out[j] = base - half * (others - lag2[j]);
  }
}

OutputVector step(const HistoryState& history, const MarketParams& p,
                  const DelayConfig& d) {
  OutputVector out;
  step_into(history, p, d, out);
  return out;
}

namespace {

bool out_of_bounds(const OutputVector& q, double bound) {
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    if (!(std::abs(q[i]) <= bound)) return true;  // also catches NaN
  }
  return false;
}

}  // namespace

bool advance(HistoryState& history, const MarketParams& p,
             const DelayConfig& d, std::size_t steps, double blowup_bound) {
  OutputVector next(p.n + 1);
  for (std::size_t s = 0; s < steps; ++s) {
    step_into(history, p, d, next);
    history.push(next);
    if (out_of_bounds(next, blowup_bound)) return true;
  }
  return false;
}

Trajectory simulate(const MarketParams& p, const DelayConfig& d,
                    HistoryState init, std::size_t steps,
                    double blowup_bound) {
  init.require_shape(d, p.n);
  Trajectory traj;
  traj.start_time = init.time() + 1;
  traj.points.reserve(steps);
  OutputVector next(p.n + 1);
  for (std::size_t s = 0; s < steps; ++s) {
    step_into(init, p, d, next);
    init.push(next);
    traj.points.push_back(next);
    if (out_of_bounds(next, blowup_bound)) {
      traj.diverged = true;
      break;
    }
  }
  return traj;
}

JacobianBlocks jacobian_blocks(const HistoryState& point,
                               const MarketParams& p, const DelayConfig& d) {
  point.require_shape(d, p.n);
  const Eigen::Index dim = p.n + 1;
  const double q0 = point.lookback(0)[0];
  const double rivals =
      point.lookback(static_cast<std::size_t>(d.tau1)).tail(p.n).sum();

  JacobianBlocks blocks{Eigen::MatrixXd::Zero(dim, dim),
                        Eigen::MatrixXd::Zero(dim, dim),
                        Eigen::MatrixXd::Zero(dim, dim),
                        Eigen::MatrixXd::Zero(dim, dim)};
  blocks.a(0, 0) =
      1.0 + p.alpha * (p.a0 - 2.0 * p.b * q0 - p.b * p.delta * rivals);
  const double half = 0.5 * p.delta;
  for (Eigen::Index j = 1; j < dim; ++j) {
    blocks.b1(0, j) = p.b * p.alpha * p.delta * q0;
    blocks.b0(j, 0) = half;
    for (Eigen::Index i = 1; i < dim; ++i) {
      if (i != j) blocks.b2(j, i) = half;
    }
  }
  return blocks;
}

Eigen::MatrixXd embedded_jacobian(const HistoryState& point,
                                  const MarketParams& p,
                                  const DelayConfig& d) {
  const JacobianBlocks blocks = jacobian_blocks(point, p, d);
  const Eigen::Index dim = p.n + 1;
  const Eigen::Index lags = d.depth();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim * lags, dim * lags);
  m.block(0, 0, dim, dim) += blocks.a;
  m.block(0, d.tau0 * dim, dim, dim) -= blocks.b0;
  m.block(0, d.tau1 * dim, dim, dim) -= blocks.b1;
  m.block(0, d.tau2 * dim, dim, dim) -= blocks.b2;
  for (Eigen::Index k = 1; k < lags; ++k) {
    m.block(k * dim, (k - 1) * dim, dim, dim).setIdentity();
  }
  return m;
}

void tangent_step_into(const HistoryState& point, const HistoryState& tangent,
                       const MarketParams& p, const DelayConfig& d,
                       OutputVector& out) {
  const Eigen::Index n = p.n;
  const double q0 = point.lookback(0)[0];
  const double rivals =
      point.lookback(static_cast<std::size_t>(d.tau1)).tail(n).sum();
  const double a00 =
      1.0 + p.alpha * (p.a0 - 2.0 * p.b * q0 - p.b * p.delta * rivals);
  const double b1_entry = p.b * p.alpha * p.delta * q0;
  const double half = 0.5 * p.delta;

  const OutputVector& v_now = tangent.lookback(0);
  const OutputVector& v0 = tangent.lookback(static_cast<std::size_t>(d.tau0));
  const OutputVector& v1 = tangent.lookback(static_cast<std::size_t>(d.tau1));
  const OutputVector& v2 = tangent.lookback(static_cast<std::size_t>(d.tau2));

  out.resize(n + 1);
  out[0] = a00 * v_now[0] - b1_entry * v1.tail(n).sum();
  const double others = v2.tail(n).sum();
  for (Eigen::Index j = 1; j <= n; ++j) {
    out[j] = -half * v0[0] - half * (others - v2[j]);
  }
}

double utility(const OutputVector& q, const MarketParams& p) {
  if (!p.primitives) {
    throw ValidationError("utility requires primitive parameters a, c0, c");
  }
  const double total = q.sum();
  const double squares = q.squaredNorm();
  // sum_i sum_{j != i} qi qj = (sum q)^2 - sum q^2
  const double cross = total * total - squares;
  return p.primitives->a * total - 0.5 * p.b * (squares + p.delta * cross);
}

EconomicReport economic_report(const OutputVector& q, const MarketParams& p) {
  if (!p.primitives) {
    throw ValidationError(
        "economic report requires primitive parameters a, c0, c");
  }
  if (q.size() != p.n + 1) {
    throw DimensionError("output vector must have n + 1 entries");
  }
  const Primitives& pr = *p.primitives;
  const double total = q.sum();
  EconomicReport report;
  report.prices.resize(q.size());
  report.profits.resize(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    report.prices[i] = pr.a - p.b * q[i] - p.b * p.delta * (total - q[i]);
    const double cost = (i == 0) ? pr.c0 : pr.c;
    report.profits[i] = (report.prices[i] - cost) * q[i];
  }
  report.social_surplus = utility(q, p) - report.prices.dot(q) +
                          report.profits.sum();
  return report;
}

}  // namespace cournot
