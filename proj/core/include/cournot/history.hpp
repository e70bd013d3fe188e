#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "cournot/params.hpp"

namespace cournot {

/// Outputs of all firms at one time step; index 0 is the public firm.
using OutputVector = Eigen::VectorXd;

/// Rolling window of the last `depth` output vectors. This is the state of
/// the delayed map: lookback(0) is q(t), lookback(k) is q(t-k).
class HistoryState {
 public:
  /// `depth` copies of `fill`.
  HistoryState(std::size_t depth, const OutputVector& fill, long time = 0);

  /// Explicit window, oldest entry first, most recent last.
  explicit HistoryState(const std::vector<OutputVector>& oldest_first,
                        long time = 0);

  /// Constant history with depth tau_max + 1.
  static HistoryState constant(const DelayConfig& d, const OutputVector& q);

  std::size_t depth() const noexcept { return window_.size(); }
  Eigen::Index dimension() const noexcept { return window_.front().size(); }
  long time() const noexcept { return time_; }

  const OutputVector& lookback(std::size_t k) const;
  OutputVector& lookback(std::size_t k);
  const OutputVector& current() const { return lookback(0); }

  /// Appends q(t+1), discarding the oldest entry.
  void push(const OutputVector& next);

  /// Oldest first, same order as the explicit constructor.
  std::vector<OutputVector> window() const;

  /// Throws DimensionError unless the window fits the delays and firm count.
  void require_shape(const DelayConfig& d, int n) const;

 private:
  std::vector<OutputVector> window_;
  std::size_t head_ = 0;  // slot holding the most recent entry
  long time_ = 0;
};

}  // namespace cournot
