#include "cournot/history.hpp"

#include <sstream>

#include "cournot/errors.hpp"

namespace cournot {

HistoryState::HistoryState(std::size_t depth, const OutputVector& fill,
                           long time)
    : window_(depth, fill), head_(depth - 1), time_(time) {
  if (depth == 0) throw DimensionError("history depth must be positive");
}

HistoryState::HistoryState(const std::vector<OutputVector>& oldest_first,
                           long time)
    : window_(oldest_first), head_(0), time_(time) {
  if (window_.empty()) throw DimensionError("history depth must be positive");
  for (const auto& q : window_) {
    if (q.size() != window_.front().size()) {
      throw DimensionError("history entries have different dimensions");
    }
  }
  head_ = window_.size() - 1;
}

HistoryState HistoryState::constant(const DelayConfig& d,
                                    const OutputVector& q) {
  return HistoryState(static_cast<std::size_t>(d.depth()), q);
}

const OutputVector& HistoryState::lookback(std::size_t k) const {
  if (k >= window_.size()) throw DimensionError("lookback beyond history");
  return window_[(head_ + window_.size() - k) % window_.size()];
}

OutputVector& HistoryState::lookback(std::size_t k) {
  if (k >= window_.size()) throw DimensionError("lookback beyond history");
  return window_[(head_ + window_.size() - k) % window_.size()];
}

void HistoryState::push(const OutputVector& next) {
  head_ = (head_ + 1) % window_.size();
  window_[head_] = next;
  ++time_;
}

std::vector<OutputVector> HistoryState::window() const {
  std::vector<OutputVector> out;
  out.reserve(window_.size());
  for (std::size_t k = window_.size(); k-- > 0;) out.push_back(lookback(k));
  return out;
}

void HistoryState::require_shape(const DelayConfig& d, int n) const {
  if (depth() != static_cast<std::size_t>(d.depth()) ||
      dimension() != n + 1) {
    std::ostringstream os;
    os << "history window is " << depth() << " x " << dimension()
       << ", expected " << d.depth() << " x " << n + 1;
    throw DimensionError(os.str());
  }
}

}  // namespace cournot
