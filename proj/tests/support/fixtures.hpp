#pragma once

// Shared parameter sets, random draws and independent oracles for tests.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "cournot/cournot.hpp"

namespace cournot::testing {

/// n = 4, a0 = 2, a1 = 2.5, b = 1, delta = 0.4 (a = 3, c0 = 1, c = 0.5).
inline MarketParams reference_params(double alpha = 1.0) {
  return MarketParams::from_primitives(3.0, 1.0, 1.0, 0.5, 0.4, alpha, 4);
}

inline constexpr double kQ0Star = 0.9375;
inline constexpr double kQ1Star = 0.6640625;
inline constexpr double kQStar = 0.78125;
inline constexpr double kDelayFreeAlpha = 1.185185185185185;

/// Admissible draw satisfying A.1 and A.2 (c0 >= c, so a1 >= a0).
inline MarketParams random_admissible(std::mt19937_64& rng, int max_n = 6) {
  std::uniform_int_distribution<int> n_dist(1, max_n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const int n = n_dist(rng);
    const double delta = 0.02 + 0.96 * unit(rng);
    const double b = 0.5 + 1.5 * unit(rng);
    const double c = 0.5 * unit(rng);
    const double c0 = c + unit(rng);
    const double a = c0 + 0.5 + 3.0 * unit(rng);
    const double alpha = 0.1 + 1.9 * unit(rng);
    MarketParams p = MarketParams::from_primitives(a, b, c0, c, delta, alpha, n);
    if (check_assumptions(p).all_hold()) return p;
  }
}

inline DelayConfig random_delays(std::mt19937_64& rng, int max_delay) {
  std::uniform_int_distribution<int> dist(0, max_delay);
  return {dist(rng), dist(rng), dist(rng)};
}

/// Central finite difference of the one-step map along a perturbation of
/// the stacked history (lag 0 first).
inline OutputVector finite_difference(const HistoryState& h,
                                      const std::vector<OutputVector>& dir,
                                      const MarketParams& p,
                                      const DelayConfig& d, double step_size) {
  HistoryState plus = h, minus = h;
  for (std::size_t k = 0; k < h.depth(); ++k) {
    plus.lookback(k) += step_size * dir[k];
    minus.lookback(k) -= step_size * dir[k];
  }
  return (step(plus, p, d) - step(minus, p, d)) / (2.0 * step_size);
}

/// Greedy nearest-neighbour pairing; returns the largest pairing distance
/// for `expected` against `candidates` (each candidate used once).
inline double pairing_error(const std::vector<std::complex<double>>& expected,
                            std::vector<std::complex<double>> candidates) {
  double worst = 0.0;
  for (const auto& z : expected) {
    if (candidates.empty()) return INFINITY;
    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      if (std::abs(candidates[i] - z) < std::abs(candidates[best] - z)) best = i;
    }
    worst = std::max(worst, std::abs(candidates[best] - z));
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

/// Eigenvalues of the embedded Jacobian computed with 40 significant
/// digits. The block-companion matrix has a large nilpotent part; in double
/// or long double its zero cluster spreads far enough to perturb small
/// genuine eigenvalues by up to ~1e-7.
inline std::vector<std::complex<double>> embedded_eigenvalues(
    const Eigen::MatrixXd& m) {
  using Scalar = boost::multiprecision::number<
      boost::multiprecision::cpp_bin_float<40>, boost::multiprecision::et_off>;
  using MatrixMp = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const MatrixMp mp = m.cast<Scalar>();
  Eigen::EigenSolver<MatrixMp> solver(mp, false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const auto z = solver.eigenvalues()[i];
    out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  return out;
}

}  // namespace cournot::testing
