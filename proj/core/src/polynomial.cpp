#include "cournot/polynomial.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "cournot/errors.hpp"

namespace cournot::poly {

Coefficients multiply(std::span<const double> lhs,
                      std::span<const double> rhs) {
  if (lhs.empty() || rhs.empty()) return {};
  Coefficients out(lhs.size() + rhs.size() - 1, 0.0);
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    for (std::size_t j = 0; j < rhs.size(); ++j) out[i + j] += lhs[i] * rhs[j];
  }
  return out;
}

Coefficients power(std::span<const double> base, int exponent) {
  Coefficients out{1.0};
  for (int k = 0; k < exponent; ++k) out = multiply(out, base);
  return out;
}

std::complex<double> evaluate(std::span<const double> coeffs,
                              std::complex<double> x) {
  std::complex<double> acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

int degree(std::span<const double> coeffs) {
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    if (coeffs[k] != 0.0) return static_cast<int>(k);
  }
  return -1;
}

namespace {

// Parlett-Reinsch diagonal similarity scaling by powers of two.
void balance(Eigen::MatrixXd& m) {
  constexpr double radix = 2.0;
  constexpr double radix_sq = radix * radix;
  const Eigen::Index n = m.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double col = 0.0;
      double row = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        col += std::abs(m(j, i));
        row += std::abs(m(i, j));
      }
      if (col == 0.0 || row == 0.0) continue;
      const double total = col + row;
      double f = 1.0;
      double g = row / radix;
      while (col < g) {
        f *= radix;
        col *= radix_sq;
      }
      g = row * radix;
      while (col > g) {
        f /= radix;
        col /= radix_sq;
      }
      if ((col + row) / f < 0.95 * total) {
        done = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

}  // namespace

Roots roots(std::span<const double> coeffs) {
  const int deg = degree(coeffs);
  if (deg < 1) {
    throw ValidationError("root finding needs a polynomial of degree >= 1");
  }
  Roots out;
  std::size_t low = 0;
  while (coeffs[low] == 0.0) ++low;
  out.zero_count = low;

  const auto trimmed = coeffs.subspan(low, static_cast<std::size_t>(deg) - low + 1);
  const Eigen::Index m = static_cast<Eigen::Index>(trimmed.size()) - 1;
  if (m == 0) return out;
  if (m == 1) {
    out.nonzero.emplace_back(-trimmed[0] / trimmed[1], 0.0);
    return out;
  }

  // Companion matrix of the monic polynomial: ones on the subdiagonal,
  // last column -c_k / c_m.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index k = 1; k < m; ++k) companion(k, k - 1) = 1.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    companion(k, m - 1) = -trimmed[static_cast<std::size_t>(k)] / trimmed[static_cast<std::size_t>(m)];
  }
  balance(companion);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("companion eigenvalue iteration did not converge");
  }
  const auto& ev = solver.eigenvalues();
  out.nonzero.assign(ev.data(), ev.data() + ev.size());
  return out;
}

}  // namespace cournot::poly
