#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cournot::poly {

/// Real polynomial coefficients in ascending degree: c[0] + c[1] x + ...
using Coefficients = std::vector<double>;

Coefficients multiply(std::span<const double> lhs, std::span<const double> rhs);
Coefficients power(std::span<const double> base, int exponent);

std::complex<double> evaluate(std::span<const double> coeffs,
                              std::complex<double> x);

/// Degree after discarding exactly-zero high-order coefficients; -1 for the
/// zero polynomial.
int degree(std::span<const double> coeffs);

struct Roots {
  /// Roots of the polynomial after the zero roots were factored out.
  std::vector<std::complex<double>> nonzero;
  /// Multiplicity of the root at 0 (count of exactly-zero low-order
  /// coefficients).
  std::size_t zero_count = 0;
};

/// All roots via eigenvalues of the balanced companion matrix.
/// Throws ValidationError for constant polynomials.
Roots roots(std::span<const double> coeffs);

}  // namespace cournot::poly
