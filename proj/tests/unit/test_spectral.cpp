#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"

using namespace cournot;
using namespace cournot::testing;
using cd = std::complex<double>;

namespace {

std::vector<cd> sorted_by_real(std::vector<cd> v) {
  std::sort(v.begin(), v.end(), [](cd a, cd b) { return a.real() < b.real(); });
  return v;
}

double max_modulus(const std::vector<cd>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

TEST_CASE("polynomial helpers") {
  const poly::Coefficients a{1, 2};
  const poly::Coefficients b{-1, 0, 3};
  CHECK(poly::multiply(a, b) == poly::Coefficients{-1, -2, 3, 6});
  CHECK(poly::power(a, 3) == poly::Coefficients{1, 6, 12, 8});
  CHECK(poly::power(a, 0) == poly::Coefficients{1});
  CHECK(poly::evaluate(b, cd(0, 1)) == cd(-4, 0));
  CHECK(poly::degree(poly::Coefficients{1, 0, 2, 0, 0}) == 2);
  CHECK(poly::degree(poly::Coefficients{0, 0}) == -1);

  const poly::Roots r = poly::roots(poly::Coefficients{0, 0, -1, 0, 1});
  CHECK(r.zero_count == 2);
  CHECK(pairing_error({1.0, -1.0}, r.nonzero) < 1e-14);
  CHECK_THROWS_AS(poly::roots(poly::Coefficients{3.0}), ValidationError);
  CHECK_THROWS_AS(poly::roots(poly::Coefficients{0.0, 0.0}), ValidationError);
}

TEST_CASE("epsilon triple") {
  const EpsilonTriple e = epsilon_triple(reference_params());
  CHECK(e.eps0 == doctest::Approx(0.32).epsilon(1e-15));
  CHECK(e.eps2 == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(e.eps1 == doctest::Approx(-0.0625).epsilon(1e-13));
  CHECK(adjustment_gain(reference_params()) == doctest::Approx(0.9375).epsilon(1e-15));

  CHECK(epsilon_triple(MarketParams::from_intercepts(1, 1, 1, 0.5, 1, 1)).eps2 == 0.0);

  const MarketParams p = reference_params();
  const double k = adjustment_gain(p);
  CHECK(std::abs(epsilon_triple(p.with_alpha(1.0 / k)).eps1) < 1e-15);

  std::mt19937_64 rng(31);
  for (int i = 0; i < 500; ++i) {
    const MarketParams q = random_admissible(rng, 8);
    const EpsilonTriple t = epsilon_triple(q);
    CHECK(t.eps0 > 0.0);
    CHECK(t.eps2 >= 0.0);
    CHECK((t.eps2 == 0.0) == (q.n == 1));
    CHECK(t.eps1 + 1.0 > 0.0);
    // K equals b q0* at E+
    CHECK(adjustment_gain(q) == doctest::Approx(q.b * positive_equilibrium(q).point[0]).epsilon(1e-12));
  }
}

TEST_CASE("reduced characteristic polynomial") {
  const EpsilonTriple e = epsilon_triple(reference_params());

  SUBCASE("zero delays expand to the quadratic") {
    const CharPoly cp = reduced_char_poly(e, DelayConfig{});
    REQUIRE(cp.degree() == 2);
    CHECK(cp.kind == PolyKind::Reduced);
    CHECK(cp.coeffs[2] == -1.0);
    CHECK(cp.coeffs[1] == doctest::Approx(-(e.eps1 + e.eps2)).epsilon(1e-15));
    CHECK(cp.coeffs[0] ==
          doctest::Approx(-(e.eps1 * e.eps2 - e.eps0 * (e.eps1 + 1))).epsilon(1e-15));

    const SpectrumReport s = poly_roots(cp);
    const auto r = sorted_by_real(s.roots);
    CHECK(r[0].real() == doctest::Approx(-0.90884887).epsilon(1e-8));
    CHECK(r[1].real() == doctest::Approx(0.37134887).epsilon(1e-8));
    CHECK(r[0].imag() == 0.0);
    CHECK(s.max_modulus < 1.0);
    CHECK(s.classification == Stability::AsymptoticallyStable);
  }

  SUBCASE("degree formula") {
    CHECK(reduced_char_poly(e, DelayConfig{2, 4, 8}).degree() == 16);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
      const DelayConfig d = random_delays(rng, 12);
      const CharPoly cp = reduced_char_poly(e, d);
      CHECK(cp.degree() == d.tau0 + d.tau1 + d.tau2 + 2);
      CHECK(cp.coeffs.back() == -1.0);
    }
  }

  SUBCASE("rational form has the same nonzero roots") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
      const DelayConfig d = random_delays(rng, 8);
      const SpectrumReport s = poly_roots(reduced_char_poly(e, d));
      for (const auto& z : s.nonzero_roots()) {
        CHECK(std::abs(reduced_char_residual(e, d, z)) <
              1e-9 * std::pow(1 + 1 / std::abs(z), d.tau_sum() + d.tau2));
      }
      // clearing negative powers adds tau2 zeros when tau0 + tau1 > 0 and tau2 > 0
      CHECK(s.zero_roots == static_cast<std::size_t>(std::min(d.tau_sum(), d.tau2)));
    }
  }
}

TEST_CASE("full characteristic polynomial") {
  const MarketParams p = reference_params(1.0);

  SUBCASE("boundary with no private delay") {
    const CharPoly cp = full_char_poly(p, DelayConfig{0, 0, 0}, EquilibriumChoice::Boundary);
    CHECK(cp.kind == PolyKind::Boundary);
    const SpectrumReport s = poly_roots(cp);
    CHECK(pairing_error({1.75, 0.2, 0.2, 0.2, -0.6}, s.roots) < 1e-12);
    CHECK(s.classification == Stability::Saddle);
  }

  SUBCASE("boundary carries the adjustment speed") {
    const SpectrumReport s =
        poly_roots(full_char_poly(p.with_alpha(2.0), DelayConfig{3, 1, 0}, EquilibriumChoice::Boundary));
    CHECK(pairing_error({2.5}, s.roots) < 1e-12);
  }

  SUBCASE("positive with a single private firm is the reduced polynomial") {
    const MarketParams q = MarketParams::from_intercepts(1.0, 1.2, 1.0, 0.6, 1.3, 1);
    const DelayConfig d{1, 2, 3};
    const CharPoly full = full_char_poly(q, d, EquilibriumChoice::Positive);
    const CharPoly red = reduced_char_poly(epsilon_triple(q), d);
    CHECK(full.kind == PolyKind::FullPositive);
    CHECK(full.coeffs == red.coeffs);
  }

  SUBCASE("positive, extra roots at delta/2") {
    const SpectrumReport s = poly_roots(full_char_poly(p, DelayConfig{}, EquilibriumChoice::Positive));
    CHECK(pairing_error({0.2, 0.2, 0.2, -0.90884887, 0.37134887}, s.roots) < 1e-8);
  }

  SUBCASE("assumption failures propagate") {
    const MarketParams bad = MarketParams::from_intercepts(1.0, 2.5, 1.0, 0.4, 1.0, 4);
    CHECK_THROWS_AS(full_char_poly(bad, DelayConfig{}, EquilibriumChoice::Positive), AssumptionError);
    CHECK_THROWS_AS(full_char_poly(bad, DelayConfig{}, EquilibriumChoice::Boundary), AssumptionError);
    const MarketParams no_a2 = MarketParams::from_intercepts(2.0, 0.8, 1.0, 0.4, 1.0, 4);
    CHECK_THROWS_AS(full_char_poly(no_a2, DelayConfig{}, EquilibriumChoice::Positive), AssumptionError);
    CHECK_NOTHROW(full_char_poly(no_a2, DelayConfig{}, EquilibriumChoice::Boundary));
  }
}

TEST_CASE("poly_roots") {
  SUBCASE("unit circle") {
    CharPoly cp;
    cp.coeffs = {-1, 0, 1};
    const SpectrumReport s = poly_roots(cp);
    CHECK(pairing_error({1.0, -1.0}, s.roots) < 1e-14);
    CHECK(s.on_circle_count == 2);
    CHECK(s.classification == Stability::NonHyperbolic);
  }

  SUBCASE("root at -1 on the flip point") {
    const MarketParams p = reference_params(kDelayFreeAlpha);
    const DelayConfig d{1, 1, 2};
    const MarketParams at = p.with_alpha(flip_boundary(p, d).alpha);
    const SpectrumReport s = poly_roots(reduced_char_poly(epsilon_triple(at), d));
    double best = INFINITY;
    for (const auto& z : s.roots) best = std::min(best, std::abs(z + 1.0));
    CHECK(best < 1e-8);
  }

  SUBCASE("residual bound") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 300; ++i) {
      const MarketParams p = random_admissible(rng, 6);
      const DelayConfig d = random_delays(rng, 8);
      const CharPoly cp = full_char_poly(p, d, EquilibriumChoice::Positive);
      const SpectrumReport s = poly_roots(cp);
      CHECK(s.roots.size() == static_cast<std::size_t>(cp.degree()));
      for (const auto& z : s.roots) {
        CHECK(std::abs(cp.evaluate(z)) < 1e-8 * std::pow(1 + std::abs(z), cp.degree()));
      }
    }
  }

  SUBCASE("classification") {
    CHECK(classify({0.5, 0.99}, 1e-7) == Stability::AsymptoticallyStable);
    CHECK(classify({0.5, 1.0 + 1e-9}, 1e-7) == Stability::NonHyperbolic);
    CHECK(classify({0.5, 1.2}, 1e-7) == Stability::Saddle);
    CHECK(classify({1.0, 1.2}, 1e-7) == Stability::Unstable);
    CHECK(classify({1.1, 1.2}, 1e-7) == Stability::Unstable);
    CHECK(classify({0.0, 1.2}, 1e-7) == Stability::Saddle);
  }
}

TEST_CASE("eigenvalues of the embedded jacobian") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const MarketParams p = random_admissible(rng, 5);
    const DelayConfig d = random_delays(rng, 8);
    const Eigen::MatrixXd m =
        embedded_jacobian(HistoryState::constant(d, positive_equilibrium(p).point), p, d);
    const auto eig = embedded_eigenvalues(m);
    const SpectrumReport s = poly_roots(full_char_poly(p, d, EquilibriumChoice::Positive));
    const auto nonzero = s.nonzero_roots();
    CHECK(pairing_error(nonzero, eig) < 1e-8);
    // zero roots differ in count between the two forms; traces agree
    cd trace_roots = 0.0;
    for (const auto& z : s.roots) trace_roots += z;
    CHECK(std::abs(trace_roots - m.trace()) < 1e-10);
  }
}

TEST_CASE("delay-free stability region") {
  SUBCASE("reference values") {
    const DelayFreeVerdict v = delay_free_stable(epsilon_triple(reference_params(1.0)));
    CHECK(v.stable);
    CHECK(v.eps2_margin == doctest::Approx(0.4));
    CHECK(v.eps1_margin == doctest::Approx(0.08 / 0.72 + 0.0625).epsilon(1e-13));
    CHECK_FALSE(delay_free_stable(epsilon_triple(reference_params(1.3))).stable);
    CHECK(delay_free_threshold(reference_params()) == doctest::Approx(1.185).epsilon(1e-3));
    CHECK(delay_free_threshold(reference_params()) ==
          doctest::Approx(kDelayFreeAlpha).epsilon(1e-14));
    CHECK(delay_free_stable(epsilon_triple(reference_params(1.18))).stable);
    CHECK_FALSE(delay_free_stable(epsilon_triple(reference_params(1.19))).stable);
  }

  SUBCASE("empty region") {
    const MarketParams p = MarketParams::from_intercepts(2.0, 2.5, 1.0, 0.5, 1.0, 6);
    CHECK_THROWS_AS(delay_free_threshold(p), ValidationError);
  }

  SUBCASE("agrees with root moduli at zero delay") {
    std::mt19937_64 rng(47);
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
      const MarketParams p = random_admissible(rng, 8);
      const EpsilonTriple e = epsilon_triple(p);
      const DelayFreeVerdict v = delay_free_stable(e);
      if (std::abs(v.eps1_margin) < 1e-6 || std::abs(v.eps2_margin) < 1e-6) continue;
      ++checked;
      const SpectrumReport s = poly_roots(reduced_char_poly(e, DelayConfig{}));
      CHECK(v.stable == (s.max_modulus < 1.0));
    }
    CHECK(checked > 1900);
  }

  SUBCASE("stable region implies the product inequality") {
    std::mt19937_64 rng(53);
    int inside = 0;
    for (int i = 0; i < 2000; ++i) {
      const EpsilonTriple e = epsilon_triple(random_admissible(rng, 8));
      const DelayFreeVerdict v = delay_free_stable(e);
      if (!v.stable || v.eps1_margin <= 1e-9) continue;
      ++inside;
      CHECK((1 - e.eps1) * (1 - e.eps2) > e.eps0 * (e.eps1 + 1));
    }
    CHECK(inside > 100);
  }
}

TEST_CASE("delay-independent verdict") {
  const EpsilonTriple e = epsilon_triple(reference_params(1.0));
  CHECK(delay_independent_verdict(e, DelayConfig{3, 5, 8}) == DelayIndependentVerdict::ApplicableStable);
  CHECK(delay_independent_verdict(e, DelayConfig{7, 2, 0}) == DelayIndependentVerdict::ApplicableStable);
  CHECK(delay_independent_verdict(e, DelayConfig{5, 3, 3}) == DelayIndependentVerdict::NotApplicable);
  CHECK(delay_independent_verdict(epsilon_triple(reference_params(1.3)), DelayConfig{7, 2, 0}) ==
        DelayIndependentVerdict::ApplicableUnknown);

  // sufficiency: inside the delay-free region the delayed spectrum stays inside
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<int> lag(0, 12);
  std::uniform_int_distribution<int> coin(0, 1);
  int tested = 0;
  while (tested < 500) {
    const MarketParams p = random_admissible(rng, 8);
    const EpsilonTriple eps = epsilon_triple(p);
    const DelayFreeVerdict v = delay_free_stable(eps);
    if (!v.stable || v.eps1_margin < 1e-6) continue;
    DelayConfig d;
    if (coin(rng) == 0) {
      d = {lag(rng), lag(rng), 0};
    } else {
      d.tau0 = lag(rng) / 2;
      d.tau1 = lag(rng) / 2;
      d.tau2 = d.tau0 + d.tau1;
    }
    REQUIRE(delay_independent_verdict(eps, d) == DelayIndependentVerdict::ApplicableStable);
    const SpectrumReport s = poly_roots(full_char_poly(p, d, EquilibriumChoice::Positive));
    CHECK(s.max_nonzero_modulus < 1.0);
    ++tested;
  }
}

TEST_CASE("boundary equilibrium is a saddle") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 300; ++i) {
    const MarketParams p = random_admissible(rng, 8);
    const DelayConfig d = random_delays(rng, 6);
    const SpectrumReport s = poly_roots(full_char_poly(p, d, EquilibriumChoice::Boundary));
    // Saddle when the private block is contracting; otherwise unstable on
    // both counts.
    if ((p.n - 1) * p.delta / 2 < 1.0 - 1e-6) {
      CHECK(s.classification == Stability::Saddle);
    } else {
      CHECK(s.classification != Stability::AsymptoticallyStable);
    }
    CHECK(s.max_modulus > 1.0);
  }
}

TEST_CASE("no public firm") {
  const MarketParams p = reference_params();
  const SpectrumReport s = no_public_firm_spectrum(p, 0);
  CHECK(pairing_error({0.2, 0.2, 0.2, -0.6}, s.roots) < 1e-12);
  CHECK(s.classification == Stability::AsymptoticallyStable);

  const SpectrumReport u =
      no_public_firm_spectrum(MarketParams::from_intercepts(2, 2.5, 1, 0.5, 1, 6), 0);
  CHECK(pairing_error({-1.25}, u.roots) < 1e-12);
  CHECK(u.max_modulus > 1.0);

  const SpectrumReport lagged = no_public_firm_spectrum(p, 1);
  REQUIRE(lagged.roots.size() == 8);
  for (double m : lagged.moduli) {
    const bool ok = std::abs(m - std::sqrt(0.2)) < 1e-7 || std::abs(m - std::sqrt(0.6)) < 1e-12;
    CHECK(ok);
  }
  CHECK(max_modulus(lagged.roots) < 1.0);

  CHECK_THROWS_AS(no_public_firm_spectrum(MarketParams::from_intercepts(1, 1, 1, 0.5, 1, 1), 0),
                  ValidationError);
}
