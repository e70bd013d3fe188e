#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cournot/history.hpp"
#include "cournot/model.hpp"
#include "cournot/params.hpp"

namespace cournot {

enum class InitialPolicy {
  FreshPerturbed,  ///< every alpha starts from the perturbed E+ history
  Continued,       ///< each alpha starts from the previous alpha's final history
};

std::string_view to_string(InitialPolicy p);

struct LyapunovOptions {
  std::size_t iterations = 20000;  ///< total steps, transient included
  std::size_t transient = 1000;
  std::size_t renorm_interval = 1;
};

struct SweepSpec {
  double alpha_min = 1.0;
  double alpha_max = 1.7;
  std::size_t alpha_count = 141;
  std::size_t transient = 2000;
  std::size_t samples = 200;
  InitialPolicy policy = InitialPolicy::FreshPerturbed;
  double perturbation = 1e-2;  ///< added to q0 of E+
  bool compute_lyapunov = true;
  LyapunovOptions lyapunov;
  double blowup_bound = kDefaultBlowupBound;
  double period_tol = 1e-6;
  std::size_t max_period = 64;
  std::size_t workers = 1;

  double alpha_at(std::size_t index) const;
};

void validate(const SweepSpec& spec);

struct LyapunovEstimate {
  double lle = 0.0;  ///< nats per iteration
  std::size_t transient = 0;
  std::size_t iterations = 0;
  std::size_t renorm_interval = 1;
};

enum class AttractorType { FixedPoint, PeriodK, AperiodicOrQuasiperiodic, Divergent };

struct AttractorSummary {
  AttractorType type = AttractorType::AperiodicOrQuasiperiodic;
  std::vector<double> samples;
  std::size_t period = 0;  ///< 1 for FixedPoint, k for PeriodK, else 0

  /// "FixedPoint", "Period<k>", "Aperiodic" or "Divergent".
  std::string label() const;
};

/// Constant history at E+ with `perturbation` added to the public output.
HistoryState perturbed_equilibrium_history(const MarketParams& p,
                                           const DelayConfig& d,
                                           double perturbation);

/// Largest Lyapunov exponent from a tangent vector carried through the
/// embedded Jacobian along the orbit of `init`. Stretch factors are
/// collected at every renormalization after `transient` steps. Throws
/// NumericalError when the orbit diverges.
LyapunovEstimate largest_lyapunov(const MarketParams& p, const DelayConfig& d,
                                  HistoryState init, std::size_t iterations,
                                  std::size_t transient,
                                  std::size_t renorm_interval = 1,
                                  double blowup_bound = kDefaultBlowupBound);

/// FixedPoint when all samples lie within `tol` of each other, PeriodK for
/// the smallest lag k in [2, max_period] with |x[i+k] - x[i]| <= tol for
/// all i, otherwise AperiodicOrQuasiperiodic.
AttractorSummary classify_attractor(std::span<const double> samples,
                                    double tol = 1e-6,
                                    std::size_t max_period = 64,
                                    bool diverged = false);

struct DiagramRow {
  double alpha = 0.0;
  std::vector<double> q0;
  std::optional<double> lle;
  AttractorSummary attractor;
  bool diverged = false;
};

/// Post-transient q0 samples over the alpha grid of `spec`, one row per
/// grid point in grid order. Divergent cells are flagged, not fatal.
std::vector<DiagramRow> bifurcation_diagram(const MarketParams& base,
                                            const DelayConfig& d,
                                            const SweepSpec& spec);

struct PhasePoint {
  long t = 0;
  double q0 = 0.0;
  double q1 = 0.0;
};

struct PhasePortrait {
  std::vector<PhasePoint> points;
  bool diverged = false;
};

/// (q0, q1) projection of `spec.samples` post-transient iterates.
PhasePortrait phase_portrait(const MarketParams& base, const DelayConfig& d,
                             double alpha, const SweepSpec& spec);

}  // namespace cournot
