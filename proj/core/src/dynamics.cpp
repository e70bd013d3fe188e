#include "cournot/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cournot/equilibria.hpp"
#include "cournot/errors.hpp"
#include "cournot/parallel.hpp"

namespace cournot {

std::string_view to_string(InitialPolicy p) {
  return p == InitialPolicy::FreshPerturbed ? "fresh" : "continued";
}

double SweepSpec::alpha_at(std::size_t index) const {
  if (alpha_count <= 1) return alpha_min;
  return alpha_min + (alpha_max - alpha_min) * static_cast<double>(index) /
                         static_cast<double>(alpha_count - 1);
}

void validate(const SweepSpec& spec) {
  if (spec.alpha_count < 2) throw ValidationError("alpha grid needs >= 2 points");
  if (!(spec.alpha_max > spec.alpha_min)) {
    throw ValidationError("alpha_max must exceed alpha_min");
  }
  if (spec.transient < 1 || spec.samples < 1) {
    throw ValidationError("transient and sample lengths must be >= 1");
  }
  if (spec.compute_lyapunov &&
      spec.lyapunov.iterations <= spec.lyapunov.transient) {
    throw ValidationError("Lyapunov iterations must exceed the transient");
  }
  if (spec.lyapunov.renorm_interval < 1) {
    throw ValidationError("renormalization interval must be >= 1");
  }
  if (!(spec.blowup_bound > 0.0)) throw ValidationError("blow-up bound must be positive");
  if (!(spec.period_tol > 0.0)) throw ValidationError("period tolerance must be positive");
}

std::string AttractorSummary::label() const {
  switch (type) {
    case AttractorType::FixedPoint: return "FixedPoint";
    case AttractorType::PeriodK: return "Period" + std::to_string(period);
    case AttractorType::AperiodicOrQuasiperiodic: return "Aperiodic";
    case AttractorType::Divergent: return "Divergent";
  }
  return "?";
}

HistoryState perturbed_equilibrium_history(const MarketParams& p,
                                           const DelayConfig& d,
                                           double perturbation) {
  OutputVector start = positive_equilibrium(p).point;
  start[0] += perturbation;
  return HistoryState::constant(d, start);
}

namespace {

double stacked_norm(const HistoryState& h) {
  double sq = 0.0;
  for (std::size_t k = 0; k < h.depth(); ++k) sq += h.lookback(k).squaredNorm();
  return std::sqrt(sq);
}

void scale(HistoryState& h, double factor) {
  for (std::size_t k = 0; k < h.depth(); ++k) h.lookback(k) *= factor;
}

// Deterministic start vector with distinct entries across firms and lags,
// so both the symmetric and the antisymmetric private-firm modes are
// excited.
HistoryState initial_tangent(const DelayConfig& d, int n) {
  const Eigen::Index dim = n + 1;
  std::vector<OutputVector> window;
  for (int k = d.tau_max(); k >= 0; --k) {
    OutputVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      v[i] = 1.0 / (1.0 + static_cast<double>(i) + 0.5 * k);
    }
    window.push_back(v);
  }
  HistoryState tangent(window);
  scale(tangent, 1.0 / stacked_norm(tangent));
  return tangent;
}

}  // namespace

LyapunovEstimate largest_lyapunov(const MarketParams& p, const DelayConfig& d,
                                  HistoryState init, std::size_t iterations,
                                  std::size_t transient,
                                  std::size_t renorm_interval,
                                  double blowup_bound) {
  init.require_shape(d, p.n);
  if (iterations <= transient) {
    throw ValidationError("Lyapunov iterations must exceed the transient");
  }
  if (renorm_interval < 1) throw ValidationError("renormalization interval must be >= 1");

  HistoryState tangent = initial_tangent(d, p.n);
  OutputVector next_state(p.n + 1);
  OutputVector next_tangent(p.n + 1);
  double log_sum = 0.0;
  std::size_t since_renorm = 0;

  for (std::size_t s = 1; s <= iterations; ++s) {
    tangent_step_into(init, tangent, p, d, next_tangent);
    step_into(init, p, d, next_state);
    init.push(next_state);
    tangent.push(next_tangent);
    for (Eigen::Index i = 0; i < next_state.size(); ++i) {
      if (!(std::abs(next_state[i]) <= blowup_bound)) {
        std::ostringstream os;
        os << "orbit diverged after " << s << " steps at alpha = " << p.alpha;
        throw NumericalError(os.str());
      }
    }
    ++since_renorm;
    const bool boundary = s == transient || s == iterations ||
                          since_renorm == renorm_interval;
    if (!boundary) continue;
    const double norm = stacked_norm(tangent);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw NumericalError("tangent vector degenerated; lower renorm_interval");
    }
    if (s > transient) log_sum += std::log(norm);
    scale(tangent, 1.0 / norm);
    since_renorm = 0;
  }
  return {log_sum / static_cast<double>(iterations - transient), transient,
          iterations, renorm_interval};
}

AttractorSummary classify_attractor(std::span<const double> samples,
                                    double tol, std::size_t max_period,
                                    bool diverged) {
  AttractorSummary out;
  out.samples.assign(samples.begin(), samples.end());
  if (diverged) {
    out.type = AttractorType::Divergent;
    return out;
  }
  if (samples.size() < 2) {
    throw ValidationError("attractor classification needs at least 2 samples");
  }
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (*hi - *lo <= tol) {
    out.type = AttractorType::FixedPoint;
    out.period = 1;
    return out;
  }
  auto recurs = [&](std::size_t lag) {
    for (std::size_t i = 0; i + lag < samples.size(); ++i) {
      if (!(std::abs(samples[i + lag] - samples[i]) <= tol)) return false;
    }
    return true;
  };
  const std::size_t limit = std::min(max_period, samples.size() - 1);
  for (std::size_t k = 1; k <= limit; ++k) {
    if (!recurs(k)) continue;
    // Lag-1 recurrence without the range test is a slow drift.
    if (k >= 2) {
      out.type = AttractorType::PeriodK;
      out.period = k;
    }
    return out;
  }
  return out;
}

namespace {

DiagramRow diagram_cell(const MarketParams& p, const DelayConfig& d,
                        const SweepSpec& spec, HistoryState& history) {
  DiagramRow row;
  row.alpha = p.alpha;
  const HistoryState start = history;
  row.diverged = advance(history, p, d, spec.transient, spec.blowup_bound);
  row.q0.reserve(spec.samples);
  for (std::size_t s = 0; s < spec.samples && !row.diverged; ++s) {
    row.diverged = advance(history, p, d, 1, spec.blowup_bound);
    row.q0.push_back(history.current()[0]);
  }
  if (!row.diverged && spec.compute_lyapunov) {
    try {
      row.lle = largest_lyapunov(p, d, start, spec.lyapunov.iterations,
                                 spec.lyapunov.transient,
                                 spec.lyapunov.renorm_interval,
                                 spec.blowup_bound)
                    .lle;
    } catch (const NumericalError&) {
      row.lle.reset();
    }
  }
  row.attractor = classify_attractor(row.q0, spec.period_tol, spec.max_period,
                                     row.diverged);
  return row;
}

}  // namespace

std::vector<DiagramRow> bifurcation_diagram(const MarketParams& base,
                                            const DelayConfig& d,
                                            const SweepSpec& spec) {
  validate(spec);
  validate(d);
  std::vector<DiagramRow> rows(spec.alpha_count);

  if (spec.policy == InitialPolicy::FreshPerturbed) {
    const HistoryState start = perturbed_equilibrium_history(base, d, spec.perturbation);
    parallel_for(spec.alpha_count, spec.workers, [&](std::size_t i) {
      HistoryState h = start;
      rows[i] = diagram_cell(base.with_alpha(spec.alpha_at(i)), d, spec, h);
    });
    return rows;
  }

  // Continuation is inherently sequential in alpha. The perturbation is
  // re-applied at every grid point so that a state resting exactly on E+
  // past its stability loss is kicked off.
  HistoryState h = perturbed_equilibrium_history(base, d, spec.perturbation);
  for (std::size_t i = 0; i < spec.alpha_count; ++i) {
    if (i > 0) {
      if (rows[i - 1].diverged) {
        h = perturbed_equilibrium_history(base, d, spec.perturbation);
      } else {
        h.lookback(0)[0] += spec.perturbation;
      }
    }
    rows[i] = diagram_cell(base.with_alpha(spec.alpha_at(i)), d, spec, h);
  }
  return rows;
}

PhasePortrait phase_portrait(const MarketParams& base, const DelayConfig& d,
                             double alpha, const SweepSpec& spec) {
  validate(d);
  const MarketParams p = base.with_alpha(alpha);
  HistoryState h = perturbed_equilibrium_history(p, d, spec.perturbation);
  PhasePortrait portrait;
  portrait.diverged = advance(h, p, d, spec.transient, spec.blowup_bound);
  portrait.points.reserve(spec.samples);
  for (std::size_t s = 0; s < spec.samples && !portrait.diverged; ++s) {
    portrait.diverged = advance(h, p, d, 1, spec.blowup_bound);
    const OutputVector& q = h.current();
    portrait.points.push_back({h.time(), q[0], q[1]});
  }
  return portrait;
}

}  // namespace cournot
