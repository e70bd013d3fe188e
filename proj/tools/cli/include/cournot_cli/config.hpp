#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cournot/bifurcation.hpp"
#include "cournot/dynamics.hpp"
#include "cournot/errors.hpp"
#include "cournot/params.hpp"

namespace cournot::cli {

/// Malformed configuration text or flag value.
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Every recognised setting; unset fields fall back to per-command defaults.
struct RunConfig {
  std::optional<double> a, b, c0, c, a0, a1, delta, alpha;
  std::optional<long> n, tau0, tau1, tau2;
  std::optional<double> alpha_min, alpha_max;
  std::optional<long> alpha_count;
  std::optional<double> delta_min, delta_max;
  std::optional<long> delta_count;
  std::optional<long> transient, samples;
  std::optional<std::string> policy;
  std::optional<double> perturbation;
  std::optional<long> lle_iterations, lle_transient, renorm_interval;
  std::optional<double> blowup, period_tol;
  std::optional<long> k_max, scan_points, steps, workers;
  std::optional<std::string> which, out;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

using FieldRef = std::variant<std::optional<double> RunConfig::*,
                              std::optional<long> RunConfig::*,
                              std::optional<std::string> RunConfig::*>;

struct KeySpec {
  std::string_view name;
  FieldRef field;
  std::string_view help;
  /// Echoed into output headers. Keys that cannot change results (worker
  /// count, output path) are not.
  bool echoed = true;
};

std::span<const KeySpec> config_keys();

/// Sets `key` from its textual value. Throws ConfigError for unknown keys
/// and malformed values.
void set_value(RunConfig& cfg, std::string_view key, std::string_view value);

struct ParsedConfig {
  RunConfig config;
  std::vector<std::string> warnings;
};

/// key=value lines, `#` starts a comment. A repeated key overrides the
/// earlier value and produces a warning. Errors carry `source:line:`.
ParsedConfig parse_config(std::istream& in, std::string_view source = "<config>");
ParsedConfig parse_config_file(const std::string& path);

/// Fields set in `over` replace those in `base`.
RunConfig merge(RunConfig base, const RunConfig& over);

/// One `key=value` line per set field in key-table order; doubles use 17
/// significant digits so parse_config restores them exactly.
std::string emit_config(const RunConfig& cfg, bool echoed_only = false);

/// Textual value of a set field, formatted as in emit_config.
std::optional<std::string> field_text(const RunConfig& cfg, const KeySpec& key);

/// Market parameters from either (a, c0, c) or (a0, a1), plus b, delta, n.
/// With `alpha_required` false a missing alpha defaults to 1; likewise
/// delta with `delta_required` false defaults to 0.5.
MarketParams market_params(const RunConfig& cfg, bool alpha_required = true,
                           bool delta_required = true);
DelayConfig delay_config(const RunConfig& cfg);
SweepSpec sweep_spec(const RunConfig& cfg);
InitialPolicy parse_policy(std::string_view text);

}  // namespace cournot::cli
