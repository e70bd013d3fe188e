#include "cournot_cli/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace cournot::cli {

namespace {

using D = std::optional<double> RunConfig::*;
using L = std::optional<long> RunConfig::*;
using S = std::optional<std::string> RunConfig::*;

const std::array kKeys{
    KeySpec{"a", D{&RunConfig::a}, "demand intercept"},
    KeySpec{"b", D{&RunConfig::b}, "demand slope"},
    KeySpec{"c0", D{&RunConfig::c0}, "public-firm marginal cost"},
    KeySpec{"c", D{&RunConfig::c}, "private-firm marginal cost"},
    KeySpec{"a0", D{&RunConfig::a0}, "a - c0"},
    KeySpec{"a1", D{&RunConfig::a1}, "a - c"},
    KeySpec{"delta", D{&RunConfig::delta}, "product differentiation, in (0,1)"},
    KeySpec{"alpha", D{&RunConfig::alpha}, "public-firm adjustment speed"},
    KeySpec{"n", L{&RunConfig::n}, "number of private firms"},
    KeySpec{"tau0", L{&RunConfig::tau0}, "lag of the public output seen by private firms"},
    KeySpec{"tau1", L{&RunConfig::tau1}, "lag of private outputs seen by the public firm"},
    KeySpec{"tau2", L{&RunConfig::tau2}, "lag among private firms"},
    KeySpec{"alpha_min", D{&RunConfig::alpha_min}, "alpha range start"},
    KeySpec{"alpha_max", D{&RunConfig::alpha_max}, "alpha range end"},
    KeySpec{"alpha_count", L{&RunConfig::alpha_count}, "alpha grid points"},
    KeySpec{"delta_min", D{&RunConfig::delta_min}, "delta grid start"},
    KeySpec{"delta_max", D{&RunConfig::delta_max}, "delta grid end"},
    KeySpec{"delta_count", L{&RunConfig::delta_count}, "delta grid points"},
    KeySpec{"transient", L{&RunConfig::transient}, "discarded iterations"},
    KeySpec{"samples", L{&RunConfig::samples}, "recorded iterations"},
    KeySpec{"policy", S{&RunConfig::policy}, "initial history per alpha: fresh|continued"},
    KeySpec{"perturbation", D{&RunConfig::perturbation}, "offset added to q0 of E+"},
    KeySpec{"lle_iterations", L{&RunConfig::lle_iterations}, "Lyapunov iterations"},
    KeySpec{"lle_transient", L{&RunConfig::lle_transient}, "Lyapunov transient"},
    KeySpec{"renorm_interval", L{&RunConfig::renorm_interval}, "tangent renormalization interval"},
    KeySpec{"blowup", D{&RunConfig::blowup}, "divergence bound"},
    KeySpec{"period_tol", D{&RunConfig::period_tol}, "period detection tolerance"},
    KeySpec{"k_max", L{&RunConfig::k_max}, "largest detected period"},
    KeySpec{"scan_points", L{&RunConfig::scan_points}, "coarse scan resolution"},
    KeySpec{"which", S{&RunConfig::which}, "spectrum: positive|reduced|boundary|no-public-firm"},
    KeySpec{"steps", L{&RunConfig::steps}, "simulation length"},
    KeySpec{"workers", L{&RunConfig::workers}, "worker threads", false},
    KeySpec{"out", S{&RunConfig::out}, "output file (stdout if absent)", false},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

const KeySpec* find_key(std::string_view name) {
  for (const auto& k : kKeys) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError("malformed value for '" + std::string(key) + "': '" +
                      std::string(text) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) {
      throw ConfigError("non-finite value for '" + std::string(key) + "'");
    }
  }
  return value;
}

std::size_t as_count(std::string_view key, const std::optional<long>& v,
                     std::size_t fallback) {
  if (!v) return fallback;
  if (*v < 0) throw ValidationError(std::string(key) + " must be nonnegative");
  return static_cast<std::size_t>(*v);
}

}  // namespace

std::span<const KeySpec> config_keys() { return kKeys; }

void set_value(RunConfig& cfg, std::string_view key, std::string_view value) {
  const KeySpec* spec = find_key(key);
  if (!spec) throw ConfigError("unknown key '" + std::string(key) + "'");
  value = trim(value);
  std::visit(
      [&](auto member) {
        using Field = std::remove_reference_t<decltype(cfg.*member)>;
        using T = typename Field::value_type;
        if constexpr (std::is_same_v<T, std::string>) {
          if (value.empty()) {
            throw ConfigError("empty value for '" + std::string(key) + "'");
          }
          cfg.*member = std::string(value);
        } else {
          cfg.*member = parse_number<T>(key, value);
        }
      },
      spec->field);
}

ParsedConfig parse_config(std::istream& in, std::string_view source) {
  ParsedConfig parsed;
  std::map<std::string, int, std::less<>> seen;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) continue;
    const auto where = std::string(source) + ":" + std::to_string(number) + ": ";
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + "expected key=value");
    }
    const std::string key(trim(text.substr(0, eq)));
    try {
      set_value(parsed.config, key, text.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
    if (const auto it = seen.find(key); it != seen.end()) {
      parsed.warnings.push_back(where + "'" + key + "' repeats line " +
                                std::to_string(it->second) + "; using the later value");
    }
    seen[key] = number;
  }
  return parsed;
}

ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

RunConfig merge(RunConfig base, const RunConfig& over) {
  for (const auto& k : kKeys) {
    std::visit(
        [&](auto member) {
          if (over.*member) base.*member = over.*member;
        },
        k.field);
  }
  return base;
}

std::optional<std::string> field_text(const RunConfig& cfg, const KeySpec& key) {
  return std::visit(
      [&](auto member) -> std::optional<std::string> {
        const auto& v = cfg.*member;
        if (!v) return std::nullopt;
        using T = std::remove_cvref_t<decltype(*v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return *v;
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(*v);
        } else {
          return std::to_string(*v);
        }
      },
      key.field);
}

std::string emit_config(const RunConfig& cfg, bool echoed_only) {
  std::ostringstream os;
  for (const auto& k : kKeys) {
    if (echoed_only && !k.echoed) continue;
    if (auto text = field_text(cfg, k)) os << k.name << '=' << *text << '\n';
  }
  return os.str();
}

MarketParams market_params(const RunConfig& cfg, bool alpha_required,
                           bool delta_required) {
  auto need = [](const auto& v, std::string_view key) {
    if (!v) throw ValidationError("missing required key '" + std::string(key) + "'");
    return *v;
  };
  const double b = need(cfg.b, "b");
  const long n = need(cfg.n, "n");
  if (n < 1 || n > 100000) throw ValidationError("n must be a positive firm count");
  const double delta = delta_required ? need(cfg.delta, "delta") : cfg.delta.value_or(0.5);
  const double alpha = alpha_required ? need(cfg.alpha, "alpha") : cfg.alpha.value_or(1.0);

  const bool has_primitives = cfg.a || cfg.c0 || cfg.c;
  const bool has_intercepts = cfg.a0 || cfg.a1;
  MarketParams p;
  if (has_primitives) {
    p = MarketParams::from_primitives(need(cfg.a, "a"), b, need(cfg.c0, "c0"),
                                      need(cfg.c, "c"), delta, alpha,
                                      static_cast<int>(n));
    if (has_intercepts) {
      const double a0 = need(cfg.a0, "a0");
      const double a1 = need(cfg.a1, "a1");
      if (std::abs(a0 - p.a0) > 1e-12 || std::abs(a1 - p.a1) > 1e-12) {
        throw ValidationError("a0/a1 disagree with a - c0 and a - c");
      }
    }
  } else if (has_intercepts) {
    p = MarketParams::from_intercepts(need(cfg.a0, "a0"), need(cfg.a1, "a1"), b,
                                      delta, alpha, static_cast<int>(n));
  } else {
    throw ValidationError("missing required key 'a0' (or 'a', 'c0', 'c')");
  }
  validate(p);
  return p;
}

DelayConfig delay_config(const RunConfig& cfg) {
  auto lag = [](const std::optional<long>& v) {
    if (v && (*v < 0 || *v > 100000)) throw ValidationError("delays must be in [0, 100000]");
    return static_cast<int>(v.value_or(0));
  };
  const DelayConfig d{lag(cfg.tau0), lag(cfg.tau1), lag(cfg.tau2)};
  validate(d);
  return d;
}

InitialPolicy parse_policy(std::string_view text) {
  if (text == "fresh") return InitialPolicy::FreshPerturbed;
  if (text == "continued") return InitialPolicy::Continued;
  throw ValidationError("policy must be 'fresh' or 'continued', got '" +
                        std::string(text) + "'");
}

SweepSpec sweep_spec(const RunConfig& cfg) {
  SweepSpec s;
  s.alpha_min = cfg.alpha_min.value_or(s.alpha_min);
  s.alpha_max = cfg.alpha_max.value_or(s.alpha_max);
  s.alpha_count = as_count("alpha_count", cfg.alpha_count, s.alpha_count);
  s.transient = as_count("transient", cfg.transient, s.transient);
  s.samples = as_count("samples", cfg.samples, s.samples);
  if (cfg.policy) s.policy = parse_policy(*cfg.policy);
  s.perturbation = cfg.perturbation.value_or(s.perturbation);
  s.lyapunov.iterations = as_count("lle_iterations", cfg.lle_iterations, s.lyapunov.iterations);
  s.lyapunov.transient = as_count("lle_transient", cfg.lle_transient, s.lyapunov.transient);
  s.lyapunov.renorm_interval =
      as_count("renorm_interval", cfg.renorm_interval, s.lyapunov.renorm_interval);
  s.blowup_bound = cfg.blowup.value_or(s.blowup_bound);
  s.period_tol = cfg.period_tol.value_or(s.period_tol);
  s.max_period = as_count("k_max", cfg.k_max, s.max_period);
  s.workers = as_count("workers", cfg.workers, s.workers);
  if (s.workers == 0) throw ValidationError("workers must be >= 1");
  validate(s);
  return s;
}

}  // namespace cournot::cli
