#include "cournot_cli/app.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "cournot/cournot.hpp"
#include "cournot_cli/config.hpp"
#include "cournot_cli/output.hpp"

namespace cournot::cli {

namespace {

using Handler = std::function<void(const RunConfig&, std::ostream&, std::ostream&)>;

struct Command {
  std::string name;
  std::string help;
  Handler handler;
};

std::size_t count_or(const std::optional<long>& v, std::size_t fallback, const char* key) {
  if (!v) return fallback;
  if (*v < 0) throw ValidationError(std::string(key) + " must be nonnegative");
  return static_cast<std::size_t>(*v);
}

void write_vector(JsonWriter& json, const Eigen::VectorXd& v) {
  json.begin_array();
  for (Eigen::Index i = 0; i < v.size(); ++i) json.value(v[i]);
  json.end_array();
}

void cmd_equilibria(const RunConfig& cfg, std::ostream& os, std::ostream&) {
  const MarketParams p = market_params(cfg, false);
  const AssumptionReport a = check_assumptions(p);
  const Equilibrium zero = boundary_equilibrium(p);

  JsonWriter json(os);
  json.begin_object();
  json.key("assumptions").begin_object();
  json.key("a1_holds").value(a.a1_holds);
  json.key("a1_margin").value(a.a1_margin);
  json.key("a2_holds").value(a.a2_holds);
  json.key("a2_margin").value(a.a2_margin);
  json.end_object();
  json.key("q_star").value(zero.point[1]);
  json.key("boundary").begin_object();
  json.key("point");
  write_vector(json, zero.point);
  json.key("residual").value(zero.residual);
  json.end_object();
  if (a.all_hold()) {
    const Equilibrium plus = positive_equilibrium(p);
    json.key("q0_star").value(plus.point[0]);
    json.key("q1_star").value(plus.point[1]);
    json.key("positive").begin_object();
    json.key("point");
    write_vector(json, plus.point);
    json.key("residual").value(plus.residual);
    json.end_object();
    if (p.primitives) {
      const EconomicReport r = economic_report(plus.point, p);
      json.key("economics").begin_object();
      json.key("prices");
      write_vector(json, r.prices);
      json.key("profits");
      write_vector(json, r.profits);
      json.key("social_surplus").value(r.social_surplus);
      json.end_object();
    }
  } else {
    json.key("q0_star").null();
    json.key("q1_star").null();
    json.key("positive").null();
  }
  if (p.n >= 2) {
    const Equilibrium red = reduced_fixed_point(p);
    json.key("reduced_fixed_point").begin_object();
    json.key("point");
    write_vector(json, red.point);
    json.key("residual").value(red.residual);
    json.end_object();
  } else {
    json.key("reduced_fixed_point").null();
  }
  json.config("equilibria", cfg);
  json.end_object();
  json.finish();
}

void cmd_simulate(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  const MarketParams p = market_params(cfg);
  const DelayConfig d = delay_config(cfg);
  const std::size_t steps = count_or(cfg.steps, 1000, "steps");
  const HistoryState init =
      perturbed_equilibrium_history(p, d, cfg.perturbation.value_or(1e-2));
  const Trajectory traj =
      simulate(p, d, init, steps, cfg.blowup.value_or(kDefaultBlowupBound));

  write_header(os, "simulate", cfg);
  os << 't';
  for (int i = 0; i <= p.n; ++i) os << ",q" << i;
  os << '\n';
  long t = traj.start_time;
  for (const auto& q : traj.points) {
    os << t++;
    for (Eigen::Index i = 0; i < q.size(); ++i) os << ',' << format_number(q[i]);
    os << '\n';
  }
  if (traj.diverged) err << "warning: orbit left the blow-up bound at t=" << (t - 1) << '\n';
}

void write_spectrum(JsonWriter& json, const SpectrumReport& s) {
  json.key("classification").value(to_string(s.classification));
  json.key("max_modulus").value(s.max_modulus);
  json.key("max_nonzero_modulus").value(s.max_nonzero_modulus);
  json.key("on_circle_count").value(s.on_circle_count);
  json.key("zero_roots").value(s.zero_roots);
  json.key("roots").begin_array();
  for (std::size_t i = 0; i < s.roots.size(); ++i) {
    json.begin_object();
    json.key("re").value(s.roots[i].real());
    json.key("im").value(s.roots[i].imag());
    json.key("modulus").value(s.moduli[i]);
    json.end_object();
  }
  json.end_array();
}

void cmd_spectrum(const RunConfig& cfg, std::ostream& os, std::ostream&) {
  const MarketParams p = market_params(cfg);
  const DelayConfig d = delay_config(cfg);
  const std::string which = cfg.which.value_or("positive");

  JsonWriter json(os);
  json.begin_object();
  json.key("which").value(which);
  if (which == "no-public-firm") {
    const SpectrumReport s = no_public_firm_spectrum(p, d.tau2);
    json.key("degree").value(static_cast<long>(s.roots.size()));
    write_spectrum(json, s);
  } else {
    CharPoly cp;
    if (which == "positive") {
      cp = full_char_poly(p, d, EquilibriumChoice::Positive);
    } else if (which == "boundary") {
      cp = full_char_poly(p, d, EquilibriumChoice::Boundary);
    } else if (which == "reduced") {
      require_assumptions(p);
      cp = reduced_char_poly(epsilon_triple(p), d);
    } else {
      throw ValidationError("which must be positive, reduced, boundary or no-public-firm");
    }
    json.key("kind").value(to_string(cp.kind));
    json.key("degree").value(cp.degree());
    if (which != "boundary") {
      const EpsilonTriple e = epsilon_triple(p);
      json.key("epsilon").begin_object();
      json.key("eps0").value(e.eps0);
      json.key("eps1").value(e.eps1);
      json.key("eps2").value(e.eps2);
      json.end_object();
      json.key("delay_free_stable").value(delay_free_stable(e).stable);
      json.key("delay_independent").value(to_string(delay_independent_verdict(e, d)));
    }
    write_spectrum(json, poly_roots(cp));
  }
  json.config("spectrum", cfg);
  json.end_object();
  json.finish();
}

void cmd_stability_region(const RunConfig& cfg, std::ostream& os, std::ostream&) {
  const MarketParams base = market_params(cfg, false, false);
  const double lo = cfg.delta_min.value_or(0.01);
  const double hi = cfg.delta_max.value_or(0.99);
  const std::size_t count = count_or(cfg.delta_count, 99, "delta_count");
  if (count < 2 || !(hi > lo) || !(lo > 0.0) || !(hi < 1.0)) {
    throw ValidationError("delta grid must satisfy 0 < delta_min < delta_max < 1, delta_count >= 2");
  }
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  write_header(os, "stability-region", cfg);
  os << "delta,alpha_max,feasible\n";
  for (const auto& row : stability_region(base, base.n, grid)) {
    os << format_number(row.delta) << ',' << format_number(row.alpha_max.value_or(NAN))
       << ',' << (row.feasible() ? 1 : 0) << '\n';
  }
}

void write_point_row(std::ostream& os, const BifurcationPoint& b) {
  os << format_number(b.alpha) << ',' << to_string(b.kind) << ',' << format_number(b.theta)
     << ',' << format_number(b.residual) << '\n';
}

void cmd_flip_boundary(const RunConfig& cfg, std::ostream& os, std::ostream&) {
  const MarketParams p = market_params(cfg, false);
  const BifurcationPoint b = flip_boundary(p, delay_config(cfg));
  write_header(os, "flip-boundary", cfg);
  os << "alpha,kind,theta,residual\n";
  write_point_row(os, b);
}

void cmd_ns_curve(const RunConfig& cfg, std::ostream& os, std::ostream&) {
  const MarketParams p = market_params(cfg, false);
  NsScanOptions opts;
  opts.scan_points = count_or(cfg.scan_points, opts.scan_points, "scan_points");
  if (opts.scan_points < 2) throw ValidationError("scan_points must be >= 2");
  const auto points = ns_boundary(p, delay_config(cfg), opts);
  write_header(os, "ns-curve", cfg);
  os << "theta,eps1,alpha,residual\n";
  for (const auto& b : points) {
    os << format_number(b.theta) << ',' << format_number(b.eps1) << ','
       << format_number(b.alpha) << ',' << format_number(b.residual) << '\n';
  }
}

void cmd_critical_alpha(const RunConfig& cfg, std::ostream& os, std::ostream&) {
  const MarketParams p = market_params(cfg, false);
  const DelayConfig d = delay_config(cfg);
  CriticalAlphaOptions opts;
  opts.scan_points = count_or(cfg.scan_points, opts.scan_points, "scan_points");
  if (opts.scan_points < 2) throw ValidationError("scan_points must be >= 2");
  const AlphaRange range{cfg.alpha_min.value_or(1.0), cfg.alpha_max.value_or(1.7)};
  if (!(range.hi > range.lo) || !(range.lo > 0.0)) {
    throw ValidationError("alpha bracket must satisfy 0 < alpha_min < alpha_max");
  }
  const StabilityLossReport r = stability_loss_report(p, d, range, opts);

  JsonWriter json(os);
  json.begin_object();
  json.key("kind").value(to_string(r.detected.kind));
  json.key("alpha").value(r.detected.alpha);
  json.key("theta").value(r.detected.theta);
  json.key("residual").value(r.detected.residual);
  json.key("eps1").value(r.detected.eps1);
  json.key("delay_free_alpha");
  if (r.delay_free_alpha) json.value(*r.delay_free_alpha); else json.null();
  json.key("flip_closed_form");
  if (r.flip_closed_form) {
    json.begin_object();
    json.key("alpha").value(r.flip_closed_form->alpha);
    json.key("is_first_crossing").value(r.flip_is_first_crossing);
    json.end_object();
  } else {
    json.null();
  }
  json.config("critical-alpha", cfg);
  json.end_object();
  json.finish();
}

void cmd_bifurcation_diagram(const RunConfig& cfg, std::ostream& os, std::ostream&) {
  const MarketParams base = market_params(cfg, false);
  require_assumptions(base);
  const DelayConfig d = delay_config(cfg);
  const SweepSpec spec = sweep_spec(cfg);
  const auto rows = bifurcation_diagram(base, d, spec);

  write_header(os, "bifurcation-diagram", cfg);
  os << "alpha,sample_index,q0,lle,attractor_type\n";
  for (const auto& row : rows) {
    const std::string alpha = format_number(row.alpha);
    const std::string lle = format_number(row.lle.value_or(NAN));
    const std::string label = row.attractor.label();
    if (row.q0.empty()) {
      os << alpha << ",0,nan," << lle << ',' << label << '\n';
      continue;
    }
    for (std::size_t i = 0; i < row.q0.size(); ++i) {
      os << alpha << ',' << i << ',' << format_number(row.q0[i]) << ',' << lle << ','
         << label << '\n';
    }
  }
}

void cmd_lyapunov(const RunConfig& cfg, std::ostream& os, std::ostream&) {
  const MarketParams p = market_params(cfg);
  const DelayConfig d = delay_config(cfg);
  const SweepSpec spec = sweep_spec(cfg);
  const LyapunovEstimate e = largest_lyapunov(
      p, d, perturbed_equilibrium_history(p, d, spec.perturbation), spec.lyapunov.iterations,
      spec.lyapunov.transient, spec.lyapunov.renorm_interval, spec.blowup_bound);

  JsonWriter json(os);
  json.begin_object();
  json.key("alpha").value(p.alpha);
  json.key("lle").value(e.lle);
  json.key("iterations").value(e.iterations);
  json.key("transient").value(e.transient);
  json.key("renorm_interval").value(e.renorm_interval);
  json.config("lyapunov", cfg);
  json.end_object();
  json.finish();
}

void cmd_phase_portrait(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  const MarketParams p = market_params(cfg);
  require_assumptions(p);
  const SweepSpec spec = sweep_spec(cfg);
  const PhasePortrait portrait = phase_portrait(p, delay_config(cfg), p.alpha, spec);
  write_header(os, "phase-portrait", cfg);
  os << "t,q0,q1\n";
  for (const auto& pt : portrait.points) {
    os << pt.t << ',' << format_number(pt.q0) << ',' << format_number(pt.q1) << '\n';
  }
  if (portrait.diverged) err << "warning: orbit left the blow-up bound\n";
}

const std::vector<Command>& commands() {
  static const std::vector<Command> list{
      {"equilibria", "E0, E+ and the positivity margins (JSON)", cmd_equilibria},
      {"simulate", "orbit from the perturbed E+ (CSV)", cmd_simulate},
      {"spectrum", "characteristic roots and stability (JSON)", cmd_spectrum},
      {"stability-region", "delay-free alpha bound over a delta grid (CSV)", cmd_stability_region},
      {"flip-boundary", "closed-form flip value (CSV)", cmd_flip_boundary},
      {"ns-curve", "Neimark-Sacker candidates over theta (CSV)", cmd_ns_curve},
      {"critical-alpha", "first loss of stability in an alpha bracket (JSON)", cmd_critical_alpha},
      {"bifurcation-diagram", "q0 samples and Lyapunov exponent over alpha (CSV)",
       cmd_bifurcation_diagram},
      {"lyapunov", "largest Lyapunov exponent (JSON)", cmd_lyapunov},
      {"phase-portrait", "(q0, q1) projection of the attractor (CSV)", cmd_phase_portrait},
  };
  return list;
}

void emit(const RunConfig& cfg, const Command& cmd, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  cmd.handler(cfg, buffer, err);
  if (!cfg.out) {
    out << buffer.str();
    return;
  }
  std::ofstream file(*cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw ValidationError("cannot open output file '" + *cfg.out + "'");
  file << buffer.str();
  if (!file) throw Error("failed writing '" + *cfg.out + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Delayed mixed-oligopoly Cournot dynamics", "cournot-lab"};
  app.require_subcommand(1);

  struct Bound {
    const Command* command;
    CLI::App* app;
    std::string config_path;
    std::map<std::string, std::string> flags;
  };
  std::vector<Bound> bound;
  bound.reserve(commands().size());
  for (const auto& cmd : commands()) {
    Bound& b = bound.emplace_back();
    b.command = &cmd;
    b.app = app.add_subcommand(cmd.name, cmd.help);
    b.app->add_option("--config", b.config_path, "key=value configuration file");
    for (const auto& key : config_keys()) {
      std::string names = "--" + std::string(key.name);
      std::string dashed(key.name);
      std::replace(dashed.begin(), dashed.end(), '_', '-');
      if (dashed != key.name) names += ",--" + dashed;
      b.app->add_option(names, b.flags[std::string(key.name)], std::string(key.help));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  for (const auto& b : bound) {
    if (!b.app->parsed()) continue;
    try {
      RunConfig cfg;
      if (!b.config_path.empty()) {
        ParsedConfig parsed = parse_config_file(b.config_path);
        for (const auto& w : parsed.warnings) err << "warning: " << w << '\n';
        cfg = parsed.config;
      }
      for (const auto& key : config_keys()) {
        const std::string name(key.name);
        if (b.app->count("--" + name) > 0) set_value(cfg, name, b.flags.at(name));
      }
      emit(cfg, *b.command, out, err);
      return kExitOk;
    } catch (const NumericalError& e) {
      err << "error: " << e.what() << '\n';
      return kExitNumerical;
    } catch (const ValidationError& e) {
      err << "error: " << e.what() << '\n';
      return kExitValidation;
    } catch (const DimensionError& e) {
      err << "error: " << e.what() << '\n';
      return kExitValidation;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitFailure;
    }
  }
  return kExitFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"cournot-lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cournot::cli
