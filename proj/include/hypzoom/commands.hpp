#pragma once

// Implementations behind the hypzoom command-line tool. Each command returns
// nothing on success and throws ConfigError for invalid input; every file
// it writes depends only on its inputs.

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "hypzoom/baselines.hpp"
#include "hypzoom/diagrams.hpp"
#include "hypzoom/filters.hpp"
#include "hypzoom/hyperbolic.hpp"
#include "hypzoom/io.hpp"
#include "hypzoom/svg.hpp"
#include "hypzoom/uw.hpp"

namespace hypzoom {

inline constexpr double kDefaultThreshold = 0.25;
inline constexpr int kGoldenSchemaVersion = 1;

struct CommandOptions {
  std::string scenario;
  std::string filter;
  std::string out;
  std::string input;  // trajectory CSV for diagram/metrics
  std::vector<std::string> techniques;
  std::optional<double> rate;
  std::optional<double> duration;
  std::optional<double> alpha_iso;
  std::optional<double> theta_deg;
  std::optional<double> threshold;
  std::uint64_t seed = 1;
};

inline const std::vector<std::string>& technique_names() {
  static const std::vector<std::string> names = {"constant-speed", "easing",           "one-pole", "clipped-one-pole",
                                                 "cascaded",       "clipped-cascaded", "two-pole", "clipped-two-pole"};
  return names;
}

inline const std::vector<std::string>& comparison_techniques() {
  static const std::vector<std::string> names = {"constant-speed", "easing", "cascaded", "clipped-cascaded"};
  return names;
}

/// Built-in parameter sets: c = 1 Hz, alpha = 6 Hz, omega0 = 6 rad/s,
/// critically damped two-pole, 1.5 s easing.
inline TechniqueSpec named_technique(const std::string& name) {
  if (name == "constant-speed") return ConstantSpeedSpec{1.0};
  if (name == "easing") return EasingSpec{1.5};
  if (name == "one-pole") return FilterSpec{{OnePole{6.0}}};
  if (name == "clipped-one-pole") return FilterSpec{{ClippedOnePole{6.0, 1.0}}};
  if (name == "cascaded") return FilterSpec{FilterConfig::cascade(4, 6.0).stages};
  if (name == "clipped-cascaded") return FilterSpec{FilterConfig::clipped_cascade().stages};
  if (name == "two-pole") return FilterSpec{{TwoPole{6.0, 1.0}}};
  if (name == "clipped-two-pole") return FilterSpec{{ClippedOnePole{6.0, 1.0}, TwoPole{6.0, 1.0}}};
  std::string valid;
  for (const auto& n : technique_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw ConfigError("technique", "unknown technique \"" + name + "\"; valid names: " + valid);
}

namespace cmd_detail {

template <std::size_t D>
Scenario<D> load_scenario(const CommandOptions& opt, const json& doc) {
  Scenario<D> s = scenario_from_json<D>(doc);
  if (opt.rate) {
    if (!(*opt.rate > 0.0)) throw ConfigError("--rate", "must be positive");
    s.rate = *opt.rate;
  }
  if (opt.duration) {
    if (!(*opt.duration > 0.0)) throw ConfigError("--duration", "must be positive");
    s.duration = *opt.duration;
  }
  return s;
}

inline double threshold_of(const CommandOptions& opt) {
  const double th = opt.threshold.value_or(kDefaultThreshold);
  if (!(th > 0.0)) throw ConfigError("--threshold", "must be positive");
  return th;
}

template <std::size_t D>
DiagramConfig diagram_config(const CommandOptions& opt, const Viewport<D>& vp) {
  double r_half = vp.half_extent(0);
  if (opt.theta_deg) {
    if (!(*opt.theta_deg > 0.0 && *opt.theta_deg < 180.0)) throw ConfigError("--theta", "must lie in (0, 180)");
    r_half = std::tan(deg_to_rad(*opt.theta_deg) / 2.0);
  }
  DiagramConfig cfg = DiagramConfig::for_half_extent(r_half);
  if (opt.alpha_iso) {
    if (!(*opt.alpha_iso > 0.0)) throw ConfigError("--alpha-iso", "must be positive");
    cfg.alpha_iso = *opt.alpha_iso;
  }
  return cfg;
}

template <std::size_t D>
std::vector<HPoint<D>> sampled_targets(const TargetSignal<D>& signal, const Trajectory<D>& traj) {
  std::vector<HPoint<D>> out;
  for (std::size_t i = 0; i < traj.size(); ++i) out.push_back(signal.at_sample(i, traj.period()));
  return out;
}

}  // namespace cmd_detail

/// Metrics summary of a trajectory: RMS optical flow, discontinuities, and
/// the largest per-sample hyperbolic displacement.
template <std::size_t D>
json trajectory_metrics(const Trajectory<D>& traj, const DiagramConfig& cfg, double threshold) {
  double sum = 0.0, mx = 0.0, mn = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double f = rms_flow(traj, i, cfg);
    sum += f;
    mx = i == 0 ? f : std::max(mx, f);
    mn = i == 0 ? f : std::min(mn, f);
  }
  double max_step = 0.0;
  for (std::size_t i = 1; i < traj.size(); ++i) max_step = std::max(max_step, dist(traj.point(i - 1), traj.point(i)));

  json disc = json::array();
  if (traj.size() >= 3) {
    for (const auto& d : discontinuity_scan(traj, threshold)) {
      disc.push_back(json{{"t", d.t}, {"index", d.index}, {"jump", d.jump}, {"ratio", d.ratio}});
    }
  }
  return json{{"samples", traj.size()},
              {"period", traj.period()},
              {"rms_flow", json{{"mean", traj.empty() ? 0.0 : sum / static_cast<double>(traj.size())},
                                {"min", mn},
                                {"max", mx}}},
              {"max_step", max_step},
              {"threshold", threshold},
              {"discontinuity_count", disc.size()},
              {"discontinuities", disc}};
}

template <std::size_t D>
void run_command_typed(const CommandOptions& opt, const json& doc, std::ostream& log) {
  const Scenario<D> sc = cmd_detail::load_scenario<D>(opt, doc);
  const TechniqueSpec spec = opt.filter.empty()
                                 ? named_technique("clipped-cascaded")
                                 : technique_from_json(parse_json_text(read_text_file(opt.filter), opt.filter),
                                                       sc.period());
  if (const auto* f = std::get_if<FilterSpec>(&spec)) {
    for (const auto& w : FilterConfig{f->stages, sc.period()}.warnings()) log << "warning: " << w << "\n";
  }
  const auto start = std::chrono::steady_clock::now();
  double max_clipped = 0.0;
  const Trajectory<D> traj = run_technique(spec, sc.signal, sc.period(), sc.duration, &max_clipped);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string csv = opt.out + ".csv";
  write_text_file(csv, trajectory_to_csv(traj));
  json report = trajectory_metrics(traj, cmd_detail::diagram_config(opt, sc.viewport), cmd_detail::threshold_of(opt));
  json doc_out{{"scenario", sc.name}, {"technique", to_json(spec)}, {"trajectory", csv}};
  doc_out["max_clipped_step"] = std::holds_alternative<FilterSpec>(spec) ? json(max_clipped) : json(nullptr);
  for (const auto& [k, v] : report.items()) doc_out[k] = v;
  write_text_file(opt.out + ".report.json", doc_out.dump(2) + "\n");
  log << "wrote " << csv << " (" << traj.size() << " samples) in " << seconds << " s\n";
}

/// `run`: one technique over one scenario; writes <out>.csv and
/// <out>.report.json.
inline void cmd_run(const CommandOptions& opt, std::ostream& log) {
  if (opt.scenario.empty()) throw ConfigError("--scenario", "required");
  if (opt.out.empty()) throw ConfigError("--out", "required");
  const json doc = parse_json_text(read_text_file(opt.scenario), opt.scenario);
  if (scenario_pan_dims(doc) == 1) run_command_typed<1>(opt, doc, log);
  else run_command_typed<2>(opt, doc, log);
}

template <std::size_t D>
void compare_command_typed(const CommandOptions& opt, const json& doc, std::ostream& log) {
  const Scenario<D> sc = cmd_detail::load_scenario<D>(opt, doc);
  const double threshold = cmd_detail::threshold_of(opt);
  const DiagramConfig dcfg = cmd_detail::diagram_config(opt, sc.viewport);
  const auto& names = opt.techniques.empty() ? comparison_techniques() : opt.techniques;
  std::vector<TechniqueSpec> specs;
  for (const auto& n : names) specs.push_back(named_technique(n));

  json entries = json::array();
  for (std::size_t k = 0; k < names.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    double max_clipped = 0.0;
    const Trajectory<D> traj = run_technique(specs[k], sc.signal, sc.period(), sc.duration, &max_clipped);
    const std::string base = opt.out + "_" + names[k];
    write_text_file(base + ".csv", trajectory_to_csv(traj));
    write_text_file(base + ".svg", render_worldscreen_svg<D>(traj, dcfg, cmd_detail::sampled_targets(sc.signal, traj)));
    json e{{"name", names[k]}, {"technique", to_json(specs[k])}, {"trajectory", base + ".csv"}, {"svg", base + ".svg"}};
    e["max_clipped_step"] = std::holds_alternative<FilterSpec>(specs[k]) ? json(max_clipped) : json(nullptr);
    const json m = trajectory_metrics(traj, dcfg, threshold);
    for (const auto& [key, v] : m.items()) e[key] = v;
    entries.push_back(e);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    log << names[k] << ": " << e["discontinuity_count"].get<std::size_t>() << " discontinuities, " << seconds
        << " s\n";
  }
  json report{{"scenario", sc.name}, {"threshold", threshold}, {"techniques", entries}};
  write_text_file(opt.out + "_compare.json", report.dump(2) + "\n");
}

/// `compare`: runs several techniques on one scenario; writes one
/// world/screen SVG and CSV per technique plus <out>_compare.json.
inline void cmd_compare(const CommandOptions& opt, std::ostream& log) {
  if (opt.scenario.empty()) throw ConfigError("--scenario", "required");
  if (opt.out.empty()) throw ConfigError("--out", "required");
  const json doc = parse_json_text(read_text_file(opt.scenario), opt.scenario);
  if (scenario_pan_dims(doc) == 1) compare_command_typed<1>(opt, doc, log);
  else compare_command_typed<2>(opt, doc, log);
}

template <std::size_t D>
void diagram_command_typed(const CommandOptions& opt, const std::string& text) {
  const Trajectory<D> traj = trajectory_from_csv<D>(text);
  std::optional<std::vector<HPoint<D>>> overlay;
  Viewport<D> vp;
  if (!opt.scenario.empty()) {
    const Scenario<D> sc = scenario_from_json<D>(parse_json_text(read_text_file(opt.scenario), opt.scenario));
    vp = sc.viewport;
    overlay = cmd_detail::sampled_targets(sc.signal, traj);
  }
  write_text_file(opt.out, render_worldscreen_svg<D>(traj, cmd_detail::diagram_config(opt, vp), overlay));
}

/// `diagram`: renders a trajectory CSV as a world/screen SVG.
inline void cmd_diagram(const CommandOptions& opt, std::ostream& log) {
  if (opt.input.empty()) throw ConfigError("trajectory", "input CSV required");
  if (opt.out.empty()) throw ConfigError("--out", "required");
  const std::string text = read_text_file(opt.input);
  if (csv_pan_dims(text) == 1) diagram_command_typed<1>(opt, text);
  else diagram_command_typed<2>(opt, text);
  log << "wrote " << opt.out << "\n";
}

/// `metrics`: JSON metrics for a trajectory CSV (to --out or the log).
inline void cmd_metrics(const CommandOptions& opt, std::ostream& log) {
  if (opt.input.empty()) throw ConfigError("trajectory", "input CSV required");
  const std::string text = read_text_file(opt.input);
  json m;
  if (csv_pan_dims(text) == 1) {
    m = trajectory_metrics(trajectory_from_csv<1>(text), cmd_detail::diagram_config(opt, Viewport<1>()),
                           cmd_detail::threshold_of(opt));
  } else {
    m = trajectory_metrics(trajectory_from_csv<2>(text), cmd_detail::diagram_config(opt, Viewport<2>()),
                           cmd_detail::threshold_of(opt));
  }
  if (opt.out.empty()) log << m.dump(2) << "\n";
  else write_text_file(opt.out, m.dump(2) + "\n");
}

// ---- golden vectors ----

namespace golden {

template <std::size_t D>
json vec_json(const HVector<D>& X) {
  return json{{"base", to_json(X.base())}, {"U", X.U()}, {"V", X.V()}};
}

template <std::size_t D>
void geometry_cases(json& out, const HPoint<D>& x, const HPoint<D>& y) {
  const double d = dist(x, y);
  out.push_back(json{{"op", "dist"}, {"x", to_json(x)}, {"y", to_json(y)}, {"result", d}});
  out.push_back(json{{"op", "gerp"}, {"x", to_json(x)}, {"y", to_json(y)}, {"alpha", 0.5},
                     {"result", to_json(gerp(x, y, 0.5))}});
  if (d > 0.0) {
    out.push_back(json{{"op", "geo"}, {"x", to_json(x)}, {"y", to_json(y)}, {"s", 0.25 * d},
                       {"result", to_json(geo(x, y, 0.25 * d))}});
  }
  const HVector<D> L = log_map(x, y);
  out.push_back(json{{"op", "log_map"}, {"x", to_json(x)}, {"y", to_json(y)}, {"result", vec_json(L)}});
  const HVector<D> X = 0.7 * L;
  out.push_back(json{{"op", "exp_map"}, {"vector", vec_json(X)}, {"result", to_json(exp_map(X))}});
  const HVector<D> W(x, [] {
    Footprint<D> f{};
    f.fill(0.3);
    return f;
  }(), -0.2);
  out.push_back(json{{"op", "transport"}, {"vector", vec_json(W)}, {"to", to_json(y)},
                     {"result", vec_json(transport(W, y))}});
}

template <std::size_t D>
json trace(const std::string& name, const FilterConfig& cfg, const HPoint<D>& y0, const HPoint<D>& target,
           std::size_t steps) {
  GeodesicFilter<D> f(cfg, y0);
  json outputs = json::array();
  for (std::size_t i = 0; i < steps; ++i) outputs.push_back(to_json(f.step(target)));
  json stages = json::array();
  for (const auto& s : cfg.stages) stages.push_back(to_json(s));
  return json{{"name", name}, {"period", cfg.period}, {"stages", stages}, {"y0", to_json(y0)},
              {"target", to_json(target)}, {"steps", steps}, {"outputs", outputs}};
}

}  // namespace golden

/// Canonical input/output tuples for the geometry kernel and 120-step
/// filter step responses at the default parameters.
inline json golden_vectors(std::uint64_t seed) {
  json geometry = json::array();
  const HPoint2 o({0.0}, 1.0);
  golden::geometry_cases(geometry, o, HPoint2({2.0}, 1.0));
  golden::geometry_cases(geometry, o, HPoint2({0.0}, std::exp(1.0)));
  golden::geometry_cases(geometry, HPoint2({-3.0}, 0.5), HPoint2({4.0}, 8.0));
  golden::geometry_cases(geometry, HPoint3({0.0, 0.0}, 1.0), HPoint3({3.0, -1.0}, 0.25));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pan(-10.0, 10.0);
  std::uniform_real_distribution<double> logv(std::log(1e-2), std::log(1e2));
  for (int k = 0; k < 8; ++k) {
    const double a = pan(rng), av = logv(rng), b = pan(rng), bv = logv(rng);
    golden::geometry_cases(geometry, HPoint2({a}, std::exp(av)), HPoint2({b}, std::exp(bv)));
  }

  json traces = json::array();
  const HPoint2 target({3.0}, 2.0);
  traces.push_back(golden::trace<1>("one-pole", FilterConfig{{OnePole{6.0}}, 1.0 / 60.0}, o, target, 120));
  traces.push_back(golden::trace<1>("clipped-one-pole", FilterConfig{{ClippedOnePole{6.0, 1.0}}, 1.0 / 60.0}, o,
                                    target, 120));
  traces.push_back(golden::trace<1>("cascaded", FilterConfig::cascade(4, 6.0), o, target, 120));
  traces.push_back(golden::trace<1>("clipped-cascaded", FilterConfig::clipped_cascade(), o, target, 120));
  traces.push_back(golden::trace<1>("two-pole", FilterConfig{{TwoPole{6.0, 1.0}}, 1.0 / 60.0}, o, target, 120));
  traces.push_back(golden::trace<1>("clipped-two-pole", FilterConfig::clipped_two_pole(1.0, 6.0, 6.0, 1.0), o,
                                    target, 120));
  traces.push_back(golden::trace<2>("clipped-cascaded-2d", FilterConfig::clipped_cascade(), HPoint3({0.0, 0.0}, 1.0),
                                    HPoint3({5.0, -2.0}, 0.5), 120));

  return json{{"schema", "hypzoom-golden-vectors"},
              {"schema_version", kGoldenSchemaVersion},
              {"seed", seed},
              {"geometry", geometry},
              {"traces", traces}};
}

/// `vectors`: writes the golden vector file.
inline void cmd_vectors(const CommandOptions& opt, std::ostream& log) {
  if (opt.out.empty()) throw ConfigError("--out", "required");
  write_text_file(opt.out, golden_vectors(opt.seed).dump(1) + "\n");
  log << "wrote " << opt.out << "\n";
}

}  // namespace hypzoom
