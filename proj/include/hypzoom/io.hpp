#pragma once

// File formats: scenarios and technique configs as JSON, trajectories as CSV
// with 17 significant digits (lossless for doubles).

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hypzoom/baselines.hpp"
#include "hypzoom/filters.hpp"
#include "hypzoom/signal.hpp"
#include "hypzoom/trajectory.hpp"
#include "hypzoom/uw.hpp"

namespace hypzoom {

using json = nlohmann::ordered_json;

namespace io_detail {

inline const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

inline double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
  return x;
}

inline double number_at(const json& j, const std::string& key, const std::string& path) {
  return number(member(j, key, path), join(path, key));
}

inline double number_or(const json& j, const std::string& key, const std::string& path, double fallback) {
  if (!j.contains(key)) return fallback;
  return number(j.at(key), join(path, key));
}

template <std::size_t D>
Footprint<D> footprint(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != D) {
    throw ConfigError(path, "expected an array of " + std::to_string(D) + " number(s)");
  }
  Footprint<D> f{};
  for (std::size_t k = 0; k < D; ++k) f[k] = number(j[k], path + "[" + std::to_string(k) + "]");
  return f;
}

}  // namespace io_detail

template <std::size_t D>
json to_json(const HPoint<D>& x) {
  return json{{"u", x.u()}, {"v", x.v()}};
}

template <std::size_t D>
HPoint<D> point_from_json(const json& j, const std::string& path) {
  using namespace io_detail;
  const Footprint<D> u = footprint<D>(member(j, "u", path), join(path, "u"));
  const double v = number_at(j, "v", path);
  if (!(v > 0.0)) throw ConfigError(join(path, "v"), "altitude must be positive");
  return HPoint<D>(u, v);
}

template <std::size_t D>
struct Scenario {
  std::string name;
  Viewport<D> viewport;
  double duration = 1.0;
  double rate = 60.0;
  TargetSignal<D> signal = TargetSignal<D>::constant(HPoint<D>(Footprint<D>{}, 1.0));

  double period() const { return 1.0 / rate; }
};

inline json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(what, std::string("invalid JSON: ") + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

/// Footprint dimension (1 or 2) declared by a scenario document.
inline std::size_t scenario_pan_dims(const json& j) {
  const double n = io_detail::number_at(j, "dimension", "");
  if (n != 2.0 && n != 3.0) throw ConfigError("dimension", "must be 2 (1-D panning) or 3 (2-D panning)");
  return static_cast<std::size_t>(n) - 1;
}

template <std::size_t D>
Scenario<D> scenario_from_json(const json& j) {
  using namespace io_detail;
  if (scenario_pan_dims(j) != D) throw ConfigError("dimension", "does not match the requested dimension");
  Scenario<D> s;
  s.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "scenario";

  if (j.contains("viewport")) {
    const json& vp = j["viewport"];
    const json& th = member(vp, "theta_deg", "viewport");
    std::array<double, D> angles{};
    if (th.is_number()) {
      angles.fill(deg_to_rad(number(th, "viewport.theta_deg")));
    } else {
      const auto deg = footprint<D>(th, "viewport.theta_deg");
      for (std::size_t k = 0; k < D; ++k) angles[k] = deg_to_rad(deg[k]);
    }
    for (double a : angles) {
      if (!(a > 0.0 && a < std::numbers::pi)) throw ConfigError("viewport.theta_deg", "must lie in (0, 180)");
    }
    s.viewport = Viewport<D>(angles);
  }

  s.duration = number_at(j, "duration", "");
  if (!(s.duration > 0.0)) throw ConfigError("duration", "must be positive");
  s.rate = number_at(j, "rate", "");
  if (!(s.rate > 0.0)) throw ConfigError("rate", "must be positive");

  const json& evs = member(j, "events", "");
  if (!evs.is_array() || evs.empty()) throw ConfigError("events", "expected a non-empty array");
  std::vector<StepEvent<D>> events;
  for (std::size_t i = 0; i < evs.size(); ++i) {
    const std::string at = "events[" + std::to_string(i) + "]";
    const json& e = evs[i];
    const double t = number_at(e, "t", at);
    if (t < 0.0 || t > s.duration) throw ConfigError(at + ".t", "must lie within [0, duration]");
    if (i == 0 && t != 0.0) throw ConfigError(at + ".t", "the first event must be at t = 0");
    if (i > 0 && !(t > events.back().t)) throw ConfigError(at + ".t", "event times must be strictly increasing");
    if (e.contains("camera")) {
      events.push_back({t, point_from_json<D>(e["camera"], at + ".camera")});
    } else if (e.contains("span")) {
      const json& sp = e["span"];
      const auto lo = footprint<D>(member(sp, "lo", at + ".span"), at + ".span.lo");
      const auto hi = footprint<D>(member(sp, "hi", at + ".span"), at + ".span.hi");
      for (std::size_t k = 0; k < D; ++k) {
        if (!(lo[k] < hi[k])) throw ConfigError(at + ".span", "lo must be below hi on every axis");
      }
      events.push_back({t, camera_from_span(lo, hi, s.viewport)});
    } else {
      throw ConfigError(at, "needs either \"camera\" or \"span\"");
    }
  }
  s.signal = TargetSignal<D>::steps(std::move(events));
  return s;
}

struct ConstantSpeedSpec {
  double c = 1.0;
};

struct EasingSpec {
  double duration = 1.5;
};

struct FilterSpec {
  std::vector<StageConfig> stages;
};

/// What produces a camera path from a target signal.
using TechniqueSpec = std::variant<ConstantSpeedSpec, EasingSpec, FilterSpec>;

inline StageConfig stage_from_json(const json& j, const std::string& at) {
  using namespace io_detail;
  const json& type = member(j, "type", at);
  if (!type.is_string()) throw ConfigError(at + ".type", "expected a string");
  const std::string t = type.get<std::string>();
  if (t == "one-pole") return OnePole{number_at(j, "alpha", at)};
  if (t == "clipped-one-pole") return ClippedOnePole{number_at(j, "alpha", at), number_at(j, "c", at)};
  if (t == "two-pole") return TwoPole{number_at(j, "omega0", at), number_at(j, "zeta", at)};
  throw ConfigError(at + ".type", "unknown stage type \"" + t + "\" (one-pole, clipped-one-pole, two-pole)");
}

inline json to_json(const StageConfig& s) {
  return std::visit(
      [](const auto& st) -> json {
        using S = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<S, OnePole>) return json{{"type", "one-pole"}, {"alpha", st.alpha}};
        else if constexpr (std::is_same_v<S, ClippedOnePole>)
          return json{{"type", "clipped-one-pole"}, {"alpha", st.alpha}, {"c", st.c}};
        else return json{{"type", "two-pole"}, {"omega0", st.omega0}, {"zeta", st.zeta}};
      },
      s);
}

inline json to_json(const TechniqueSpec& spec) {
  return std::visit(
      [](const auto& t) -> json {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ConstantSpeedSpec>) return json{{"technique", "constant-speed"}, {"c", t.c}};
        else if constexpr (std::is_same_v<T, EasingSpec>) return json{{"technique", "easing"}, {"duration", t.duration}};
        else {
          json st = json::array();
          for (const auto& s : t.stages) st.push_back(to_json(s));
          return json{{"technique", "filter"}, {"stages", st}};
        }
      },
      spec);
}

/// Parses a technique document. Filters are checked against `period`.
inline TechniqueSpec technique_from_json(const json& j, double period) {
  using namespace io_detail;
  if (!j.is_object()) throw ConfigError("filter", "expected a JSON object");
  std::string kind = "filter";
  if (j.contains("technique")) {
    if (!j["technique"].is_string()) throw ConfigError("technique", "expected a string");
    kind = j["technique"].get<std::string>();
  }
  if (kind == "constant-speed") {
    const double c = number_at(j, "c", "");
    if (!(c > 0.0)) throw ConfigError("c", "must be positive");
    return ConstantSpeedSpec{c};
  }
  if (kind == "easing") {
    const double d = number_at(j, "duration", "");
    if (!(d > 0.0)) throw ConfigError("duration", "must be positive");
    return EasingSpec{d};
  }
  if (kind != "filter") {
    throw ConfigError("technique", "unknown technique \"" + kind + "\" (filter, constant-speed, easing)");
  }
  const json& st = member(j, "stages", "");
  if (!st.is_array()) throw ConfigError("stages", "expected an array");
  FilterSpec f;
  for (std::size_t k = 0; k < st.size(); ++k) f.stages.push_back(stage_from_json(st[k], "stages[" + std::to_string(k) + "]"));
  FilterConfig{f.stages, period}.validate();
  return f;
}

/// Runs any technique over a scenario signal at the given period.
template <std::size_t D>
Trajectory<D> run_technique(const TechniqueSpec& spec, const TargetSignal<D>& signal, double period, double duration,
                            double* max_clipped_step = nullptr) {
  if (max_clipped_step) *max_clipped_step = 0.0;
  return std::visit(
      [&](const auto& t) -> Trajectory<D> {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ConstantSpeedSpec>) return run_constant_speed(signal, t.c, period, duration);
        else if constexpr (std::is_same_v<T, EasingSpec>)
          return run_easing(signal, EasingConfig{t.duration}, period, duration);
        else return run_filter<D>(signal, FilterConfig{t.stages, period}, duration, std::nullopt, max_clipped_step);
      },
      spec);
}

// ---- trajectory CSV ----

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <std::size_t D>
std::string trajectory_to_csv(const Trajectory<D>& traj) {
  std::string out = D == 1 ? "t,u1,v\n" : "t,u1,u2,v\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out += fmt17(traj.time(i));
    for (std::size_t k = 0; k < D; ++k) out += "," + fmt17(traj[i].u[k]);
    out += "," + fmt17(traj[i].v) + "\n";
  }
  return out;
}

/// Footprint dimension of a trajectory CSV, from its header.
inline std::size_t csv_pan_dims(const std::string& text) {
  const std::string header = text.substr(0, text.find('\n'));
  auto strip = [](std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
  };
  const std::string h = strip(header);
  if (h == "t,u1,v") return 1;
  if (h == "t,u1,u2,v") return 2;
  throw ConfigError("line 1", "expected header t,u1,v or t,u1,u2,v");
}

template <std::size_t D>
Trajectory<D> trajectory_from_csv(const std::string& text) {
  if (csv_pan_dims(text) != D) throw ConfigError("line 1", "header does not match the requested dimension");
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::array<double, D + 2>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string at = "line " + std::to_string(lineno);
    std::array<double, D + 2> row{};
    std::size_t field = 0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (true) {
      if (field >= row.size()) throw ConfigError(at, "too many fields");
      const char* comma = std::find(p, end, ',');
      double x = 0.0;
      auto res = std::from_chars(p, comma, x);
      if (res.ec != std::errc{} || res.ptr != comma || !std::isfinite(x)) {
        throw ConfigError(at, "malformed number in field " + std::to_string(field + 1));
      }
      row[field++] = x;
      if (comma == end) break;
      p = comma + 1;
    }
    if (field != row.size()) throw ConfigError(at, "expected " + std::to_string(row.size()) + " fields");
    if (!(row[D + 1] > 0.0)) throw ConfigError(at, "altitude must be positive");
    rows.push_back(row);
  }
  if (rows.size() < 2) throw ConfigError("trajectory", "need at least two rows");
  if (rows[0][0] != 0.0) throw ConfigError("line 2", "trajectory must start at t = 0");
  const double period = rows[1][0];
  if (!(period > 0.0)) throw ConfigError("line 3", "time must increase");
  Trajectory<D> traj(period);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double expected = static_cast<double>(i) * period;
    if (std::abs(rows[i][0] - expected) > 1e-9 * std::max(1.0, expected)) {
      throw ConfigError("line " + std::to_string(i + 2), "samples must be uniformly spaced");
    }
    Footprint<D> u{};
    for (std::size_t k = 0; k < D; ++k) u[k] = rows[i][k + 1];
    traj.push_back(HPoint<D>(u, rows[i][D + 1]));
  }
  return traj;
}

}  // namespace hypzoom
