// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed here.
//
// Usage: acceptance [--expect-fail ID]...
// IDs passed with --expect-fail still print FAIL but do not fail the run;
// if such a criterion passes the run fails, so the list cannot go stale.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hypzoom/commands.hpp"
#include "support/oracles.hpp"

using namespace hypzoom;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double scale_of(const HPoint2& p) { return std::hypot(p.u()[0], p.v()); }

double coord_err(const HPoint2& a, const HPoint2& b) { return std::hypot(a.u()[0] - b.u()[0], a.v() - b.v()); }

// ---- criteria ----

Outcome distance_oracle() {
  constexpr int kPairs = 100000;
  constexpr double kTol = 1e-9;
  constexpr double kBudget = 5.0;
  oracle::PointSampler s(101, 1e-3, 1e3, 100.0);
  std::vector<HPoint2> xs, ys;
  xs.reserve(kPairs);
  ys.reserve(kPairs);
  for (int i = 0; i < kPairs; ++i) {
    xs.emplace_back(Footprint<1>{s.u()}, s.v());
    ys.emplace_back(Footprint<1>{s.u()}, s.v());
  }
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> d(kPairs);
  for (int i = 0; i < kPairs; ++i) d[i] = dist(xs[i], ys[i]);
  const double elapsed = seconds_since(t0);
  double worst = 0.0;
  for (int i = 0; i < kPairs; ++i) {
    const double ref = oracle::dist<1>(xs[i].u(), xs[i].v(), ys[i].u(), ys[i].v());
    worst = std::max(worst, std::abs(d[i] - ref) / (1.0 + ref));
  }
  return {worst <= kTol && elapsed < kBudget,
          "max |err|/(1+d) = " + fmt("%.3g", worst) + ", time " + fmt("%.3f", elapsed) + " s"};
}

Outcome worked_values() {
  const HPoint2 o({0.0}, 1.0), y({2.0}, 1.0);
  const double d = dist(o, y);
  const HPoint2 m = geo(o, y, d / 2.0);
  const double de = dist(o, HPoint2({0.0}, std::numbers::e));
  const bool ok = std::abs(d - 1.7627471740) <= 1e-9 && std::abs(d - std::acosh(3.0)) <= 1e-9 &&
                  std::abs(m.u()[0] - 1.0) <= 1e-9 && std::abs(m.v() - std::sqrt(2.0)) <= 1e-9 &&
                  std::abs(de - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon();
  return {ok, "dist = " + fmt("%.12f", d) + ", midpoint v = " + fmt("%.12f", m.v()) + ", vertical |d-1| = " +
                  fmt("%.2g", std::abs(de - 1.0))};
}

Outcome inverse_identity() {
  constexpr int kCases = 10000;
  constexpr double kTol = 1e-12;
  oracle::PointSampler s(202, 1e-2, 1e2, 10.0);
  double exp_log = 0.0, exp_gerp = 0.0, iso = 0.0;
  for (int i = 0; i < kCases; ++i) {
    const HPoint2 x({s.u()}, s.v()), y({s.u()}, s.v());
    const double scale = std::max(scale_of(x), scale_of(y));
    const HVector2 L = log_map(x, y);
    exp_log = std::max(exp_log, coord_err(exp_map(L), y) / scale);
    const double t = s.unit();
    exp_gerp = std::max(exp_gerp, coord_err(exp_map(t * L), gerp(x, y, t)) / scale);
    const HVector2 X(x, {x.v() * (2.0 * s.unit() - 1.0)}, x.v() * (2.0 * s.unit() - 1.0));
    iso = std::max(iso, std::abs(hnorm(transport(X, y)) - hnorm(X)) / hnorm(X));
  }
  return {exp_log <= kTol && exp_gerp <= kTol && iso <= kTol,
          "Exp(Log) " + fmt("%.2g", exp_log) + ", Exp(tLog) vs gerp " + fmt("%.2g", exp_gerp) + ", transport " +
              fmt("%.2g", iso) + " (relative)"};
}

Outcome geodesic_equation() {
  constexpr double h = 1e-5;
  constexpr double kTol = 1e-3;
  oracle::PointSampler s(303, 0.1, 10.0, 5.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const HPoint2 x({s.u()}, s.v()), y({s.u()}, s.v());
    const double t = 0.05 + 0.9 * s.unit();
    const HPoint2 a = gerp(x, y, t - h), p = gerp(x, y, t), b = gerp(x, y, t + h);
    const Tangent<1> vel{{(b.u()[0] - a.u()[0]) / (2 * h)}, (b.v() - a.v()) / (2 * h)};
    const Tangent<1> acc{{(b.u()[0] - 2 * p.u()[0] + a.u()[0]) / (h * h)}, (b.v() - 2 * p.v() + a.v()) / (h * h)};
    const HVector2 X(p, vel);
    const double ratio = hnorm(covariant_derivative(p, vel, X, acc)) / hnorm(X);
    worst = std::max(worst, ratio);
  }
  return {worst <= kTol, "max |D/dt x'| / |x'| = " + fmt("%.3g", worst)};
}

Outcome uw_equivalence() {
  const double th = theta_from_rho(std::sqrt(2.0));
  double worst = 0.0;
  for (double v : {1e-3, 0.5, 1.0, 3.0, 1e3}) worst = std::max(worst, std::abs(v_to_w(v, 1.0) - v));
  return {std::abs(th - std::numbers::pi / 2.0) <= 1e-12 && worst == 0.0,
          "|theta(sqrt 2) - pi/2| = " + fmt("%.2g", std::abs(th - std::numbers::pi / 2.0)) +
              ", rho = 1 max |w - v| = " + fmt("%.2g", worst)};
}

Outcome one_pole_law() {
  constexpr double kTol = 1e-9;
  oracle::PointSampler s(404, 1e-2, 1e2, 10.0);
  double worst = 0.0;
  for (double b : {0.1, 0.5, 0.9}) {
    for (int c = 0; c < 20; ++c) {
      const HPoint2 x({s.u()}, s.v());
      const HPoint2 y0({s.u()}, s.v());
      const double d0 = dist(y0, x);
      HPoint2 y = y0;
      for (int i = 1; i <= 120; ++i) {
        y = one_pole_step(y, x, b);
        worst = std::max(worst, std::abs(dist(y, x) - std::pow(1.0 - b, i) * d0));
      }
    }
  }
  const OnePole first = std::get<OnePole>(FilterConfig::cascade(1, 6.0).stages[0]);
  const double b_default = first.alpha * FilterConfig{}.period;
  return {worst <= kTol && std::abs(b_default - 0.1) < 1e-15,
          "max |dist - (1-b)^i d0| = " + fmt("%.3g", worst) + ", default b = " + fmt("%.3f", b_default)};
}

Outcome stability_boundary() {
  const HPoint2 y0({0.0}, 1.0), x({3.0}, 2.0);
  // b = 1.5: overshoots each step, alternating sides, while the distance shrinks.
  HPoint2 y = y0;
  bool alternates = true, shrinks = true;
  double prev_side = -1.0, prev_d = dist(y, x);
  for (int i = 0; i < 40; ++i) {
    y = one_pole_step(y, x, 1.5);
    const double d = dist(y, x);
    const double side = dist(y, y0) > dist(x, y0) ? 1.0 : -1.0;
    alternates &= side * prev_side < 0.0;
    shrinks &= d < prev_d;
    prev_side = side;
    prev_d = d;
  }
  // b = 2.5: the distance grows on every step.
  y = y0;
  int increasing = 0, longest = 0;
  prev_d = dist(y, x);
  for (int i = 0; i < 12; ++i) {
    y = one_pole_step(y, x, 2.5);
    const double d = dist(y, x);
    increasing = d > prev_d ? increasing + 1 : 0;
    longest = std::max(longest, increasing);
    prev_d = d;
  }
  return {alternates && shrinks && longest >= 10,
          std::string("b=1.5 ") + (alternates && shrinks ? "alternating convergence" : "NOT convergent-alternating") +
              ", b=2.5 strictly increasing for " + std::to_string(longest) + " steps"};
}

Outcome scalar_reduction() {
  constexpr double kTol = 1e-6;
  const double T = 1.0 / 60.0;
  const HPoint2 y0({0.5}, 2.0), target({0.5}, 0.01);
  const double q0 = std::log(y0.v()), qt = std::log(target.v());
  double worst = 0.0;
  for (std::size_t n : {1u, 2u, 4u}) {
    GeodesicFilter<1> f(FilterConfig::cascade(n, 6.0, T), y0);
    oracle::ScalarCascade ref(n, q0, 6.0 * T);
    for (int i = 0; i < 600; ++i) worst = std::max(worst, std::abs(std::log(f.step(target).v()) - ref.step(qt)));
  }
  bool overshoot_ok = true;
  std::string over;
  for (double zeta : {0.5, 1.0, 2.0}) {
    GeodesicFilter<1> f(FilterConfig{{TwoPole{6.0, zeta}}, T}, y0);
    oracle::ScalarTwoPole ref(q0, 6.0, zeta, T);
    double peak = 0.0;
    for (int i = 0; i < 600; ++i) {
      const double q = std::log(f.step(target).v());
      worst = std::max(worst, std::abs(q - ref.step(qt)));
      peak = std::max(peak, (q - qt) / (qt - q0));
    }
    overshoot_ok &= zeta < 1.0 ? peak > 1e-3 : peak <= 0.0;
    over += " z=" + fmt("%.1f", zeta) + ":" + fmt("%.3g", std::max(peak, 0.0));
  }
  return {worst <= kTol && overshoot_ok, "max |log v - q| = " + fmt("%.3g", worst) + ", overshoot" + over};
}

Outcome speed_limit() {
  const double T = 1.0 / 60.0;
  oracle::PointSampler s(505, 1e-3, 1e3, 1e5);
  double worst_excess = -1.0;
  for (double c : {0.0, 0.25, 1.0, 5.0}) {
    for (const FilterConfig& cfg : {FilterConfig{{ClippedOnePole{6.0, c}}, T}, FilterConfig::clipped_cascade(c),
                                    FilterConfig::clipped_two_pole(c, 6.0, 6.0, 1.0)}) {
      GeodesicFilter<1> f(cfg, HPoint2({0.0}, 1.0));
      HPoint2 x({0.0}, 1.0);
      for (int i = 0; i < 600; ++i) {
        // Far targets that jump every few frames, including altitude extremes.
        if (i % 7 == 0) x = HPoint2({s.u()}, s.v());
        f.step(x);
      }
      worst_excess = std::max(worst_excess, f.max_clipped_step() - T * c);
    }
  }
  return {worst_excess <= 1e-12, "max(step - T c) = " + fmt("%.3g", worst_excess)};
}

// Velocity jump of the tracked world point near each interruption instant.
std::vector<double> jumps_at(const Trajectory<1>& traj, const std::vector<double>& instants) {
  const auto j = velocity_jumps(traj);
  std::vector<double> out;
  for (double t : instants) {
    const std::size_t i = TargetSignal<1>::first_sample(t, traj.period());
    double m = 0.0;
    for (std::size_t k = i > 3 ? i - 3 : 0; k <= std::min(j.size() - 1, i + 3); ++k) m = std::max(m, j[k]);
    out.push_back(m);
  }
  return out;
}

Outcome smoothness() {
  const std::string path = std::string(HYPZOOM_SOURCE_DIR) + "/scenarios/interruption.json";
  const Scenario<1> sc = scenario_from_json<1>(parse_json_text(read_text_file(path), path));
  const auto& ev = sc.signal.events();
  // Events after the first move are interruptions.
  std::vector<double> instants;
  for (std::size_t k = 2; k < ev.size(); ++k) instants.push_back(ev[k].t);
  const double T = sc.period();
  const auto cs = run_technique(named_technique("constant-speed"), sc.signal, T, sc.duration);
  const auto cas = run_technique(named_technique("cascaded"), sc.signal, T, sc.duration);
  const auto ccas = run_technique(named_technique("clipped-cascaded"), sc.signal, T, sc.duration);
  const auto eas = run_technique(named_technique("easing"), sc.signal, T, sc.duration);
  const auto jc = jumps_at(cs, instants), jk = jumps_at(cas, instants), jq = jumps_at(ccas, instants);
  double worst = 0.0, worst_clipped = 0.0;
  for (std::size_t k = 0; k < instants.size(); ++k) {
    worst = std::max(worst, jk[k] / jc[k]);
    worst_clipped = std::max(worst_clipped, jq[k] / jc[k]);
  }
  bool easing_hit = false;
  for (const auto& d : discontinuity_scan(eas, kDefaultThreshold)) easing_hit |= std::abs(d.t - instants[0]) <= 2.0 * T;
  return {instants.size() == 2 && worst < 0.02 && easing_hit,
          "cascade/constant-speed jump ratio " + fmt("%.4f", worst) + " (clipped cascade " +
              fmt("%.4f", worst_clipped) + "), easing jump at t=" + fmt("%.2f", instants[0]) + ": " +
              (easing_hit ? "detected" : "missing")};
}

Outcome ct_dt_convergence() {
  const auto sig = TargetSignal<1>::steps({{0.0, HPoint2({0.0}, 1.0)},
                                           {0.5, HPoint2({10.0}, 2.0)},
                                           {1.0, HPoint2({-5.0}, 1.0)},
                                           {2.0, HPoint2({0.0}, 0.1)}});
  auto deviation = [&](double T) {
    const auto dt = run_filter(sig, FilterConfig{{OnePole{6.0}}, T}, 3.0);
    const auto ct = integrate_ct(ContinuousParams{}, sig, T / 100.0, 3.0, 100);
    double m = 0.0;
    for (std::size_t i = 0; i < std::min(dt.size(), ct.size()); ++i) m = std::max(m, dist(dt.point(i), ct.point(i)));
    return m;
  };
  const double e30 = deviation(1.0 / 30), e60 = deviation(1.0 / 60), e120 = deviation(1.0 / 120);
  const double r1 = e30 / e60, r2 = e60 / e120;
  return {std::abs(r1 - 2.0) <= 0.4 && std::abs(r2 - 2.0) <= 0.4,
          "deviation " + fmt("%.4g", e30) + " / " + fmt("%.4g", e60) + " / " + fmt("%.4g", e120) + ", ratios " +
              fmt("%.3f", r1) + ", " + fmt("%.3f", r2)};
}

Outcome metrics_pan_zoom() {
  Trajectory<1> pan(0.1), zoom(0.1);
  pan.push_back(HPoint2({0.0}, 1.0), CameraRate<1>{{1.0}, 0.0});
  zoom.push_back(HPoint2({0.0}, 1.5), CameraRate<1>{{0.0}, 1.5});  // v = e^t through v = 1.5
  const DiagramConfig cfg = DiagramConfig::for_half_extent(std::tan(std::numbers::pi / 4.0));
  const double a = rms_flow(pan, 0, cfg), b = rms_flow(zoom, 0, cfg);
  return {std::abs(a - 1.0) <= 1e-9 && std::abs(b - 1.0 / std::sqrt(3.0)) <= 1e-9,
          "unit pan " + fmt("%.12f", a) + ", exponential zoom " + fmt("%.12f", b)};
}

// Unit-speed traversal of geodesics at theta = 90 degrees, sampled with
// analytic-quality derivatives; spread = max/min - 1 of rms_flow along each.
Outcome metrics_geodesic_constancy() {
  const DiagramConfig cfg = DiagramConfig::for_half_extent(std::tan(std::numbers::pi / 4.0));
  auto spread = [&](const HPoint2& x, const HPoint2& y) {
    const double S = dist(x, y), h = 1e-6;
    double lo = INFINITY, hi = 0.0;
    for (int k = 0; k <= 100; ++k) {
      const double s = S * k / 100.0;
      const HPoint2 a = geo(x, y, s - h), p = geo(x, y, s), b = geo(x, y, s + h);
      Trajectory<1> t(0.1);
      t.push_back(p, CameraRate<1>{{(b.u()[0] - a.u()[0]) / (2 * h)}, (b.v() - a.v()) / (2 * h)});
      const double f = rms_flow(t, 0, cfg);
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    return hi / lo - 1.0;
  };
  const double zoom = spread(HPoint2({0.0}, 1.0), HPoint2({0.0}, 20.0));
  const double mixed = spread(HPoint2({0.0}, 1.0), HPoint2({6.0}, 1.0));
  return {zoom <= 0.05 && mixed <= 0.05,
          "spread pure zoom " + fmt("%.3g", zoom) + ", zoom-pan-zoom " + fmt("%.3f", mixed) +
              " (flow^2 = a^2 + b^2/3 vs speed^2 = a^2 + b^2 at this angle)"};
}

Outcome pathline_algorithm() {
  const std::string path = std::string(HYPZOOM_SOURCE_DIR) + "/scenarios/interruption.json";
  const Scenario<1> sc = scenario_from_json<1>(parse_json_text(read_text_file(path), path));
  std::size_t checked = 0, bad = 0;
  bool deterministic = true;
  for (const auto& name : comparison_techniques()) {
    const auto traj = run_technique(named_technique(name), sc.signal, sc.period(), sc.duration);
    for (double alpha : {0.05, 0.1, 0.25}) {
      DiagramConfig cfg;
      cfg.alpha_iso = alpha;
      const auto lines = pathlines(traj, cfg);
      for (const auto& l : lines) {
        for (const auto& vx : l.vertices) {
          const auto d = traj.derivative(vx.index);
          ++checked;
          if (!in_contour_set(l.p, grad_mag(traj[vx.index].v, d.V, d.U[0], vx.r), alpha)) ++bad;
        }
      }
      deterministic &= render_worldscreen_svg(traj, cfg) == render_worldscreen_svg(traj, cfg);
    }
  }
  Trajectory<1> still(1.0 / 60);
  for (int i = 0; i < 10; ++i) still.push_back(HPoint2({0.0}, 1.0));
  DiagramConfig cfg;
  cfg.alpha_iso = 0.25;
  std::set<double> ps;
  bool flat = true;
  for (const auto& l : pathlines(still, cfg)) {
    ps.insert(l.p);
    for (const auto& vx : l.vertices) flat &= vx.r == l.p;
  }
  const bool multiples = ps == std::set<double>{-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0};
  return {bad == 0 && checked > 0 && multiples && flat && deterministic,
          std::to_string(checked - bad) + "/" + std::to_string(checked) + " vertices in C_alpha, static case " +
              (multiples && flat ? "exact" : "WRONG") + ", " + (deterministic ? "deterministic" : "NONDETERMINISTIC")};
}

Outcome end_to_end() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::current_path() / "acceptance_compare";
  fs::remove_all(dir);
  fs::create_directories(dir);
  CommandOptions opt;
  opt.scenario = std::string(HYPZOOM_SOURCE_DIR) + "/scenarios/interruption.json";
  opt.out = (dir / "cmp").string();
  std::ostringstream log;
  const auto t0 = std::chrono::steady_clock::now();
  cmd_compare(opt, log);
  const double elapsed = seconds_since(t0);
  std::size_t svgs = 0;
  for (const auto& e : fs::directory_iterator(dir)) svgs += e.path().extension() == ".svg";
  const json report = parse_json_text(read_text_file(opt.out + "_compare.json"), "report");
  std::map<std::string, long> counts;
  for (const auto& t : report["techniques"]) counts[t["name"].get<std::string>()] = t["discontinuity_count"].get<long>();
  const bool ok = svgs == 4 && counts["constant-speed"] >= 1 && counts["easing"] >= 1 && counts["cascaded"] == 0 &&
                  counts["clipped-cascaded"] == 0 && elapsed < 10.0;
  return {ok, std::to_string(svgs) + " SVGs, counts {constant-speed " + std::to_string(counts["constant-speed"]) +
                  ", easing " + std::to_string(counts["easing"]) + ", cascaded " + std::to_string(counts["cascaded"]) +
                  ", clipped-cascaded " + std::to_string(counts["clipped-cascaded"]) + "}, " + fmt("%.3f", elapsed) +
                  " s"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> expect_fail;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--expect-fail" && i + 1 < argc) expect_fail.insert(argv[++i]);
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"distance-oracle", distance_oracle},
      {"worked-values", worked_values},
      {"inverse-identity", inverse_identity},
      {"geodesic-equation", geodesic_equation},
      {"uw-equivalence", uw_equivalence},
      {"one-pole-law", one_pole_law},
      {"stability-boundary", stability_boundary},
      {"scalar-reduction", scalar_reduction},
      {"speed-limit", speed_limit},
      {"smoothness-at-interruptions", smoothness},
      {"ct-dt-convergence", ct_dt_convergence},
      {"metrics-pan-zoom", metrics_pan_zoom},
      {"metrics-geodesic-constancy", metrics_geodesic_constancy},
      {"pathline-algorithm", pathline_algorithm},
      {"end-to-end-compare", end_to_end},
  };

  int unexpected = 0;
  for (const auto& [id, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const bool xfail = expect_fail.count(id) > 0;
    std::string tag = o.pass ? "PASS" : "FAIL";
    if (xfail) tag += o.pass ? " (unexpected pass)" : " (expected)";
    std::printf("%-20s %-28s %s\n", tag.c_str(), id.c_str(), o.detail.c_str());
    if (o.pass == xfail) ++unexpected;
  }
  std::fflush(stdout);
  return unexpected == 0 ? 0 : 1;
}
