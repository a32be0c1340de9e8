#pragma once

// SVG 1.1 output for world/screen diagrams. Output depends only on the
// inputs; numbers are printed with a fixed format.

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hypzoom/diagrams.hpp"
#include "hypzoom/trajectory.hpp"

namespace hypzoom {

namespace svg_style {
inline constexpr int kMarginLeft = 60;
inline constexpr int kMarginRight = 20;
inline constexpr int kMarginTop = 24;
inline constexpr int kPanelGap = 36;
inline constexpr const char* kBoundsColor = "#1f5fa8";
inline constexpr const char* kCenterColor = "#1f5fa8";
inline constexpr const char* kTargetColor = "#000000";
inline constexpr const char* kPathlineColor = "#444444";
inline constexpr double kBoundsWidth = 1.5;
inline constexpr double kTargetWidth = 3.0;
inline constexpr double kPathlineWidth = 0.8;
}  // namespace svg_style

namespace detail {

inline std::string fmt2(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  // Avoid "-0.00".
  if (std::string(buf) == "-0.00") return "0.00";
  return buf;
}

struct PanelFrame {
  double x0, y0, w, h;
  double t_max;
  double lo, hi;  // data range on the vertical axis

  double px(double t) const { return x0 + (t_max > 0.0 ? t / t_max : 0.0) * w; }
  double py(double value) const {
    const double span = hi - lo;
    const double f = span > 0.0 ? (value - lo) / span : 0.5;
    return y0 + h - f * h;
  }
};

inline void frame(std::ostringstream& os, const PanelFrame& f, const std::string& label) {
  os << "  <rect class=\"panel\" x=\"" << fmt2(f.x0) << "\" y=\"" << fmt2(f.y0) << "\" width=\"" << fmt2(f.w)
     << "\" height=\"" << fmt2(f.h) << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  os << "  <text x=\"" << fmt2(f.x0) << "\" y=\"" << fmt2(f.y0 - 6) << "\" font-family=\"sans-serif\" font-size=\"12\">"
     << label << "</text>\n";
  os << "  <text x=\"" << fmt2(f.x0 - 6) << "\" y=\"" << fmt2(f.y0 + 10)
     << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << fmt2(f.hi) << "</text>\n";
  os << "  <text x=\"" << fmt2(f.x0 - 6) << "\" y=\"" << fmt2(f.y0 + f.h)
     << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << fmt2(f.lo) << "</text>\n";
}

template <class Xs, class Ys>
void polyline(std::ostringstream& os, const char* cls, const char* color, double width, const Xs& xs,
              const Ys& ys) {
  os << "  <polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
     << "\" points=\"";
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (j) os << ' ';
    os << fmt2(xs[j]) << ',' << fmt2(ys[j]);
  }
  os << "\"/>\n";
}

}  // namespace detail

/// Renders one (bounds, pathlines) panel pair per footprint axis, sharing the
/// time axis. `targets`, when given, holds the target camera at each sample
/// and is drawn as bold lines at the target's visible world span.
template <std::size_t D>
std::string render_worldscreen_svg(const Trajectory<D>& traj, const DiagramConfig& cfg,
                                   const std::optional<std::vector<HPoint<D>>>& targets = std::nullopt) {
  using namespace svg_style;
  cfg.validate();
  if (targets && targets->size() != traj.size()) {
    throw std::invalid_argument("render_worldscreen_svg: target overlay length mismatch");
  }
  const int panels = 2 * static_cast<int>(D);
  const int height = kMarginTop + panels * (cfg.panel_height + kPanelGap);
  const double plot_w = cfg.width - kMarginLeft - kMarginRight;
  const double t_max = traj.duration();

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << cfg.width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << cfg.width << ' ' << height << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  const auto bounds = screen_bounds_series(traj, cfg.r_half);
  std::vector<double> xs(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) xs[i] = static_cast<double>(i) * traj.period();

  for (std::size_t k = 0; k < D; ++k) {
    const std::string axis = D == 1 ? "" : (k == 0 ? " (axis 1)" : " (axis 2)");
    const double top = kMarginTop + static_cast<double>(2 * k) * (cfg.panel_height + kPanelGap);

    std::vector<double> lo(traj.size()), hi(traj.size()), mid(traj.size());
    std::vector<double> tlo, thi;
    double ymin = 0.0, ymax = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      lo[i] = bounds.lower[i][k];
      hi[i] = bounds.upper[i][k];
      mid[i] = bounds.center[i][k];
      if (i == 0) ymin = lo[i], ymax = hi[i];
      ymin = std::min(ymin, lo[i]);
      ymax = std::max(ymax, hi[i]);
    }
    if (targets) {
      for (const auto& x : *targets) {
        tlo.push_back(x.u()[k] - x.v() * cfg.r_half);
        thi.push_back(x.u()[k] + x.v() * cfg.r_half);
        ymin = std::min(ymin, tlo.back());
        ymax = std::max(ymax, thi.back());
      }
    }
    if (ymax - ymin <= 0.0) ymin -= 1.0, ymax += 1.0;

    const detail::PanelFrame fb{kMarginLeft, top, plot_w, static_cast<double>(cfg.panel_height), t_max, ymin, ymax};
    detail::frame(os, fb, "screen bounds in world space" + axis);
    auto ys = [&](const std::vector<double>& vals) {
      std::vector<double> out(vals.size());
      for (std::size_t i = 0; i < vals.size(); ++i) out[i] = fb.py(vals[i]);
      return out;
    };
    auto pxs = [&](const std::vector<double>& ts) {
      std::vector<double> out(ts.size());
      for (std::size_t i = 0; i < ts.size(); ++i) out[i] = fb.px(ts[i]);
      return out;
    };
    const auto bx = pxs(xs);
    if (targets) {
      detail::polyline(os, "target", kTargetColor, kTargetWidth, bx, ys(tlo));
      detail::polyline(os, "target", kTargetColor, kTargetWidth, bx, ys(thi));
    }
    detail::polyline(os, "bounds", kBoundsColor, kBoundsWidth, bx, ys(lo));
    detail::polyline(os, "bounds", kBoundsColor, kBoundsWidth, bx, ys(hi));
    detail::polyline(os, "center", kCenterColor, kBoundsWidth * 0.5, bx, ys(mid));

    const double ptop = top + cfg.panel_height + kPanelGap;
    const detail::PanelFrame fp{kMarginLeft, ptop, plot_w, static_cast<double>(cfg.panel_height), t_max, cfg.r_lo,
                                cfg.r_hi};
    detail::frame(os, fp, "optical pathlines in screen space" + axis);
    const PathlineSet lines = pathlines(traj.axis(k), cfg);
    for (const auto& line : lines) {
      std::vector<double> px, py;
      for (const auto& vx : line.vertices) {
        px.push_back(fp.px(vx.t));
        py.push_back(fp.py(vx.r));
      }
      detail::polyline(os, "pathline", kPathlineColor, kPathlineWidth, px, py);
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace hypzoom
