// Animates an interrupted zoom with the clipped cascade and prints the
// camera every tenth frame.

#include <cstdio>

#include "hypzoom/filters.hpp"
#include "hypzoom/uw.hpp"

int main() {
  using namespace hypzoom;
  const Viewport<1> vp;
  const auto signal = TargetSignal<1>::steps({
      {0.0, HPoint2({0.0}, 1.0)},
      {0.5, camera_from_span<1>({8.0}, {12.0}, vp)},
      {1.5, camera_from_span<1>({-6.0}, {-4.0}, vp)},
  });
  const FilterConfig cfg = FilterConfig::clipped_cascade();
  const auto traj = run_filter(signal, cfg, 4.0);
  std::printf("%6s %12s %12s\n", "t", "u", "v");
  for (std::size_t i = 0; i < traj.size(); i += 10) {
    std::printf("%6.3f %12.6f %12.6f\n", traj.time(i), traj[i].u[0], traj[i].v);
  }
}
