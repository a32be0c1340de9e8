#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hypzoom/commands.hpp"

namespace {

enum ExitCode : int { kOk = 0, kValidation = 1, kRuntime = 2 };

template <class T>
void optional_flag(CLI::App* app, const std::string& name, std::optional<T>& target, const std::string& help) {
  app->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  hypzoom::CommandOptions opt;
  CLI::App app{"Hyperbolic zoom/pan animation toolkit"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one technique over a scenario");
  run->add_option("--scenario", opt.scenario, "Scenario JSON")->required();
  run->add_option("--filter", opt.filter, "Technique JSON (default: clipped cascade)");
  run->add_option("--out", opt.out, "Output prefix")->required();

  auto* compare = app.add_subcommand("compare", "Compare techniques on a scenario");
  compare->add_option("--scenario", opt.scenario, "Scenario JSON")->required();
  compare->add_option("--out", opt.out, "Output prefix")->required();
  compare->add_option("techniques", opt.techniques, "Technique names (default: the four-way comparison)");

  auto* diagram = app.add_subcommand("diagram", "Render a trajectory CSV as an SVG world/screen diagram");
  diagram->add_option("trajectory", opt.input, "Trajectory CSV")->required();
  diagram->add_option("--out", opt.out, "SVG path")->required();
  diagram->add_option("--scenario", opt.scenario, "Scenario JSON for the target overlay");

  auto* metrics = app.add_subcommand("metrics", "Report metrics for a trajectory CSV");
  metrics->add_option("trajectory", opt.input, "Trajectory CSV")->required();
  metrics->add_option("--out", opt.out, "JSON path (default: stdout)");

  auto* vectors = app.add_subcommand("vectors", "Write golden test vectors");
  vectors->add_option("--out", opt.out, "JSON path")->required();
  vectors->add_option("--seed", opt.seed, "Seed for the random cases");

  for (auto* sc : {run, compare}) {
    optional_flag(sc, "--rate", opt.rate, "Override the scenario rate (Hz)");
    optional_flag(sc, "--duration", opt.duration, "Override the scenario duration (s)");
  }
  for (auto* sc : {run, compare, diagram, metrics}) {
    optional_flag(sc, "--theta", opt.theta_deg, "Angle of view in degrees");
    optional_flag(sc, "--threshold", opt.threshold, "Discontinuity ratio threshold");
  }
  for (auto* sc : {run, compare, diagram}) optional_flag(sc, "--alpha-iso", opt.alpha_iso, "Pathline spacing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (*run) hypzoom::cmd_run(opt, std::cout);
    else if (*compare) hypzoom::cmd_compare(opt, std::cout);
    else if (*diagram) hypzoom::cmd_diagram(opt, std::cout);
    else if (*metrics) hypzoom::cmd_metrics(opt, std::cout);
    else hypzoom::cmd_vectors(opt, std::cout);
  } catch (const hypzoom::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kRuntime;
  }
  return kOk;
}
