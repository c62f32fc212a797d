#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "opframe/scenario.hpp"

namespace fs = std::filesystem;
using opframe::ScenarioError;
using opframe::ScenarioReport;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadScenario = 2;
constexpr int kExitInternal = 3;

// OPFRAME_TOL_OVERRIDE scales upper-bound tolerances; unset or unparsable means 1.
double tolerance_scale() {
  const char* env = std::getenv("OPFRAME_TOL_OVERRIDE");
  if (!env || !*env) return 1.0;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0)) {
    std::cerr << "warning: ignoring OPFRAME_TOL_OVERRIDE='" << env << "'\n";
    return 1.0;
  }
  return v;
}

void write_report(const ScenarioReport& report, const fs::path& out) {
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  std::ofstream(out) << report.to_json().dump(2) << '\n';
  // One CSV per trajectory next to the report.
  for (const auto& t : report.trajectories) {
    std::string base = out.stem().string();
    if (base.ends_with(".report")) base.resize(base.size() - 7);
    fs::path csv = out;
    csv.replace_filename(base + "." + t.name + ".csv");
    std::ofstream(csv) << opframe::trajectory_csv(t);
  }
}

void print_summary(const ScenarioReport& report, const fs::path& out) {
  for (const auto& c : report.checks)
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.value << ' ' << opframe::to_string(c.compare)
              << ' ' << c.tolerance << (c.detail.empty() ? "" : "  (" + c.detail + ")") << '\n';
  std::cout << "report: " << out.string() << '\n';
}

int run_text(const std::string& text, const fs::path& out, std::optional<unsigned long long> seed) {
  const nlohmann::json scenario = opframe::parse_scenario(text);
  const ScenarioReport report = opframe::run_scenario(scenario, {seed, tolerance_scale()});
  write_report(report, out);
  print_summary(report, out);
  return report.all_pass() ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frame, K-frame and weak A-frame checks on discretized models"};
  app.set_version_flag("--version", std::string(OPFRAME_VERSION));
  app.require_subcommand(1);

  std::string file, name, out;
  unsigned long long seed = 0;

  auto* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("file", file, "Scenario JSON")->required();
  run->add_option("--out", out, "Report path (default <name>.report.json)");
  auto* seed_opt = run->add_option("--seed", seed, "Override the scenario seed");

  auto* reproduce = app.add_subcommand("reproduce", "Run a bundled example scenario");
  reproduce->add_option("name", name, "Example name")->required();
  reproduce->add_option("--out", out, "Report path (default <name>.report.json)");

  auto* list = app.add_subcommand("list", "List bundled scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitBadScenario;
  }

  try {
    if (*list) {
      std::cout << "reproducible examples:\n";
      for (const auto& n : opframe::reproducible_examples()) std::cout << "  " << n << '\n';
      std::cout << "bundled scenarios:\n";
      for (const auto& n : opframe::bundled_scenario_names()) std::cout << "  " << n << '\n';
      return kExitPass;
    }
    if (*run) {
      std::ifstream in(file);
      if (!in) {
        std::cerr << "error: cannot read " << file << '\n';
        return kExitBadScenario;
      }
      std::stringstream buf;
      buf << in.rdbuf();
      const fs::path dest = out.empty() ? fs::path(fs::path(file).stem().string() + ".report.json") : fs::path(out);
      return run_text(buf.str(), dest, seed_opt->count() ? std::optional(seed) : std::nullopt);
    }
    const auto& valid = opframe::reproducible_examples();
    const auto body = std::find(valid.begin(), valid.end(), name) != valid.end() ? opframe::bundled_scenario(name)
                                                                                  : std::nullopt;
    if (!body) {
      std::cerr << "error: unknown example '" << name << "'; valid names:";
      for (const auto& n : valid) std::cerr << ' ' << n;
      std::cerr << '\n';
      return kExitBadScenario;
    }
    const fs::path dest = out.empty() ? fs::path(name + ".report.json") : fs::path(out);
    return run_text(std::string(*body), dest, std::nullopt);
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadScenario;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
