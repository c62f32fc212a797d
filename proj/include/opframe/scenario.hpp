#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "opframe/seqops.hpp"

namespace opframe {

inline constexpr int kReportSchemaVersion = 1;

// Malformed scenario text or a scenario that names unknown generators,
// operators or checks. The CLI maps this to exit code 2.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Compare { Le, Lt, Ge, Gt };
std::string to_string(Compare c);

struct CheckResult {
  std::string name;   // label from the scenario, defaults to the check kind
  std::string check;  // check kind
  double value = 0.0;
  double tolerance = 0.0;
  Compare compare = Compare::Le;
  bool pass = false;
  std::string detail;
};

struct BoundsRecord {
  std::string label;
  FrameBounds bounds;
};

struct Trajectory {
  std::string name;
  std::vector<std::pair<Index, double>> points;
};

struct ScenarioReport {
  std::string scenario;
  unsigned long long seed = 0;
  double tolerance_scale = 1.0;
  std::vector<CheckResult> checks;
  std::vector<BoundsRecord> bounds;
  std::vector<Trajectory> trajectories;
  nlohmann::json notes = nlohmann::json::object();
  double wall_clock_seconds = 0.0;

  bool all_pass() const;
  const CheckResult* find(std::string_view name) const;
  nlohmann::json to_json() const;
};

// Parses and validates scenario text; throws ScenarioError.
nlohmann::json parse_scenario(std::string_view text);
void validate_scenario(const nlohmann::json& scenario);

struct RunOptions {
  std::optional<unsigned long long> seed;
  // Multiplies the tolerance of `le` checks.
  double tolerance_scale = 1.0;
};

// Runs construction, operator and checks in order. Numerical failures inside
// a check are recorded as a failed check; ScenarioError escapes for unknown
// names or missing parameters.
ScenarioReport run_scenario(const nlohmann::json& scenario, const RunOptions& options = {});

// `N,value` rows with a header line.
std::string trajectory_csv(const Trajectory& t);

// Scenarios compiled into the library, sorted by name.
std::vector<std::string> bundled_scenario_names();
std::optional<std::string_view> bundled_scenario(std::string_view name);
// Names accepted by `opframe reproduce`.
const std::vector<std::string>& reproducible_examples();

}  // namespace opframe
