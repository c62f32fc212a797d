#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "opframe/scenario.hpp"

using namespace opframe;
using nlohmann::json;

namespace {

json small_scenario() {
  return json::parse(R"({
    "name": "small",
    "seed": 3,
    "construction": {"generator": "difference", "params": {"d": 20}},
    "operator": {"name": "generator"},
    "checks": [
      {"check": "weak_alpha", "tolerance": 1e-8},
      {"check": "weak_certificate", "tolerance": 1e-8},
      {"check": "partial_sum_identity", "tolerance": 1e-12}
    ]
  })");
}

json bundled(const std::string& name) {
  const auto text = bundled_scenario(name);
  REQUIRE(text.has_value());
  return parse_scenario(*text);
}

}  // namespace

TEST_CASE("parse_scenario rejects malformed and incomplete scenarios") {
  CHECK_THROWS_AS(parse_scenario("{ not json"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("[1, 2]"), ScenarioError);

  json s = small_scenario();
  s.erase("construction");
  CHECK_THROWS_AS(validate_scenario(s), ScenarioError);

  s = small_scenario();
  s["construction"]["generator"] = "no_such_generator";
  CHECK_THROWS_AS(validate_scenario(s), ScenarioError);

  s = small_scenario();
  s["checks"][0]["check"] = "no_such_check";
  CHECK_THROWS_AS(validate_scenario(s), ScenarioError);

  s = small_scenario();
  s["checks"][0]["tolerance"] = -1.0;
  CHECK_THROWS_AS(validate_scenario(s), ScenarioError);

  s = small_scenario();
  s["operator"]["name"] = "no_such_operator";
  CHECK_THROWS_AS(validate_scenario(s), ScenarioError);

  CHECK_NOTHROW(validate_scenario(small_scenario()));
}

TEST_CASE("every bundled scenario validates") {
  const auto names = bundled_scenario_names();
  CHECK(names.size() >= reproducible_examples().size());
  for (const auto& n : names) {
    CAPTURE(n);
    CHECK_NOTHROW(validate_scenario(bundled(n)));
  }
  for (const auto& n : reproducible_examples()) CHECK(bundled_scenario(n).has_value());
  CHECK_FALSE(bundled_scenario("no_such_example").has_value());
}

TEST_CASE("run_scenario: passing run, report fields") {
  const ScenarioReport r = run_scenario(small_scenario());
  CHECK(r.all_pass());
  CHECK(r.scenario == "small");
  CHECK(r.seed == 3);
  REQUIRE(r.checks.size() == 3);
  REQUIRE(r.find("weak_alpha") != nullptr);
  CHECK(r.find("weak_alpha")->compare == Compare::Gt);
  const json j = r.to_json();
  CHECK(j.at("schema_version") == kReportSchemaVersion);
  CHECK(j.at("all_pass") == true);
  CHECK(j.at("checks").size() == 3);
  CHECK(j.contains("wall_clock_seconds"));
}

TEST_CASE("run_scenario: zero tolerance fails and keeps the measured value") {
  json s = small_scenario();
  s["checks"][1]["tolerance"] = 0.0;
  const ScenarioReport r = run_scenario(s);
  CHECK_FALSE(r.all_pass());
  const CheckResult* c = r.find("weak_certificate");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->pass);
  CHECK(c->value > 0.0);
  CHECK(std::isfinite(c->value));
}

TEST_CASE("run_scenario: tolerance scale and seed override") {
  json s = small_scenario();
  s["checks"][1]["tolerance"] = 1e-30;
  CHECK_FALSE(run_scenario(s).all_pass());
  const ScenarioReport scaled = run_scenario(s, {std::nullopt, 1e40});
  CHECK(scaled.all_pass());
  CHECK(scaled.tolerance_scale == 1e40);
  CHECK(run_scenario(small_scenario(), {17ULL, 1.0}).seed == 17);
}

TEST_CASE("run_scenario is deterministic apart from the wall clock") {
  json a = run_scenario(bundled("multiplier")).to_json();
  json b = run_scenario(bundled("multiplier")).to_json();
  a.erase("wall_clock_seconds");
  b.erase("wall_clock_seconds");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("reproduce: parseval trajectory") {
  const ScenarioReport r = run_scenario(bundled("parseval_trajectory"));
  CHECK(r.all_pass());
  REQUIRE(r.trajectories.size() == 2);
  for (const auto& t : r.trajectories) {
    REQUIRE(t.points.size() == 4);
    for (const auto& [n, v] : t.points) {
      const double want = t.name == "bessel_bound" ? double(n * n) : 1.0;
      CHECK(std::abs(v - want) <= 1e-10 * want);
    }
  }
  const std::string csv = trajectory_csv(r.trajectories[0]);
  CHECK(csv.rfind("N,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("reproduce: difference sequence") {
  const ScenarioReport r = run_scenario(bundled("difference"));
  CHECK(r.all_pass());
  const CheckResult* strong = r.find("strong_expansion");
  REQUIRE(strong != nullptr);
  CHECK(strong->value >= 0.5);
}

TEST_CASE("reproduce: block multiplier with the ab = 2 window") {
  // R(A) is not inside the span of the truncated Gabor family, so the
  // inclusion and the A-frame bound fail (see README).
  const ScenarioReport r = run_scenario(bundled("not_frame"));
  CHECK_FALSE(r.all_pass());
  const CheckResult* inc = r.find("range_inclusion");
  REQUIRE(inc != nullptr);
  CHECK_FALSE(inc->pass);
  const CheckResult* ratio = r.find("frame_ratio");
  REQUIRE(ratio != nullptr);
  CHECK(ratio->pass);

  const ScenarioReport fold = run_scenario(bundled("not_frame_fold_window"));
  CHECK(fold.all_pass());
}

TEST_CASE("numerical failures inside a check are reported, not thrown") {
  // Eleven exponentials do not span the grid, so no K-dual exists for K = I.
  json s = small_scenario();
  s["construction"] = json::parse(R"({"generator": "exponential",
    "params": {"grid": {"kind": "closed", "lower": 0, "upper": 1, "points": 64}, "b": 1.0, "range": 5}})");
  s["operator"] = json::parse(R"({"name": "identity"})");
  s["checks"] = json::parse(R"([{"check": "k_dual_residual", "tolerance": 1e-8},
                                {"check": "kframe_alpha", "tolerance": 1e-8}])");
  ScenarioReport r;
  CHECK_NOTHROW(r = run_scenario(s));
  REQUIRE(r.checks.size() == 2);
  CHECK_FALSE(r.checks[0].pass);
  CHECK(std::isnan(r.checks[0].value));
  CHECK(r.checks[0].detail.find("RangeNotIncluded") != std::string::npos);
  CHECK(r.to_json().at("checks")[0].at("value").is_null());
  CHECK_FALSE(r.checks[1].pass);
  CHECK(r.checks[1].value == 0.0);
}
