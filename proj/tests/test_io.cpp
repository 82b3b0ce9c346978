#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "tailassign/io.hpp"
#include "tailassign/oracle.hpp"
#include "test_helpers.hpp"

using namespace tailassign;
using ta_test::two_tail_instance;

#ifndef TA_TEST_DATA_DIR
#define TA_TEST_DATA_DIR "."
#endif

namespace {

std::string data_path(const std::string& name) {
  return std::string(TA_TEST_DATA_DIR) + "/" + name;
}

std::string temp_path(const std::string& name) {
  return std::string("io_test_") + name;
}

}  // namespace

TEST_CASE("golden sample file parses to the expected instance") {
  Instance inst = parse_instance(data_path("sample_instance.json"));
  Instance expect = two_tail_instance();
  REQUIRE(serialize_instance(inst).dump(2) == serialize_instance(expect).dump(2));
}

TEST_CASE("serialize-parse round trip is semantically stable") {
  GeneratorParams params;
  params.tails = 4;
  params.flights = 20;
  params.horizon_days = 2;
  params.bases = 5;
  params.seed = 9;
  Instance inst = generate_instance(params);

  std::string path = temp_path("roundtrip.json");
  write_instance(inst, path);
  Instance back = parse_instance(path);
  REQUIRE(serialize_instance(back).dump() == serialize_instance(inst).dump());
  std::remove(path.c_str());
}

TEST_CASE("schema violations carry field diagnostics") {
  auto parse_text = [&](const std::string& text) {
    std::string path = temp_path("schema.json");
    std::ofstream(path) << text;
    Instance inst = parse_instance(path);
    std::remove(path.c_str());
    return inst;
  };

  SECTION("missing tails section") {
    REQUIRE_THROWS_WITH(
        parse_text(R"({"version":1,"horizon_days":1,"airports":{},"activities":[],)"
                   R"("lof_plan":{},"cost_params":{"connection_cost":1,"maintenance_cost":1,"lof_bonus":0}})"),
        Catch::Matchers::ContainsSubstring("tails"));
  }
  SECTION("unknown fields are rejected") {
    REQUIRE_THROWS_WITH(
        parse_text(R"({"version":1,"horizon_days":1,"surprise":true,"airports":{},"activities":[],)"
                   R"("tails":[],"lof_plan":{},"cost_params":{"connection_cost":1,"maintenance_cost":1,"lof_bonus":0}})"),
        Catch::Matchers::ContainsSubstring("surprise"));
  }
  SECTION("the version field is mandatory") {
    REQUIRE_THROWS_WITH(
        parse_text(R"({"horizon_days":1,"airports":{},"activities":[],"tails":[],)"
                   R"("lof_plan":{},"cost_params":{"connection_cost":1,"maintenance_cost":1,"lof_bonus":0}})"),
        Catch::Matchers::ContainsSubstring("version"));
  }
  SECTION("malformed JSON reports a parse error") {
    REQUIRE_THROWS_WITH(parse_text("{"), Catch::Matchers::ContainsSubstring("parse error"));
  }
}

TEST_CASE("a duplicate activity id is a validation error naming the id") {
  Instance inst = two_tail_instance();
  inst.activities.push_back(inst.activities[0]);
  inst.rebuild_indices();
  std::string path = temp_path("dup.json");
  write_instance(inst, path);

  REQUIRE_THROWS_WITH(parse_instance(path),
                      Catch::Matchers::ContainsSubstring("F1") &&
                          Catch::Matchers::ContainsSubstring("duplicate"));
  // The report-collecting form hands the violations back instead.
  ValidationReport report;
  Instance parsed = parse_instance(path, &report);
  REQUIRE_FALSE(report.ok());
  REQUIRE(parsed.activities.size() == 5);
  std::remove(path.c_str());
}

TEST_CASE("generation is deterministic per seed") {
  GeneratorParams params;
  params.tails = 5;
  params.flights = 30;
  params.horizon_days = 3;
  params.bases = 5;
  params.seed = 7;
  Instance a = generate_instance(params);
  Instance b = generate_instance(params);
  REQUIRE(serialize_instance(a).dump() == serialize_instance(b).dump());

  params.seed = 8;
  Instance c = generate_instance(params);
  REQUIRE(serialize_instance(a).dump() != serialize_instance(c).dump());
}

TEST_CASE("generated instances match the requested shape") {
  GeneratorParams params;
  params.tails = 14;
  params.flights = 243;
  params.horizon_days = 5;
  params.bases = 8;
  params.seed = 77;
  Instance inst = generate_instance(params);
  REQUIRE(inst.tails.size() == 14);
  REQUIRE(inst.horizon_days == 5);
  int flights = 0;
  for (const auto& a : inst.activities) flights += a.is_flight();
  REQUIRE(flights == 243);
  REQUIRE(validate_instance(inst).ok());
}

TEST_CASE("guaranteed-feasible instances admit a complete assignment") {
  GeneratorParams params;
  params.tails = 3;
  params.flights = 12;
  params.horizon_days = 2;
  params.bases = 4;
  params.seed = 13;
  Instance inst = generate_instance(params);

  // The planted rotations themselves are feasible routes.
  for (const Tail& tail : inst.tails) {
    const auto& plan = inst.lof_plan.at(tail.id);
    Route r;
    r.tail = inst.tail_index(tail.id);
    std::vector<int> maint;
    for (const auto& id : plan) r.activities.push_back(inst.activity_index(id));
    auto violations = route_violations(inst, r);
    // The plan may rely on exercised checks; retry with every eligible gap
    // used when the plain version trips the FH/FC rule.
    if (!violations.empty()) {
      auto routes = enumerate_routes(inst, tail);
      bool found = false;
      for (const auto& cand : routes)
        if (cand.activities == r.activities) found = true;
      REQUIRE(found);
    }
  }

  auto [sol, report] = solve(inst, DriverConfig{});
  REQUIRE(sol.uncovered.empty());
  REQUIRE(report.remarks == "Complete Assignment");
}

TEST_CASE("impossible generator parameters raise explicit errors") {
  GeneratorParams params;
  params.tails = 1;
  params.flights = 500;  // cannot fit one tail's day
  params.horizon_days = 1;
  params.bases = 3;
  REQUIRE_THROWS_WITH(generate_instance(params),
                      Catch::Matchers::ContainsSubstring("cannot place"));

  GeneratorParams no_hangar;
  no_hangar.maintenance_base_fraction = 0.0;
  no_hangar.preassignment_rate = 0.5;
  REQUIRE_THROWS_WITH(generate_instance(no_hangar),
                      Catch::Matchers::ContainsSubstring("maintenance base"));

  GeneratorParams bad;
  bad.tails = 0;
  REQUIRE_THROWS_AS(generate_instance(bad), std::invalid_argument);
}

TEST_CASE("reports serialize, read back, and carry the remark texts") {
  Instance inst = two_tail_instance();
  auto [sol, report] = solve(inst, DriverConfig{});

  std::string path = temp_path("report.json");
  write_report(inst, sol, report, path);
  ordered_json back = read_report(path);
  REQUIRE(back.dump() == report_to_json(inst, sol, report).dump());
  REQUIRE(back["remarks"] == "Complete Assignment");
  REQUIRE(back["objective"].get<double>() == Catch::Approx(20.0));
  std::remove(path.c_str());

  SECTION("uncovered flights are listed in the remark") {
    Instance hard = inst;
    Activity bad = ta_test::make_flight("FX", "CCC", "AAA", 2000, 2100, 5000.0);
    bad.restricted_tails = {"T1", "T2"};
    hard.activities.push_back(bad);
    hard.rebuild_indices();
    auto [sol2, report2] = solve(hard, DriverConfig{});
    ordered_json j = report_to_json(hard, sol2, report2);
    REQUIRE(j["remarks"].get<std::string>().find("1 uncovered flights: FX") != std::string::npos);
    REQUIRE(j["uncovered"] == std::vector<std::string>{"FX"});
  }
}

TEST_CASE("summary printing mentions the essentials") {
  Instance inst = two_tail_instance();
  auto [sol, report] = solve(inst, DriverConfig{});
  std::ostringstream os;
  print_summary(inst, sol, report, os);
  std::string text = os.str();
  REQUIRE(text.find("objective") != std::string::npos);
  REQUIRE(text.find("Complete Assignment") != std::string::npos);
  REQUIRE(text.find("T2:") != std::string::npos);
}

TEST_CASE("route rendering is compact and exact") {
  Instance inst = two_tail_instance();
  Route r;
  r.tail = 0;
  r.activities = {0, 1, 2};
  r.maintenance_positions = {1};
  REQUIRE(route_to_string(inst, r) == "T1:F1>F2>F3[m@1]");
  Route empty;
  empty.tail = 1;
  REQUIRE(route_to_string(inst, empty) == "T2:-");
}
