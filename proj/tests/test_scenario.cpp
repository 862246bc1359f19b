#include <catch2/catch_amalgamated.hpp>

#include "bicrossed/scenario.hpp"

using namespace bicrossed;

namespace {

nlohmann::json small_scenario() {
  return nlohmann::json{
      {"schema", kSchemaId},
      {"seed", 7},
      {"items",
       {
           {{"subject", {{"pair", "S3"}}},
            {"checks", {"pentagon", "matching", "dims", "regularity"}}},
           {{"subject", {{"ring", "adeles-f2"}}},
            {"checks", {"openness", "density"}},
            {"truncation", 10},
            {"samples", 20000}},
           {{"subject", {{"map", "axb_real"}}},
            {"checks", {"pentagon_map", "round_trip"}},
            {"samples", 200}},
           {{"subject", {{"padic", 5}}}, {"checks", {"field_axioms"}}, {"samples", 100}},
       }}};
}

}  // namespace

TEST_CASE("a passing scenario reports pass on every check") {
  ScenarioRunner runner(false);
  Json rep = runner.run(small_scenario());
  REQUIRE(rep["schema"] == kSchemaId);
  REQUIRE(rep["verdict"] == "pass");
  for (const auto& item : rep["items"])
    for (const auto& check : item["checks"]) REQUIRE(check["status"] == "pass");
  REQUIRE_FALSE(rep.contains("timestamp"));
}

TEST_CASE("same scenario and seed give byte-identical reports") {
  ScenarioRunner runner(false);
  std::string a = runner.run(small_scenario()).dump(2);
  std::string b = runner.run(small_scenario()).dump(2);
  REQUIRE(a == b);

  auto other = small_scenario();
  other["seed"] = 8;
  std::string c = ScenarioRunner(false).run(other).dump(2);
  REQUIRE(a != c);  // the Monte Carlo stream moved
}

TEST_CASE("unknown checks become check-level errors and fail the report") {
  nlohmann::json scenario = {
      {"schema", kSchemaId},
      {"seed", 1},
      {"items", {{{"subject", {{"pair", "S3"}}}, {"checks", {"no_such_check"}}}}}};
  Json rep = ScenarioRunner(false).run(scenario);
  REQUIRE(rep["verdict"] == "fail");
  REQUIRE(rep["items"][0]["checks"][0]["status"] == "error");
  std::string msg = rep["items"][0]["checks"][0]["data"]["error"].get<std::string>();
  REQUIRE(msg.find("UnknownCheck") != std::string::npos);
}

TEST_CASE("module errors are serialized into the report") {
  nlohmann::json scenario = {
      {"schema", kSchemaId},
      {"seed", 1},
      {"items", {{{"subject", {{"ring", "Z36"}}}, {"checks", {"semiregularity"}}}}}};
  Json rep = ScenarioRunner(false).run(scenario);
  REQUIRE(rep["verdict"] == "fail");
  std::string msg = rep["items"][0]["checks"][0]["data"]["error"].get<std::string>();
  REQUIRE(msg.find("NotMatchedPair") != std::string::npos);
}

TEST_CASE("an empty check list passes vacuously") {
  nlohmann::json scenario = {{"schema", kSchemaId},
                             {"seed", 1},
                             {"items", {{{"subject", {{"pair", "S3"}}},
                                         {"checks", nlohmann::json::array()}}}}};
  Json rep = ScenarioRunner(false).run(scenario);
  REQUIRE(rep["verdict"] == "pass");
  REQUIRE(rep["items"][0]["checks"].empty());
}

TEST_CASE("a wrong schema string is rejected") {
  nlohmann::json scenario = {{"schema", "elsewhere/9"}, {"seed", 1}};
  REQUIRE_THROWS_AS(ScenarioRunner(false).run(scenario), Error);
}

TEST_CASE("adelic scenario checks: semiregularity verdict and witness cases") {
  nlohmann::json scenario = {
      {"schema", kSchemaId},
      {"seed", 3},
      {"items",
       {
           {{"subject", {{"ring", "adeles-f2"}}},
            {"checks", {"semiregularity", "witness"}},
            {"cases", 25}},
           {{"subject", {{"ring", "Q5"}}},
            {"checks", {"semiregularity", "axb_roundtrip", "density_identity"}},
            {"functions", 2},
            {"cases", 50}},
       }}};
  Json rep = ScenarioRunner(false).run(scenario);
  REQUIRE(rep["verdict"] == "pass");
  REQUIRE(rep["items"][0]["checks"][0]["data"]["verdict"] == "not_semiregular");
  REQUIRE(rep["items"][1]["checks"][0]["data"]["verdict"] == "semiregular_not_regular");
  REQUIRE(rep["items"][0]["checks"][1]["data"]["verified"] == 25);
}

TEST_CASE("custom groups enter scenarios through the JSON table interface") {
  auto G = FiniteGroup::dihedral(4);
  nlohmann::json scenario = {
      {"schema", kSchemaId},
      {"seed", 4},
      {"items",
       {{{"subject", {{"pair", {{"group", nlohmann::json::parse(G.to_json().dump())},
                                {"g1", {0, 1, 2, 3}},
                                {"g2", {0, 4}},
                                {"label", "D8-json"}}}}},
         {"checks", {"pentagon", "dims", "matching"}}}}}};
  Json rep = ScenarioRunner(false).run(scenario);
  REQUIRE(rep["verdict"] == "pass");
}
