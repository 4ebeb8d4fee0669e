#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "kgsharp/report.hpp"

using namespace kgsharp;

namespace {

VerificationReport sample() {
  VerificationReport r;
  r.command = "demo";
  r.params = {{"seed", "0"}, {"tol", "1e-10"}};
  r.add("first, with comma", 1.0, 1.0 + 1e-12, true, 1.5);
  r.add("second \"quoted\"", 0.1, 0.2, false, 0.0, "off by half");
  return r;
}

}  // namespace

TEST_CASE("relative error") {
  CHECK(relative_error(1.1, 1.0) == doctest::Approx(0.1));
  CHECK(relative_error(0.0, 0.0) == 0.0);
  CHECK(relative_error(1e-310, 0.0) == doctest::Approx(1e-310 / kRelErrFloor));
}

TEST_CASE("overall verdict") {
  VerificationReport r;
  CHECK(r.overall_pass());
  r.add("ok", 1.0, 1.0, true);
  CHECK(r.overall_pass());
  r.add("bad", 1.0, 2.0, false);
  CHECK_FALSE(r.overall_pass());
  VerificationReport all;
  all.command = "all";
  all.merge(r);
  REQUIRE(all.entries.size() == 2);
  CHECK(all.entries[1].name == "/bad");
}

TEST_CASE("json layout") {
  const auto r = sample();
  const std::string text = to_json(r);
  const auto j = nlohmann::ordered_json::parse(text);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"command", "params", "entries", "overall_pass"});
  CHECK(j["command"] == "demo");
  CHECK(j["params"]["tol"] == "1e-10");
  CHECK(j["entries"].size() == 2);
  CHECK(j["entries"][0]["computed"].get<double>() == 1.0);
  CHECK(j["entries"][0]["reference"].get<double>() == 1.0 + 1e-12);
  CHECK(j["entries"][1]["name"] == "second \"quoted\"");
  CHECK(j["entries"][1]["note"] == "off by half");
  CHECK(j["overall_pass"] == false);

  VerificationReport empty;
  empty.command = "none";
  const auto e = nlohmann::json::parse(to_json(empty));
  CHECK(e["entries"].is_array());
  CHECK(e["entries"].empty());
  CHECK(e["overall_pass"] == true);

  VerificationReport nan;
  nan.add("nan", std::numeric_limits<double>::quiet_NaN(), 1.0, false);
  CHECK(nlohmann::json::parse(to_json(nan))["entries"][0]["computed"].is_null());
}

TEST_CASE("csv round trip") {
  const auto r = sample();
  const std::string text = to_csv(r);
  CHECK(text.rfind("name,computed,reference,rel_err,pass,runtime_ms\n", 0) == 0);
  const auto back = parse_csv(text);
  REQUIRE(back.size() == r.entries.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].name == r.entries[i].name);
    CHECK(back[i].computed == r.entries[i].computed);
    CHECK(back[i].reference == r.entries[i].reference);
    CHECK(back[i].rel_err == r.entries[i].rel_err);
    CHECK(back[i].pass == r.entries[i].pass);
    CHECK(back[i].runtime_ms == r.entries[i].runtime_ms);
  }
}

TEST_CASE("unwritable output") {
  CHECK_THROWS_AS(emit(sample(), ReportFormat::Json, "/nonexistent-dir/report.json"), IoError);
}
