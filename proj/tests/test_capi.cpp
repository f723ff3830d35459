#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fqpoints/fqpoints.h"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kData = FQP_TEST_DATA;

struct Session {
  fqp_session* s = nullptr;
  Session() { REQUIRE(fqp_session_new(&s) == FQP_OK); }
  ~Session() { fqp_session_free(s); }
  fqp_status set(const char* k, const std::string& v) { return fqp_session_set(s, k, v.c_str()); }
  fqp_status run(const char* cmd) { return fqp_run(s, cmd); }
  std::string out() const { return fqp_output(s); }
};

std::string run_with_workers(const char* cmd, const std::string& workers,
                             std::initializer_list<std::pair<const char*, std::string>> opts) {
  Session s;
  for (const auto& [k, v] : opts) REQUIRE(s.set(k, v) == FQP_OK);
  REQUIRE(s.set("workers", workers) == FQP_OK);
  const auto st = s.run(cmd);
  INFO(std::string(fqp_last_error(s.s)));
  CHECK(st == FQP_OK);
  return s.out();
}

}  // namespace

TEST_CASE("cone counts through the variety handle") {
  Session s;
  fqp_variety* v = nullptr;
  REQUIRE(fqp_variety_from_spec(s.s, slurp(kData + "/cone.json").c_str(), nullptr, &v) == FQP_OK);
  uint64_t total = 0, smooth = 0, singular = 0;
  REQUIRE(fqp_count(s.s, v, &total, &smooth, &singular) == FQP_OK);
  CHECK(total == 13);
  CHECK(smooth == 12);
  CHECK(singular == 1);
  fqp_variety_free(v);

  REQUIRE(fqp_variety_from_catalog(s.s, "quadric-cone-p3", "5", &v) == FQP_OK);
  REQUIRE(fqp_count(s.s, v, &total, &smooth, &singular) == FQP_OK);
  // q(q+1) + 1 points, vertex singular
  CHECK(total == 31);
  CHECK(singular == 1);
  fqp_variety_free(v);
}

TEST_CASE("error codes") {
  Session s;
  fqp_variety* v = nullptr;
  CHECK(fqp_variety_from_spec(s.s, slurp(kData + "/malformed.json").c_str(), "3", &v) == FQP_VALIDATION);
  CHECK(std::string(fqp_last_error(s.s)).size() > 0);
  CHECK(fqp_variety_from_spec(s.s, "{not json", "3", &v) == FQP_VALIDATION);
  CHECK(fqp_variety_from_catalog(s.s, "no-such-entry", "3", &v) == FQP_VALIDATION);
  CHECK(fqp_variety_from_catalog(s.s, "quadric-cone-p3", "6", &v) == FQP_VALIDATION);
  CHECK(s.set("bogus", "1") == FQP_VALIDATION);
  CHECK(s.set("budget", "ten") == FQP_VALIDATION);
  CHECK(s.run("frobnicate") == FQP_VALIDATION);
  CHECK(fqp_session_set(nullptr, "seed", "1") == FQP_VALIDATION);
}

TEST_CASE("budget exhaustion is reported, not truncated") {
  Session s;
  REQUIRE(s.set("spec", kData + "/plane.json") == FQP_OK);
  REQUIRE(s.set("field", "3") == FQP_OK);
  REQUIRE(s.set("budget", "10") == FQP_OK);
  CHECK(s.run("count") == FQP_BUDGET);
  REQUIRE(s.set("budget", "1000") == FQP_OK);
  CHECK(s.run("count") == FQP_OK);
  CHECK(s.out().find(",13,") != std::string::npos);
}

TEST_CASE("fault injection trips a HARD row") {
  Session s;
  REQUIRE(s.set("catalog", "quadric-cone-p3") == FQP_OK);
  REQUIRE(s.set("field", "3") == FQP_OK);
  CHECK(s.run("verify") == FQP_OK);
  CHECK(s.out().find("violated") == std::string::npos);
  REQUIRE(s.set("inject-fault", "1") == FQP_OK);
  CHECK(s.run("verify") == FQP_HARD_VIOLATION);
  CHECK(s.out().find("violated") != std::string::npos);
}

TEST_CASE("valueset report") {
  Session s;
  REQUIRE(s.set("d", "3") == FQP_OK);
  REQUIRE(s.set("vs-s", "1") == FQP_OK);
  REQUIRE(s.set("field", "5") == FQP_OK);
  REQUIRE(s.run("valueset") == FQP_OK);
  const std::string out = s.out();
  CHECK(out.find("17/5") != std::string::npos);
  CHECK(out.find("holds") != std::string::npos);
}

TEST_CASE("json files land in the output directory") {
  const auto dir = std::filesystem::temp_directory_path() / "fqpoints_capi_test";
  std::filesystem::remove_all(dir);
  Session s;
  REQUIRE(s.set("n", "3") == FQP_OK);
  REQUIRE(s.set("r", "2") == FQP_OK);
  REQUIRE(s.set("s", "0") == FQP_OK);
  REQUIRE(s.set("degrees", "2") == FQP_OK);
  REQUIRE(s.set("field", "7") == FQP_OK);
  REQUIRE(s.set("format", "json") == FQP_OK);
  REQUIRE(s.set("out", dir.string()) == FQP_OK);
  REQUIRE(s.run("bounds") == FQP_OK);
  REQUIRE(fqp_output_file_count(s.s) >= 2);
  bool saw_meta = false;
  for (size_t i = 0; i < fqp_output_file_count(s.s); ++i) {
    const std::string path = fqp_output_file(s.s, i);
    const auto doc = nlohmann::json::parse(slurp(path));
    if (path.find("run_meta") != std::string::npos) {
      saw_meta = true;
      CHECK(doc.contains("workers"));
    } else {
      CHECK(doc.at("rows").is_array());
    }
  }
  CHECK(saw_meta);
  CHECK(fqp_output_file(s.s, 999) == nullptr);
  std::filesystem::remove_all(dir);
}

TEST_CASE("reports do not depend on the worker count") {
  const std::initializer_list<std::pair<const char*, std::string>> verify = {
      {"catalog", "quadric-cone-p3,conic"}, {"field", "3,4,5"}};
  CHECK(run_with_workers("verify", "1", verify) == run_with_workers("verify", "8", verify));
  const std::initializer_list<std::pair<const char*, std::string>> vs = {{"d", "4"}, {"vs-s", "2"}, {"field", "7"}};
  CHECK(run_with_workers("valueset", "1", vs) == run_with_workers("valueset", "8", vs));
  const std::initializer_list<std::pair<const char*, std::string>> audit = {
      {"catalog", "quadric-cone-p3"}, {"field", "5"}, {"seeds", "3"}, {"ext-level", "1"}};
  CHECK(run_with_workers("bertini-audit", "1", audit) == run_with_workers("bertini-audit", "8", audit));
}
