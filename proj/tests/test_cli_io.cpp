#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "khcable/cli_io.hpp"

using namespace khc;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("khcable_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  return dir;
}

Task task(const char* kind) {
  Task t;
  t.kind = kind;
  return t;
}

RunManifest small_manifest() {
  RunManifest m;
  m.knots.push_back({"unknot", "", "U", 0, true});
  m.knots.push_back({"trefoil", "2: -1 -1 -1", "", -3, true});
  m.knots.push_back({"5_2", "", "X[1,4,2,5], X[3,8,4,9], X[5,10,6,1], X[9,6,10,7], X[7,2,8,3]", -5, true});
  m.tasks = {task("homology"), task("s")};
  return m;
}

const ResultRecord& find(const RunSummary& s, const std::string& knot, const std::string& task) {
  for (const ResultRecord& r : s.records)
    if (r.knot == knot && r.task == task) return r;
  throw std::runtime_error("record not found");
}

}  // namespace

TEST_CASE("Poincare polynomial order") {
  BigradedDims d{{{0, 3}, 1}, {{-2, 5}, 2}, {{0, -1}, 1}, {{1, 1}, 1}, {{0, 0}, 1}};
  CHECK(poincare_text(d) == "2t^-2q^5 + q^-1 + 1 + q^3 + tq");
  CHECK(poincare_text({}) == "0");
  CHECK(bigraded_from_json(bigraded_json(d)) == d);
}

TEST_CASE("manifest parsing and validation") {
  RunManifest m = small_manifest();
  RunManifest back = RunManifest::from_json(m.to_json());
  CHECK(back.to_json() == m.to_json());
  CHECK(m.validate().empty());
  m.knots[1].writhe = 3;
  m.knots[2].negative = false;
  m.tasks.push_back(task("frobnicate"));
  CHECK(m.validate().size() == 3);
  Json j = Json::parse(R"({"knots": [{"name": "k", "braid": "2: -1 -1 -1"}], "tasks": ["s", {"kind": "triangle", "crossing": 1}]})");
  RunManifest p = RunManifest::from_json(j);
  CHECK(p.prime == 3);
  CHECK(p.budget_crossings == 60);
  CHECK(p.tasks[1].crossing == 1);
}

TEST_CASE("records for the small manifest") {
  RunSummary s = run(small_manifest());
  CHECK(s.exit_code() == 0);
  CHECK(find(s, "unknot", "s").result["s"] == 0);
  CHECK(find(s, "trefoil", "s").result["s"] == -2);
  CHECK(find(s, "5_2", "s").result["s"] == -2);
  CHECK(find(s, "unknot", "homology").result["poincare"] == "q^-1 + q");
  CHECK(bigraded_from_json(find(s, "unknot", "homology").result["kh"]) == BigradedDims{{{0, -1}, 1}, {{0, 1}, 1}});
}

TEST_CASE("cache serves identical records") {
  auto dir = fresh_dir("cache");
  ResultCache cache(dir);
  RunManifest m = small_manifest();
  m.tasks.push_back(task("triangle"));
  RunSummary first = run(m, &cache);
  CHECK(first.cached == 0);
  RunSummary second = run(m, &cache);
  CHECK(second.computed == 0);
  CHECK(second.cached == static_cast<int>(first.records.size()));
  REQUIRE(first.records.size() == second.records.size());
  for (std::size_t k = 0; k < first.records.size(); ++k) CHECK(first.records[k].same_result(second.records[k]));
  // a different prime is a different key
  m.prime = 5;
  RunSummary third = run(m, &cache);
  CHECK(third.cached == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("ledger round trip") {
  RunSummary s = run(small_manifest());
  std::string text = emit_ledger(s.records);
  auto back = parse_ledger(text);
  REQUIRE(back.size() == s.records.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    CHECK(back[k].same_result(s.records[k]));
    CHECK(back[k].wall_time == s.records[k].wall_time);
  }
  CHECK(emit_ledger(back) == text);
}

TEST_CASE("exit codes") {
  RunManifest m = small_manifest();
  m.budget_crossings = 4;
  CHECK(run(m).exit_code() == 2);
  m.knots[1].writhe = 3;
  RunSummary bad = run(m);
  CHECK(bad.exit_code() == 1);
  CHECK(find(bad, "trefoil", "validate").status == ResultRecord::Status::failed);
  RunManifest wrong = small_manifest();
  wrong.prime = 4;
  CHECK_THROWS(run(wrong));
}

TEST_CASE("hashing") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(canonical_diagram(LinkDiagram::unknot()) != canonical_diagram(LinkDiagram::unknot().with_unknot()));
}
