#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "khcable/complex.hpp"
#include "khcable/diagram.hpp"
#include "khcable/frobenius.hpp"

namespace khc {

using Json = nlohmann::json;

inline constexpr const char* kEngineVersion = "khcable-1.0";

/// A knot or link given by a braid word or a PD code.
struct KnotEntry {
  std::string name;
  std::string braid;  // "3: 1 -2 1"
  std::string pd;     // "X[1,4,2,5], ..."
  std::optional<int> writhe;
  std::optional<bool> negative;

  LinkDiagram diagram() const;
};

/// One unit of work. `kind` is homology, s, triangle, induction, theorem-sinv or main-lemma.
struct Task {
  std::string kind;
  std::optional<int> crossing;  // triangle: all crossings when absent
  int max_m = 1;                // induction
  int n = 1;                    // theorem-sinv: 0..n; main-lemma: m
};

struct RunManifest {
  std::vector<KnotEntry> knots;
  int prime = 3;
  FrobeniusParams deformation = FrobeniusParams::lee();
  int budget_crossings = 60;
  long long memory_budget_mb = 0;  // 0: unlimited
  int threads = 0;
  std::vector<Task> tasks;

  static RunManifest from_json(const Json& j);
  Json to_json() const;
  /// One message per problem; empty when the manifest is usable. Per-knot problems name the knot.
  std::vector<std::string> validate() const;
};

struct ResultRecord {
  enum class Status { verified, failed, skipped };
  std::string input_hash;
  std::string task;
  std::string knot;
  Status status = Status::verified;
  Json result;
  int prime = 3;
  std::string engine_version = kEngineVersion;
  double wall_time = 0;

  Json to_json() const;
  static ResultRecord from_json(const Json& j);
  /// Equality of everything except the wall time.
  bool same_result(const ResultRecord& other) const;
};

std::string status_name(ResultRecord::Status s);
ResultRecord::Status parse_status(const std::string& s);

/// Hex SHA-256 of a string.
std::string sha256_hex(const std::string& text);
/// Canonical text of a diagram: PD code with orientation-ordered labels plus free loops.
std::string canonical_diagram(const LinkDiagram& d);

/// Content-addressed record store: one JSON file per key under `dir`.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);
  std::optional<ResultRecord> get(const std::string& key) const;
  /// Writes through a temporary file and an atomic rename.
  void put(const ResultRecord& r);
  int hits() const { return hits_; }
  int misses() const { return misses_; }

 private:
  std::filesystem::path dir_;
  mutable std::mutex mutex_;
  mutable int hits_ = 0;
  mutable int misses_ = 0;
};

struct RunSummary {
  std::vector<ResultRecord> records;
  int computed = 0;
  int cached = 0;
  /// 0 all verified, 1 any failure, 2 any budget skip without failures.
  int exit_code() const;
};

/// Executes every task for every knot. Budget exhaustion yields skipped records.
RunSummary run(const RunManifest& m, ResultCache* cache = nullptr);

/// Poincare polynomial in t (homological) and q, monomials ordered by h then q.
std::string poincare_text(const BigradedDims& d);
Json bigraded_json(const BigradedDims& d);
BigradedDims bigraded_from_json(const Json& j);

std::string record_text(const ResultRecord& r);
/// JSON Lines ledger.
std::string emit_ledger(const std::vector<ResultRecord>& records);
std::vector<ResultRecord> parse_ledger(const std::string& text);

}  // namespace khc
