#include "khcable/cli_io.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <new>
#include <set>
#include <sstream>
#include <stdexcept>

#include "khcable/braid.hpp"
#include "khcable/cobordism.hpp"
#include "khcable/induction.hpp"
#include "khcable/khovanov.hpp"

namespace khc {

namespace {

Json graded_json(const GradedDims& d) {
  Json out = Json::array();
  for (auto [h, v] : d) out.push_back({h, v});
  return out;
}

Json ints(const std::set<int>& s) { return Json(std::vector<int>(s.begin(), s.end())); }

Json entry_json(const EntryReport& r) {
  Json j{{"f", r.entry.f},
         {"m", r.entry.m},
         {"a", r.entry.a},
         {"i", r.entry.i},
         {"crossings", r.crossings},
         {"status", status_name(static_cast<ResultRecord::Status>(r.status))}};
  if (r.status == EntryReport::Status::skipped) return j;
  j["kh_bar"] = bigraded_json(r.kh_bar);
  j["lee_bar"] = graded_json(r.lee_bar);
  j["statement_a"] = r.statement_a;
  j["statement_b"] = r.statement_b;
  j["base_case"] = r.base_case;
  if (r.base_case) j["negative_base"] = r.negative_base;
  if (r.isotopy_certified) j["isotopy_certified"] = *r.isotopy_certified;
  if (r.triangle) {
    const TriangleReport& t = *r.triangle;
    j["triangle"] = {{"merge", t.merge},
                     {"J", ints(t.j)},
                     {"cr", t.cr},
                     {"d_writhe", t.d_writhe},
                     {"d_lee", t.d_lee},
                     {"d_arith", t.d_arith},
                     {"exact", t.exact},
                     {"band_law", t.band_law},
                     {"lo_matches", t.lo_matches},
                     {"lu",
                      {{"m", t.lu.m},
                       {"a", t.lu.a},
                       {"i", t.lu.i},
                       {"flipped", t.lu.flipped},
                       {"extra_unknot", t.lu.extra_unknot},
                       {"certified", t.lu.certified}}},
                     {"inequality", t.inequality},
                     {"equality_chain", t.equality_chain},
                     {"g_rank", t.g_rank},
                     {"g_source_dim", t.g_source_dim}};
  }
  int held = 0;
  for (const auto& c : r.identities) held += c.holds();
  j["identities"] = {{"checked", r.identities.size()}, {"held", held}};
  j["failures"] = r.failures;
  return j;
}

std::string task_key(const Task& t) {
  Json j{{"kind", t.kind}};
  if (t.crossing) j["crossing"] = *t.crossing;
  return j.dump();
}

std::vector<std::string> global_problems(const RunManifest& m) {
  std::vector<std::string> errs;
  if (m.prime == 2 || m.prime < 2 || !is_prime(m.prime)) errs.push_back("prime must be an odd prime");
  if (m.budget_crossings < 0) errs.push_back("crossing budget must be nonnegative");
  static const std::set<std::string> kinds{"homology", "s", "triangle", "induction", "theorem-sinv", "main-lemma"};
  for (const Task& t : m.tasks)
    if (!kinds.count(t.kind)) errs.push_back("unknown task '" + t.kind + "'");
  return errs;
}

struct Context {
  const RunManifest& m;
  ResultCache* cache;
  RunSummary& out;
};

/// Looks up or computes one record. `compute` fills status and result.
void produce(Context& ctx, const std::string& knot, const std::string& task, const std::string& key_text,
             const std::function<void(ResultRecord&)>& compute) {
  const std::string key = sha256_hex(key_text);
  if (ctx.cache)
    if (auto hit = ctx.cache->get(key)) {
      ctx.out.records.push_back(*hit);
      ++ctx.out.cached;
      return;
    }
  ResultRecord r;
  r.input_hash = key;
  r.task = task;
  r.knot = knot;
  r.prime = ctx.m.prime;
  auto start = std::chrono::steady_clock::now();
  try {
    compute(r);
  } catch (const std::bad_alloc&) {
    r.status = ResultRecord::Status::skipped;
    r.result = {{"reason", "memory budget exhausted"}};
  } catch (const std::exception& e) {
    r.status = ResultRecord::Status::failed;
    r.result = {{"error", e.what()}};
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ++ctx.out.computed;
  // memory exhaustion depends on the machine, so it is never cached
  if (ctx.cache && !(r.status == ResultRecord::Status::skipped && r.result.contains("reason") &&
                     r.result["reason"] == "memory budget exhausted"))
    ctx.cache->put(r);
  ctx.out.records.push_back(std::move(r));
}

std::string base_key(const RunManifest& m, const LinkDiagram& d) {
  std::ostringstream os;
  os << kEngineVersion << '|' << canonical_diagram(d) << "|p=" << m.prime << "|def=" << m.deformation.name()
     << "|budget=" << m.budget_crossings;
  return os.str();
}

ResultRecord::Status over_budget(ResultRecord& r, int crossings, int budget) {
  r.result = {{"crossings", crossings}, {"reason", "crossing budget " + std::to_string(budget) + " exceeded"}};
  return ResultRecord::Status::skipped;
}

void run_knot(Context& ctx, const KnotEntry& ke, const LinkDiagram& d) {
  const RunManifest& m = ctx.m;
  const Field F(m.prime);
  HarnessOptions opt;
  opt.prime = m.prime;
  opt.deformation = m.deformation;
  opt.budget_crossings = m.budget_crossings;
  opt.threads = m.threads;
  const std::string base = base_key(m, d);
  KnotInput k{ke.name, d, ke.writhe.value_or(d.writhe())};

  for (const Task& t : m.tasks) {
    const std::string key = base + '|' + task_key(t);
    if (t.kind == "homology") {
      produce(ctx, ke.name, t.kind, key, [&](ResultRecord& r) {
        if (d.crossing_count() > m.budget_crossings) {
          r.status = over_budget(r, d.crossing_count(), m.budget_crossings);
          return;
        }
        BigradedDims kh = khovanov_homology(d, F);
        r.result = {{"crossings", d.crossing_count()}, {"kh", bigraded_json(kh)}, {"poincare", poincare_text(kh)}};
        if (m.deformation.deformed()) {
          Frobenius def(F, m.deformation);
          r.result["deformed"] = {{"name", m.deformation.name()}, {"dims", graded_json(lee_homology_dims(d, def))}};
        }
      });
    } else if (t.kind == "s") {
      produce(ctx, ke.name, t.kind, key, [&](ResultRecord& r) {
        if (d.crossing_count() > m.budget_crossings) {
          r.status = over_budget(r, d.crossing_count(), m.budget_crossings);
          return;
        }
        r.result = {{"s", s_invariant(d, Frobenius(F, m.deformation))}};
      });
    } else if (t.kind == "triangle") {
      std::vector<int> cs;
      if (t.crossing)
        cs.push_back(*t.crossing);
      else
        for (int c = 0; c < d.crossing_count(); ++c) cs.push_back(c);
      for (int c : cs) {
        produce(ctx, ke.name, t.kind, base + "|triangle|" + std::to_string(c), [&](ResultRecord& r) {
          if (c < 0 || c >= d.crossing_count()) throw std::invalid_argument("crossing index out of range");
          if (d.crossing_count() > m.budget_crossings) {
            r.status = over_budget(r, d.crossing_count(), m.budget_crossings);
            return;
          }
          Frobenius def(F, m.deformation);
          SkeinTriangle tri = skein_triangle(d, c, def);
          ExactnessReport ex = exactness_check(tri, def);
          r.result = {{"crossing", c},
                      {"sign", d.crossing(c).sign()},
                      {"merge", tri.merge},
                      {"degree", tri.degree},
                      {"exact", ex.ok},
                      {"band_law", tri.band_law},
                      {"violations", ex.violations},
                      {"kh_oriented", bigraded_json(tri.kh_part[tri.oriented_smoothing])},
                      {"kh_unoriented", bigraded_json(tri.kh_part[1 - tri.oriented_smoothing])}};
          r.status = ex.ok && tri.band_law ? ResultRecord::Status::verified : ResultRecord::Status::failed;
        });
      }
    } else if (t.kind == "induction") {
      k.validate();
      std::vector<IndEntry> entries = enumerate_ind(k.writhe, t.max_m);
      std::vector<IndEntry> missing;
      auto entry_key = [&](const IndEntry& e) {
        return sha256_hex(base + "|induction|w=" + std::to_string(k.writhe) + '|' + e.label());
      };
      for (const IndEntry& e : entries)
        if (!ctx.cache || !ctx.cache->get(entry_key(e))) missing.push_back(e);
      std::vector<EntryReport> fresh = verify_entries(k, missing, opt);
      std::size_t next = 0;
      for (const IndEntry& e : entries) {
        produce(ctx, ke.name, t.kind, base + "|induction|w=" + std::to_string(k.writhe) + '|' + e.label(),
                [&](ResultRecord& r) {
                  if (next >= fresh.size() || !(fresh[next].entry == e))
                    throw std::logic_error("induction entry evicted from the cache during the run");
                  const EntryReport& rep = fresh[next++];
                  r.result = entry_json(rep);
                  r.status = static_cast<ResultRecord::Status>(rep.status);
                });
      }
    } else if (t.kind == "theorem-sinv") {
      k.validate();
      for (int n = 0; n <= t.n; ++n)
        produce(ctx, ke.name, t.kind, base + "|sinv|" + std::to_string(n), [&](ResultRecord& r) {
          SinvReport s = verify_theorem_sinv(k, n, opt);
          r.result = {{"n", n}, {"crossings", s.crossings}, {"s_knot", s.s_knot}};
          if (s.skipped) {
            r.status = ResultRecord::Status::skipped;
            r.result["reason"] = "crossing budget " + std::to_string(m.budget_crossings) + " exceeded";
            return;
          }
          r.result["s_cable"] = s.s_cable;
          r.result["expected"] = s.s_knot - 2 * n;
          r.status = s.holds() ? ResultRecord::Status::verified : ResultRecord::Status::failed;
        });
    } else if (t.kind == "main-lemma") {
      k.validate();
      produce(ctx, ke.name, t.kind, base + "|lemma|" + std::to_string(t.n), [&](ResultRecord& r) {
        MainLemmaReport ml = verify_main_lemma(k, t.n, opt);
        r.result = {{"m", t.n}, {"crossings", ml.crossings}};
        if (ml.skipped) {
          r.status = ResultRecord::Status::skipped;
          r.result["reason"] = "crossing budget " + std::to_string(m.budget_crossings) + " exceeded";
          return;
        }
        r.result.update({{"dims_m", ml.dims_m},
                         {"dims_m1", ml.dims_m1},
                         {"renormalize", ml.renormalize_ok},
                         {"lu_is_cable_plus_unknot", ml.lu_is_cable_plus_unknot},
                         {"degree", ml.degree},
                         {"rank", ml.rank},
                         {"source_dim", ml.source_dim},
                         {"injective", ml.injective()}});
        r.status = ml.ok() ? ResultRecord::Status::verified : ResultRecord::Status::failed;
      });
    } else {
      throw std::invalid_argument("unknown task '" + t.kind + "'");
    }
  }
}

}  // namespace

LinkDiagram KnotEntry::diagram() const {
  if (braid.empty() == pd.empty()) throw std::invalid_argument(name + ": give exactly one of braid or pd");
  if (!braid.empty()) return braid_closure(parse_braid(braid));
  return parse_pd(pd);
}

RunManifest RunManifest::from_json(const Json& j) {
  RunManifest m;
  for (const Json& k : j.at("knots")) {
    KnotEntry e;
    e.name = k.at("name").get<std::string>();
    e.braid = k.value("braid", "");
    e.pd = k.value("pd", "");
    if (k.contains("writhe")) e.writhe = k["writhe"].get<int>();
    if (k.contains("negative")) e.negative = k["negative"].get<bool>();
    m.knots.push_back(std::move(e));
  }
  m.prime = j.value("prime", 3);
  m.deformation = FrobeniusParams::parse(j.value("deformation", std::string("lee")));
  m.budget_crossings = j.value("budget_crossings", 60);
  m.memory_budget_mb = j.value("memory_budget_mb", 0LL);
  m.threads = j.value("threads", 0);
  for (const Json& t : j.at("tasks")) {
    Task task;
    if (t.is_string()) {
      task.kind = t.get<std::string>();
    } else {
      task.kind = t.at("kind").get<std::string>();
      if (t.contains("crossing")) task.crossing = t["crossing"].get<int>();
      task.max_m = t.value("max_m", 1);
      task.n = t.value("n", 1);
    }
    m.tasks.push_back(task);
  }
  return m;
}

Json RunManifest::to_json() const {
  Json ks = Json::array();
  for (const KnotEntry& k : knots) {
    Json e{{"name", k.name}};
    if (!k.braid.empty()) e["braid"] = k.braid;
    if (!k.pd.empty()) e["pd"] = k.pd;
    if (k.writhe) e["writhe"] = *k.writhe;
    if (k.negative) e["negative"] = *k.negative;
    ks.push_back(e);
  }
  Json ts = Json::array();
  for (const Task& t : tasks) {
    Json e{{"kind", t.kind}, {"max_m", t.max_m}, {"n", t.n}};
    if (t.crossing) e["crossing"] = *t.crossing;
    ts.push_back(e);
  }
  return {{"knots", ks},
          {"prime", prime},
          {"deformation", deformation.name()},
          {"budget_crossings", budget_crossings},
          {"memory_budget_mb", memory_budget_mb},
          {"threads", threads},
          {"tasks", ts}};
}

std::vector<std::string> RunManifest::validate() const {
  std::vector<std::string> errs = global_problems(*this);
  for (const KnotEntry& k : knots) {
    try {
      LinkDiagram d = k.diagram();
      if (k.writhe && *k.writhe != d.writhe())
        errs.push_back(k.name + ": declared writhe " + std::to_string(*k.writhe) + " but diagram has " +
                       std::to_string(d.writhe()));
      if (k.negative && *k.negative != d.is_negative())
        errs.push_back(k.name + ": negativity flag does not match the diagram");
    } catch (const std::exception& e) {
      errs.push_back(k.name + ": " + e.what());
    }
  }
  return errs;
}

std::string status_name(ResultRecord::Status s) {
  switch (s) {
    case ResultRecord::Status::verified: return "verified";
    case ResultRecord::Status::failed: return "failed";
    case ResultRecord::Status::skipped: return "skipped";
  }
  return "failed";
}

ResultRecord::Status parse_status(const std::string& s) {
  if (s == "verified") return ResultRecord::Status::verified;
  if (s == "failed") return ResultRecord::Status::failed;
  if (s == "skipped") return ResultRecord::Status::skipped;
  throw std::invalid_argument("unknown status '" + s + "'");
}

Json ResultRecord::to_json() const {
  return {{"input_hash", input_hash}, {"task", task},   {"knot", knot},
          {"status", status_name(status)}, {"result", result}, {"prime", prime},
          {"engine_version", engine_version}, {"wall_time", wall_time}};
}

ResultRecord ResultRecord::from_json(const Json& j) {
  ResultRecord r;
  r.input_hash = j.at("input_hash").get<std::string>();
  r.task = j.at("task").get<std::string>();
  r.knot = j.at("knot").get<std::string>();
  r.status = parse_status(j.at("status").get<std::string>());
  r.result = j.at("result");
  r.prime = j.at("prime").get<int>();
  r.engine_version = j.at("engine_version").get<std::string>();
  r.wall_time = j.at("wall_time").get<double>();
  return r;
}

bool ResultRecord::same_result(const ResultRecord& o) const {
  return input_hash == o.input_hash && task == o.task && knot == o.knot && status == o.status &&
         result == o.result && prime == o.prime && engine_version == o.engine_version;
}

std::string sha256_hex(const std::string& text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

std::string canonical_diagram(const LinkDiagram& d) {
  std::string out = to_pd_string(d);
  for (int b = 0; b < d.free_loops(); ++b) out += d.free_loop_reversed(b) ? "-" : "+";
  return out;
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<ResultRecord> ResultCache::get(const std::string& key) const {
  std::lock_guard lock(mutex_);
  std::ifstream in(dir_ / (key + ".json"));
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  try {
    ResultRecord r = ResultRecord::from_json(Json::parse(in));
    if (r.input_hash != key || r.engine_version != kEngineVersion) {
      ++misses_;
      return std::nullopt;
    }
    ++hits_;
    return r;
  } catch (const std::exception&) {
    ++misses_;
    return std::nullopt;
  }
}

void ResultCache::put(const ResultRecord& r) {
  std::lock_guard lock(mutex_);
  const auto final_path = dir_ / (r.input_hash + ".json");
  const auto tmp = dir_ / (r.input_hash + ".json.tmp");
  {
    std::ofstream out(tmp);
    out << r.to_json().dump(1) << '\n';
    if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
  }
  std::filesystem::rename(tmp, final_path);
}

int RunSummary::exit_code() const {
  bool skipped = false;
  for (const ResultRecord& r : records) {
    if (r.status == ResultRecord::Status::failed) return 1;
    skipped = skipped || r.status == ResultRecord::Status::skipped;
  }
  return skipped ? 2 : 0;
}

RunSummary run(const RunManifest& m, ResultCache* cache) {
  RunSummary out;
  for (const std::string& e : global_problems(m)) throw std::invalid_argument(e);
  Context ctx{m, cache, out};
  for (const KnotEntry& ke : m.knots) {
    std::vector<std::string> errs;
    LinkDiagram d;
    try {
      d = ke.diagram();
      if (ke.writhe && *ke.writhe != d.writhe()) errs.push_back("declared writhe does not match the diagram");
      if (ke.negative && *ke.negative != d.is_negative()) errs.push_back("negativity flag does not match the diagram");
    } catch (const std::exception& e) {
      errs.push_back(e.what());
    }
    if (!errs.empty()) {
      ResultRecord r;
      r.task = "validate";
      r.knot = ke.name;
      r.prime = m.prime;
      r.status = ResultRecord::Status::failed;
      r.result = {{"errors", errs}};
      out.records.push_back(std::move(r));
      continue;
    }
    try {
      run_knot(ctx, ke, d);
    } catch (const std::exception& e) {
      ResultRecord r;
      r.task = "validate";
      r.knot = ke.name;
      r.prime = m.prime;
      r.status = ResultRecord::Status::failed;
      r.result = {{"errors", {e.what()}}};
      out.records.push_back(std::move(r));
    }
  }
  return out;
}

std::string poincare_text(const BigradedDims& d) {
  std::ostringstream os;
  bool first = true;
  for (auto [k, v] : d) {
    if (!v) continue;
    if (!first) os << " + ";
    first = false;
    bool any = false;
    if (v != 1) os << v, any = true;
    for (auto [var, e] : {std::pair{'t', k.first}, std::pair{'q', k.second}}) {
      if (!e) continue;
      os << var;
      if (e != 1) os << '^' << e;
      any = true;
    }
    if (!any) os << 1;
  }
  return first ? "0" : os.str();
}

Json bigraded_json(const BigradedDims& d) {
  Json out = Json::array();
  for (auto [k, v] : d) out.push_back({k.first, k.second, v});
  return out;
}

BigradedDims bigraded_from_json(const Json& j) {
  BigradedDims d;
  for (const Json& e : j) d[{e.at(0).get<int>(), e.at(1).get<int>()}] = e.at(2).get<long long>();
  return d;
}

std::string record_text(const ResultRecord& r) {
  std::ostringstream os;
  os << '[' << status_name(r.status) << "] " << r.knot << ' ' << r.task << ": ";
  const Json& j = r.result;
  if (j.contains("error")) {
    os << "error: " << j["error"].get<std::string>();
  } else if (j.contains("errors")) {
    for (const Json& e : j["errors"]) os << e.get<std::string>() << "; ";
  } else if (j.contains("reason")) {
    os << j["reason"].get<std::string>();
  } else if (r.task == "homology") {
    os << j["poincare"].get<std::string>();
    if (j.contains("deformed")) {
      os << " | " << j["deformed"]["name"].get<std::string>() << ":";
      for (const Json& e : j["deformed"]["dims"]) os << " h" << e[0].get<int>() << "=" << e[1].get<long long>();
    }
  } else if (r.task == "s") {
    os << "s = " << j["s"].get<int>();
  } else if (r.task == "triangle") {
    os << "crossing " << j["crossing"].get<int>() << (j["merge"].get<bool>() ? " merge" : " split") << ", degree "
       << j["degree"].get<int>() << (j["exact"].get<bool>() ? ", exact" : ", NOT exact");
  } else if (r.task == "induction") {
    os << "(" << j["f"].get<int>() << "," << j["m"].get<int>() << "," << j["a"].get<int>() << "," << j["i"].get<int>()
       << ") " << j["crossings"].get<int>() << " crossings";
    if (j.contains("triangle")) os << ", d = " << j["triangle"]["d_writhe"].get<int>();
    if (j.contains("failures"))
      for (const Json& f : j["failures"]) os << "; " << f.get<std::string>();
  } else if (r.task == "theorem-sinv") {
    os << "n = " << j["n"].get<int>() << ", s(K) = " << j["s_knot"].get<int>() << ", s(cable) = "
       << j["s_cable"].get<int>() << " (" << j["crossings"].get<int>() << " crossings)";
  } else if (r.task == "main-lemma") {
    os << "m = " << j["m"].get<int>() << ", rank " << j["rank"].get<int>() << " of " << j["source_dim"].get<int>()
       << ", degree " << j["degree"].get<int>();
  } else {
    os << j.dump();
  }
  return os.str();
}

std::string emit_ledger(const std::vector<ResultRecord>& records) {
  std::string out;
  for (const ResultRecord& r : records) out += r.to_json().dump() + '\n';
  return out;
}

std::vector<ResultRecord> parse_ledger(const std::string& text) {
  std::vector<ResultRecord> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(ResultRecord::from_json(Json::parse(line)));
  return out;
}

}  // namespace khc
