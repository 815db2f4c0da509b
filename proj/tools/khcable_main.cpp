#include <sys/resource.h>

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "khcable/cli_io.hpp"

using namespace khc;

namespace {

struct Common {
  int prime = 3;
  std::string deformation = "lee";
  int budget = 60;
  long long memory_mb = 0;
  int threads = 0;
  std::string cache;
  std::string emit = "text";
  std::string ledger;
};

struct Input {
  std::string braid;
  std::string pd;
  std::string name = "input";
  std::optional<int> writhe;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--field", c.prime, "odd prime p of the coefficient field F_p")->capture_default_str();
  app->add_option("--deformation", c.deformation, "khovanov, lee or bar-natan")
      ->check(CLI::IsMember({"khovanov", "lee", "bar-natan"}))
      ->capture_default_str();
  app->add_option("--budget-crossings", c.budget, "skip diagrams with more crossings")->capture_default_str();
  app->add_option("--memory-mb", c.memory_mb, "address space limit in MiB (0: none)");
  app->add_option("--threads", c.threads, "worker threads (0: all cores)");
  app->add_option("--cache", c.cache, "directory of the result cache");
  app->add_option("--emit", c.emit, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app->add_option("--ledger", c.ledger, "append records to this JSON Lines file");
}

void add_input(CLI::App* app, Input& in) {
  auto* b = app->add_option("--braid", in.braid, "braid word, e.g. \"2: -1 -1 -1\"");
  auto* p = app->add_option("--pd", in.pd, "PD code, e.g. \"X[1,4,2,5], ...\"");
  b->excludes(p);
  app->add_option("--name", in.name, "label used in the output");
  app->add_option("--writhe", in.writhe, "declared writhe, checked against the diagram");
}

RunManifest manifest_for(const Common& c, const Input& in, Task task) {
  RunManifest m;
  m.knots.push_back({in.name, in.braid, in.pd, in.writhe, std::nullopt});
  m.prime = c.prime;
  m.deformation = FrobeniusParams::parse(c.deformation);
  m.budget_crossings = c.budget;
  m.memory_budget_mb = c.memory_mb;
  m.threads = c.threads;
  m.tasks.push_back(std::move(task));
  return m;
}

int execute(const RunManifest& m, const Common& c) {
  for (const std::string& e : m.validate()) std::cerr << "invalid input: " << e << '\n';
  const long long mem = m.memory_budget_mb ? m.memory_budget_mb : c.memory_mb;
  if (mem > 0) {
    rlimit lim{static_cast<rlim_t>(mem) << 20, static_cast<rlim_t>(mem) << 20};
    setrlimit(RLIMIT_AS, &lim);
  }
  std::optional<ResultCache> cache;
  if (!c.cache.empty()) cache.emplace(c.cache);
  RunSummary s = run(m, cache ? &*cache : nullptr);
  if (c.emit == "json")
    std::cout << emit_ledger(s.records);
  else
    for (const ResultRecord& r : s.records) std::cout << record_text(r) << '\n';
  if (!c.ledger.empty()) {
    std::ofstream out(c.ledger, std::ios::app);
    out << emit_ledger(s.records);
  }
  if (c.emit == "text") std::cerr << s.computed << " computed, " << s.cached << " from cache\n";
  return s.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Khovanov and Lee homology of links, cables and the cable induction"};
  app.require_subcommand(1);
  Common common;
  Input input;
  Task task;
  std::string manifest_path;

  auto* homology = app.add_subcommand("homology", "bigraded Khovanov homology and deformed homology");
  auto* sinv = app.add_subcommand("s-invariant", "Rasmussen s-invariant from the deformed theory");
  auto* triangle = app.add_subcommand("triangle", "unoriented skein triangle at a crossing");
  auto* induct = app.add_subcommand("induct", "verify the induction over the cable family");
  auto* theorem = app.add_subcommand("verify-sinv", "s of the (2n+1)-cable against s(K) - 2n");
  auto* lemma = app.add_subcommand("main-lemma", "injectivity of the band map on Kh^0");
  auto* runner = app.add_subcommand("run", "execute a JSON run manifest");
  for (auto* sub : {homology, sinv, triangle, induct, theorem, lemma}) {
    add_common(sub, common);
    add_input(sub, input);
  }
  add_common(runner, common);
  runner->add_option("manifest", manifest_path, "manifest file")->required()->check(CLI::ExistingFile);
  triangle->add_option("--crossing", task.crossing, "crossing index (default: every crossing)");
  induct->add_option("--max-m", task.max_m, "largest m to enumerate")->capture_default_str();
  theorem->add_option("--n", task.n, "largest n to check")->capture_default_str();
  lemma->add_option("--m", task.n, "m of the lemma instance")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    RunManifest m;
    if (runner->parsed()) {
      std::ifstream in(manifest_path);
      m = RunManifest::from_json(Json::parse(in));
      if (runner->count("--field")) m.prime = common.prime;
      if (runner->count("--deformation")) m.deformation = FrobeniusParams::parse(common.deformation);
      if (runner->count("--budget-crossings")) m.budget_crossings = common.budget;
      if (runner->count("--threads")) m.threads = common.threads;
    } else {
      if (input.braid.empty() && input.pd.empty()) throw std::invalid_argument("give --braid or --pd");
      if (homology->parsed()) task.kind = "homology";
      if (sinv->parsed()) task.kind = "s";
      if (triangle->parsed()) task.kind = "triangle";
      if (induct->parsed()) task.kind = "induction";
      if (theorem->parsed()) task.kind = "theorem-sinv";
      if (lemma->parsed()) task.kind = "main-lemma";
      m = manifest_for(common, input, task);
    }
    return execute(m, common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
