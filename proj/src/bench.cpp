#include "mphase/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <sstream>
#include <thread>

namespace mphase {

namespace fs = std::filesystem;

std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<std::string> out;
  for (const std::string& in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(in)) {
        if (entry.is_regular_file() && entry.path().extension() == ".cnf")
          found.push_back(entry.path().string());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(in);
    }
  }
  return out;
}

namespace {

std::string verdict_word(const SolverVerdict& v) {
  switch (v.status) {
    case SolverVerdict::Status::Sat:
      return "sat";
    case SolverVerdict::Status::Unsat:
      return "unsat";
    case SolverVerdict::Status::Unknown:
      return "unknown";
  }
  return "unknown";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

BenchResult run_bench(const BenchConfig& config) {
  const std::vector<std::string> files = expand_inputs(config.inputs);
  std::vector<std::optional<Formula>> formulas(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    ParseResult r = read_dimacs_file(files[i]);
    if (r) formulas[i] = std::move(r).formula();
  }

  const std::size_t per = config.policies.size();
  BenchResult result;
  result.rows.resize(files.size() * per);
  std::vector<char> invalid(result.rows.size(), 0);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t cell = next.fetch_add(1);
      if (cell >= result.rows.size()) return;
      const std::size_t fi = cell / per;
      const auto& policy = config.policies[cell % per];
      BenchRow& row = result.rows[cell];
      row.instance = fs::path(files[fi]).filename().string();
      row.policy = policy ? std::string(policy_name(*policy)) : "auto";
      if (!formulas[fi]) {
        row.verdict = "error";
        continue;
      }
      RunOptions opts = config.options;
      opts.heuristic = policy;
      const auto start = std::chrono::steady_clock::now();
      const RunResult run = run_solver(*formulas[fi], opts);
      const auto elapsed = std::chrono::steady_clock::now() - start;
      row.verdict = verdict_word(run.verdict);
      row.decisions = run.stats.decisions;
      row.conflicts = run.stats.conflicts;
      row.propagations = run.stats.propagations;
      row.restarts = run.stats.restarts;
      if (config.timing)
        row.ms = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count());
      if (!run.model_valid) invalid[cell] = 1;
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, config.jobs);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t fi = 0; fi < files.size(); ++fi) {
    bool bad_model = false;
    for (std::size_t p = 0; p < per; ++p) bad_model |= invalid[fi * per + p] != 0;
    const std::span<const BenchRow> rows(result.rows.data() + fi * per, per);
    if (verdicts_conflict(rows) || bad_model)
      result.soundness_failures.push_back(files[fi]);
  }
  return result;
}

bool verdicts_conflict(std::span<const BenchRow> rows) {
  const auto has = [&](const char* v) {
    return std::any_of(rows.begin(), rows.end(),
                       [v](const BenchRow& r) { return r.verdict == v; });
  };
  return has("sat") && has("unsat");
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "instance,policy,verdict,decisions,conflicts,propagations,restarts,ms\n";
  for (const BenchRow& r : rows) {
    os << csv_field(r.instance) << ',' << csv_field(r.policy) << ',' << r.verdict
       << ',' << r.decisions << ',' << r.conflicts << ',' << r.propagations << ','
       << r.restarts << ',' << r.ms << '\n';
  }
  return os.str();
}

}  // namespace mphase
