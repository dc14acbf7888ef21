#include "smlearn/harness.hpp"

#include <cstdio>

namespace smlearn {

RunRecord run_once(const SMealy& target, const RunSpec& spec, std::uint64_t seed) {
  RunRecord r;
  r.name = spec.name;
  r.states = target.num_states();
  r.transitions = target.num_transitions();
  r.seed = seed;
  try {
    OutputOracle out(target);
    SimulatedEquivOracle eq(target, spec.mode, seed);
    LearnConfig cfg;
    cfg.a0 = spec.a0;
    cfg.order = spec.order;
    auto res = learn(out, eq, target.algebra(), default_partition(target.algebra()), cfg);
    r.stats = res.stats;
    r.learned = std::move(res.hypothesis);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<RunRecord> run_serial(const SMealy& target, const RunSpec& spec) {
  std::vector<RunRecord> out;
  for (std::size_t i = 0; i < spec.reps; ++i) out.push_back(run_once(target, spec, spec.seed + i));
  return out;
}

std::vector<RunRecord> run_parallel(const SMealy& target, const RunSpec& spec) {
  std::vector<RunRecord> out(spec.reps);
  const auto reps = static_cast<long>(spec.reps);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < reps; ++i) out[static_cast<std::size_t>(i)] = run_once(target, spec, spec.seed + static_cast<std::uint64_t>(i));
  return out;
}

std::string stats_header() {
  return "name,states,transitions,eq_queries,output_queries,sigmaE,final_R,final_E,max_cex_len,seed,runtime_ms";
}

namespace {

// RFC 4180 quoting for fields holding separators or quotes.
std::string csv_field(const std::string& f) {
  if (f.find_first_of(",\"\n") == std::string::npos) return f;
  std::string q = "\"";
  for (char c : f) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

std::string stats_row(const RunRecord& r) {
  const auto& s = r.stats;
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", s.wall_time.count());
  return csv_field(r.name) + "," + std::to_string(r.states) + "," + std::to_string(r.transitions) + "," +
         std::to_string(s.eq_queries) + "," + std::to_string(s.output_queries) + "," + std::to_string(s.sigmaE_size) +
         "," + std::to_string(s.R_size) + "," + std::to_string(s.E_size) + "," + std::to_string(s.max_cex_len) + "," +
         std::to_string(r.seed) + "," + ms;
}

}  // namespace smlearn
