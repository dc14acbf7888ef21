#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "smlearn/bench.hpp"
#include "smlearn/harness.hpp"
#include "smlearn/serialize.hpp"

using namespace smlearn;

namespace {

constexpr int kOk = 0;
constexpr int kIoError = 1;
constexpr int kLearnError = 2;
constexpr int kDifferent = 3;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

SMealy load_target(const std::string& path, const std::string& bench) {
  SMealy m = path.empty() ? make_builtin(bench) : load_automaton(path);
  require_valid(m);
  return m;
}

void trace(const LearnEvent& ev) {
  const auto& alg = *ev.table->algebra();
  switch (ev.kind) {
    case LearnEvent::Kind::Repair: {
      const Defect& d = ev.defect;
      std::cerr << "repair " << defect_name(d.kind) << ": " << alg.format(d.w1);
      if (d.kind == DefectKind::NotConsistent) std::cerr << ", " << alg.format(d.w2);
      if (d.kind != DefectKind::NotClosed) std::cerr << ", " << alg.format(d.a);
      if (d.kind == DefectKind::NotConsistent) std::cerr << ", " << alg.format(d.e);
      std::cerr << "  |S|=" << ev.table->S().size() << " |R|=" << ev.table->R().size()
                << " |Sigma_E|=" << ev.table->sigma_e().size() << " |E|=" << ev.table->E().size() << "\n";
      break;
    }
    case LearnEvent::Kind::Hypothesis:
      std::cerr << "hypothesis with " << ev.hypothesis->num_states() << " states, "
                << ev.hypothesis->num_transitions() << " transitions\n";
      break;
    case LearnEvent::Kind::Counterexample:
      std::cerr << "counterexample " << alg.format(ev.cex) << "\n";
      break;
  }
}

int cmd_learn(const std::string& target, const std::string& bench, const std::string& oracle, bool seed_given,
              std::uint64_t seed, const std::string& init, std::size_t reps, const std::string& stats_path,
              const std::string& dot_path, const std::string& out_path, bool tracing) {
  SMealy m;
  try {
    m = load_target(target, bench);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kLearnError;
  }
  if (oracle == "random" && !seed_given) {
    std::cerr << "error: --seed is required with --oracle random\n";
    return kLearnError;
  }

  RunSpec spec;
  spec.name = target.empty() ? bench : target;
  spec.mode = oracle == "random" ? CexMode::Random : CexMode::Lexmin;
  spec.seed = seed;
  spec.reps = reps;
  try {
    if (!init.empty()) spec.a0 = parse_char(*m.algebra(), init);
  } catch (const std::exception& e) {
    std::cerr << "error: bad --init: " << e.what() << "\n";
    return kLearnError;
  }

  std::vector<RunRecord> records;
  if (tracing) {
    // Traced runs stay serial so the log is readable.
    for (std::size_t i = 0; i < reps; ++i) {
      RunRecord r;
      r.name = spec.name;
      r.states = m.num_states();
      r.transitions = m.num_transitions();
      r.seed = seed + i;
      try {
        OutputOracle oq(m);
        SimulatedEquivOracle eq(m, spec.mode, r.seed);
        LearnConfig cfg;
        cfg.a0 = spec.a0;
        cfg.observer = trace;
        auto res = learn(oq, eq, m.algebra(), default_partition(m.algebra()), cfg);
        r.stats = res.stats;
        r.learned = std::move(res.hypothesis);
      } catch (const std::exception& e) {
        r.error = e.what();
      }
      records.push_back(std::move(r));
    }
  } else {
    records = run_parallel(m, spec);
  }

  for (const auto& r : records)
    if (!r.error.empty()) {
      std::cerr << "error: learning failed (seed " << r.seed << "): " << r.error << "\n";
      return kLearnError;
    }

  std::string csv = stats_header() + "\n";
  for (const auto& r : records) csv += stats_row(r) + "\n";
  try {
    if (stats_path.empty()) std::cout << csv;
    else write_text(stats_path, csv);
    if (!out_path.empty()) save_automaton(out_path, *records.front().learned);
    if (!dot_path.empty()) write_text(dot_path, to_dot(*records.front().learned));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}

int cmd_random(std::size_t n, std::size_t k, std::uint64_t seed, const std::string& out_path) {
  SMealy m;
  try {
    RandomSpec spec;
    spec.n = n;
    spec.k = k;
    spec.seed = seed;
    m = random_sma(spec);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kLearnError;
  }
  try {
    if (out_path.empty()) std::cout << to_json(m).dump(2) << "\n";
    else save_automaton(out_path, m);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}

int cmd_equiv(const std::string& a, const std::string& b) {
  SMealy ma, mb;
  try {
    ma = load_automaton(a);
    mb = load_automaton(b);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  try {
    require_valid(ma);
    require_valid(mb);
    auto w = symbolic_equiv(ma, mb);
    if (!w) {
      std::cout << "equal\n";
      return kOk;
    }
    std::cout << ma.algebra()->format(*w) << "\n";
    std::cerr << a << " outputs " << ma.run(*w) << ", " << b << " outputs " << mb.run(*w) << "\n";
    return kDifferent;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kLearnError;
  }
}

int cmd_export(const std::string& name, const std::string& out_path) {
  SMealy m;
  try {
    m = make_builtin(name);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kLearnError;
  }
  try {
    if (out_path.empty()) std::cout << to_json(m).dump(2) << "\n";
    else save_automaton(out_path, m);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active learning of symbolic Mealy automata"};
  app.require_subcommand(1);

  auto* learn_cmd = app.add_subcommand("learn", "learn a target with a simulated teacher");
  std::string target, bench, oracle = "lexmin", init, stats_path, dot_path, out_path;
  std::uint64_t seed = 0;
  std::size_t reps = 1;
  bool tracing = false;
  auto* target_opt = learn_cmd->add_option("--target", target, "target automaton file");
  auto* bench_opt = learn_cmd->add_option("--bench", bench, "built-in target: worked-example, mh, atgs, lower:n,k");
  target_opt->excludes(bench_opt);
  bench_opt->excludes(target_opt);
  learn_cmd->add_option("--oracle", oracle, "counterexample selection")->check(CLI::IsMember({"lexmin", "random"}));
  auto* seed_opt = learn_cmd->add_option("--seed", seed, "seed for the random oracle");
  learn_cmd->add_option("--init", init, "initial character, comma-separated for products");
  learn_cmd->add_option("--reps", reps, "repetitions")->check(CLI::PositiveNumber);
  learn_cmd->add_option("--stats", stats_path, "stats CSV output (default stdout)");
  learn_cmd->add_option("--dot", dot_path, "DOT output of the learned automaton");
  learn_cmd->add_option("--out", out_path, "learned automaton output");
  learn_cmd->add_flag("--trace", tracing, "per-round trace on stderr");

  auto* random_cmd = app.add_subcommand("random", "generate a random target");
  std::size_t n = 0, k = 0;
  std::uint64_t rseed = 0;
  std::string rout;
  random_cmd->add_option("--states", n, "state count")->required();
  random_cmd->add_option("--essential", k, "number of partition blocks")->required();
  random_cmd->add_option("--seed", rseed, "seed")->required();
  random_cmd->add_option("--out", rout, "output file (default stdout)");

  auto* equiv_cmd = app.add_subcommand("equiv", "check two automata for equivalence");
  std::string fa, fb;
  equiv_cmd->add_option("A", fa, "first automaton")->required();
  equiv_cmd->add_option("B", fb, "second automaton")->required();

  auto* bench_cmd = app.add_subcommand("bench", "built-in benchmarks");
  bench_cmd->require_subcommand(1);
  auto* export_cmd = bench_cmd->add_subcommand("export", "write a built-in target");
  std::string ename, eout;
  export_cmd->add_option("NAME", ename, "benchmark name")->required();
  export_cmd->add_option("--out", eout, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kLearnError;
  }

  if (*learn_cmd) {
    if (target.empty() && bench.empty()) {
      std::cerr << "error: one of --target or --bench is required\n";
      return kLearnError;
    }
    return cmd_learn(target, bench, oracle, seed_opt->count() > 0, seed, init, reps, stats_path, dot_path, out_path,
                     tracing);
  }
  if (*random_cmd) return cmd_random(n, k, rseed, rout);
  if (*equiv_cmd) return cmd_equiv(fa, fb);
  if (*export_cmd) return cmd_export(ename, eout);
  return kLearnError;
}
