#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "golden.hpp"
#include "smlearn/bench.hpp"
#include "smlearn/harness.hpp"
#include "smlearn/learner.hpp"
#include "smlearn/serialize.hpp"

using namespace smlearn;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Check {
  bool ok = true;
  std::ostringstream why;
  void require(bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      why << msg;
    }
  }
};

bool report(int id, const std::string& name, Check& c, const std::string& info) {
  std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << id << " (" << name << "): " << info;
  if (!c.ok) std::cout << " | " << c.why.str();
  std::cout << std::endl;
  return c.ok;
}

// 1. Golden trace of the worked example.
bool golden_trace() {
  Check c;
  auto start = Clock::now();
  auto tgt = fixtures::worked_target();
  auto G = golden::worked_tables();
  OutputOracle oq(tgt);
  ScriptedOracle eq(tgt, golden::ws({"20", "0.0.0", "0.0.10.0"}));

  // Expected event log: H = hypothesis, X = counterexample, then repairs by
  // kind; a table name means "the table at this point must equal it".
  const std::vector<std::string> expected{
      "H", "T1", "X", "T2", "output", "T3", "H", "T3", "X", "T4", "consistent", "T5", "closed", "closed", "closed",
      "T6", "evidence", "evidence", "evidence", "evidence", "T7", "H", "T7", "X", "T8", "output", "T9", "evidence",
      "evidence", "evidence", "T10", "H", "T10"};
  std::vector<std::string> log;
  auto snapshot = [&](const ObservationTable& T) {
    for (const auto& g : G)
      if (golden::compare(T, g).empty()) return g.name;
    return std::string("?");
  };
  LearnConfig cfg;
  cfg.observer = [&](const LearnEvent& ev) {
    switch (ev.kind) {
      case LearnEvent::Kind::Hypothesis: log.push_back("H"); break;
      case LearnEvent::Kind::Counterexample: log.push_back("X"); break;
      case LearnEvent::Kind::Repair:
        switch (ev.defect.kind) {
          case DefectKind::NotClosed: log.push_back("closed"); break;
          case DefectKind::NotConsistent: log.push_back("consistent"); break;
          case DefectKind::NotEvidenceClosed: log.push_back("evidence"); break;
          case DefectKind::NotOutputClosed: log.push_back("output"); break;
          default: log.push_back("?"); break;
        }
        break;
    }
    // Record the table only where the expected log names one.
    std::size_t pos = log.size();
    if (pos < expected.size() && expected[pos].rfind('T', 0) == 0) log.push_back(snapshot(*ev.table));
  };
  LearnResult res;
  try {
    res = learn(oq, eq, tgt.algebra(), default_partition(tgt.algebra()), cfg);
  } catch (const std::exception& e) {
    c.require(false, std::string("learning failed: ") + e.what());
    return report(1, "golden trace", c, "");
  }
  for (std::size_t i = 0; i < std::max(log.size(), expected.size()); ++i) {
    std::string got = i < log.size() ? log[i] : "<end>";
    std::string want = i < expected.size() ? expected[i] : "<end>";
    c.require(got == want, "step " + std::to_string(i) + ": expected " + want + ", got " + got);
  }
  c.require(res.stats.eq_queries == 4, "eq_queries = " + std::to_string(res.stats.eq_queries));
  c.require(res.hypothesis.num_states() == 4, "final hypothesis state count");
  c.require(to_json(res.hypothesis) == to_json(fixtures::worked_target()), "final hypothesis differs from the target");
  c.require(!symbolic_equiv(res.hypothesis, tgt), "final hypothesis not equivalent");
  double t = seconds_since(start);
  c.require(t < 1.0, "runtime " + std::to_string(t) + " s");
  char info[128];
  std::snprintf(info, sizeof info, "%zu events matched, eq=%zu, %.3f s", log.size(), res.stats.eq_queries, t);
  return report(1, "golden trace", c, info);
}

// 2. Lower-bound family.
bool lower_bound() {
  Check c;
  auto start = Clock::now();
  std::ostringstream info;
  for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {3, 3}, {4, 6}, {5, 10}}) {
    auto m = make_lower_bound(n, k);
    OutputOracle oq(m);
    SimulatedEquivOracle eq(m, CexMode::Lexmin);
    LearnConfig cfg;
    cfg.a0 = Char{0};
    try {
      auto res = learn(oq, eq, m.algebra(), default_partition(m.algebra()), cfg);
      info << "(" << n << "," << k << "): eq=" << res.stats.eq_queries << " ";
      c.require(res.stats.eq_queries == n + k, "eq_queries for (" + std::to_string(n) + "," + std::to_string(k) +
                                                   ") = " + std::to_string(res.stats.eq_queries));
      c.require(!symbolic_equiv(res.hypothesis, m), "learned automaton not equivalent");
    } catch (const std::exception& e) {
      c.require(false, std::string("learning failed: ") + e.what());
    }
  }
  double t = seconds_since(start);
  c.require(t < 10.0, "runtime " + std::to_string(t) + " s");
  info << "in " << t << " s";
  return report(2, "lower bound", c, info.str());
}

// 3 and 4. Named benchmark with the lexmin oracle.
bool benchmark(int id, const std::string& name, const SMealy& m, double limit_s, const std::string& published) {
  Check c;
  auto start = Clock::now();
  std::ostringstream info;
  try {
    const std::size_t s = essential_characters(m).size();
    OutputOracle oq(m);
    SimulatedEquivOracle eq(m, CexMode::Lexmin);
    auto res = learn(oq, eq, m.algebra(), default_partition(m.algebra()));
    const auto& st = res.stats;
    const std::size_t n = m.num_states();
    const std::size_t bound = output_query_bound(n, st.max_cex_len, s);
    c.require(!symbolic_equiv(res.hypothesis, m), "learned automaton not equivalent");
    c.require(st.eq_queries <= n + s, "eq_queries " + std::to_string(st.eq_queries) + " > n + |Sigma_E^final|");
    c.require(st.output_queries <= bound, "output_queries above the theorem bound");
    if (name == "MH") c.require(st.output_queries <= 14309, "output_queries above 14,309");
    double t = seconds_since(start);
    c.require(t < limit_s, "runtime " + std::to_string(t) + " s");
    info << "eq=" << st.eq_queries << " (<= " << n + s << ") oq=" << st.output_queries << " (<= " << bound
         << ") |Sigma_E^final|=" << s << " m=" << st.max_cex_len << " |R|=" << st.R_size << " |E|=" << st.E_size
         << " in " << t << " s; published: " << published;
  } catch (const std::exception& e) {
    c.require(false, std::string("learning failed: ") + e.what());
  }
  return report(id, name, c, info.str());
}

// 5. Random-benchmark statistics.
bool random_scaling() {
  Check c;
  std::ostringstream info;
  auto run_config = [&](std::size_t n, std::size_t k, double& eq, double& oq, double& R, int& e0, double& t) {
    auto start = Clock::now();
    eq = oq = R = 0;
    e0 = 0;
    const int runs = 10;
    for (int i = 1; i <= runs; ++i) {
      auto m = random_sma({n, k, static_cast<std::uint64_t>(i)});
      RunSpec spec;
      spec.mode = CexMode::Random;
      auto r = run_once(m, spec, static_cast<std::uint64_t>(i));
      if (!r.error.empty()) {
        c.require(false, "run failed: " + r.error);
        continue;
      }
      c.require(!symbolic_equiv(*r.learned, m), "learned automaton not equivalent");
      eq += r.stats.eq_queries;
      oq += r.stats.output_queries;
      R += r.stats.R_size;
      e0 += r.stats.E_size == 0;
    }
    eq /= runs;
    oq /= runs;
    R /= runs;
    t = seconds_since(start);
    c.require(t < 120.0, "runtime above 2 min");
  };
  auto within2 = [](double x, double ref) { return x >= ref / 2 && x <= ref * 2; };
  double eq, oq, R, t;
  int e0;
  run_config(10, 10, eq, oq, R, e0, t);
  c.require(eq >= 10 && eq <= 12, "(10,10) mean eq " + std::to_string(eq));
  c.require(within2(oq, 1015.6), "(10,10) mean oq " + std::to_string(oq));
  c.require(within2(R, 91.56), "(10,10) mean |R| " + std::to_string(R));
  c.require(e0 >= 9, "(10,10) |E| = 0 in " + std::to_string(e0) + " runs");
  info << "(10,10): eq=" << eq << " oq=" << oq << " |R|=" << R << " |E|=0 in " << e0 << "/10 (" << t << " s); ";
  run_config(20, 10, eq, oq, R, e0, t);
  c.require(within2(oq, 2035.95), "(20,10) mean oq " + std::to_string(oq));
  info << "(20,10): eq=" << eq << " oq=" << oq << " |R|=" << R << " (" << t << " s); published 10.00/1015.6/91.56 and "
       << "10.10/2035.95/181.57";
  return report(5, "random scaling", c, info.str());
}

// 6a. Random s-MAs learned end to end with every theorem checked.
void property_learning(Check& c) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> dn(1, 20), dk(1, 20);
  for (int i = 0; i < 200 && c.ok; ++i) {
    RandomSpec spec{dn(rng), dk(rng), rng()};
    auto m = random_sma(spec);
    auto ess = essential_characters(m);
    std::set<Char> final_sigma(ess.begin(), ess.end());
    OutputOracle oq(m);
    SimulatedEquivOracle eq(m, i % 2 ? CexMode::Random : CexMode::Lexmin, static_cast<std::uint64_t>(i));
    LearnConfig cfg;
    cfg.check_compatibility = true;
    bool in_sigma = true, cex_ok = true, minimal = true;
    cfg.observer = [&](const LearnEvent& ev) {
      for (const auto& a : ev.table->sigma_e()) in_sigma = in_sigma && final_sigma.count(a);
      if (ev.kind == LearnEvent::Kind::Counterexample)
        for (const auto& a : ev.cex) cex_ok = cex_ok && final_sigma.count(a);
      if (ev.kind == LearnEvent::Kind::Hypothesis) minimal = minimal && ev.hypothesis->num_states() <= m.num_states();
    };
    std::string tag = "instance " + std::to_string(i) + ": ";
    try {
      auto res = learn(oq, eq, m.algebra(), default_partition(m.algebra()), cfg);
      c.require(!symbolic_equiv(res.hypothesis, m), tag + "not equivalent");
      c.require(res.hypothesis.num_states() <= m.num_states(), tag + "too many states");
      c.require(res.stats.eq_queries <= m.num_states() + final_sigma.size(), tag + "eq bound");
      c.require(in_sigma, tag + "Sigma_E left Sigma_E^final");
      c.require(cex_ok, tag + "counterexample outside (Sigma_E^final)^+");
      c.require(minimal, tag + "hypothesis larger than the target");
    } catch (const OracleAssumptionViolation& e) {
      c.require(false, tag + "oracle assumption violation: " + e.what());
    } catch (const std::exception& e) {
      c.require(false, tag + e.what());
    }
  }
}

// 6b. Partition validity and stability.
void property_partition(Check& c) {
  struct Case {
    std::string name;
    AlgebraPtr alg;
    PartitionFn fn;
  };
  std::vector<Case> cases{{"intervals", Algebra::interval_nat(), partition_intervals},
                          {"equality", Algebra::equality(64), partition_equality},
                          {"product", Algebra::product({Axis::nat(), Axis::nat(), Axis::nat()}), partition_product}};
  const Coord span = 40;
  std::mt19937_64 rng(7);
  for (const auto& cs : cases) {
    const std::size_t d = cs.alg->arity();
    std::uniform_int_distribution<Coord> val(0, span);
    std::uniform_int_distribution<int> groups(1, 5), size(0, 5);
    auto random_char = [&] {
      Char a;
      for (std::size_t k = 0; k < d; ++k) a.push_back(val(rng));
      return a;
    };
    std::vector<Char> grid;
    for (int i = 0; i < 200; ++i) grid.push_back(random_char());
    for (int round = 0; round < 1000 && c.ok; ++round) {
      std::set<Char> used;
      SampleList L(groups(rng));
      for (auto& l : L)
        for (int i = size(rng); i > 0; --i) {
          auto a = random_char();
          if (used.insert(a).second) l.push_back(a);
        }
      if (used.empty()) L[0].push_back(random_char());
      std::string tag = cs.name + " round " + std::to_string(round) + ": ";
      auto P = cs.fn(cs.alg, L);
      c.require(P.size() == L.size(), tag + "length");
      Predicate all = Predicate::bottom(cs.alg);
      for (std::size_t i = 0; i < P.size(); ++i) {
        for (const auto& a : L[i]) c.require(P[i].denotes(a), tag + "containment");
        for (std::size_t j = i + 1; j < P.size(); ++j) c.require(meet(P[i], P[j]).is_empty(), tag + "disjointness");
        all = join(all, P[i]);
      }
      c.require(all.is_top(), tag + "cover");
      for (const auto& a : grid) {
        int hits = 0;
        for (const auto& p : P) hits += p.denotes(a);
        c.require(hits == 1, tag + "sampled point not in exactly one block");
      }
      SampleList L2 = L;
      for (std::size_t i = 0; i < L.size(); ++i)
        for (int tries = 0, added = 0; tries < 100 && added < 3; ++tries) {
          auto a = random_char();
          if (P[i].denotes(a) && used.insert(a).second) {
            L2[i].push_back(a);
            ++added;
          }
        }
      auto P2 = cs.fn(cs.alg, L2);
      for (std::size_t i = 0; i < P.size(); ++i) c.require(P2[i] == P[i], tag + "stability");
    }
  }
}

// 6c. Boolean algebra laws on 10^4 sampled characters per algebra.
void property_algebra(Check& c) {
  std::vector<AlgebraPtr> algs{Algebra::interval_nat(), Algebra::interval_real(-50.0), Algebra::equality(32),
                               Algebra::product({Axis::nat(), Axis::real(0.0)})};
  std::mt19937_64 rng(11);
  for (const auto& alg : algs) {
    const std::size_t d = alg->arity();
    std::uniform_int_distribution<int> small(0, 31);
    auto coord = [&](std::size_t k) -> Coord {
      const Axis& ax = alg->axis(k);
      int v = small(rng);
      return ax.kind == AxisKind::Real ? ax.encode(ax.real_min + v * 0.5) : ax.lo() + static_cast<Coord>(v);
    };
    auto random_pred = [&] {
      Predicate p = Predicate::bottom(alg);
      for (int b = small(rng) % 4; b > 0; --b) {
        std::vector<Interval> box;
        for (std::size_t k = 0; k < d; ++k) {
          Coord x = coord(k), y = coord(k);
          if (x == y) {
            box.push_back({x, std::nullopt});
            continue;
          }
          box.push_back({std::min(x, y), std::max(x, y)});
        }
        p = join(p, Predicate::box(alg, box));
      }
      return p;
    };
    std::size_t samples = 0;
    for (int round = 0; round < 100 && c.ok; ++round) {
      auto p = random_pred(), q = random_pred();
      auto m = meet(p, q), j = join(p, q), n = complement(p);
      c.require(complement(n) == p, "double complement");
      c.require(join(meet(p, q), meet(p, complement(q))) == p, "canonical form");
      Char w;
      if (!p.is_empty()) {
        w = p.witness();
        c.require(p.denotes(w), "witness not in predicate");
      }
      auto bs = p.simple_boxes();
      for (std::size_t x = 0; x < bs.size(); ++x)
        for (std::size_t y = x + 1; y < bs.size(); ++y)
          c.require(meet(Predicate::box(alg, bs[x]), Predicate::box(alg, bs[y])).is_empty(), "boxes overlap");
      for (int s = 0; s < 100; ++s, ++samples) {
        Char a;
        for (std::size_t k = 0; k < d; ++k) a.push_back(coord(k));
        bool dp = p.denotes(a), dq = q.denotes(a);
        c.require(m.denotes(a) == (dp && dq), "meet law");
        c.require(j.denotes(a) == (dp || dq), "join law");
        c.require(n.denotes(a) == !dp, "complement law");
        if (dp) c.require(!(a < w), "element below the witness");
      }
    }
    c.require(samples == 10000, "sample count");
  }
}

// 6d. symbolic_equiv against exhaustive comparison on small automata.
void property_brute_force(Check& c) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> dn(1, 3), dk(1, 4);
  std::size_t equal = 0, different = 0;
  for (int i = 0; i < 300 && c.ok; ++i) {
    auto a = random_sma({dn(rng), dk(rng), rng(), 2, 6});
    SMealy b;
    if (i % 3 == 1) {
      OutputOracle oq(a);
      SimulatedEquivOracle eq(a, CexMode::Lexmin);
      b = learn(oq, eq, a.algebra(), default_partition(a.algebra())).hypothesis;
    } else {
      b = random_sma({dn(rng), dk(rng), rng(), 2, 6});
    }
    // Letters: the domain minimum and every guard boundary of both machines.
    std::set<Coord> letters{0};
    for (const auto* m : {&a, &b})
      for (const auto& t : m->transitions())
        for (const auto& iv : t.guard.intervals()) {
          letters.insert(iv.lo);
          if (iv.hi) letters.insert(*iv.hi);
        }
    // Transition tables by scanning guards.
    auto table = [&](const SMealy& m) {
      std::vector<std::vector<std::pair<std::size_t, std::string>>> tab(m.num_states());
      for (std::size_t q = 0; q < m.num_states(); ++q)
        for (Coord x : letters)
          for (const auto& t : m.transitions())
            if (t.from == q && t.guard.denotes({x})) tab[q].push_back({t.to, m.outputs()[t.out]});
      return tab;
    };
    auto ta = table(a), tb = table(b);
    const std::size_t L = 10, nl = letters.size();
    // Enumerates every word up to length L; the verdict for a state pair
    // and remaining length is cached because it cannot change.
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, bool> memo;
    std::function<bool(std::size_t, std::size_t, std::size_t)> agree = [&](std::size_t p, std::size_t q,
                                                                           std::size_t rem) {
      if (rem == 0) return true;
      auto key = std::make_tuple(p, q, rem);
      if (auto it = memo.find(key); it != memo.end()) return it->second;
      bool ok = true;
      for (std::size_t x = 0; x < nl && ok; ++x)
        ok = ta[p][x].second == tb[q][x].second && agree(ta[p][x].first, tb[q][x].first, rem - 1);
      return memo[key] = ok;
    };
    bool brute = agree(0, 0, L);
    auto w = symbolic_equiv(a, b);
    c.require(brute == !w, "instance " + std::to_string(i) + ": symbolic_equiv disagrees with enumeration");
    if (w) c.require(a.run(*w) != b.run(*w), "witness does not distinguish");
    (w ? different : equal)++;
  }
  c.require(equal >= 50 && different >= 50, "too few instances of one verdict");
}

bool property_suite() {
  auto start = Clock::now();
  Check a, b, cc, d;
  property_learning(a);
  property_partition(b);
  property_algebra(cc);
  property_brute_force(d);
  Check all;
  for (auto* part : {&a, &b, &cc, &d})
    if (!part->ok) all.require(false, part->why.str());
  double t = seconds_since(start);
  all.require(t < 600.0, "runtime " + std::to_string(t) + " s");
  std::ostringstream info;
  info << "(a) " << (a.ok ? "ok" : "fail") << " (b) " << (b.ok ? "ok" : "fail") << " (c) " << (cc.ok ? "ok" : "fail")
       << " (d) " << (d.ok ? "ok" : "fail") << " in " << t << " s";
  return report(6, "property suite", all, info.str());
}

}  // namespace

int main() {
  bool ok = true;
  ok &= golden_trace();
  ok &= lower_bound();
  ok &= benchmark(3, "MH", make_mh(), 300.0, "eq 36, oq 6516, |Sigma_E^final| 36, m 4, bound 14,309");
  ok &= benchmark(4, "ATGS", make_atgs(), 3600.0, "eq 66, oq 86446.8, |E| 6, bound 168,592");
  ok &= random_scaling();
  ok &= property_suite();
  return ok ? 0 : 1;
}
