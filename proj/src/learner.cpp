#include "smlearn/learner.hpp"

#include <algorithm>
#include <unordered_map>

namespace smlearn {

ConcreteMealy build_evidence(const ObservationTable& T) {
  Defect d = T.check();
  if (d.kind != DefectKind::Cohesive)
    throw LearningError(std::string("evidence automaton needs a cohesive table, table is ") + defect_name(d.kind));
  const auto S = T.S();
  const auto& sigma = T.sigma_e();

  std::vector<Word> succ_words;
  for (const auto& s : S)
    for (const auto& a : sigma) {
      Word w = s;
      w.push_back(a);
      succ_words.push_back(std::move(w));
    }
  auto s_ids = T.row_ids(S);
  auto succ_ids = T.row_ids(succ_words);

  std::unordered_map<std::size_t, std::size_t> state_of;
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < S.size(); ++i)
    if (state_of.emplace(s_ids[i], state_of.size()).second) reps.push_back(i);

  ConcreteMealy m;
  m.alphabet = sigma;
  m.states = reps.size();
  m.initial = 0;
  m.outputs = T.gamma();
  for (std::size_t q = 0; q < reps.size(); ++q) {
    std::size_t i = reps[q];
    for (std::size_t a = 0; a < sigma.size(); ++a) {
      m.next.push_back(state_of.at(succ_ids[i * sigma.size() + a]));
      const std::string& o = T.f(S[i], Word{sigma[a]});
      m.out.push_back(static_cast<std::size_t>(std::find(m.outputs.begin(), m.outputs.end(), o) - m.outputs.begin()));
    }
  }
  return m;
}

SMealy sep_pred(const ConcreteMealy& evidence, const AlgebraPtr& alg, const PartitionFn& P) {
  const std::size_t n_out = evidence.outputs.size();
  const std::size_t sigma = evidence.alphabet.size();
  std::vector<TransitionSpec> specs;
  for (std::size_t q = 0; q < evidence.states; ++q) {
    SampleList L(evidence.states * n_out);
    for (std::size_t a = 0; a < sigma; ++a)
      L[evidence.next[q * sigma + a] * n_out + evidence.out[q * sigma + a]].push_back(evidence.alphabet[a]);
    PartitionResult parts = P(alg, L);
    if (parts.size() != L.size()) throw LearningError("partitioning function changed the group count");
    for (std::size_t g = 0; g < parts.size(); ++g)
      if (!parts[g].is_empty()) specs.push_back({q, parts[g], g / n_out, evidence.outputs[g % n_out]});
  }
  return SMealy(alg, evidence.states, evidence.initial, evidence.outputs, specs);
}

namespace {

void check_compatible(const ObservationTable& T, const SMealy& hyp) {
  auto rows = T.S();
  auto r = T.R();
  rows.insert(rows.end(), r.begin(), r.end());
  for (const auto& w : rows)
    for (const auto& e : T.columns()) {
      Word we = w;
      we.insert(we.end(), e.begin(), e.end());
      if (hyp.run(we) != T.f(w, e))
        throw LearningError("hypothesis is not symbolically compatible with the table at " +
                            T.algebra()->format(we));
    }
}

}  // namespace

LearnResult learn(OutputChannel& output, EquivalenceOracle& equiv, const AlgebraPtr& alg, const PartitionFn& P,
                  const LearnConfig& config) {
  auto start = std::chrono::steady_clock::now();
  ObservationTable T(alg, config.a0 ? *config.a0 : alg->minimum(), output);
  LearnStats stats;
  auto notify = [&](LearnEvent ev) {
    if (config.observer) config.observer(ev);
  };

  for (;;) {
    for (Defect d = T.check(config.order); d.kind != DefectKind::Cohesive; d = T.check(config.order)) {
      T.repair(d);
      notify({LearnEvent::Kind::Repair, &T, d, nullptr, nullptr, {}});
    }
    if (++stats.rounds > config.max_rounds)
      throw LearningError("round cap of " + std::to_string(config.max_rounds) + " exceeded");

    ConcreteMealy evidence = build_evidence(T);
    SMealy hyp = sep_pred(evidence, alg, P);
    if (config.check_compatibility) check_compatible(T, hyp);
    notify({LearnEvent::Kind::Hypothesis, &T, {}, &hyp, &evidence, {}});

    ++stats.eq_queries;
    std::optional<Word> cex = equiv.equivalence_query(hyp);
    if (!cex) {
      stats.output_queries = T.distinct_queries();
      stats.repeated_queries = T.repeated_queries();
      stats.sigmaE_size = T.sigma_e().size();
      stats.R_size = T.R().size();
      stats.E_size = T.E().size();
      stats.wall_time = std::chrono::steady_clock::now() - start;
      return {std::move(hyp), stats};
    }
    stats.max_cex_len = std::max(stats.max_cex_len, cex->size());
    T.add_counterexample(*cex);
    notify({LearnEvent::Kind::Counterexample, &T, {}, nullptr, nullptr, *cex});
  }
}

std::size_t output_query_bound(std::size_t n, std::size_t m, std::size_t s) {
  return (s + m + 1) * n * n + (2 * m + s + 1) * s * n + m * s * s;
}

}  // namespace smlearn
