#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smlearn/automata.hpp"
#include "smlearn/obstable.hpp"
#include "smlearn/oracle.hpp"
#include "smlearn/partition.hpp"

namespace smlearn {

class LearningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LearnStats {
  std::size_t eq_queries = 0;
  std::size_t output_queries = 0;  // distinct words
  std::size_t repeated_queries = 0;
  std::size_t sigmaE_size = 0;
  std::size_t R_size = 0;
  std::size_t E_size = 0;
  std::size_t max_cex_len = 0;
  std::size_t rounds = 0;
  std::chrono::duration<double, std::milli> wall_time{0};
};

// Evidence states are the rows of S in S order; the alphabet is Sigma_E in
// insertion order.
ConcreteMealy build_evidence(const ObservationTable& T);
SMealy sep_pred(const ConcreteMealy& evidence, const AlgebraPtr& alg, const PartitionFn& P);

struct LearnEvent {
  enum class Kind { Repair, Hypothesis, Counterexample };
  Kind kind;
  const ObservationTable* table;  // state after the event
  Defect defect;                  // Repair: what was repaired
  const SMealy* hypothesis = nullptr;
  const ConcreteMealy* evidence = nullptr;
  Word cex;
};

struct LearnConfig {
  std::optional<Char> a0;  // default: the domain minimum
  RepairOrder order = RepairOrder::ConsistentFirst;
  std::size_t max_rounds = 10000;
  // Assert symbolic compatibility of each hypothesis with its table.
  bool check_compatibility = true;
  std::function<void(const LearnEvent&)> observer;
};

struct LearnResult {
  SMealy hypothesis;
  LearnStats stats;
};

LearnResult learn(OutputChannel& output, EquivalenceOracle& equiv, const AlgebraPtr& alg, const PartitionFn& P,
                  const LearnConfig& config = {});

// Theorem bound on output queries for n states, m = max counterexample
// length and s = |Sigma_E^final|.
std::size_t output_query_bound(std::size_t n, std::size_t m, std::size_t s);

}  // namespace smlearn
