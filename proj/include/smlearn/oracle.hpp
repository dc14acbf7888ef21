#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "smlearn/automata.hpp"
#include "smlearn/obstable.hpp"
#include "smlearn/partition.hpp"

namespace smlearn {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The target and hypothesis differ symbolically, yet no disagreement exists
// over the essential characters within the product-size depth bound.
class OracleAssumptionViolation : public OracleError {
 public:
  using OracleError::OracleError;
};

class OutputOracle : public OutputChannel {
 public:
  explicit OutputOracle(const SMealy& target) : target_(&target) {}
  std::string output_query(const Word& w) override;
  std::size_t distinct() const { return seen_.size(); }
  std::size_t repeated() const { return repeated_; }

 private:
  const SMealy* target_;
  std::unordered_map<Word, std::string, WordHash> seen_;
  std::size_t repeated_ = 0;
};

class EquivalenceOracle {
 public:
  virtual ~EquivalenceOracle() = default;
  // nullopt means "true"; otherwise a counterexample.
  virtual std::optional<Word> equivalence_query(const SMealy& hyp) = 0;
};

// Guard lower corners plus the domain minimum; for products the set is also
// closed under componentwise max. Checked to reconstruct every state's
// partition through `partition`.
std::vector<Char> essential_characters(const SMealy& target, const PartitionFn& partition);
std::vector<Char> essential_characters(const SMealy& target);

enum class CexMode { Lexmin, Random };

class SimulatedEquivOracle : public EquivalenceOracle {
 public:
  SimulatedEquivOracle(const SMealy& target, CexMode mode, std::uint64_t seed = 0,
                       std::optional<std::vector<Char>> essential = std::nullopt);
  std::optional<Word> equivalence_query(const SMealy& hyp) override;

  const std::vector<Char>& essential() const { return essential_; }
  std::size_t queries() const { return queries_; }

 private:
  Word search(const SMealy& hyp);

  const SMealy* target_;
  CexMode mode_;
  std::mt19937_64 rng_;
  std::vector<Char> essential_;
  ConcreteMealy target_restricted_;
  std::size_t queries_ = 0;
};

// Replays a fixed counterexample list, then answers "true".
class ScriptedOracle : public EquivalenceOracle {
 public:
  ScriptedOracle(const SMealy& target, std::vector<Word> script) : target_(&target), script_(std::move(script)) {}
  std::optional<Word> equivalence_query(const SMealy& hyp) override;

 private:
  const SMealy* target_;
  std::vector<Word> script_;
  std::size_t next_ = 0;
};

}  // namespace smlearn
