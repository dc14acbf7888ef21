#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smlearn/algebra.hpp"

namespace smlearn {

class AutomatonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Transition {
  std::size_t from = 0;
  Predicate guard;
  std::size_t to = 0;
  std::size_t out = 0;  // index into outputs()
};

struct TransitionSpec {
  std::size_t from = 0;
  Predicate guard;
  std::size_t to = 0;
  std::string out;
};

// Symbolic Mealy automaton. Construction merges transitions sharing
// (from, to, out), drops empty guards, renumbers the initial state to 0 and
// stores transitions sorted by (from, to, out).
class SMealy {
 public:
  SMealy() = default;
  SMealy(AlgebraPtr alg, std::size_t states, std::size_t initial, std::vector<std::string> outputs,
         const std::vector<TransitionSpec>& transitions);

  const AlgebraPtr& algebra() const { return alg_; }
  std::size_t num_states() const { return states_; }
  std::size_t initial() const { return 0; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  const std::vector<Transition>& transitions() const { return trans_; }
  std::vector<const Transition*> transitions_from(std::size_t q) const;
  std::size_t num_transitions() const { return trans_.size(); }

  // (next state, output index)
  std::pair<std::size_t, std::size_t> step(std::size_t q, const Char& a) const;
  std::string run(const Word& w) const;

 private:
  AlgebraPtr alg_;
  std::size_t states_ = 0;
  std::vector<std::string> outputs_;
  std::vector<Transition> trans_;
  std::vector<std::size_t> first_;  // trans_ index range per state
};

struct Violation {
  enum class Kind { Nondeterministic, Incomplete, BadState };
  Kind kind;
  std::size_t state;
  std::size_t t1 = 0, t2 = 0;  // offending transition indices
  Predicate region;            // overlap or uncovered region
  std::string message;
};

std::vector<Violation> validate(const SMealy& m);
void require_valid(const SMealy& m);

// Concrete Mealy machine over a finite alphabet; tables are indexed by
// q * |alphabet| + letter.
struct ConcreteMealy {
  std::vector<Char> alphabet;
  std::size_t states = 0;
  std::size_t initial = 0;
  std::vector<std::string> outputs;
  std::vector<std::size_t> next;
  std::vector<std::size_t> out;

  std::size_t letter(const Char& a) const;
  std::string run(const Word& w) const;
};

// nullopt when equal, otherwise a word on which the outputs differ.
std::optional<Word> symbolic_equiv(const SMealy& a, const SMealy& b);
ConcreteMealy restrict_to(const SMealy& m, std::vector<Char> sigma);

}  // namespace smlearn
