#pragma once

#include <string>
#include <vector>

#include "smlearn/automata.hpp"

namespace fixtures {

using namespace smlearn;

inline Predicate iv(const AlgebraPtr& alg, Coord lo, std::optional<Coord> hi) {
  return Predicate::interval(alg, lo, hi);
}

// Target of the worked example, transcribed from its figure.
inline SMealy worked_target() {
  auto a = Algebra::interval_nat();
  return SMealy(a, 4, 0, {"S", "B", "P"},
                {{0, iv(a, 0, 20), 1, "S"},
                 {0, iv(a, 20, std::nullopt), 0, "B"},
                 {1, iv(a, 20, std::nullopt), 1, "B"},
                 {1, iv(a, 0, 20), 2, "S"},
                 {2, iv(a, 10, std::nullopt), 1, "P"},
                 {2, iv(a, 0, 10), 3, "P"},
                 {3, Predicate::top(a), 0, "P"}});
}

// Second hypothesis: one state, [0,20)|S and [20,inf)|B.
inline SMealy worked_hyp2() {
  auto a = Algebra::interval_nat();
  return SMealy(a, 1, 0, {"S", "B", "P"}, {{0, iv(a, 0, 20), 0, "S"}, {0, iv(a, 20, std::nullopt), 0, "B"}});
}

// Third hypothesis: the target with q2's [0,20)|P to q3 and [20,inf)|P to q1.
inline SMealy worked_hyp3() {
  auto a = Algebra::interval_nat();
  return SMealy(a, 4, 0, {"S", "B", "P"},
                {{0, iv(a, 0, 20), 1, "S"},
                 {0, iv(a, 20, std::nullopt), 0, "B"},
                 {1, iv(a, 20, std::nullopt), 1, "B"},
                 {1, iv(a, 0, 20), 2, "S"},
                 {2, iv(a, 20, std::nullopt), 1, "P"},
                 {2, iv(a, 0, 20), 3, "P"},
                 {3, Predicate::top(a), 0, "P"}});
}

inline Word word(std::initializer_list<Coord> xs) {
  Word w;
  for (Coord x : xs) w.push_back({x});
  return w;
}

// Reference interpreter: follows guards by linear scan.
inline std::string reference_run(const SMealy& m, const Word& w) {
  std::size_t q = 0;
  std::string out;
  for (const auto& a : w) {
    for (const auto& t : m.transitions())
      if (t.from == q && t.guard.denotes(a)) {
        q = t.to;
        out = m.outputs()[t.out];
        break;
      }
  }
  return out;
}

}  // namespace fixtures
