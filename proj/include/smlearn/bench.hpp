#pragma once

#include <cstdint>
#include <string>

#include "smlearn/automata.hpp"

namespace smlearn {

class BenchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SMealy make_worked_example();
// Product of (prepareFlight, altitude, temperature, state of charge).
SMealy make_mh();
// Product of (throttle, velocity).
SMealy make_atgs();
// The 2n-state lower-bound family M_{n,k}; requires n >= 2 and k >= n.
SMealy make_lower_bound(std::size_t n, std::size_t k);

struct RandomSpec {
  std::size_t n = 1;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  std::size_t outputs = 3;
  // Boundaries are drawn from [1, range_hi]; 0 means 100 * k.
  std::uint64_t range_hi = 0;
};

SMealy random_sma(const RandomSpec& spec);

// worked-example, mh, atgs or lower:n,k.
SMealy make_builtin(const std::string& name);

}  // namespace smlearn
