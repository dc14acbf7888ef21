#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smlearn/learner.hpp"

namespace smlearn {

struct RunSpec {
  std::string name;
  CexMode mode = CexMode::Lexmin;
  std::uint64_t seed = 0;  // repetition i uses seed + i
  std::optional<Char> a0;
  std::size_t reps = 1;
  RepairOrder order = RepairOrder::ConsistentFirst;
};

struct RunRecord {
  std::string name;
  std::size_t states = 0;       // target
  std::size_t transitions = 0;  // target
  std::uint64_t seed = 0;
  LearnStats stats;
  std::optional<SMealy> learned;
  std::string error;  // empty on success
};

RunRecord run_once(const SMealy& target, const RunSpec& spec, std::uint64_t seed);

// Repetitions in order, one after another.
std::vector<RunRecord> run_serial(const SMealy& target, const RunSpec& spec);
// Repetitions spread over OpenMP threads; records stay in repetition order.
std::vector<RunRecord> run_parallel(const SMealy& target, const RunSpec& spec);

std::string stats_header();
std::string stats_row(const RunRecord& r);

}  // namespace smlearn
