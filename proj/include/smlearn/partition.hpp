#pragma once

#include <functional>
#include <vector>

#include "smlearn/algebra.hpp"

namespace smlearn {

class PartitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// l_1 ... l_k: pairwise disjoint finite character sets.
using SampleList = std::vector<std::vector<Char>>;
using PartitionResult = std::vector<Predicate>;
using PartitionFn = std::function<PartitionResult(const AlgebraPtr&, const SampleList&)>;

// Descending sweep over a 1-D ordered domain.
PartitionResult partition_intervals(const AlgebraPtr& alg, const SampleList& L);

// Product domains. A sample is kept as a boundary when the boundaries kept so
// far (scanned in ascending lexicographic order) would assign it to another
// group; every point belongs to the group of the lexicographically greatest
// boundary it dominates componentwise. The domain minimum acts as a boundary
// of the group holding the lexicographically smallest sample.
PartitionResult partition_product(const AlgebraPtr& alg, const SampleList& L);

// Groups 2..k get their own equalities; group 1 gets everything else.
PartitionResult partition_equality(const AlgebraPtr& alg, const SampleList& L);

// The partitioning function matching the algebra kind.
PartitionFn default_partition(const AlgebraPtr& alg);

}  // namespace smlearn
