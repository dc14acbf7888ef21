#include "smlearn/partition.hpp"

#include <algorithm>
#include <utility>

namespace smlearn {

namespace {

struct Sample {
  Char c;
  std::size_t group;
};

// Validated samples in ascending order, one entry per distinct character.
std::vector<Sample> collect(const AlgebraPtr& alg, const SampleList& L) {
  if (L.empty()) throw PartitionError("sample list must have at least one group");
  std::vector<Sample> all;
  for (std::size_t g = 0; g < L.size(); ++g)
    for (const auto& c : L[g]) {
      if (c.size() != alg->arity()) throw PartitionError("sample arity does not match the algebra");
      if (!alg->contains(c)) throw PartitionError("sample outside the domain: " + alg->format(c));
      all.push_back({c, g});
    }
  if (all.empty()) throw PartitionError("sample list has no samples");
  std::sort(all.begin(), all.end(), [](const Sample& a, const Sample& b) {
    return a.c != b.c ? a.c < b.c : a.group < b.group;
  });
  std::vector<Sample> out;
  for (auto& s : all) {
    if (!out.empty() && out.back().c == s.c) {
      if (out.back().group != s.group) throw PartitionError("sample sets overlap at " + alg->format(s.c));
      continue;
    }
    out.push_back(std::move(s));
  }
  return out;
}

bool dominated(const Char& k, const Char& p) {
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] > p[i]) return false;
  return true;
}

std::size_t owner(const std::vector<Sample>& K, const Char& p) {
  for (std::size_t i = K.size(); i-- > 0;)
    if (dominated(K[i].c, p)) return K[i].group;
  return K.front().group;
}

detail::Section build_grid(const std::vector<std::vector<Coord>>& cuts, const std::vector<std::size_t>& owners,
                           std::size_t group, std::size_t k, std::size_t prefix) {
  detail::Section s;
  if (k == cuts.size()) {
    s.value = owners[prefix] == group;
    return s;
  }
  for (std::size_t i = 0; i < cuts[k].size(); ++i) {
    s.starts.push_back(cuts[k][i]);
    s.pieces.push_back(build_grid(cuts, owners, group, k + 1, prefix * cuts[k].size() + i));
  }
  detail::canonicalize(s);
  return s;
}

}  // namespace

PartitionResult partition_intervals(const AlgebraPtr& alg, const SampleList& L) {
  if (alg->arity() != 1) throw PartitionError("partition_intervals needs a 1-D algebra");
  auto samples = collect(alg, L);
  std::vector<std::vector<std::vector<Interval>>> parts(L.size());
  std::optional<Coord> b;
  for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
    Coord a = it->c[0];
    parts[it->group].push_back({Interval{a, b}});
    b = a;
  }
  const Coord lo = alg->axis(0).lo();
  if (*b > lo) parts[samples.front().group].push_back({Interval{lo, b}});
  PartitionResult out;
  for (const auto& p : parts) out.push_back(Predicate::from_boxes(alg, p));
  return out;
}

PartitionResult partition_product(const AlgebraPtr& alg, const SampleList& L) {
  auto samples = collect(alg, L);
  const std::size_t d = alg->arity();

  std::vector<Sample> K{{alg->minimum(), samples.front().group}};
  for (const auto& s : samples) {
    if (s.c == K.front().c) continue;
    if (owner(K, s.c) != s.group) K.push_back(s);
  }

  std::vector<std::vector<Coord>> cuts(d);
  for (std::size_t k = 0; k < d; ++k) {
    for (const auto& s : K) cuts[k].push_back(s.c[k]);
    std::sort(cuts[k].begin(), cuts[k].end());
    cuts[k].erase(std::unique(cuts[k].begin(), cuts[k].end()), cuts[k].end());
  }

  std::size_t cells = 1;
  for (const auto& c : cuts) cells *= c.size();
  std::vector<std::size_t> owners(cells);
  Char corner(d);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    std::size_t rest = idx;
    for (std::size_t k = d; k-- > 0;) {
      corner[k] = cuts[k][rest % cuts[k].size()];
      rest /= cuts[k].size();
    }
    owners[idx] = owner(K, corner);
  }

  PartitionResult out;
  for (std::size_t g = 0; g < L.size(); ++g)
    out.push_back(Predicate::from_section(alg, build_grid(cuts, owners, g, 0, 0)));
  return out;
}

PartitionResult partition_equality(const AlgebraPtr& alg, const SampleList& L) {
  if (alg->kind() != AlgebraKind::Equality) throw PartitionError("partition_equality needs the equality algebra");
  collect(alg, L);
  PartitionResult out(L.size(), Predicate::bottom(alg));
  Predicate others = Predicate::bottom(alg);
  for (std::size_t g = 1; g < L.size(); ++g) {
    for (const auto& c : L[g]) out[g] = join(out[g], Predicate::equals(alg, c[0]));
    others = join(others, out[g]);
  }
  out[0] = complement(others);
  return out;
}

PartitionFn default_partition(const AlgebraPtr& alg) {
  switch (alg->kind()) {
    case AlgebraKind::IntervalNat:
    case AlgebraKind::IntervalReal:
      return partition_intervals;
    case AlgebraKind::Equality:
      return partition_equality;
    case AlgebraKind::Product:
      return partition_product;
  }
  throw PartitionError("no partitioning function for this algebra");
}

}  // namespace smlearn
