#include "smlearn/oracle.hpp"

#include <algorithm>
#include <set>

namespace smlearn {

std::string OutputOracle::output_query(const Word& w) {
  if (w.empty()) throw OracleError("output query needs a non-empty word");
  auto it = seen_.find(w);
  if (it != seen_.end()) {
    ++repeated_;
    return it->second;
  }
  std::string o = target_->run(w);
  seen_.emplace(w, o);
  return o;
}

std::vector<Char> essential_characters(const SMealy& target, const PartitionFn& partition) {
  const AlgebraPtr& alg = target.algebra();
  if (alg->kind() == AlgebraKind::Equality)
    throw OracleError("no essential-character extraction for the equality algebra");

  std::set<Char> chars{alg->minimum()};
  for (const auto& t : target.transitions())
    for (const auto& b : t.guard.simple_boxes()) {
      Char c;
      for (const auto& iv : b) c.push_back(iv.lo);
      chars.insert(c);
    }

  if (alg->arity() > 1) {
    std::vector<Char> work(chars.begin(), chars.end());
    while (!work.empty()) {
      Char x = std::move(work.back());
      work.pop_back();
      std::vector<Char> fresh;
      for (const auto& y : chars) {
        Char z(x.size());
        for (std::size_t k = 0; k < z.size(); ++k) z[k] = std::max(x[k], y[k]);
        if (!chars.count(z)) fresh.push_back(std::move(z));
      }
      for (auto& z : fresh)
        if (chars.insert(z).second) work.push_back(std::move(z));
    }
  }

  const std::size_t n_out = target.outputs().size();
  for (std::size_t q = 0; q < target.num_states(); ++q) {
    SampleList L(target.num_states() * n_out);
    for (const auto& c : chars) {
      auto [to, out] = target.step(q, c);
      L[to * n_out + out].push_back(c);
    }
    PartitionResult parts = partition(alg, L);
    std::vector<Predicate> expected(L.size(), Predicate::bottom(alg));
    for (const Transition* t : target.transitions_from(q)) expected[t->to * n_out + t->out] = t->guard;
    for (std::size_t i = 0; i < L.size(); ++i)
      if (!(parts[i] == expected[i]))
        throw OracleError("essential characters do not reconstruct the guards of state " + std::to_string(q));
  }
  return {chars.begin(), chars.end()};
}

std::vector<Char> essential_characters(const SMealy& target) {
  return essential_characters(target, default_partition(target.algebra()));
}

SimulatedEquivOracle::SimulatedEquivOracle(const SMealy& target, CexMode mode, std::uint64_t seed,
                                           std::optional<std::vector<Char>> essential)
    : target_(&target), mode_(mode), rng_(seed) {
  essential_ = essential ? std::move(*essential) : essential_characters(target);
  std::sort(essential_.begin(), essential_.end());
  essential_.erase(std::unique(essential_.begin(), essential_.end()), essential_.end());
  target_restricted_ = restrict_to(target, essential_);
}

std::optional<Word> SimulatedEquivOracle::equivalence_query(const SMealy& hyp) {
  ++queries_;
  if (!symbolic_equiv(hyp, *target_)) return std::nullopt;
  Word cex = search(hyp);
  if (hyp.run(cex) == target_->run(cex)) throw OracleError("internal: counterexample does not distinguish");
  return cex;
}

Word SimulatedEquivOracle::search(const SMealy& hyp) {
  const ConcreteMealy H = restrict_to(hyp, essential_);
  const ConcreteMealy& T = target_restricted_;
  const std::size_t sigma = essential_.size();
  const std::size_t nt = T.states;
  const std::size_t pairs = H.states * nt;
  const std::size_t cap = pairs;

  auto succ = [&](std::size_t p, std::size_t a) {
    return H.next[(p / nt) * sigma + a] * nt + T.next[(p % nt) * sigma + a];
  };
  auto mismatch = [&](std::size_t p, std::size_t a) {
    return H.outputs[H.out[(p / nt) * sigma + a]] != T.outputs[T.out[(p % nt) * sigma + a]];
  };

  // count[r][p]: words of length r + 1 from p whose last output differs.
  std::vector<std::vector<long double>> count;
  const std::size_t init = 0;
  for (std::size_t r = 0; r < cap; ++r) {
    std::vector<long double> layer(pairs, 0.0L);
    for (std::size_t p = 0; p < pairs; ++p)
      for (std::size_t a = 0; a < sigma; ++a)
        layer[p] += r == 0 ? (mismatch(p, a) ? 1.0L : 0.0L) : count[r - 1][succ(p, a)];
    count.push_back(std::move(layer));
    if (count.back()[init] > 0) break;
  }
  if (count.back()[init] == 0)
    throw OracleAssumptionViolation("hypothesis differs from the target but not over the essential characters");

  const std::size_t L = count.size();
  Word w;
  std::size_t p = init;
  for (std::size_t i = 0; i < L; ++i) {
    std::size_t rem = L - 1 - i;
    auto weight = [&](std::size_t a) -> long double {
      return rem == 0 ? (mismatch(p, a) ? 1.0L : 0.0L) : count[rem - 1][succ(p, a)];
    };
    std::size_t pick = sigma;
    if (mode_ == CexMode::Lexmin) {
      for (std::size_t a = 0; a < sigma && pick == sigma; ++a)
        if (weight(a) > 0) pick = a;
    } else {
      long double u = std::generate_canonical<long double, 64>(rng_) * count[rem][p];
      for (std::size_t a = 0; a < sigma; ++a) {
        long double wa = weight(a);
        if (wa <= 0) continue;
        pick = a;
        if (u < wa) break;
        u -= wa;
      }
    }
    w.push_back(essential_[pick]);
    p = succ(p, pick);
  }
  return w;
}

std::optional<Word> ScriptedOracle::equivalence_query(const SMealy& hyp) {
  if (next_ < script_.size()) {
    const Word& cex = script_[next_++];
    if (hyp.run(cex) == target_->run(cex))
      throw OracleError("scripted counterexample " + hyp.algebra()->format(cex) + " does not distinguish the hypothesis");
    return cex;
  }
  if (symbolic_equiv(hyp, *target_)) throw OracleError("script exhausted but the hypothesis differs from the target");
  return std::nullopt;
}

}  // namespace smlearn
