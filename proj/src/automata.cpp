#include "smlearn/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

namespace smlearn {

SMealy::SMealy(AlgebraPtr alg, std::size_t states, std::size_t initial, std::vector<std::string> outputs,
               const std::vector<TransitionSpec>& transitions)
    : alg_(std::move(alg)), states_(states) {
  if (!alg_) throw AutomatonError("automaton needs an algebra");
  if (states_ == 0) throw AutomatonError("automaton needs at least one state");
  if (initial >= states_) throw AutomatonError("initial state out of range");

  auto output_index = [&](const std::string& o) {
    auto it = std::find(outputs_.begin(), outputs_.end(), o);
    if (it != outputs_.end()) return static_cast<std::size_t>(it - outputs_.begin());
    outputs_.push_back(o);
    return outputs_.size() - 1;
  };
  for (const auto& o : outputs) output_index(o);

  auto renumber = [&](std::size_t q) { return q == initial ? 0 : (q == 0 ? initial : q); };
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Predicate> merged;
  for (const auto& t : transitions) {
    if (t.from >= states_ || t.to >= states_) throw AutomatonError("transition state out of range");
    if (!same_algebra(t.guard.algebra(), alg_)) throw AutomatonError("guard algebra mismatch");
    auto key = std::make_tuple(renumber(t.from), renumber(t.to), output_index(t.out));
    auto it = merged.find(key);
    if (it == merged.end()) merged.emplace(key, t.guard);
    else it->second = join(it->second, t.guard);
  }
  first_.assign(states_ + 1, 0);
  for (auto& [key, guard] : merged) {
    if (guard.is_empty()) continue;
    auto [from, to, out] = key;
    trans_.push_back({from, guard, to, out});
    ++first_[from + 1];
  }
  for (std::size_t q = 0; q < states_; ++q) first_[q + 1] += first_[q];
}

std::vector<const Transition*> SMealy::transitions_from(std::size_t q) const {
  std::vector<const Transition*> out;
  for (std::size_t i = first_.at(q); i < first_.at(q + 1); ++i) out.push_back(&trans_[i]);
  return out;
}

std::pair<std::size_t, std::size_t> SMealy::step(std::size_t q, const Char& a) const {
  if (q >= states_) throw AutomatonError("state out of range");
  for (std::size_t i = first_[q]; i < first_[q + 1]; ++i)
    if (trans_[i].guard.denotes(a)) return {trans_[i].to, trans_[i].out};
  throw AutomatonError("no transition from state " + std::to_string(q) + " on " + alg_->format(a));
}

std::string SMealy::run(const Word& w) const {
  if (w.empty()) throw AutomatonError("run needs a non-empty word");
  std::size_t q = 0, o = 0;
  for (const auto& a : w) std::tie(q, o) = step(q, a);
  return outputs_[o];
}

std::vector<Violation> validate(const SMealy& m) {
  std::vector<Violation> out;
  const auto& ts = m.transitions();
  for (std::size_t q = 0; q < m.num_states(); ++q) {
    Predicate covered = Predicate::bottom(m.algebra());
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (ts[i].from == q) idx.push_back(i);
    for (std::size_t x = 0; x < idx.size(); ++x) {
      for (std::size_t y = x + 1; y < idx.size(); ++y) {
        Predicate overlap = meet(ts[idx[x]].guard, ts[idx[y]].guard);
        if (!overlap.is_empty())
          out.push_back({Violation::Kind::Nondeterministic, q, idx[x], idx[y], overlap,
                         "state " + std::to_string(q) + ": guards overlap on " + overlap.to_string()});
      }
      covered = join(covered, ts[idx[x]].guard);
    }
    if (!covered.is_top()) {
      Predicate gap = complement(covered);
      out.push_back({Violation::Kind::Incomplete, q, 0, 0, gap,
                     "state " + std::to_string(q) + ": uncovered " + gap.to_string()});
    }
  }
  return out;
}

void require_valid(const SMealy& m) {
  auto v = validate(m);
  if (!v.empty()) throw AutomatonError("invalid automaton: " + v.front().message);
}

std::size_t ConcreteMealy::letter(const Char& a) const {
  auto it = std::find(alphabet.begin(), alphabet.end(), a);
  if (it == alphabet.end()) throw AutomatonError("character outside the concrete alphabet");
  return static_cast<std::size_t>(it - alphabet.begin());
}

std::string ConcreteMealy::run(const Word& w) const {
  if (w.empty()) throw AutomatonError("run needs a non-empty word");
  std::size_t q = initial, o = 0;
  for (const auto& a : w) {
    std::size_t i = q * alphabet.size() + letter(a);
    o = out[i];
    q = next[i];
  }
  return outputs[o];
}

std::optional<Word> symbolic_equiv(const SMealy& a, const SMealy& b) {
  if (!same_algebra(a.algebra(), b.algebra())) throw AutomatonError("algebra mismatch");
  const std::size_t nb = b.num_states();
  struct Visit {
    bool seen = false;
    std::size_t parent = 0;
    Char via;
  };
  std::vector<Visit> visit(a.num_states() * nb);
  auto path = [&](std::size_t pair) {
    Word w;
    while (pair != 0) {
      w.push_back(visit[pair].via);
      pair = visit[pair].parent;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  std::deque<std::size_t> queue{0};
  visit[0].seen = true;
  while (!queue.empty()) {
    std::size_t pair = queue.front();
    queue.pop_front();
    for (const Transition* ta : a.transitions_from(pair / nb)) {
      for (const Transition* tb : b.transitions_from(pair % nb)) {
        Predicate m = meet(ta->guard, tb->guard);
        if (m.is_empty()) continue;
        Char c = m.witness();
        if (a.outputs()[ta->out] != b.outputs()[tb->out]) {
          Word w = path(pair);
          w.push_back(c);
          return w;
        }
        std::size_t succ = ta->to * nb + tb->to;
        if (!visit[succ].seen) {
          visit[succ] = {true, pair, c};
          queue.push_back(succ);
        }
      }
    }
  }
  return std::nullopt;
}

ConcreteMealy restrict_to(const SMealy& m, std::vector<Char> sigma) {
  if (sigma.empty()) throw AutomatonError("restriction alphabet must be non-empty");
  std::sort(sigma.begin(), sigma.end());
  sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
  ConcreteMealy c;
  c.states = m.num_states();
  c.initial = 0;
  c.outputs = m.outputs();
  c.next.resize(c.states * sigma.size());
  c.out.resize(c.states * sigma.size());
  for (std::size_t q = 0; q < c.states; ++q)
    for (std::size_t i = 0; i < sigma.size(); ++i)
      std::tie(c.next[q * sigma.size() + i], c.out[q * sigma.size() + i]) = m.step(q, sigma[i]);
  c.alphabet = std::move(sigma);
  return c;
}

}  // namespace smlearn
