#include "smlearn/algebra.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>

namespace smlearn {

namespace {

constexpr Coord kSignBit = Coord{1} << 63;

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::size_t mix(std::size_t h, std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (v ^ (v >> 31));
}

}  // namespace

Coord real_key(double x) {
  if (!std::isfinite(x)) throw AlgebraError("real characters must be finite");
  if (x == 0.0) x = 0.0;  // fold -0.0 into +0.0
  Coord bits = std::bit_cast<Coord>(x);
  return (bits & kSignBit) ? ~bits : (bits | kSignBit);
}

double key_real(Coord k) {
  Coord bits = (k & kSignBit) ? (k & ~kSignBit) : ~k;
  return std::bit_cast<double>(bits);
}

double next_above(double x) {
  if (!std::isfinite(x)) throw AlgebraError("next_above needs a finite value");
  double y = std::nextafter(x, std::numeric_limits<double>::infinity());
  if (std::isinf(y)) throw AlgebraError("next_above overflows to infinity");
  return y == 0.0 ? 0.0 : y;
}

Axis Axis::nat(std::uint64_t min) {
  Axis a;
  a.kind = AxisKind::Nat;
  a.nat_min = min;
  return a;
}

Axis Axis::real(double min) {
  Axis a;
  a.kind = AxisKind::Real;
  real_key(min);
  a.real_min = min == 0.0 ? 0.0 : min;
  return a;
}

Axis Axis::equality(std::optional<std::uint64_t> carrier) {
  if (carrier && *carrier == 0) throw AlgebraError("equality carrier must be non-empty");
  Axis a;
  a.kind = AxisKind::Equality;
  a.carrier = carrier;
  return a;
}

Coord Axis::lo() const {
  switch (kind) {
    case AxisKind::Nat: return nat_min;
    case AxisKind::Real: return real_key(real_min);
    case AxisKind::Equality: return 0;
  }
  return 0;
}

std::optional<Coord> Axis::hi() const {
  switch (kind) {
    case AxisKind::Nat: return std::nullopt;
    case AxisKind::Real: return real_key(std::numeric_limits<double>::max()) + 1;
    case AxisKind::Equality: return carrier;
  }
  return std::nullopt;
}

bool Axis::contains(Coord c) const {
  auto h = hi();
  return c >= lo() && (!h || c < *h);
}

Coord Axis::successor(Coord c) const {
  if (kind == AxisKind::Real) return real_key(next_above(key_real(c)));
  if (c == std::numeric_limits<Coord>::max()) throw AlgebraError("successor overflows");
  return c + 1;
}

Coord Axis::encode(double v) const {
  if (kind == AxisKind::Real) return real_key(v);
  if (!(v >= 0) || v != std::floor(v) || v >= 18446744073709551616.0)
    throw AlgebraError("expected a natural number, got " + shortest(v));
  return static_cast<Coord>(v);
}

std::string Axis::format(Coord c) const {
  if (kind != AxisKind::Real) return std::to_string(c);
  double x = key_real(c);
  std::string s = shortest(x);
  if (c > lo()) {
    double prev = std::nextafter(x, -std::numeric_limits<double>::infinity());
    std::string p = shortest(prev == 0.0 ? 0.0 : prev);
    if (p.size() + 4 < s.size()) return "na(" + p + ")";
  }
  return s;
}

AlgebraPtr Algebra::interval_nat(std::uint64_t min) {
  return AlgebraPtr(new Algebra(AlgebraKind::IntervalNat, {Axis::nat(min)}));
}

AlgebraPtr Algebra::interval_real(double min) {
  return AlgebraPtr(new Algebra(AlgebraKind::IntervalReal, {Axis::real(min)}));
}

AlgebraPtr Algebra::equality(std::optional<std::uint64_t> carrier) {
  return AlgebraPtr(new Algebra(AlgebraKind::Equality, {Axis::equality(carrier)}));
}

AlgebraPtr Algebra::product(std::vector<Axis> axes) {
  if (axes.empty()) throw AlgebraError("product arity must be at least 1");
  return AlgebraPtr(new Algebra(AlgebraKind::Product, std::move(axes)));
}

Char Algebra::minimum() const {
  Char c;
  for (const auto& a : axes_) c.push_back(a.lo());
  return c;
}

bool Algebra::contains(const Char& c) const {
  if (c.size() != axes_.size()) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!axes_[i].contains(c[i])) return false;
  return true;
}

void Algebra::check(const Char& c) const {
  if (c.size() != axes_.size())
    throw AlgebraError("character arity " + std::to_string(c.size()) + " does not match algebra arity " +
                       std::to_string(axes_.size()));
  if (!contains(c)) throw AlgebraError("character outside the domain");
}

std::string Algebra::format(const Char& c) const {
  if (kind_ != AlgebraKind::Product && c.size() == 1) return axes_[0].format(c[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ", ";
    s += i < axes_.size() ? axes_[i].format(c[i]) : std::to_string(c[i]);
  }
  return s + ")";
}

std::string Algebra::format(const Word& w) const {
  if (w.empty()) return "ε";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "·";
    s += format(w[i]);
  }
  return s;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return a && b && (a == b || *a == *b);
}

namespace detail {

void canonicalize(Section& s) {
  if (s.is_leaf()) return;
  std::vector<Coord> starts;
  std::vector<Section> pieces;
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    if (!pieces.empty() && pieces.back() == s.pieces[i]) continue;
    starts.push_back(s.starts[i]);
    pieces.push_back(std::move(s.pieces[i]));
  }
  if (pieces.size() == 1 && pieces.front().is_leaf()) {
    Section only = std::move(pieces.front());
    s = std::move(only);
    return;
  }
  s.starts = std::move(starts);
  s.pieces = std::move(pieces);
}

}  // namespace detail

namespace {

using detail::Section;

enum class Op { Meet, Join };

Section leaf(bool v) {
  Section s;
  s.value = v;
  return s;
}

Section combine(const Section& a, const Section& b, Op op) {
  if (a.is_leaf()) {
    if (op == Op::Meet) return a.value ? b : a;
    return a.value ? a : b;
  }
  if (b.is_leaf()) {
    if (op == Op::Meet) return b.value ? a : b;
    return b.value ? b : a;
  }
  Section r;
  std::size_t i = 0, j = 0;
  for (;;) {
    r.starts.push_back(std::max(a.starts[i], b.starts[j]));
    r.pieces.push_back(combine(a.pieces[i], b.pieces[j], op));
    bool more_a = i + 1 < a.starts.size();
    bool more_b = j + 1 < b.starts.size();
    if (!more_a && !more_b) break;
    if (more_a && more_b) {
      Coord na = a.starts[i + 1], nb = b.starts[j + 1];
      if (na <= nb) ++i;
      if (nb <= na) ++j;
    } else if (more_a) {
      ++i;
    } else {
      ++j;
    }
  }
  detail::canonicalize(r);
  return r;
}

Section negate(const Section& a) {
  if (a.is_leaf()) return leaf(!a.value);
  Section r;
  r.starts = a.starts;
  r.pieces.reserve(a.pieces.size());
  for (const auto& p : a.pieces) r.pieces.push_back(negate(p));
  return r;
}

void check_same(const Predicate& a, const Predicate& b) {
  if (!same_algebra(a.algebra(), b.algebra())) throw AlgebraError("algebra mismatch");
}

// Clips [lo, hi) to the axis domain; nullopt when the result is empty.
std::optional<Interval> clip(const Axis& axis, Coord lo, std::optional<Coord> hi) {
  if (hi && lo >= *hi) throw AlgebraError("interval lower bound must be below upper bound");
  auto ahi = axis.hi();
  Interval r{std::max(lo, axis.lo()), hi};
  if (ahi && (!r.hi || *r.hi >= *ahi)) r.hi = std::nullopt;
  if (ahi && r.lo >= *ahi) return std::nullopt;
  if (r.hi && *r.hi <= r.lo) return std::nullopt;
  return r;
}

std::string format_interval(const Axis& axis, const Interval& iv) {
  return "[" + axis.format(iv.lo) + "," + (iv.hi ? axis.format(*iv.hi) : std::string("inf")) + ")";
}

std::string format_set(const Axis& axis, const IntervalSet& set) {
  std::string s;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) s += " U ";
    s += format_interval(axis, set[i]);
  }
  return set.size() > 1 ? "(" + s + ")" : s;
}

void collect_boxes(const Algebra& alg, const Section& s, std::size_t k, std::vector<Box>& out) {
  if (s.is_leaf()) {
    if (!s.value) return;
    Box b;
    for (std::size_t i = k; i < alg.arity(); ++i) b.push_back({Interval{alg.axis(i).lo(), std::nullopt}});
    out.push_back(std::move(b));
    return;
  }
  std::vector<std::size_t> reps;
  std::vector<IntervalSet> sets;
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    if (s.pieces[i].is_leaf() && !s.pieces[i].value) continue;
    std::optional<Coord> end;
    if (i + 1 < s.starts.size()) end = s.starts[i + 1];
    Interval iv{s.starts[i], end};
    std::size_t g = 0;
    while (g < reps.size() && !(s.pieces[reps[g]] == s.pieces[i])) ++g;
    if (g == reps.size()) {
      reps.push_back(i);
      sets.emplace_back();
    }
    sets[g].push_back(iv);
  }
  for (std::size_t g = 0; g < reps.size(); ++g) {
    std::vector<Box> sub;
    collect_boxes(alg, s.pieces[reps[g]], k + 1, sub);
    for (auto& sb : sub) {
      Box b;
      b.push_back(sets[g]);
      for (auto& x : sb) b.push_back(std::move(x));
      out.push_back(std::move(b));
    }
  }
}

}  // namespace

Predicate Predicate::bottom(AlgebraPtr alg) { return Predicate(std::move(alg), leaf(false)); }

Predicate Predicate::top(AlgebraPtr alg) { return Predicate(std::move(alg), leaf(true)); }

Predicate Predicate::interval(AlgebraPtr alg, Coord lo, std::optional<Coord> hi) {
  if (alg->arity() != 1) throw AlgebraError("interval needs an arity-1 algebra");
  return box(std::move(alg), {Interval{lo, hi}});
}

Predicate Predicate::box(AlgebraPtr alg, const std::vector<Interval>& per_axis) {
  if (per_axis.size() != alg->arity()) throw AlgebraError("box arity mismatch");
  std::vector<Interval> clipped;
  bool empty = false;
  for (std::size_t k = 0; k < per_axis.size(); ++k) {
    auto c = clip(alg->axis(k), per_axis[k].lo, per_axis[k].hi);
    if (!c) empty = true;
    else clipped.push_back(*c);
  }
  if (empty) return bottom(std::move(alg));
  Section sec = leaf(true);
  for (std::size_t k = per_axis.size(); k-- > 0;) {
    const Axis& axis = alg->axis(k);
    const Interval& iv = clipped[k];
    Section level;
    if (iv.lo > axis.lo()) {
      level.starts.push_back(axis.lo());
      level.pieces.push_back(leaf(false));
    }
    level.starts.push_back(iv.lo);
    level.pieces.push_back(std::move(sec));
    if (iv.hi) {
      level.starts.push_back(*iv.hi);
      level.pieces.push_back(leaf(false));
    }
    detail::canonicalize(level);
    sec = std::move(level);
  }
  return Predicate(std::move(alg), std::move(sec));
}

Predicate Predicate::from_boxes(AlgebraPtr alg, const std::vector<std::vector<Interval>>& boxes) {
  Predicate r = bottom(alg);
  for (const auto& b : boxes) r = join(r, box(alg, b));
  return r;
}

Predicate Predicate::equals(AlgebraPtr alg, Coord v) {
  if (alg->kind() != AlgebraKind::Equality) throw AlgebraError("equals needs the equality algebra");
  if (!alg->axis(0).contains(v)) throw AlgebraError("value outside the carrier");
  return interval(std::move(alg), v, v + 1);
}

Predicate Predicate::from_section(AlgebraPtr alg, detail::Section s) {
  detail::canonicalize(s);
  return Predicate(std::move(alg), std::move(s));
}

bool Predicate::denotes(const Char& a) const {
  alg_->check(a);
  const Section* s = &root_;
  std::size_t k = 0;
  while (!s->is_leaf()) {
    auto it = std::upper_bound(s->starts.begin(), s->starts.end(), a[k]);
    s = &s->pieces[static_cast<std::size_t>(it - s->starts.begin()) - 1];
    ++k;
  }
  return s->value;
}

Char Predicate::witness() const {
  if (is_empty()) throw AlgebraError("witness of an empty predicate");
  Char c;
  const Section* s = &root_;
  while (!s->is_leaf()) {
    std::size_t i = 0;
    while (s->pieces[i].is_leaf() && !s->pieces[i].value) ++i;
    c.push_back(s->starts[i]);
    s = &s->pieces[i];
  }
  for (std::size_t k = c.size(); k < alg_->arity(); ++k) c.push_back(alg_->axis(k).lo());
  return c;
}

std::vector<Box> Predicate::boxes() const {
  std::vector<Box> out;
  collect_boxes(*alg_, root_, 0, out);
  return out;
}

std::vector<std::vector<Interval>> Predicate::simple_boxes() const {
  std::vector<std::vector<Interval>> out;
  for (const auto& b : boxes()) {
    std::vector<std::vector<Interval>> acc{{}};
    for (const auto& set : b) {
      std::vector<std::vector<Interval>> next;
      for (const auto& prefix : acc)
        for (const auto& iv : set) {
          auto p = prefix;
          p.push_back(iv);
          next.push_back(std::move(p));
        }
      acc = std::move(next);
    }
    for (auto& x : acc) out.push_back(std::move(x));
  }
  return out;
}

IntervalSet Predicate::intervals() const {
  if (alg_->arity() != 1) throw AlgebraError("intervals() needs an arity-1 algebra");
  auto bs = boxes();
  return bs.empty() ? IntervalSet{} : bs.front().front();
}

std::string Predicate::to_string() const {
  if (is_empty()) return "bot";
  if (is_top()) return "top";
  if (alg_->kind() == AlgebraKind::Equality) {
    auto v = equality_view(*this);
    std::string s = v.cofinite ? "x notin {" : "x in {";
    for (std::size_t i = 0; i < v.values.size(); ++i) s += (i ? "," : "") + std::to_string(v.values[i]);
    return s + "}";
  }
  if (alg_->arity() == 1) {
    auto set = intervals();
    std::string s;
    for (std::size_t i = 0; i < set.size(); ++i) s += (i ? " U " : "") + format_interval(alg_->axis(0), set[i]);
    return s;
  }
  std::string s;
  auto bs = boxes();
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (i) s += " U ";
    for (std::size_t k = 0; k < bs[i].size(); ++k) s += (k ? "x" : "") + format_set(alg_->axis(k), bs[i][k]);
  }
  return s;
}

bool Predicate::operator==(const Predicate& o) const {
  return same_algebra(alg_, o.alg_) && root_ == o.root_;
}

Predicate meet(const Predicate& a, const Predicate& b) {
  check_same(a, b);
  return Predicate(a.alg_, combine(a.root_, b.root_, Op::Meet));
}

Predicate join(const Predicate& a, const Predicate& b) {
  check_same(a, b);
  return Predicate(a.alg_, combine(a.root_, b.root_, Op::Join));
}

Predicate complement(const Predicate& a) { return Predicate(a.alg_, negate(a.root_)); }

bool denotes(const Predicate& p, const Char& a) { return p.denotes(a); }
bool is_empty(const Predicate& p) { return p.is_empty(); }
Char witness(const Predicate& p) { return p.witness(); }

EqualitySet equality_view(const Predicate& p) {
  const auto& alg = *p.algebra();
  if (alg.kind() != AlgebraKind::Equality) throw AlgebraError("equality_view needs the equality algebra");
  constexpr Coord kLimit = 1u << 20;
  auto enumerate = [&](const IntervalSet& set) {
    std::vector<Coord> vals;
    for (const auto& iv : set) {
      if (!iv.hi || *iv.hi - iv.lo > kLimit || vals.size() > kLimit) throw AlgebraError("equality set too large to list");
      for (Coord v = iv.lo; v < *iv.hi; ++v) vals.push_back(v);
    }
    return vals;
  };
  auto set = p.intervals();
  bool open_top = !set.empty() && !set.back().hi;
  if (open_top && !alg.axis(0).carrier) return {true, enumerate(complement(p).intervals())};
  if (open_top) {
    set.back().hi = *alg.axis(0).carrier;
  }
  return {false, enumerate(set)};
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::size_t CharHash::operator()(const Char& c) const noexcept {
  std::size_t h = c.size();
  for (Coord v : c) h = mix(h, v);
  return h;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = w.size();
  for (const auto& c : w)
    for (Coord v : c) h = mix(h, v);
  return h;
}

}  // namespace smlearn
