#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace smlearn {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Order-preserving key of one axis value. Naturals and equality ids are stored
// as is; doubles are mapped so that integer order matches numeric order.
using Coord = std::uint64_t;

// One value per axis; tuples compare lexicographically.
using Char = std::vector<Coord>;
using Word = std::vector<Char>;

Coord real_key(double x);
double key_real(Coord k);
// Smallest double strictly greater than x.
double next_above(double x);

enum class AxisKind { Nat, Real, Equality };

struct Axis {
  AxisKind kind = AxisKind::Nat;
  std::uint64_t nat_min = 0;
  double real_min = 0.0;
  // Equality ids live in [0, carrier) when the carrier is finite.
  std::optional<std::uint64_t> carrier;

  static Axis nat(std::uint64_t min = 0);
  static Axis real(double min);
  static Axis equality(std::optional<std::uint64_t> carrier = std::nullopt);

  Coord lo() const;
  // Exclusive upper key; nullopt means unbounded.
  std::optional<Coord> hi() const;
  bool contains(Coord c) const;
  Coord successor(Coord c) const;
  Coord encode(double v) const;
  std::string format(Coord c) const;

  bool operator==(const Axis&) const = default;
};

enum class AlgebraKind { IntervalNat, IntervalReal, Equality, Product };

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

class Algebra {
 public:
  static AlgebraPtr interval_nat(std::uint64_t min = 0);
  static AlgebraPtr interval_real(double min);
  static AlgebraPtr equality(std::optional<std::uint64_t> carrier = std::nullopt);
  static AlgebraPtr product(std::vector<Axis> axes);

  AlgebraKind kind() const { return kind_; }
  std::size_t arity() const { return axes_.size(); }
  const Axis& axis(std::size_t i) const { return axes_.at(i); }
  const std::vector<Axis>& axes() const { return axes_; }
  Char minimum() const;
  bool contains(const Char& c) const;
  void check(const Char& c) const;
  std::string format(const Char& c) const;
  std::string format(const Word& w) const;

  bool operator==(const Algebra& o) const { return kind_ == o.kind_ && axes_ == o.axes_; }

 private:
  Algebra(AlgebraKind kind, std::vector<Axis> axes) : kind_(kind), axes_(std::move(axes)) {}
  AlgebraKind kind_;
  std::vector<Axis> axes_;
};

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

// Half-open [lo, hi); hi == nullopt is +infinity.
struct Interval {
  Coord lo = 0;
  std::optional<Coord> hi;
  bool operator==(const Interval&) const = default;
};
using IntervalSet = std::vector<Interval>;

namespace detail {

// Piecewise-constant function over the remaining axes. With no pieces it is
// the constant `value`; otherwise piece i covers [starts[i], starts[i+1]) on
// the current axis, starts[0] is the axis minimum and adjacent pieces differ.
// A level with a single piece exists only to reach a non-constant deeper
// axis. This makes the form canonical.
struct Section {
  bool value = false;
  std::vector<Coord> starts;
  std::vector<Section> pieces;

  bool is_leaf() const { return pieces.empty(); }
  bool operator==(const Section&) const = default;
};

// Merges adjacent equal pieces and collapses constant levels.
void canonicalize(Section& s);

}  // namespace detail

// Per-axis interval sets; the box is their cartesian product.
using Box = std::vector<IntervalSet>;

class Predicate {
 public:
  Predicate() = default;

  static Predicate bottom(AlgebraPtr alg);
  static Predicate top(AlgebraPtr alg);
  // Arity-1 interval. Rejects lo >= hi; clips to the axis domain.
  static Predicate interval(AlgebraPtr alg, Coord lo, std::optional<Coord> hi);
  static Predicate box(AlgebraPtr alg, const std::vector<Interval>& per_axis);
  static Predicate from_boxes(AlgebraPtr alg, const std::vector<std::vector<Interval>>& boxes);
  // Equality algebra: x = v.
  static Predicate equals(AlgebraPtr alg, Coord v);
  static Predicate from_section(AlgebraPtr alg, detail::Section s);

  const AlgebraPtr& algebra() const { return alg_; }
  const detail::Section& section() const { return root_; }

  bool denotes(const Char& a) const;
  bool is_empty() const { return root_.is_leaf() && !root_.value; }
  bool is_top() const { return root_.is_leaf() && root_.value; }
  // Lexicographically smallest element.
  Char witness() const;

  // Disjoint canonical boxes.
  std::vector<Box> boxes() const;
  // Boxes expanded so that every axis holds a single interval.
  std::vector<std::vector<Interval>> simple_boxes() const;
  // Arity-1 only.
  IntervalSet intervals() const;
  std::string to_string() const;

  bool operator==(const Predicate& o) const;

  friend Predicate meet(const Predicate& a, const Predicate& b);
  friend Predicate join(const Predicate& a, const Predicate& b);
  friend Predicate complement(const Predicate& a);

 private:
  Predicate(AlgebraPtr alg, detail::Section s) : alg_(std::move(alg)), root_(std::move(s)) {}
  AlgebraPtr alg_;
  detail::Section root_;
};

Predicate meet(const Predicate& a, const Predicate& b);
Predicate join(const Predicate& a, const Predicate& b);
Predicate complement(const Predicate& a);
bool denotes(const Predicate& p, const Char& a);
bool is_empty(const Predicate& p);
Char witness(const Predicate& p);

// Equality-algebra view of a predicate as a finite or co-finite id set.
struct EqualitySet {
  bool cofinite = false;
  std::vector<Coord> values;
};
EqualitySet equality_view(const Predicate& p);

bool shortlex_less(const Word& a, const Word& b);

struct CharHash {
  std::size_t operator()(const Char& c) const noexcept;
};
struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace smlearn
