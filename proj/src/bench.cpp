#include "smlearn/bench.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "smlearn/partition.hpp"

namespace smlearn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double na(double x) { return next_above(x); }

Interval real_iv(double lo, double hi) {
  return {real_key(lo), std::isinf(hi) ? std::nullopt : std::optional<Coord>(real_key(hi))};
}

// Closed natural range [lo, hi]; the Boolean axis top (hi = 1) is open.
Interval bool_iv(Coord lo, Coord hi) {
  return {lo, hi >= 1 ? std::nullopt : std::optional<Coord>(hi + 1)};
}

}  // namespace

SMealy make_worked_example() {
  auto alg = Algebra::interval_nat();
  auto iv = [&](Coord lo, std::optional<Coord> hi) { return Predicate::interval(alg, lo, hi); };
  std::vector<TransitionSpec> t{
      {0, iv(0, 20), 1, "S"}, {0, iv(20, std::nullopt), 0, "B"}, {1, iv(0, 20), 2, "S"},
      {1, iv(20, std::nullopt), 1, "B"}, {2, iv(10, std::nullopt), 1, "P"}, {2, iv(0, 10), 3, "P"},
      {3, iv(0, std::nullopt), 0, "P"},
  };
  return SMealy(alg, 4, 0, {"S", "B", "P"}, t);
}

SMealy make_mh() {
  // Axis tops of the published guards (bool 1, altitude 1e5, temperature
  // 1e4, charge na(1)) are extended to +inf so the guards cover the domain.
  auto alg = Algebra::product({Axis::nat(), Axis::real(0.0), Axis::real(-274.0), Axis::real(0.0)});
  struct G {
    Coord b0, b1;
    double alt0, alt1, t0, t1, c0, c1;
  };
  auto guard = [&](std::initializer_list<G> boxes) {
    Predicate p = Predicate::bottom(alg);
    for (const auto& g : boxes)
      p = join(p, Predicate::box(alg, {bool_iv(g.b0, g.b1), real_iv(g.alt0, g.alt1), real_iv(g.t0, g.t1),
                                       real_iv(g.c0, g.c1)}));
    return p;
  };
  const std::string none = "{}", heater = "{heater}", fly = "{fly}", fly_ref = "{fly,altitudeRef}";
  std::vector<TransitionSpec> t{
      {0, guard({{1, 1, 0, kInf, -15, kInf, 0, na(0.4)}, {0, 0, 0, kInf, -15, kInf, 0, kInf}}), 0, none},
      {0, guard({{1, 1, 0, kInf, -15, kInf, na(0.4), kInf}}), 2, heater},
      {0, guard({{0, 1, 0, kInf, -274, -15, 0, kInf}}), 1, heater},
      {1, guard({{0, 1, 0, kInf, -274, na(-10), 0.2, kInf}}), 1, heater},
      {1, guard({{0, 1, 0, kInf, na(-10), kInf, 0, kInf}, {0, 1, 0, kInf, -274, na(-10), 0, 0.2}}), 0, none},
      {2, guard({{1, 1, 0, kInf, -274, na(10), 0.3, kInf}}), 2, heater},
      {2, guard({{1, 1, 0, kInf, na(10), kInf, 0.3, kInf}}), 3, fly_ref},
      {2, guard({{0, 0, 0, kInf, -274, kInf, 0, kInf}, {1, 1, 0, kInf, -274, kInf, 0, 0.3}}), 0, none},
      {3, guard({{1, 1, 0, kInf, -274, kInf, 0.3, kInf}}), 3, fly_ref},
      {3, guard({{0, 0, 0, kInf, -274, kInf, 0, kInf}, {1, 1, 0, kInf, -274, kInf, 0, 0.3}}), 4, fly},
      {4, guard({{0, 1, 0.1, kInf, -274, kInf, 0, kInf}}), 4, fly},
      {4, guard({{0, 1, 0, 0.1, -274, kInf, 0, kInf}}), 0, none},
  };
  return SMealy(alg, 5, 0, {none, heater, fly, fly_ref}, t);
}

SMealy make_atgs() {
  // Throttle top 100 and velocity top 1e6 are extended to +inf.
  auto alg = Algebra::product({Axis::real(0.0), Axis::real(0.0)});
  enum { q100, q101, q102, q200, q201, q202, q210, q220, q300, q301, q302, q310, q320, q400, q410, q420 };
  struct B {
    double t0, t1, v0, v1;
  };
  auto guard = [&](std::initializer_list<B> boxes) {
    Predicate p = Predicate::bottom(alg);
    for (const auto& b : boxes) p = join(p, Predicate::box(alg, {real_iv(b.t0, b.t1), real_iv(b.v0, b.v1)}));
    return p;
  };
  const double I = kInf;
  std::vector<TransitionSpec> t{
      {q100, guard({{50, 90, 0, na(23)}, {0, 35, 0, na(10)}, {35, 50, 0, na(15)}, {90, I, 0, na(40)}}), q100, "gear1"},
      {q100, guard({{50, 90, na(23), I}, {0, 35, na(10), I}, {35, 50, na(15), I}, {90, I, na(40), I}}), q101, "gear1"},
      {q101, guard({{50, 90, 23, I}, {0, 35, 10, I}, {35, 50, 15, I}, {90, I, 40, I}}), q102, "gear1"},
      {q101, guard({{50, 90, 0, 23}, {0, 35, 0, 10}, {35, 50, 0, 15}, {90, I, 0, 40}}), q100, "gear1"},
      {q102, guard({{50, 90, 23, I}, {0, 35, 10, I}, {35, 50, 15, I}, {90, I, 40, I}}), q200, "gear2"},
      {q102, guard({{50, 90, 0, 23}, {0, 35, 0, 10}, {35, 50, 0, 15}, {90, I, 0, 40}}), q100, "gear1"},
      {q200, guard({{50, 90, na(41), I}, {0, 50, na(30), I}, {90, I, na(70), I}}), q201, "gear2"},
      {q200, guard({{0, 50, 5, na(30)}, {90, I, 30, na(70)}, {50, 90, 5, na(41)}}), q200, "gear2"},
      {q200, guard({{0, 90, 0, 5}, {90, I, 0, 30}}), q210, "gear2"},
      {q201, guard({{50, 90, 41, I}, {0, 50, 30, I}, {90, I, 70, I}}), q202, "gear2"},
      {q201, guard({{50, 90, 0, 41}, {0, 50, 0, 30}, {90, I, 0, 70}}), q200, "gear2"},
      {q210, guard({{0, 90, 0, na(5)}, {90, I, 0, na(30)}}), q220, "gear2"},
      {q210, guard({{0, 90, na(5), I}, {90, I, na(30), I}}), q200, "gear2"},
      {q220, guard({{0, 90, na(5), I}, {90, I, na(30), I}}), q200, "gear2"},
      {q220, guard({{0, 90, 0, na(5)}, {90, I, 0, na(30)}}), q100, "gear1"},
      {q202, guard({{50, 90, 0, 41}, {0, 50, 0, 30}, {90, I, 0, 70}}), q200, "gear2"},
      {q202, guard({{50, 90, 41, I}, {0, 50, 30, I}, {90, I, 70, I}}), q300, "gear3"},
      {q300, guard({{50, 90, na(60), I}, {0, 50, na(50), I}, {90, I, na(100), I}}), q301, "gear3"},
      {q300, guard({{0, 40, 20, na(50)}, {90, I, 50, na(100)}, {40, 50, 25, na(50)}, {50, 90, 30, na(60)}}), q300,
       "gear3"},
      {q300, guard({{0, 40, 0, 20}, {40, 50, 0, 25}, {50, 90, 0, 30}, {90, I, 0, 50}}), q310, "gear3"},
      {q301, guard({{50, 90, 60, I}, {0, 50, 50, I}, {90, I, 100, I}}), q302, "gear3"},
      {q301, guard({{50, 90, 0, 60}, {0, 50, 0, 50}, {90, I, 0, 100}}), q300, "gear3"},
      {q310, guard({{0, 40, 0, na(20)}, {40, 50, 0, na(25)}, {50, 90, 0, na(30)}, {90, I, 0, na(50)}}), q320, "gear3"},
      {q310, guard({{0, 40, na(20), I}, {40, 50, na(25), I}, {50, 90, na(30), I}, {90, I, na(50), I}}), q300, "gear3"},
      {q320, guard({{0, 40, 0, na(20)}, {40, 50, 0, na(25)}, {50, 90, 0, na(30)}, {90, I, 0, na(50)}}), q200, "gear2"},
      {q320, guard({{0, 40, na(20), I}, {40, 50, na(25), I}, {50, 90, na(30), I}, {90, I, na(50), I}}), q300, "gear3"},
      {q302, guard({{50, 90, 0, 60}, {0, 50, 0, 50}, {90, I, 0, 100}}), q300, "gear3"},
      {q302, guard({{50, 90, 60, I}, {0, 50, 50, I}, {90, I, 100, I}}), q400, "gear4"},
      {q400, guard({{0, 40, 0, 35}, {40, 50, 0, 40}, {50, 90, 0, 50}, {90, I, 0, 80}}), q410, "gear4"},
      {q400, guard({{0, 40, 35, I}, {40, 50, 40, I}, {50, 90, 50, I}, {90, I, 80, I}}), q400, "gear4"},
      {q410, guard({{0, 40, na(35), I}, {40, 50, na(40), I}, {50, 90, na(50), I}, {90, I, na(80), I}}), q400, "gear4"},
      {q410, guard({{0, 40, 0, na(35)}, {40, 50, 0, na(40)}, {50, 90, 0, na(50)}, {90, I, 0, na(80)}}), q420, "gear4"},
      {q420, guard({{0, 40, 0, na(35)}, {40, 50, 0, na(40)}, {50, 90, 0, na(50)}, {90, I, 0, na(80)}}), q300, "gear3"},
      {q420, guard({{0, 40, na(35), I}, {40, 50, na(40), I}, {50, 90, na(50), I}, {90, I, na(80), I}}), q400, "gear4"},
  };
  return SMealy(alg, 16, q100, {"gear1", "gear2", "gear3", "gear4"}, t);
}

SMealy make_lower_bound(std::size_t n, std::size_t k) {
  if (n < 2 || k < n) throw BenchError("lower-bound family needs n >= 2 and k >= n");
  auto alg = Algebra::interval_nat();
  auto iv = [&](Coord l) { return Predicate::interval(alg, 10 * l, 10 * l + 10); };
  const Predicate tail = Predicate::interval(alg, 10 * (k - 1), std::nullopt);
  std::vector<std::string> gamma{"-1"};
  for (std::size_t l = 0; l < k; ++l) gamma.push_back(std::to_string(l));
  auto out = [](std::size_t l) { return std::to_string(l); };

  std::vector<TransitionSpec> t;
  for (std::size_t i = 0; i + 1 < 2 * n; ++i) t.push_back({i, iv(0), i + 1, "0"});
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t q = 2 * m;
    for (std::size_t l = 1; l + 1 < k; ++l)
      if (l != m) t.push_back({q, iv(l), q, out(l)});
    if (m != k - 1) t.push_back({q, tail, q, out(k - 1)});
    // The m = 0 block [0, 10) is the spine transition of q_0.
    if (m != k - 1 && m >= 1) t.push_back({q, iv(m), q, "-1"});
    if (k == n && m == k - 1) t.push_back({q, tail, q, "-1"});
  }
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t q = 2 * m + 1;
    for (std::size_t l = 1; l + 1 < k; ++l) t.push_back({q, iv(l), q, out(l)});
    t.push_back({q, tail, q, out(k - 1)});
  }
  const std::size_t end = 2 * n - 1;
  for (std::size_t l = 0; l + 1 < k; ++l) t.push_back({end, iv(l), end, out(l)});
  t.push_back({end, tail, end, out(k - 1)});
  return SMealy(alg, 2 * n, 0, gamma, t);
}

SMealy random_sma(const RandomSpec& spec) {
  if (spec.n < 1 || spec.k < 1) throw BenchError("random spec needs n >= 1 and k >= 1");
  if (spec.outputs < 1) throw BenchError("random spec needs at least one output");
  const std::uint64_t hi = spec.range_hi ? spec.range_hi : 100 * spec.k;
  if (hi < spec.k - 1) throw BenchError("boundary range too small for k - 1 distinct values");

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::uint64_t> pick_boundary(1, hi);
  std::set<Coord> bounds;
  while (bounds.size() < spec.k - 1) bounds.insert(pick_boundary(rng));

  auto alg = Algebra::interval_nat();
  SampleList L{{Char{0}}};
  for (Coord b : bounds) L.push_back({Char{b}});
  PartitionResult blocks = partition_intervals(alg, L);

  std::vector<std::string> gamma;
  for (std::size_t o = 0; o < spec.outputs; ++o) gamma.push_back("o" + std::to_string(o));
  std::uniform_int_distribution<std::size_t> pick_state(0, spec.n - 1);
  std::uniform_int_distribution<std::size_t> pick_out(0, spec.outputs - 1);

  std::vector<TransitionSpec> t;
  for (std::size_t q = 0; q < spec.n; ++q) {
    std::size_t prev_to = 0, prev_out = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      std::size_t to = pick_state(rng), out = pick_out(rng);
      for (int attempt = 1; b > 0 && to == prev_to && out == prev_out && attempt < 100; ++attempt) {
        to = pick_state(rng);
        out = pick_out(rng);
      }
      t.push_back({q, blocks[b], to, gamma[out]});
      prev_to = to;
      prev_out = out;
    }
  }
  return SMealy(alg, spec.n, 0, gamma, t);
}

SMealy make_builtin(const std::string& name) {
  if (name == "worked-example") return make_worked_example();
  if (name == "mh") return make_mh();
  if (name == "atgs") return make_atgs();
  if (name.rfind("lower:", 0) == 0) {
    auto comma = name.find(',');
    if (comma == std::string::npos) throw BenchError("expected lower:n,k");
    try {
      return make_lower_bound(std::stoul(name.substr(6, comma - 6)), std::stoul(name.substr(comma + 1)));
    } catch (const std::logic_error&) {
      throw BenchError("expected lower:n,k, got " + name);
    }
  }
  throw BenchError("unknown benchmark '" + name + "'");
}

}  // namespace smlearn
