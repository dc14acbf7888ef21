#include "smlearn/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace smlearn {

using nlohmann::json;

namespace {

const char* kind_name(AxisKind k) {
  switch (k) {
    case AxisKind::Nat: return "interval-nat";
    case AxisKind::Real: return "interval-real";
    case AxisKind::Equality: return "equality";
  }
  return "";
}

json axis_to_json(const Axis& a) {
  json j{{"kind", kind_name(a.kind)}};
  if (a.kind == AxisKind::Nat && a.nat_min != 0) j["min"] = a.nat_min;
  if (a.kind == AxisKind::Real) j["min"] = a.real_min;
  if (a.kind == AxisKind::Equality && a.carrier) j["carrier"] = *a.carrier;
  return j;
}

Axis axis_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw FormatError("algebra needs a kind");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "interval-nat") return Axis::nat(j.value("min", std::uint64_t{0}));
  if (kind == "interval-real") {
    if (!j.contains("min")) throw FormatError("interval-real needs a min");
    return Axis::real(j.at("min").get<double>());
  }
  if (kind == "equality") {
    if (j.contains("carrier")) return Axis::equality(j.at("carrier").get<std::uint64_t>());
    return Axis::equality();
  }
  throw FormatError("unknown algebra kind '" + kind + "'");
}

std::size_t short_len(double x) {
  char buf[64];
  return static_cast<std::size_t>(std::to_chars(buf, buf + sizeof buf, x).ptr - buf);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

Coord parse_component(const Axis& axis, std::string t) {
  t = trim(t);
  bool na = false;
  if (t.rfind("na(", 0) == 0 && !t.empty() && t.back() == ')') {
    na = true;
    t = trim(t.substr(3, t.size() - 4));
  }
  Coord c;
  if (axis.kind == AxisKind::Real) {
    double v;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) throw FormatError("bad real value '" + t + "'");
    c = real_key(na ? next_above(v) : v);
    return c;
  }
  std::uint64_t v;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) throw FormatError("bad natural value '" + t + "'");
  c = na ? axis.successor(v) : v;
  return c;
}

}  // namespace

json algebra_to_json(const Algebra& alg) {
  if (alg.kind() != AlgebraKind::Product) return axis_to_json(alg.axis(0));
  json comps = json::array();
  for (const auto& a : alg.axes()) comps.push_back(axis_to_json(a));
  return json{{"kind", "product"}, {"components", comps}};
}

AlgebraPtr algebra_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw FormatError("algebra needs a kind");
  if (j.at("kind") == "product") {
    std::vector<Axis> axes;
    for (const auto& c : j.at("components")) {
      if (c.value("kind", "") == "product") throw FormatError("nested products must be flattened");
      axes.push_back(axis_from_json(c));
    }
    return Algebra::product(std::move(axes));
  }
  Axis a = axis_from_json(j);
  switch (a.kind) {
    case AxisKind::Nat: return Algebra::interval_nat(a.nat_min);
    case AxisKind::Real: return Algebra::interval_real(a.real_min);
    case AxisKind::Equality: return Algebra::equality(a.carrier);
  }
  throw FormatError("unknown algebra");
}

json coord_to_json(const Axis& axis, Coord c) {
  if (axis.kind != AxisKind::Real) return c;
  double x = key_real(c);
  if (c > axis.lo()) {
    double prev = std::nextafter(x, -std::numeric_limits<double>::infinity());
    if (prev == 0.0) prev = 0.0;
    if (short_len(prev) + 4 < short_len(x)) return json{{"na", prev}};
  }
  return x;
}

Coord coord_from_json(const Axis& axis, const json& j) {
  if (j.is_object()) {
    if (!j.contains("na")) throw FormatError("value objects must be {\"na\": x}");
    Coord base = coord_from_json(axis, j.at("na"));
    return axis.successor(base);
  }
  if (!j.is_number()) throw FormatError("expected a number, got " + j.dump());
  if (axis.kind == AxisKind::Real) return real_key(j.get<double>());
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    if (j.get<std::int64_t>() < 0) throw FormatError("natural values must be non-negative");
    return static_cast<Coord>(j.get<std::int64_t>());
  }
  return axis.encode(j.get<double>());
}

json predicate_to_json(const Predicate& p) {
  const auto& alg = *p.algebra();
  json boxes = json::array();
  for (const auto& b : p.simple_boxes()) {
    json box = json::array();
    for (std::size_t k = 0; k < b.size(); ++k)
      box.push_back(json::array({coord_to_json(alg.axis(k), b[k].lo),
                                 b[k].hi ? coord_to_json(alg.axis(k), *b[k].hi) : json(nullptr)}));
    boxes.push_back(box);
  }
  return boxes;
}

Predicate predicate_from_json(const AlgebraPtr& alg, const json& j) {
  if (!j.is_array()) throw FormatError("guard must be an array of boxes");
  std::vector<std::vector<Interval>> boxes;
  for (const auto& jb : j) {
    if (!jb.is_array() || jb.size() != alg->arity()) throw FormatError("box arity mismatch in " + jb.dump());
    std::vector<Interval> box;
    for (std::size_t k = 0; k < jb.size(); ++k) {
      const auto& iv = jb[k];
      if (!iv.is_array() || iv.size() != 2) throw FormatError("interval must be [lo, hi]");
      Interval x{coord_from_json(alg->axis(k), iv[0]), std::nullopt};
      if (!iv[1].is_null()) x.hi = coord_from_json(alg->axis(k), iv[1]);
      box.push_back(x);
    }
    boxes.push_back(std::move(box));
  }
  try {
    return Predicate::from_boxes(alg, boxes);
  } catch (const AlgebraError& e) {
    throw FormatError(e.what());
  }
}

json char_to_json(const Algebra& alg, const Char& c) {
  if (alg.kind() != AlgebraKind::Product) return coord_to_json(alg.axis(0), c.at(0));
  json a = json::array();
  for (std::size_t k = 0; k < c.size(); ++k) a.push_back(coord_to_json(alg.axis(k), c[k]));
  return a;
}

Char char_from_json(const Algebra& alg, const json& j) {
  Char c;
  if (j.is_array()) {
    if (j.size() != alg.arity()) throw FormatError("character arity mismatch");
    for (std::size_t k = 0; k < j.size(); ++k) c.push_back(coord_from_json(alg.axis(k), j[k]));
  } else {
    if (alg.arity() != 1) throw FormatError("character arity mismatch");
    c.push_back(coord_from_json(alg.axis(0), j));
  }
  alg.check(c);
  return c;
}

Char parse_char(const Algebra& alg, const std::string& text) {
  std::string t = trim(text);
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')' && t.rfind("na(", 0) != 0) t = t.substr(1, t.size() - 2);
  std::vector<std::string> parts;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != alg.arity())
    throw FormatError("character '" + text + "' needs " + std::to_string(alg.arity()) + " components");
  Char c;
  for (std::size_t k = 0; k < parts.size(); ++k) c.push_back(parse_component(alg.axis(k), parts[k]));
  try {
    alg.check(c);
  } catch (const AlgebraError& e) {
    throw FormatError(e.what());
  }
  return c;
}

json to_json(const SMealy& m) {
  json ts = json::array();
  for (const auto& t : m.transitions())
    ts.push_back(json{{"from", t.from}, {"guard", predicate_to_json(t.guard)}, {"to", t.to}, {"out", m.outputs()[t.out]}});
  return json{{"algebra", algebra_to_json(*m.algebra())},
              {"states", m.num_states()},
              {"initial", m.initial()},
              {"outputs", m.outputs()},
              {"transitions", ts}};
}

SMealy from_json(const json& j) {
  try {
    AlgebraPtr alg = algebra_from_json(j.at("algebra"));
    std::vector<std::string> outputs;
    if (j.contains("outputs")) outputs = j.at("outputs").get<std::vector<std::string>>();
    std::vector<TransitionSpec> specs;
    for (const auto& t : j.at("transitions"))
      specs.push_back({t.at("from").get<std::size_t>(), predicate_from_json(alg, t.at("guard")),
                       t.at("to").get<std::size_t>(), t.at("out").get<std::string>()});
    return SMealy(alg, j.at("states").get<std::size_t>(), j.value("initial", std::size_t{0}), outputs, specs);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed automaton: ") + e.what());
  } catch (const AlgebraError& e) {
    throw FormatError(e.what());
  }
}

SMealy load_automaton(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  return from_json(j);
}

void save_automaton(const std::string& path, const SMealy& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << to_json(m).dump(2) << "\n";
  if (!out) throw IoError("write failed for " + path);
}

std::string to_dot(const SMealy& m) {
  auto escape = [](const std::string& s) {
    std::string r;
    for (char c : s) {
      if (c == '"' || c == '\\') r += '\\';
      r += c;
    }
    return r;
  };
  std::ostringstream os;
  os << "digraph smealy {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::size_t q = 0; q < m.num_states(); ++q)
    os << "  q" << q << " [shape=" << (q == m.initial() ? "doublecircle" : "circle") << "];\n";
  os << "  init -> q" << m.initial() << ";\n";
  for (const auto& t : m.transitions())
    os << "  q" << t.from << " -> q" << t.to << " [label=\"" << escape(t.guard.to_string() + " | " + m.outputs()[t.out])
       << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace smlearn
