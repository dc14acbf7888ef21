#pragma once

#include <string>

#include "json.hpp"
#include "smlearn/automata.hpp"

namespace smlearn {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json algebra_to_json(const Algebra& alg);
AlgebraPtr algebra_from_json(const nlohmann::json& j);

// Axis values: integers for natural and equality axes, numbers for real
// axes, or {"na": x} for next_above(x).
nlohmann::json coord_to_json(const Axis& axis, Coord c);
Coord coord_from_json(const Axis& axis, const nlohmann::json& j);

nlohmann::json predicate_to_json(const Predicate& p);
Predicate predicate_from_json(const AlgebraPtr& alg, const nlohmann::json& j);

nlohmann::json char_to_json(const Algebra& alg, const Char& c);
Char char_from_json(const Algebra& alg, const nlohmann::json& j);
// "3", "0.5", "na(10)", or comma-separated components for products.
Char parse_char(const Algebra& alg, const std::string& text);

nlohmann::json to_json(const SMealy& m);
SMealy from_json(const nlohmann::json& j);

SMealy load_automaton(const std::string& path);
void save_automaton(const std::string& path, const SMealy& m);
std::string to_dot(const SMealy& m);

}  // namespace smlearn
