#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dqlab/constructions.hpp"
#include "dqlab/solvers.hpp"
#include "dqlab/stats.hpp"

namespace dqlab {

// Insertion-ordered JSON value with a fixed number format (10 significant
// digits), so identical runs serialize byte-identically.
class Json {
 public:
  Json() = default;

  static Json null();
  static Json boolean(bool b);
  static Json number(double v);
  static Json integer(long long v);
  static Json string(std::string s);
  static Json array();
  static Json object();

  Json& set(const std::string& key, Json v);  // objects only
  Json& push(Json v);                         // arrays only

  bool is_object() const { return type_ == Type::object; }
  bool is_array() const { return type_ == Type::array; }

  std::string dump(int indent = -1) const;

 private:
  enum class Type { null, boolean, number, integer, string, array, object };
  Type type_ = Type::null;
  bool b_ = false;
  double num_ = 0;
  long long int_ = 0;
  std::string str_;
  std::vector<Json> items_;
  std::vector<std::pair<std::string, Json>> members_;

  void write(std::string& out, int indent, int depth) const;
};

std::string format_number(double v);

Json to_json(const StatReport& r);
Json to_json(const AxiomReport& r);
Json to_json(const AlphaStar& a);
Json to_json(const EquivalenceReport& r);
Json to_json(const ConstructionReport& r);
Json to_json(const ParetoFront& front);

// Top-level report envelope: {"schema": 1, "command": <name>, ...}.
Json report_envelope(const std::string& command);

}  // namespace dqlab
