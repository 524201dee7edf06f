#include "dqlab/builtin.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace dqlab {

namespace {

const std::map<std::string, std::string>& function_tables() {
  static const std::map<std::string, std::string> tables = {
      {"id1", "m=1\n0 0\n1 1\n"},
      {"and2", "m=2\n00 0\n01 0\n10 0\n11 1\n"},
      {"or2", "m=2\n00 0\n01 1\n10 1\n11 1\n"},
      {"xor2", "m=2\n00 0\n01 1\n10 1\n11 0\n"},
      {"xor3",
       "m=3\n000 0\n001 1\n010 1\n011 0\n100 1\n101 0\n110 0\n111 1\n"},
      {"maj3",
       "m=3\n000 0\n001 0\n010 0\n011 1\n100 0\n101 1\n110 1\n111 1\n"},
      // Partial majority: the two middle-weight rows 010 and 100 are promised
      // away.
      {"part3",
       "m=3\n000 0\n001 0\n010 *\n011 1\n100 *\n101 1\n110 1\n111 1\n"},
  };
  return tables;
}

}  // namespace

std::vector<std::string> builtin_function_names() {
  std::vector<std::string> names;
  for (auto& [k, v] : function_tables()) names.push_back(k);
  return names;
}

bool is_builtin_function(const std::string& name) {
  return function_tables().count(name) > 0;
}

BoolFn resolve_function(const std::string& name_or_path) {
  auto it = function_tables().find(name_or_path);
  if (it != function_tables().end())
    return BoolFn::parse_text(it->second, name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw InputError("cannot open function file '" + name_or_path + "'");
  return BoolFn::parse(in, name_or_path);
}

std::vector<std::string> builtin_dist_names() {
  return {"unif", "point", "biased"};
}

Dist resolve_dist(const std::string& name_or_path, const BoolFn& f) {
  if (name_or_path == "unif") return Dist::uniform(f);
  if (name_or_path == "point") return Dist::point(f.bits(), f.domain().front());
  if (name_or_path == "biased") {
    std::vector<double> w(std::size_t(1) << f.bits(), 0.0);
    double total = 0;
    for (std::size_t i = 0; i < f.domain().size(); ++i) {
      w[f.domain()[i]] = double(i + 1);
      total += double(i + 1);
    }
    for (auto& v : w) v /= total;
    return Dist(f.bits(), std::move(w));
  }
  std::ifstream in(name_or_path);
  if (!in)
    throw InputError("cannot open distribution file '" + name_or_path + "'");
  return Dist::parse(in, f.bits(), name_or_path);
}

}  // namespace dqlab
