#pragma once

#include <string>
#include <vector>

#include "dqlab/boolfn.hpp"
#include "dqlab/dist.hpp"

namespace dqlab {

// Bundled example inputs so suites run from a clean checkout.  Names resolve
// to built-in tables first and fall back to file paths.
std::vector<std::string> builtin_function_names();
bool is_builtin_function(const std::string& name);
BoolFn resolve_function(const std::string& name_or_path);

// Distribution names: "unif" (uniform on the domain), "point" (mass on the
// smallest domain element), "biased" (weight i+1 on the i-th domain element,
// normalized); anything else is read as a file.
std::vector<std::string> builtin_dist_names();
Dist resolve_dist(const std::string& name_or_path, const BoolFn& f);

}  // namespace dqlab
