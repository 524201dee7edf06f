#pragma once

#include <vector>

#include "dqlab/common.hpp"

namespace dqlab {

// Dense two-phase tableau simplex with Bland's rule.  Problems are stated as
//   maximize c.x  subject to  a[i].x (sense[i]) b[i],  x >= 0.
enum class Sense { le, ge, eq };

struct LpProblem {
  std::vector<std::vector<double>> a;
  std::vector<Sense> sense;
  std::vector<double> b;
  std::vector<double> c;
};

struct LpResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  double obj = 0;
  std::vector<double> x;
  // Dual value per row (sign convention of the maximization problem: the
  // objective moves by dual[i] per unit of b[i]).
  std::vector<double> dual;
};

LpResult solve_lp(const LpProblem& p, std::size_t max_iters = 200'000);

}  // namespace dqlab
