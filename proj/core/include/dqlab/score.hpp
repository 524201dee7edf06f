#pragma once

#include <functional>
#include <string>

#include "dqlab/boolfn.hpp"
#include "dqlab/dist.hpp"
#include "dqlab/restriction.hpp"

namespace dqlab {

// Score functions map a conditional bias p in [0,1] to a confidence value in
// [1/2,1]: certainty at the endpoints, total ignorance at 1/2.
enum class ScoreKind { success, hellinger, entropy };

ScoreKind score_kind_from_string(const std::string& name);
std::string to_string(ScoreKind k);

double binary_entropy(double p);

// success: max{p, 1-p}; hellinger: 1 - sqrt(p(1-p)); entropy: 2^(-h(p)).
// Inputs within 1e-15 of {0,1} are clamped; anything else outside [0,1] is an
// error.
double eval_score(ScoreKind k, double p);

struct AxiomReport {
  bool bounded = false;     // range inside [1/2, 1]
  bool normalized = false;  // value 1 at 0 and 1, value 1/2 at 1/2
  bool symmetric = false;   // phi(p) == phi(1-p)
  bool monotone = false;    // nondecreasing on [1/2, 1]
  double lipschitz = 0;     // largest slope between adjacent grid points
  bool continuous = false;  // finite slope estimate, no NaN on the grid
  bool all() const {
    return bounded && normalized && symmetric && monotone && continuous;
  }
};

// Checks the score-function axioms on a uniform grid (default 10^4 points).
AxiomReport check_axioms(const std::function<double(double)>& phi,
                         int grid_points = 10000);
AxiomReport check_axioms(ScoreKind k, int grid_points = 10000);

// Score of the subcube `leaf` under mu.  Single-block functions score the
// conditional bias directly; products take the product of per-block scores
// and require a product measure.  Zero-mass leaves are an error here (the
// expectation-level helpers skip them instead).
double leaf_score(const BoolFn& f, const Dist& mu, const Restriction& leaf,
                  ScoreKind k);

}  // namespace dqlab
