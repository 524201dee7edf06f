#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dqlab/report.hpp"

namespace dqlab {

// Knobs shared by the verification suites and the CLI.  Identical configs
// and inputs produce byte-identical output regardless of the worker count.
struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t budget_states = 5'000'000;
  int trials = 0;  // 0 keeps each suite's default scale
  int jobs = 0;    // 0 uses the hardware concurrency
  bool exact = false;  // rational-arithmetic cross-checks where available
};

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  // Tightest margin observed: max |residual| for equality suites, most
  // negative slack for inequality suites (so > tolerance means failure).
  double worst_residual = 0;
  std::vector<std::string> failed_cases;
  bool ok() const { return failures == 0; }
};

// Suite names accepted by `dqlab verify`.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
SuiteResult run_suite(const std::string& name, const RunConfig& cfg = {});

Json to_json(const SuiteResult& r);

struct DemoResult {
  bool pass = false;
  Json report;
};

// Parity separation: the lazy algorithm certifies a worst-case-average cost
// of delta*n at success (1+delta)/2 while the worst-case complexity is n.
DemoResult demo_parity(int n, double delta, const RunConfig& cfg = {});
// Two-distribution reweighting: solving against the blend
// pi = lambda*mu + (1-lambda)*nu at lambda = delta/4 gives an algorithm with
// success >= (1+delta/2)/2 against nu and cost <= (4/delta) times the blend
// optimum against mu.
DemoResult demo_mixture(const std::string& fn_name, double delta,
                        const RunConfig& cfg = {});

}  // namespace dqlab
