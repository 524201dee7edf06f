#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace dqlab {

// Inputs are packed bit strings: global position p lives in bit p, and
// position 0 is the leftmost character of the textual form.
using Word = std::uint32_t;

inline constexpr int kMaxBits = 20;

// Error taxonomy mirrored by the CLI exit codes.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int popcount(Word w) { return __builtin_popcount(w); }

inline int bit_at(Word x, int pos) { return (x >> pos) & 1u; }

// Deterministic RNG for seeded experiment batches.
using Rng = std::mt19937_64;

// Dirichlet(1,...,1) sample of the given size (uniform on the simplex).
inline std::vector<double> random_simplex_point(Rng& rng, std::size_t n) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> w(n);
  double total = 0;
  for (auto& v : w) {
    v = exp1(rng);
    total += v;
  }
  for (auto& v : w) v /= total;
  return w;
}

}  // namespace dqlab
