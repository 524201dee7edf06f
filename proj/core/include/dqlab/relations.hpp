#pragma once

#include <vector>

#include "dqlab/common.hpp"
#include "dqlab/restriction.hpp"

namespace dqlab {

// Relations computed by list-decoding style algorithms: output a list that
// must contain the truth (LD), a string that must agree on at least k
// coordinates (Thr), or a partial string committing to exactly k coordinates,
// all of which must be correct (Label).
enum class RelKind { LD, Thr, Label };

struct RelationInstance {
  RelKind kind = RelKind::LD;
  int n = 0;
  int param = 0;  // ell for LD, k for Thr/Label
  Word y = 0;     // the truth
};

// List answer (LD): the list must have exactly 2^(n-ell) entries.
bool relation_accepts(const RelationInstance& inst, const std::vector<Word>& s);
// String answer (Thr).
bool relation_accepts(const RelationInstance& inst, Word z);
// Partial-string answer (Label): exactly k committed positions.
bool relation_accepts(const RelationInstance& inst, const Restriction& z);

// List-decoding exponent of the threshold relation:
// tau_{n,k} = n - log2 sum_{i<=n-k} C(n,i).  Exact integer binomials, n <= 64.
double tau(int n, int k);

// Hamming ball of radius n-k around the answer; its size is 2^(n-tau(n,k)).
std::vector<Word> thr_to_list(Word z, int n, int k);
// All completions of the uncommitted coordinates; 2^(n-k) strings.
std::vector<Word> label_to_list(const Restriction& z, int n, int k);

// Base-2 entropy of a product of Bernoullis with success probabilities p.
double product_entropy(const std::vector<double>& p);
// Cross-entropy E_{x~sigma}[log2 1/pi(x)] of two Bernoulli products, summed
// per coordinate; +infinity when sigma charges a pi-impossible outcome.
double cross_entropy_bits(const std::vector<double>& sigma,
                          const std::vector<double>& pi);

// H(X) <= n - beta^2/(16 alpha) for independent Bernoulli vectors X (biases
// delta) and Z (biases tau), where alpha = n - H(Z), beta = n - H(Z,X).
struct HxReport {
  int n = 0;
  double alpha = 0, beta = 0;
  double hx = 0, bound = 0;
  double delta_norm2 = 0, tau_norm2 = 0;
  bool precondition = false;  // 0 <= beta <= alpha
  bool conclusion = false;
  bool intermediate = false;  // ||delta||^2/(2 ln2) <= n - H(X) <= ||delta||^2
  bool tau_bound = false;     // ||tau||^2 <= 2 ln2 * alpha
  bool pass = false;
};
HxReport hx_cross_entropy_check(const std::vector<double>& delta,
                                const std::vector<double>& tau);

// H(X) <= n - (1-eps)^2 ell / 320 whenever Pr[X in L] >= 2^(-eps ell) for a
// list of 2^(n-ell) strings; also materializes the proof's bin decomposition
// and verifies the pigeonhole mass bound for the first qualifying bin.
struct ListReport {
  int n = 0, ell = 0;
  double eps = 0;
  double pr_list = 0;
  double hx = 0, bound = 0;
  bool precondition = false;
  bool conclusion = false;
  bool bin_found = false;
  int bin_index = -1;
  double bin_mass = 0, bin_need = 0;
  bool pass = false;
};
ListReport list_entropy_check(const std::vector<double>& p,
                              const std::vector<Word>& list, double eps,
                              int ell);

// The 2^(n-ell) most probable strings under the Bernoulli product (ties by
// word value).
std::vector<Word> top_probability_list(const std::vector<double>& p, int ell);

// g(y) = (k-1) - ky + y^k >= 0; h(eps) nonincreasing; and for a = 2^(-eps),
// (a^l - a^(kl))/(1 - a^(kl)) >= ((a - a^k)/(1 - a^k))^l.
struct TechReport {
  int k = 0;
  double eps = 0;
  int ell = 0;
  double g_min = 0;
  double lhs = 0, rhs = 0;
  double phi = 0;  // ln lhs - ell * ln(single-step ratio)
  bool g_nonneg = false, h_monotone = false, ratio_holds = false;
  bool pass = false;
};
TechReport technicality(int k, double eps, int ell);

// lambda = 2^(-1/2560); k the least integer with
// (2^(-1/2k) - 2^(-1/2))/(1 - 2^(-1/2)) >= lambda; c = 2^(-1/(2k)).
struct LdConstants {
  double lambda = 0;
  int k = 0;
  double c = 0;
};
LdConstants ld_dpt_constants();

// Per-instance inequality chain behind the list-decoding bound, with
// beta = 2^(-k eps ell) and alpha = (2^(-eps ell) - beta)/(1 - beta):
// alpha >= lambda^ell >= 2^(-(1-k eps)^2 ell/640), and the leaf entropy-score
// level alpha * 2^((1-k eps)^2 ell/320 - n) >= 2^((1-k eps)^2 ell/640 - n).
struct ChainReport {
  double alpha = 0, beta = 0, lam_ell = 0;
  bool ineq1 = false, ineq2 = false, ineq3 = false;
  bool pass = false;
};
ChainReport ld_chain_check(int n, int ell, double eps);

}  // namespace dqlab
