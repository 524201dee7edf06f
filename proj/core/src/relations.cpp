#include "dqlab/relations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "dqlab/score.hpp"

namespace dqlab {

namespace {

using BigInt = boost::multiprecision::cpp_int;

constexpr double kTol = 1e-12;

void check_n(int n) {
  if (n < 1 || n > 64) throw InputError("n must lie in [1, 64]");
}

// Wide masks: relations go up to n = 64, beyond the 20-bit tree inputs.
std::uint64_t nmask(int n) {
  return n == 64 ? ~0ull : (1ull << n) - 1;
}

int agreements(Word y, Word z, int n) {
  return n - popcount((y ^ z) & (Word)nmask(n));
}

}  // namespace

bool relation_accepts(const RelationInstance& inst, const std::vector<Word>& s) {
  if (inst.kind != RelKind::LD) throw InputError("list answers belong to LD");
  check_n(inst.n);
  if (inst.param < 1 || inst.param > inst.n)
    throw InputError("ell must lie in [1, n]");
  if (s.size() != (std::size_t(1) << (inst.n - inst.param)))
    throw InputError("LD answers must list exactly 2^(n-ell) strings");
  return std::find(s.begin(), s.end(), inst.y) != s.end();
}

bool relation_accepts(const RelationInstance& inst, Word z) {
  if (inst.kind != RelKind::Thr) throw InputError("string answers belong to Thr");
  check_n(inst.n);
  if (inst.param < 1 || inst.param > inst.n)
    throw InputError("k must lie in [1, n]");
  return agreements(inst.y, z, inst.n) >= inst.param;
}

bool relation_accepts(const RelationInstance& inst, const Restriction& z) {
  if (inst.kind != RelKind::Label)
    throw InputError("partial-string answers belong to Label");
  check_n(inst.n);
  if (z.fixed_count() != inst.param)
    throw InputError("Label answers must commit to exactly k coordinates");
  return ((inst.y ^ z.vals) & z.mask) == 0;
}

double tau(int n, int k) {
  check_n(n);
  if (2 * k <= n || k > n) throw InputError("tau needs n/2 < k <= n");
  BigInt sum = 0, c = 1;
  for (int i = 0; i <= n - k; ++i) {
    sum += c;
    c = c * (n - i) / (i + 1);
  }
  return n - std::log2(sum.convert_to<double>());
}

std::vector<Word> thr_to_list(Word z, int n, int k) {
  if (n < 1 || n > 20) throw InputError("ball enumeration needs n <= 20");
  if (2 * k <= n || k > n) throw InputError("thr_to_list needs n/2 < k <= n");
  std::vector<Word> out;
  for (Word y = 0; y < (Word(1) << n); ++y)
    if (popcount(y ^ z) <= n - k) out.push_back(y);
  return out;
}

std::vector<Word> label_to_list(const Restriction& z, int n, int k) {
  if (n < 1 || n > 20) throw InputError("completion enumeration needs n <= 20");
  if (z.fixed_count() != k)
    throw InputError("the partial string must commit to exactly k coordinates");
  std::vector<Word> out;
  for (Word y = 0; y < (Word(1) << n); ++y)
    if (z.contains(y)) out.push_back(y);
  return out;
}

double product_entropy(const std::vector<double>& p) {
  double h = 0;
  for (double v : p) h += binary_entropy(v);
  return h;
}

double cross_entropy_bits(const std::vector<double>& sigma,
                          const std::vector<double>& pi) {
  if (sigma.size() != pi.size())
    throw InputError("bias vectors have different lengths");
  double h = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    double q = sigma[i], p = pi[i];
    if (q < 0 || q > 1 || p < 0 || p > 1)
      throw InputError("biases must lie in [0, 1]");
    // A sigma-possible outcome with pi-probability zero costs infinitely
    // many bits; that is reported, not masked.
    if (q > 0) {
      if (p <= 0) return std::numeric_limits<double>::infinity();
      h -= q * std::log2(p);
    }
    if (q < 1) {
      if (p >= 1) return std::numeric_limits<double>::infinity();
      h -= (1 - q) * std::log2(1 - p);
    }
  }
  return h;
}

HxReport hx_cross_entropy_check(const std::vector<double>& delta,
                                const std::vector<double>& tau_) {
  if (delta.size() != tau_.size())
    throw InputError("bias vectors have different lengths");
  const int n = (int)delta.size();
  const double ln2 = std::numbers::ln2;
  HxReport r;
  r.n = n;
  std::vector<double> px(n), pz(n);
  for (int i = 0; i < n; ++i) {
    if (delta[i] < 0 || delta[i] > 1 || tau_[i] < 0 || tau_[i] > 1)
      throw InputError("biases must lie in [0, 1]");
    px[i] = (1 + delta[i]) / 2;
    pz[i] = (1 + tau_[i]) / 2;
    r.delta_norm2 += delta[i] * delta[i];
    r.tau_norm2 += tau_[i] * tau_[i];
  }
  r.hx = product_entropy(px);
  double hz = product_entropy(pz);
  double hzx = cross_entropy_bits(pz, px);
  r.alpha = n - hz;
  r.beta = n - hzx;
  r.precondition = r.beta >= -kTol && r.beta <= r.alpha + kTol;
  r.bound = r.alpha > 0 ? n - r.beta * r.beta / (16 * r.alpha) : (double)n;
  r.intermediate = r.delta_norm2 / (2 * ln2) <= n - r.hx + kTol &&
                   n - r.hx <= r.delta_norm2 + kTol;
  r.tau_bound = r.tau_norm2 <= 2 * ln2 * r.alpha + kTol;
  r.conclusion = r.hx <= r.bound + kTol;
  r.pass = r.intermediate && r.tau_bound &&
           (!r.precondition || r.conclusion);
  return r;
}

std::vector<Word> top_probability_list(const std::vector<double>& p, int ell) {
  const int n = (int)p.size();
  if (n < 1 || n > 20) throw InputError("list enumeration needs n <= 20");
  if (ell < 1 || ell > n) throw InputError("ell must lie in [1, n]");
  std::vector<std::pair<double, Word>> pts;
  for (Word x = 0; x < (Word(1) << n); ++x) {
    double q = 1;
    for (int i = 0; i < n; ++i) q *= bit_at(x, i) ? p[i] : 1 - p[i];
    pts.push_back({q, x});
  }
  std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<Word> out;
  for (std::size_t i = 0; i < (std::size_t(1) << (n - ell)); ++i)
    out.push_back(pts[i].second);
  return out;
}

ListReport list_entropy_check(const std::vector<double>& p,
                              const std::vector<Word>& list, double eps,
                              int ell) {
  const int n = (int)p.size();
  if (n < 1 || n > 20) throw InputError("probability oracle needs n <= 20");
  if (ell < 1 || ell > n) throw InputError("ell must lie in [1, n]");
  if (eps < 0 || eps > 0.25) throw InputError("eps must lie in [0, 1/4]");
  if (list.size() != (std::size_t(1) << (n - ell)))
    throw InputError("the list must hold exactly 2^(n-ell) strings");

  ListReport r;
  r.n = n;
  r.ell = ell;
  r.eps = eps;
  auto mass = [&](Word x) {
    double q = 1;
    for (int i = 0; i < n; ++i) q *= bit_at(x, i) ? p[i] : 1 - p[i];
    return q;
  };
  for (Word x : list) r.pr_list += mass(x);
  r.hx = product_entropy(p);
  r.bound = n - (1 - eps) * (1 - eps) * ell / 320;
  r.precondition = r.pr_list >= std::pow(2.0, -eps * ell) - kTol;
  r.conclusion = r.hx <= r.bound + kTol;
  if (!r.precondition) {
    r.pass = true;  // nothing to assert
    return r;
  }

  // Bin decomposition from the proof: B_i collects the list elements with
  // mass in (2^i d, 2^(i+1) d]; the first bin meeting the pigeonhole display
  // is the proof object.
  double alpha = std::pow(2.0, -(1 - eps) / 2);
  double d = alpha * std::pow(2.0, (1 - eps) * ell - n);
  for (int i = 0; i <= 2 * n + 4 && !r.bin_found; ++i) {
    double bm = 0;
    for (Word x : list) {
      double q = mass(x);
      if (q > std::pow(2.0, i) * d && q <= std::pow(2.0, i + 1) * d) bm += q;
    }
    double need =
        (1 - alpha) * std::pow(2.0, -eps * ell) * std::pow(2.0, -(i + 1));
    if (bm >= need - kTol) {
      r.bin_found = true;
      r.bin_index = i;
      r.bin_mass = bm;
      r.bin_need = need;
    }
  }
  r.pass = r.conclusion && r.bin_found;
  return r;
}

TechReport technicality(int k, double eps, int ell) {
  if (k < 2) throw InputError("k must be at least 2");
  if (ell < 1) throw InputError("ell must be positive");
  if (eps <= 0 || eps > 1.0 / (2 * k))
    throw InputError("eps must lie in (0, 1/(2k)]");
  TechReport r;
  r.k = k;
  r.eps = eps;
  r.ell = ell;

  auto g = [&](double y) { return (k - 1) - k * y + std::pow(y, k); };
  r.g_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 400; ++i) r.g_min = std::min(r.g_min, g(i * 0.01));
  r.g_nonneg = r.g_min >= -kTol;

  auto h = [&](double e) {
    return (std::pow(2.0, -e) - std::pow(2.0, -k * e)) /
           (1 - std::pow(2.0, -k * e));
  };
  r.h_monotone = true;
  double prev = h(1e-6);
  for (int i = 1; i <= 200; ++i) {
    double cur = h(i * (1.0 / (2 * k)) / 200);
    if (cur > prev + kTol) r.h_monotone = false;
    prev = cur;
  }

  double a = std::pow(2.0, -eps);
  auto ratio = [&](int l) {
    return (std::pow(a, l) - std::pow(a, (double)k * l)) /
           (1 - std::pow(a, (double)k * l));
  };
  r.lhs = ratio(ell);
  r.rhs = std::pow(ratio(1), ell);
  r.ratio_holds = r.lhs >= r.rhs - kTol;
  r.phi = std::log(r.lhs) - ell * std::log(ratio(1));
  r.pass = r.g_nonneg && r.h_monotone && r.ratio_holds;
  return r;
}

LdConstants ld_dpt_constants() {
  LdConstants c;
  c.lambda = std::pow(2.0, -1.0 / 2560);
  double denom = 1 - std::pow(2.0, -0.5);
  for (int k = 1;; ++k) {
    if ((std::pow(2.0, -1.0 / (2 * k)) - std::pow(2.0, -0.5)) / denom >=
        c.lambda) {
      c.k = k;
      break;
    }
  }
  c.c = std::pow(2.0, -1.0 / (2 * c.k));
  return c;
}

ChainReport ld_chain_check(int n, int ell, double eps) {
  if (n < 1 || ell < 1) throw InputError("n and ell must be positive");
  LdConstants c = ld_dpt_constants();
  if (eps <= 0 || eps > 1.0 / (2 * c.k))
    throw InputError("eps must lie in (0, 1/(2k)]");
  ChainReport r;
  r.beta = std::pow(2.0, -c.k * eps * ell);
  r.alpha = (std::pow(2.0, -eps * ell) - r.beta) / (1 - r.beta);
  r.lam_ell = std::pow(c.lambda, ell);
  double ke = c.k * eps;
  double half = std::pow(2.0, -(1 - ke) * (1 - ke) * ell / 640);
  r.ineq1 = r.alpha >= r.lam_ell - kTol;
  r.ineq2 = r.lam_ell >= half - kTol;
  // Leaf scores at level 2^((1-ke)^2 l/320 - n) reached with probability
  // alpha give an overall score of at least 2^((1-ke)^2 l/640 - n).
  double leaf = std::pow(2.0, (1 - ke) * (1 - ke) * ell / 320 - n);
  double overall = std::pow(2.0, (1 - ke) * (1 - ke) * ell / 640 - n);
  r.ineq3 = r.alpha * leaf >= overall - kTol;
  r.pass = r.ineq1 && r.ineq2 && r.ineq3;
  return r;
}

}  // namespace dqlab
