#include "dqlab/dist.hpp"

#include <cmath>
#include <istream>
#include <sstream>

namespace dqlab {

namespace {
constexpr double kSumBand = 1e-9;
}

Dist::Dist(int bits, std::vector<double> w)
    : bits_(bits), block_bits_(bits), blocks_(1), w_(std::move(w)) {
  if (bits < 0 || bits > kMaxBits) throw InputError("distribution width out of range");
  if (w_.size() != (std::size_t(1) << bits))
    throw InputError("distribution weight vector has wrong size");
  double total = 0;
  for (double v : w_) {
    if (!(v >= 0)) throw InputError("distribution weights must be nonnegative");
    total += v;
  }
  if (std::abs(total - 1.0) > kSumBand)
    throw InputError("distribution weights sum to " + std::to_string(total) +
                     ", outside the tolerance band around 1");
  for (double& v : w_) v /= total;
}

Dist Dist::parse(std::istream& in, int expect_bits, const std::string& origin) {
  std::string line;
  int bits = expect_bits;
  std::vector<std::pair<Word, double>> rows;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    std::string where = origin + ":" + std::to_string(lineno);
    if (bits < 0) bits = (int)tok.size();
    Word x = parse_bits(tok, bits, where);
    double v;
    if (!(ls >> v)) throw InputError(where + ": missing weight for '" + tok + "'");
    if (!(v >= 0)) throw InputError(where + ": negative weight for '" + tok + "'");
    std::string extra;
    if (ls >> extra) throw InputError(where + ": trailing token '" + extra + "'");
    rows.emplace_back(x, v);
  }
  if (rows.empty()) throw InputError(origin + ": empty distribution");
  std::vector<double> w(std::size_t(1) << bits, 0.0);
  for (auto& [x, v] : rows) {
    if (w[x] != 0.0)
      throw InputError(origin + ": duplicate input " + bits_to_string(x, bits));
    w[x] = v;
  }
  return Dist(bits, std::move(w));
}

Dist Dist::parse_text(const std::string& text, int expect_bits,
                      const std::string& origin) {
  std::istringstream in(text);
  return parse(in, expect_bits, origin);
}

Dist Dist::uniform(const BoolFn& f) {
  std::vector<double> w(std::size_t(1) << f.bits(), 0.0);
  for (Word x : f.domain()) w[x] = 1.0 / f.domain().size();
  Dist d(f.bits(), std::move(w));
  if (f.blocks() > 1) {
    // Uniform over a product domain is a product of uniforms.
    d = product(uniform(f.base()), f.blocks());
  }
  return d;
}

Dist Dist::point(int bits, Word x) {
  std::vector<double> w(std::size_t(1) << bits, 0.0);
  w[x] = 1.0;
  return Dist(bits, std::move(w));
}

Dist Dist::product(const Dist& base, int n) {
  if (base.blocks() != 1) throw InputError("product base must be single-block");
  if (n < 1) throw InputError("product power must be positive");
  if (n == 1) return base;
  if (base.bits() * n > kMaxBits)
    throw InputError("product distribution width exceeds " +
                     std::to_string(kMaxBits) + " bits");
  Dist d;
  d.bits_ = base.bits() * n;
  d.block_bits_ = base.bits();
  d.blocks_ = n;
  d.base_ = std::make_shared<Dist>(base);
  d.w_.assign(std::size_t(1) << d.bits_, 0.0);
  Word bm = (Word(1) << base.bits()) - 1;
  for (Word x = 0; x < (Word(1) << d.bits_); ++x) {
    double p = 1;
    for (int i = 0; i < n; ++i) p *= base.w_[(x >> (i * base.bits())) & bm];
    d.w_[x] = p;
  }
  return d;
}

Dist Dist::mix(double a, const Dist& lhs, const Dist& rhs) {
  if (lhs.bits() != rhs.bits()) throw InputError("mixing widths differ");
  if (!(a >= 0 && a <= 1)) throw InputError("mixture weight outside [0,1]");
  std::vector<double> w(lhs.w_.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = a * lhs.w_[i] + (1 - a) * rhs.w_[i];
  return Dist(lhs.bits(), std::move(w));
}

const Dist& Dist::base() const {
  if (!base_) return *this;
  return *base_;
}

double Dist::mass(const Restriction& r) const {
  double total = 0;
  for (Word x = 0; x < w_.size(); ++x)
    if (r.contains(x)) total += w_[x];
  return total;
}

Dist Dist::conditioned(const Restriction& r) const {
  double z = mass(r);
  if (z <= 0)
    throw InfeasibleError("conditioning on a zero-mass subcube " + r.str(bits_));
  Dist d = *this;
  for (Word x = 0; x < w_.size(); ++x) d.w_[x] = r.contains(x) ? w_[x] / z : 0.0;
  // A product measure conditioned on a subcube stays a product measure, but
  // the factors are no longer identical; drop the shared base.
  if (r.mask != 0) d.base_.reset();
  return d;
}

double Dist::p_one(const BoolFn& f, const Restriction& r) const {
  if (f.blocks() != 1) throw InputError("p_one expects a single-block function");
  if (f.bits() != bits_) throw InputError("function and distribution widths differ");
  double z = 0, one = 0;
  for (Word x : f.domain()) {
    if (!r.contains(x)) continue;
    z += w_[x];
    if (f.value(x)) one += w_[x];
  }
  if (z <= 0)
    throw InfeasibleError("conditional bias on a zero-mass subcube " + r.str(bits_));
  return one / z;
}

Dist Dist::marginal(int i) const {
  if (i < 0 || i >= blocks_) throw InputError("block index out of range");
  Word bm = (Word(1) << block_bits_) - 1;
  std::vector<double> w(std::size_t(1) << block_bits_, 0.0);
  for (Word x = 0; x < w_.size(); ++x)
    w[(x >> (i * block_bits_)) & bm] += w_[x];
  return Dist(block_bits_, std::move(w));
}

void Dist::check_support(const BoolFn& f) const {
  if (f.bits() != bits_)
    throw InputError("function takes " + std::to_string(f.bits()) +
                     " bits but the distribution is on " + std::to_string(bits_));
  for (Word x = 0; x < w_.size(); ++x)
    if (w_[x] > 0 && !f.in_domain(x))
      throw InputError("distribution puts weight on " + bits_to_string(x, bits_) +
                       ", which is outside the domain");
}

}  // namespace dqlab
