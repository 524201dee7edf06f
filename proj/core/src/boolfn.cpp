#include "dqlab/boolfn.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace dqlab {

Word parse_bits(const std::string& s, int expect_bits, const std::string& origin) {
  if (expect_bits > 0 && (int)s.size() != expect_bits)
    throw InputError(origin + ": bit string '" + s + "' has length " +
                     std::to_string(s.size()) + ", expected " +
                     std::to_string(expect_bits));
  if ((int)s.size() > kMaxBits)
    throw InputError(origin + ": bit string '" + s + "' exceeds " +
                     std::to_string(kMaxBits) + " bits");
  Word x = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      x |= Word(1) << i;
    else if (s[i] != '0')
      throw InputError(origin + ": bad character '" + std::string(1, s[i]) +
                       "' in bit string '" + s + "'");
  }
  return x;
}

std::string bits_to_string(Word x, int nbits) {
  std::string s(nbits, '0');
  for (int p = 0; p < nbits; ++p)
    if (bit_at(x, p)) s[p] = '1';
  return s;
}

BoolFn BoolFn::from_table(int m, const std::vector<std::pair<Word, int>>& rows) {
  if (m < 1 || m > kMaxBits) throw InputError("function arity out of range");
  BoolFn f;
  f.m_ = m;
  std::vector<std::pair<Word, Word>> tab;
  for (auto& [x, v] : rows) {
    if (x >= (Word(1) << m)) throw InputError("table input out of range");
    if (v != 0 && v != 1) throw InputError("table value must be 0 or 1");
    tab.emplace_back(x, Word(v));
  }
  std::sort(tab.begin(), tab.end());
  for (std::size_t i = 0; i + 1 < tab.size(); ++i)
    if (tab[i].first == tab[i + 1].first)
      throw InputError("duplicate input " + bits_to_string(tab[i].first, m));
  if (tab.empty()) throw InputError("function has empty domain");
  for (auto& [x, v] : tab) {
    f.domain_.push_back(x);
    f.values_.push_back(v);
  }
  return f;
}

BoolFn BoolFn::parse(std::istream& in, const std::string& origin) {
  std::string line;
  int m = -1;
  std::vector<std::pair<Word, int>> rows;
  std::vector<Word> excluded;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    std::string where = origin + ":" + std::to_string(lineno);
    if (m < 0) {
      if (tok.rfind("m=", 0) != 0)
        throw InputError(where + ": expected 'm=<int>' header, got '" + tok + "'");
      try {
        m = std::stoi(tok.substr(2));
      } catch (const std::exception&) {
        throw InputError(where + ": bad arity '" + tok + "'");
      }
      if (m < 1 || m > kMaxBits)
        throw InputError(where + ": arity " + std::to_string(m) + " out of range");
      continue;
    }
    Word x = parse_bits(tok, m, where);
    std::string val;
    if (!(ls >> val))
      throw InputError(where + ": missing value for input '" + tok + "'");
    std::string extra;
    if (ls >> extra)
      throw InputError(where + ": trailing token '" + extra + "'");
    if (val == "*") {
      excluded.push_back(x);
    } else if (val == "0" || val == "1") {
      rows.emplace_back(x, val[0] - '0');
    } else {
      throw InputError(where + ": value must be 0, 1 or *, got '" + val + "'");
    }
  }
  if (m < 0) throw InputError(origin + ": missing 'm=<int>' header");
  for (Word x : excluded)
    for (auto& [y, v] : rows)
      if (x == y)
        throw InputError(origin + ": input " + bits_to_string(x, m) +
                         " listed both as * and as a domain point");
  if (rows.empty()) throw InputError(origin + ": function has empty domain");
  return from_table(m, rows);
}

BoolFn BoolFn::parse_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  return parse(in, origin);
}

BoolFn BoolFn::product(const BoolFn& base, int n) {
  if (base.blocks() != 1)
    throw InputError("product base must be a single-block function");
  if (n < 1) throw InputError("product power must be positive");
  if (base.block_bits() * n > kMaxBits)
    throw InputError("product input width exceeds " + std::to_string(kMaxBits) +
                     " bits");
  if (n == 1) return base;
  BoolFn f;
  f.m_ = base.m_;
  f.n_ = n;
  f.base_ = std::make_shared<BoolFn>(base);
  // Domain is the n-fold product; enumerate in sorted order by odometer.
  std::vector<std::size_t> idx(n, 0);
  const auto& d = base.domain_;
  for (;;) {
    Word x = 0, v = 0;
    for (int i = 0; i < n; ++i) {
      x |= d[idx[i]] << (i * base.m_);
      v |= base.values_[idx[i]] << i;
    }
    f.domain_.push_back(x);
    f.values_.push_back(v);
    int i = n - 1;
    while (i >= 0 && idx[i] + 1 == d.size()) idx[i--] = 0;
    if (i < 0) break;
    ++idx[i];
  }
  std::vector<std::size_t> order(f.domain_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return f.domain_[a] < f.domain_[b]; });
  std::vector<Word> dom(order.size()), val(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    dom[i] = f.domain_[order[i]];
    val[i] = f.values_[order[i]];
  }
  f.domain_ = std::move(dom);
  f.values_ = std::move(val);
  return f;
}

bool BoolFn::in_domain(Word x) const {
  return std::binary_search(domain_.begin(), domain_.end(), x);
}

Word BoolFn::value(Word x) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), x);
  if (it == domain_.end() || *it != x)
    throw InputError("input " + bits_to_string(x, bits()) + " is outside the domain");
  return values_[it - domain_.begin()];
}

std::string BoolFn::describe() const {
  std::ostringstream os;
  os << "m=" << m_;
  if (n_ > 1) os << " blocks=" << n_;
  os << " |domain|=" << domain_.size();
  return os.str();
}

}  // namespace dqlab
