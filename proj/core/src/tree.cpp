#include "dqlab/tree.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace dqlab {

DecisionTree DecisionTree::leaf(int nbits, int label) {
  DecisionTree t;
  t.bits_ = nbits;
  TreeNode n;
  n.label = label;
  t.nodes_.push_back(n);
  return t;
}

DecisionTree DecisionTree::query(int pos, const DecisionTree& t0,
                                 const DecisionTree& t1) {
  if (t0.bits_ != t1.bits_) throw InputError("subtree widths differ");
  if (pos < 0 || pos >= t0.bits_) throw InputError("query position out of range");
  DecisionTree t;
  t.bits_ = t0.bits_;
  t.label_bits_ = std::max(t0.label_bits_, t1.label_bits_);
  TreeNode root;
  root.query = pos;
  root.child0 = 1;
  root.child1 = 1 + (int)t0.nodes_.size();
  t.nodes_.push_back(root);
  for (auto n : t0.nodes_) {
    if (n.query >= 0) { n.child0 += 1; n.child1 += 1; }
    t.nodes_.push_back(n);
  }
  int off = root.child1;
  for (auto n : t1.nodes_) {
    if (n.query >= 0) { n.child0 += off; n.child1 += off; }
    t.nodes_.push_back(n);
  }
  t.recompute_paths();
  return t;
}

void DecisionTree::recompute_paths() {
  std::vector<std::pair<int, Restriction>> stack{{0, Restriction{}}};
  while (!stack.empty()) {
    auto [i, rho] = stack.back();
    stack.pop_back();
    nodes_[i].path = rho;
    if (nodes_[i].query < 0) continue;
    int q = nodes_[i].query;
    if (rho.fixes(q))
      throw InputError("position " + std::to_string(q) + " queried twice on a path");
    stack.emplace_back(nodes_[i].child0, rho.with(q, 0));
    stack.emplace_back(nodes_[i].child1, rho.with(q, 1));
  }
}

int DecisionTree::evaluate(Word x) const {
  int i = 0;
  while (nodes_[i].query >= 0)
    i = bit_at(x, nodes_[i].query) ? nodes_[i].child1 : nodes_[i].child0;
  return i;
}

int DecisionTree::depth() const {
  int d = 0;
  for (auto& n : nodes_)
    if (n.query < 0) d = std::max(d, n.path.fixed_count());
  return d;
}

void DecisionTree::for_each_leaf(const std::function<void(int)>& fn) const {
  for (int i = 0; i < (int)nodes_.size(); ++i)
    if (nodes_[i].query < 0) fn(i);
}

std::vector<int> DecisionTree::leaves() const {
  std::vector<int> out;
  for_each_leaf([&](int i) { out.push_back(i); });
  return out;
}

DecisionTree DecisionTree::truncated(int d) const {
  DecisionTree t;
  t.bits_ = bits_;
  t.label_bits_ = label_bits_;
  // Rebuild top-down, replacing depth-d internal nodes by unlabeled leaves.
  std::function<int(int, int)> copy = [&](int src, int depth) -> int {
    int dst = (int)t.nodes_.size();
    t.nodes_.push_back(nodes_[src]);
    if (nodes_[src].query >= 0 && depth >= d) {
      t.nodes_[dst] = TreeNode{};
      return dst;
    }
    if (nodes_[src].query >= 0) {
      int c0 = copy(nodes_[src].child0, depth + 1);
      int c1 = copy(nodes_[src].child1, depth + 1);
      t.nodes_[dst].child0 = c0;
      t.nodes_[dst].child1 = c1;
    }
    return dst;
  };
  copy(0, 0);
  t.recompute_paths();
  return t;
}

void DecisionTree::relabel_optimal(const BoolFn& f, const Dist& mu) {
  if (f.bits() != bits_) throw InputError("function and tree widths differ");
  label_bits_ = f.blocks();
  for (auto& n : nodes_) {
    if (n.query >= 0) continue;
    // Per-block majority under the conditional; zero-mass leaves keep their
    // label.
    int nb = f.blocks();
    std::vector<double> one(nb, 0.0);
    double z = 0;
    for (Word x : f.domain()) {
      if (!n.path.contains(x)) continue;
      double w = mu.weight(x);
      z += w;
      Word v = f.value(x);
      for (int i = 0; i < nb; ++i)
        if (bit_at(v, i)) one[i] += w;
    }
    if (z <= 0) continue;
    Word lab = 0;
    for (int i = 0; i < nb; ++i)
      if (one[i] > z - one[i]) lab |= Word(1) << i;
    n.label = (int)lab;
  }
}

void DecisionTree::label_unlabeled(int lab) {
  for (auto& n : nodes_)
    if (n.query < 0 && n.label < 0) n.label = lab;
}

namespace {

void emit_sexpr(const DecisionTree& t, int i, std::ostream& os) {
  const TreeNode& n = t.node(i);
  if (n.query < 0) {
    os << "(leaf ";
    if (n.label < 0)
      os << '-';
    else
      os << bits_to_string((Word)n.label, t.label_bits());
    os << ')';
    return;
  }
  os << "(q " << n.query << ' ';
  emit_sexpr(t, n.child0, os);
  os << ' ';
  emit_sexpr(t, n.child1, os);
  os << ')';
}

struct Tokens {
  std::vector<std::string> toks;
  std::size_t pos = 0;
  const std::string& peek() {
    if (pos >= toks.size()) throw InputError("unexpected end of tree expression");
    return toks[pos];
  }
  std::string next() {
    const std::string& t = peek();
    ++pos;
    return t;
  }
  void expect(const std::string& t) {
    if (next() != t) throw InputError("expected '" + t + "' in tree expression");
  }
};

Tokens tokenize(const std::string& text) {
  Tokens tk;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == ')') {
      if (!cur.empty()) { tk.toks.push_back(cur); cur.clear(); }
      tk.toks.push_back(std::string(1, c));
    } else if (std::isspace((unsigned char)c)) {
      if (!cur.empty()) { tk.toks.push_back(cur); cur.clear(); }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tk.toks.push_back(cur);
  return tk;
}

DecisionTree parse_node(Tokens& tk, int nbits) {
  tk.expect("(");
  std::string head = tk.next();
  if (head == "leaf") {
    std::string lab = tk.next();
    tk.expect(")");
    if (lab == "-") return DecisionTree::leaf(nbits);
    Word v = parse_bits(lab, 0, "<tree>");
    DecisionTree t = DecisionTree::leaf(nbits, (int)v);
    t.set_label_bits((int)lab.size());
    return t;
  }
  if (head != "q") throw InputError("expected 'q' or 'leaf', got '" + head + "'");
  int pos;
  try {
    pos = std::stoi(tk.next());
  } catch (const std::exception&) {
    throw InputError("bad query position in tree expression");
  }
  DecisionTree t0 = parse_node(tk, nbits);
  DecisionTree t1 = parse_node(tk, nbits);
  tk.expect(")");
  return DecisionTree::query(pos, t0, t1);
}

}  // namespace

std::string DecisionTree::to_sexpr() const {
  std::ostringstream os;
  emit_sexpr(*this, 0, os);
  return os.str();
}

DecisionTree DecisionTree::parse_sexpr(const std::string& text, int nbits) {
  Tokens tk = tokenize(text);
  DecisionTree t = parse_node(tk, nbits);
  if (tk.pos != tk.toks.size())
    throw InputError("trailing tokens after tree expression");
  return t;
}

RandomizedAlg::RandomizedAlg(DecisionTree t) {
  mix_.push_back({1.0, std::move(t)});
}

RandomizedAlg::RandomizedAlg(std::vector<WeightedTree> mix) : mix_(std::move(mix)) {
  normalize();
}

void RandomizedAlg::normalize() {
  double total = 0;
  for (auto& c : mix_) {
    if (!(c.weight >= 0)) throw InputError("mixture weights must be nonnegative");
    total += c.weight;
  }
  if (total <= 0) throw InputError("mixture has zero total weight");
  for (auto& c : mix_) c.weight /= total;
  std::erase_if(mix_, [](const WeightedTree& c) { return c.weight < 1e-15; });
  total = 0;
  for (auto& c : mix_) total += c.weight;
  for (auto& c : mix_) c.weight /= total;
}

RandomizedAlg RandomizedAlg::truncated(int d) const {
  std::vector<WeightedTree> out;
  for (auto& c : mix_) out.push_back({c.weight, c.tree.truncated(d)});
  return RandomizedAlg(std::move(out));
}

void RandomizedAlg::relabel_optimal(const BoolFn& f, const Dist& mu) {
  for (auto& c : mix_) c.tree.relabel_optimal(f, mu);
}

void RandomizedAlg::label_unlabeled(int lab) {
  for (auto& c : mix_) c.tree.label_unlabeled(lab);
}

void RandomizedAlg::merge_duplicates() {
  std::map<std::string, std::size_t> seen;
  std::vector<WeightedTree> out;
  for (auto& c : mix_) {
    std::string key = c.tree.to_sexpr();
    auto [it, fresh] = seen.try_emplace(key, out.size());
    if (fresh)
      out.push_back(c);
    else
      out[it->second].weight += c.weight;
  }
  mix_ = std::move(out);
  normalize();
}

std::string RandomizedAlg::serialize() const {
  std::ostringstream os;
  os.precision(17);
  for (auto& c : mix_) os << "w=" << c.weight << '\n' << c.tree.to_sexpr() << '\n';
  return os.str();
}

RandomizedAlg RandomizedAlg::parse(const std::string& text, int nbits) {
  std::istringstream in(text);
  std::string line;
  std::vector<WeightedTree> mix;
  std::string pending;
  double weight = -1;
  auto flush = [&]() {
    if (weight < 0 && pending.empty()) return;
    if (weight < 0 || pending.empty())
      throw InputError("mixture block needs both a w= line and a tree");
    mix.push_back({weight, DecisionTree::parse_sexpr(pending, nbits)});
    pending.clear();
    weight = -1;
  };
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok.rfind("w=", 0) == 0) {
      flush();
      try {
        weight = std::stod(tok.substr(2));
      } catch (const std::exception&) {
        throw InputError("bad mixture weight '" + tok + "'");
      }
    } else {
      pending += line + ' ';
    }
  }
  flush();
  if (mix.empty()) throw InputError("empty mixture");
  return RandomizedAlg(std::move(mix));
}

}  // namespace dqlab
