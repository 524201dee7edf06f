#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dqlab/boolfn.hpp"
#include "dqlab/dist.hpp"
#include "dqlab/restriction.hpp"

namespace dqlab {

// Pointerless decision tree: nodes live in one vector, children are indices,
// and every node carries the restriction fixed along its path eagerly.
// Leaves may carry an output label (-1 when unlabeled); query algorithms that
// only ever get scored do not need labels.
struct TreeNode {
  int query = -1;  // queried position, -1 for leaves
  int child0 = -1;
  int child1 = -1;
  int label = -1;  // leaf output (n-bit word for product functions)
  Restriction path;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

class DecisionTree {
 public:
  DecisionTree() = default;

  static DecisionTree leaf(int nbits, int label = -1);
  static DecisionTree query(int pos, const DecisionTree& t0,
                            const DecisionTree& t1);

  int bits() const { return bits_; }
  int label_bits() const { return label_bits_; }
  void set_label_bits(int b) { label_bits_ = b; }
  int root() const { return 0; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(int i) const { return nodes_[i]; }
  bool is_leaf(int i) const { return nodes_[i].query < 0; }

  // Leaf index reached on input x.
  int evaluate(Word x) const;
  int depth() const;

  void for_each_leaf(const std::function<void(int)>& fn) const;
  std::vector<int> leaves() const;

  // Replace every node at depth d by an unlabeled leaf.
  DecisionTree truncated(int d) const;

  // Label every leaf with the likeliest value given mu (ties to the smaller
  // word), skipping zero-mass leaves.
  void relabel_optimal(const BoolFn& f, const Dist& mu);
  // Give every still-unlabeled leaf the fixed label.
  void label_unlabeled(int lab);

  // (q <pos> <0-subtree> <1-subtree>) / (leaf 0|1|-); product labels are
  // written as bit strings.
  std::string to_sexpr() const;
  static DecisionTree parse_sexpr(const std::string& text, int nbits);

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

 private:
  int bits_ = 0;
  int label_bits_ = 1;
  std::vector<TreeNode> nodes_;

  void recompute_paths();
};

struct WeightedTree {
  double weight = 1;
  DecisionTree tree;
};

// Finite mixture of deterministic trees; the public constructors normalize
// weights and drop components below 1e-15.
class RandomizedAlg {
 public:
  RandomizedAlg() = default;
  explicit RandomizedAlg(DecisionTree t);
  explicit RandomizedAlg(std::vector<WeightedTree> mix);

  const std::vector<WeightedTree>& components() const { return mix_; }
  std::size_t size() const { return mix_.size(); }
  int bits() const { return mix_.empty() ? 0 : mix_[0].tree.bits(); }

  RandomizedAlg truncated(int d) const;
  void relabel_optimal(const BoolFn& f, const Dist& mu);
  void label_unlabeled(int lab);
  // Merge components whose trees are identical.
  void merge_duplicates();

  // Blocks of "w=<decimal>" followed by one tree s-expression each.
  std::string serialize() const;
  static RandomizedAlg parse(const std::string& text, int nbits);

 private:
  std::vector<WeightedTree> mix_;
  void normalize();
};

}  // namespace dqlab
