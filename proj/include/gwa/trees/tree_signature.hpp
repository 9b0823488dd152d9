#pragma once

#include <string>
#include <vector>

#include "gwa/core/graph.hpp"
#include "gwa/core/validate.hpp"

namespace gwa {

/// A node label of a tree signature. Initial labels (roots) have directions
/// {+1..+rank}; the others {-parent, +1..+rank}.
struct TreeLabelDecl {
  std::string name;
  bool initial = false;
  std::size_t rank = 0;
  std::size_t parent = 0;  // 1..k for non-initial labels
};

/// +1, -1, +2, -2, ..., +k, -k.
std::vector<DirectionDecl> tree_directions(std::size_t k);

/// Throws StructuralError if the labels do not fit k.
SignaturePtr make_tree_signature(std::size_t k, const std::vector<TreeLabelDecl>& labels);

/// Roots r0..rk of every rank and, for each parent direction d and rank r,
/// a non-initial label x<d>_<r>.
SignaturePtr standard_tree_signature(std::size_t k);

/// Violation kinds: "not a tree signature" (directions), "no initial label",
/// "bad label shape" (subject: the label).
ValidationReport validate_tree_signature(const Signature& sig);

/// Rank and parent direction of every label of a tree signature.
class TreeShape {
 public:
  /// Throws PreconditionError if `sig` is not a tree signature.
  explicit TreeShape(const Signature& sig);

  std::size_t k() const { return plus_.size(); }
  DirId child_dir(std::size_t i) const { return plus_[i - 1]; }   // +i, 1-based
  DirId parent_dir(std::size_t i) const { return minus_[i - 1]; }  // -i
  std::size_t rank(LabelId a) const { return rank_[a.index()]; }
  /// 0 for root labels.
  std::size_t parent(LabelId a) const { return parent_[a.index()]; }

 private:
  std::vector<DirId> plus_;
  std::vector<DirId> minus_;
  std::vector<std::size_t> rank_;
  std::vector<std::size_t> parent_;
};

/// A valid graph over a tree signature.
bool is_tree(const Graph& g);

/// Children of v in order +1..+rank.
std::vector<NodeId> tree_children(const Graph& g, const TreeShape& shape, NodeId v);

/// Nodes in post-order (children before parents) from the root.
std::vector<NodeId> post_order(const Graph& g, const TreeShape& shape);

/// Term notation, e.g. r2(x1_0,x2_1(x1_0)).
std::string tree_term(const Graph& t);

/// Every tree over `sig` with at most `max_nodes` nodes, once each, ordered
/// by size, then root label, then children left to right. Node ids are n0..
/// in pre-order.
std::vector<Graph> enumerate_trees(const SignaturePtr& sig, std::size_t max_nodes);

}  // namespace gwa
