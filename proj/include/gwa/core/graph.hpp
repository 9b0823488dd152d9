#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gwa/core/signature.hpp"

namespace gwa {

/// A declaration that tried to redefine an already defined edge slot.
struct EdgeConflict {
  NodeId node;
  DirId dir;
  NodeId existing;
  NodeId requested;
};

/// Finite pointed graph over a signature: nodes with labels, an initial node
/// and the partial edge function v + d.
///
/// Immutable once built; use GraphBuilder. Whether the graph satisfies the
/// graph invariants over its signature is checked by validate_graph().
class Graph {
 public:
  const Signature& signature() const { return *sig_; }
  const SignaturePtr& signature_ptr() const { return sig_; }

  std::size_t node_count() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  NodeId initial() const { return initial_; }
  LabelId label(NodeId v) const { return labels_[v.index()]; }
  const std::string& id(NodeId v) const { return ids_[v.index()]; }
  std::optional<NodeId> find_node(std::string_view id) const;

  /// v + d, or an invalid id when undefined.
  NodeId neighbor(NodeId v, DirId d) const { return edges_[v.index() * dir_count_ + d.index()]; }
  bool has_edge(NodeId v, DirId d) const { return neighbor(v, d).valid(); }

  const std::vector<EdgeConflict>& conflicts() const { return conflicts_; }

  /// Same graph over another signature, matching labels and directions by
  /// name. Throws StructuralError if a name is missing from `sig`.
  Graph rebind(SignaturePtr sig) const;

 private:
  friend class GraphBuilder;

  SignaturePtr sig_;
  std::size_t dir_count_ = 0;
  std::vector<std::string> ids_;
  std::vector<LabelId> labels_;
  std::vector<NodeId> edges_;
  std::map<std::string, NodeId, std::less<>> index_;
  NodeId initial_;
  std::vector<EdgeConflict> conflicts_;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(SignaturePtr sig);

  /// Throws StructuralError on a duplicate id or an unknown label.
  NodeId add_node(std::string id, LabelId label);
  NodeId add_node(std::string id, std::string_view label);

  void set_initial(NodeId v);

  /// Defines v + d = u and u + (-d) = v. Redefining a slot with a different
  /// target is recorded as a conflict and leaves the first definition.
  void connect(NodeId v, DirId d, NodeId u);
  void connect(std::string_view v, std::string_view d, std::string_view u);

  /// Defines only v + d = u; for constructing deliberately broken graphs.
  void set_half_edge(NodeId v, DirId d, NodeId u);

  NodeId node(std::string_view id) const;
  std::size_t node_count() const { return graph_.labels_.size(); }
  const Signature& signature() const { return *graph_.sig_; }

  /// The initial node defaults to the first node carrying an initial label,
  /// or the first node if there is none.
  Graph build() &&;

 private:
  void set_slot(NodeId v, DirId d, NodeId u);

  Graph graph_;
  bool initial_set_ = false;
};

}  // namespace gwa
