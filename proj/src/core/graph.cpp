#include "gwa/core/graph.hpp"

namespace gwa {

std::optional<NodeId> Graph::find_node(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Graph Graph::rebind(SignaturePtr sig) const {
  GraphBuilder b(sig);
  for (std::size_t v = 0; v < node_count(); ++v) {
    b.add_node(ids_[v], sig_->label_name(labels_[v]));
  }
  for (std::size_t v = 0; v < node_count(); ++v) {
    for (std::size_t d = 0; d < dir_count_; ++d) {
      NodeId u = edges_[v * dir_count_ + d];
      if (u.valid()) b.set_half_edge(NodeId(v), sig->direction(sig_->direction_name(DirId(d))), u);
    }
  }
  if (!empty()) b.set_initial(initial_);
  Graph g = std::move(b).build();
  g.conflicts_ = conflicts_;
  return g;
}

GraphBuilder::GraphBuilder(SignaturePtr sig) {
  graph_.dir_count_ = sig->direction_count();
  graph_.sig_ = std::move(sig);
}

NodeId GraphBuilder::add_node(std::string id, LabelId label) {
  if (!label.valid() || label.index() >= graph_.sig_->label_count()) {
    throw StructuralError("node '" + id + "': label id out of range");
  }
  NodeId v(graph_.labels_.size());
  if (!graph_.index_.try_emplace(id, v).second) {
    throw StructuralError("duplicate node id '" + id + "'");
  }
  graph_.ids_.push_back(std::move(id));
  graph_.labels_.push_back(label);
  graph_.edges_.resize(graph_.edges_.size() + graph_.dir_count_);
  return v;
}

NodeId GraphBuilder::add_node(std::string id, std::string_view label) {
  auto a = graph_.sig_->find_label(label);
  if (!a) throw StructuralError("node '" + id + "': unknown label '" + std::string(label) + "'");
  return add_node(std::move(id), *a);
}

void GraphBuilder::set_initial(NodeId v) {
  if (v.index() >= node_count()) throw StructuralError("initial node out of range");
  graph_.initial_ = v;
  initial_set_ = true;
}

void GraphBuilder::set_slot(NodeId v, DirId d, NodeId u) {
  NodeId& slot = graph_.edges_[v.index() * graph_.dir_count_ + d.index()];
  if (slot.valid() && slot != u) {
    graph_.conflicts_.push_back({v, d, slot, u});
    return;
  }
  slot = u;
}

void GraphBuilder::connect(NodeId v, DirId d, NodeId u) {
  if (v.index() >= node_count() || u.index() >= node_count()) throw StructuralError("edge endpoint out of range");
  if (d.index() >= graph_.dir_count_) throw StructuralError("edge direction out of range");
  DirId back = graph_.sig_->opposite(d);
  if (!back.valid()) {
    throw StructuralError("direction '" + graph_.sig_->direction_name(d) + "' has no opposite");
  }
  set_slot(v, d, u);
  set_slot(u, back, v);
}

void GraphBuilder::connect(std::string_view v, std::string_view d, std::string_view u) {
  connect(node(v), graph_.sig_->direction(d), node(u));
}

void GraphBuilder::set_half_edge(NodeId v, DirId d, NodeId u) {
  if (v.index() >= node_count() || u.index() >= node_count()) throw StructuralError("edge endpoint out of range");
  set_slot(v, d, u);
}

NodeId GraphBuilder::node(std::string_view id) const {
  auto it = graph_.index_.find(id);
  if (it == graph_.index_.end()) throw StructuralError("unknown node '" + std::string(id) + "'");
  return it->second;
}

Graph GraphBuilder::build() && {
  if (!initial_set_ && !graph_.labels_.empty()) {
    graph_.initial_ = NodeId(std::size_t{0});
    for (std::size_t v = 0; v < graph_.labels_.size(); ++v) {
      if (graph_.sig_->is_initial(graph_.labels_[v])) {
        graph_.initial_ = NodeId(v);
        break;
      }
    }
  }
  return std::move(graph_);
}

}  // namespace gwa
