#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gwa/core/graph.hpp"

namespace gwa {

/// External edge of a pattern: the source direction `dir` leaves the pattern
/// from `node` along the equally named target direction `body_dir`.
struct Port {
  DirId dir;       // over the source signature
  DirId body_dir;  // over the target signature
  NodeId node;
};

/// Replacement subgraph h(a). The body is a graph over the target signature
/// whose port slots are left undefined; its `initial` field is meaningless.
class Pattern {
 public:
  Pattern(Graph body, std::vector<Port> ports, std::size_t source_dirs);

  const Graph& body() const { return body_; }
  const std::vector<Port>& ports() const { return ports_; }
  /// w_d, or an invalid id if d is not a port.
  NodeId port_node(DirId source_dir) const {
    return source_dir.index() < by_dir_.size() ? by_dir_[source_dir.index()] : NodeId();
  }
  /// Source direction whose port is the slot (v, body_dir), or an invalid id.
  DirId port_at(NodeId v, DirId body_dir) const;
  bool is_port_slot(NodeId v, DirId body_dir) const { return port_at(v, body_dir).valid(); }
  /// First body node with an initial label.
  std::optional<NodeId> initial_node() const;

 private:
  Graph body_;
  std::vector<Port> ports_;
  std::vector<NodeId> by_dir_;
};

/// h: L(S) -> L(S^). Source directions are identified with target directions
/// by name.
class Homomorphism {
 public:
  /// `patterns[a]` is h(a) for every source label a, in label order.
  Homomorphism(SignaturePtr source, SignaturePtr target, std::vector<Pattern> patterns);

  const Signature& source() const { return *source_; }
  const Signature& target() const { return *target_; }
  const SignaturePtr& source_ptr() const { return source_; }
  const SignaturePtr& target_ptr() const { return target_; }
  const Pattern& pattern(LabelId a) const { return patterns_[a.index()]; }
  const std::vector<Pattern>& patterns() const { return patterns_; }
  /// Target direction with the same name, or an invalid id.
  DirId target_dir(DirId source_dir) const { return dir_map_[source_dir.index()]; }

 private:
  SignaturePtr source_;
  SignaturePtr target_;
  std::vector<Pattern> patterns_;
  std::vector<DirId> dir_map_;
};

/// Builds a pattern over `target` from a body and a map from source
/// direction names to body node ids. Throws StructuralError on unknown names.
Pattern make_pattern(const Signature& source, const Signature& target, Graph body,
                     const std::map<std::string, std::string>& ports);

/// Violation kinds: "pattern count", "missing direction", "opposite mismatch",
/// "empty pattern", "foreign pattern signature", "pattern disconnected",
/// "missing port", "extra port", "port direction not in label", "port slot
/// used", "open slot", "unexpected edge", "asymmetric edge", "conflicting
/// edge", "initial node mismatch", "multiple initial nodes". Subjects name the
/// source label (and node/direction in the detail).
ValidationReport validate_homomorphism(const Homomorphism& h);

/// h(G) together with the origin of every image node.
struct Image {
  Graph graph;
  std::vector<NodeId> owner;         // source node replaced by the copy
  std::vector<NodeId> pattern_node;  // node of h(lambda(owner)) it copies
  std::vector<unsigned char> external;  // [node * dirs + dir]: slot is an external edge

  bool is_external(NodeId v, DirId d) const {
    return external[v.index() * graph.signature().direction_count() + d.index()] != 0;
  }
};

/// Image node ids are "(v,w)". Throws PreconditionError if g is not over
/// the source signature.
Image apply_with_origin(const Homomorphism& h, const Graph& g);
Graph apply(const Homomorphism& h, const Graph& g);

/// Every label to a single node with the same label and all slots as ports.
Homomorphism identity_homomorphism(const SignaturePtr& sig);

}  // namespace gwa
