#pragma once

#include <optional>
#include <string>

#include "gwa/core/graph.hpp"
#include "gwa/core/validate.hpp"
#include "gwa/engine/automaton.hpp"
#include "gwa/hom/homomorphism.hpp"

namespace gwa {

/// A graph fragment with a single external edge: the slot (port, dir) is left
/// undefined and is where the fragment gets plugged in.
struct Pluggable {
  Graph body;
  NodeId port;
  DirId dir;
  bool has_initial = false;

  /// The fragment as a pattern for a label whose only direction is `dir`.
  Pattern as_pattern() const;
};

/// validate_graph, except that the port slot must be the one open slot and,
/// without has_initial, no node may carry an initial label. Extra kinds:
/// "port slot used", "port direction not in label".
ValidationReport validate_pluggable(const Pluggable& p);

/// Labels of the H gadget over k >= 4 standard directions: start (initial,
/// {a, b, -b}), end_l ({a, b, -b}), end_r ({-a, b, -b}) and chain
/// ({a, -a, b, -b}).
SignaturePtr start_signature(std::size_t k);

/// start_signature plus c_st {-a, b}, c' {-a, -b, b}, go'_a {-a, -b, a},
/// go'_b {-a, -b, b} and go_d {-a, d} for every d (go_-a is {-b, -a}).
SignaturePtr f_signature(std::size_t k);
std::vector<LabelDecl> f_labels(const std::vector<DirectionDecl>& dirs);

/// Geometry of H: two chains of `length` nodes in direction a, joined by
/// double (b, -b) edges at the two bridge columns; every other chain node
/// carries a b self-loop.
struct HShape {
  std::size_t length = 0;
  std::size_t left_bridge = 0;
  std::size_t right_bridge = 0;
};

/// length 2n, bridges at columns n-1 and 2n-1.
HShape default_h_shape(std::size_t n);

enum class HVariant { kStart, kFake };

/// H_start / H_fake. Lower chain L0..L{len-1} starting at v0 = L0, upper
/// chain U0..U{len-1}; the port is U{len-1} in direction a. H_fake relabels
/// v0 start -> end_l. `sig` must contain the H labels.
Pluggable build_H(const SignaturePtr& sig, std::size_t n, HVariant variant, const HShape& shape);
Pluggable build_H(const SignaturePtr& sig, std::size_t n, HVariant variant);

/// F_{i,d} (i given) or F_d: spine u0..u{n-1}, ugo with port d; H_start at
/// u_i and H_fake at every other u_j, each joined by H's port a to the
/// spine node's -a slot. `sig` must contain the F labels.
Pluggable build_F(const SignaturePtr& sig, std::size_t n, DirId d, std::optional<std::size_t> i);

/// States q_0..q_{n-1}, initial q_0. Leaves H_start in q_{n-1} and F_{i,d}
/// in q_i. Transitions are set for the H and F labels present in `sig`.
WalkingAutomaton build_escape_automaton(const SignaturePtr& sig, std::size_t n);

/// Copies `part` into `b` with ids prefixed; returns the new ids by old index.
std::vector<NodeId> embed(GraphBuilder& b, const Graph& part, const std::string& prefix);

/// Name helpers for the generated labels.
std::string go_label(const Signature& sig, DirId d);
std::string go2_label(const Signature& sig, DirId d1, DirId d2);

}  // namespace gwa
