#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gwa/hom/homomorphism.hpp"
#include "gwa/trees/tree_automaton.hpp"

namespace gwa {

/// Second component of an annotated label: the states of the children.
struct Annotation {
  LabelId base;                 // label over the original signature
  std::vector<StateId> states;  // one per child
};

/// L(A) = h^{-1}(g(L(comp))).
///
///   mid  = reg plus e_i (rank k, {-i, +1..+k}) and end_i ({-i}), i = 1..k;
///   comp = (a, q) for every label a and q in Q^rank(a); roots only where
///          delta_a(q) = q_acc. Named "a[q1,...]".
///   h    = reg -> mid: a non-root node gets a fishbone of length n on its
///          parent side; roots map to themselves.
///   g    = comp -> mid: (a, q) has a parent-side fishbone of length
///          index(delta_a(q)) and a fishbone of length n - index(q_i) on
///          child side i.
///
/// A fishbone of length l in direction i is a chain of l e_i nodes linked by
/// +i, every other +j of which holds an end_j leaf. Length 0 is a bare
/// external edge.
struct Characterization {
  TreeAutomaton automaton;
  SignaturePtr reg;
  SignaturePtr mid;
  SignaturePtr comp;
  std::vector<Annotation> annotations;  // by comp label
  Homomorphism g;
  Homomorphism h;

  std::size_t n() const { return automaton.state_count(); }
  /// Comp label for (a, q), if it exists.
  std::optional<LabelId> comp_label(LabelId a, std::span<const StateId> q) const;
};

/// Throws PreconditionError if L(a) is empty (no root label survives in
/// comp), if a has missing transitions, or if reg already uses the names
/// e_i / end_i.
Characterization build_characterization(const TreeAutomaton& a);

/// Labels every node with (a, states of its children). Throws
/// PreconditionError if t is rejected.
Graph annotate(const Characterization& c, const Graph& t);
/// Drops the second components.
Graph strip(const Characterization& c, const Graph& annotated);

/// Whether every annotation matches the state computed in the child.
bool consistent_annotation(const Characterization& c, const Graph& annotated);

/// A tree over mid with its centres (nodes with reg labels) and the fishbone
/// length on every parent-child edge; nullopt if it is not made of reg nodes
/// joined by well-formed fishbones.
struct Contracted {
  std::vector<NodeId> centres;                     // pre-order; centres[0] is the root
  std::vector<std::vector<std::size_t>> children;  // indices into centres
  std::vector<std::vector<std::size_t>> lengths;   // fishbone length to each child
};
std::optional<Contracted> contract(const Characterization& c, const Graph& mid_tree);

/// The unique T' over comp with g(T') = t, if any.
std::optional<Graph> decode_g(const Characterization& c, const Graph& t);
/// The unique T over reg with h(T) = t, if any.
std::optional<Graph> decode_h(const Characterization& c, const Graph& t);

/// Fishbone lengths in g(T') measured by walking the image, against the
/// formula n - index(q^s_i) + index(delta(q^t)).
struct FishboneCheck {
  std::size_t trees = 0;
  std::size_t edges = 0;
  std::size_t mismatches = 0;
  std::vector<std::string> examples;
};
FishboneCheck measure_fishbones(const Characterization& c, std::size_t max_nodes, std::size_t jobs = 1);

struct CharacterizationReport {
  std::size_t reg_trees = 0;
  std::size_t accepted = 0;
  std::size_t comp_trees = 0;
  std::size_t consistent = 0;
  std::size_t h_roundtrips = 0;  // decode_h(h(T)) == T
  std::size_t g_roundtrips = 0;  // decode_g(g(T')) == T'
  std::size_t g_equals_h = 0;    // g(annotate(T)) == h(T) for accepted T
  std::vector<std::string> counterexamples;

  bool ok() const { return counterexamples.empty(); }
};

/// Over all reg trees T with at most max_nodes nodes: T accepted <=>
/// decode_g(h(T)) exists (and then equals annotate(T)); decode_h(h(T)) = T.
/// Over all comp trees T': decode_h(g(T')) exists <=> T' is consistent, and
/// then T' = annotate(decode_h(g(T'))); decode_g(g(T')) = T'.
CharacterizationReport verify_characterization(const Characterization& c, std::size_t max_nodes, std::size_t jobs = 1);

}  // namespace gwa
