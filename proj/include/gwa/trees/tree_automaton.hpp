#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gwa/trees/tree_signature.hpp"

namespace gwa {

/// Deterministic bottom-up tree automaton. States are numbered by
/// declaration order; delta_a is a table over Q^rank(a), first argument most
/// significant.
class TreeAutomaton {
 public:
  /// Throws PreconditionError if `sig` is not a tree signature or there are
  /// no states.
  TreeAutomaton(SignaturePtr sig, std::vector<std::string> states, StateId accept);

  const Signature& signature() const { return *sig_; }
  const SignaturePtr& signature_ptr() const { return sig_; }
  const TreeShape& shape() const { return shape_; }
  std::size_t state_count() const { return states_.size(); }
  const std::vector<std::string>& state_names() const { return states_; }
  const std::string& state_name(StateId q) const { return states_[q.index()]; }
  std::optional<StateId> find_state(std::string_view name) const;
  StateId accept() const { return accept_; }
  std::size_t rank(LabelId a) const { return shape_.rank(a); }

  /// Invalid id while the entry is unset.
  StateId delta(LabelId a, std::span<const StateId> args) const { return table_[a.index()][slot(a, args)]; }
  void set_delta(LabelId a, std::span<const StateId> args, StateId result) { table_[a.index()][slot(a, args)] = result; }
  /// Entry count of delta_a: |Q|^rank(a).
  std::size_t table_size(LabelId a) const { return table_[a.index()].size(); }
  /// The argument vector of table entry `slot`.
  std::vector<StateId> arguments(LabelId a, std::size_t slot) const;
  StateId entry(LabelId a, std::size_t slot) const { return table_[a.index()][slot]; }

 private:
  std::size_t slot(LabelId a, std::span<const StateId> args) const;

  SignaturePtr sig_;
  TreeShape shape_;
  std::vector<std::string> states_;
  StateId accept_;
  std::vector<std::vector<StateId>> table_;
};

/// Violation kinds: "missing transition" (subject: label), "duplicate
/// state", "bad state name" (names may not contain ',', '[' or ']').
ValidationReport validate_tree_automaton(const TreeAutomaton& a);

struct TreeRun {
  std::vector<StateId> states;  // by node index
  StateId root;
  bool accepted = false;
};

/// Bottom-up evaluation. Throws PreconditionError if t is not a tree over
/// a's signature or a transition is missing.
TreeRun eval_dta(const TreeAutomaton& a, const Graph& t);

/// For each parent direction d (index 0 = roots, unused), the states some
/// subtree under a d-child can evaluate to; least fixpoint.
std::vector<std::vector<bool>> reachable_states(const TreeAutomaton& a);
/// Whether some tree is accepted.
bool language_nonempty(const TreeAutomaton& a);

/// One state "q", accepting every tree.
TreeAutomaton accept_all_automaton(const SignaturePtr& sig);
/// States "even", "odd": the parity of the node count; accepts "even".
TreeAutomaton parity_automaton(const SignaturePtr& sig);

}  // namespace gwa
