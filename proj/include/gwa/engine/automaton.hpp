#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gwa/core/generate.hpp"
#include "gwa/core/signature.hpp"

namespace gwa {

/// Entry of the (state, label) table. Accept marks a pair of F; Move is
/// delta(q, a) = (next, dir); Undefined is neither.
struct Action {
  enum class Kind : unsigned char { kUndefined, kAccept, kMove };

  Kind kind = Kind::kUndefined;
  StateId next;
  DirId dir;

  static Action undefined() { return {}; }
  static Action accept() { return {Kind::kAccept, {}, {}}; }
  static Action move(StateId next, DirId dir) { return {Kind::kMove, next, dir}; }

  friend bool operator==(const Action&, const Action&) = default;
};

/// Deterministic graph-walking automaton (Q, q0, F, delta) over a signature.
/// F and delta share one table, which makes delta undefined on F by
/// construction.
class WalkingAutomaton {
 public:
  WalkingAutomaton(SignaturePtr sig, std::vector<std::string> states, StateId initial = StateId(std::size_t{0}));

  const Signature& signature() const { return *sig_; }
  const SignaturePtr& signature_ptr() const { return sig_; }

  std::size_t state_count() const { return states_.size(); }
  const std::string& state_name(StateId q) const { return states_[q.index()]; }
  const std::vector<std::string>& state_names() const { return states_; }
  std::optional<StateId> find_state(std::string_view name) const;
  StateId state(std::string_view name) const;

  StateId initial() const { return initial_; }
  void set_initial(StateId q) { initial_ = q; }

  const Action& action(StateId q, LabelId a) const { return table_[q.index() * labels_ + a.index()]; }
  void set_action(StateId q, LabelId a, Action act) { table_[q.index() * labels_ + a.index()] = act; }
  void set_accept(StateId q, LabelId a) { set_action(q, a, Action::accept()); }
  void set_move(StateId q, LabelId a, StateId next, DirId dir) { set_action(q, a, Action::move(next, dir)); }
  bool accepts(StateId q, LabelId a) const { return action(q, a).kind == Action::Kind::kAccept; }

  /// Same signature, state names, initial state and table.
  friend bool operator==(const WalkingAutomaton& x, const WalkingAutomaton& y);

 private:
  SignaturePtr sig_;
  std::vector<std::string> states_;
  StateId initial_;
  std::size_t labels_;
  std::vector<Action> table_;
};

/// Violation kinds: "no states", "initial state out of range", "duplicate
/// state", "direction not in label", "next state out of range".
ValidationReport validate_automaton(const WalkingAutomaton& a);

/// States not reachable from the initial state through any transition,
/// regardless of the input graph (a static over-approximation of use).
std::vector<StateId> unreachable_states(const WalkingAutomaton& a);

/// Random automaton: each (q, a) cell accepts or is undefined with the given
/// per-mille weights, otherwise moves to a uniform (q', d in D_a).
WalkingAutomaton random_automaton(const SignaturePtr& sig, std::size_t num_states, Rng& rng,
                                  std::uint32_t accept_permille = 100, std::uint32_t undefined_permille = 100);

}  // namespace gwa
