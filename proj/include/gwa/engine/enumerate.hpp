#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gwa/engine/automaton.hpp"

namespace gwa {

/// Options of one (q, a) cell, in enumeration order: accept, undefined, then
/// every (q', d) with d in D_a, q' major and d in declaration order.
std::vector<Action> cell_options(const Signature& sig, std::size_t num_states, LabelId a);

/// Number of automata with `num_states` states over `sig`, or nullopt if it
/// does not fit in 64 bits.
std::optional<std::uint64_t> automaton_count(const Signature& sig, std::size_t num_states);

/// All automata over `sig` with exactly `num_states` states and initial state
/// q0, as an odometer over the option table. Cells are ordered state-major,
/// label-minor; the last cell varies fastest, starting from all-accept.
///
///   AutomatonEnumerator e(sig, 2, budget);
///   while (const WalkingAutomaton* a = e.next()) { ... }
///
/// The returned automaton is updated in place by the following next().
class AutomatonEnumerator {
 public:
  AutomatonEnumerator(SignaturePtr sig, std::size_t num_states, std::uint64_t budget = UINT64_MAX);

  const WalkingAutomaton* next();
  std::uint64_t produced() const { return produced_; }

 private:
  WalkingAutomaton current_;
  std::vector<std::vector<Action>> options_;  // per cell
  std::vector<std::size_t> digit_;
  std::uint64_t budget_;
  std::uint64_t produced_ = 0;
  bool done_ = false;
};

/// Materialised form of AutomatonEnumerator.
std::vector<WalkingAutomaton> enumerate_automata(const SignaturePtr& sig, std::size_t num_states, std::uint64_t budget);

}  // namespace gwa
