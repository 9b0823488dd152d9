#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gwa/core/graph.hpp"
#include "gwa/engine/automaton.hpp"

namespace gwa {

struct Configuration {
  StateId state;
  NodeId node;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// (q, lambda(v)) is in F.
struct Accept {
  Configuration at;
  std::size_t steps = 0;
};

/// delta(q, lambda(v)) is undefined at a non-accepting configuration.
struct Reject {
  Configuration at;
  std::size_t steps = 0;
};

/// `at` is first revisited after `steps` moves; it was first seen
/// `cycle_length` moves earlier.
struct Loop {
  Configuration at;
  std::size_t steps = 0;
  std::size_t cycle_length = 0;
};

using Outcome = std::variant<Accept, Reject, Loop>;

bool accepted(const Outcome& o);
/// "accept", "reject" or "loop".
const char* outcome_name(const Outcome& o);
std::size_t outcome_steps(const Outcome& o);
const Configuration& outcome_configuration(const Outcome& o);

/// Result of walking a possibly open graph: besides the three outcomes, the
/// automaton may step through an undefined edge slot (a pattern port).
struct Walk {
  enum class Kind : unsigned char { kAccept, kReject, kLoop, kExit };

  Kind kind = Kind::kReject;
  Configuration at;  // final, stuck, repeated, or last configuration before the exit
  std::size_t steps = 0;
  std::size_t cycle_length = 0;
  StateId exit_state;  // kExit: state after the move
  DirId exit_dir;      // kExit: direction of the move
};

/// Reusable scratch for walks: a (state, node) table stamped with a
/// generation counter, so consecutive walks do not pay for clearing it.
class Walker {
 public:
  /// Walks from `start`. When `trace` is given, every visited configuration is
  /// appended (the repeated one too, for loops), up to `max_len` entries; the
  /// walk itself is never truncated.
  Walk walk(const WalkingAutomaton& a, const Graph& g, Configuration start, std::vector<Configuration>* trace = nullptr,
            std::size_t max_len = SIZE_MAX);

 private:
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> first_seen_;
  std::uint32_t generation_ = 0;
};

/// Runs `a` on `g` from (q0, v0). Throws PreconditionError if the signatures
/// differ or the automaton moves along an undefined edge (an invalid
/// automaton or graph).
Outcome run(const WalkingAutomaton& a, const Graph& g);
Outcome run(const WalkingAutomaton& a, const Graph& g, Walker& scratch);

/// Prefix of the computation, at most `max_len` configurations. Untruncated
/// traces end at the outcome: the accepting or stuck configuration, or the
/// first repeated one.
std::vector<Configuration> trace(const WalkingAutomaton& a, const Graph& g, std::size_t max_len = SIZE_MAX);

/// Replays `t` through delta and checks it is consistent with `o`: each step
/// follows the transition table, and the last entry witnesses the outcome.
bool replay_consistent(const WalkingAutomaton& a, const Graph& g, std::span<const Configuration> t, const Outcome& o);

struct AgreementEntry {
  std::size_t graph = 0;
  Outcome first;
  Outcome second;
  bool acceptance_agrees = false;
  bool variant_agrees = false;
};

struct AgreementReport {
  std::vector<AgreementEntry> entries;
  std::size_t acceptance_disagreements = 0;
  std::size_t variant_disagreements = 0;

  bool acceptance_ok() const { return acceptance_disagreements == 0; }
  bool fully_ok() const { return variant_disagreements == 0; }
};

AgreementReport agree_on(const WalkingAutomaton& a1, const WalkingAutomaton& a2, std::span<const Graph> suite);

}  // namespace gwa
